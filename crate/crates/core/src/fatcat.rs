//! Objects and morphisms of fat Delta.
//!
//! An object is an epimorphism `η : [m] ->> [n]`; equivalently a marking of the `m`
//! edges of `[m]` (edge `e` is marked when `η(e) = η(e + 1)`), written as a string
//! over `-` (unmarked) and `=` (marked). A morphism is a commuting square whose top
//! row is a mono and whose vertical sides are the two objects.

use std::fmt;

use crate::error::{Error, Result};
use crate::faces::is_active_fat;
use crate::simplex::{self, compose_maps, MonotoneMap};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FatObject {
    eta: MonotoneMap,
}

/// Position of a vertex inside its fibre.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// Alone in its fibre; both neighbouring edges unmarked.
    Standard,
    /// Strictly inside a fibre; both neighbouring edges marked.
    InnerMarked,
    /// First vertex of a fibre with at least one edge.
    LeftBordering,
    /// Last vertex of a fibre with at least one edge.
    RightBordering,
}

impl FatObject {
    pub fn new(eta: MonotoneMap) -> Result<Self> {
        if eta.dom_len() == 0 {
            return Err(Error::Augmented);
        }
        if !eta.is_epi() {
            return Err(Error::NotEpi(eta.to_string()));
        }
        Ok(Self { eta })
    }

    pub(crate) fn from_eta_unchecked(eta: MonotoneMap) -> Self {
        debug_assert!(eta.is_epi());
        Self { eta }
    }

    /// The empty object `[-1] ->> [-1]`, unit of the relative sum.
    pub fn unit() -> Self {
        Self {
            eta: MonotoneMap::from_raw(0, Vec::new()),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.eta.dom_len() == 0
    }

    pub(crate) fn require_non_unit(&self) -> Result<()> {
        if self.is_unit() {
            Err(Error::Augmented)
        } else {
            Ok(())
        }
    }

    pub fn from_edge_string(s: &str) -> Result<Self> {
        let mut images = vec![0usize];
        for (offset, c) in s.char_indices() {
            let last = *images.last().unwrap();
            match c {
                '-' => images.push(last + 1),
                '=' => images.push(last),
                other => {
                    return Err(Error::Syntax {
                        offset,
                        message: format!("unexpected character `{other}` in edge string"),
                    })
                }
            }
        }
        let cod_len = images.last().unwrap() + 1;
        Ok(Self::from_eta_unchecked(MonotoneMap::from_raw(cod_len, images)))
    }

    /// Builds `[g_0] ⊕ ... ⊕ [g_n] ->> [n]` from the fibre sizes (edge counts).
    pub fn from_fibres(fibres: &[usize]) -> Self {
        let mut images = Vec::with_capacity(fibres.iter().sum::<usize>() + fibres.len());
        for (i, &g) in fibres.iter().enumerate() {
            images.extend(std::iter::repeat(i).take(g + 1));
        }
        Self::from_eta_unchecked(MonotoneMap::from_raw(fibres.len(), images))
    }

    pub fn eta(&self) -> &MonotoneMap {
        &self.eta
    }

    /// Top dimension `m` of `η : [m] ->> [n]`.
    pub fn m(&self) -> usize {
        self.eta.dom_len().saturating_sub(1)
    }

    /// Bottom dimension `n` of `η : [m] ->> [n]`.
    pub fn n(&self) -> usize {
        self.eta.cod_len().saturating_sub(1)
    }

    /// Edge counts `|η⁻¹(i)| - 1` of the fibres, in order.
    pub fn fibre_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.eta.cod_len()];
        for &y in self.eta.images() {
            sizes[y] += 1;
        }
        sizes.iter().map(|s| s - 1).collect()
    }

    pub fn edge_string(&self) -> String {
        self.eta
            .images()
            .windows(2)
            .map(|w| if w[0] == w[1] { '=' } else { '-' })
            .collect()
    }

    pub fn is_marked(&self, edge: usize) -> bool {
        self.eta.apply(edge) == self.eta.apply(edge + 1)
    }

    /// Fibre containing vertex `v`.
    pub fn fibre_of(&self, v: usize) -> usize {
        self.eta.apply(v)
    }

    /// Smallest vertex of fibre `i`.
    pub fn ip(&self, i: usize) -> Result<usize> {
        self.check_fibre(i)?;
        Ok(self.eta.images().partition_point(|&y| y < i))
    }

    /// Greatest vertex of fibre `i`.
    pub fn ep(&self, i: usize) -> Result<usize> {
        self.check_fibre(i)?;
        Ok(self.eta.images().partition_point(|&y| y <= i) - 1)
    }

    fn check_fibre(&self, i: usize) -> Result<()> {
        if i >= self.eta.cod_len() {
            return Err(Error::IndexOutOfRange {
                what: "fibre",
                index: i,
            });
        }
        Ok(())
    }

    pub fn classify_vertex(&self, v: usize) -> Result<VertexClass> {
        if v >= self.eta.dom_len() {
            return Err(Error::IndexOutOfRange {
                what: "vertex",
                index: v,
            });
        }
        let fibre = self.fibre_of(v);
        let (lo, hi) = (self.ip(fibre)?, self.ep(fibre)?);
        Ok(match (v == lo, v == hi) {
            (true, true) => VertexClass::Standard,
            (false, false) => VertexClass::InnerMarked,
            (true, false) => VertexClass::LeftBordering,
            (false, true) => VertexClass::RightBordering,
        })
    }
}

impl fmt::Display for FatObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            f.write_str("()")
        } else {
            f.write_str(&self.edge_string())
        }
    }
}

impl fmt::Debug for FatObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A commuting square `cod.eta ∘ top = bot ∘ dom.eta` with `top` mono.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FatMorphism {
    dom: FatObject,
    cod: FatObject,
    top: MonotoneMap,
    bot: MonotoneMap,
}

/// Membership in the diagonal, vertical and horizontal classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MorphismClasses {
    pub diagonal: bool,
    pub vertical: bool,
    pub horizontal: bool,
    /// Horizontal and a pullback square: the top hits exactly the vertices lying
    /// over the image of the bottom. These are the horizontal parts of the ternary
    /// factorization; a bare mono bottom also admits the vertical morphisms.
    pub cartesian: bool,
}

impl FatMorphism {
    pub fn new(dom: FatObject, cod: FatObject, top: MonotoneMap, bot: MonotoneMap) -> Result<Self> {
        if top.dom_len() != dom.eta.dom_len() || top.cod_len() != cod.eta.dom_len() {
            return Err(Error::SizeMismatch(format!(
                "top {top} does not run from [{}] to [{}]",
                dom.eta.dom_size(),
                cod.eta.dom_size()
            )));
        }
        if bot.dom_len() != dom.eta.cod_len() || bot.cod_len() != cod.eta.cod_len() {
            return Err(Error::SizeMismatch(format!(
                "bottom {bot} does not run from [{}] to [{}]",
                dom.eta.cod_size(),
                cod.eta.cod_size()
            )));
        }
        if !top.is_mono() {
            return Err(Error::NotMono(top.to_string()));
        }
        let right = compose_maps(&cod.eta, &top)?;
        let left = compose_maps(&bot, &dom.eta)?;
        if right != left {
            return Err(Error::NotCommuting(format!(
                "{dom} -> {cod}: {right} along the top, {left} along the bottom"
            )));
        }
        Ok(Self { dom, cod, top, bot })
    }

    pub(crate) fn new_unchecked(
        dom: FatObject,
        cod: FatObject,
        top: MonotoneMap,
        bot: MonotoneMap,
    ) -> Self {
        debug_assert!(
            Self::new(dom.clone(), cod.clone(), top.clone(), bot.clone()).is_ok(),
            "invalid square {dom} -> {cod} top {top} bot {bot}"
        );
        Self { dom, cod, top, bot }
    }

    pub fn identity(o: &FatObject) -> Self {
        Self {
            dom: o.clone(),
            cod: o.clone(),
            top: MonotoneMap::identity(o.m()),
            bot: MonotoneMap::identity(o.n()),
        }
    }

    pub fn dom(&self) -> &FatObject {
        &self.dom
    }

    pub fn cod(&self) -> &FatObject {
        &self.cod
    }

    pub fn top(&self) -> &MonotoneMap {
        &self.top
    }

    pub fn bot(&self) -> &MonotoneMap {
        &self.bot
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.top.is_identity() && self.bot.is_identity()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FatMorphism) -> Result<FatMorphism> {
        compose(self, f)
    }

    pub fn class_of(&self) -> MorphismClasses {
        MorphismClasses {
            diagonal: self.top.is_identity() && self.bot.is_epi(),
            vertical: self.bot.is_identity(),
            horizontal: self.bot.is_mono(),
            cartesian: self.bot.is_mono() && self.is_pullback(),
        }
    }

    fn is_pullback(&self) -> bool {
        let mut over_image = vec![false; self.cod.n() + 1];
        for &y in self.bot.images() {
            over_image[y] = true;
        }
        let hit = self.top.images();
        let expected = self.cod.eta.images().iter().enumerate().filter(|&(_, &y)| over_image[y]).map(|(x, _)| x);
        expected.eq(hit.iter().copied())
    }
}

impl fmt::Display for FatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::print_morphism(self))
    }
}

impl fmt::Debug for FatMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Componentwise composite `g ∘ f`.
pub fn compose(g: &FatMorphism, f: &FatMorphism) -> Result<FatMorphism> {
    if f.cod != g.dom {
        return Err(Error::ObjectMismatch(format!(
            "cannot compose: {} is not {}",
            f.cod, g.dom
        )));
    }
    Ok(FatMorphism {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        top: compose_maps(&g.top, &f.top)?,
        bot: compose_maps(&g.bot, &f.bot)?,
    })
}

/// Domain projection on objects: `[m]`.
pub fn proj_plus(o: &FatObject) -> usize {
    o.m()
}

/// Domain projection on morphisms: the top mono.
pub fn proj_plus_mor(f: &FatMorphism) -> &MonotoneMap {
    &f.top
}

/// Codomain projection on objects: `[n]`.
pub fn proj_delta(o: &FatObject) -> usize {
    o.n()
}

/// Codomain projection on morphisms: the bottom map.
pub fn proj_delta_mor(f: &FatMorphism) -> &MonotoneMap {
    &f.bot
}

/// `id_[k]`: nothing marked.
pub fn incl_flat(k: usize) -> FatObject {
    FatObject::from_eta_unchecked(MonotoneMap::identity(k))
}

/// `[k] ->> [0]`: everything marked.
pub fn incl_sharp(k: usize) -> FatObject {
    FatObject::from_eta_unchecked(MonotoneMap::from_raw(1, vec![0; k + 1]))
}

fn require_mono(a: &MonotoneMap) -> Result<()> {
    if a.dom_len() == 0 {
        return Err(Error::Augmented);
    }
    if !a.is_mono() {
        return Err(Error::NotMono(a.to_string()));
    }
    Ok(())
}

/// The flat inclusion on a mono: the square with both sides identities.
pub fn flat_mono(a: &MonotoneMap) -> Result<FatMorphism> {
    require_mono(a)?;
    let (m, k) = (a.dom_len() - 1, a.cod_len() - 1);
    Ok(FatMorphism::new_unchecked(
        incl_flat(m),
        incl_flat(k),
        a.clone(),
        a.clone(),
    ))
}

/// The sharp inclusion on a mono: the square over `id_[0]`.
pub fn sharp_mono(a: &MonotoneMap) -> Result<FatMorphism> {
    require_mono(a)?;
    let (m, k) = (a.dom_len() - 1, a.cod_len() - 1);
    Ok(FatMorphism::new_unchecked(
        incl_sharp(m),
        incl_sharp(k),
        a.clone(),
        MonotoneMap::identity(0),
    ))
}

/// Counit `flat(m) -> η` of the flat inclusion: top identity, bottom `η`.
pub fn flat_counit(o: &FatObject) -> Result<FatMorphism> {
    o.require_non_unit()?;
    Ok(FatMorphism::new_unchecked(
        incl_flat(o.m()),
        o.clone(),
        MonotoneMap::identity(o.m()),
        o.eta.clone(),
    ))
}

/// Unit `η -> sharp(m)` of the sharp inclusion: top identity, bottom `[n] ->> [0]`.
pub fn sharp_unit(o: &FatObject) -> Result<FatMorphism> {
    o.require_non_unit()?;
    Ok(FatMorphism::new_unchecked(
        o.clone(),
        incl_sharp(o.m()),
        MonotoneMap::identity(o.m()),
        MonotoneMap::from_raw(1, vec![0; o.n() + 1]),
    ))
}

/// Cocartesian lift of the mono `top` for the domain projection, computed as the
/// pushout of `o.eta` along `top`.
pub fn cocartesian_lift(o: &FatObject, top: &MonotoneMap) -> Result<FatMorphism> {
    o.require_non_unit()?;
    if top.dom_len() != o.eta.dom_len() {
        return Err(Error::SizeMismatch(format!(
            "{top} does not start at [{}]",
            o.m()
        )));
    }
    let p = simplex::pushout_along_epi(&o.eta, top)?;
    let cod = FatObject::from_eta_unchecked(p.leg_from_k);
    Ok(FatMorphism::new_unchecked(
        o.clone(),
        cod,
        top.clone(),
        p.leg_from_n,
    ))
}

/// Relative semiordinal sum: the two objects joined by an unmarked edge.
pub fn sum(a: &FatObject, b: &FatObject) -> FatObject {
    FatObject::from_eta_unchecked(simplex::ordinal_sum(&a.eta, &b.eta))
}

/// Relative sum of morphisms.
pub fn sum_mor(f: &FatMorphism, g: &FatMorphism) -> FatMorphism {
    FatMorphism::new_unchecked(
        sum(&f.dom, &g.dom),
        sum(&f.cod, &g.cod),
        simplex::ordinal_sum(&f.top, &g.top),
        simplex::ordinal_sum(&f.bot, &g.bot),
    )
}

/// Relative ∨-product: the last vertex of `a` glued to the first vertex of `b`.
pub fn vee_obj(a: &FatObject, b: &FatObject) -> Result<FatObject> {
    Ok(FatObject::from_eta_unchecked(simplex::vee(&a.eta, &b.eta)?))
}

/// Marked sum: the two objects joined by a marked edge.
pub fn marked_sum(a: &FatObject, b: &FatObject) -> Result<FatObject> {
    a.require_non_unit()?;
    b.require_non_unit()?;
    let shift = a.n();
    let images = a
        .eta
        .images()
        .iter()
        .copied()
        .chain(b.eta.images().iter().map(|&y| y + shift))
        .collect();
    Ok(FatObject::from_eta_unchecked(MonotoneMap::from_raw(
        a.eta.cod_len() + b.eta.cod_len() - 1,
        images,
    )))
}

/// ∨-product of two active morphisms.
pub fn vee_active(f: &FatMorphism, g: &FatMorphism) -> Result<FatMorphism> {
    for h in [f, g] {
        if !is_active_fat(h) {
            return Err(Error::NotActive(h.to_string()));
        }
    }
    FatMorphism::new(
        vee_obj(&f.dom, &g.dom)?,
        vee_obj(&f.cod, &g.cod)?,
        simplex::vee(&f.top, &g.top)?,
        simplex::vee(&f.bot, &g.bot)?,
    )
}
