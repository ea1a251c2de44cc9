//! Factorization of morphisms into faces.
//!
//! Every morphism factors as degenerated faces (`sigma`), bordering extensions and
//! vertical faces filling the old fibres (`phi`, `nu`), standard faces creating new
//! fibres (`delta`), and bordering extensions and vertical faces filling the new
//! fibres (`psi`, `tau`). All blocks are in application order with ascending indices.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::faces::{eval_letters, is_active_fat, Letter, LetterKind};
use crate::fatcat::{compose, FatMorphism, FatObject, VertexClass};
use crate::simplex::{
    active_inert_factor, compose_maps, epi_mono_factor, epi_to_degeneracies, pullback_along_mono,
    pushout_along_epi, MonotoneMap,
};

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NormalForm {
    pub anchor: FatObject,
    pub sigma: Vec<Letter>,
    pub phi: Vec<Letter>,
    pub nu: Vec<Letter>,
    pub delta: Vec<Letter>,
    pub psi: Vec<Letter>,
    pub tau: Vec<Letter>,
}

/// Block names in application order.
pub const BLOCK_NAMES: [&str; 6] = ["sigma", "phi", "nu", "delta", "psi", "tau"];

impl NormalForm {
    pub fn empty(anchor: FatObject) -> Self {
        Self {
            anchor,
            sigma: Vec::new(),
            phi: Vec::new(),
            nu: Vec::new(),
            delta: Vec::new(),
            psi: Vec::new(),
            tau: Vec::new(),
        }
    }

    pub fn blocks(&self) -> [&[Letter]; 6] {
        [&self.sigma, &self.phi, &self.nu, &self.delta, &self.psi, &self.tau]
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.blocks().concat()
    }

    pub fn len(&self) -> usize {
        self.blocks().iter().map(|b| b.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn eval(&self) -> Result<FatMorphism> {
        eval_letters(&self.anchor, &self.letters())
    }

    /// Block kinds, index order and evaluability.
    pub fn check_invariants(&self) -> Result<()> {
        let kinds = [
            LetterKind::D,
            LetterKind::B,
            LetterKind::V,
            LetterKind::S,
            LetterKind::B,
            LetterKind::V,
        ];
        for ((block, kind), name) in self.blocks().iter().zip(kinds).zip(BLOCK_NAMES) {
            if let Some(l) = block.iter().find(|l| l.kind() != kind) {
                return Err(Error::Invariant(format!("{l} in block {name}")));
            }
            let ordered = block.windows(2).all(|w| match kind {
                // degeneracies only weakly increase in application order
                LetterKind::D => w[0] <= w[1],
                _ => w[0] < w[1],
            });
            if !ordered {
                return Err(Error::Invariant(format!("block {name} is not ascending: {block:?}")));
            }
        }
        if self.psi.iter().any(|l| l.eps() != Some(1)) {
            return Err(Error::Invariant(format!("psi attaches a first vertex: {:?}", self.psi)));
        }
        self.eval().map(|_| ())
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::literal::print_word(&self.anchor, &self.letters()))
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.anchor)?;
        for (name, block) in BLOCK_NAMES.iter().zip(self.blocks()) {
            write!(f, " {name}{block:?}")?;
        }
        Ok(())
    }
}

fn missing_vertices(top: &MonotoneMap) -> Vec<usize> {
    let image: BTreeSet<usize> = top.images().iter().copied().collect();
    (0..top.cod_len()).filter(|v| !image.contains(v)).collect()
}

/// A morphism over an identity is a run of
/// bordering extensions followed by a run of vertical faces.
pub fn factor_vertical(f: &FatMorphism) -> Result<(Vec<Letter>, Vec<Letter>)> {
    if !f.bot().is_identity() {
        return Err(Error::InvalidFace(format!("{f} is not vertical")));
    }
    let cod = f.cod();
    let (mut phi, mut nu) = (Vec::new(), Vec::new());
    for v in missing_vertices(f.top()) {
        let fibre = cod.fibre_of(v);
        match cod.classify_vertex(v)? {
            VertexClass::LeftBordering => phi.push(Letter::B(fibre, 0)),
            VertexClass::RightBordering => phi.push(Letter::B(fibre, 1)),
            VertexClass::InnerMarked => nu.push(Letter::V(v)),
            VertexClass::Standard => {
                return Err(Error::Invariant(format!(
                    "{f} misses the standard vertex {v} over an identity"
                )))
            }
        }
    }
    phi.sort();
    Ok((phi, nu))
}

/// The five blocks of a morphism whose bottom row is a mono.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HorizontalFactors {
    pub phi: Vec<Letter>,
    pub nu: Vec<Letter>,
    pub delta: Vec<Letter>,
    pub psi: Vec<Letter>,
    pub tau: Vec<Letter>,
}

/// Horizontal factorization through the pullback of the codomain along the bottom.
pub fn factor_horizontal(f: &FatMorphism) -> Result<HorizontalFactors> {
    if !f.bot().is_mono() {
        return Err(Error::InvalidFace(format!("{f} is not horizontal")));
    }
    let (dom, cod) = (f.dom(), f.cod());
    let pb = pullback_along_mono(f.bot(), cod.eta())?;
    let mu = FatObject::new(pb.to_n.clone())?;
    let sizes = cod.fibre_sizes();
    let over_image: Vec<usize> = f.bot().images().iter().map(|&y| sizes[y]).collect();
    if mu.fibre_sizes() != over_image {
        return Err(Error::Invariant(format!(
            "pullback of {cod} along {} is not the union of the fibres over the image",
            f.bot()
        )));
    }
    let included = pb.to_m.images();
    let top = f
        .top()
        .images()
        .iter()
        .map(|y| {
            included
                .binary_search(y)
                .map_err(|_| Error::Invariant(format!("{f} leaves the fibres over its image")))
        })
        .collect::<Result<Vec<_>>>()?;
    let g = FatMorphism::new(
        dom.clone(),
        mu.clone(),
        MonotoneMap::new(mu.m() as isize, top)?,
        MonotoneMap::identity(mu.n()),
    )?;
    let (phi, nu) = factor_vertical(&g)?;
    let image: BTreeSet<usize> = f.bot().images().iter().copied().collect();
    let fresh: Vec<usize> = (0..=cod.n()).filter(|j| !image.contains(j)).collect();
    let delta = fresh.iter().map(|&j| Letter::S(j)).collect();
    let psi = fresh
        .iter()
        .filter(|&&j| sizes[j] > 0)
        .map(|&j| Letter::B(j, 1))
        .collect();
    let mut tau = Vec::new();
    for &j in &fresh {
        let (lo, hi) = (cod.ip(j)?, cod.ep(j)?);
        tau.extend((lo + 1..hi).map(Letter::V));
    }
    Ok(HorizontalFactors {
        phi,
        nu,
        delta,
        psi,
        tau,
    })
}

/// The six-block factorization of any morphism.
pub fn factor_full(f: &FatMorphism) -> Result<NormalForm> {
    f.dom().require_non_unit()?;
    let (epi, mono) = epi_mono_factor(f.bot());
    let sigma = epi_to_degeneracies(&epi)?
        .into_iter()
        .map(Letter::D)
        .collect();
    let mid = FatObject::new(compose_maps(&epi, f.dom().eta())?)?;
    let rest = FatMorphism::new(mid, f.cod().clone(), f.top().clone(), mono)?;
    let h = factor_horizontal(&rest)?;
    Ok(NormalForm {
        anchor: f.dom().clone(),
        sigma,
        phi: h.phi,
        nu: h.nu,
        delta: h.delta,
        psi: h.psi,
        tau: h.tau,
    })
}

/// The diagonal, vertical and horizontal parts `(d, v, h)` with `f = h ∘ v ∘ d`.
pub fn ternary_factor(f: &FatMorphism) -> Result<(FatMorphism, FatMorphism, FatMorphism)> {
    let nf = factor_full(f)?;
    let d = eval_letters(&nf.anchor, &nf.sigma)?;
    let v = eval_letters(d.cod(), &[nf.phi.as_slice(), &nf.nu].concat())?;
    let h = eval_letters(v.cod(), &[nf.delta.as_slice(), &nf.psi, &nf.tau].concat())?;
    Ok((d, v, h))
}

/// `f = inert ∘ active` with the active part a pushout square.
pub fn active_inert_factor_fat(f: &FatMorphism) -> Result<(FatMorphism, FatMorphism)> {
    f.dom().require_non_unit()?;
    let (act, inert) = active_inert_factor(f.top())?;
    let p = pushout_along_epi(f.dom().eta(), &act)?;
    let rho = FatObject::new(p.leg_from_k.clone())?;
    let active = FatMorphism::new(f.dom().clone(), rho.clone(), act, p.leg_from_n)?;
    let rho_eta = rho.eta().images();
    let bot = (0..=rho.n())
        .map(|y| {
            let x = rho_eta.partition_point(|&z| z < y);
            f.cod().fibre_of(inert.apply(x))
        })
        .collect();
    let inert = FatMorphism::new(
        rho,
        f.cod().clone(),
        inert,
        MonotoneMap::new(f.cod().n() as isize, bot)?,
    )?;
    debug_assert!(is_active_fat(&active));
    debug_assert_eq!(compose(&inert, &active).as_ref(), Ok(f));
    Ok((active, inert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::{deg_face, std_face, vert_face};
    use crate::oracle::enum_morphisms;
    use Letter::{B, D, S, V};

    fn obj(s: &str) -> FatObject {
        FatObject::from_edge_string(s).unwrap()
    }

    fn mor(dom: &str, cod: &str, top: &[usize], bot: &[usize]) -> FatMorphism {
        let (d, c) = (obj(dom), obj(cod));
        FatMorphism::new(
            d,
            c.clone(),
            MonotoneMap::new(c.m() as isize, top.to_vec()).unwrap(),
            MonotoneMap::new(c.n() as isize, bot.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn vertical_examples() {
        assert_eq!(factor_vertical(&mor("", "=", &[0], &[0])).unwrap(), (vec![B(0, 1)], vec![]));
        assert_eq!(factor_vertical(&mor("=", "==", &[0, 2], &[0])).unwrap(), (vec![], vec![V(1)]));
        assert_eq!(
            factor_vertical(&mor("", "==", &[0], &[0])).unwrap(),
            (vec![B(0, 1)], vec![V(1)])
        );
    }

    #[test]
    fn horizontal_examples() {
        let h = factor_horizontal(&std_face(&obj("-"), 1).unwrap()).unwrap();
        assert_eq!(h, HorizontalFactors { delta: vec![S(1)], ..Default::default() });
        let h = factor_horizontal(&FatMorphism::identity(&obj("-"))).unwrap();
        assert_eq!(h, HorizontalFactors::default());
        let f = mor("", "=-", &[2], &[1]);
        let h = factor_horizontal(&f).unwrap();
        assert_eq!(h.delta, vec![S(0)]);
        assert_eq!(h.psi, vec![B(0, 1)]);
        let nf = factor_full(&f).unwrap();
        assert_eq!(nf.eval().unwrap(), f);
    }

    #[test]
    fn full_examples() {
        let nf = factor_full(&deg_face(&obj("-"), 0).unwrap()).unwrap();
        assert_eq!(nf.letters(), vec![D(0)]);
        let f = mor("-", "==", &[0, 2], &[0, 0]);
        let nf = factor_full(&f).unwrap();
        assert_eq!((nf.sigma.clone(), nf.nu.clone()), (vec![D(0)], vec![V(1)]));
        assert_eq!(nf.len(), 2);
        assert!(factor_full(&FatMorphism::identity(&obj("-="))).unwrap().is_empty());
    }

    #[test]
    fn ternary_examples() {
        let f = mor("-", "==", &[0, 2], &[0, 0]);
        let (d, v, h) = ternary_factor(&f).unwrap();
        assert_eq!(d, deg_face(&obj("-"), 0).unwrap());
        assert_eq!(v, vert_face(&obj("=="), 1).unwrap());
        assert!(h.is_identity());
    }

    #[test]
    fn active_inert_examples() {
        let v = vert_face(&obj("=="), 1).unwrap();
        let (a, i) = active_inert_factor_fat(&v).unwrap();
        assert_eq!(a, v);
        assert!(i.is_identity());
        let s = std_face(&obj("-"), 1).unwrap();
        let (a, i) = active_inert_factor_fat(&s).unwrap();
        assert!(a.is_identity());
        assert_eq!(i, s);
    }

    #[test]
    fn round_trip_small() {
        for f in enum_morphisms(3) {
            let nf = factor_full(&f).unwrap();
            nf.check_invariants().unwrap();
            assert_eq!(nf.eval().unwrap(), f, "{nf:?}");
            let (a, i) = active_inert_factor_fat(&f).unwrap();
            assert_eq!(compose(&i, &a).unwrap(), f);
        }
    }
}
