//! The generating faces and the bordering extensions.
//!
//! A [`Letter`] names a face independently of the object it is applied to. Indices
//! follow the codomain-side conventions: `d_i` collapses bottom edge `i` of its
//! domain, `s_i` inserts a new empty fibre at slot `i` of its codomain, `v_p`
//! inserts a vertex at position `p` of its codomain, and `b_i^ε` attaches a new
//! first (`ε = 0`) or last (`ε = 1`) vertex to fibre `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fatcat::{compose, FatMorphism, FatObject, VertexClass};
use crate::simplex::{pushout_along_epi, MonotoneMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LetterKind {
    D,
    S,
    V,
    B,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// Degenerated face `d_i`.
    D(usize),
    /// Standard face `s_i`.
    S(usize),
    /// Vertical face `v_p`.
    V(usize),
    /// Bordering extension `b_i^ε`.
    B(usize, u8),
}

impl Letter {
    pub fn kind(self) -> LetterKind {
        match self {
            Letter::D(_) => LetterKind::D,
            Letter::S(_) => LetterKind::S,
            Letter::V(_) => LetterKind::V,
            Letter::B(..) => LetterKind::B,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Letter::D(i) | Letter::S(i) | Letter::V(i) | Letter::B(i, _) => i,
        }
    }

    pub fn eps(self) -> Option<u8> {
        match self {
            Letter::B(_, e) => Some(e),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Letter::D(i) => write!(f, "d{i}"),
            Letter::S(i) => write!(f, "s{i}"),
            Letter::V(i) => write!(f, "v{i}"),
            Letter::B(i, e) => write!(f, "b{i}.{e}"),
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let syntax = |offset, message: &str| Error::Syntax {
            offset,
            message: message.to_string(),
        };
        let mut chars = s.chars();
        let kind = chars.next().ok_or_else(|| syntax(0, "empty letter"))?;
        let rest = chars.as_str();
        let number = |text: &str, offset: usize| -> Result<usize> {
            if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(offset, "expected a non-negative index"));
            }
            text.parse()
                .map_err(|_| syntax(offset, "index does not fit in a machine word"))
        };
        match kind {
            'd' => Ok(Letter::D(number(rest, 1)?)),
            's' => Ok(Letter::S(number(rest, 1)?)),
            'v' => Ok(Letter::V(number(rest, 1)?)),
            'b' => {
                let (index, eps) = rest
                    .split_once('.')
                    .ok_or_else(|| syntax(1 + rest.len(), "expected `.0` or `.1` after the index"))?;
                let index = number(index, 1)?;
                let offset = 2 + rest.find('.').unwrap_or(0);
                match eps {
                    "0" => Ok(Letter::B(index, 0)),
                    "1" => Ok(Letter::B(index, 1)),
                    _ => Err(syntax(offset, "the side of a bordering extension is 0 or 1")),
                }
            }
            other => Err(syntax(0, &format!("unknown letter kind `{other}`"))),
        }
    }
}

impl Serialize for Letter {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

fn invalid(letter: Letter, reason: impl Into<String>) -> Error {
    Error::InvalidStep {
        position: 0,
        letter: letter.to_string(),
        reason: reason.into(),
    }
}

/// Position of the vertex that `b_i^ε` inserts into an object (fibre `i` of `o`):
/// the current first vertex for `ε = 0`, one past the current last vertex otherwise.
pub fn bordering_vertex(o: &FatObject, i: usize, eps: u8) -> Result<usize> {
    if eps == 0 {
        o.ip(i)
    } else {
        Ok(o.ep(i)? + 1)
    }
}

fn insert_at(images: &[usize], pos: usize, value: usize, shift_from: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(images.len() + 1);
    out.extend(images[..pos].iter().map(|&y| if y >= shift_from { y + 1 } else { y }));
    out.push(value);
    out.extend(images[pos..].iter().map(|&y| if y >= shift_from { y + 1 } else { y }));
    out
}

/// Applies `l` to the object `o`, returning the face whose domain is `o`.
pub fn step(o: &FatObject, l: Letter) -> Result<FatMorphism> {
    let cod = step_cod(o, l)?;
    let (m, n) = (o.m(), o.n());
    let (top, bot) = match l {
        Letter::D(i) => (
            MonotoneMap::identity(m),
            MonotoneMap::from_raw(n, (0..=n).map(|y| if y > i { y - 1 } else { y }).collect()),
        ),
        Letter::S(i) => {
            let p = if i <= n { o.ip(i)? } else { m + 1 };
            (face(m + 1, p), face(n + 1, i))
        }
        Letter::V(p) => (face(m + 1, p), MonotoneMap::identity(n)),
        Letter::B(i, eps) => (face(m + 1, bordering_vertex(o, i, eps)?), MonotoneMap::identity(n)),
    };
    Ok(FatMorphism::new_unchecked(o.clone(), cod, top, bot))
}

/// The codomain of [`step`], without building the square.
pub fn step_cod(o: &FatObject, l: Letter) -> Result<FatObject> {
    if o.is_unit() {
        return Err(invalid(l, "the empty object has no faces"));
    }
    let (m, n) = (o.m(), o.n());
    let eta = o.eta().images();
    let no_shift = usize::MAX;
    let (cod_len, images) = match l {
        Letter::D(i) => {
            if i >= n {
                return Err(invalid(l, format!("no bottom edge {i} in an object over [{n}]")));
            }
            (n, eta.iter().map(|&y| if y > i { y - 1 } else { y }).collect())
        }
        Letter::S(i) => {
            if i > n + 1 {
                return Err(invalid(l, format!("no fibre slot {i} in an object over [{n}]")));
            }
            let p = if i <= n { o.ip(i)? } else { m + 1 };
            (n + 2, insert_at(eta, p, i, i))
        }
        Letter::V(p) => {
            if p == 0 || p > m || eta[p - 1] != eta[p] {
                return Err(invalid(l, format!("position {p} does not split a marked edge")));
            }
            (n + 1, insert_at(eta, p, eta[p], no_shift))
        }
        Letter::B(i, eps) => {
            if eps > 1 {
                return Err(invalid(l, "the side of a bordering extension is 0 or 1"));
            }
            if i > n {
                return Err(invalid(l, format!("no fibre {i} in an object over [{n}]")));
            }
            let p = bordering_vertex(o, i, eps)?;
            (n + 1, insert_at(eta, p, i, no_shift))
        }
    };
    Ok(FatObject::from_eta_unchecked(MonotoneMap::from_raw(cod_len, images)))
}

fn face(n: usize, i: usize) -> MonotoneMap {
    MonotoneMap::from_raw(n + 1, (0..n).map(|x| if x < i { x } else { x + 1 }).collect())
}

/// Composite of the letters applied one after the other, starting at `anchor`.
pub fn eval_letters(anchor: &FatObject, letters: &[Letter]) -> Result<FatMorphism> {
    let mut acc = FatMorphism::identity(anchor);
    for (position, &l) in letters.iter().enumerate() {
        let f = step(acc.cod(), l).map_err(|e| match e {
            Error::InvalidStep { letter, reason, .. } => Error::InvalidStep {
                position,
                letter,
                reason,
            },
            other => other,
        })?;
        acc = compose(&f, &acc)?;
    }
    Ok(acc)
}

/// The objects visited by the letters: `anchor`, then the codomain after each letter.
pub fn path_objects(anchor: &FatObject, letters: &[Letter]) -> Result<Vec<FatObject>> {
    let mut out = Vec::with_capacity(letters.len() + 1);
    out.push(anchor.clone());
    for (position, &l) in letters.iter().enumerate() {
        let next = step_cod(out.last().unwrap(), l).map_err(|e| match e {
            Error::InvalidStep { letter, reason, .. } => Error::InvalidStep {
                position,
                letter,
                reason,
            },
            other => other,
        })?;
        out.push(next);
    }
    Ok(out)
}

/// Every letter that can be applied to `o`, in a fixed order.
pub fn valid_letters(o: &FatObject) -> Vec<Letter> {
    if o.is_unit() {
        return Vec::new();
    }
    let (m, n) = (o.m(), o.n());
    let mut out: Vec<Letter> = (0..n).map(Letter::D).collect();
    out.extend((0..=n + 1).map(Letter::S));
    out.extend((1..=m).filter(|&p| o.is_marked(p - 1)).map(Letter::V));
    for i in 0..=n {
        out.push(Letter::B(i, 0));
        out.push(Letter::B(i, 1));
    }
    out
}

/// `d_i : η -> ∂̄(η, i)`.
pub fn deg_face(o: &FatObject, i: usize) -> Result<FatMorphism> {
    o.require_non_unit()?;
    if i >= o.n() {
        return Err(Error::InvalidFace(format!(
            "{o} has no unmarked bottom edge {i} to collapse"
        )));
    }
    step(o, Letter::D(i))
}

/// `s_i : ∂(η, i) -> η`; fibre `i` of `o` must be a single standard vertex.
pub fn std_face(o: &FatObject, i: usize) -> Result<FatMorphism> {
    o.require_non_unit()?;
    if i > o.n() {
        return Err(Error::InvalidFace(format!("{o} has no fibre {i}")));
    }
    let bv = o.ip(i)?;
    if o.ep(i)? != bv {
        return Err(Error::InvalidFace(format!("fibre {i} of {o} is not a standard vertex")));
    }
    if o.m() == 0 {
        return Err(Error::InvalidFace(format!("removing the only vertex of {o}")));
    }
    let images: Vec<usize> = o
        .eta()
        .images()
        .iter()
        .enumerate()
        .filter(|&(x, _)| x != bv)
        .map(|(_, &y)| if y > i { y - 1 } else { y })
        .collect();
    let dom = FatObject::from_eta_unchecked(MonotoneMap::from_raw(o.n(), images));
    Ok(FatMorphism::new_unchecked(
        dom,
        o.clone(),
        face(o.m(), bv),
        face(o.n(), i),
    ))
}

/// `v_p : ∂̂(η, p) -> η`; vertex `p` of `o` must be inner marked.
pub fn vert_face(o: &FatObject, p: usize) -> Result<FatMorphism> {
    if o.classify_vertex(p)? != VertexClass::InnerMarked {
        return Err(Error::InvalidFace(format!("vertex {p} of {o} is not inner marked")));
    }
    let mut images = o.eta().images().to_vec();
    images.remove(p);
    let dom = FatObject::from_eta_unchecked(MonotoneMap::from_raw(o.n() + 1, images));
    Ok(FatMorphism::new_unchecked(
        dom,
        o.clone(),
        face(o.m(), p),
        MonotoneMap::identity(o.n()),
    ))
}

/// `b_i^ε = d_i ∘ s_{i+ε} : ∂(η, i+ε) -> ∂̄(η, i)`.
pub fn bord_ext(o: &FatObject, i: usize, eps: u8) -> Result<FatMorphism> {
    if eps > 1 {
        return Err(Error::InvalidFace(format!("side {eps} is not 0 or 1")));
    }
    let d = deg_face(o, i)?;
    let s = std_face(o, i + eps as usize)?;
    compose(&d, &s)
}

/// The single missing vertex of a one-face mono, if `top` is one.
fn single_face(top: &MonotoneMap) -> Option<usize> {
    if top.cod_len() != top.dom_len() + 1 || !top.is_mono() {
        return None;
    }
    let images = top.images();
    Some((0..images.len()).find(|&x| images[x] != x).unwrap_or(images.len()))
}

/// A bottom-identity morphism whose top is a single face is either a
/// vertical face or a bordering extension, depending on the removed vertex.
pub fn classify_single_vertical(f: &FatMorphism) -> Result<Letter> {
    if !f.bot().is_identity() {
        return Err(Error::InvalidFace(format!("{f} does not have an identity bottom")));
    }
    let p = single_face(f.top())
        .ok_or_else(|| Error::InvalidFace(format!("the top of {f} is not a single face")))?;
    let fibre = f.cod().fibre_of(p);
    match f.cod().classify_vertex(p)? {
        VertexClass::InnerMarked => Ok(Letter::V(p)),
        VertexClass::LeftBordering => Ok(Letter::B(fibre, 0)),
        VertexClass::RightBordering => Ok(Letter::B(fibre, 1)),
        VertexClass::Standard => Err(Error::InvalidFace(format!(
            "{f} removes a standard vertex over an identity"
        ))),
    }
}

/// The letter `l` with `step(f.dom(), l) == f`, or `None` when `f` is not a single face.
pub fn recognize(f: &FatMorphism) -> Option<Letter> {
    let (top, bot) = (f.top(), f.bot());
    let candidate = if top.is_identity() {
        if bot.dom_len() != bot.cod_len() + 1 || !bot.is_epi() {
            return None;
        }
        let images = bot.images();
        Letter::D((0..images.len() - 1).find(|&y| images[y] == images[y + 1])?)
    } else if bot.is_identity() {
        classify_single_vertical(f).ok()?
    } else {
        single_face(top)?;
        Letter::S(single_face(bot)?)
    };
    match step(f.dom(), candidate) {
        Ok(g) if &g == f => Some(candidate),
        _ => None,
    }
}

/// Active: the top is an active mono and the square is a pushout.
pub fn is_active_fat(f: &FatMorphism) -> bool {
    if f.dom().is_unit() || !f.top().is_active() {
        return false;
    }
    match pushout_along_epi(f.dom().eta(), f.top()) {
        Ok(p) => &p.leg_from_k == f.cod().eta() && &p.leg_from_n == f.bot(),
        Err(_) => false,
    }
}

pub fn is_inert_fat(f: &FatMorphism) -> bool {
    f.top().is_inert()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(s: &str) -> FatObject {
        FatObject::from_edge_string(s).unwrap()
    }

    #[test]
    fn letter_syntax() {
        for text in ["d3", "s1", "v2", "b2.0", "b2.1"] {
            assert_eq!(text.parse::<Letter>().unwrap().to_string(), text);
        }
        for bad in ["", "x1", "d", "b2", "b2.2", "d-1", "s1x"] {
            assert!(bad.parse::<Letter>().is_err(), "{bad}");
        }
    }

    #[test]
    fn degenerated_faces() {
        let d = deg_face(&obj("-"), 0).unwrap();
        assert_eq!((d.cod(), d.bot().images()), (&obj("="), &[0, 0][..]));
        let d = deg_face(&obj("-="), 0).unwrap();
        assert_eq!(d.cod(), &obj("=="));
        assert!(d.top().is_identity());
        assert!(deg_face(&obj("="), 0).is_err());
    }

    #[test]
    fn standard_faces() {
        let s = std_face(&obj("-"), 1).unwrap();
        assert_eq!((s.dom(), s.top().images(), s.bot().images()), (&obj(""), &[0][..], &[0][..]));
        let s = std_face(&obj("-="), 0).unwrap();
        assert_eq!((s.dom(), s.top().images(), s.bot().images()), (&obj("="), &[1, 2][..], &[1][..]));
        assert!(std_face(&obj("="), 0).is_err());
    }

    #[test]
    fn vertical_faces() {
        let v = vert_face(&obj("=="), 1).unwrap();
        assert_eq!((v.dom(), v.top().images()), (&obj("="), &[0, 2][..]));
        assert!(vert_face(&obj("-="), 1).is_err());
        let v = vert_face(&obj("==="), 2).unwrap();
        assert_eq!((v.dom(), v.top()), (&obj("=="), &face(3, 2)));
    }

    #[test]
    fn bordering_extensions() {
        let b = bord_ext(&obj("-"), 0, 1).unwrap();
        assert_eq!((b.dom(), b.cod(), b.top().images()), (&obj(""), &obj("="), &[0][..]));
        assert!(b.bot().is_identity());
        let b = bord_ext(&obj("-"), 0, 0).unwrap();
        assert_eq!(b.top().images(), &[1]);
        assert!(bord_ext(&obj("="), 0, 0).is_err());
    }

    #[test]
    fn steps() {
        let s = step(&obj(""), Letter::S(0)).unwrap();
        assert_eq!((s.cod(), s.top().images()), (&obj("-"), &[1][..]));
        assert_eq!(s, std_face(&obj("-"), 0).unwrap());
        let v = step(&obj("="), Letter::V(1)).unwrap();
        assert_eq!(v, vert_face(&obj("=="), 1).unwrap());
        assert_eq!(step(&obj("-"), Letter::D(0)).unwrap(), deg_face(&obj("-"), 0).unwrap());
        assert!(step(&obj("="), Letter::D(0)).is_err());
        assert!(step(&obj("-"), Letter::V(1)).is_err());
    }

    #[test]
    fn recognition() {
        let f = FatMorphism::new(obj(""), obj("="), face(1, 1), MonotoneMap::identity(0)).unwrap();
        assert_eq!(recognize(&f), Some(Letter::B(0, 1)));
        assert_eq!(classify_single_vertical(&f).unwrap(), Letter::B(0, 1));
        let f = vert_face(&obj("=="), 1).unwrap();
        assert_eq!(recognize(&f), Some(Letter::V(1)));
        assert_eq!(recognize(&FatMorphism::identity(&obj("-="))), None);
        assert_eq!(recognize(&std_face(&obj("-="), 0).unwrap()), Some(Letter::S(0)));
        assert_eq!(recognize(&deg_face(&obj("--"), 1).unwrap()), Some(Letter::D(1)));
    }

    #[test]
    fn activity() {
        assert!(is_active_fat(&vert_face(&obj("=="), 1).unwrap()));
        assert!(!is_active_fat(&std_face(&obj("-"), 1).unwrap()));
        let id = FatMorphism::identity(&obj("-="));
        assert!(is_active_fat(&id) && is_inert_fat(&id));
    }

    #[test]
    fn valid_letters_all_step() {
        for s in ["", "-", "=", "-=", "==-"] {
            for l in valid_letters(&obj(s)) {
                let f = step(&obj(s), l).unwrap();
                assert_eq!(recognize(&f), Some(l), "{s} {l}");
            }
        }
    }
}
