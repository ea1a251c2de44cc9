//! The simplex category: weakly monotone maps between finite ordinals.
//!
//! An ordinal `[n]` is `{0, ..., n}`; `[-1]` is the empty ordinal of the augmented
//! category. Maps are stored as explicit image lists. Canonical decompositions are
//! reported in *application order*: the first index in the returned sequence is the
//! first map applied. Written right-to-left as a composite, `[a, b, c]` reads `c ∘ b ∘ a`.

use std::fmt;

use crate::error::{Error, Result};

/// A weakly order-preserving map `[dom_size] -> [cod_size]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    images: Vec<usize>,
    cod_len: usize,
}

impl MonotoneMap {
    /// Builds a map into `[cod_size]` from its image list, validating range and monotonicity.
    pub fn new(cod_size: isize, images: Vec<usize>) -> Result<Self> {
        if cod_size < -1 {
            return Err(Error::SizeMismatch(format!("codomain size {cod_size} < -1")));
        }
        let cod_len = (cod_size + 1) as usize;
        for (position, &image) in images.iter().enumerate() {
            if image >= cod_len {
                return Err(Error::ImageOutOfRange {
                    position,
                    image,
                    cod_size,
                });
            }
            if position > 0 && images[position - 1] > image {
                return Err(Error::NotMonotone(position));
            }
        }
        Ok(Self { images, cod_len })
    }

    /// Like [`MonotoneMap::new`] but also checks the domain size.
    pub fn with_sizes(dom_size: isize, cod_size: isize, images: Vec<usize>) -> Result<Self> {
        if dom_size < -1 || images.len() as isize != dom_size + 1 {
            return Err(Error::SizeMismatch(format!(
                "domain [{dom_size}] needs {} images, got {}",
                dom_size + 1,
                images.len()
            )));
        }
        Self::new(cod_size, images)
    }

    /// Crate-internal constructor for image lists already known to be valid.
    pub(crate) fn from_raw(cod_len: usize, images: Vec<usize>) -> Self {
        debug_assert!(images.iter().all(|&y| y < cod_len));
        debug_assert!(images.windows(2).all(|w| w[0] <= w[1]));
        Self { images, cod_len }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_raw(n + 1, (0..=n).collect())
    }

    /// The unique map out of the empty ordinal.
    pub fn from_empty(cod_size: isize) -> Result<Self> {
        Self::new(cod_size, Vec::new())
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn dom_size(&self) -> isize {
        self.images.len() as isize - 1
    }

    pub fn cod_size(&self) -> isize {
        self.cod_len as isize - 1
    }

    /// Number of elements of the domain.
    pub fn dom_len(&self) -> usize {
        self.images.len()
    }

    /// Number of elements of the codomain.
    pub fn cod_len(&self) -> usize {
        self.cod_len
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_identity(&self) -> bool {
        self.cod_len == self.images.len() && self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_epi(&self) -> bool {
        let mut next = 0;
        for &y in &self.images {
            if y == next {
                next += 1;
            } else if y > next {
                return false;
            }
        }
        next == self.cod_len
    }

    pub fn is_mono(&self) -> bool {
        self.images.windows(2).all(|w| w[0] < w[1])
    }

    /// Endpoint preserving: `f(0) = 0` and `f(m) = n`.
    pub fn is_active(&self) -> bool {
        match (self.images.first(), self.images.last()) {
            (Some(&first), Some(&last)) => first == 0 && last + 1 == self.cod_len,
            _ => self.cod_len == 0,
        }
    }

    /// Distance preserving: `f(i + 1) = f(i) + 1`.
    pub fn is_inert(&self) -> bool {
        self.images.windows(2).all(|w| w[1] == w[0] + 1)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        compose_maps(self, f)
    }

    fn require_nonempty(&self) -> Result<()> {
        if self.images.is_empty() {
            Err(Error::Augmented)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:[", self.dom_size(), self.cod_size())?;
        for (k, y) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{y}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Pointwise composite `g ∘ f`.
pub fn compose_maps(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.cod_len != g.images.len() {
        return Err(Error::SizeMismatch(format!(
            "cannot compose {g} after {f}: codomain [{}] vs domain [{}]",
            f.cod_size(),
            g.dom_size()
        )));
    }
    let images = f.images.iter().map(|&x| g.images[x]).collect();
    Ok(MonotoneMap::from_raw(g.cod_len, images))
}

/// The face `δ_i : [n-1] -> [n]` skipping `i`.
pub fn face_map(n: usize, i: usize) -> Result<MonotoneMap> {
    if n == 0 {
        return Err(Error::Augmented);
    }
    if i > n {
        return Err(Error::IndexOutOfRange {
            what: "face",
            index: i,
        });
    }
    let images = (0..n).map(|x| if x < i { x } else { x + 1 }).collect();
    Ok(MonotoneMap::from_raw(n + 1, images))
}

/// The degeneracy `σ_i : [n+1] -> [n]` repeating `i`.
pub fn degeneracy_map(n: usize, i: usize) -> Result<MonotoneMap> {
    if i > n {
        return Err(Error::IndexOutOfRange {
            what: "degeneracy",
            index: i,
        });
    }
    let images = (0..=n + 1).map(|x| if x <= i { x } else { x - 1 }).collect();
    Ok(MonotoneMap::from_raw(n + 1, images))
}

/// Unique factorisation `f = mono ∘ epi` through the image of `f`.
pub fn epi_mono_factor(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let mut image: Vec<usize> = Vec::new();
    let mut epi = Vec::with_capacity(f.images.len());
    for &y in &f.images {
        if image.last() != Some(&y) {
            image.push(y);
        }
        epi.push(image.len() - 1);
    }
    let epi = MonotoneMap::from_raw(image.len(), epi);
    let mono = MonotoneMap::from_raw(f.cod_len, image);
    (epi, mono)
}

/// Face indices, in application order, whose composite is the mono `f`.
///
/// The indices are the missing values of `f` in increasing order.
pub fn mono_to_faces(f: &MonotoneMap) -> Result<Vec<usize>> {
    f.require_nonempty()?;
    if !f.is_mono() {
        return Err(Error::NotMono(f.to_string()));
    }
    let mut hit = vec![false; f.cod_len];
    for &y in &f.images {
        hit[y] = true;
    }
    Ok((0..f.cod_len).filter(|&y| !hit[y]).collect())
}

/// Degeneracy indices, in application order, whose composite is the epi `f`.
///
/// The sequence is weakly increasing: the `k`-th collapsed edge `e_k` of the
/// domain contributes `σ_{e_k - k}`.
pub fn epi_to_degeneracies(f: &MonotoneMap) -> Result<Vec<usize>> {
    f.require_nonempty()?;
    if !f.is_epi() {
        return Err(Error::NotEpi(f.to_string()));
    }
    Ok(f.images
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == w[1])
        .enumerate()
        .map(|(k, (edge, _))| edge - k)
        .collect())
}

/// Composes face maps given in application order, starting from `[dom_size]`.
pub fn compose_faces(dom_size: usize, indices: &[usize]) -> Result<MonotoneMap> {
    let mut acc = MonotoneMap::identity(dom_size);
    for &i in indices {
        let face = face_map(acc.cod_len, i)?;
        acc = compose_maps(&face, &acc)?;
    }
    Ok(acc)
}

/// Composes degeneracy maps given in application order, starting from `[dom_size]`.
pub fn compose_degeneracies(dom_size: usize, indices: &[usize]) -> Result<MonotoneMap> {
    let mut acc = MonotoneMap::identity(dom_size);
    for &i in indices {
        if acc.cod_len < 2 {
            return Err(Error::IndexOutOfRange {
                what: "degeneracy",
                index: i,
            });
        }
        let deg = degeneracy_map(acc.cod_len - 2, i)?;
        acc = compose_maps(&deg, &acc)?;
    }
    Ok(acc)
}

/// Unique factorisation `f = inert ∘ active`.
pub fn active_inert_factor(f: &MonotoneMap) -> Result<(MonotoneMap, MonotoneMap)> {
    f.require_nonempty()?;
    let lo = f.images[0];
    let hi = *f.images.last().unwrap();
    let active = MonotoneMap::from_raw(hi - lo + 1, f.images.iter().map(|&y| y - lo).collect());
    let inert = MonotoneMap::from_raw(f.cod_len, (lo..=hi).collect());
    Ok((active, inert))
}

/// A pushout square `N <<- M >-> K` completed by `N -> P <- K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout {
    pub cod_size: usize,
    pub leg_from_n: MonotoneMap,
    pub leg_from_k: MonotoneMap,
}

/// Pushout of an epi `e : M ->> N` and a mono `a : M >-> K`.
///
/// `K` is quotiented by the convex closure of the identifications `a(x) ~ a(y)`
/// whenever `e(x) = e(y)`.
pub fn pushout_along_epi(e: &MonotoneMap, a: &MonotoneMap) -> Result<Pushout> {
    e.require_nonempty()?;
    if !e.is_epi() {
        return Err(Error::NotEpi(e.to_string()));
    }
    if !a.is_mono() {
        return Err(Error::NotMono(a.to_string()));
    }
    if e.images.len() != a.images.len() {
        return Err(Error::SizeMismatch(format!(
            "span legs {e} and {a} have different domains"
        )));
    }
    // glued[y] means y is identified with y - 1.
    let mut glued = vec![false; a.cod_len];
    for x in 1..e.images.len() {
        if e.images[x] == e.images[x - 1] {
            for y in a.images[x - 1] + 1..=a.images[x] {
                glued[y] = true;
            }
        }
    }
    let mut class = Vec::with_capacity(a.cod_len);
    let mut current = 0usize;
    for (y, &g) in glued.iter().enumerate() {
        if y > 0 && !g {
            current += 1;
        }
        class.push(current);
    }
    let cod_len = current + 1;
    let mut leg_from_n = vec![0; e.cod_len];
    for (x, &n) in e.images.iter().enumerate() {
        leg_from_n[n] = class[a.images[x]];
    }
    Ok(Pushout {
        cod_size: cod_len - 1,
        leg_from_n: MonotoneMap::from_raw(cod_len, leg_from_n),
        leg_from_k: MonotoneMap::from_raw(cod_len, class),
    })
}

/// A pullback square `P -> M'`, `P -> N` over the cospan `N >-> N' <<- M'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pullback {
    pub dom_size: usize,
    pub to_m: MonotoneMap,
    pub to_n: MonotoneMap,
}

/// Pullback of an epi `k : M' ->> N'` along a mono `b : N >-> N'`: the fibres of
/// `k` over the image of `b`.
pub fn pullback_along_mono(b: &MonotoneMap, k: &MonotoneMap) -> Result<Pullback> {
    b.require_nonempty()?;
    if !b.is_mono() {
        return Err(Error::NotMono(b.to_string()));
    }
    if !k.is_epi() {
        return Err(Error::NotEpi(k.to_string()));
    }
    if b.cod_len != k.cod_len {
        return Err(Error::SizeMismatch(format!(
            "cospan legs {b} and {k} have different codomains"
        )));
    }
    let mut preimage = vec![None; b.cod_len];
    for (x, &y) in b.images.iter().enumerate() {
        preimage[y] = Some(x);
    }
    let mut to_m = Vec::new();
    let mut to_n = Vec::new();
    for (x, &y) in k.images.iter().enumerate() {
        if let Some(n) = preimage[y] {
            to_m.push(x);
            to_n.push(n);
        }
    }
    let dom_size = to_m.len() - 1;
    Ok(Pullback {
        dom_size,
        to_m: MonotoneMap::from_raw(k.images.len(), to_m),
        to_n: MonotoneMap::from_raw(b.images.len(), to_n),
    })
}

/// Ordinal sum (join) `f ⊕ g : [a] ⊕ [c] -> [b] ⊕ [d]`; the empty ordinal is its unit.
pub fn ordinal_sum(f: &MonotoneMap, g: &MonotoneMap) -> MonotoneMap {
    let shift = f.cod_len;
    let images = f
        .images
        .iter()
        .copied()
        .chain(g.images.iter().map(|&y| y + shift))
        .collect();
    MonotoneMap::from_raw(f.cod_len + g.cod_len, images)
}

/// The ∨-product of active maps: glue the last element of the first to the first
/// element of the second.
pub fn vee(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    f.require_nonempty()?;
    g.require_nonempty()?;
    for h in [f, g] {
        if !h.is_active() {
            return Err(Error::NotActive(h.to_string()));
        }
    }
    let shift = f.cod_len - 1;
    let images = f
        .images
        .iter()
        .copied()
        .chain(g.images.iter().skip(1).map(|&y| y + shift))
        .collect();
    Ok(MonotoneMap::from_raw(f.cod_len + g.cod_len - 1, images))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(cod: isize, images: &[usize]) -> MonotoneMap {
        MonotoneMap::new(cod, images.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_image_lists() {
        assert!(matches!(
            MonotoneMap::new(1, vec![0, 2]),
            Err(Error::ImageOutOfRange { .. })
        ));
        assert_eq!(MonotoneMap::new(2, vec![1, 0]), Err(Error::NotMonotone(1)));
        assert!(MonotoneMap::with_sizes(2, 2, vec![0, 1]).is_err());
    }

    #[test]
    fn composition_examples() {
        let sigma0 = map(1, &[0, 0, 1]);
        assert!(compose_maps(&sigma0, &map(1, &[0, 1])).is_err());
        assert_eq!(compose_maps(&sigma0, &MonotoneMap::identity(2)).unwrap(), sigma0);
        assert_eq!(compose_maps(&sigma0, &map(2, &[0, 2])).unwrap(), map(1, &[0, 1]));
        assert_eq!(compose_maps(&map(0, &[0]), &map(0, &[0, 0])).unwrap(), map(0, &[0, 0]));
    }

    #[test]
    fn faces_and_degeneracies() {
        assert_eq!(face_map(1, 0).unwrap().images(), &[1]);
        assert_eq!(face_map(2, 1).unwrap().images(), &[0, 2]);
        assert_eq!(face_map(3, 3).unwrap().images(), &[0, 1, 2]);
        assert!(face_map(2, 3).is_err());
        assert_eq!(face_map(0, 0), Err(Error::Augmented));
        assert_eq!(degeneracy_map(0, 0).unwrap().images(), &[0, 0]);
        assert_eq!(degeneracy_map(1, 1).unwrap().images(), &[0, 1, 1]);
        assert_eq!(degeneracy_map(1, 0).unwrap().images(), &[0, 0, 1]);
        assert!(degeneracy_map(1, 2).is_err());
    }

    #[test]
    fn epi_mono_examples() {
        let (e, m) = epi_mono_factor(&map(2, &[0, 0, 2]));
        assert_eq!((e, m), (map(1, &[0, 0, 1]), map(2, &[0, 2])));
        let id = MonotoneMap::identity(3);
        assert_eq!(epi_mono_factor(&id), (id.clone(), id));
        let (e, m) = epi_mono_factor(&map(1, &[1, 1]));
        assert_eq!((e, m), (map(0, &[0, 0]), map(1, &[1])));
    }

    #[test]
    fn canonical_decompositions() {
        assert_eq!(mono_to_faces(&map(3, &[0, 2])).unwrap(), vec![1, 3]);
        assert!(mono_to_faces(&MonotoneMap::identity(2)).unwrap().is_empty());
        assert_eq!(mono_to_faces(&MonotoneMap::from_empty(0).unwrap()), Err(Error::Augmented));
        assert!(mono_to_faces(&map(1, &[0, 0])).is_err());

        assert_eq!(epi_to_degeneracies(&map(1, &[0, 0, 1, 1])).unwrap(), vec![0, 1]);
        assert!(epi_to_degeneracies(&MonotoneMap::identity(1)).unwrap().is_empty());
        assert_eq!(epi_to_degeneracies(&map(0, &[0, 0, 0])).unwrap(), vec![0, 0]);
        assert!(epi_to_degeneracies(&map(2, &[0, 2])).is_err());
    }

    #[test]
    fn active_inert_examples() {
        let d1 = face_map(2, 1).unwrap();
        let (a, i) = active_inert_factor(&d1).unwrap();
        assert_eq!((a, i.is_identity()), (d1, true));
        let (a, i) = active_inert_factor(&map(1, &[0])).unwrap();
        assert!(a.is_identity());
        assert_eq!(i, map(1, &[0]));
        assert!(a.is_active() && i.is_inert());
    }

    #[test]
    fn pushout_examples() {
        let e = map(0, &[0, 0]);
        let p = pushout_along_epi(&e, &MonotoneMap::identity(1)).unwrap();
        assert_eq!(p.cod_size, 0);
        assert_eq!((p.leg_from_n.images(), p.leg_from_k.images()), (&[0][..], &[0, 0][..]));

        let p = pushout_along_epi(&e, &map(2, &[0, 1])).unwrap();
        assert_eq!(p.cod_size, 1);
        assert_eq!(p.leg_from_n, map(1, &[0]));
        assert_eq!(p.leg_from_k, map(1, &[0, 0, 1]));

        let a = map(3, &[1, 3]);
        let p = pushout_along_epi(&MonotoneMap::identity(1), &a).unwrap();
        assert_eq!((p.cod_size, &p.leg_from_n), (3, &a));
        assert!(p.leg_from_k.is_identity());
    }

    #[test]
    fn pullback_examples() {
        let k = map(1, &[0, 1, 1]);
        let p = pullback_along_mono(&map(1, &[0]), &k).unwrap();
        assert_eq!((p.dom_size, p.to_m.images(), p.to_n.images()), (0, &[0][..], &[0][..]));
        let p = pullback_along_mono(&map(1, &[1]), &k).unwrap();
        assert_eq!((p.dom_size, p.to_m.images(), p.to_n.images()), (1, &[1, 2][..], &[0, 0][..]));
        let p = pullback_along_mono(&MonotoneMap::identity(1), &k).unwrap();
        assert!(p.to_m.is_identity());
        assert_eq!(p.to_n, k);
    }

    #[test]
    fn sums() {
        let id0 = MonotoneMap::identity(0);
        assert_eq!(ordinal_sum(&id0, &id0), MonotoneMap::identity(1));
        assert_eq!(
            ordinal_sum(&map(0, &[0, 0]), &MonotoneMap::identity(1)),
            map(2, &[0, 0, 1, 2])
        );
        let v = vee(&MonotoneMap::identity(1), &MonotoneMap::identity(2)).unwrap();
        assert_eq!(v, MonotoneMap::identity(3));
        assert!(vee(&map(1, &[0]), &id0).is_err());
        let empty = MonotoneMap::from_empty(-1).unwrap();
        assert_eq!(ordinal_sum(&empty, &map(0, &[0, 0])), map(0, &[0, 0]));
    }
}
