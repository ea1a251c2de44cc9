//! Brute-force ground truth: enumerations of maps, objects and hom-sets, and direct
//! checks of universal properties against every competitor up to a size bound.

use serde::Serialize;

use crate::fatcat::{compose, FatMorphism, FatObject};
use crate::simplex::{compose_maps, MonotoneMap, Pullback, Pushout};

pub use crate::audit::{audit, AuditReport, CheckResult};

/// All monotone maps `[m] -> [n]`, lexicographic on image lists.
pub fn enum_monotone(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(m + 1);
    fill(&mut images, m + 1, 0, n, false, &mut out);
    out
}

/// All injective monotone maps `[m] -> [n]`, lexicographic.
pub fn enum_mono(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(m + 1);
    fill(&mut images, m + 1, 0, n, true, &mut out);
    out
}

/// All surjective monotone maps `[m] -> [n]`, lexicographic.
pub fn enum_epi(m: usize, n: usize) -> Vec<MonotoneMap> {
    enum_monotone(m, n).into_iter().filter(MonotoneMap::is_epi).collect()
}

fn fill(
    images: &mut Vec<usize>,
    len: usize,
    from: usize,
    n: usize,
    strict: bool,
    out: &mut Vec<MonotoneMap>,
) {
    if images.len() == len {
        out.push(MonotoneMap::from_raw(n + 1, images.clone()));
        return;
    }
    for y in from..=n {
        images.push(y);
        fill(images, len, if strict { y + 1 } else { y }, n, strict, out);
        images.pop();
    }
}

/// All `2^m` objects over `[m]`, lexicographic on `η`.
pub fn enum_objects(m: usize) -> Vec<FatObject> {
    (0..=m)
        .flat_map(|n| enum_epi(m, n))
        .map(FatObject::from_eta_unchecked)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// All objects with `m ≤ max_m`.
pub fn enum_objects_upto(max_m: usize) -> Vec<FatObject> {
    (0..=max_m).flat_map(enum_objects).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomSet {
    pub dom: FatObject,
    pub cod: FatObject,
    pub morphisms: Vec<FatMorphism>,
}

/// Every commuting square with mono top from `a` to `b`; since `a.eta` is epi the
/// bottom is forced by the top, so there is at most one morphism per mono.
pub fn enum_hom(a: &FatObject, b: &FatObject) -> HomSet {
    let mut morphisms = Vec::new();
    if !a.is_unit() && !b.is_unit() {
        for top in enum_mono(a.m(), b.m()) {
            if let Some(f) = square_over(a, b, top) {
                morphisms.push(f);
            }
        }
    }
    HomSet {
        dom: a.clone(),
        cod: b.clone(),
        morphisms,
    }
}

/// The morphism `a -> b` with the given top, if the forced bottom row is well defined.
pub fn square_over(a: &FatObject, b: &FatObject, top: MonotoneMap) -> Option<FatMorphism> {
    let mut bot = vec![usize::MAX; a.n() + 1];
    for (x, &y) in a.eta().images().iter().enumerate() {
        let target = b.fibre_of(top.apply(x));
        if bot[y] == usize::MAX {
            bot[y] = target;
        } else if bot[y] != target {
            return None;
        }
    }
    if bot.windows(2).any(|w| w[0] > w[1]) {
        return None;
    }
    Some(FatMorphism::new_unchecked(
        a.clone(),
        b.clone(),
        top,
        MonotoneMap::from_raw(b.n() + 1, bot),
    ))
}

/// Every morphism between objects with `m ≤ max_m`.
pub fn enum_morphisms(max_m: usize) -> Vec<FatMorphism> {
    let objects = enum_objects_upto(max_m);
    let mut out = Vec::new();
    for a in &objects {
        for b in &objects {
            out.extend(enum_hom(a, b).morphisms);
        }
    }
    out
}

/// What [`verify_universal`] should check.
#[derive(Clone, Copy, Debug)]
pub enum UniversalQuery<'a> {
    /// `candidate` is a pushout of the span `N <<-e- M -a-> K`.
    Pushout {
        e: &'a MonotoneMap,
        a: &'a MonotoneMap,
        candidate: &'a Pushout,
    },
    /// `candidate` is a pullback of the cospan `N -b-> N' <<-k- M'`.
    Pullback {
        b: &'a MonotoneMap,
        k: &'a MonotoneMap,
        candidate: &'a Pullback,
    },
    /// `lift` is cocartesian for the domain projection.
    Cocartesian { lift: &'a FatMorphism },
}

/// True iff every competitor up to `bound` factors through the candidate in exactly one way.
pub fn verify_universal(query: UniversalQuery<'_>, bound: usize) -> bool {
    match query {
        UniversalQuery::Pushout { e, a, candidate } => verify_pushout(e, a, candidate, bound),
        UniversalQuery::Pullback { b, k, candidate } => verify_pullback(b, k, candidate, bound),
        UniversalQuery::Cocartesian { lift } => verify_cocartesian(lift, bound),
    }
}

fn same(x: Result<MonotoneMap, crate::Error>, y: Result<MonotoneMap, crate::Error>) -> bool {
    matches!((x, y), (Ok(x), Ok(y)) if x == y)
}

fn verify_pushout(e: &MonotoneMap, a: &MonotoneMap, p: &Pushout, bound: usize) -> bool {
    let (ln, lk) = (&p.leg_from_n, &p.leg_from_k);
    if ln.dom_len() != e.cod_len() || lk.dom_len() != a.cod_len() || ln.cod_len() != lk.cod_len() {
        return false;
    }
    if !same(compose_maps(ln, e), compose_maps(lk, a)) {
        return false;
    }
    let (n, k, c) = (e.cod_len() - 1, a.cod_len() - 1, ln.cod_len() - 1);
    for q in 0..=bound {
        let mediators = enum_monotone(c, q);
        let us = enum_monotone(n, q);
        for v in enum_monotone(k, q) {
            for u in &us {
                if !same(compose_maps(u, e), compose_maps(&v, a)) {
                    continue;
                }
                let count = mediators
                    .iter()
                    .filter(|w| {
                        compose_maps(w, ln).as_ref() == Ok(u) && compose_maps(w, lk).as_ref() == Ok(&v)
                    })
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn verify_pullback(b: &MonotoneMap, k: &MonotoneMap, p: &Pullback, bound: usize) -> bool {
    let (tm, tn) = (&p.to_m, &p.to_n);
    if tm.cod_len() != k.dom_len() || tn.cod_len() != b.dom_len() || tm.dom_len() != tn.dom_len() {
        return false;
    }
    if !same(compose_maps(b, tn), compose_maps(k, tm)) {
        return false;
    }
    let (n, mp, d) = (b.dom_len() - 1, k.dom_len() - 1, tm.dom_len() - 1);
    for q in 0..=bound {
        let mediators = enum_monotone(q, d);
        let us = enum_monotone(q, n);
        for v in enum_monotone(q, mp) {
            for u in &us {
                if !same(compose_maps(b, u), compose_maps(k, &v)) {
                    continue;
                }
                let count = mediators
                    .iter()
                    .filter(|w| {
                        compose_maps(tn, w).as_ref() == Ok(u) && compose_maps(tm, w).as_ref() == Ok(&v)
                    })
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

fn verify_cocartesian(f: &FatMorphism, bound: usize) -> bool {
    let (o, kappa) = (f.dom(), f.cod());
    for mu in enum_objects_upto(bound) {
        let from_kappa = enum_hom(kappa, &mu).morphisms;
        for h in enum_hom(o, &mu).morphisms {
            for g in enum_mono(kappa.m(), mu.m()) {
                if compose_maps(&g, f.top()).as_ref() != Ok(h.top()) {
                    continue;
                }
                let count = from_kappa
                    .iter()
                    .filter(|g2| g2.top() == &g && compose(g2, f).as_ref() == Ok(&h))
                    .count();
                if count != 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of morphisms in `Hom(flat(k), η)` and in `Hom(η, sharp(k))`.
pub fn adjunction_counts(o: &FatObject, k: usize) -> (usize, usize) {
    use crate::fatcat::{incl_flat, incl_sharp};
    (
        enum_hom(&incl_flat(k), o).morphisms.len(),
        enum_hom(o, &incl_sharp(k)).morphisms.len(),
    )
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatcat::cocartesian_lift;
    use crate::simplex::{face_map, pullback_along_mono, pushout_along_epi};

    fn obj(s: &str) -> FatObject {
        FatObject::from_edge_string(s).unwrap()
    }

    fn map(cod: isize, images: &[usize]) -> MonotoneMap {
        MonotoneMap::new(cod, images.to_vec()).unwrap()
    }

    #[test]
    fn map_enumerations() {
        assert_eq!(enum_mono(0, 1), vec![map(1, &[0]), map(1, &[1])]);
        assert_eq!(enum_monotone(1, 0), vec![map(0, &[0, 0])]);
        assert_eq!(enum_epi(2, 1), vec![map(1, &[0, 0, 1]), map(1, &[0, 1, 1])]);
        for m in 0..=4 {
            for n in 0..=4 {
                assert_eq!(enum_mono(m, n).len(), binomial(n + 1, m + 1));
                assert_eq!(enum_monotone(m, n).len(), binomial(n + m + 1, m + 1));
            }
        }
    }

    #[test]
    fn object_enumeration() {
        assert_eq!(enum_objects(0), vec![obj("")]);
        let two: Vec<String> = enum_objects(2).iter().map(|o| o.to_string()).collect();
        assert_eq!(two, vec!["==", "=-", "-=", "--"]);
        assert_eq!(enum_objects(10).len(), 1024);
    }

    #[test]
    fn hom_sets() {
        let h = enum_hom(&obj(""), &obj("-"));
        let tops: Vec<_> = h.morphisms.iter().map(|f| f.top().images().to_vec()).collect();
        assert_eq!(tops, vec![vec![0], vec![1]]);
        assert!(enum_hom(&obj("="), &obj("-")).morphisms.is_empty());
        let h = enum_hom(&obj("-"), &obj("-"));
        assert_eq!(h.morphisms, vec![FatMorphism::identity(&obj("-"))]);
    }

    #[test]
    fn hom_sets_match_validation() {
        for a in enum_objects_upto(2) {
            for b in enum_objects_upto(3) {
                let found = enum_hom(&a, &b).morphisms;
                let mut expected = Vec::new();
                for top in enum_mono(a.m(), b.m()) {
                    for bot in enum_monotone(a.n(), b.n()) {
                        if let Ok(f) = FatMorphism::new(a.clone(), b.clone(), top.clone(), bot) {
                            expected.push(f);
                        }
                    }
                }
                assert_eq!(found, expected);
            }
        }
    }

    #[test]
    fn pushout_examples() {
        let e = map(0, &[0, 0]);
        let p = pushout_along_epi(&e, &MonotoneMap::identity(1)).unwrap();
        assert!(verify_universal(
            UniversalQuery::Pushout { e: &e, a: &MonotoneMap::identity(1), candidate: &p },
            3
        ));
        let a = map(2, &[0, 1]);
        let p = pushout_along_epi(&e, &a).unwrap();
        assert!(verify_universal(UniversalQuery::Pushout { e: &e, a: &a, candidate: &p }, 3));
        let mut bad = p.clone();
        bad.leg_from_k = map(1, &[0, 1, 1]);
        assert!(!verify_universal(UniversalQuery::Pushout { e: &e, a: &a, candidate: &bad }, 3));
    }

    #[test]
    fn pullback_examples() {
        let k = map(1, &[0, 1, 1]);
        for b in [map(1, &[0]), map(1, &[1])] {
            let p = pullback_along_mono(&b, &k).unwrap();
            assert!(verify_universal(UniversalQuery::Pullback { b: &b, k: &k, candidate: &p }, 3));
        }
    }

    #[test]
    fn cocartesian_example() {
        let lift = cocartesian_lift(&obj("="), &face_map(2, 2).unwrap()).unwrap();
        assert!(verify_universal(UniversalQuery::Cocartesian { lift: &lift }, 3));
        // a non-cocartesian morphism with the same top
        let other = FatMorphism::new(
            obj("="),
            obj("=="),
            face_map(2, 2).unwrap(),
            MonotoneMap::identity(0),
        )
        .unwrap();
        assert!(!verify_universal(UniversalQuery::Cocartesian { lift: &other }, 3));
    }
}
