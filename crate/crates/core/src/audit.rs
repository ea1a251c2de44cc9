//! Exhaustive checks of the laws on all small objects.
//!
//! Every check walks all of its cases, counts the failures and keeps the first
//! counterexample; nothing stops early. Size caps are always arguments.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::faces::{is_active_fat, is_inert_fat, step, valid_letters, Letter};
use crate::factorize::{active_inert_factor_fat, factor_full, ternary_factor};
use crate::fatcat::{
    compose, cocartesian_lift, flat_counit, flat_mono, incl_flat, incl_sharp, marked_sum, sharp_mono,
    sharp_unit, sum, sum_mor, vee_obj, FatMorphism, FatObject,
};
use crate::literal::{parse_object, print_fibres, print_object, print_word};
use crate::oracle::{
    binomial, enum_epi, enum_hom, enum_mono, enum_monotone, enum_morphisms, enum_objects,
    enum_objects_upto, verify_universal, UniversalQuery,
};
use crate::relations::{check_derivations, check_rules, single_rewrites, RuleId, RuleIndex};
use crate::rewrite::Normalizer;
use crate::simplex::{
    active_inert_factor, compose_maps, degeneracy_map, epi_mono_factor, face_map, pullback_along_mono,
    pushout_along_epi, MonotoneMap,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            cases: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, describe: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = Some(describe());
        }
    }

    /// One case; an error counts as a failure and is reported with the case.
    fn record(&mut self, outcome: Result<bool>, describe: impl FnOnce() -> String) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.fail(describe),
            Err(e) => self.fail(|| format!("{}: {e}", describe())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub max_m: usize,
    pub checks: Vec<CheckResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// All checks, sized from `max_m`; the costlier ones are capped lower.
pub fn audit(max_m: usize) -> AuditReport {
    audit_with_rules(max_m, &RuleId::ALL)
}

/// [`audit`] with the relations and the normalizer restricted to `rules`.
pub fn audit_with_rules(max_m: usize, rules: &[RuleId]) -> AuditReport {
    let small = max_m.min(3);
    let medium = max_m.min(4);
    let checks = vec![
        simplicial_identities(max_m + 1),
        object_census(2 * max_m),
        relations(max_m, rules),
        derivations(medium, 200_000),
        factorization(max_m),
        normal_forms(small, 3, rules),
        ternary(medium),
        adjunctions(max_m),
        opfibration(medium, medium),
        monoidal(small, max_m),
        pushouts(medium, medium),
        pullbacks(medium, medium),
        active_inert(max_m, medium),
        epi_mono(max_m),
    ];
    AuditReport { max_m, checks }
}

fn same(a: Result<MonotoneMap>, b: Result<MonotoneMap>) -> Result<bool> {
    Ok(a? == b?)
}

/// The classical identities between faces and degeneracies, on all `[n]`, `n ≤ max_n`.
pub fn simplicial_identities(max_n: usize) -> CheckResult {
    let mut r = CheckResult::new("simplicial identities");
    for n in 0..=max_n {
        // δ_j δ_i = δ_i δ_{j-1}, i < j, into [n]
        if n >= 2 {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = compose_maps(&face_map(n, j).unwrap(), &face_map(n - 1, i).unwrap());
                    let rhs = compose_maps(&face_map(n, i).unwrap(), &face_map(n - 1, j - 1).unwrap());
                    r.record(same(lhs, rhs), || format!("δ{j}δ{i} into [{n}]"));
                }
            }
        }
        // σ_j σ_i = σ_i σ_{j+1}, i ≤ j, onto [n]
        for j in 0..=n {
            for i in 0..=j {
                let lhs = compose_maps(&degeneracy_map(n, j).unwrap(), &degeneracy_map(n + 1, i).unwrap());
                let rhs = compose_maps(&degeneracy_map(n, i).unwrap(), &degeneracy_map(n + 1, j + 1).unwrap());
                r.record(same(lhs, rhs), || format!("σ{j}σ{i} onto [{n}]"));
            }
        }
        // σ_j δ_i on [n]
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = compose_maps(&degeneracy_map(n, j).unwrap(), &face_map(n + 1, i).unwrap());
                let rhs = if i < j {
                    compose_maps(&face_map(n, i).unwrap(), &degeneracy_map(n - 1, j - 1).unwrap())
                } else if i == j || i == j + 1 {
                    Ok(MonotoneMap::identity(n))
                } else {
                    compose_maps(&face_map(n, i - 1).unwrap(), &degeneracy_map(n - 1, j).unwrap())
                };
                r.record(same(lhs, rhs), || format!("σ{j}δ{i} on [{n}]"));
            }
        }
    }
    r
}

/// `2^m` objects per `m`, and the three literal views agree.
pub fn object_census(max_m: usize) -> CheckResult {
    let mut r = CheckResult::new("object census");
    for m in 0..=max_m {
        let objects = enum_objects(m);
        r.record(Ok(objects.len() == 1 << m), || format!("{} objects at m = {m}", objects.len()));
        for o in &objects {
            let ok = (|| -> Result<bool> {
                Ok(parse_object(&print_object(o))? == *o
                    && parse_object(&print_fibres(o))? == *o
                    && FatObject::new(o.eta().clone())? == *o)
            })();
            r.record(ok, || format!("literals of {o:?}"));
        }
    }
    r
}

pub fn relations(max_m: usize, rules: &[RuleId]) -> CheckResult {
    let mut r = CheckResult::new("relations");
    match check_rules(max_m, rules) {
        Ok(report) => {
            r.cases = report.instances();
            r.failures = report.failures();
            r.first_counterexample = report.first_failure.map(|cx| {
                format!(
                    "{} ({}) at {:?}: {} gives {} but {} gives {}",
                    cx.rule,
                    cx.case,
                    cx.anchor,
                    print_word(&parse_object(&cx.anchor).unwrap(), &cx.lhs),
                    cx.lhs_morphism,
                    print_word(&parse_object(&cx.anchor).unwrap(), &cx.rhs),
                    cx.rhs_morphism
                )
            });
        }
        Err(e) => r.record(Err(e), || "relation check".to_string()),
    }
    r
}

/// Every instance of the bordering-extension relations follows from the six primary
/// ones once each `b_i^ε` is spelled `s_{i+ε}; d_i`.
pub fn derivations(max_m: usize, max_nodes: usize) -> CheckResult {
    let mut r = CheckResult::new("derivations");
    match check_derivations(max_m, max_nodes) {
        Ok(report) => {
            r.cases = report.instances;
            r.failures = report.instances - report.derived;
            r.first_counterexample = report.first_failure.map(|cx| {
                format!(
                    "{} ({}) at {:?}: {:?} ~ {:?}, {}",
                    cx.rule, cx.case, cx.anchor, cx.lhs, cx.rhs, cx.lhs_morphism
                )
            });
        }
        Err(e) => r.record(Err(e), || "derivation search".to_string()),
    }
    r
}

/// `factor_full` on every morphism: well-formed, evaluates back, idempotent.
pub fn factorization(max_m: usize) -> CheckResult {
    let mut r = CheckResult::new("factorization");
    for f in enum_morphisms(max_m) {
        let ok = (|| -> Result<bool> {
            let nf = factor_full(&f)?;
            nf.check_invariants()?;
            let g = nf.eval()?;
            Ok(g == f && factor_full(&g)? == nf)
        })();
        r.record(ok, || format!("{f}"));
    }
    r
}

fn pack(letters: &[Letter]) -> Option<u64> {
    if letters.len() > 5 {
        return None;
    }
    let mut key = 0u64;
    for &l in letters {
        let (kind, index, eps) = match l {
            Letter::D(i) => (0, i, 0),
            Letter::S(i) => (1, i, 0),
            Letter::V(i) => (2, i, 0),
            Letter::B(i, e) => (3, i, e as usize),
        };
        let code = 1 + kind + 4 * (eps + 2 * index);
        if code >= 1 << 12 {
            return None;
        }
        key = key << 12 | code as u64;
    }
    Some(key)
}

fn visit_words(
    anchor: &FatObject,
    max_len: usize,
    visit: &mut impl FnMut(&[Letter], &FatMorphism),
) -> Result<()> {
    fn go(
        here: &FatMorphism,
        letters: &mut Vec<Letter>,
        max_len: usize,
        visit: &mut impl FnMut(&[Letter], &FatMorphism),
    ) -> Result<()> {
        visit(letters, here);
        if letters.len() == max_len {
            return Ok(());
        }
        for l in valid_letters(here.cod()) {
            let next = compose(&step(here.cod(), l)?, here)?;
            letters.push(l);
            go(&next, letters, max_len, visit)?;
            letters.pop();
        }
        Ok(())
    }
    go(&FatMorphism::identity(anchor), &mut Vec::new(), max_len, visit)
}

/// Normal forms interned per anchor, so equal forms compare by id.
#[derive(Default)]
struct FormTable {
    ids: HashMap<Vec<Letter>, u32>,
    by_word: HashMap<u64, Option<u32>>,
}

impl FormTable {
    fn intern(&mut self, letters: Vec<Letter>) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(letters).or_insert(next)
    }
}

/// Rewriting agrees with factorization on every word up to `max_len` letters, and
/// no single relation step changes the normal form.
pub fn normal_forms(max_m: usize, max_len: usize, rules: &[RuleId]) -> CheckResult {
    let mut r = CheckResult::new("normal forms");
    let mut normalizer = Normalizer::with_rules(rules);
    // every result is compared with the factorization anyway
    normalizer.verify_steps = false;
    let mut index = RuleIndex::new(rules);
    for anchor in enum_objects_upto(max_m) {
        let mut table = FormTable::default();
        let walked = visit_words(&anchor, max_len, &mut |letters, value| {
            let word = || print_word(&anchor, letters);
            let outcome = normalizer
                .normalize(&crate::rewrite::Word::new(anchor.clone(), letters.to_vec()))
                .and_then(|nf| Ok((factor_full(value)? == nf, nf)));
            let id = match outcome {
                Ok((agrees, nf)) => {
                    r.record(Ok(agrees), || format!("{}: normalizes to {nf} but factors differently", word()));
                    Some(table.intern(nf.letters()))
                }
                Err(e) => {
                    r.record(Err(e), word);
                    None
                }
            };
            if let Some(key) = pack(letters) {
                table.by_word.insert(key, id);
            }
        });
        if let Err(e) = walked {
            r.record(Err(e), || format!("words at {anchor:?}"));
            continue;
        }
        let walked = visit_words(&anchor, max_len, &mut |letters, _| {
            let Some(&Some(id)) = pack(letters).and_then(|k| table.by_word.get(&k)) else {
                return;
            };
            let rewrites = match single_rewrites(&mut index, &anchor, letters) {
                Ok(rw) => rw,
                Err(e) => return r.record(Err(e), || print_word(&anchor, letters)),
            };
            for (k, rw, next) in rewrites {
                let cached = pack(&next).and_then(|key| table.by_word.get(&key).copied());
                let other = match cached {
                    Some(Some(id)) => Ok(id),
                    Some(None) => continue,
                    None => normalizer
                        .normalize(&crate::rewrite::Word::new(anchor.clone(), next.clone()))
                        .map(|nf| table.intern(nf.letters())),
                };
                r.record(other.map(|o| o == id), || {
                    format!(
                        "{} ({}) at position {k} turns {} into {}",
                        rw.rule,
                        rw.case,
                        print_word(&anchor, letters),
                        print_word(&anchor, &next)
                    )
                });
            }
        });
        if let Err(e) = walked {
            r.record(Err(e), || format!("words at {anchor:?}"));
        }
    }
    r
}

/// Caches hom-sets between pairs of objects.
#[derive(Default)]
struct Homs(HashMap<(FatObject, FatObject), Vec<FatMorphism>>);

impl Homs {
    fn get(&mut self, a: &FatObject, b: &FatObject) -> &[FatMorphism] {
        self.0
            .entry((a.clone(), b.clone()))
            .or_insert_with(|| enum_hom(a, b).morphisms)
    }
}

/// `f = h ∘ v ∘ d` with `d` diagonal, `v` vertical, `h` cartesian, and no other
/// such triple exists.
pub fn ternary(max_m: usize) -> CheckResult {
    let mut r = CheckResult::new("ternary factorization");
    let mut homs = Homs::default();
    for f in enum_morphisms(max_m) {
        let ok = (|| -> Result<bool> {
            let (d, v, h) = ternary_factor(&f)?;
            let classes = d.class_of().diagonal && v.class_of().vertical && h.class_of().cartesian;
            if !classes || compose(&h, &compose(&v, &d)?)? != f {
                return Ok(false);
            }
            let mut count = 0;
            for x in enum_objects(f.dom().m()) {
                let ds: Vec<_> = homs.get(f.dom(), &x).iter().filter(|g| g.class_of().diagonal).cloned().collect();
                if ds.is_empty() {
                    continue;
                }
                for ym in x.m()..=f.cod().m() {
                    for y in enum_objects(ym) {
                        let vs: Vec<_> = homs.get(&x, &y).iter().filter(|g| g.class_of().vertical).cloned().collect();
                        let hs: Vec<_> = homs.get(&y, f.cod()).iter().filter(|g| g.class_of().cartesian).cloned().collect();
                        for d2 in &ds {
                            for v2 in &vs {
                                let vd = compose(v2, d2)?;
                                count += hs.iter().filter(|h2| compose(h2, &vd).as_ref() == Ok(&f)).count();
                            }
                        }
                    }
                }
            }
            Ok(count == 1)
        })();
        r.record(ok, || format!("{f}"));
    }
    r
}

/// `flat ⊣ π̄ ⊣ sharp`: hom counts, transposition bijections and triangle identities.
pub fn adjunctions(max_m: usize) -> CheckResult {
    let mut r = CheckResult::new("adjunctions");
    for o in enum_objects_upto(max_m) {
        let m = o.m();
        for k in 0..=max_m {
            let into = enum_hom(&incl_flat(k), &o).morphisms;
            let out = enum_hom(&o, &incl_sharp(k)).morphisms;
            r.record(Ok(into.len() == binomial(m + 1, k + 1)), || {
                format!("|Hom(flat({k}), {o:?})| = {}", into.len())
            });
            r.record(Ok(out.len() == binomial(k + 1, m + 1)), || {
                format!("|Hom({o:?}, sharp({k}))| = {}", out.len())
            });
            // transposition: a morphism is determined by its top, and every mono arises
            for f in &into {
                let back = flat_mono(f.top()).and_then(|a| compose(&flat_counit(&o)?, &a));
                r.record(back.map(|g| &g == f), || format!("flat transpose of {f}"));
            }
            for f in &out {
                let back = sharp_mono(f.top()).and_then(|a| compose(&a, &sharp_unit(&o)?));
                r.record(back.map(|g| &g == f), || format!("sharp transpose of {f}"));
            }
            for a in enum_mono(k, m) {
                let f = flat_mono(&a).and_then(|g| compose(&flat_counit(&o)?, &g));
                r.record(f.map(|f| f.top() == &a), || format!("flat transpose of {a}"));
            }
            for a in enum_mono(m, k) {
                let f = sharp_mono(&a).and_then(|g| compose(&g, &sharp_unit(&o)?));
                r.record(f.map(|f| f.top() == &a), || format!("sharp transpose of {a}"));
            }
        }
        // triangles: the counit on a flat object and the unit on a sharp object are
        // identities, and both project to identities
        let tri = (|| -> Result<bool> {
            Ok(flat_counit(&incl_flat(m))?.is_identity()
                && sharp_unit(&incl_sharp(m))?.is_identity()
                && flat_counit(&o)?.top().is_identity()
                && sharp_unit(&o)?.top().is_identity())
        })();
        r.record(tri, || format!("triangle identities at {o:?}"));
    }
    r
}

/// Every cocartesian lift of a mono out of `[m]`, `m ≤ max_m`, against competitors
/// with `m ≤ bound`.
pub fn opfibration(max_m: usize, bound: usize) -> CheckResult {
    let mut r = CheckResult::new("opfibration");
    for o in enum_objects_upto(max_m) {
        for k in o.m()..=max_m {
            for top in enum_mono(o.m(), k) {
                let ok = cocartesian_lift(&o, &top)
                    .map(|lift| lift.top() == &top && verify_universal(UniversalQuery::Cocartesian { lift: &lift }, bound));
                r.record(ok, || format!("lift of {top} at {o:?}"));
            }
        }
    }
    r
}

/// `⊕` is strictly associative and unital, `⊕̌` and `⊕` are `∨` with a marked or an
/// unmarked edge in the middle, and the three worked examples.
pub fn monoidal(max_triple: usize, max_pair: usize) -> CheckResult {
    let mut r = CheckResult::new("monoidal laws");
    let mut objects = vec![FatObject::unit()];
    objects.extend(enum_objects_upto(max_triple));
    for a in &objects {
        r.record(Ok(sum(&FatObject::unit(), a) == *a && sum(a, &FatObject::unit()) == *a), || {
            format!("unit law at {a:?}")
        });
        for b in &objects {
            for c in &objects {
                r.record(Ok(sum(&sum(a, b), c) == sum(a, &sum(b, c))), || {
                    format!("associativity at {a:?}, {b:?}, {c:?}")
                });
            }
        }
    }
    let morphisms = enum_morphisms(max_triple.min(2));
    for f in &morphisms {
        for g in &morphisms {
            for h in &morphisms {
                r.record(Ok(sum_mor(&sum_mor(f, g), h) == sum_mor(f, &sum_mor(g, h))), || {
                    format!("associativity at {f}, {g}, {h}")
                });
            }
        }
    }
    for a in enum_objects_upto(max_pair) {
        for b in enum_objects_upto(max_pair) {
            let ok = (|| -> Result<bool> {
                let marked = vee_obj(&vee_obj(&a, &incl_sharp(1))?, &b)?;
                let plain = vee_obj(&vee_obj(&a, &incl_flat(1))?, &b)?;
                Ok(marked_sum(&a, &b)? == marked && sum(&a, &b) == plain)
            })();
            r.record(ok, || format!("sums through ∨ at {a:?}, {b:?}"));
        }
    }
    let ok = (|| -> Result<bool> {
        let (a, b) = (parse_object("-=")?, parse_object("=-")?);
        Ok(sum(&a, &b).to_string() == "-=-=-"
            && vee_obj(&a, &b)?.to_string() == "-==-"
            && marked_sum(&a, &b)?.to_string() == "-===-")
    })();
    r.record(ok, || "the worked examples".to_string());
    r
}

/// Pushouts of an epi and a mono out of `[a]`, `a ≤ max_size`.
pub fn pushouts(max_size: usize, bound: usize) -> CheckResult {
    let mut r = CheckResult::new("pushouts");
    for a in 0..=max_size {
        for n in 0..=a {
            for e in enum_epi(a, n) {
                for k in a..=max_size {
                    for mono in enum_mono(a, k) {
                        let ok = pushout_along_epi(&e, &mono).map(|p| {
                            p.leg_from_k.is_epi()
                                && verify_universal(UniversalQuery::Pushout { e: &e, a: &mono, candidate: &p }, bound)
                        });
                        r.record(ok, || format!("pushout of {e} and {mono}"));
                    }
                }
            }
        }
    }
    r
}

/// Pullbacks of an epi into `[n']` along a mono, `n' ≤ max_size`.
pub fn pullbacks(max_size: usize, bound: usize) -> CheckResult {
    let mut r = CheckResult::new("pullbacks");
    for np in 0..=max_size {
        for mp in np..=max_size {
            for k in enum_epi(mp, np) {
                for n in 0..=np {
                    for b in enum_mono(n, np) {
                        let ok = pullback_along_mono(&b, &k).map(|p| {
                            p.to_n.is_epi()
                                && verify_universal(UniversalQuery::Pullback { b: &b, k: &k, candidate: &p }, bound)
                        });
                        r.record(ok, || format!("pullback of {k} along {b}"));
                    }
                }
            }
        }
    }
    r
}

/// Active-inert factorizations of monotone maps out of `[a]`, `a ≤ max_size`, and of
/// morphisms between objects with `m ≤ max_m`, each unique by exhaustive search.
pub fn active_inert(max_size: usize, max_m: usize) -> CheckResult {
    let mut r = CheckResult::new("active-inert");
    for a in 0..=max_size {
        for b in 0..=max_size {
            for f in enum_monotone(a, b) {
                let ok = active_inert_factor(&f).and_then(|(act, inert)| {
                    if !act.is_active() || !inert.is_inert() || compose_maps(&inert, &act)? != f {
                        return Ok(false);
                    }
                    let mut count = 0;
                    for c in 0..=b {
                        let inerts: Vec<_> = enum_mono(c, b).into_iter().filter(MonotoneMap::is_inert).collect();
                        for x in enum_monotone(a, c).iter().filter(|x| x.is_active()) {
                            count += inerts.iter().filter(|y| compose_maps(y, x).as_ref() == Ok(&f)).count();
                        }
                    }
                    Ok(count == 1)
                });
                r.record(ok, || format!("{f}"));
            }
        }
    }
    let mut homs = Homs::default();
    for f in enum_morphisms(max_m) {
        let ok = active_inert_factor_fat(&f).and_then(|(act, inert)| {
            if !is_active_fat(&act) || !is_inert_fat(&inert) || compose(&inert, &act)? != f {
                return Ok(false);
            }
            let mut count = 0;
            for rho in enum_objects_upto(f.cod().m()) {
                let acts: Vec<_> = homs.get(f.dom(), &rho).iter().filter(|g| is_active_fat(g)).cloned().collect();
                if acts.is_empty() {
                    continue;
                }
                for i in homs.get(&rho, f.cod()).iter().filter(|g| is_inert_fat(g)) {
                    count += acts.iter().filter(|a| compose(i, a).as_ref() == Ok(&f)).count();
                }
            }
            Ok(count == 1)
        });
        r.record(ok, || format!("{f}"));
    }
    r
}

/// Epi-mono factorizations of maps out of `[a]`, `a ≤ max_size`, unique by search.
pub fn epi_mono(max_size: usize) -> CheckResult {
    let mut r = CheckResult::new("epi-mono");
    for a in 0..=max_size {
        for b in 0..=max_size {
            for f in enum_monotone(a, b) {
                let (e, mono) = epi_mono_factor(&f);
                let mut count = 0;
                for c in 0..=a.min(b) {
                    let monos = enum_mono(c, b);
                    for e2 in enum_epi(a, c) {
                        count += monos.iter().filter(|m2| compose_maps(m2, &e2).as_ref() == Ok(&f)).count();
                    }
                }
                let ok = e.is_epi() && mono.is_mono() && compose_maps(&mono, &e).as_ref() == Ok(&f) && count == 1;
                r.record(Ok(ok), || format!("{f}"));
            }
        }
    }
    r
}
