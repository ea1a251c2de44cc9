//! The fat simplicial relations and the relations about bordering extensions.
//!
//! Words are written in application order (first letter applied first), so the
//! usual right-to-left juxtaposition `d_j d_i` becomes `[d_i, d_j]`. Indices that
//! refer to bordering vertices are evaluated in the object the left-hand side
//! starts from, except for `hv`, whose `bv_i` is the position of the standard vertex
//! in the common codomain.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faces::{bordering_vertex, eval_letters, path_objects, Letter};
use crate::fatcat::{FatMorphism, FatObject};
use crate::oracle::enum_objects;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleId {
    Dd,
    Hh,
    Vv,
    Hv,
    Dv,
    Hd,
    Ww1,
    Ww2,
    Wd,
    Vw,
    Sw,
}

impl RuleId {
    pub const ALL: [RuleId; 11] = [
        RuleId::Dd,
        RuleId::Hh,
        RuleId::Vv,
        RuleId::Hv,
        RuleId::Dv,
        RuleId::Hd,
        RuleId::Ww1,
        RuleId::Ww2,
        RuleId::Wd,
        RuleId::Vw,
        RuleId::Sw,
    ];
    pub const PRIMARY: [RuleId; 6] = [
        RuleId::Dd,
        RuleId::Hh,
        RuleId::Vv,
        RuleId::Hv,
        RuleId::Dv,
        RuleId::Hd,
    ];
    pub const DERIVED: [RuleId; 5] = [RuleId::Ww1, RuleId::Ww2, RuleId::Wd, RuleId::Vw, RuleId::Sw];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Dd => "dd",
            RuleId::Hh => "hh",
            RuleId::Vv => "vv",
            RuleId::Hv => "hv",
            RuleId::Dv => "dv",
            RuleId::Hd => "hd",
            RuleId::Ww1 => "ww1",
            RuleId::Ww2 => "ww2",
            RuleId::Wd => "wd",
            RuleId::Vw => "vw",
            RuleId::Sw => "sw",
        }
    }

    pub fn is_primary(self) -> bool {
        RuleId::PRIMARY.contains(&self)
    }

    fn uses_eps(self) -> bool {
        !matches!(self, RuleId::Dd | RuleId::Hh | RuleId::Vv | RuleId::Hv | RuleId::Hd)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RuleId::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Unknown {
                what: "rule",
                name: s.to_string(),
            })
    }
}

/// Values of the symbolic indices `i`, `j` and `ε` of a rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub i: usize,
    pub j: usize,
    pub eps: u8,
}

impl Assignment {
    pub fn new(i: usize, j: usize, eps: u8) -> Self {
        Self { i, j, eps }
    }
}

/// A rule instantiated at an anchor: the left-hand side equals every right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub case: &'static str,
    pub assignment: Assignment,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Vec<Letter>>,
}

use Letter::{B, D, S, V};

/// Instantiates `rule` at `anchor`; `None` when the side condition fails or the
/// left-hand side cannot be applied.
pub fn instantiate(rule: RuleId, anchor: &FatObject, a: Assignment) -> Option<RuleInstance> {
    let Assignment { i, j, eps } = a;
    if eps > 1 || (!rule.uses_eps() && eps != 0) {
        return None;
    }
    let e = eps;
    let lhs: Vec<Letter> = match rule {
        RuleId::Dd => vec![D(i), D(j)],
        RuleId::Hh => vec![S(j), S(i)],
        RuleId::Vv => vec![V(j), V(i)],
        RuleId::Hv => vec![V(j), S(i)],
        RuleId::Dv => vec![D(i), V(j)],
        RuleId::Hd => vec![S(i), D(j)],
        RuleId::Ww1 => vec![B(i, 1 - e), B(j, e)],
        RuleId::Ww2 => vec![B(i, e), B(j, e)],
        RuleId::Wd => vec![S(i), B(j, e)],
        RuleId::Vw => vec![B(i, e), V(j)],
        RuleId::Sw => vec![B(i, e), D(j)],
    };
    let composite = eval_letters(anchor, &lhs).ok()?;
    let (case, rhs): (&'static str, Vec<Vec<Letter>>) = match rule {
        RuleId::Dd | RuleId::Hh | RuleId::Vv => {
            if i > j {
                return None;
            }
            let rhs = match rule {
                RuleId::Dd => vec![D(j + 1), D(i)],
                RuleId::Hh => vec![S(i), S(j + 1)],
                _ => vec![V(i), V(j + 1)],
            };
            ("", vec![rhs])
        }
        RuleId::Hv => {
            let bv = composite.cod().ip(i).ok()?;
            if bv < j {
                ("above", vec![vec![S(i), V(j + 1)]])
            } else if j < bv {
                ("below", vec![vec![S(i), V(j)]])
            } else {
                return None;
            }
        }
        RuleId::Dv => {
            let bv = anchor.ip(i + 1).ok()?;
            if j == bv {
                ("split", vec![vec![B(i + 1 - e as usize, e), D(i)]])
            } else if e == 0 {
                ("commute", vec![vec![V(j), D(i)]])
            } else {
                return None;
            }
        }
        RuleId::Hd => {
            if i < j {
                ("above", vec![vec![D(j - 1), S(i)]])
            } else if i == j || i == j + 1 {
                ("merge", vec![vec![B(j, (i - j) as u8)]])
            } else {
                ("below", vec![vec![D(j), S(i - 1)]])
            }
        }
        RuleId::Ww1 => ("", vec![vec![B(j, e), B(i, 1 - e)]]),
        RuleId::Ww2 => {
            if i != j {
                ("distinct", vec![vec![B(j, e), B(i, e)]])
            } else {
                let p = bordering_vertex(anchor, i, e).ok()? + 1 - e as usize;
                ("same", vec![vec![B(i, e), V(p)]])
            }
        }
        RuleId::Wd => {
            if i > j {
                ("above", vec![vec![B(j, e), S(i)]])
            } else if i == j {
                ("same", vec![vec![S(i), B(j, 1 - e)]])
            } else {
                ("below", vec![vec![B(j - 1, e), S(i)]])
            }
        }
        RuleId::Vw => {
            let t = bordering_vertex(anchor, i, e).ok()? + 1 - e as usize;
            if j < t {
                ("below", vec![vec![V(j), B(i, e)]])
            } else if j == t {
                ("same", vec![vec![B(i, e), B(i, e)]])
            } else {
                ("above", vec![vec![V(j - 1), B(i, e)]])
            }
        }
        RuleId::Sw => {
            // compare j with i - 1 + ε without leaving the naturals
            let (jj, c) = (j + 1, i + e as usize);
            if jj > c {
                ("above", vec![vec![D(j), B(i, e)]])
            } else if jj == c {
                let bv = bordering_vertex(anchor, i, e).ok()?;
                let other = if e == 1 { i + 1 } else { i.checked_sub(1)? };
                ("merge", vec![vec![D(j), V(bv)], vec![B(other, 1 - e), D(j)]])
            } else {
                ("below", vec![vec![D(j), B(i - 1, e)]])
            }
        }
    };
    Some(RuleInstance {
        rule,
        case,
        assignment: a,
        lhs,
        rhs,
    })
}

/// Upper bound for the symbolic indices worth trying at `anchor`.
fn index_bound(anchor: &FatObject) -> usize {
    anchor.m() + 3
}

/// All assignments for which `rule` instantiates at `anchor`, in lexicographic order.
pub fn enumerate_instances(rule: RuleId, anchor: &FatObject) -> Vec<Assignment> {
    instances(rule, anchor).map(|inst| inst.assignment).collect()
}

fn instances(rule: RuleId, anchor: &FatObject) -> impl Iterator<Item = RuleInstance> + '_ {
    let bound = index_bound(anchor);
    (0..=bound).flat_map(move |i| {
        (0..=bound).flat_map(move |j| {
            (0..=1).filter_map(move |eps| instantiate(rule, anchor, Assignment::new(i, j, eps)))
        })
    })
}

/// Every instance of the given rules at `anchor`.
pub fn instances_at(anchor: &FatObject, rules: &[RuleId]) -> Vec<RuleInstance> {
    rules.iter().flat_map(|&r| instances(r, anchor)).collect()
}

/// Evaluates both sides of an instance; `Ok(None)` when they agree, otherwise the
/// first disagreeing right-hand side together with both composites.
fn compare(anchor: &FatObject, inst: &RuleInstance) -> Result<Option<Counterexample>> {
    let left = eval_letters(anchor, &inst.lhs)?;
    for rhs in &inst.rhs {
        let right = eval_letters(anchor, rhs);
        let differs = match &right {
            Ok(r) => r != &left,
            Err(_) => true,
        };
        if differs {
            return Ok(Some(Counterexample {
                rule: inst.rule,
                case: inst.case.to_string(),
                anchor: anchor.to_string(),
                assignment: inst.assignment,
                lhs: inst.lhs.clone(),
                rhs: rhs.clone(),
                lhs_morphism: left.to_string(),
                rhs_morphism: match right {
                    Ok(r) => r.to_string(),
                    Err(e) => e.to_string(),
                },
            }));
        }
    }
    Ok(None)
}

/// Whether both sides of the instantiated rule evaluate to the same morphism.
pub fn check_rule(rule: RuleId, anchor: &FatObject, a: Assignment) -> Result<bool> {
    let inst = instantiate(rule, anchor, a).ok_or_else(|| {
        Error::NotAnInstance(format!("{rule} at {anchor:?} with {a:?}"))
    })?;
    Ok(compare(anchor, &inst)?.is_none())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub rule: RuleId,
    pub case: String,
    pub anchor: String,
    pub assignment: Assignment,
    pub lhs: Vec<Letter>,
    pub rhs: Vec<Letter>,
    pub lhs_morphism: String,
    pub rhs_morphism: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleCount {
    pub rule: String,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub max_m: usize,
    pub rules: Vec<RuleCount>,
    pub first_failure: Option<Counterexample>,
}

impl RelationReport {
    pub fn failures(&self) -> usize {
        self.rules.iter().map(|r| r.failures).sum()
    }

    pub fn instances(&self) -> usize {
        self.rules.iter().map(|r| r.instances).sum()
    }
}

/// Checks every instance of `rules` over every anchor with `m ≤ max_m`.
pub fn check_rules(max_m: usize, rules: &[RuleId]) -> Result<RelationReport> {
    let mut report = RelationReport {
        max_m,
        ..Default::default()
    };
    for &rule in rules {
        let mut count = RuleCount {
            rule: rule.to_string(),
            ..Default::default()
        };
        for m in 0..=max_m {
            for anchor in enum_objects(m) {
                for inst in instances(rule, &anchor) {
                    count.instances += 1;
                    if let Some(cx) = compare(&anchor, &inst)? {
                        count.failures += 1;
                        report.first_failure.get_or_insert(cx);
                    }
                }
            }
        }
        report.rules.push(count);
    }
    Ok(report)
}

pub fn check_all(max_m: usize) -> Result<RelationReport> {
    check_rules(max_m, &RuleId::ALL)
}

/// One way of rewriting a side of some instance at a fixed object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub rule: RuleId,
    pub case: &'static str,
    pub replacement: Vec<Letter>,
}

/// For every side of every instance at one object, the other sides it may be replaced by.
#[derive(Clone, Debug, Default)]
pub struct ObjectRules {
    by_side: HashMap<Vec<Letter>, Vec<Rewrite>>,
    max_side: usize,
}

impl ObjectRules {
    pub fn rewrites(&self, side: &[Letter]) -> &[Rewrite] {
        self.by_side.get(side).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn max_side(&self) -> usize {
        self.max_side
    }
}

fn expand(word: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len() * 2);
    for &l in word {
        match l {
            B(i, e) => out.extend([S(i + e as usize), D(i)]),
            other => out.push(other),
        }
    }
    out
}

/// Lazily built per-object tables of rule instances.
pub struct RuleIndex {
    rules: Vec<RuleId>,
    expand_bordering: bool,
    cache: HashMap<FatObject, Rc<ObjectRules>>,
}

impl RuleIndex {
    pub fn new(rules: &[RuleId]) -> Self {
        Self {
            rules: rules.to_vec(),
            expand_bordering: false,
            cache: HashMap::new(),
        }
    }

    /// Index over the given rules in which every `b_i^ε` is spelled out as `[s_{i+ε}, d_i]`.
    pub fn expanded(rules: &[RuleId]) -> Self {
        Self {
            expand_bordering: true,
            ..Self::new(rules)
        }
    }

    pub fn at(&mut self, o: &FatObject) -> Rc<ObjectRules> {
        if let Some(r) = self.cache.get(o) {
            return Rc::clone(r);
        }
        let mut table = ObjectRules::default();
        for inst in instances_at(o, &self.rules) {
            let mut sides = vec![inst.lhs.clone()];
            sides.extend(inst.rhs.iter().cloned());
            if self.expand_bordering {
                sides = sides.iter().map(|s| expand(s)).collect();
            }
            for a in 0..sides.len() {
                for b in 0..sides.len() {
                    if a == b || sides[a] == sides[b] {
                        continue;
                    }
                    table.max_side = table.max_side.max(sides[a].len());
                    let entry = table.by_side.entry(sides[a].clone()).or_default();
                    let rewrite = Rewrite {
                        rule: inst.rule,
                        case: inst.case,
                        replacement: sides[b].clone(),
                    };
                    if !entry.contains(&rewrite) {
                        entry.push(rewrite);
                    }
                }
            }
        }
        let table = Rc::new(table);
        self.cache.insert(o.clone(), Rc::clone(&table));
        table
    }
}

/// Every word obtained from `letters` by one rewrite from `index`, with the position used.
pub fn single_rewrites(
    index: &mut RuleIndex,
    anchor: &FatObject,
    letters: &[Letter],
) -> Result<Vec<(usize, Rewrite, Vec<Letter>)>> {
    let objects = path_objects(anchor, letters)?;
    let mut out = Vec::new();
    for k in 0..letters.len() {
        let table = index.at(&objects[k]);
        for len in 1..=table.max_side().min(letters.len() - k) {
            for rw in table.rewrites(&letters[k..k + len]) {
                let mut word = letters[..k].to_vec();
                word.extend_from_slice(&rw.replacement);
                word.extend_from_slice(&letters[k + len..]);
                out.push((k, rw.clone(), word));
            }
        }
    }
    Ok(out)
}

/// Outcome of deriving one instance from the primary relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// The chain of words from the expanded left-hand side to the expanded right-hand side.
    Found(Vec<Vec<Letter>>),
    /// The search space (bounded by word length and node count) was exhausted.
    NotFound { explored: usize },
}

/// Searches for a chain of primary-rule rewrites connecting the two sides of `inst`,
/// with every bordering extension spelled out as a standard face followed by a
/// degenerated face.
pub fn derive_from_primary(
    index: &mut RuleIndex,
    anchor: &FatObject,
    inst: &RuleInstance,
    max_nodes: usize,
) -> Result<Vec<Derivation>> {
    let start = expand(&inst.lhs);
    let mut out = Vec::new();
    for rhs in &inst.rhs {
        let goal = expand(rhs);
        let max_len = start.len().max(goal.len()) + 2;
        let mut parent: HashMap<Vec<Letter>, Option<Vec<Letter>>> = HashMap::new();
        parent.insert(start.clone(), None);
        let mut queue = VecDeque::from([start.clone()]);
        let mut found = start == goal;
        while let Some(word) = queue.pop_front() {
            if found || parent.len() >= max_nodes {
                break;
            }
            for (_, _, next) in single_rewrites(index, anchor, &word)? {
                if next.len() > max_len || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some(word.clone()));
                if next == goal {
                    found = true;
                    break;
                }
                queue.push_back(next);
            }
        }
        if found {
            let mut chain = vec![goal.clone()];
            while let Some(Some(prev)) = parent.get(chain.last().unwrap()) {
                chain.push(prev.clone());
            }
            chain.reverse();
            out.push(Derivation::Found(chain));
        } else {
            out.push(Derivation::NotFound {
                explored: parent.len(),
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub max_m: usize,
    pub instances: usize,
    pub derived: usize,
    pub first_failure: Option<Counterexample>,
}

/// Derives every instance of the bordering-extension relations over anchors with
/// `m ≤ max_m` from the six primary relations.
pub fn check_derivations(max_m: usize, max_nodes: usize) -> Result<DerivationReport> {
    let mut index = RuleIndex::expanded(&RuleId::PRIMARY);
    let mut report = DerivationReport {
        max_m,
        ..Default::default()
    };
    for m in 0..=max_m {
        for anchor in enum_objects(m) {
            for inst in instances_at(&anchor, &RuleId::DERIVED) {
                for (rhs, outcome) in inst
                    .rhs
                    .iter()
                    .zip(derive_from_primary(&mut index, &anchor, &inst, max_nodes)?)
                {
                    report.instances += 1;
                    match outcome {
                        Derivation::Found(_) => report.derived += 1,
                        Derivation::NotFound { explored } => {
                            report.first_failure.get_or_insert_with(|| Counterexample {
                                rule: inst.rule,
                                case: inst.case.to_string(),
                                anchor: anchor.to_string(),
                                assignment: inst.assignment,
                                lhs: inst.lhs.clone(),
                                rhs: rhs.clone(),
                                lhs_morphism: format!("no derivation after {explored} words"),
                                rhs_morphism: String::new(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Both sides of `inst` evaluated at `anchor`.
pub fn evaluate_instance(anchor: &FatObject, inst: &RuleInstance) -> Result<(FatMorphism, Vec<FatMorphism>)> {
    let lhs = eval_letters(anchor, &inst.lhs)?;
    let rhs = inst
        .rhs
        .iter()
        .map(|w| eval_letters(anchor, w))
        .collect::<Result<Vec<_>>>()?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj(s: &str) -> FatObject {
        FatObject::from_edge_string(s).unwrap()
    }

    #[test]
    fn dd_example() {
        let inst = instantiate(RuleId::Dd, &obj("--"), Assignment::new(0, 0, 0)).unwrap();
        assert_eq!(inst.lhs, vec![D(0), D(0)]);
        assert_eq!(inst.rhs, vec![vec![D(1), D(0)]]);
        assert!(check_rule(RuleId::Dd, &obj("--"), Assignment::new(0, 0, 0)).unwrap());
        let (l, _) = evaluate_instance(&obj("--"), &inst).unwrap();
        assert_eq!(l.cod(), &obj("=="));
        assert_eq!(l.bot().images(), &[0, 0, 0]);
    }

    #[test]
    fn dd_instances_on_two_edges() {
        // only d0 then d0 fits: after one collapse a single bottom edge remains
        assert_eq!(
            enumerate_instances(RuleId::Dd, &obj("--")),
            vec![Assignment::new(0, 0, 0)]
        );
        assert_eq!(enumerate_instances(RuleId::Dd, &obj("---")).len(), 3);
    }

    #[test]
    fn hd_merge_is_bordering_extension() {
        for eps in 0..=1u8 {
            let inst = instantiate(RuleId::Hd, &obj("-"), Assignment::new(eps as usize, 0, 0)).unwrap();
            assert_eq!(inst.case, "merge");
            assert_eq!(inst.rhs, vec![vec![B(0, eps)]]);
            assert!(check_rule(RuleId::Hd, &obj("-"), inst.assignment).unwrap());
        }
    }

    #[test]
    fn hh_example() {
        let inst = instantiate(RuleId::Hh, &obj("-"), Assignment::new(1, 1, 0)).unwrap();
        assert_eq!((inst.lhs.clone(), inst.rhs[0].clone()), (vec![S(1), S(1)], vec![S(1), S(2)]));
        assert!(check_rule(RuleId::Hh, &obj("-"), inst.assignment).unwrap());
    }

    #[test]
    fn vv_needs_marked_fibres() {
        assert!(enumerate_instances(RuleId::Vv, &obj("-")).is_empty());
        assert!(!enumerate_instances(RuleId::Vv, &obj("=")).is_empty());
    }

    #[test]
    fn rule_names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(r.name().parse::<RuleId>().unwrap(), r);
        }
        assert!("xx".parse::<RuleId>().is_err());
        assert!(check_rule(RuleId::Dd, &obj("-"), Assignment::new(0, 0, 0)).is_err());
    }

    #[test]
    fn small_check_all() {
        let report = check_all(3).unwrap();
        assert_eq!(report.failures(), 0, "{:?}", report.first_failure);
        assert!(report.rules.iter().all(|r| r.instances > 0), "{:?}", report.rules);
    }

    #[test]
    fn sides_are_distinct() {
        for m in 0..=3 {
            for o in enum_objects(m) {
                for inst in instances_at(&o, &RuleId::ALL) {
                    assert!(inst.rhs.iter().all(|r| r != &inst.lhs), "{inst:?}");
                }
            }
        }
    }
}
