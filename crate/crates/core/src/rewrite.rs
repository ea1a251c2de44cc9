//! Words in the generators and their normalization by the relations.
//!
//! The normalizer only ever replaces a subword by another side of a rule instance
//! found in the per-object [`RuleIndex`]; it never invents indices. It runs in phases:
//!
//! 1. move every degenerated face to the front, fusing `[s, d]` pairs into bordering
//!    extensions on the way;
//! 2. move the standard faces to the front of the remainder and sort them;
//! 3. turn first-vertex extensions of freshly created fibres into last-vertex ones;
//! 4. replace repeated bordering extensions by an extension and a vertical face;
//! 5. order the remainder as old-fibre extensions, old-fibre vertical faces,
//!    standard faces, new-fibre extensions, new-fibre vertical faces;
//! 6. sort each block.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::faces::{eval_letters, path_objects, step, Letter, LetterKind};
use crate::factorize::{factor_full, NormalForm};
use crate::fatcat::{FatMorphism, FatObject};
use crate::literal::{parse_word, print_word};
use crate::relations::{RuleIndex, RuleId};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub anchor: FatObject,
    pub letters: Vec<Letter>,
}

impl Word {
    pub fn new(anchor: FatObject, letters: Vec<Letter>) -> Self {
        Self { anchor, letters }
    }

    pub fn empty(anchor: FatObject) -> Self {
        Self::new(anchor, Vec::new())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_word(&self.anchor, &self.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (anchor, letters) = parse_word(s)?;
        Ok(Self { anchor, letters })
    }
}

impl From<&NormalForm> for Word {
    fn from(nf: &NormalForm) -> Self {
        Word::new(nf.anchor.clone(), nf.letters())
    }
}

pub fn eval_word(w: &Word) -> Result<FatMorphism> {
    eval_letters(&w.anchor, &w.letters)
}

/// Rewrites words with the relations, caching rule instances per object.
pub struct Normalizer {
    index: RuleIndex,
    /// Maximum number of rewrites per normalization.
    pub budget: usize,
    /// Re-evaluate both sides of every rewrite and fail if they differ.
    pub verify_steps: bool,
    steps: usize,
}

impl Default for Normalizer {
    fn default() -> Self {
        Self::new()
    }
}

fn rank_order(kind: LetterKind, a: Letter, b: Letter) -> bool {
    // whether `a` may precede `b` inside a sorted block
    match kind {
        LetterKind::D => a <= b,
        _ => a < b,
    }
}

/// A word being rewritten, with the object before each letter and after the last.
struct Tape {
    x: Vec<Letter>,
    objects: Vec<FatObject>,
}

impl Tape {
    fn new(w: &Word) -> Result<Self> {
        Ok(Self {
            objects: path_objects(&w.anchor, &w.letters)?,
            x: w.letters.clone(),
        })
    }

    fn len(&self) -> usize {
        self.x.len()
    }

    /// Replaces `x[k..k + len]`; the replacement has the same composite, so only the
    /// objects strictly inside the window change.
    fn splice(&mut self, k: usize, len: usize, replacement: Vec<Letter>) -> Result<()> {
        let inner = path_objects(&self.objects[k], &replacement)?;
        self.objects.splice(k + 1..k + len, inner[1..replacement.len()].iter().cloned());
        self.x.splice(k..k + len, replacement);
        Ok(())
    }

    fn show(&self) -> String {
        print_word(&self.objects[0], &self.x)
    }
}

impl Normalizer {
    pub fn new() -> Self {
        Self::with_rules(&RuleId::ALL)
    }

    /// A normalizer restricted to `rules`; with rules missing it fails on the words
    /// that need them.
    pub fn with_rules(rules: &[RuleId]) -> Self {
        Self {
            index: RuleIndex::new(rules),
            budget: 10_000,
            verify_steps: cfg!(debug_assertions),
            steps: 0,
        }
    }

    fn fail(&self, t: &Tape, k: usize, what: &str) -> Error {
        Error::Rewrite(format!("{what} at position {k} of `{}`", t.show()))
    }

    /// Replaces `x[k..k + len]` by the unique rewrite accepted by `want`.
    fn apply(&mut self, t: &mut Tape, k: usize, len: usize, want: impl Fn(&[Letter]) -> bool) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(self.fail(t, k, "rewrite budget exhausted"));
        }
        let here = &t.objects[k];
        let table = self.index.at(here);
        let side = &t.x[k..k + len];
        let mut chosen: Option<&[Letter]> = None;
        for rw in table.rewrites(side) {
            if !want(&rw.replacement) {
                continue;
            }
            match chosen {
                Some(c) if c != rw.replacement.as_slice() => {
                    return Err(self.fail(t, k, "ambiguous rewrite"));
                }
                _ => chosen = Some(&rw.replacement),
            }
        }
        let replacement = chosen
            .ok_or_else(|| self.fail(t, k, &format!("no rule handles {side:?}")))?
            .to_vec();
        if self.verify_steps && eval_letters(here, side)? != eval_letters(here, &replacement)? {
            return Err(self.fail(t, k, "unsound rewrite"));
        }
        t.splice(k, len, replacement)
    }

    /// Sorts `x[lo..hi]`, all of one kind, by adjacent swaps.
    fn sort_range(&mut self, t: &mut Tape, lo: usize, hi: usize) -> Result<()> {
        let Some(&first) = t.x[lo..hi].first() else {
            return Ok(());
        };
        let kind = first.kind();
        while let Some(k) = (lo + 1..hi).find(|&k| !rank_order(kind, t.x[k - 1], t.x[k])) {
            self.apply(t, k - 1, 2, |r| {
                r.len() == 2 && r.iter().all(|l| l.kind() == kind) && rank_order(kind, r[0], r[1])
            })?;
        }
        Ok(())
    }

    /// Sorts a word whose letters are all of one kind.
    pub fn sort_block(&mut self, w: &Word) -> Result<Word> {
        if let Some(l) = w.letters.iter().find(|l| l.kind() != w.letters[0].kind()) {
            return Err(Error::Rewrite(format!("{w} mixes {:?} with {l}", w.letters[0].kind())));
        }
        let mut t = Tape::new(w)?;
        self.steps = 0;
        let len = t.len();
        self.sort_range(&mut t, 0, len)?;
        Ok(Word::new(w.anchor.clone(), t.x))
    }

    pub fn normalize(&mut self, w: &Word) -> Result<NormalForm> {
        let mut t = Tape::new(w)?;
        self.steps = 0;

        // 1. degenerated faces to the front
        while let Some(k) = (1..t.len()).find(|&k| t.x[k].kind() == LetterKind::D && t.x[k - 1].kind() != LetterKind::D) {
            self.apply(&mut t, k - 1, 2, |r| match r {
                [Letter::B(..)] => true,
                [a, b] => a.kind() == LetterKind::D && b.kind() != LetterKind::D,
                _ => false,
            })?;
        }
        let t0 = t.x.iter().take_while(|l| l.kind() == LetterKind::D).count();
        self.sort_range(&mut t, 0, t0)?;

        // 2. standard faces to the front of the rest
        while let Some(k) = (t0 + 1..t.len()).find(|&k| t.x[k].kind() == LetterKind::S && t.x[k - 1].kind() != LetterKind::S) {
            let prev = t.x[k - 1].kind();
            self.apply(&mut t, k - 1, 2, |r| {
                r.len() == 2 && r[0].kind() == LetterKind::S && r[1].kind() == prev
            })?;
        }
        let t1 = t0 + t.x[t0..].iter().take_while(|l| l.kind() == LetterKind::S).count();
        self.sort_range(&mut t, t0, t1)?;
        // with the block sorted, `s_F` creates fibre `F` of the final bottom row
        let fresh: Vec<usize> = t.x[t0..t1].iter().map(|l| l.index()).collect();

        // 3. first-vertex extensions of fresh fibres become last-vertex ones
        while let Some(k) = (t1..t.len()).find(|&k| matches!(t.x[k], Letter::B(f, 0) if fresh.contains(&f))) {
            let f = t.x[k].index();
            let target = Letter::B(f, 0);
            let mut p = t0 + t.x[t0..t1].iter().position(|&l| l == Letter::S(f)).unwrap();
            while p + 1 < t1 {
                self.apply(&mut t, p, 2, |r| {
                    r.len() == 2 && r[0].kind() == LetterKind::S && r[1] == Letter::S(f)
                })?;
                p += 1;
            }
            self.bring_left(&mut t, k, t1, target)?;
            self.apply(&mut t, t1 - 1, 2, |r| r == [Letter::S(f), Letter::B(f, 1)])?;
            self.sort_range(&mut t, t0, t1)?;
        }

        // 4. no bordering extension twice
        while let Some((k1, k2)) = first_repeat(&t.x, t1) {
            let b = t.x[k1];
            self.bring_left(&mut t, k2, k1 + 1, b)?;
            self.apply(&mut t, k1, 2, |r| {
                r.len() == 2 && r[0] == b && r[1].kind() == LetterKind::V
            })?;
        }

        // 5. old fibres first, then the standard faces, then the fresh fibres
        loop {
            let ranks = self.ranks(&t, t0)?;
            let Some(k) = (1..ranks.len()).find(|&k| ranks[k - 1] > ranks[k]).map(|k| t0 + k) else {
                break;
            };
            let pair = [t.x[k - 1], t.x[k]];
            self.apply(&mut t, k - 1, 2, |r| {
                r.len() == 2 && r[0].kind() == pair[1].kind() && r[1].kind() == pair[0].kind() && r != pair
            })?;
        }

        // 6. split into blocks and sort each
        let mut bounds = vec![0, t0];
        let mut at = t0;
        for kind in [LetterKind::B, LetterKind::V, LetterKind::S, LetterKind::B, LetterKind::V] {
            at += t.x[at..].iter().take_while(|l| l.kind() == kind).count();
            bounds.push(at);
        }
        if at != t.len() {
            return Err(self.fail(&t, at, "letter out of block order"));
        }
        for b in 1..bounds.len() - 1 {
            self.sort_range(&mut t, bounds[b], bounds[b + 1])?;
        }
        let block = |b: usize| t.x[bounds[b]..bounds[b + 1]].to_vec();
        Ok(NormalForm {
            anchor: w.anchor.clone(),
            sigma: block(0),
            phi: block(1),
            nu: block(2),
            delta: block(3),
            psi: block(4),
            tau: block(5),
        })
    }

    /// Moves the letter `target` at position `k` left to position `stop`, past
    /// bordering extensions and vertical faces; a copy of `target` met on the way is
    /// merged into `target` followed by a vertical face.
    fn bring_left(&mut self, t: &mut Tape, mut k: usize, stop: usize, target: Letter) -> Result<()> {
        while k > stop {
            let prev = t.x[k - 1];
            if prev == target {
                self.apply(t, k - 1, 2, |r| {
                    r.len() == 2 && r[0] == target && r[1].kind() == LetterKind::V
                })?;
            } else {
                self.apply(t, k - 1, 2, |r| {
                    r.len() == 2 && r[0] == target && r[1].kind() == prev.kind()
                })?;
            }
            k -= 1;
        }
        Ok(())
    }

    /// Block rank of each letter of `x[t0..]`: whether it acts on a fibre that
    /// existed at `t0` or on one created by a standard face.
    fn ranks(&self, t: &Tape, t0: usize) -> Result<Vec<u8>> {
        let mut old = vec![true; t.objects[t0].n() + 1];
        let mut ranks = Vec::with_capacity(t.len() - t0);
        for (k, &l) in t.x.iter().enumerate().skip(t0) {
            let rank = match l {
                Letter::S(i) => {
                    old.insert(i, false);
                    3
                }
                Letter::B(i, _) => {
                    if old[i] {
                        1
                    } else {
                        4
                    }
                }
                Letter::V(p) => {
                    if old[t.objects[k + 1].fibre_of(p)] {
                        2
                    } else {
                        5
                    }
                }
                Letter::D(_) => return Err(self.fail(t, k, "degenerated face after the first block")),
            };
            ranks.push(rank);
        }
        Ok(ranks)
    }
}

/// First two positions at or after `from` holding the same bordering extension, the
/// second being the next occurrence of the first.
fn first_repeat(x: &[Letter], from: usize) -> Option<(usize, usize)> {
    for k1 in from..x.len() {
        if x[k1].kind() == LetterKind::B {
            if let Some(d) = x[k1 + 1..].iter().position(|&l| l == x[k1]) {
                return Some((k1, k1 + 1 + d));
            }
        }
    }
    None
}

pub fn sort_block(w: &Word) -> Result<Word> {
    Normalizer::new().sort_block(w)
}

pub fn normalize_word(w: &Word) -> Result<NormalForm> {
    Normalizer::new().normalize(w)
}

/// Equality in the presented category, decided by normal forms and cross-checked
/// against evaluation.
pub fn words_equal(w1: &Word, w2: &Word) -> Result<bool> {
    if w1.anchor != w2.anchor {
        return Err(Error::ObjectMismatch(format!(
            "anchors {} and {} differ",
            w1.anchor, w2.anchor
        )));
    }
    let mut n = Normalizer::new();
    let by_form = n.normalize(w1)? == n.normalize(w2)?;
    let by_value = eval_word(w1)? == eval_word(w2)?;
    if by_form != by_value {
        return Err(Error::Invariant(format!(
            "normal forms and composites disagree on {w1} and {w2}"
        )));
    }
    Ok(by_form)
}

/// Normal form of the composite, computed by factorization rather than rewriting.
pub fn factor_word(w: &Word) -> Result<NormalForm> {
    factor_full(&eval_word(w)?)
}

/// Every word of length exactly `len` starting at `anchor`, in a fixed order.
pub fn enum_words(anchor: &FatObject, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut letters = Vec::with_capacity(len);
    grow(anchor, anchor, len, &mut letters, &mut out);
    out
}

fn grow(anchor: &FatObject, here: &FatObject, len: usize, letters: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if letters.len() == len {
        out.push(Word::new(anchor.clone(), letters.clone()));
        return;
    }
    for l in crate::faces::valid_letters(here) {
        let next = step(here, l).expect("valid letters always apply");
        letters.push(l);
        grow(anchor, next.cod(), len, letters, out);
        letters.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{B, D, S, V};

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn evaluation() {
        let f = eval_word(&word("| s0")).unwrap();
        assert_eq!((f.cod().to_string(), f.top().images()), ("-".to_string(), &[1][..]));
        let f = eval_word(&word("- | d0;v1")).unwrap();
        assert_eq!(f.cod().to_string(), "==");
        assert!(matches!(
            eval_word(&word("= | d0")),
            Err(Error::InvalidStep { position: 0, .. })
        ));
        assert!(eval_word(&word("-= |")).unwrap().is_identity());
    }

    #[test]
    fn sorting_blocks() {
        let w = word("-- | d1;d0");
        let sorted = sort_block(&w).unwrap();
        assert_eq!(sorted.letters, vec![D(0), D(0)]);
        assert_eq!(eval_word(&sorted).unwrap(), eval_word(&w).unwrap());
        assert_eq!(sort_block(&word("- | s1")).unwrap(), word("- | s1"));
        assert_eq!(sort_block(&word("- | s0;s2")).unwrap(), word("- | s0;s2"));
        assert!(sort_block(&word("- | s0;d0")).is_err());
    }

    #[test]
    fn normalizing() {
        let nf = normalize_word(&word("- | d0;v1")).unwrap();
        assert_eq!((nf.sigma.clone(), nf.nu.clone()), (vec![D(0)], vec![V(1)]));
        let nf = normalize_word(&word("- | s1;d0")).unwrap();
        assert_eq!(nf.letters(), vec![B(0, 1)]);
        assert!(normalize_word(&word("-= |")).unwrap().is_empty());
        let nf = normalize_word(&word("| s0;b0.0")).unwrap();
        assert_eq!((nf.delta.clone(), nf.psi.clone()), (vec![S(0)], vec![B(0, 1)]));
    }

    #[test]
    fn equality() {
        assert!(words_equal(&word("-- | d0;d0"), &word("-- | d1;d0")).unwrap());
        assert!(!words_equal(&word("| s0"), &word("| s1")).unwrap());
        assert!(words_equal(&word("- | d0;v1"), &word("- | d0;v1")).unwrap());
        assert!(words_equal(&word("- |"), &word("= |")).is_err());
    }

    #[test]
    fn agreement_short_words() {
        let mut n = Normalizer::new();
        for m in 0..=2 {
            for anchor in crate::oracle::enum_objects(m) {
                for len in 0..=3 {
                    for w in enum_words(&anchor, len) {
                        let nf = n.normalize(&w).unwrap_or_else(|e| panic!("{w}: {e}"));
                        assert_eq!(nf, factor_word(&w).unwrap(), "{w}");
                    }
                }
            }
        }
    }
}
