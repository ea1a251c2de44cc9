//! Text forms of maps, objects, words and morphisms.
//!
//! * map: `m->n:[i0,...,im]`, e.g. `2->1:[0,1,1]`
//! * object: an edge string over `-`/`=` (the empty string is `[0]`), or a fibre
//!   list `(g0,...,gn)`; `()` is the empty object
//! * word: `<anchor> | <letter>;<letter>;...`, e.g. `- | d0;v1`
//! * morphism: `{"dom":"-","cod":"==","top":[0,2],"bot":[0,0]}`

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::faces::Letter;
use crate::fatcat::{FatMorphism, FatObject};
use crate::simplex::MonotoneMap;

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

fn parse_int(text: &str, offset: usize) -> Result<isize> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    trimmed
        .parse()
        .map_err(|_| syntax(offset + lead, format!("expected an integer, found `{trimmed}`")))
}

fn parse_list(text: &str, offset: usize, open: char, close: char) -> Result<Vec<usize>> {
    let body = text
        .strip_prefix(open)
        .ok_or_else(|| syntax(offset, format!("expected `{open}`")))?
        .strip_suffix(close)
        .ok_or_else(|| syntax(offset + text.len(), format!("expected `{close}` at the end")))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut at = offset + 1;
    for item in body.split(',') {
        let value = parse_int(item, at)?;
        if value < 0 {
            return Err(syntax(at, "entries are non-negative"));
        }
        out.push(value as usize);
        at += item.len() + 1;
    }
    Ok(out)
}

pub fn parse_map(text: &str) -> Result<MonotoneMap> {
    let (sizes, list) = text
        .split_once(':')
        .ok_or_else(|| syntax(text.len(), "expected `m->n:[...]`"))?;
    let (dom, cod) = sizes
        .split_once("->")
        .ok_or_else(|| syntax(0, "expected `->` between the sizes"))?;
    let dom = parse_int(dom, 0)?;
    let cod = parse_int(cod, dom.to_string().len() + 2)?;
    let images = parse_list(list.trim(), sizes.len() + 1, '[', ']')?;
    MonotoneMap::with_sizes(dom, cod, images)
}

pub fn print_map(f: &MonotoneMap) -> String {
    f.to_string()
}

pub fn parse_object(text: &str) -> Result<FatObject> {
    let text = text.trim();
    if text.starts_with('(') {
        let fibres = parse_list(text, 0, '(', ')')?;
        if fibres.is_empty() {
            return Ok(FatObject::unit());
        }
        Ok(FatObject::from_fibres(&fibres))
    } else {
        FatObject::from_edge_string(text)
    }
}

/// The canonical literal: the edge string, or `()` for the empty object.
pub fn print_object(o: &FatObject) -> String {
    o.to_string()
}

pub fn print_fibres(o: &FatObject) -> String {
    let sizes: Vec<String> = o.fibre_sizes().iter().map(|g| g.to_string()).collect();
    format!("({})", sizes.join(","))
}

pub fn parse_letter(text: &str) -> Result<Letter> {
    text.trim().parse()
}

pub fn parse_word(text: &str) -> Result<(FatObject, Vec<Letter>)> {
    let (anchor, rest) = text
        .split_once('|')
        .ok_or_else(|| syntax(text.len(), "expected `<anchor> | <letters>`"))?;
    let anchor = parse_object(anchor)?;
    let mut letters = Vec::new();
    let base = text.len() - rest.len();
    if !rest.trim().is_empty() {
        let mut at = base;
        for item in rest.split(';') {
            let lead = item.len() - item.trim_start().len();
            letters.push(parse_letter(item).map_err(|e| match e {
                Error::Syntax { offset, message } => syntax(at + lead + offset, message),
                other => other,
            })?);
            at += item.len() + 1;
        }
    }
    Ok((anchor, letters))
}

pub fn print_word(anchor: &FatObject, letters: &[Letter]) -> String {
    let body: Vec<String> = letters.iter().map(Letter::to_string).collect();
    let mut parts = Vec::new();
    let anchor = anchor.to_string();
    if !anchor.is_empty() {
        parts.push(anchor);
    }
    parts.push("|".to_string());
    if !body.is_empty() {
        parts.push(body.join(";"));
    }
    parts.join(" ")
}

/// The JSON shape of a morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismLiteral {
    pub dom: String,
    pub cod: String,
    pub top: Vec<usize>,
    pub bot: Vec<usize>,
}

impl From<&FatMorphism> for MorphismLiteral {
    fn from(f: &FatMorphism) -> Self {
        Self {
            dom: f.dom().to_string(),
            cod: f.cod().to_string(),
            top: f.top().images().to_vec(),
            bot: f.bot().images().to_vec(),
        }
    }
}

impl TryFrom<MorphismLiteral> for FatMorphism {
    type Error = Error;

    fn try_from(lit: MorphismLiteral) -> Result<Self> {
        let dom = parse_object(&lit.dom)?;
        let cod = parse_object(&lit.cod)?;
        dom.require_non_unit()?;
        cod.require_non_unit()?;
        let top = MonotoneMap::with_sizes(dom.m() as isize, cod.m() as isize, lit.top)?;
        let bot = MonotoneMap::with_sizes(dom.n() as isize, cod.n() as isize, lit.bot)?;
        FatMorphism::new(dom, cod, top, bot)
    }
}

pub fn parse_morphism(json: &str) -> Result<FatMorphism> {
    let lit: MorphismLiteral = serde_json::from_str(json).map_err(|e| {
        let offset = json
            .split_inclusive('\n')
            .take(e.line().saturating_sub(1))
            .map(str::len)
            .sum::<usize>()
            + e.column().saturating_sub(1);
        syntax(offset, e.to_string())
    })?;
    FatMorphism::try_from(lit)
}

pub fn print_morphism(f: &FatMorphism) -> String {
    serde_json::to_string(&MorphismLiteral::from(f)).expect("morphism literals always serialize")
}

impl Serialize for FatObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FatObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        parse_object(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for FatMorphism {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MorphismLiteral::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FatMorphism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FatMorphism::try_from(MorphismLiteral::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::valid_letters;
    use crate::oracle::enum_objects_upto;

    #[test]
    fn maps() {
        let f = parse_map("2->1:[0,1,1]").unwrap();
        assert_eq!(print_map(&f), "2->1:[0,1,1]");
        assert_eq!(parse_map(" -1 -> 0 : [] ").unwrap().dom_size(), -1);
        assert!(parse_map("2->1:[0,1]").is_err());
        assert!(parse_map("1->1:[1,0]").is_err());
        assert!(matches!(parse_map("1->1:[0,x]"), Err(Error::Syntax { offset: 8, .. })));
    }

    #[test]
    fn objects() {
        assert_eq!(parse_object("-=").unwrap().eta().images(), &[0, 1, 1]);
        assert_eq!(parse_object("(0,1)").unwrap(), parse_object("-=").unwrap());
        assert!(parse_object("()").unwrap().is_unit());
        assert!(matches!(parse_object("-%"), Err(Error::Syntax { offset: 1, .. })));
        for o in enum_objects_upto(6) {
            assert_eq!(parse_object(&print_object(&o)).unwrap(), o);
            assert_eq!(parse_object(&print_fibres(&o)).unwrap(), o);
        }
    }

    #[test]
    fn words() {
        let (anchor, letters) = parse_word("- | d0;v1").unwrap();
        assert_eq!(print_word(&anchor, &letters), "- | d0;v1");
        let (anchor, letters) = parse_word("| s0").unwrap();
        assert_eq!((anchor.m(), letters), (0, vec![Letter::S(0)]));
        assert_eq!(print_word(&parse_object("=").unwrap(), &[]), "= |");
        assert!(matches!(parse_word("- | d0;x1"), Err(Error::Syntax { offset: 7, .. })));
        assert!(parse_word("- d0").is_err());
        for o in enum_objects_upto(4) {
            let letters = valid_letters(&o);
            let text = print_word(&o, &letters);
            assert_eq!(parse_word(&text).unwrap(), (o, letters));
        }
    }

    #[test]
    fn morphisms() {
        let f = parse_morphism(r#"{"dom":"-","cod":"==","top":[0,2],"bot":[0,0]}"#).unwrap();
        assert_eq!(print_morphism(&f), r#"{"dom":"-","cod":"==","top":[0,2],"bot":[0,0]}"#);
        assert_eq!(parse_morphism(&print_morphism(&f)).unwrap(), f);
        let err = parse_morphism(r#"{"dom":"-","cod":"-","top":[0,1],"bot":[0,0]}"#);
        assert!(matches!(err, Err(Error::NotCommuting(_))));
        assert!(matches!(parse_morphism(r#"{"dom":"-""#), Err(Error::Syntax { .. })));
        assert!(parse_morphism(r#"{"dom":"-","cod":"-","top":[0,1],"bot":[0,1],"x":1}"#).is_err());
    }
}
