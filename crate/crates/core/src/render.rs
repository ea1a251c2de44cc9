//! DOT and TikZ pictures of squares and of factorization chains.
//!
//! Each object is a column: its top row `[m]` over its bottom row `[n]`, joined by the
//! two-headed epi. A chain of morphisms puts the columns side by side with hooked
//! arrows along the top. An identity, or an empty chain, is drawn as the lone object.

use std::fmt::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::faces::path_objects;
use crate::factorize::NormalForm;
use crate::fatcat::{FatMorphism, FatObject};
use crate::simplex::MonotoneMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Tikz,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "tikz" => Ok(Format::Tikz),
            other => Err(Error::Unknown {
                what: "format",
                name: other.to_string(),
            }),
        }
    }
}

struct Arrow {
    label: String,
    bot: MonotoneMap,
}

struct Chain {
    objects: Vec<FatObject>,
    arrows: Vec<Arrow>,
}

fn list(f: &MonotoneMap) -> String {
    let images: Vec<String> = f.images().iter().map(usize::to_string).collect();
    format!("[{}]", images.join(","))
}

fn object_label(o: &FatObject) -> String {
    format!("\"{}\" : [{}] ->> [{}]", o, o.m(), o.n())
}

impl Chain {
    fn dot(&self) -> String {
        let mut s = String::from("digraph {\n  node [shape=plaintext];\n");
        if self.arrows.is_empty() {
            let label = object_label(&self.objects[0]).replace('"', "\\\"");
            writeln!(s, "  o0 [label=\"{label}\"];").unwrap();
            s.push_str("}\n");
            return s;
        }
        for (k, o) in self.objects.iter().enumerate() {
            writeln!(s, "  t{k} [label=\"[{}]\"];", o.m()).unwrap();
            writeln!(s, "  b{k} [label=\"[{}]\"];", o.n()).unwrap();
        }
        let row = |p: &str| (0..self.objects.len()).map(|k| format!("{p}{k}")).collect::<Vec<_>>().join("; ");
        writeln!(s, "  {{ rank=same; {}; }}", row("t")).unwrap();
        writeln!(s, "  {{ rank=same; {}; }}", row("b")).unwrap();
        for (k, o) in self.objects.iter().enumerate() {
            writeln!(s, "  t{k} -> b{k} [arrowhead=normalnormal, label=\"{}\"];", list(o.eta())).unwrap();
        }
        for (k, a) in self.arrows.iter().enumerate() {
            writeln!(s, "  t{k} -> t{} [dir=both, arrowtail=icurve, label=\"{}\"];", k + 1, a.label).unwrap();
            writeln!(s, "  b{k} -> b{} [label=\"{}\"];", k + 1, list(&a.bot)).unwrap();
        }
        s.push_str("}\n");
        s
    }

    fn tikz(&self) -> String {
        let mut s = String::from("\\begin{tikzcd}\n");
        if self.arrows.is_empty() {
            let o = &self.objects[0];
            writeln!(s, "  {{[{}]}} \\ar[r, twoheadrightarrow] & {{[{}]}}", o.m(), o.n()).unwrap();
            s.push_str("\\end{tikzcd}\n");
            return s;
        }
        let last = self.objects.len() - 1;
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for (k, o) in self.objects.iter().enumerate() {
            let mut cell = format!("{{[{}]}}", o.m());
            if k < last {
                write!(cell, " \\ar[r, hook, \"{}\"]", self.arrows[k].label).unwrap();
            }
            write!(cell, " \\ar[d, twoheadrightarrow]").unwrap();
            top.push(cell);
            let mut cell = format!("{{[{}]}}", o.n());
            if k < last {
                write!(cell, " \\ar[r, \"{}\"']", list(&self.arrows[k].bot)).unwrap();
            }
            bottom.push(cell);
        }
        writeln!(s, "  {} \\\\", top.join(" &\n  ")).unwrap();
        writeln!(s, "  {}", bottom.join(" &\n  ")).unwrap();
        s.push_str("\\end{tikzcd}\n");
        s
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Dot => self.dot(),
            Format::Tikz => self.tikz(),
        }
    }
}

/// A single square, its top arrow labelled with the top images.
pub fn render_morphism(f: &FatMorphism, format: Format) -> String {
    let chain = if f.is_identity() {
        Chain {
            objects: vec![f.dom().clone()],
            arrows: Vec::new(),
        }
    } else {
        Chain {
            objects: vec![f.dom().clone(), f.cod().clone()],
            arrows: vec![Arrow {
                label: list(f.top()),
                bot: f.bot().clone(),
            }],
        }
    };
    chain.render(format)
}

/// One square per letter of the normal form, each labelled with its letter.
pub fn render_normal_form(nf: &NormalForm, format: Format) -> Result<String> {
    let letters = nf.letters();
    let objects = path_objects(&nf.anchor, &letters)?;
    let mut arrows = Vec::with_capacity(letters.len());
    for (k, &l) in letters.iter().enumerate() {
        let f = crate::faces::step(&objects[k], l)?;
        arrows.push(Arrow {
            label: l.to_string(),
            bot: f.bot().clone(),
        });
    }
    Ok(Chain { objects, arrows }.render(format))
}
