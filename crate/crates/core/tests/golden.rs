//! Rendered diagrams compared byte for byte with checked-in files.
//! Run with `FD_BLESS=1` to rewrite the files.

use std::path::PathBuf;

use fatdelta::factorize::factor_full;
use fatdelta::faces::{bord_ext, deg_face};
use fatdelta::literal::{parse_morphism, parse_object};
use fatdelta::render::{render_morphism, render_normal_form, Format};
use fatdelta::FatMorphism;

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("FD_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} changed");
}

fn both(name: &str, render: impl Fn(Format) -> String) {
    check(&format!("{name}.dot"), &render(Format::Dot));
    check(&format!("{name}.tex"), &render(Format::Tikz));
}

#[test]
fn identity() {
    let id = FatMorphism::identity(&parse_object("").unwrap());
    both("identity", |f| render_morphism(&id, f));
}

#[test]
fn degenerated_face() {
    let d = deg_face(&parse_object("-").unwrap(), 0).unwrap();
    both("d0", |f| render_morphism(&d, f));
}

#[test]
fn bordering_extension() {
    let b = bord_ext(&parse_object("-").unwrap(), 0, 1).unwrap();
    both("b0.1", |f| render_morphism(&b, f));
}

#[test]
fn factorization_chain() {
    let f = parse_morphism(r#"{"dom":"-","cod":"==","top":[0,2],"bot":[0,0]}"#).unwrap();
    let nf = factor_full(&f).unwrap();
    both("chain_d0_v1", |fmt| render_normal_form(&nf, fmt).unwrap());
}

#[test]
fn longer_chain() {
    let f = parse_morphism(r#"{"dom":"-=","cod":"-=-==","top":[0,3,4],"bot":[0,2]}"#).unwrap();
    let nf = factor_full(&f).unwrap();
    both("chain_long", |fmt| render_normal_form(&nf, fmt).unwrap());
}
