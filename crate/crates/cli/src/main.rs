use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use fatdelta::audit::{self, AuditReport, CheckResult};
use fatdelta::factorize::factor_full;
use fatdelta::fatcat::compose;
use fatdelta::literal::{parse_map, parse_morphism, parse_object, print_fibres};
use fatdelta::oracle::{enum_hom, enum_morphisms, enum_objects};
use fatdelta::relations::{check_rules, RelationReport};
use fatdelta::render::{render_morphism, render_normal_form, Format};
use fatdelta::rewrite::{eval_word, normalize_word, words_equal};
use fatdelta::{Error, FatMorphism, NormalForm, RuleId, Word};

/// Objects, morphisms and words of the fat simplex category.
#[derive(Parser)]
#[command(name = "fd", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Size cap for enumerations and checks.
    #[arg(long, global = true, env = "FD_MAX_SIZE", default_value_t = 3)]
    max_size: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a literal and print its canonical form.
    Parse {
        #[arg(allow_hyphen_values = true)]
        literal: String,
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
    },
    /// Composite `second ∘ first` of two morphism literals.
    Compose {
        #[arg(allow_hyphen_values = true)]
        second: String,
        #[arg(allow_hyphen_values = true)]
        first: String,
    },
    /// Six-block normal form of a morphism.
    Factor {
        #[arg(allow_hyphen_values = true)]
        morphism: String,
    },
    /// Normal form of a word, by rewriting.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Whether two words denote the same morphism.
    WordEq {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// All morphisms between two objects.
    Hom {
        #[arg(allow_hyphen_values = true)]
        dom: String,
        #[arg(allow_hyphen_values = true)]
        cod: String,
    },
    /// Objects or morphisms up to the size cap, or with exactly `--m` vertices.
    Enumerate {
        #[arg(value_enum)]
        what: Enumerable,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Check the relations on every object up to the size cap.
    CheckRelations {
        /// Restrict to these rules (repeatable), e.g. `--rule dd --rule sw`.
        #[arg(long = "rule")]
        rules: Vec<String>,
    },
    /// Factor every morphism up to the size cap and evaluate back.
    CheckFactorization,
    /// Run every exhaustive check up to the size cap.
    Audit,
    /// Draw a morphism, or the normal form of a morphism or word.
    Render {
        #[arg(allow_hyphen_values = true)]
        literal: String,
        #[arg(long, value_enum, default_value_t = RenderFormat::Dot)]
        format: RenderFormat,
        /// Draw the factorization chain instead of the single square.
        #[arg(long)]
        chain: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Auto,
    Object,
    Word,
    Morphism,
    Map,
}

#[derive(Clone, Copy, ValueEnum)]
enum Enumerable {
    Objects,
    Morphisms,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Tikz,
}

enum Outcome {
    Done,
    Counterexample,
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
    } else {
        print!("{}", text());
    }
}

fn guess_kind(literal: &str) -> Kind {
    let t = literal.trim_start();
    if t.starts_with('{') {
        Kind::Morphism
    } else if t.contains('|') {
        Kind::Word
    } else if t.contains("->") {
        Kind::Map
    } else {
        Kind::Object
    }
}

fn classes(f: &FatMorphism) -> Vec<&'static str> {
    let c = f.class_of();
    [
        (c.diagonal, "diagonal"),
        (c.vertical, "vertical"),
        (c.horizontal, "horizontal"),
        (c.cartesian, "cartesian"),
    ]
    .into_iter()
    .filter_map(|(yes, name)| yes.then_some(name))
    .collect()
}

fn blocks_text(nf: &NormalForm) -> String {
    let mut s = format!("{nf}\n");
    for (name, block) in fatdelta::factorize::BLOCK_NAMES.iter().zip(nf.blocks()) {
        let letters: Vec<String> = block.iter().map(ToString::to_string).collect();
        s.push_str(&format!("  {name:<6}{}\n", letters.join(" ")));
    }
    s
}

fn check_text(c: &CheckResult) -> String {
    let mut s = format!(
        "{:<24}{:>10} cases  {}\n",
        c.name,
        c.cases,
        if c.passed() { "ok".to_string() } else { format!("{} FAILED", c.failures) }
    );
    if let Some(cx) = &c.first_counterexample {
        s.push_str(&format!("    first counterexample: {cx}\n"));
    }
    s
}

fn verdict(passed: bool) -> Outcome {
    if passed {
        Outcome::Done
    } else {
        Outcome::Counterexample
    }
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let json = cli.json;
    let max = cli.max_size;
    match cli.command {
        Command::Parse { literal, kind } => {
            let kind = match kind {
                Kind::Auto => guess_kind(&literal),
                k => k,
            };
            match kind {
                Kind::Object | Kind::Auto => {
                    let o = parse_object(&literal)?;
                    let fibres = if o.is_unit() { Vec::new() } else { o.fibre_sizes() };
                    let value = json!({
                        "kind": "object",
                        "canonical": o.to_string(),
                        "eta": o.eta().images(),
                        "fibres": fibres,
                    });
                    emit(json, &value, || {
                        if o.is_unit() {
                            "object ()\n  the empty object\n".to_string()
                        } else {
                            format!("object {o:?}\n  eta    {}\n  fibres {}\n", o.eta(), print_fibres(&o))
                        }
                    });
                }
                Kind::Word => {
                    let w: Word = literal.parse()?;
                    let f = eval_word(&w)?;
                    let value = json!({"kind": "word", "canonical": w.to_string(), "value": f});
                    emit(json, &value, || format!("word {w}\n  value {f}\n"));
                }
                Kind::Morphism => {
                    let f = parse_morphism(&literal)?;
                    let value = json!({"kind": "morphism", "canonical": f, "classes": classes(&f)});
                    emit(json, &value, || {
                        let names = classes(&f);
                        let names = if names.is_empty() { "none".to_string() } else { names.join(", ") };
                        format!("morphism {f}\n  classes {names}\n")
                    });
                }
                Kind::Map => {
                    let f = parse_map(&literal)?;
                    let value = json!({"kind": "map", "canonical": f.to_string()});
                    emit(json, &value, || format!("map {f}\n"));
                }
            }
        }
        Command::Compose { second, first } => {
            let (g, f) = (parse_morphism(&second)?, parse_morphism(&first)?);
            let h = compose(&g, &f)?;
            emit(json, &h, || format!("{h}\n"));
        }
        Command::Factor { morphism } => {
            let nf = factor_full(&parse_morphism(&morphism)?)?;
            emit(json, &nf, || blocks_text(&nf));
        }
        Command::Normalize { word } => {
            let nf = normalize_word(&word.parse()?)?;
            emit(json, &nf, || blocks_text(&nf));
        }
        Command::WordEq { first, second } => {
            let (a, b): (Word, Word) = (first.parse()?, second.parse()?);
            let equal = words_equal(&a, &b)?;
            let forms = [normalize_word(&a)?, normalize_word(&b)?];
            let value = json!({"equal": equal, "normal_forms": forms});
            emit(json, &value, || {
                format!(
                    "{}\n  {}\n  {}\n",
                    if equal { "equal" } else { "not equal" },
                    forms[0],
                    forms[1]
                )
            });
        }
        Command::Hom { dom, cod } => {
            let hom = enum_hom(&parse_object(&dom)?, &parse_object(&cod)?);
            emit(json, &hom, || {
                let mut s = format!("{} morphisms\n", hom.morphisms.len());
                for f in &hom.morphisms {
                    s.push_str(&format!("  {f}\n"));
                }
                s
            });
        }
        Command::Enumerate { what, m } => {
            let sizes = match m {
                Some(m) => m..=m,
                None => 0..=max,
            };
            match what {
                Enumerable::Objects => {
                    let objects: Vec<_> = sizes.flat_map(enum_objects).collect();
                    emit(json, &objects, || {
                        objects.iter().map(|o| format!("{o:?}\n")).collect()
                    });
                }
                Enumerable::Morphisms => {
                    let cap = *sizes.end();
                    let lo = *sizes.start();
                    let morphisms: Vec<_> = enum_morphisms(cap)
                        .into_iter()
                        .filter(|f| f.dom().m() >= lo && f.cod().m() >= lo)
                        .collect();
                    emit(json, &morphisms, || morphisms.iter().map(|f| format!("{f}\n")).collect());
                }
            }
        }
        Command::CheckRelations { rules } => {
            let rules = if rules.is_empty() {
                RuleId::ALL.to_vec()
            } else {
                rules.iter().map(|r| r.parse()).collect::<Result<Vec<RuleId>, _>>()?
            };
            let report = check_rules(max, &rules)?;
            emit(json, &report, || relations_text(&report));
            return Ok(verdict(report.failures() == 0));
        }
        Command::CheckFactorization => {
            let c = audit::factorization(max);
            emit(json, &c, || check_text(&c));
            return Ok(verdict(c.passed()));
        }
        Command::Audit => {
            let report = audit::audit(max);
            emit(json, &report, || audit_text(&report));
            return Ok(verdict(report.passed()));
        }
        Command::Render {
            literal,
            format,
            chain,
            output,
        } => {
            let format = match format {
                RenderFormat::Dot => Format::Dot,
                RenderFormat::Tikz => Format::Tikz,
            };
            let text = match guess_kind(&literal) {
                Kind::Word => render_normal_form(&normalize_word(&literal.parse()?)?, format)?,
                _ => {
                    let f = parse_morphism(&literal)?;
                    if chain {
                        render_normal_form(&factor_full(&f)?, format)?
                    } else {
                        render_morphism(&f, format)
                    }
                }
            };
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| Error::Unknown {
                    what: "output path",
                    name: format!("{}: {e}", path.display()),
                })?,
                None => print!("{text}"),
            }
        }
    }
    Ok(Outcome::Done)
}

fn relations_text(report: &RelationReport) -> String {
    let mut s = String::new();
    for r in &report.rules {
        s.push_str(&format!("{:<6}{:>8} instances  {} failures\n", r.rule, r.instances, r.failures));
    }
    if let Some(cx) = &report.first_failure {
        s.push_str(&format!(
            "first counterexample: {} ({}) at {:?} with i={} j={} eps={}\n  {:?} gives {}\n  {:?} gives {}\n",
            cx.rule,
            cx.case,
            cx.anchor,
            cx.assignment.i,
            cx.assignment.j,
            cx.assignment.eps,
            cx.lhs,
            cx.lhs_morphism,
            cx.rhs,
            cx.rhs_morphism
        ));
    }
    s
}

fn audit_text(report: &AuditReport) -> String {
    let mut s = format!("audit up to m = {}\n", report.max_m);
    for c in &report.checks {
        s.push_str(&check_text(c));
    }
    s
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = run(cli);
    let _ = std::io::stdout().flush();
    match outcome {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
