use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use mould::dihedral::{dihedral_space_basis, DihedralCollection, Relation};
use mould::flexion::{ari_with_guard, DEFAULT_MAX_DEPTH};
use mould::group::{parse_group_shorthand, GroupJson};
use mould::json::{dihedral_basis_value, dihedral_witness_value, document_from_json, mould_doc, mould_from_json, witness_value, Document};
use mould::lie::kv::{krv_basis, lkrv_basis};
use mould::lie::ma::{ma, ma_preimage};
use mould::lie::parse::{parse_lie, print_lie};
use mould::spaces::{Condition, Space, SpaceSpec};
use mould::verify::{run_suite, Params};
use mould::{Group, Mould};

use crate::{Cli, Command, Format};

pub enum Outcome {
    Pass,
    Fail,
}

type CliResult<T> = Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let group = parse_group_shorthand(&cli.group).map_err(err)?;
    match &cli.command {
        Command::Ari { a, b } => {
            let (a, b) = (read_mould(a)?, read_mould(b)?);
            let limit = cli.max_depth.unwrap_or(DEFAULT_MAX_DEPTH);
            emit_mould(cli, &ari_with_guard(&a, &b, limit).map_err(err)?)
        }
        Command::Mu { a, b } => {
            let (a, b) = (read_mould(a)?, read_mould(b)?);
            let limit = cli.max_depth.unwrap_or(DEFAULT_MAX_DEPTH);
            if a.max_depth() + b.max_depth() > limit {
                return Err(format!("depth {} exceeds the max-depth guard {limit}", a.max_depth() + b.max_depth()));
            }
            emit_mould(cli, &a.mu(&b).map_err(err)?)
        }
        Command::Swap { m } => emit_mould(cli, &read_mould(m)?.swap()),
        Command::Push { m } => emit_mould(cli, &read_mould(m)?.push().map_err(err)?),
        Command::Teru { m } => emit_mould(cli, &read_mould(m)?.teru().map_err(err)?),
        Command::Check { predicate, file } => check(cli, predicate, file),
        Command::Dim => dim(cli, &group),
        Command::Basis => basis(cli, &group),
        Command::Ma { expr, inverse } => ma_cmd(cli, &group, expr, *inverse),
        Command::Dihedral { distribution } => dihedral(cli, &group, *distribution),
        Command::Verify { suite, max_weight, max_degree, cap } => {
            let params = Params {
                group: group.clone(),
                trials: cli.trials,
                seed: cli.seed,
                max_depth: cli.max_depth.unwrap_or(3),
                max_degree: *max_degree,
                max_weight: *max_weight,
                cap: *cap,
            };
            let report = run_suite(suite, &params).map_err(err)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let text = match cli.format.unwrap_or(Format::Table) {
                Format::Json => pretty(&report.to_json()),
                Format::Table => {
                    let status = if report.passed() { "PASS" } else { "FAIL" };
                    let mut s = format!("{suite} {}: {status} ({} checks, {} trials)", cli.group, report.checks, report.trials);
                    if let Some(c) = &report.counterexample {
                        s.push('\n');
                        s.push_str(&pretty(c));
                    }
                    s
                }
            };
            emit(cli, &text)?;
            Ok(if report.passed() { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            use std::io::Write;
            match writeln!(std::io::stdout().lock(), "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(format!("stdout: {e}")),
                _ => Ok(()),
            }
        }
    }
}

fn emit_mould(cli: &Cli, m: &Mould) -> CliResult<Outcome> {
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&serde_json::to_value(mould_doc(m)).expect("serializable")),
        Format::Table => format!("{m:?}"),
    };
    emit(cli, &text)?;
    Ok(Outcome::Pass)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_mould(path: &Path) -> CliResult<Mould> {
    mould_from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn mould_conditions(name: &str, g: &Group) -> CliResult<Vec<Condition>> {
    let n = name.to_ascii_lowercase();
    Ok(match n.as_str() {
        "alternal" => vec![Condition::Alternal],
        "swap-alternal" => vec![Condition::SwapAlternal],
        "bialternal" => Space::Alal.conditions(g),
        "parity" => vec![Condition::Parity],
        "push" => vec![Condition::Push],
        "pusnu" => vec![Condition::Pusnu],
        "swap-pusnu" => vec![Condition::SwapPusnu],
        "senary" => vec![Condition::Senary],
        "mantar" => vec![Condition::Mantar],
        "distribution" => Space::Dist(Vec::new()).conditions(g),
        _ => match n.strip_prefix("distribution:") {
            Some(k) => vec![Condition::Distribution(k.parse().map_err(|_| format!("bad N in {name}"))?)],
            None => Space::parse(&n).map_err(err)?.conditions(g),
        },
    })
}

fn dihedral_relations(name: &str, g: &Group) -> CliResult<Vec<Relation>> {
    let n = name.to_ascii_lowercase();
    Ok(match n.as_str() {
        "harmonic" => vec![Relation::Harmonic],
        "shuffle" => vec![Relation::Shuffle],
        "double-shuffle" => vec![Relation::Harmonic, Relation::Shuffle],
        "cyclic" => vec![Relation::Cyclic],
        "inversion" => vec![Relation::Inversion],
        "reflection" => vec![Relation::Reflection],
        "dihedral" => vec![Relation::Cyclic, Relation::Inversion, Relation::Reflection],
        "additional" => vec![Relation::Additional],
        "distribution" => mould::dihedral::relations(g, true).into_iter().filter(|r| matches!(r, Relation::Distribution(_))).collect(),
        _ => match n.strip_prefix("distribution:") {
            Some(k) => vec![Relation::Distribution(k.parse().map_err(|_| format!("bad N in {name}"))?)],
            None => return Err(format!("unknown relation {name} for dihedral collections")),
        },
    })
}

fn check(cli: &Cli, predicate: &str, file: &Path) -> CliResult<Outcome> {
    let doc = document_from_json(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
    let failure: Option<Value> = match &doc {
        Document::Mould(m) => {
            let mut first = None;
            for c in mould_conditions(predicate, m.group())? {
                if let Err(w) = c.check(m).map_err(err)? {
                    first = Some(witness_value(m.group(), &w));
                    break;
                }
            }
            first
        }
        Document::Dihedral(z) => check_dihedral(z, predicate)?,
    };
    let passed = failure.is_none();
    let text = match (failure, cli.format.unwrap_or(Format::Table)) {
        (Some(w), _) => pretty(&json!({ "predicate": predicate, "passed": false, "witness": w })),
        (None, Format::Json) => pretty(&json!({ "predicate": predicate, "passed": true })),
        (None, Format::Table) => format!("{predicate}: pass"),
    };
    emit(cli, &text)?;
    Ok(if passed { Outcome::Pass } else { Outcome::Fail })
}

fn check_dihedral(z: &DihedralCollection, predicate: &str) -> CliResult<Option<Value>> {
    for r in dihedral_relations(predicate, z.group())? {
        if let Err(w) = z.check(r).map_err(err)? {
            return Ok(Some(dihedral_witness_value(z.group(), &w)));
        }
    }
    Ok(None)
}

fn require(v: Option<usize>, flag: &str) -> CliResult<usize> {
    v.ok_or_else(|| format!("--{flag} is required"))
}

/// Word-side and dihedral spaces, which are not intersections of mould conditions.
enum Special {
    Krv,
    Lkrv { distribution: bool },
    Dihedral { distribution: bool },
}

fn special(name: &str) -> Option<Special> {
    match name {
        "krv" => Some(Special::Krv),
        "lkrv" => Some(Special::Lkrv { distribution: false }),
        "lkrvd" => Some(Special::Lkrv { distribution: true }),
        "dihedral" => Some(Special::Dihedral { distribution: false }),
        "dihedral-dist" => Some(Special::Dihedral { distribution: true }),
        _ => None,
    }
}

fn space_names(cli: &Cli) -> CliResult<Vec<String>> {
    let s = cli.space.as_deref().ok_or("--space is required")?;
    Ok(s.split(',').map(|t| t.trim().to_ascii_lowercase()).filter(|t| !t.is_empty()).collect())
}

fn mould_spec(cli: &Cli, g: &Group, names: &[String]) -> CliResult<SpaceSpec> {
    let spaces = names.iter().map(|n| Space::parse(n).map_err(err)).collect::<CliResult<Vec<_>>>()?;
    Ok(SpaceSpec::new(spaces, g, require(cli.weight, "weight")?, cli.depth))
}

/// Lie-word basis together with its printed form.
fn word_basis(cli: &Cli, g: &Group, sp: &Special) -> CliResult<Option<Vec<String>>> {
    let w = require(cli.weight, "weight")?;
    let b = match sp {
        Special::Krv => krv_basis(g, w),
        Special::Lkrv { distribution } => lkrv_basis(g, w, require(cli.depth, "depth")?, *distribution),
        Special::Dihedral { .. } => return Ok(None),
    };
    Ok(Some(b.iter().map(|f| print_lie(f).map_err(err)).collect::<CliResult<Vec<_>>>()?))
}

fn dim(cli: &Cli, g: &Group) -> CliResult<Outcome> {
    let names = space_names(cli)?;
    let (value, d) = match names.as_slice() {
        [one] if special(one).is_some() => {
            let sp = special(one).expect("checked");
            let d = match &sp {
                Special::Dihedral { distribution } => {
                    let (w, m) = (require(cli.weight, "weight")?, require(cli.depth, "depth")?);
                    dihedral_space_basis(g, w, m, *distribution).map_err(err)?.len()
                }
                _ => word_basis(cli, g, &sp)?.expect("word space").len(),
            };
            let v = json!({
                "spec": { "space": one, "group": GroupJson::from(g), "weight": cli.weight, "depth": cli.depth },
                "dimension": d,
            });
            (v, d)
        }
        _ => {
            let spec = mould_spec(cli, g, &names)?;
            let d = spec.dimension().map_err(err)?;
            let v = json!({
                "spec": mould::json::spec_value(&spec),
                "dimension": d,
                "ambient_dimension": spec.ambient_dimension(),
            });
            (v, d)
        }
    };
    let text = match cli.format.unwrap_or(Format::Table) {
        Format::Json => pretty(&value),
        Format::Table => d.to_string(),
    };
    emit(cli, &text)?;
    Ok(Outcome::Pass)
}

fn basis(cli: &Cli, g: &Group) -> CliResult<Outcome> {
    let names = space_names(cli)?;
    let value = match names.as_slice() {
        [one] if special(one).is_some() => match special(one).expect("checked") {
            Special::Dihedral { distribution } => {
                let (w, m) = (require(cli.weight, "weight")?, require(cli.depth, "depth")?);
                let b = dihedral_space_basis(g, w, m, distribution).map_err(err)?;
                let amb = mould::dihedral::ambient(g, w, m).map_err(err)?.len();
                dihedral_basis_value(g, w, m, distribution, amb, &b)
            }
            sp => {
                let b = word_basis(cli, g, &sp)?.expect("word space");
                json!({
                    "spec": { "space": one, "group": GroupJson::from(g), "weight": cli.weight, "depth": cli.depth },
                    "dimension": b.len(),
                    "basis": b,
                })
            }
        },
        _ => {
            let spec = mould_spec(cli, g, &names)?;
            let b = spec.basis().map_err(err)?;
            mould::json::basis_value(&spec, &b)
        }
    };
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&value),
        Format::Table => {
            let mut s = format!("dimension {}", value["dimension"]);
            if let Some(items) = value["basis"].as_array() {
                for (i, item) in items.iter().enumerate() {
                    s.push_str(&format!("\n[{i}] {}", item.as_str().map(String::from).unwrap_or_else(|| item.to_string())));
                }
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(Outcome::Pass)
}

fn ma_cmd(cli: &Cli, g: &Group, expr: &str, inverse: bool) -> CliResult<Outcome> {
    if !inverse {
        let h = parse_lie(g, expr).map_err(err)?;
        return emit_mould(cli, &ma(&h));
    }
    let m = read_mould(Path::new(expr))?;
    let w = match cli.weight {
        Some(w) => w,
        None => match m.weights().as_slice() {
            [w] => *w,
            _ => return Err("mould is not weight-homogeneous; pass --weight".into()),
        },
    };
    match ma_preimage(&m, w).map_err(err)? {
        Some(h) => {
            let s = print_lie(&h).map_err(err)?;
            let text = match cli.format.unwrap_or(Format::Table) {
                Format::Json => pretty(&json!({ "weight": w, "lie": s })),
                Format::Table => s,
            };
            emit(cli, &text)?;
            Ok(Outcome::Pass)
        }
        None => {
            emit(cli, &pretty(&json!({ "weight": w, "lie": null, "reason": "not in the image of ma" })))?;
            Ok(Outcome::Fail)
        }
    }
}

fn dihedral(cli: &Cli, g: &Group, distribution: bool) -> CliResult<Outcome> {
    let (w, m) = (require(cli.weight, "weight")?, require(cli.depth, "depth")?);
    let b = dihedral_space_basis(g, w, m, distribution).map_err(err)?;
    let amb = mould::dihedral::ambient(g, w, m).map_err(err)?.len();
    let text = match cli.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&dihedral_basis_value(g, w, m, distribution, amb, &b)),
        Format::Table => {
            let mut s = format!("dimension {} (ambient {amb})", b.len());
            for (i, z) in b.iter().enumerate() {
                s.push_str(&format!("\n[{i}] {z:?}"));
            }
            s
        }
    };
    emit(cli, &text)?;
    Ok(Outcome::Pass)
}
