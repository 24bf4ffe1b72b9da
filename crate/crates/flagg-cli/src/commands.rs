//! The four reporting commands: `tableaux`, `compute`, `compare`, `perm`.

use crate::{CmdResult, ComputeArgs, CompareArgs, Failure, Format, Method, Outcome, PermArgs, Setting, ShapeArgs, TableauxArgs};
use flagg::determinant::grothendieck_determinant_margin;
use flagg::perm::{
    diagram, essential_set, flagged_partition_of, flagging_set, grothendieck_divdiff,
    grothendieck_perm, pattern_2143, Permutation,
};
use flagg::poly::{substitute, Assignment, Polynomial};
use flagg::render::{to_json, to_latex};
use flagg::tableaux::{enumerate_tableaux, grothendieck_tableau, FlaggedPartition};

fn resolve_shape(args: &ShapeArgs) -> Result<FlaggedPartition, Failure> {
    match (&args.shape, &args.flag) {
        (Some(shape), Some(flag)) => {
            if shape.0.is_empty() && flag.0.is_empty() {
                return Ok(FlaggedPartition::empty());
            }
            Ok(FlaggedPartition::new(shape.0.clone(), flag.0.clone())?)
        }
        (None, None) => Err(Failure::invalid("--shape and --flag are required")),
        _ => Err(Failure::invalid("--shape and --flag must be given together")),
    }
}

fn parse_perm(one_line: &str) -> Result<Permutation, Failure> {
    one_line.parse::<Permutation>().map_err(Failure::from)
}

fn render(p: &Polynomial, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Json => to_json(p),
        Format::Latex => to_latex(p),
    }
}

pub fn tableaux(args: &TableauxArgs) -> CmdResult {
    let shape = resolve_shape(&args.shape)?;
    let all: Vec<_> = enumerate_tableaux(&shape).collect();
    match args.format {
        Format::Text => {
            for t in &all {
                println!("{t}");
            }
            println!("total: {}", all.len());
        }
        Format::Json => {
            let listed: Vec<serde_json::Value> = all
                .iter()
                .map(|t| serde_json::json!(t.rows()))
                .collect();
            let doc = serde_json::json!({
                "shape": shape.lambda(),
                "flag": shape.flag(),
                "count": all.len(),
                "tableaux": listed,
            });
            println!("{doc}");
        }
        Format::Latex => {
            return Err(Failure::invalid(
                "--format latex applies to polynomials; use text or json here",
            ))
        }
    }
    Ok(Outcome::Success)
}

/// The defining convention: a zero first flag means the polynomial is 0,
/// whichever method is asked for.
fn compute_by(shape: &FlaggedPartition, method: Method, margin: u32) -> Result<Polynomial, Failure> {
    if shape.is_zero_case() {
        return Ok(Polynomial::zero());
    }
    let p = match method {
        Method::Tableau => grothendieck_tableau(shape)?,
        Method::Determinant => grothendieck_determinant_margin(shape, margin)?,
        Method::Divdiff => grothendieck_divdiff(shape)?,
    };
    Ok(p)
}

fn assignment_of(settings: &[Setting]) -> Assignment {
    let mut a = Assignment::default();
    for s in settings {
        a = match *s {
            Setting::Beta(v) => a.set_beta(v),
            Setting::AllX(v) => a.set_all_x(v),
            Setting::AllB(v) => a.set_all_b(v),
            Setting::X(i, v) => a.set_x(i, v),
            Setting::B(j, v) => a.set_b(j, v),
        };
    }
    a
}

pub fn compute(args: &ComputeArgs) -> CmdResult {
    let shape = match &args.perm {
        Some(one_line) => flagged_partition_of(&parse_perm(one_line)?)?,
        None => resolve_shape(&args.shape)?,
    };
    if args.trunc_margin > 0 && args.method != Method::Determinant {
        return Err(Failure::invalid(
            "--trunc-margin only applies to --method determinant",
        ));
    }
    let mut p = compute_by(&shape, args.method, args.trunc_margin)?;
    if !args.settings.is_empty() {
        p = substitute(&p, &assignment_of(&args.settings));
    }
    println!("{}", render(&p, args.format));
    Ok(Outcome::Success)
}

pub fn compare(args: &CompareArgs) -> CmdResult {
    let shape = resolve_shape(&args.shape)?;
    let tab = compute_by(&shape, Method::Tableau, 0)?;
    let det = compute_by(&shape, Method::Determinant, args.trunc_margin)?;
    let dd = compute_by(&shape, Method::Divdiff, 0)?;
    println!("tableau:     {} terms", tab.num_terms());
    println!("determinant: {} terms", det.num_terms());
    println!("divdiff:     {} terms", dd.num_terms());
    let mut mismatch = false;
    for (name, other) in [("determinant", &det), ("divdiff", &dd)] {
        if &tab == other {
            println!("tableau == {name}");
        } else {
            mismatch = true;
            println!("tableau != {name}");
            if let Some((m, lhs, rhs)) = first_difference(&tab, other) {
                println!("  first difference at {m}: {lhs} vs {rhs}");
            }
        }
    }
    if mismatch {
        Ok(Outcome::Mismatch)
    } else {
        println!("all methods agree");
        Ok(Outcome::Success)
    }
}

/// First monomial (in the canonical order) whose coefficients differ,
/// with both coefficients (0 when absent).
fn first_difference(a: &Polynomial, b: &Polynomial) -> Option<(String, String, String)> {
    let zero = num_bigint::BigInt::from(0);
    let keys = a.terms().keys().chain(b.terms().keys());
    let mut keys: Vec<_> = keys.collect();
    keys.sort();
    keys.dedup();
    for m in keys {
        let ca = a.terms().get(m).unwrap_or(&zero);
        let cb = b.terms().get(m).unwrap_or(&zero);
        if ca != cb {
            return Some((m.to_string(), ca.to_string(), cb.to_string()));
        }
    }
    None
}

fn grid_set_string(cells: &std::collections::BTreeSet<(u32, u32)>) -> String {
    if cells.is_empty() {
        return "none".into();
    }
    cells
        .iter()
        .map(|(p, q)| format!("({p},{q})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn join_u32(vals: &[u32]) -> String {
    vals.iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn perm(args: &PermArgs) -> CmdResult {
    let w = parse_perm(&args.perm)?;
    let pattern = pattern_2143(&w);
    let vex = pattern.is_none();
    let shape = if vex { Some(flagged_partition_of(&w)?) } else { None };
    let pairs = if vex && !w.is_identity() {
        Some(flagging_set(&w)?)
    } else {
        None
    };
    let poly = if args.polynomial {
        Some(grothendieck_perm(&w)?)
    } else {
        None
    };

    match args.format {
        Format::Json => {
            let mut doc = serde_json::json!({
                "permutation": w.one_line(),
                "length": w.length(),
                "code": w.code(),
                "vexillary": vex,
                "diagram": diagram(&w).into_iter().collect::<Vec<_>>(),
                "essential_set": essential_set(&w).into_iter().collect::<Vec<_>>(),
            });
            let obj = doc.as_object_mut().unwrap();
            if let Some(pos) = pattern {
                obj.insert("pattern_2143".into(), serde_json::json!(pos));
            }
            if let Some(shape) = &shape {
                obj.insert("lambda".into(), serde_json::json!(shape.lambda()));
                obj.insert("flag".into(), serde_json::json!(shape.flag()));
            }
            if let Some(fs) = &pairs {
                obj.insert("flagging_set".into(), serde_json::json!(fs.pairs()));
            }
            if let Some(p) = &poly {
                let rendered: serde_json::Value = serde_json::from_str(&to_json(p)).unwrap();
                obj.insert("polynomial".into(), rendered);
            }
            println!("{doc}");
        }
        Format::Text | Format::Latex => {
            println!("permutation: {w}");
            println!("length: {}", w.length());
            println!("code: {}", join_u32(&w.code()));
            match pattern {
                None => println!("vexillary"),
                Some([a, b, c, d]) => {
                    println!("not vexillary (pattern at a,b,c,d={a},{b},{c},{d})")
                }
            }
            println!("diagram: {}", grid_set_string(&diagram(&w)));
            println!("essential set: {}", grid_set_string(&essential_set(&w)));
            if let Some(fs) = &pairs {
                let listed = fs
                    .pairs()
                    .iter()
                    .map(|(p, q)| format!("({p},{q})"))
                    .collect::<Vec<_>>()
                    .join(" ");
                println!("flagging set: {listed}");
            }
            if let Some(shape) = &shape {
                if shape.is_empty() {
                    println!("shape: empty");
                } else {
                    println!("lambda: {}", join_u32(shape.lambda()));
                    println!("flag: {}", join_u32(shape.flag()));
                }
            }
            if let Some(p) = &poly {
                let rendered = if args.format == Format::Latex {
                    to_latex(p)
                } else {
                    p.to_string()
                };
                println!("polynomial: {rendered}");
            }
        }
    }
    Ok(Outcome::Success)
}
