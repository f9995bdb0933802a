mod args;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use args::{Cli, Command, Conjecture, Format, Method};
use skolem::conditions::{
    classify_classical, conditions, conjecture2_predicate, is_extremal_candidate,
    necessary_conditions_perfect,
};
use skolem::constructions::{
    compose, extremal_from_k_extended, extremal_from_near_skolem, extremal_from_skolem,
    near_langford_extremal, ComposeVariant, Construction,
};
use skolem::displacement::{
    count_realizations, displacement_necessary, pattern_of, realize_pattern, DisplacementPattern,
};
use skolem::enumeration::{
    count_family, mod4_check, verify_conjecture2, verify_extremal, verify_two_missing, Ceilings,
    CountOptions, CountReport, Family,
};
use skolem::solver::is_perfect_extremal;
use skolem::{render, validate, DiffMultiset, Error, Pairing, PositionSet, SequenceText, Solver};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(
                Error::ResourceLimit { .. } | Error::Capacity { .. } | Error::Cancelled,
            ) => 2,
            CliError::Core(Error::Invariant(_)) => 3,
            CliError::Core(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn required<T>(value: Option<T>, flag: &str, method: &str) -> CliResult<T> {
    value.ok_or_else(|| usage(format!("--{flag} is required for {method}")))
}

/// What a command prints: human text and its JSON counterpart.
struct Output {
    text: String,
    json: Value,
    default: Format,
}

impl Output {
    fn print(&self, format: Option<Format>) {
        match format.unwrap_or(self.default) {
            Format::Text => println!("{}", self.text),
            Format::Json => println!("{}", self.json),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            out.print(cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn options(jobs: usize) -> CliResult<CountOptions> {
    Ok(CountOptions {
        jobs,
        ceilings: Ceilings::from_env()?,
        cancel: None,
    })
}

fn diffs_from_args(args: &[String]) -> CliResult<DiffMultiset> {
    Ok(args.join(" ").parse()?)
}

fn parse_witness(s: &str) -> CliResult<Pairing> {
    if s.trim_start().starts_with('{') {
        serde_json::from_str(s).map_err(|e| usage(format!("bad pairing JSON: {e}")))
    } else {
        Ok(s.parse::<SequenceText>()?.to_pairing()?)
    }
}

fn pairing_json(w: &Pairing) -> CliResult<Value> {
    Ok(json!({ "pairs": w.pairs(), "sequence": render(w)?.to_string() }))
}

/// A found pairing, or `none`.
fn witness_output(w: Option<&Pairing>) -> CliResult<Output> {
    Ok(match w {
        Some(w) => Output {
            text: render(w)?.to_string(),
            json: json!({ "found": true, "pairing": pairing_json(w)? }),
            default: Format::Text,
        },
        None => Output {
            text: "none".into(),
            json: json!({ "found": false, "pairing": null }),
            default: Format::Text,
        },
    })
}

fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Check { diffs, positions } => {
            check(&diffs_from_args(diffs)?, positions.as_deref())
        }
        Command::Decide {
            positions,
            diffs,
            all,
            limit,
        } => {
            let p: PositionSet = positions.parse()?;
            let a: DiffMultiset = diffs.parse()?;
            let solver = Solver::new(&p, &a)?;
            if *all {
                list_solutions(&solver, *limit)
            } else {
                witness_output(solver.decide().as_ref())
            }
        }
        Command::Perfect { diffs } => {
            let a = diffs_from_args(diffs)?;
            witness_output(Solver::perfect(&a)?.decide().as_ref())
        }
        Command::Extremal { diffs } => {
            let a = diffs_from_args(diffs)?;
            witness_output(is_perfect_extremal(&a)?.as_ref())
        }
        Command::Count { family, order } => {
            let family: Family = family.parse()?;
            let r = count_family(family, *order, &options(cli.jobs)?)?;
            Ok(Output {
                text: format!("{} n={}: {}", r.family, r.order, r.count),
                json: serde_json::to_value(&r).expect("serializable"),
                default: Format::Json,
            })
        }
        Command::Tables { family, max } => tables(family.parse()?, *max, &options(cli.jobs)?),
        Command::Verify { conjecture, max } => verify(*conjecture, *max, &options(cli.jobs)?),
        Command::Construct { method, .. } => construct(*method, &cli.command),
        Command::Displacement { pattern, count } => displacement(&pattern.parse()?, *count),
        Command::Validate {
            witness,
            positions,
            diffs,
        } => {
            let w = parse_witness(witness)?;
            let p = match positions {
                Some(p) => p.parse()?,
                None => w.positions()?,
            };
            let a = match diffs {
                Some(a) => a.parse()?,
                None => w.diffs(),
            };
            let ok = validate(&w, &p, &a);
            Ok(Output {
                text: if ok { "valid" } else { "invalid" }.into(),
                json: json!({ "valid": ok, "positions": p.as_slice(), "diffs": a.as_slice() }),
                default: Format::Text,
            })
        }
    }
}

fn check(a: &DiffMultiset, positions: Option<&str>) -> CliResult<Output> {
    let (report, p) = match positions {
        Some(p) => {
            let p: PositionSet = p.parse()?;
            (conditions(&p, a)?, p)
        }
        None => (
            necessary_conditions_perfect(a),
            PositionSet::contiguous(2 * a.len() as u32),
        ),
    };
    let extremal = report.extremal || (positions.is_none() && is_extremal_candidate(a));
    let classical = positions.is_none().then(|| classify_classical(a)).flatten();
    let predicate = if positions.is_none() && a.is_set() {
        Some(conjecture2_predicate(a)?)
    } else {
        None
    };
    let mut text = vec![
        format!("diffs      {a}"),
        format!("positions  {p}"),
        format!("parity     {}", ok(report.parity_ok)),
        match report.first_density_failure {
            None => format!("density    {}", ok(true)),
            Some(m) => format!("density    fails at m = {m}"),
        },
        format!("extremal   {extremal}"),
    ];
    if let Some(v) = classical {
        text.push(format!(
            "classical  {}",
            if v.solvable { "solvable" } else { "unsolvable" }
        ));
    }
    if let Some(pred) = predicate {
        text.push(format!(
            "predicted  {}",
            if pred { "perfect" } else { "not perfect" }
        ));
    }
    Ok(Output {
        text: text.join("\n"),
        json: json!({
            "diffs": a.as_slice(),
            "positions": p.as_slice(),
            "parity_ok": report.parity_ok,
            "density_ok": report.density_ok,
            "first_density_failure": report.first_density_failure,
            "extremal": extremal,
            "passes": report.passes(),
            "classical": classical,
            "predicted_perfect": predicate,
        }),
        default: Format::Json,
    })
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "fails"
    }
}

fn list_solutions(solver: &Solver, limit: Option<usize>) -> CliResult<Output> {
    let found: Vec<Pairing> = solver
        .solutions()
        .take(limit.unwrap_or(usize::MAX))
        .collect();
    let rendered = found
        .iter()
        .map(|w| render(w).map(|s| s.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let json = found
        .iter()
        .map(pairing_json)
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Output {
        text: if rendered.is_empty() {
            "none".into()
        } else {
            rendered.join("\n")
        },
        json: json!({ "count": found.len(), "pairings": json }),
        default: Format::Text,
    })
}

fn tables(family: Family, max: usize, opts: &CountOptions) -> CliResult<Output> {
    let rows: Vec<CountReport> = (1..=max)
        .map(|n| count_family(family, n, opts))
        .collect::<Result<_, _>>()?;
    let width = rows
        .iter()
        .map(|r| r.count.to_string().len())
        .max()
        .unwrap_or(1)
        .max(5);
    let mut text = format!("{family}\n{:>3}  {:>width$}", "n", "count");
    for r in &rows {
        text += &format!("\n{:>3}  {:>width$}", r.order, r.count.to_string());
    }
    Ok(Output {
        text,
        json: serde_json::to_value(&rows).expect("serializable"),
        default: Format::Text,
    })
}

fn verify(conjecture: Conjecture, max: usize, opts: &CountOptions) -> CliResult<Output> {
    let (json, summary) = match conjecture {
        Conjecture::Sets => {
            let r = verify_conjecture2(max, opts)?;
            let per = r
                .accepted_per_order
                .iter()
                .map(|(n, c)| format!("{n}:{c}"))
                .collect::<Vec<_>>();
            let s = format!(
                "{} sets checked, {} mismatches; perfect sets per order {}",
                r.checked,
                r.mismatches.len(),
                per.join(" ")
            );
            (serde_json::to_value(&r), s)
        }
        Conjecture::TwoMissing => {
            let r = verify_two_missing(max, opts)?;
            let ex = r
                .parity_ok_unsolvable
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>();
            let s = format!(
                "{} sets checked, {} mismatches; exceptions {}",
                r.checked,
                r.mismatches.len(),
                ex.join(" ")
            );
            (serde_json::to_value(&r), s)
        }
        Conjecture::Extremal => {
            let r = verify_extremal(max, opts)?;
            let s = format!(
                "{} extremal candidates checked, {} mismatches",
                r.checked,
                r.mismatches.len()
            );
            (serde_json::to_value(&r), s)
        }
        Conjecture::Mod4 => {
            let orders: Vec<usize> = (1..=max).collect();
            let r = mod4_check(&orders, opts)?;
            let off = r.iter().filter(|x| x.residue != 1).count();
            let rows = r
                .iter()
                .map(|x| format!("{}:{}", x.order, x.residue))
                .collect::<Vec<_>>();
            let s = format!(
                "residues mod 4 {}; {off} orders not congruent to 1",
                rows.join(" ")
            );
            (serde_json::to_value(&r), s)
        }
    };
    Ok(Output {
        text: summary,
        json: json.expect("serializable"),
        default: Format::Json,
    })
}

fn base_witness(
    a: &DiffMultiset,
    positions: &PositionSet,
    witness: Option<&str>,
) -> CliResult<Option<Pairing>> {
    match witness {
        Some(w) => parse_witness(w).map(Some),
        None => Ok(Solver::new(positions, a)?.decide()),
    }
}

fn extremal_of(set: Option<&String>, flag: &str, method: &str) -> CliResult<Option<Construction>> {
    let a: DiffMultiset = required(set, flag, method)?.parse()?;
    Ok(match is_perfect_extremal(&a)? {
        Some(w) => Some(Construction::extremal(a, w)?),
        None => None,
    })
}

fn construct(method: Method, cmd: &Command) -> CliResult<Output> {
    let Command::Construct {
        diffs,
        hook,
        witness,
        left,
        right,
        defect,
        order,
        missing,
        ..
    } = cmd
    else {
        unreachable!("construct called with another command")
    };
    let name = method
        .to_possible_value()
        .map_or_else(String::new, |v| v.get_name().to_owned());
    let built: Option<Construction> = match method {
        Method::FromSkolem => {
            let a: DiffMultiset = required(diffs.as_ref(), "diffs", &name)?.parse()?;
            let p = PositionSet::contiguous(2 * a.len() as u32);
            base_witness(&a, &p, witness.as_deref())?
                .map(|w| extremal_from_skolem(&a, &w))
                .transpose()?
        }
        Method::FromKExtended => {
            let a: DiffMultiset = required(diffs.as_ref(), "diffs", &name)?.parse()?;
            let k = required(*hook, "hook", &name)?;
            let p = PositionSet::with_hook(2 * a.len() as u32 + 1, k);
            base_witness(&a, &p, witness.as_deref())?
                .map(|w| extremal_from_k_extended(&a, k, &w))
                .transpose()?
        }
        Method::ComposeC | Method::ComposeD | Method::ComposeE => {
            let variant = match method {
                Method::ComposeC => ComposeVariant::C,
                Method::ComposeD => ComposeVariant::D,
                _ => ComposeVariant::E,
            };
            let l = extremal_of(left.as_ref(), "left", &name)?;
            let r = extremal_of(right.as_ref(), "right", &name)?;
            match (l, r) {
                (Some(l), Some(r)) => Some(compose(&l, &r, variant)?),
                _ => None,
            }
        }
        Method::NearLangford => Some(near_langford_extremal(required(*defect, "defect", &name)?)?),
        Method::NearSkolem => Some(extremal_from_near_skolem(
            required(*order, "order", &name)?,
            required(*missing, "missing", &name)?,
        )?),
    };
    let Some(c) = built else {
        return witness_output(None);
    };
    if !c.is_valid_extremal() {
        return Err(Error::Invariant(format!("{name} output failed validation")).into());
    }
    let seq = render(&c.pairing)?;
    Ok(Output {
        text: format!("{}\n{seq}", c.diffs),
        json: json!({ "found": true, "diffs": c.diffs.as_slice(), "pairing": pairing_json(&c.pairing)? }),
        default: Format::Text,
    })
}

fn displacement(alpha: &DisplacementPattern, count: bool) -> CliResult<Output> {
    let necessary = displacement_necessary(alpha);
    if count {
        let opts = options(1)?;
        opts.ceilings
            .check("displacement", alpha.len(), opts.ceilings.displacement)?;
        let c = count_realizations(alpha)?;
        return Ok(Output {
            text: c.to_string(),
            json: json!({ "pattern": alpha.to_string(), "necessary": necessary, "count": c.to_string() }),
            default: Format::Text,
        });
    }
    Ok(match realize_pattern(alpha)? {
        Some(p) => {
            debug_assert_eq!(&pattern_of(&p), alpha);
            let one_line = p
                .as_slice()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            Output {
                text: one_line,
                json: json!({
                    "pattern": alpha.to_string(),
                    "necessary": necessary,
                    "permutation": p.as_slice(),
                    "cycles": p.to_string(),
                }),
                default: Format::Text,
            }
        }
        None => Output {
            text: "none".into(),
            json: json!({ "pattern": alpha.to_string(), "necessary": necessary, "permutation": null }),
            default: Format::Text,
        },
    })
}
