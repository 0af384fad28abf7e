mod input;
mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use iomdin_core::frontend::save_scenario;
use iomdin_core::local::{self, Host};
use iomdin_core::strat::{self, SliceKind, Space, Status};
use iomdin_core::{fixtures, iomdin, le, polar, report, Error, Result};

use input::{InputArgs, Resolved};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "iomdin", version, about = "Exact invariants of polynomial germs and Lê-Iomdin identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Milnor number of g at the origin.
    Milnor(InputArgs),
    /// Dimension and branches of the critical locus of g.
    CriticalLocus(InputArgs),
    /// Relative polar curve of (f, g).
    Polar(InputArgs),
    /// Gap ratios of the polar curve and the resulting threshold for N.
    Gap(InputArgs),
    /// Lê numbers and the Euler characteristic of the Milnor fibre.
    Le(InputArgs),
    /// Lê-Iomdin identities over a range of N, plus stratified identities for datasets.
    Verify(VerifyArgs),
    /// Brasselet numbers and Euler obstructions of a stratified dataset.
    Brasselet(BrasseletArgs),
    /// Generated stratified dataset of X = C^n at a single N, as a scenario document.
    ExportDataset(InputArgs),
    /// List, print or check the bundled fixtures.
    Fixtures(FixturesArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Worker threads for the N sweep; 0 picks the number of cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args)]
struct BrasseletArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Restrict to one slice, such as `g-fibre` or `l-fibre-of-X^g`.
    #[arg(long)]
    slice: Option<String>,
}

#[derive(Args)]
struct FixturesArgs {
    /// Fixture to print; all names are listed when omitted.
    name: Option<String>,
    /// Recompute the expected values instead of printing.
    #[arg(long)]
    check: bool,
}

/// Result of one command: the report and whether all asserted checks passed.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

fn header(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m
}

fn with_header(command: &str, body: Value) -> Value {
    let mut m = header(command);
    if let Value::Object(rest) = body {
        m.extend(rest);
    }
    Value::Object(m)
}

fn milnor(r: &Resolved) -> Result<Outcome> {
    let g = r.scenario.g()?;
    let mu = local::milnor_number(g, &r.scenario.limits)?;
    Ok(Outcome {
        json: with_header("milnor", json!({"input": r.echo(), "milnor": mu})),
        text: format!("g = {g}\nμ = {mu}\n"),
        ok: true,
    })
}

fn critical_locus(r: &Resolved) -> Result<Outcome> {
    let s = &r.scenario;
    let g = s.g()?;
    let f = r.given_f();
    let cl = local::critical_locus(g, f, &s.limits)?;
    let branches = match cl.dim {
        iomdin_core::algebra::LocalDim::Dim(1) => match le::sigma_branches(g, &s.branch_params(Host::Sigma), &s.limits) {
            Ok((b, note)) => json!({"branches": render::branches_json(&b), "note": note}),
            Err(e) => json!({"branches": [], "note": e.to_string()}),
        },
        _ => json!({"branches": [], "note": "no one-dimensional critical locus"}),
    };
    let gens: Vec<String> = cl.ideal.gens().iter().map(ToString::to_string).collect();
    let json = with_header(
        "critical-locus",
        json!({
            "input": r.echo(),
            "jacobian": gens,
            "dim": cl.dim,
            "meets_f_only_at_origin": cl.meets_f_only_at_origin,
            "branches": branches["branches"],
            "note": branches["note"],
        }),
    );
    let text = render::critical_locus(&json);
    Ok(Outcome { json, text, ok: true })
}

fn polar_cmd(r: &Resolved) -> Result<Outcome> {
    let s = &r.scenario;
    let g = s.g()?;
    let f = r.f_or_generic()?;
    let curve = polar::with_components(polar::relative_polar_ideal(&f, g, &s.limits)?, s.branch_params(Host::Polar))?;
    let gens: Vec<String> = curve.ideal.gens().iter().map(ToString::to_string).collect();
    let json = with_header(
        "polar",
        json!({
            "input": r.echo(),
            "f": f.to_string(),
            "ideal": gens,
            "dim": curve.dim,
            "empty": curve.is_empty(),
            "components": render::branches_json(&curve.components),
        }),
    );
    let text = render::polar(&json);
    Ok(Outcome { json, text, ok: true })
}

fn gap(r: &Resolved) -> Result<Outcome> {
    let s = &r.scenario;
    let g = s.g()?;
    let f = r.f_or_generic()?;
    let (threshold, report) = polar::iomdin_threshold(&f, g, &s.branch_params(Host::Polar), &s.limits)?;
    let json = with_header(
        "gap",
        json!({"input": r.echo(), "f": f.to_string(), "threshold": threshold, "gap": report}),
    );
    let text = render::gap(&json);
    Ok(Outcome { json, text, ok: true })
}

fn le_cmd(r: &Resolved) -> Result<Outcome> {
    let s = &r.scenario;
    let g = s.g()?;
    let l = r.given_f().filter(|f| f.linear_coefficients().is_some());
    let data = le::le_numbers(g, l, &s.branch_params(Host::Sigma), &s.limits)?;
    let chi = le::euler_char_fibre(s.ring.nvars(), &data);
    let json = with_header("le", json!({"input": r.echo(), "le": data, "chi_fibre": chi}));
    let text = render::le(&json);
    Ok(Outcome { json, text, ok: true })
}

fn verify(r: &Resolved, jobs: usize) -> Result<Outcome> {
    let s = &r.scenario;
    let mut body = json!({"input": r.echo()});
    let mut text = String::new();
    let mut ok = true;
    if s.g.is_some() {
        let table = iomdin::verify_sweep(s, s.n_range, jobs)?;
        ok &= table.pass;
        text.push_str(&render::sweep(&table));
        body["sweep"] = serde_json::to_value(&table).expect("sweep serializes");
    }
    if let Some(ds) = &s.dataset {
        let n = ds.n.or((s.n_range.0 == s.n_range.1).then_some(s.n_range.0));
        let verdicts = strat::verify_stratified_identities(ds, s.dim, n, &strat::branch_tables(s));
        ok &= verdicts.iter().all(|v| v.status != Status::Fail);
        text.push_str(&render::verdicts(&verdicts));
        body["stratified"] = serde_json::to_value(&verdicts).expect("verdicts serialize");
    }
    if s.g.is_none() && s.dataset.is_none() {
        return Err(Error::Unsupported("scenario has neither g nor a stratified dataset".into()));
    }
    body["pass"] = json!(ok);
    text.push_str(if ok { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { json: with_header("verify", body), text, ok })
}

fn brasselet(r: &Resolved, slice: Option<&str>) -> Result<Outcome> {
    let s = &r.scenario;
    let ds = s.dataset.as_ref().ok_or_else(|| Error::MissingSlice("scenario has no stratified dataset".into()))?;
    let kinds: Vec<SliceKind> = match slice {
        Some(k) => vec![k.parse()?],
        None => Space::ALL
            .iter()
            .filter(|sp| ds.has_space(**sp))
            .flat_map(|&space| {
                let funcs: std::collections::BTreeSet<_> =
                    ds.records_in(space).flat_map(|rec| rec.chi.keys().copied()).collect();
                funcs.into_iter().map(move |func| SliceKind { func, space })
            })
            .collect(),
    };
    let mut numbers = Vec::new();
    for k in kinds {
        let b = strat::brasselet_number(ds, k);
        if slice.is_some() {
            b.clone()?;
        }
        if let Ok(b) = b {
            let eu_fn = strat::euler_obstruction_of_function(ds, k).ok();
            numbers.push(json!({"slice": k.to_string(), "brasselet": b, "euler_obstruction_of_function": eu_fn}));
        }
    }
    let mut eu = serde_json::Map::new();
    for space in Space::ALL {
        if ds.has_space(space) || ds.euler_obstruction.contains_key(&space) {
            if let Ok(v) = strat::euler_obstruction(ds, space) {
                eu.insert(space.to_string(), json!(v));
            }
        }
    }
    let json = with_header("brasselet", json!({"input": r.echo(), "numbers": numbers, "euler_obstruction": eu}));
    let text = render::brasselet(&json);
    Ok(Outcome { json, text, ok: true })
}

fn export(r: &Resolved) -> Result<Outcome> {
    let s = &r.scenario;
    let (lo, hi) = s.n_range;
    if lo != hi {
        return Err(Error::NOutOfRange(format!("export-dataset needs a single N, got {lo}..{hi}")));
    }
    let out = strat::export_dataset(s, lo)?;
    let doc = save_scenario(&out);
    let json: Value = serde_json::from_str(&doc).expect("saved scenario is JSON");
    Ok(Outcome { json, text: doc, ok: true })
}

fn fixtures_cmd(args: &FixturesArgs) -> Result<Outcome> {
    let names: Vec<String> = match &args.name {
        Some(n) => vec![n.clone()],
        None => fixtures::list_fixtures().into_iter().map(String::from).collect(),
    };
    if args.check {
        let mut rows = Vec::new();
        let mut text = String::new();
        let mut ok = true;
        for name in &names {
            let s = fixtures::load_fixture(name)?;
            let rep = report::invariant_report(&s)?;
            let diff = s.expected.as_ref().map(|e| fixtures::mismatches(e, &rep)).unwrap_or_default();
            ok &= diff.is_empty();
            text.push_str(&format!("{} {name}\n", if diff.is_empty() { "PASS" } else { "FAIL" }));
            for d in &diff {
                text.push_str(&format!("  {d}\n"));
            }
            rows.push(json!({"name": name, "pass": diff.is_empty(), "mismatches": diff, "report": rep}));
        }
        return Ok(Outcome { json: with_header("fixtures", json!({"check": rows, "pass": ok})), text, ok });
    }
    match &args.name {
        Some(name) => {
            let s = fixtures::load_fixture(name)?;
            let doc = match fixtures::fixture_source(name) {
                Some(src) => src.to_string(),
                None => save_scenario(&s),
            };
            let json: Value = serde_json::from_str(&doc).expect("fixture is JSON");
            Ok(Outcome { json, text: doc, ok: true })
        }
        None => {
            let list = fixtures::list_fixtures();
            let text = list.iter().map(|n| format!("{n}\n")).collect();
            Ok(Outcome { json: with_header("fixtures", json!({"fixtures": list})), text, ok: true })
        }
    }
}

fn error_json(command: &str, e: &Error) -> Value {
    with_header(command, json!({"error": e.to_string()}))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, result) = match &cli.command {
        Command::Fixtures(a) => ("fixtures", fixtures_cmd(a)),
        cmd => {
            let (name, input) = match cmd {
                Command::Milnor(i) => ("milnor", i),
                Command::CriticalLocus(i) => ("critical-locus", i),
                Command::Polar(i) => ("polar", i),
                Command::Gap(i) => ("gap", i),
                Command::Le(i) => ("le", i),
                Command::Verify(v) => ("verify", &v.input),
                Command::Brasselet(b) => ("brasselet", &b.input),
                Command::ExportDataset(i) => ("export-dataset", i),
                Command::Fixtures(_) => unreachable!(),
            };
            let resolved = match input.resolve() {
                Ok(r) => r,
                Err(input::InputError::Usage(msg)) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(2);
                }
                Err(input::InputError::Core(e)) => {
                    report_error(cli.format, name, &e);
                    return ExitCode::from(1);
                }
            };
            let out = match cmd {
                Command::Milnor(_) => milnor(&resolved),
                Command::CriticalLocus(_) => critical_locus(&resolved),
                Command::Polar(_) => polar_cmd(&resolved),
                Command::Gap(_) => gap(&resolved),
                Command::Le(_) => le_cmd(&resolved),
                Command::Verify(v) => verify(&resolved, v.jobs),
                Command::Brasselet(b) => brasselet(&resolved, b.slice.as_deref()),
                Command::ExportDataset(_) => export(&resolved),
                Command::Fixtures(_) => unreachable!(),
            };
            (name, out)
        }
    };
    match result {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("report serializes")),
                Format::Text => print!("{}", out.text),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            report_error(cli.format, name, &e);
            ExitCode::from(1)
        }
    }
}

fn report_error(format: Format, command: &str, e: &Error) {
    if format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&error_json(command, e)).expect("error serializes"));
    }
    eprintln!("error: {e}");
}
