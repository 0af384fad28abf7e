//! Turns a scenario file, a fixture name or inline flags into a scenario.

use std::path::PathBuf;

use clap::Args;
use serde_json::{json, Value};

use iomdin_core::algebra::{Poly, Ring};
use iomdin_core::frontend::scenario::{parse_n_range, BranchEntry, GENERIC_LINEAR};
use iomdin_core::frontend::{load_scenario_file, parse_poly, FSpec, Scenario};
use iomdin_core::local::{Host, Truncation};
use iomdin_core::{fixtures, le, Error, Limits, Result};

#[derive(Args, Clone, Debug)]
pub struct InputArgs {
    /// Scenario JSON file.
    pub scenario: Option<PathBuf>,
    /// Bundled fixture instead of a file.
    #[arg(long, conflicts_with = "scenario")]
    pub fixture: Option<String>,
    /// Comma-separated variable names, e.g. `x,y,z`.
    #[arg(long)]
    pub vars: Option<String>,
    /// The germ g.
    #[arg(long)]
    pub g: Option<String>,
    /// The function f, or `GENERIC-LINEAR`. For `le` this is the linear form l.
    #[arg(long, visible_alias = "l")]
    pub f: Option<String>,
    /// Branch of the critical locus as `name:c1,...,cn` in the parameter t.
    #[arg(long = "branch")]
    pub branches: Vec<String>,
    /// A single N or a range `a..b` [default: 2..8].
    #[arg(long = "N")]
    pub n: Option<String>,
    /// Series truncation order of the branches, or `auto` for exact parametrizations.
    #[arg(long)]
    pub trunc: Option<String>,
    /// Iteration caps as `key=value,...` with keys max_steps, tau_ladder, trunc_cap, generic_ladder.
    #[arg(long)]
    pub caps: Option<String>,
}

pub enum InputError {
    Usage(String),
    Core(Error),
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError::Core(e)
    }
}

pub struct Resolved {
    pub scenario: Scenario,
    source: Value,
}

impl Resolved {
    /// The resolved input with every default filled in.
    pub fn echo(&self) -> Value {
        let s = &self.scenario;
        let f = match &s.f {
            FSpec::Given(p) => p.to_string(),
            FSpec::GenericLinear => GENERIC_LINEAR.to_string(),
        };
        json!({
            "source": self.source,
            "variables": s.ring.names(),
            "g": s.g.as_ref().map(ToString::to_string),
            "f": f,
            "N": [s.n_range.0, s.n_range.1],
            "branches": s.branches.iter().map(|b| json!({
                "name": b.name,
                "host": b.host,
                "trunc": match b.truncation { Truncation::Exact => json!("auto"), Truncation::Order(k) => json!(k) },
            })).collect::<Vec<_>>(),
            "limits": s.limits,
        })
    }

    pub fn given_f(&self) -> Option<&Poly> {
        match &self.scenario.f {
            FSpec::Given(p) => Some(p),
            FSpec::GenericLinear => None,
        }
    }

    pub fn f_or_generic(&self) -> Result<Poly> {
        Ok(match &self.scenario.f {
            FSpec::Given(p) => p.clone(),
            FSpec::GenericLinear => le::generic_linear(&self.scenario.ring, 0),
        })
    }
}

fn parse_trunc(text: &str) -> std::result::Result<Truncation, InputError> {
    match text {
        "auto" => Ok(Truncation::Exact),
        k => match k.parse::<u32>() {
            Ok(k) if k > 0 => Ok(Truncation::Order(k)),
            _ => Err(InputError::Usage(format!("--trunc expects `auto` or a positive integer, got '{k}'"))),
        },
    }
}

fn apply_caps(limits: &mut Limits, text: &str) -> std::result::Result<(), InputError> {
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| InputError::Usage(format!("--caps entry '{item}' is not key=value")))?;
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| InputError::Usage(format!("--caps value '{value}' is not a non-negative integer")))?;
        let small = || u32::try_from(value).map_err(|_| InputError::Usage(format!("--caps {key} is too large")));
        match key.trim() {
            "max_steps" => limits.max_steps = value,
            "tau_ladder" => limits.tau_ladder = small()?,
            "trunc_cap" => limits.trunc_cap = small()?,
            "generic_ladder" => limits.generic_ladder = small()?,
            other => return Err(InputError::Usage(format!("unknown cap '{other}'"))),
        }
    }
    Ok(())
}

fn inline_branch(spec: &str, nvars: usize, truncation: Truncation) -> std::result::Result<BranchEntry, InputError> {
    let (name, comps) = spec
        .split_once(':')
        .ok_or_else(|| InputError::Usage(format!("--branch '{spec}' is not name:c1,...,cn")))?;
    let series = Ring::series();
    let components = comps.split(',').map(|c| parse_poly(c, &series)).collect::<Result<Vec<_>>>()?;
    if components.len() != nvars {
        return Err(InputError::Usage(format!("--branch '{name}' has {} components, expected {nvars}", components.len())));
    }
    Ok(BranchEntry {
        name: name.trim().to_string(),
        components: Some(components),
        truncation,
        host: Host::Sigma,
        multiplicity: 1,
        table: None,
    })
}

impl InputArgs {
    fn has_inline(&self) -> bool {
        self.vars.is_some() || self.g.is_some() || self.f.is_some() || !self.branches.is_empty()
    }

    pub fn resolve(&self) -> std::result::Result<Resolved, InputError> {
        let trunc = self.trunc.as_deref().map(parse_trunc).transpose()?;
        let (mut scenario, source) = match (&self.scenario, &self.fixture) {
            (Some(_), _) | (_, Some(_)) if self.has_inline() => {
                return Err(InputError::Usage(
                    "a scenario file or fixture cannot be combined with --vars, --g, --f or --branch".into(),
                ))
            }
            (Some(path), _) => (load_scenario_file(path)?, json!({"file": path.display().to_string()})),
            (None, Some(name)) => (fixtures::load_fixture(name)?, json!({"fixture": name})),
            (None, None) => {
                let vars = self.vars.as_deref().ok_or_else(|| InputError::Usage("--vars is required".into()))?;
                let g = self.g.as_deref().ok_or_else(|| InputError::Usage("--g is required".into()))?;
                let names: Vec<&str> = vars.split(',').map(str::trim).collect();
                let ring = Ring::new(&names)?;
                let g = parse_poly(g, &ring)?;
                let f = match self.f.as_deref() {
                    None => FSpec::GenericLinear,
                    Some(s) if s.trim() == GENERIC_LINEAR => FSpec::GenericLinear,
                    Some(s) => FSpec::Given(parse_poly(s, &ring)?),
                };
                let mut s = Scenario::new("inline", ring, g, f);
                let t = trunc.unwrap_or(Truncation::Exact);
                for b in &self.branches {
                    s.branches.push(inline_branch(b, s.ring.nvars(), t)?);
                }
                (s, json!("inline"))
            }
        };
        if let Some(t) = trunc {
            for b in &mut scenario.branches {
                b.truncation = t;
            }
        }
        if let Some(n) = &self.n {
            scenario.n_range = parse_n_range(n)?;
        }
        if let Some(caps) = &self.caps {
            apply_caps(&mut scenario.limits, caps)?;
        }
        Ok(Resolved { scenario, source })
    }
}
