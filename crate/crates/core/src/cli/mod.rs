//! Command-line front end. Each subcommand reads one problem specification
//! (see [`spec`]) and prints one JSON report.
//!
//! Exit codes: 0 success, 2 invalid input, 3 guard exceeded, 4 when
//! `--require-exact` is set and `exact` finds no exact value.

pub mod report;
pub mod spec;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::Value;

use crate::bounds::{theorem1_bounds_with, theorem2_exact_with, BoundsOptions, GroupSpec};
use crate::census::{profile_census_with, CensusOptions};
use crate::codes::{
    brute_force_min_profile_with, minimal_basis_with, weight, HammingWeight, MixedCode,
};
use crate::duality::{annihilator, annihilator_dual};
use crate::equivalence::{are_equivalent_with, canonical_form_with};
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::lift::{lift_basis, sign_lift, verify_sign_lifts_independent};
use report::Object;
use spec::{small, Block, ProblemSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_NOT_EXACT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "mixcode",
    version,
    about = "Codes over mixed prime-power moduli"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Cap on enumerated code elements.
    #[arg(long, global = true, value_name = "N")]
    pub guard_elements: Option<u64>,
    /// Cap on the order of the equivalence group.
    #[arg(long, global = true, value_name = "N")]
    pub guard_orbit: Option<u64>,
    /// Override for the upper bound on ed(GL-product).
    #[arg(long, global = true, value_name = "N")]
    pub ed_bar: Option<BigInt>,
    /// Override for the upper bound on ed_p(GL-product).
    #[arg(long, global = true, value_name = "N")]
    pub ed_bar_p: Option<BigInt>,
    /// Count codes up to equivalence in `census`.
    #[arg(long, global = true)]
    pub up_to_equivalence: bool,
    /// Restrict `census` to codes of this rank.
    #[arg(long, global = true, value_name = "T")]
    pub rank: Option<usize>,
    /// Worker threads for `census`.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Exit with status 4 unless `exact` finds an exact value.
    #[arg(long, global = true)]
    pub require_exact: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Print a key/value table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hamming weight of each generator.
    Weight { spec: String },
    /// Greedy minimal basis and its weight profile.
    MinimalBasis { spec: String },
    /// Lower and upper bounds on essential dimension.
    Bounds { spec: String },
    /// Exact essential dimension where known, bounds otherwise.
    Exact { spec: String },
    /// The code of a central subgroup.
    Annihilator { spec: String },
    /// The central subgroup of a code.
    Dualize { spec: String },
    /// Canonical representative of the equivalence class.
    Canon { spec: String },
    /// Whether two codes are equivalent.
    Equiv { spec: String, other: String },
    /// Weight-profile statistics over all codes in the ambient.
    Census { spec: String },
    /// Unimodular lift of a basis, or sign lifts when no map is given.
    Lift { spec: String },
    /// Exhaustive minimal profile, for cross-checking.
    Oracle { spec: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Weight { .. } => "weight",
            Command::MinimalBasis { .. } => "minimal-basis",
            Command::Bounds { .. } => "bounds",
            Command::Exact { .. } => "exact",
            Command::Annihilator { .. } => "annihilator",
            Command::Dualize { .. } => "dualize",
            Command::Canon { .. } => "canon",
            Command::Equiv { .. } => "equiv",
            Command::Census { .. } => "census",
            Command::Lift { .. } => "lift",
            Command::Oracle { .. } => "oracle",
        }
    }
}

/// Rendered report and exit code.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GuardExceeded { .. } => EXIT_GUARD,
        _ => EXIT_INVALID,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let (value, code) = match dispatch(cli) {
        Ok(v) => v,
        Err(e) => (report::error(e.kind(), &e.to_string()), exit_code(&e)),
    };
    let mut body = if cli.flags.pretty {
        report::pretty(&value)
    } else {
        value.to_string()
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    Outcome { body, code }
}

fn read_spec(path: &str) -> Result<ProblemSpec> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::InvalidSpec(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::InvalidSpec(format!("{path}: {e}")))?
    };
    ProblemSpec::parse(&text)
}

fn guards(spec: &ProblemSpec, flags: &Flags) -> Result<Guards> {
    let mut g = Guards::default();
    if let Some(raw) = &spec.options.guards {
        let set = |slot: &mut u64, v: &Option<spec::IntLit>, what: &str| -> Result<()> {
            if let Some(v) = v {
                *slot = small(v, what)?;
            }
            Ok(())
        };
        set(&mut g.elements, &raw.elements, "guards.elements")?;
        set(&mut g.oracle, &raw.oracle, "guards.oracle")?;
        set(&mut g.orbit, &raw.orbit, "guards.orbit")?;
        set(&mut g.census, &raw.census, "guards.census")?;
        set(&mut g.search, &raw.search, "guards.search")?;
    }
    if let Some(n) = flags.guard_elements {
        g.elements = n;
    }
    if let Some(n) = flags.guard_orbit {
        g.orbit = n;
    }
    Ok(g)
}

fn bounds_options(spec: &ProblemSpec, flags: &Flags) -> Result<BoundsOptions> {
    Ok(BoundsOptions {
        ed_bar: flags
            .ed_bar
            .clone()
            .or_else(|| spec.options.ed_bar.as_ref().map(|x| x.0.clone())),
        ed_bar_p: flags
            .ed_bar_p
            .clone()
            .or_else(|| spec.options.ed_bar_p.as_ref().map(|x| x.0.clone())),
        guards: guards(spec, flags)?,
    })
}

fn group_spec(spec: &ProblemSpec) -> Result<GroupSpec> {
    Ok(match spec.block {
        Some(Block::Subgroup(_)) => GroupSpec::from_subgroup(spec.subgroup()?),
        _ => GroupSpec::from_code(spec.code()?),
    })
}

/// Copies the input generator block, reduced into the ambient.
fn echo_block(o: &mut Object, spec: &ProblemSpec) -> Result<()> {
    let key = match &spec.block {
        Some(Block::Code(_)) => "code_generators",
        Some(Block::Subgroup(_)) => "subgroup_generators",
        Some(Block::Lattice(rows)) => {
            let rows = rows
                .iter()
                .map(|r| Value::Array(r.iter().map(report::int).collect()))
                .collect();
            o.insert("lattice_rows".into(), Value::Array(rows));
            return Ok(());
        }
        None => return Ok(()),
    };
    o.insert(key.into(), report::elements(&spec.block_elements()?));
    Ok(())
}

fn code_block(o: &mut Object, code: &MixedCode) {
    o.insert(
        "code_generators".into(),
        report::elements(code.summand_basis()),
    );
    o.insert("order".into(), report::int(code.order()));
    o.insert("rank".into(), report::int(code.rank()));
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    let flags = &cli.flags;
    let name = cli.command.name();
    let mut code = EXIT_OK;
    let o = match &cli.command {
        Command::Weight { spec } => {
            let s = read_spec(spec)?;
            let amb = &s.ambient;
            let mut o = report::header(name, amb);
            echo_block(&mut o, &s)?;
            let ws = s
                .block_elements()?
                .iter()
                .map(|y| report::int(weight(y, amb)))
                .collect();
            o.insert("weights".into(), Value::Array(ws));
            o
        }
        Command::MinimalBasis { spec } => {
            let s = read_spec(spec)?;
            let g = guards(&s, flags)?;
            let c = s.code()?;
            let mb = minimal_basis_with(&c, &HammingWeight(&s.ambient), g.elements)?;
            let mut o = report::header(name, &s.ambient);
            echo_block(&mut o, &s)?;
            o.insert("basis".into(), report::elements(&mb.basis));
            o.insert("profile".into(), report::profile(&mb.profile));
            o
        }
        Command::Bounds { spec } => {
            let s = read_spec(spec)?;
            let r = theorem1_bounds_with(&group_spec(&s)?, &bounds_options(&s, flags)?)?;
            let mut o = report::header(name, &s.ambient);
            echo_block(&mut o, &s)?;
            report::ed_report(&mut o, &r);
            o
        }
        Command::Exact { spec } => {
            let s = read_spec(spec)?;
            let r = theorem2_exact_with(&group_spec(&s)?, &bounds_options(&s, flags)?)?;
            if flags.require_exact && r.exact.is_none() {
                code = EXIT_NOT_EXACT;
            }
            let mut o = report::header(name, &s.ambient);
            echo_block(&mut o, &s)?;
            report::ed_report(&mut o, &r);
            o
        }
        Command::Annihilator { spec } => {
            let s = read_spec(spec)?;
            let c = s.subgroup()?;
            let mut o = report::header(name, &s.ambient);
            code_block(&mut o, &annihilator(&c));
            o.insert("subgroup_order".into(), report::int(c.order()));
            o
        }
        Command::Dualize { spec } => {
            let s = read_spec(spec)?;
            let c = annihilator_dual(&s.code()?);
            let mut o = report::header(name, &s.ambient);
            o.insert(
                "subgroup_generators".into(),
                report::elements(c.group().summand_basis()),
            );
            o.insert("order".into(), report::int(c.order()));
            o
        }
        Command::Canon { spec } => {
            let s = read_spec(spec)?;
            let g = guards(&s, flags)?;
            let canon = canonical_form_with(&s.code()?, &g)?;
            let mut o = report::header(name, &s.ambient);
            o.insert(
                "code_generators".into(),
                report::elements(canon.generators()),
            );
            o.insert("order".into(), report::int(canon.order()));
            o
        }
        Command::Equiv { spec, other } => {
            let s = read_spec(spec)?;
            let t = read_spec(other)?;
            let g = guards(&s, flags)?;
            let eq = are_equivalent_with(&s.code()?, &t.code()?, &g)?;
            let mut o = report::header(name, &s.ambient);
            o.insert("equivalent".into(), Value::Bool(eq));
            o
        }
        Command::Census { spec } => {
            let s = read_spec(spec)?;
            let opts = CensusOptions {
                guards: guards(&s, flags)?,
                jobs: flags.jobs,
            };
            let t = match (flags.rank, &s.options.rank) {
                (Some(t), _) => Some(t),
                (None, Some(t)) => Some(small(t, "rank")? as usize),
                (None, None) => None,
            };
            let up_to = flags.up_to_equivalence || s.options.up_to_equivalence.unwrap_or(false);
            let r = profile_census_with(&s.ambient, t, up_to, &opts)?;
            let mut o = report::header(name, &s.ambient);
            report::census_report(&mut o, &r);
            o
        }
        Command::Lift { spec } => {
            let s = read_spec(spec)?;
            let mut o = report::header(name, &s.ambient);
            if s.map_rows.is_some() {
                let f = s.map_matrix()?;
                let y = match s.basis {
                    Some(_) => s.basis_elements()?,
                    None => s.block_elements()?,
                };
                let w = lift_basis(&s.ambient, &f, &y)?;
                let ok = w.verify(&s.ambient, &f, &y);
                o.insert("basis".into(), report::elements(&y));
                report::lift_witness(&mut o, &w, ok);
            } else {
                let y = match s.basis {
                    Some(_) => s.basis_elements()?,
                    None => {
                        let g = guards(&s, flags)?;
                        minimal_basis_with(&s.code()?, &HammingWeight(&s.ambient), g.elements)?
                            .basis
                    }
                };
                let lifts = y
                    .iter()
                    .map(|v| {
                        sign_lift(v, &s.ambient)
                            .map(|l| Value::Array(l.iter().map(report::int).collect()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let independent = verify_sign_lifts_independent(&y, &s.ambient)?;
                o.insert("basis".into(), report::elements(&y));
                o.insert("sign_lifts".into(), Value::Array(lifts));
                o.insert("independent".into(), Value::Bool(independent));
            }
            o
        }
        Command::Oracle { spec } => {
            let s = read_spec(spec)?;
            let g = guards(&s, flags)?;
            let r = brute_force_min_profile_with(&s.code()?, &HammingWeight(&s.ambient), g.oracle)?;
            let mut o = report::header(name, &s.ambient);
            echo_block(&mut o, &s)?;
            o.insert("profile".into(), report::profile(&r.profile));
            o.insert("rank".into(), report::int(r.rank));
            o.insert("bases".into(), report::int(r.bases));
            o.insert("distinct_profiles".into(), report::int(r.distinct_profiles));
            o
        }
    };
    Ok((Value::Object(o), code))
}
