//! Acceptance checks, one PASS/FAIL line each.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use mixcode::bounds::{
    theorem2_exact, theorem2_witness, theorem3_dispatch, ExactValue, GroupSpec, Status,
    WitnessSearch,
};
use mixcode::census::{enumerate_codes, profile_census};
use mixcode::codes::{
    brute_force_min_profile_with, minimal_basis, minimal_basis_with, Ambient, CodeElement,
    MixedCode, WeightFunction, WeightProfile,
};
use mixcode::duality::{annihilator, annihilator_dual};
use mixcode::equivalence::{apply_all, canonical_form};
use mixcode::exactmath::{reduce_mod, smith_normal_form};
use mixcode::guards::{Guards, DEFAULT_ORACLE_GUARD};
use mixcode::lift::{apply_map, lift_basis, verify_sign_lifts_independent};
use mixcode::{Integer, Matrix, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;

type Check = fn() -> Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn amb(p: u64, a: &[u32]) -> Ambient {
    Ambient::new(p, a.to_vec()).unwrap()
}

fn all_ones(p: u64, a: &[u32]) -> GroupSpec {
    let amb = amb(p, a);
    let ones = CodeElement(vec![1; a.len()]);
    GroupSpec::from_code(MixedCode::new(amb, vec![ones]).unwrap())
}

/// Every ambient with `p` in {2, 3}, at most three summands, exponents at
/// most 2 and order at most 256, in every coordinate order.
fn sweep_ambients() -> Vec<Ambient> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        for r in 1..=3u32 {
            for mask in 0..(1u32 << r) {
                let a: Vec<u32> = (0..r).map(|j| 1 + (mask >> j & 1)).collect();
                let amb = Ambient::new(p, a).unwrap();
                if amb.order_u64().is_some_and(|n| n <= 256) {
                    out.push(amb);
                }
            }
        }
    }
    out
}

fn sweep_codes() -> Vec<MixedCode> {
    sweep_ambients()
        .iter()
        .flat_map(|a| enumerate_codes(a, None).unwrap())
        .collect()
}

fn c1_klein_cube() -> Result<(), String> {
    let start = Instant::now();
    let r = theorem2_exact(&all_ones(2, &[1, 1, 1])).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure!(r.status == Status::ExactThm3c, "status {}", r.status);
    ensure!(
        r.exact == Some(ExactValue::Value(3.into())),
        "exact {:?}",
        r.exact
    );
    ensure!(r.lower_ed_p == (-2).into(), "lower bound {}", r.lower_ed_p);
    ensure!(r.vacuous(), "lower bound not flagged vacuous");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(())
}

fn c2_equal_moduli_formula() -> Result<(), String> {
    let spec = all_ones(5, &[1, 1, 1]);
    let a = theorem2_exact(&spec).map_err(|e| e.to_string())?;
    let b = theorem3_dispatch(&spec).map_err(|e| e.to_string())?;
    for r in [&a, &b] {
        ensure!(
            r.exact == Some(ExactValue::Value(52.into())),
            "p = 5: exact {:?} ({})",
            r.exact,
            r.status
        );
        ensure!(
            r.lower_ed_p == 52.into(),
            "p = 5: lower bound {}",
            r.lower_ed_p
        );
    }
    let expected = Integer::from(3i64.pow(4) - 4 * 3i64.pow(2) + 4 - 1);
    ensure!(expected == 48.into(), "arithmetic");
    for r in [
        theorem2_exact(&all_ones(3, &[1, 1, 1, 1])),
        theorem3_dispatch(&all_ones(3, &[1, 1, 1, 1])),
    ] {
        let r = r.map_err(|e| e.to_string())?;
        ensure!(
            r.exact == Some(ExactValue::Value(expected.clone())),
            "p = 3: exact {:?}",
            r.exact
        );
    }
    Ok(())
}

fn c3_exceptional() -> Result<(), String> {
    for (p, a) in [(3, &[1, 1, 1][..]), (2, &[1, 1, 1, 1]), (2, &[1, 2, 2])] {
        let spec = all_ones(p, a);
        for r in [theorem2_exact(&spec), theorem3_dispatch(&spec)] {
            let r = r.map_err(|e| e.to_string())?;
            ensure!(
                r.status == Status::OpenExceptional && r.exact.is_none(),
                "p = {p}, {a:?}: {} {:?}",
                r.status,
                r.exact
            );
        }
    }
    Ok(())
}

fn c4_reduction() -> Result<(), String> {
    let r = theorem3_dispatch(&all_ones(2, &[1, 1, 2])).map_err(|e| e.to_string())?;
    ensure!(
        r.status == Status::ExactThm3aReduction,
        "status {}",
        r.status
    );
    match r.exact {
        Some(ExactValue::PglReduction {
            degrees,
            upper_bound,
        }) => {
            ensure!(
                degrees == vec![Integer::from(2), Integer::from(2)],
                "degrees {degrees:?}"
            );
            ensure!(upper_bound == 8.into(), "upper bound {upper_bound}");
        }
        other => return Err(format!("exact {other:?}")),
    }
    Ok(())
}

fn table_weight(table: Vec<u32>, amb: Ambient) -> impl Fn(&CodeElement) -> u32 + Sync {
    move |y| table[amb.index_of(y) as usize]
}

fn c5_greedy_is_oracle() -> Result<(), String> {
    let start = Instant::now();
    let codes = sweep_codes();
    let failures: Vec<String> = codes
        .par_iter()
        .enumerate()
        .filter_map(|(k, code)| {
            let amb = code.ambient();
            let n = amb.order_u64().unwrap() as usize;
            let mut rng = common::rng(1000 + k as u64);
            let mut weights: Vec<Box<dyn WeightFunction>> =
                vec![Box::new(|y: &CodeElement| mixcode::codes::weight(y, amb))];
            for _ in 0..50 {
                let table = (0..n).map(|_| rng.gen_range(0..6)).collect();
                weights.push(Box::new(table_weight(table, amb.clone())));
            }
            for w in &weights {
                let greedy = match minimal_basis_with(code, w.as_ref(), 1 << 20) {
                    Ok(g) => g,
                    Err(e) => return Some(format!("{code:?}: {e}")),
                };
                match brute_force_min_profile_with(code, w.as_ref(), DEFAULT_ORACLE_GUARD) {
                    Ok(o) if o.profile == greedy.profile => {}
                    Ok(o) => {
                        return Some(format!(
                            "{code:?}: greedy {:?} oracle {:?}",
                            greedy.profile, o.profile
                        ))
                    }
                    Err(e) => return Some(format!("{code:?}: {e}")),
                }
            }
            None
        })
        .collect();
    ensure!(
        failures.is_empty(),
        "{} failures, first {}",
        failures.len(),
        failures[0]
    );
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "    {} codes, 51 weight functions each, {elapsed:.1?}",
        codes.len()
    );
    Ok(())
}

fn c6_duality() -> Result<(), String> {
    let start = Instant::now();
    let codes = sweep_codes();
    for c in &codes {
        let sub = mixcode::duality::CentralSubgroup::from_group(c.clone());
        let code = annihilator(&sub);
        ensure!(
            annihilator_dual(&code).group() == c,
            "involution fails for {c:?}"
        );
        ensure!(
            sub.order() * code.order() == c.ambient().order(),
            "orders for {c:?}"
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(300), "took {elapsed:?}");
    println!("    {} subgroups, {elapsed:.1?}", codes.len());
    Ok(())
}

fn c7_equivalence() -> Result<(), String> {
    let mut rng = common::rng(77);
    for _ in 0..100 {
        let amb = common::random_ambient(&mut rng);
        let code = common::random_code(&mut rng, &amb);
        let canon = canonical_form(&code).map_err(|e| e.to_string())?;
        let profile = minimal_basis(&code).unwrap().profile;
        let report = theorem2_exact(&GroupSpec::from_code(code.clone())).unwrap();
        for _ in 0..3 {
            let ops = common::random_ops(&mut rng, &amb);
            let moved = apply_all(&ops, &code).unwrap();
            ensure!(
                minimal_basis(&moved).unwrap().profile == profile,
                "profile changes on {code:?}"
            );
            ensure!(
                theorem2_exact(&GroupSpec::from_code(moved.clone())).unwrap() == report,
                "report changes on {code:?} under {ops:?}"
            );
            ensure!(
                canonical_form(&moved).unwrap() == canon,
                "canonical form changes on {code:?}"
            );
        }
    }
    Ok(())
}

fn c8_census() -> Result<(), String> {
    for (p, r, expected) in [(2, 2, 5), (2, 3, 16), (3, 2, 6)] {
        let n = enumerate_codes(&amb(p, &vec![1; r]), None).unwrap().len();
        ensure!(n == expected, "(Z/{p})^{r}: {n} subgroups");
    }
    let rep = profile_census(&amb(2, &[1, 1, 1]), Some(1), false).unwrap();
    let hist: Vec<(WeightProfile, u64)> = rep.per_profile_histogram.into_iter().collect();
    let expected = vec![
        (WeightProfile(vec![1]), 3),
        (WeightProfile(vec![2]), 3),
        (WeightProfile(vec![3]), 1),
    ];
    ensure!(hist == expected, "histogram {hist:?}");
    ensure!(rep.max_w_t == 3, "max_w_t {}", rep.max_w_t);
    ensure!(rep.count_wt_gt_2ar == 1, "count {}", rep.count_wt_gt_2ar);
    ensure!(
        rep.prob_wt_gt_2ar == Some(Rational::new(1.into(), 7.into())),
        "probability {:?}",
        rep.prob_wt_gt_2ar
    );
    Ok(())
}

fn c9_snf_and_lifts() -> Result<(), String> {
    let mut rng = common::rng(99);
    for _ in 0..500 {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<Integer>> = (0..m)
            .map(|_| (0..n).map(|_| rng.gen_range(-20i64..=20).into()).collect())
            .collect();
        let a = Matrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        ensure!(&(&s.u * &a) * &s.v == s.d, "UAV != D for {a:?}");
        ensure!(
            s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one(),
            "not unimodular for {a:?}"
        );
        let d = s.diagonal();
        for w in d.windows(2) {
            let ok = if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            };
            ensure!(ok && !w[0].is_negative(), "divisibility {d:?}");
        }
    }
    for _ in 0..100 {
        let amb = common::random_ambient(&mut rng);
        let f = common::random_map(&mut rng, &amb);
        let y = common::random_basis(&mut rng, &amb);
        let w = lift_basis(&amb, &f, &y).map_err(|e| e.to_string())?;
        ensure!(w.x.determinant().abs().is_one(), "det X for {f:?}");
        ensure!(reduce_mod(&w.c, amb.p()) != 0, "c = {} not a unit", w.c);
        let c = reduce_mod(&w.c, amb.pairing_modulus());
        for i in 0..f.nrows() {
            let expected = match i {
                0 => amb.scale(c, &y[0]),
                i if i < y.len() => y[i].clone(),
                _ => amb.zero(),
            };
            ensure!(
                apply_map(&amb, &f, w.x.row(i)) == expected,
                "image of row {i} for {f:?}"
            );
        }
    }
    let guards = Guards::default();
    let mut eligible = 0;
    for code in sweep_codes() {
        if let WitnessSearch::Found(w) = theorem2_witness(&code, &guards).unwrap() {
            eligible += 1;
            ensure!(
                verify_sign_lifts_independent(&w.basis, code.ambient()) == Ok(true),
                "sign lifts dependent for {code:?}"
            );
        }
    }
    println!("    {eligible} eligible minimal bases");
    Ok(())
}

struct Cli {
    dir: PathBuf,
}

impl Cli {
    fn new() -> Self {
        let dir = std::env::temp_dir().join(format!("mixcode-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Cli { dir }
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let path = self.dir.join(name);
        std::fs::write(&path, body).unwrap();
        path
    }

    fn run(&self, args: &[&str], specs: &[&Path]) -> Vec<u8> {
        let out = Command::new(env!("CARGO_BIN_EXE_mixcode"))
            .args(args)
            .args(specs)
            .output()
            .unwrap();
        out.stdout
    }
}

fn c10_determinism() -> Result<(), String> {
    let cli = Cli::new();
    let code = cli.write(
        "code.json",
        r#"{"p":2,"exponents":[1,2,2],"code_generators":[[1,1,2],[0,2,1]]}"#,
    );
    let cube = cli.write(
        "cube.json",
        r#"{"p":2,"exponents":[1,1,1],"code_generators":[[1,1,1]]}"#,
    );
    let sub = cli.write(
        "sub.json",
        r#"{"p":3,"exponents":[1,2],"subgroup_generators":[[1,3]]}"#,
    );
    let lift = cli.write(
        "lift.json",
        r#"{"p":3,"exponents":[1,2],"map_rows":[[1,0],[0,1],[2,4]],"basis":[[1,1],[0,2]]}"#,
    );
    let census = cli.write("census.json", r#"{"p":2,"exponents":[1,2,2]}"#);
    let runs: Vec<(Vec<&str>, Vec<&Path>)> = vec![
        (vec!["weight"], vec![&code]),
        (vec!["minimal-basis"], vec![&code]),
        (vec!["bounds"], vec![&code]),
        (vec!["exact"], vec![&cube]),
        (vec!["annihilator"], vec![&sub]),
        (vec!["dualize"], vec![&code]),
        (vec!["canon"], vec![&code]),
        (vec!["equiv"], vec![&code, &cube]),
        (vec!["census"], vec![&census]),
        (vec!["census", "--jobs", "4"], vec![&census]),
        (
            vec![
                "census",
                "--jobs",
                "4",
                "--up-to-equivalence",
                "--rank",
                "2",
            ],
            vec![&census],
        ),
        (vec!["lift"], vec![&lift]),
        (vec!["lift"], vec![&cube]),
        (vec!["oracle"], vec![&code]),
        (vec!["exact", "--pretty"], vec![&cube]),
    ];
    for (args, specs) in &runs {
        let a = cli.run(args, specs);
        let b = cli.run(args, specs);
        ensure!(!a.is_empty(), "{args:?}: no output");
        ensure!(a == b, "{args:?}: outputs differ");
    }
    let serial = cli.run(&["census", "--jobs", "1"], &[&census]);
    let parallel = cli.run(&["census", "--jobs", "4"], &[&census]);
    ensure!(serial == parallel, "census depends on --jobs");
    let canon = cli.write(
        "canon.json",
        std::str::from_utf8(&cli.run(&["canon"], &[&code])).unwrap(),
    );
    let eq = String::from_utf8(cli.run(&["equiv"], &[&code, &canon])).unwrap();
    ensure!(
        eq.contains(r#""equivalent":true"#),
        "canon round trip: {eq}"
    );
    std::fs::remove_dir_all(&cli.dir).ok();
    Ok(())
}

fn main() {
    let checks: [(&str, Check); 10] = [
        ("exact value 3 for <(1,1,1)> over (Z/2)^3", c1_klein_cube),
        (
            "equal-moduli formula, p = 5 and p = 3",
            c2_equal_moduli_formula,
        ),
        ("open exceptional cases", c3_exceptional),
        ("PGL reduction bound 8", c4_reduction),
        (
            "greedy basis agrees with exhaustive oracle",
            c5_greedy_is_oracle,
        ),
        ("duality is an involution", c6_duality),
        ("invariance under equivalence", c7_equivalence),
        ("census counts and statistics", c8_census),
        ("Smith form and lift suites", c9_snf_and_lifts),
        ("CLI output is deterministic", c10_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg}", k + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
