//! Essential-dimension bounds and exact values for
//! `G = (GL_{p^{a_1}} x ... x GL_{p^{a_r}}) / C`.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Signed;

use crate::codes::{
    minimal_basis_with, weight, Ambient, CodeElement, FpSpan, HammingWeight, MixedCode,
    WeightProfile,
};
use crate::duality::{annihilator, annihilator_dual, CentralSubgroup};
use crate::equivalence::is_equivalent_to_all_ones;
use crate::error::{Error, Result};
use crate::guards::Guards;

/// The group `G`, given by `C` or equivalently by `Code(C)`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    subgroup: CentralSubgroup,
    code: MixedCode,
}

impl GroupSpec {
    pub fn from_subgroup(subgroup: CentralSubgroup) -> Self {
        let code = annihilator(&subgroup);
        GroupSpec { subgroup, code }
    }

    pub fn from_code(code: MixedCode) -> Self {
        let subgroup = annihilator_dual(&code);
        GroupSpec { subgroup, code }
    }

    pub fn ambient(&self) -> &Ambient {
        self.code.ambient()
    }

    pub fn subgroup(&self) -> &CentralSubgroup {
        &self.subgroup
    }

    pub fn code(&self) -> &MixedCode {
        &self.code
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    BoundsOnly,
    ExactThm2,
    ExactThm3aReduction,
    ExactThm3c,
    OpenExceptional,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::BoundsOnly => "BOUNDS_ONLY",
            Status::ExactThm2 => "EXACT_THM2",
            Status::ExactThm3aReduction => "EXACT_THM3A_REDUCTION",
            Status::ExactThm3c => "EXACT_THM3C",
            Status::OpenExceptional => "OPEN_EXCEPTIONAL",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(
            self,
            Status::ExactThm2 | Status::ExactThm3aReduction | Status::ExactThm3c
        )
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Value(BigInt),
    /// `ed(G) = ed(PGL_{n_1} x ... x PGL_{n_k})` for the listed degrees,
    /// which is at most `upper_bound = sum n_i^2`.
    PglReduction {
        degrees: Vec<BigInt>,
        upper_bound: BigInt,
    },
}

impl ExactValue {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            ExactValue::Value(v) => Some(v),
            ExactValue::PglReduction { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Note {
    /// Assumed throughout.
    CharNotP,
    /// The reported exact value needs a base field of characteristic zero.
    CharZero,
    /// The sign-pattern basis search hit its budget before finishing.
    SearchTruncated,
}

impl Note {
    pub fn as_str(&self) -> &'static str {
        match self {
            Note::CharNotP => "char(k) != p",
            Note::CharZero => "exact value assumes char(k) = 0",
            Note::SearchTruncated => {
                "sign-pattern basis search truncated; no witness found within budget"
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdReport {
    pub profile: WeightProfile,
    pub ind_g_t: BigInt,
    pub lower_ed_p: BigInt,
    pub upper_ed: BigInt,
    pub upper_ed_p: BigInt,
    pub ed_bar_used: BigInt,
    pub ed_bar_p_used: BigInt,
    pub exact: Option<ExactValue>,
    pub status: Status,
    pub notes: Vec<Note>,
}

impl EdReport {
    /// The lower bound is negative and says nothing.
    pub fn vacuous(&self) -> bool {
        self.lower_ed_p.is_negative()
    }
}

#[derive(Clone, Debug, Default)]
pub struct BoundsOptions {
    pub ed_bar: Option<BigInt>,
    pub ed_bar_p: Option<BigInt>,
    pub guards: Guards,
}

fn pow(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// `p^{w(y)}`.
pub fn index_of_character(y: &CodeElement, ambient: &Ambient) -> BigInt {
    pow(ambient.p(), weight(y, ambient))
}

fn sum_pw(p: u64, profile: &WeightProfile) -> BigInt {
    profile.weights().iter().map(|&w| pow(p, w)).sum()
}

/// `sum_j p^{2 a_j}`.
pub fn product_bound(ambient: &Ambient) -> BigInt {
    ambient
        .exponents()
        .iter()
        .map(|&a| pow(ambient.p(), 2 * a))
        .sum()
}

/// `sum_i p^{w_i} + r - t` for a minimal profile.
pub fn ind_g_t(code: &MixedCode) -> Result<BigInt> {
    ind_g_t_with(code, &Guards::default())
}

pub fn ind_g_t_with(code: &MixedCode, guards: &Guards) -> Result<BigInt> {
    let amb = code.ambient();
    let mb = minimal_basis_with(code, &HammingWeight(amb), guards.elements)?;
    Ok(sum_pw(amb.p(), &mb.profile) + amb.len() - mb.profile.len())
}

pub fn theorem1_bounds(
    spec: &GroupSpec,
    ed_bar: Option<BigInt>,
    ed_bar_p: Option<BigInt>,
) -> Result<EdReport> {
    theorem1_bounds_with(
        spec,
        &BoundsOptions {
            ed_bar,
            ed_bar_p,
            ..BoundsOptions::default()
        },
    )
}

pub fn theorem1_bounds_with(spec: &GroupSpec, opts: &BoundsOptions) -> Result<EdReport> {
    let code = spec.code();
    let amb = code.ambient();
    let p = amb.p();
    let profile = minimal_basis_with(code, &HammingWeight(amb), opts.guards.elements)?.profile;
    let r = BigInt::from(amb.len());
    let t = BigInt::from(profile.len());
    let s = sum_pw(p, &profile);
    let squares = product_bound(amb);
    let ed_bar = opts.ed_bar.clone().unwrap_or_else(|| squares.clone());
    let ed_bar_p = opts.ed_bar_p.clone().unwrap_or_else(|| squares.clone());
    Ok(EdReport {
        ind_g_t: &s + &r - &t,
        lower_ed_p: &s - &squares + &r - &t,
        upper_ed: &s - &t + &ed_bar,
        upper_ed_p: &s - &t + &ed_bar_p,
        ed_bar_used: ed_bar,
        ed_bar_p_used: ed_bar_p,
        profile,
        exact: None,
        status: Status::BoundsOnly,
        notes: vec![Note::CharNotP],
    })
}

/// Support moduli `n_{j_1} <= ... <= n_{j_s}` satisfy
/// `n_{j_s} <= n_{j_1} ... n_{j_{s-1}} / 2` and avoid `(2,2,2,2)`,
/// `(3,3,3)` and `(2,n,n)`.
pub fn is_balanced(y: &CodeElement, ambient: &Ambient) -> bool {
    let moduli: Vec<u64> = y
        .support()
        .into_iter()
        .map(|j| ambient.moduli()[j])
        .sorted()
        .collect();
    balanced_moduli(&moduli)
}

fn balanced_moduli(sorted: &[u64]) -> bool {
    let Some((&last, rest)) = sorted.split_last() else {
        return false;
    };
    let prod: BigInt = rest.iter().map(|&n| BigInt::from(n)).product();
    if BigInt::from(2 * last as u128) > prod {
        return false;
    }
    !matches!(sorted, [2, 2, 2, 2] | [3, 3, 3]) && !matches!(sorted, [2, a, b] if a == b)
}

/// Whether every coordinate lies in `{0, 1, -1}`.
pub fn is_sign_pattern(y: &CodeElement, ambient: &Ambient) -> bool {
    y.coords()
        .iter()
        .zip(ambient.moduli())
        .all(|(&c, &n)| c <= 1 || c == n - 1)
}

/// A basis meeting the sign and balanced-coverage conditions. `scaling`
/// is the per-coordinate unit carrying the code onto the one containing
/// `basis`; it is all ones when the code itself qualifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignWitness {
    pub scaling: Vec<u64>,
    pub basis: Vec<CodeElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(SignWitness),
    NotFound,
    Truncated,
}

/// Searches minimal bases of the code itself, ignoring its scaling orbit.
pub fn theorem2_witness(code: &MixedCode, guards: &Guards) -> Result<WitnessSearch> {
    let mut search = WitnessSearcher::new(code, guards)?;
    let ones = vec![1; code.ambient().len()];
    Ok(search.run(&ones))
}

/// Searches the code and its images under coordinate unit scalings, up
/// to the scalings that fix the condition (global units and signs).
fn orbit_witness(code: &MixedCode, guards: &Guards) -> Result<WitnessSearch> {
    let amb = code.ambient();
    let mut search = WitnessSearcher::new(code, guards)?;
    let reps: Vec<Vec<u64>> = amb
        .moduli()
        .iter()
        .enumerate()
        .map(|(j, &n)| {
            if j == 0 {
                vec![1]
            } else {
                (1..n).filter(|&c| c % amb.p() != 0 && c <= n - c).collect()
            }
        })
        .collect();
    let mut truncated = false;
    for (k, s) in reps.into_iter().multi_cartesian_product().enumerate() {
        if k as u64 >= guards.orbit {
            truncated = true;
            break;
        }
        match search.run(&s) {
            found @ WitnessSearch::Found(_) => return Ok(found),
            WitnessSearch::Truncated => {
                truncated = true;
                break;
            }
            WitnessSearch::NotFound => {}
        }
    }
    Ok(if truncated {
        WitnessSearch::Truncated
    } else {
        WitnessSearch::NotFound
    })
}

struct WitnessSearcher {
    ambient: Ambient,
    profile: Vec<u32>,
    /// Code elements with their weight, image in `X/pX` and balance.
    elements: Vec<(CodeElement, u32, Vec<u64>, bool)>,
    budget: u64,
    nodes: u64,
}

impl WitnessSearcher {
    fn new(code: &MixedCode, guards: &Guards) -> Result<Self> {
        let amb = code.ambient().clone();
        let profile = minimal_basis_with(code, &HammingWeight(&amb), guards.elements)?
            .profile
            .0;
        let elements = code
            .elements(guards.elements)?
            .into_iter()
            .filter(|y| !y.is_zero())
            .map(|y| {
                let w = weight(&y, &amb);
                let image = code.nakayama_image(&y).expect("element of the code");
                let balanced = is_balanced(&y, &amb);
                (y, w, image, balanced)
            })
            .filter(|(_, w, _, _)| profile.contains(w))
            .collect();
        Ok(WitnessSearcher {
            ambient: amb,
            profile,
            elements,
            budget: guards.search,
            nodes: 0,
        })
    }

    fn run(&mut self, scaling: &[u64]) -> WitnessSearch {
        let amb = self.ambient.clone();
        let amb = &amb;
        let r = amb.len();
        if self.profile.is_empty() {
            return WitnessSearch::NotFound;
        }
        // Per slot weight, the eligible scaled candidates, one per sign class.
        let scaled = |y: &CodeElement| {
            CodeElement(
                y.coords()
                    .iter()
                    .zip(scaling)
                    .zip(amb.moduli())
                    .map(|((&c, &s), &n)| ((c as u128 * s as u128) % n as u128) as u64)
                    .collect(),
            )
        };
        let mut groups: Vec<(u32, Vec<usize>)> = Vec::new();
        for &w in self.profile.iter().dedup() {
            let idx = self
                .elements
                .iter()
                .enumerate()
                .filter(|(_, (y, wy, _, _))| {
                    if *wy != w {
                        return false;
                    }
                    let z = scaled(y);
                    is_sign_pattern(&z, amb) && z.coords().iter().find(|&&c| c != 0) == Some(&1)
                })
                .map(|(i, _)| i)
                .collect();
            groups.push((w, idx));
        }
        let slots: Vec<usize> = self
            .profile
            .iter()
            .map(|w| groups.iter().position(|(gw, _)| gw == w).unwrap())
            .collect();

        let mut chosen: Vec<usize> = Vec::new();
        let mut span = FpSpan::new(amb.p());
        let outcome = self.descend(&groups, &slots, &mut chosen, &mut span, r);
        match outcome {
            Some(true) => WitnessSearch::Found(SignWitness {
                scaling: scaling.to_vec(),
                basis: chosen
                    .iter()
                    .map(|&i| scaled(&self.elements[i].0))
                    .collect(),
            }),
            Some(false) => WitnessSearch::NotFound,
            None => WitnessSearch::Truncated,
        }
    }

    /// `Some(true)` leaves the witness in `chosen`; `None` means out of budget.
    fn descend(
        &mut self,
        groups: &[(u32, Vec<usize>)],
        slots: &[usize],
        chosen: &mut Vec<usize>,
        span: &mut FpSpan,
        r: usize,
    ) -> Option<bool> {
        let depth = chosen.len();
        if depth == slots.len() {
            let mut covered = vec![false; r];
            for &i in chosen.iter() {
                let (y, _, _, balanced) = &self.elements[i];
                if *balanced {
                    for j in y.support() {
                        covered[j] = true;
                    }
                }
            }
            return Some(covered.iter().all(|&c| c));
        }
        let g = slots[depth];
        let members = &groups[g].1;
        let start = if depth > 0 && slots[depth - 1] == g {
            let prev = chosen[depth - 1];
            members.iter().position(|&i| i == prev).unwrap() + 1
        } else {
            0
        };
        for &i in &members[start..] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return None;
            }
            let mut next = span.clone();
            if !next.insert(&self.elements[i].2) {
                continue;
            }
            chosen.push(i);
            match self.descend(groups, slots, chosen, &mut next, r) {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            chosen.pop();
        }
        Some(false)
    }
}

pub fn theorem2_exact(spec: &GroupSpec) -> Result<EdReport> {
    theorem2_exact_with(spec, &BoundsOptions::default())
}

/// Exact value when some minimal basis (of the code or of a scaled copy,
/// which has the same `G` up to isomorphism) has entries in `{0, 1, -1}` and
/// balanced elements covering every coordinate; otherwise the dispatch for
/// codes equivalent to `<(1, ..., 1)>`, and otherwise bounds only.
pub fn theorem2_exact_with(spec: &GroupSpec, opts: &BoundsOptions) -> Result<EdReport> {
    let mut report = theorem1_bounds_with(spec, opts)?;
    match orbit_witness(spec.code(), &opts.guards)? {
        WitnessSearch::Found(_) => {
            report.exact = Some(ExactValue::Value(report.lower_ed_p.clone()));
            report.status = Status::ExactThm2;
            report.notes.push(Note::CharZero);
            return Ok(report);
        }
        WitnessSearch::Truncated => report.notes.push(Note::SearchTruncated),
        WitnessSearch::NotFound => {}
    }
    if is_equivalent_to_all_ones(spec.code()) {
        let (status, exact) = all_ones_case(spec.ambient());
        if status == Status::ExactThm2 {
            report.notes.push(Note::CharZero);
        }
        report.status = status;
        report.exact = exact;
    }
    Ok(report)
}

pub fn theorem3_dispatch(spec: &GroupSpec) -> Result<EdReport> {
    theorem3_dispatch_with(spec, &BoundsOptions::default())
}

/// Cases for `Code(C)` equivalent to `<(1, ..., 1)>`, on sorted exponents.
pub fn theorem3_dispatch_with(spec: &GroupSpec, opts: &BoundsOptions) -> Result<EdReport> {
    if !is_equivalent_to_all_ones(spec.code()) {
        return Err(Error::NotApplicable(
            "code is not equivalent to the one generated by (1, ..., 1)".into(),
        ));
    }
    let mut report = theorem1_bounds_with(spec, opts)?;
    let (status, exact) = all_ones_case(spec.ambient());
    if status == Status::ExactThm2 {
        report.notes.push(Note::CharZero);
    }
    report.status = status;
    report.exact = exact;
    Ok(report)
}

fn all_ones_case(ambient: &Ambient) -> (Status, Option<ExactValue>) {
    let p = ambient.p();
    let a: Vec<u32> = ambient.exponents().iter().copied().sorted().collect();
    let (&top, rest) = a.split_last().expect("ambients are nonempty");
    if top >= rest.iter().sum::<u32>() {
        let degrees: Vec<BigInt> = rest.iter().map(|&e| pow(p, e)).collect();
        let upper_bound = degrees.iter().map(|d| d * d).sum();
        return (
            Status::ExactThm3aReduction,
            Some(ExactValue::PglReduction {
                degrees,
                upper_bound,
            }),
        );
    }
    let moduli: Vec<u64> = a.iter().map(|&e| p.pow(e)).collect();
    match moduli.as_slice() {
        [2, 2, 2] => return (Status::ExactThm3c, Some(ExactValue::Value(BigInt::from(3)))),
        [2, 2, 2, 2] | [3, 3, 3] => return (Status::OpenExceptional, None),
        [2, x, y] if x == y => return (Status::OpenExceptional, None),
        _ => {}
    }
    let r = a.len();
    let value = pow(p, a.iter().sum()) - product_bound(ambient) + r - 1u32;
    (Status::ExactThm2, Some(ExactValue::Value(value)))
}
