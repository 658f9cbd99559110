//! Exhaustive enumeration of the codes in a small ambient and statistics
//! of their minimal profiles.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::codes::{
    minimal_basis_with, Ambient, CodeElement, HammingWeight, MixedCode, WeightProfile,
};
use crate::equivalence::canonical_form_with;
use crate::error::{Error, Result};
use crate::guards::Guards;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub ambient: Ambient,
    pub rank_filter: Option<usize>,
    pub up_to_equivalence: bool,
    pub total_codes: u64,
    pub lex_largest_profile: Option<WeightProfile>,
    pub max_w_t: u32,
    /// Codes with `w_1 = ... = w_t` (vacuously true when `t <= 1`).
    pub count_equal_weights: u64,
    pub prob_equal_weights: Option<BigRational>,
    pub max_sum_pw: BigInt,
    pub mean_sum_pw: Option<BigRational>,
    /// Codes with `w_t > 2 a_r`, `a_r` the largest exponent.
    pub count_wt_gt_2ar: u64,
    pub prob_wt_gt_2ar: Option<BigRational>,
    pub per_profile_histogram: BTreeMap<WeightProfile, u64>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CensusOptions {
    pub guards: Guards,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

pub fn enumerate_codes(ambient: &Ambient, t: Option<usize>) -> Result<Vec<MixedCode>> {
    enumerate_codes_with(ambient, t, &Guards::default())
}

/// Every subgroup once, ordered by size and then by sorted element list.
///
/// Subgroups are grown from `{0}` by adjoining one element at a time; one
/// element per coset of the current subgroup is tried.
pub fn enumerate_codes_with(
    ambient: &Ambient,
    t: Option<usize>,
    guards: &Guards,
) -> Result<Vec<MixedCode>> {
    let size = match ambient.order_u64() {
        Some(n) if n <= guards.census => n as usize,
        _ => {
            return Err(Error::guard(
                "census ambient",
                ambient.order(),
                guards.census,
            ))
        }
    };
    let elements = ambient.elements(guards.census)?;
    let add = |x: u32, y: u32| -> u32 {
        ambient.index_of(&ambient.add(&elements[x as usize], &elements[y as usize])) as u32
    };

    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut found: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut frontier: Vec<(Vec<u32>, Vec<u32>)> = vec![(vec![0], Vec::new())];
    seen.insert(vec![0]);
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (set, gens) in frontier {
            let mut covered = vec![false; size];
            for &s in &set {
                covered[s as usize] = true;
            }
            for g in 0..size as u32 {
                if covered[g as usize] {
                    continue;
                }
                for &s in &set {
                    covered[add(s, g) as usize] = true;
                }
                let grown = adjoin(&set, g, &add);
                if seen.insert(grown.clone()) {
                    let mut new_gens = gens.clone();
                    new_gens.push(g);
                    next.push((grown, new_gens));
                }
            }
            found.push((set, gens));
        }
        frontier = next;
    }
    found.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));

    let codes = found
        .into_iter()
        .map(|(_, gens)| {
            let gens: Vec<CodeElement> =
                gens.iter().map(|&g| elements[g as usize].clone()).collect();
            MixedCode::new(ambient.clone(), gens).expect("ambient elements")
        })
        .filter(|x| t.is_none_or(|t| x.rank() == t))
        .collect();
    Ok(codes)
}

/// Sorted element list of `set + <g>`.
fn adjoin(set: &[u32], g: u32, add: &impl Fn(u32, u32) -> u32) -> Vec<u32> {
    let members: HashSet<u32> = set.iter().copied().collect();
    let mut out: Vec<u32> = set.to_vec();
    let mut multiple = g;
    while !members.contains(&multiple) {
        out.extend(set.iter().map(|&s| add(s, multiple)));
        multiple = add(multiple, g);
    }
    out.sort_unstable();
    out
}

pub fn profile_census(
    ambient: &Ambient,
    t: Option<usize>,
    up_to_equivalence: bool,
) -> Result<CensusReport> {
    profile_census_with(ambient, t, up_to_equivalence, &CensusOptions::default())
}

pub fn profile_census_with(
    ambient: &Ambient,
    t: Option<usize>,
    up_to_equivalence: bool,
    opts: &CensusOptions,
) -> Result<CensusReport> {
    let run = || census_inner(ambient, t, up_to_equivalence, &opts.guards);
    match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Dimension(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn census_inner(
    ambient: &Ambient,
    t: Option<usize>,
    up_to_equivalence: bool,
    guards: &Guards,
) -> Result<CensusReport> {
    let mut codes = enumerate_codes_with(ambient, t, guards)?;
    if up_to_equivalence {
        let canon: Vec<MixedCode> = codes
            .par_iter()
            .map(|x| canonical_form_with(x, guards))
            .collect::<Result<_>>()?;
        let mut seen: HashSet<Vec<CodeElement>> = HashSet::new();
        codes = canon
            .into_iter()
            .filter(|c| {
                let fp = c
                    .elements(guards.elements)
                    .expect("canonical code within guard");
                seen.insert(fp)
            })
            .collect();
    }
    let profiles: Vec<WeightProfile> = codes
        .par_iter()
        .map(|x| minimal_basis_with(x, &HammingWeight(ambient), guards.elements).map(|m| m.profile))
        .collect::<Result<_>>()?;
    Ok(summarize(ambient, t, up_to_equivalence, &profiles))
}

fn summarize(
    ambient: &Ambient,
    t: Option<usize>,
    up_to_equivalence: bool,
    profiles: &[WeightProfile],
) -> CensusReport {
    let p = BigInt::from(ambient.p());
    let threshold = 2 * ambient.max_exponent();
    let total = profiles.len() as u64;
    let mut histogram: BTreeMap<WeightProfile, u64> = BTreeMap::new();
    let mut max_sum = BigInt::from(0);
    let mut sum_of_sums = BigInt::from(0);
    let (mut equal, mut above) = (0u64, 0u64);
    for profile in profiles {
        *histogram.entry(profile.clone()).or_default() += 1;
        let s: BigInt = profile.weights().iter().map(|&w| p.pow(w)).sum();
        if s > max_sum {
            max_sum = s.clone();
        }
        sum_of_sums += s;
        if profile.all_equal() {
            equal += 1;
        }
        if profile.last().is_some_and(|w| w > threshold) {
            above += 1;
        }
    }
    let ratio = |n: BigInt| (total > 0).then(|| BigRational::new(n, BigInt::from(total)));
    CensusReport {
        ambient: ambient.clone(),
        rank_filter: t,
        up_to_equivalence,
        total_codes: total,
        lex_largest_profile: profiles.iter().max().cloned(),
        max_w_t: profiles
            .iter()
            .filter_map(WeightProfile::last)
            .max()
            .unwrap_or(0),
        count_equal_weights: equal,
        prob_equal_weights: ratio(BigInt::from(equal)),
        max_sum_pw: max_sum,
        mean_sum_pw: ratio(sum_of_sums),
        count_wt_gt_2ar: above,
        prob_wt_gt_2ar: ratio(BigInt::from(above)),
        per_profile_histogram: histogram,
    }
}
