//! Exhaustive minimal-profile oracle.
//!
//! Shares nothing with the greedy path beyond the ambient arithmetic: the
//! code is closed up from its generators by breadth-first search, `X/pX`
//! is built from explicit cosets of `pX`, and every irredundant generating
//! `t`-subset is visited.

use std::collections::{HashMap, HashSet, VecDeque};

use super::{CodeElement, HammingWeight, MixedCode, WeightFunction, WeightProfile};
use crate::error::{Error, Result};
use crate::guards::DEFAULT_ORACLE_GUARD;

/// Cap on visited subsets, independent of the code-size guard.
const NODE_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub profile: WeightProfile,
    /// `log_p |X/pX|`, computed from the coset count.
    pub rank: usize,
    /// Number of bases (as unordered sets) visited.
    pub bases: u64,
    pub distinct_profiles: usize,
}

pub fn brute_force_min_profile(code: &MixedCode) -> Result<WeightProfile> {
    brute_force_min_profile_with(code, &HammingWeight(code.ambient()), DEFAULT_ORACLE_GUARD)
        .map(|r| r.profile)
}

/// Enumerates all bases, checks that their profiles have a least element
/// comparable to every profile, and returns it.
pub fn brute_force_min_profile_with(
    code: &MixedCode,
    weight: &dyn WeightFunction,
    guard: u64,
) -> Result<OracleReport> {
    let amb = code.ambient();
    let p = amb.p();
    let elements = closure(code, guard)?;
    let index: HashMap<&CodeElement, usize> =
        elements.iter().enumerate().map(|(i, y)| (y, i)).collect();

    let p_multiples: HashSet<CodeElement> = elements.iter().map(|y| amb.scale(p, y)).collect();
    let mut coset = vec![usize::MAX; elements.len()];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..elements.len() {
        if coset[i] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(i);
        for q in &p_multiples {
            coset[index[&amb.add(&elements[i], q)]] = id;
        }
    }
    let cosets = reps.len();
    let rank = log_p(cosets as u64, p).ok_or_else(|| {
        Error::NoUniqueMinimum(format!("{cosets} cosets of pX is not a power of {p}"))
    })?;
    let add: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| {
            reps.iter()
                .map(|&b| coset[index[&amb.add(&elements[a], &elements[b])]])
                .collect()
        })
        .collect();
    let zero_coset = coset[index[&amb.zero()]];

    let candidates: Vec<(usize, u32)> = (0..elements.len())
        .filter(|&i| coset[i] != zero_coset)
        .map(|i| (coset[i], weight.weight(&elements[i])))
        .collect();

    let mut search = Search {
        p,
        rank,
        candidates: &candidates,
        add: &add,
        chosen: Vec::with_capacity(rank),
        profiles: HashSet::new(),
        bases: 0,
        nodes: 0,
    };
    let mut span = vec![false; cosets];
    span[zero_coset] = true;
    search.descend(0, &span)?;

    if rank == 0 {
        search.profiles.insert(Vec::new().into_boxed_slice());
        search.bases = 1;
    }
    let least: Vec<u32> = (0..rank)
        .map(|i| search.profiles.iter().map(|pr| pr[i]).min().unwrap_or(0))
        .collect();
    if !search.profiles.contains(least.as_slice()) {
        return Err(Error::NoUniqueMinimum(format!(
            "coordinate-wise minimum {least:?} is not a basis profile"
        )));
    }
    Ok(OracleReport {
        profile: WeightProfile(least),
        rank,
        bases: search.bases,
        distinct_profiles: search.profiles.len(),
    })
}

struct Search<'a> {
    p: u64,
    rank: usize,
    candidates: &'a [(usize, u32)],
    add: &'a [Vec<usize>],
    chosen: Vec<u32>,
    profiles: HashSet<Box<[u32]>>,
    bases: u64,
    nodes: u64,
}

impl Search<'_> {
    fn descend(&mut self, start: usize, span: &[bool]) -> Result<()> {
        if self.chosen.len() == self.rank {
            self.bases += 1;
            let mut profile = self.chosen.clone();
            profile.sort_unstable();
            if !self.profiles.contains(profile.as_slice()) {
                self.profiles.insert(profile.into_boxed_slice());
            }
            return Ok(());
        }
        let needed = self.rank - self.chosen.len();
        for idx in start..self.candidates.len() {
            if self.candidates.len() - idx < needed {
                break;
            }
            let (c, w) = self.candidates[idx];
            if span[c] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > NODE_BUDGET {
                return Err(Error::guard("oracle search nodes", self.nodes, NODE_BUDGET));
            }
            let mut next = span.to_vec();
            for (s, _) in span.iter().enumerate().filter(|(_, &on)| on) {
                let mut x = s;
                for _ in 1..self.p {
                    x = self.add[x][c];
                    next[x] = true;
                }
            }
            self.chosen.push(w);
            self.descend(idx + 1, &next)?;
            self.chosen.pop();
        }
        Ok(())
    }
}

/// The subgroup generated by the code's generators, sorted.
fn closure(code: &MixedCode, guard: u64) -> Result<Vec<CodeElement>> {
    let amb = code.ambient();
    let mut seen: HashSet<CodeElement> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(amb.zero());
    queue.push_back(amb.zero());
    while let Some(x) = queue.pop_front() {
        for g in code.generators() {
            let y = amb.add(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() as u64 > guard {
                    return Err(Error::guard("oracle code size", format!(">{guard}"), guard));
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<CodeElement> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn log_p(mut n: u64, p: u64) -> Option<usize> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}
