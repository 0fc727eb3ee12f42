//! Exact computation of maximum code sizes and shortest lengths at small
//! scale, plus optimality certificates.
//!
//! A code with minimum asymmetric distance `T` is exactly a clique in the
//! graph on all `q^n` words whose edges join words at asymmetric distance at
//! least `T`. The search runs a colouring-bounded branch and bound over that
//! graph. Coordinate permutations and the global complement `x -> q-1-x`
//! preserve asymmetric distance, so every maximum clique can be moved to one
//! that contains a word with sorted symbols that is no larger than its own
//! sorted complement; only those words are used as roots.

mod clique;

use std::fmt;

use serde::Serialize;

use crate::bounds::gbt_value;
use crate::code::{asym, Code};
use crate::error::{Error, Result};

pub(crate) use clique::Graph;

/// Default limit on the number of words `q^n` the search will enumerate.
pub const DEFAULT_CAP: usize = 19_683; // 3^9

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum `q^n`.
    pub cap: usize,
    /// Maximum branch-and-bound nodes per clique search.
    pub node_budget: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            cap: DEFAULT_CAP,
            node_budget: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Distance verified and the length equals the GBT bound.
    OptimalMeetsGbt,
    /// Every shorter length was excluded by exhaustive search.
    OptimalByExhaustion,
    /// A valid code of this length exists; optimality is not established.
    UpperBoundOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::OptimalMeetsGbt => "optimal_meets_gbt",
            Verdict::OptimalByExhaustion => "optimal_by_exhaustion",
            Verdict::UpperBoundOnly => "upper_bound_only",
        })
    }
}

/// Per-length record of a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthProbe {
    pub n: usize,
    /// Size of the best code found at this length.
    pub best_size: usize,
    /// True if the search at this length ran to completion.
    pub complete: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub probes: Vec<LengthProbe>,
}

impl SearchStats {
    pub fn nodes(&self) -> u64 {
        self.probes.iter().map(|p| p.nodes).sum()
    }
}

/// Evidence that a code of size `a` and minimum asymmetric distance `T` has
/// the stated length, and how strong that claim is.
#[derive(Clone, Debug, Serialize)]
pub struct OptimalityCertificate {
    pub q: u16,
    pub a: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub length: usize,
    pub gbt: u64,
    pub verdict: Verdict,
    pub witness: Code,
    pub stats: SearchStats,
}

impl fmt::Display for OptimalityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q = {}", self.q)?;
        writeln!(f, "a = {}", self.a)?;
        writeln!(f, "T = {}", self.t)?;
        writeln!(f, "length = {}", self.length)?;
        writeln!(f, "gbt = {}", self.gbt)?;
        writeln!(f, "verdict = {}", self.verdict)?;
        if !self.stats.probes.is_empty() {
            writeln!(f, "nodes = {}", self.stats.nodes())?;
            for p in &self.stats.probes {
                writeln!(
                    f,
                    "probe n={} best={} complete={}",
                    p.n, p.best_size, p.complete
                )?;
            }
        }
        writeln!(f, "witness:")?;
        f.write_str(&self.witness.to_text())
    }
}

/// All `q^n` words in lexicographic order.
fn all_words(q: u16, n: usize) -> Vec<Vec<u8>> {
    let total = (q as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut w = vec![0u8; n];
            for slot in w.iter_mut().rev() {
                *slot = (idx % q as usize) as u8;
                idx /= q as usize;
            }
            w
        })
        .collect()
}

/// True when `w` is the smallest member of its orbit under coordinate
/// permutations and complement: sorted ascending and not larger than its
/// sorted complement.
fn is_orbit_representative(q: u16, w: &[u8]) -> bool {
    if w.windows(2).any(|p| p[0] > p[1]) {
        return false;
    }
    let top = (q - 1) as u8;
    let mut comp: Vec<u8> = w.iter().map(|&s| top - s).collect();
    comp.sort_unstable();
    w <= comp.as_slice()
}

fn check_space(q: u16, n: usize, limits: &SearchLimits) -> Result<usize> {
    let total = (q as usize)
        .checked_pow(n as u32)
        .filter(|&t| t <= limits.cap)
        .ok_or_else(|| {
            Error::Budget(format!(
                "{q}^{n} words exceeds the search cap of {}",
                limits.cap
            ))
        })?;
    Ok(total)
}

/// Result of [`max_code_size`].
#[derive(Clone, Debug)]
pub struct MaxCodeSize {
    pub size: usize,
    pub witness: Code,
    pub nodes: u64,
}

struct Probe {
    best: Vec<Vec<u8>>,
    complete: bool,
    nodes: u64,
}

fn probe(q: u16, n: usize, t: usize, target: Option<usize>, limits: &SearchLimits) -> Result<Probe> {
    check_space(q, n, limits)?;
    let words = all_words(q, n);
    let graph = Graph::from_fn(words.len(), |i, j| asym(&words[i], &words[j]) >= t);
    let roots: Vec<usize> = (0..words.len())
        .filter(|&i| is_orbit_representative(q, &words[i]))
        .collect();
    let out = clique::max_clique_rooted(&graph, &roots, target, limits.node_budget);
    Ok(Probe {
        best: out.clique.iter().map(|&i| words[i].clone()).collect(),
        complete: out.complete,
        nodes: out.nodes,
    })
}

/// Largest `a` such that a `q`-ary code of length `n` with minimum asymmetric
/// distance at least `T` exists, with a witness.
pub fn max_code_size(q: u16, n: usize, t: usize, limits: &SearchLimits) -> Result<MaxCodeSize> {
    if q < 2 || n < 1 || t < 1 {
        return Err(Error::param("need q >= 2, n >= 1, T >= 1"));
    }
    let p = probe(q, n, t, None, limits)?;
    if !p.complete {
        return Err(Error::Budget(format!(
            "node budget exhausted at n = {n}; best size so far {}",
            p.best.len()
        )));
    }
    Ok(MaxCodeSize {
        size: p.best.len(),
        witness: Code::from_rows(q, p.best)?,
        nodes: p.nodes,
    })
}

/// Smallest length `n <= n_max` admitting a code of size `a` and minimum
/// asymmetric distance `T`.
///
/// When a length cannot be settled within the limits, `fallback` (a known
/// valid code) yields an `UpperBoundOnly` certificate; without one the
/// search fails with [`Error::Budget`].
pub fn min_length(
    q: u16,
    a: usize,
    t: usize,
    n_max: usize,
    limits: &SearchLimits,
    fallback: Option<&Code>,
) -> Result<OptimalityCertificate> {
    if q < 2 || a < 2 || t < 1 {
        return Err(Error::param("need q >= 2, a >= 2, T >= 1"));
    }
    let bound = gbt_value(q as u64, a as u64, t as u64)?;
    let mut stats = SearchStats::default();
    // two words at asymmetric distance T need at least 2T positions
    for n in (2 * t).max(1)..=n_max {
        let p = match probe(q, n, t, Some(a), limits) {
            Ok(p) => p,
            Err(Error::Budget(msg)) => return fall_back(q, a, t, bound, stats, fallback, msg),
            Err(e) => return Err(e),
        };
        stats.probes.push(LengthProbe {
            n,
            best_size: p.best.len(),
            complete: p.complete || p.best.len() >= a,
            nodes: p.nodes,
        });
        if p.best.len() >= a {
            let witness = Code::from_rows(q, p.best)?.prefix(a)?;
            let verdict = if n as u64 == bound {
                Verdict::OptimalMeetsGbt
            } else {
                Verdict::OptimalByExhaustion
            };
            return Ok(OptimalityCertificate {
                q,
                a,
                t,
                length: n,
                gbt: bound,
                verdict,
                witness,
                stats,
            });
        }
        if !p.complete {
            let msg = format!("node budget exhausted at n = {n}");
            return fall_back(q, a, t, bound, stats, fallback, msg);
        }
    }
    fall_back(
        q,
        a,
        t,
        bound,
        stats,
        fallback,
        format!("no code found up to n = {n_max}"),
    )
}

fn fall_back(
    q: u16,
    a: usize,
    t: usize,
    bound: u64,
    stats: SearchStats,
    fallback: Option<&Code>,
    reason: String,
) -> Result<OptimalityCertificate> {
    let Some(code) = fallback else {
        return Err(Error::Budget(reason));
    };
    if code.q() != q || code.size() < a {
        return Err(Error::param("fallback code has the wrong alphabet or is too small"));
    }
    let witness = shrink(code, a)?;
    if witness.min_asymmetric().unwrap_or(usize::MAX) < t {
        return Err(Error::verify("fallback code does not reach the distance"));
    }
    let verdict = if witness.length() as u64 == bound {
        Verdict::OptimalMeetsGbt
    } else {
        Verdict::UpperBoundOnly
    };
    Ok(OptimalityCertificate {
        q,
        a,
        t,
        length: witness.length(),
        gbt: bound,
        verdict,
        witness,
        stats,
    })
}

/// Verifies minimum asymmetric distance `>= T` and compares the length with
/// the GBT bound.
pub fn certify(code: &Code, t: usize) -> Result<OptimalityCertificate> {
    if t < 1 {
        return Err(Error::param("T must be at least 1"));
    }
    let summary = crate::code::min_asymmetric_distance(code)?;
    if summary.min_asymmetric < t {
        let (i, j) = summary.arg_pair;
        return Err(Error::verify(format!(
            "words {i} ({}) and {j} ({}) have asymmetric distance {} < {t}",
            code.word(i),
            code.word(j),
            summary.min_asymmetric
        )));
    }
    let bound = gbt_value(code.q() as u64, code.size() as u64, t as u64)?;
    let verdict = if code.length() as u64 == bound {
        Verdict::OptimalMeetsGbt
    } else {
        Verdict::UpperBoundOnly
    };
    Ok(OptimalityCertificate {
        q: code.q(),
        a: code.size(),
        t,
        length: code.length(),
        gbt: bound,
        verdict,
        witness: code.clone(),
        stats: SearchStats::default(),
    })
}

/// The first `a_target` words. Deleting words never lowers the minimum
/// distance.
pub fn shrink(code: &Code, a_target: usize) -> Result<Code> {
    code.prefix(a_target)
}
