//! Necessary winner by independent worst-case maximization per opponent.

use num_traits::Zero;

use crate::error::Result;
use crate::fpt::voter_options;
use crate::model::{rat, Rational, SpatialInstance};
use crate::segments::compute_decomposition;
use crate::verdict::{Algorithm, Verdict};

/// Score vectors each voter can cast, plus whether the enumeration is exact.
fn ballots(instance: &SpatialInstance) -> Result<(Vec<Vec<Vec<u64>>>, bool)> {
    if instance.dim() == 1 && !instance.rule.is_approval() {
        let d = compute_decomposition(&instance.candidates, &instance.rule, &instance.tiebreak)?;
        let per_voter = instance
            .voters
            .iter()
            .map(|v| d.segments_overlapping(v.span()).iter().map(|s| s.scores.clone()).collect())
            .collect();
        return Ok((per_voter, true));
    }
    let mut exact = true;
    let mut per_voter = Vec::with_capacity(instance.n());
    for j in 0..instance.n() {
        let o = voter_options(instance, j)?;
        exact &= o.exact;
        per_voter.push(o.vectors());
    }
    Ok((per_voter, exact))
}

/// Largest weighted margin of `c` over the query summed over voters.
fn worst_margin(instance: &SpatialInstance, per_voter: &[Vec<Vec<u64>>], c: usize) -> Rational {
    let q = instance.query;
    per_voter.iter().zip(&instance.voters).fold(Rational::zero(), |acc, (options, v)| {
        let best = options.iter().map(|s| s[c] as i64 - s[q] as i64).max().unwrap_or(0);
        acc + &v.weight * rat(best)
    })
}

pub fn solve_nw(instance: &SpatialInstance) -> Result<Verdict> {
    let (per_voter, exact) = ballots(instance)?;
    let answer = (0..instance.m())
        .filter(|&c| c != instance.query)
        .all(|c| worst_margin(instance, &per_voter, c) <= Rational::zero());
    let mut v = if answer { Verdict::yes(Algorithm::WorstCase, None) } else { Verdict::no(Algorithm::WorstCase) };
    v.exact = exact;
    Ok(v)
}
