//! Exhaustive deciders used as ground truth for the solvers.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::fpt::{voter_options, SurdPoint};
use crate::model::{add_weighted, is_winner, Point, Rational, SpatialInstance};
use crate::segments::compute_decomposition;
use crate::verdict::{Algorithm, Verdict, Witness};

pub const DEFAULT_CAP: u128 = 1_000_000;

/// Per voter: the ballots it can cast, each with a position casting it.
type Options<P> = Vec<Vec<(Vec<u64>, P)>>;

fn product_size<P>(options: &Options<P>) -> u128 {
    options.iter().try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128)).unwrap_or(u128::MAX)
}

fn segment_options(instance: &SpatialInstance) -> Result<Options<Point>> {
    if instance.dim() != 1 {
        return Err(Error::Unsupported("segment enumeration needs a one-dimensional instance".into()));
    }
    let decomposition = compute_decomposition(&instance.candidates, &instance.rule, &instance.tiebreak)?;
    Ok(instance
        .voters
        .iter()
        .map(|v| {
            decomposition
                .segments_overlapping(v.span())
                .iter()
                .filter_map(|s| s.representative(v.span()).map(|x| (s.scores.clone(), vec![x])))
                .collect()
        })
        .collect())
}

fn vector_options(instance: &SpatialInstance) -> Result<Options<SurdPoint>> {
    (0..instance.n())
        .map(|j| Ok(voter_options(instance, j)?.ballots.into_iter().collect()))
        .collect()
}

/// Walks the cartesian product; `visit` returns true to stop early.
fn walk<P: Clone>(
    instance: &SpatialInstance,
    options: &Options<P>,
    visit: &mut impl FnMut(&[Rational], &[P]) -> bool,
) -> bool {
    fn rec<P: Clone>(
        instance: &SpatialInstance,
        options: &Options<P>,
        totals: &mut Vec<Rational>,
        chosen: &mut Vec<P>,
        visit: &mut impl FnMut(&[Rational], &[P]) -> bool,
    ) -> bool {
        let j = chosen.len();
        if j == options.len() {
            return visit(totals, chosen);
        }
        let w = &instance.voters[j].weight;
        for (votes, pos) in &options[j] {
            let before = totals.clone();
            add_weighted(totals, votes, w);
            chosen.push(pos.clone());
            let stop = rec(instance, options, totals, chosen, visit);
            chosen.pop();
            *totals = before;
            if stop {
                return true;
            }
        }
        false
    }
    let mut totals = vec![Rational::zero(); instance.m()];
    rec(instance, options, &mut totals, &mut Vec::new(), visit)
}

fn check_cap(size: u128, cap: u128) -> Result<()> {
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    Ok(())
}

/// Possible winner on the line by trying every combination of segments.
pub fn pw_bruteforce(instance: &SpatialInstance, cap: u128) -> Result<Verdict> {
    let options = segment_options(instance)?;
    check_cap(product_size(&options), cap)?;
    let mut witness = None;
    walk(instance, &options, &mut |totals, chosen| {
        let win = is_winner(totals, instance.query);
        if win {
            witness = Some(chosen.to_vec());
        }
        win
    });
    Ok(match witness {
        Some(c) => Verdict::yes(Algorithm::SegmentProduct, Some(Witness::Completion(c))),
        None => Verdict::no(Algorithm::SegmentProduct),
    })
}

/// Necessary winner on the line: the query wins under every segment combination.
pub fn nw_bruteforce(instance: &SpatialInstance, cap: u128) -> Result<bool> {
    let options = segment_options(instance)?;
    check_cap(product_size(&options), cap)?;
    Ok(!walk(instance, &options, &mut |totals, _| !is_winner(totals, instance.query)))
}

/// Possible winner in any dimension by trying every combination of achievable ballots.
pub fn pw_bruteforce_vectors(instance: &SpatialInstance, cap: u128) -> Result<Verdict> {
    let options = vector_options(instance)?;
    check_cap(product_size(&options), cap)?;
    let exact = options.len() == instance.n() && instance.dim() <= 2;
    let mut witness = None;
    walk(instance, &options, &mut |totals, chosen| {
        let win = is_winner(totals, instance.query);
        if win {
            witness = Some(chosen.to_vec());
        }
        win
    });
    let mut v = match witness {
        Some(points) => {
            let w = match points.iter().map(SurdPoint::as_rational).collect::<Option<Vec<_>>>() {
                Some(c) => Witness::Completion(c),
                None => Witness::Algebraic(points),
            };
            Verdict::yes(Algorithm::VectorProduct, Some(w))
        }
        None => Verdict::no(Algorithm::VectorProduct),
    };
    v.exact = exact || !instance.rule.is_approval();
    Ok(v)
}

/// Necessary winner in any dimension over every combination of achievable ballots.
pub fn nw_bruteforce_vectors(instance: &SpatialInstance, cap: u128) -> Result<bool> {
    let options = vector_options(instance)?;
    check_cap(product_size(&options), cap)?;
    Ok(!walk(instance, &options, &mut |totals, _| !is_winner(totals, instance.query)))
}

/// Whether some subset of `values` sums to half the total.
pub fn partition_bruteforce(values: &[u64]) -> Result<bool> {
    if values.len() > 20 {
        return Err(Error::TooLarge { size: 1 << values.len(), cap: 1 << 20 });
    }
    let total: u64 = values.iter().sum();
    if total % 2 == 1 {
        return Ok(false);
    }
    let half = total / 2;
    Ok((0u32..1 << values.len()).any(|mask| {
        values.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &a)| a).sum::<u64>() == half
    }))
}

/// Whether the items fit into `k` bins of capacity `bin`, by trying every assignment.
pub fn binpacking_bruteforce(sizes: &[u64], bin: u64, k: usize) -> bool {
    fn rec(sizes: &[u64], loads: &mut [u64], bin: u64) -> bool {
        let Some((&first, rest)) = sizes.split_first() else { return true };
        for b in 0..loads.len() {
            if loads[b] + first <= bin {
                loads[b] += first;
                let ok = rec(rest, loads, bin);
                loads[b] -= first;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    rec(sizes, &mut vec![0; k], bin)
}

/// Whether the graph has an independent set with exactly `k` vertices.
pub fn independent_set_bruteforce(edges: &[(usize, usize)], n_vertices: usize, k: usize) -> bool {
    (0u64..1 << n_vertices).any(|mask| {
        mask.count_ones() as usize == k && edges.iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0)
    })
}
