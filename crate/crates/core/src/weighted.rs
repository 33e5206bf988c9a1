//! Weighted possible winner on the line: the polynomial case for wide approval
//! windows, an exact branch-and-bound search, and Partition-based generators.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{
    add_weighted, is_winner, rat, ratio, tally, CandidateSet, Point, Rational, ScoringRule, SpatialInstance, TieBreak,
    VoterSpec,
};
use crate::segments::{compute_decomposition, SegmentDecomposition};
use crate::verdict::{verified, Algorithm, Verdict};

pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionInstance {
    pub values: Vec<u64>,
}

impl PartitionInstance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::InvalidInput("partition values must be positive and nonempty".into()));
        }
        Ok(Self { values })
    }

    pub fn total(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Half of the total, possibly fractional.
    pub fn half(&self) -> Rational {
        ratio(self.total() as i64, 2)
    }
}

fn require_line(instance: &SpatialInstance) -> Result<SegmentDecomposition> {
    if instance.dim() != 1 {
        return Err(Error::Unsupported("weighted solvers need a one-dimensional instance".into()));
    }
    compute_decomposition(&instance.candidates, &instance.rule, &instance.tiebreak)
}

/// Approval window width when the rule is k-approval-like (ones then zeros).
fn approval_width(scores: &[u64]) -> Option<usize> {
    let k = scores.iter().take_while(|&&s| s == 1).count();
    scores[k..].iter().all(|&s| s == 0).then_some(k)
}

/// Whether voter `j` can put the query in its top `k` from some point of its box.
fn reachable_point(decomposition: &SegmentDecomposition, voter: &VoterSpec, query: usize, k: usize) -> Option<Rational> {
    decomposition
        .segments_overlapping(voter.span())
        .iter()
        .find(|s| s.ranking.top(k).contains(&query))
        .and_then(|s| s.representative(voter.span()))
}

/// Polynomial decision for k-approval with `2k >= m`.
pub fn solve_wpw1_large_k(instance: &SpatialInstance) -> Result<Verdict> {
    let decomposition = require_line(instance)?;
    let m = instance.m();
    let k = approval_width(&decomposition.score_vector)
        .filter(|&k| 2 * k >= m)
        .ok_or_else(|| Error::UnsupportedRule(format!("{} is not k-approval with k >= m/2", instance.rule)))?;
    let q = instance.query;
    let algorithm = Algorithm::WeightedLargeK;

    if 2 * k > m {
        if (m - k..k).contains(&q) {
            let completion = instance.voters.iter().map(|v| vec![v.span().lo.clone()]).collect();
            return verified(instance, completion, algorithm);
        }
        let points: Option<Vec<Point>> = instance
            .voters
            .iter()
            .map(|v| reachable_point(&decomposition, v, q, k).map(|x| vec![x]))
            .collect();
        return match points {
            Some(completion) => verified(instance, completion, algorithm),
            None => Ok(Verdict::no(algorithm)),
        };
    }

    // Equal halves: fix the canonical completion, mirrored when the query sits in the right half.
    let left_half = q < k;
    let completion: Vec<Point> = instance
        .voters
        .iter()
        .map(|v| {
            let can = reachable_point(&decomposition, v, q, k).is_some();
            let span = v.span();
            vec![if can == left_half { span.lo.clone() } else { span.hi.clone() }]
        })
        .collect();
    let totals = tally(instance, &completion)?;
    if is_winner(&totals, q) {
        verified(instance, completion, algorithm)
    } else {
        Ok(Verdict::no(algorithm))
    }
}

struct Choice {
    scores: Vec<u64>,
    point: Rational,
}

/// Exhaustive search over per-voter segment choices with an optimistic bound on the query.
pub fn solve_wpw1_exact(instance: &SpatialInstance, cap: u128) -> Result<Verdict> {
    let decomposition = require_line(instance)?;
    let q = instance.query;
    let mut options: Vec<Vec<Choice>> = instance
        .voters
        .iter()
        .map(|v| {
            let mut seen: Vec<Choice> = Vec::new();
            for s in decomposition.segments_overlapping(v.span()) {
                if seen.iter().any(|c| c.scores == s.scores) {
                    continue;
                }
                if let Some(point) = s.representative(v.span()) {
                    seen.push(Choice { scores: s.scores.clone(), point });
                }
            }
            // Most favorable to the query first.
            seen.sort_by(|a, b| b.scores[q].cmp(&a.scores[q]));
            seen
        })
        .collect();
    let size = options.iter().try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128)).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }

    // Heavier voters first so bounds tighten early.
    let mut order: Vec<usize> = (0..instance.n()).collect();
    order.sort_by(|&a, &b| instance.voters[b].weight.cmp(&instance.voters[a].weight));
    let weights: Vec<Rational> = order.iter().map(|&j| instance.voters[j].weight.clone()).collect();
    let ordered: Vec<Vec<Choice>> = order.iter().map(|&j| std::mem::take(&mut options[j])).collect();
    let mut optimistic = vec![Rational::zero(); ordered.len() + 1];
    for i in (0..ordered.len()).rev() {
        let best = ordered[i].iter().map(|c| c.scores[q]).max().unwrap_or(0);
        optimistic[i] = &optimistic[i + 1] + &weights[i] * rat(best as i64);
    }

    let mut search = Search { q, options: &ordered, weights: &weights, optimistic: &optimistic, picks: Vec::new() };
    let mut totals = vec![Rational::zero(); instance.m()];
    if !search.run(&mut totals) {
        return Ok(Verdict::no(Algorithm::WeightedExact));
    }
    let mut completion = vec![Vec::new(); instance.n()];
    for (i, &j) in order.iter().enumerate() {
        completion[j] = vec![ordered[i][search.picks[i]].point.clone()];
    }
    verified(instance, completion, Algorithm::WeightedExact)
}

struct Search<'a> {
    q: usize,
    options: &'a [Vec<Choice>],
    weights: &'a [Rational],
    optimistic: &'a [Rational],
    picks: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, totals: &mut Vec<Rational>) -> bool {
        let depth = self.picks.len();
        let reach = &totals[self.q] + &self.optimistic[depth];
        if totals.iter().any(|t| t > &reach) {
            return false;
        }
        if depth == self.options.len() {
            return is_winner(totals, self.q);
        }
        for (idx, choice) in self.options[depth].iter().enumerate() {
            let before = totals.clone();
            add_weighted(totals, &choice.scores, &self.weights[depth]);
            self.picks.push(idx);
            if self.run(totals) {
                return true;
            }
            self.picks.pop();
            *totals = before;
        }
        false
    }
}

fn line(xs: Vec<Rational>) -> CandidateSet {
    CandidateSet::on_line(xs).expect("generator layouts are strictly increasing")
}

fn weighted(lo: Rational, hi: Rational, weight: Rational) -> VoterSpec {
    VoterSpec::on_line(lo, hi).expect("generator boxes are ordered").with_weight(weight)
}

fn item_voters(pi: &PartitionInstance, lo: Rational, hi: Rational) -> Vec<VoterSpec> {
    pi.values.iter().map(|&a| weighted(lo.clone(), hi.clone(), rat(a as i64))).collect()
}

/// Plurality instance with candidates at 1, 2, 4 where the query (at 4) wins iff `pi` splits evenly.
pub fn gen_partition_plurality(pi: &PartitionInstance) -> SpatialInstance {
    let mut voters = item_voters(pi, rat(1), rat(2));
    voters.push(weighted(rat(4), rat(5), pi.half()));
    SpatialInstance::new(line(vec![rat(1), rat(2), rat(4)]), voters, ScoringRule::Plurality, TieBreak::lower_index(3), 2)
        .expect("valid construction")
}

/// k-approval instance on `2k + 1` candidates at `0..=2k` with the query in the middle.
pub fn gen_partition_kapproval(pi: &PartitionInstance, k: usize) -> Result<SpatialInstance> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k-approval reduction needs k >= 2, got {k}")));
    }
    let m = 2 * k + 1;
    let ki = k as i64;
    let mut voters = item_voters(pi, ratio(ki + 1, 2), ratio(3 * ki, 2));
    voters.push(weighted(rat(-1), rat(0), pi.half()));
    voters.push(weighted(rat(2 * ki), rat(2 * ki + 1), pi.half()));
    SpatialInstance::new(
        line((0..m as i64).map(rat).collect()),
        voters,
        ScoringRule::KApproval(k),
        TieBreak::lower_index(m),
        k,
    )
}

/// Borda instance on four candidates at 0, 1, 2, 5 with the query at 2.
pub fn gen_partition_borda(pi: &PartitionInstance) -> SpatialInstance {
    let a = pi.half();
    let mut voters = item_voters(pi, rat(2), ratio(7, 2));
    voters.push(weighted(rat(5), rat(6), &a * rat(11)));
    voters.push(weighted(ratio(3, 5), ratio(9, 10), &a * rat(7)));
    SpatialInstance::new(
        line(vec![rat(0), rat(1), rat(2), rat(5)]),
        voters,
        ScoringRule::Borda,
        TieBreak::higher_index(4),
        2,
    )
    .expect("valid construction")
}

/// Scales every voter weight by `factor`.
pub fn scale_weights(instance: &SpatialInstance, factor: &Rational) -> Result<SpatialInstance> {
    if factor <= &Rational::zero() {
        return Err(Error::InvalidInput("scaling factor must be positive".into()));
    }
    let voters = instance.voters.iter().map(|v| v.clone().with_weight(&v.weight * factor)).collect();
    SpatialInstance::new(instance.candidates.clone(), voters, instance.rule.clone(), instance.tiebreak.clone(), instance.query)
}
