//! Possible winner on the line under k-truncated rules, via scheduling with shapes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{Point, Rational, ScoringRule, SpatialInstance, VoterSpec};
use crate::segments::{compute_decomposition, SegmentDecomposition};
use crate::shapes::{admissible_sums, check_p_structured, dp_solve, Job, PStructuredInstance, Shape, ShapesInstance};
use crate::verdict::{verified, Algorithm, Verdict};

/// The job built for one voter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterJob {
    pub voter: usize,
    /// Lowest candidate index that can be scored from inside the box.
    pub i_l: usize,
    /// Highest candidate index that can be scored from inside the box.
    pub i_r: usize,
    pub job: Job,
    /// A position inside the box realizing each admissible (start, shape).
    pub positions: BTreeMap<(usize, Shape), Rational>,
}

#[derive(Debug, Clone)]
pub struct Pw1Reduction {
    pub decomposition: SegmentDecomposition,
    pub k: usize,
    pub jobs: Vec<VoterJob>,
}

impl Pw1Reduction {
    pub fn shapes_instance(&self, machines: u64) -> ShapesInstance {
        ShapesInstance::new(self.jobs.iter().map(|j| j.job.clone()).collect(), machines)
    }
}

fn require_line(instance: &SpatialInstance) -> Result<()> {
    if instance.dim() != 1 {
        return Err(Error::Unsupported(format!("expected a one-dimensional instance, got d = {}", instance.dim())));
    }
    Ok(())
}

/// Builds one job per voter: release `i_L`, deadline `i_R + 1`, processing time `k`.
pub fn build_jobs(instance: &SpatialInstance) -> Result<Pw1Reduction> {
    require_line(instance)?;
    let m = instance.m();
    let k = instance
        .rule
        .truncation(m)
        .ok_or_else(|| Error::UnsupportedRule(format!("{} is not k-truncated for m = {m}", instance.rule)))?;
    let decomposition = compute_decomposition(&instance.candidates, &instance.rule, &instance.tiebreak)?;
    let jobs = instance
        .voters
        .iter()
        .enumerate()
        .map(|(voter, spec)| {
            let z = |x: &Rational| decomposition.segment_of(x).z.expect("truncated rule");
            let i_l = z(&spec.span().lo);
            let i_r = z(&spec.span().hi) + k - 1;
            let (shape_sets, positions) = build_shape_sets(&decomposition, spec, i_l, i_r + 1);
            let job = Job::new(k, i_l, i_r + 1, shape_sets)?;
            Ok(VoterJob { voter, i_l, i_r, job, positions })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Pw1Reduction { decomposition, k, jobs })
}

type ShapeSets = BTreeMap<usize, BTreeSet<Shape>>;

/// Shape sets of a voter's job: at start `t`, the shapes of the segments with
/// `z = t` that meet the box, each with a representative position.
pub fn build_shape_sets(
    decomposition: &SegmentDecomposition,
    voter: &VoterSpec,
    r: usize,
    d: usize,
) -> (ShapeSets, BTreeMap<(usize, Shape), Rational>) {
    let mut sets: ShapeSets = BTreeMap::new();
    let mut positions = BTreeMap::new();
    let span = voter.span();
    for seg in decomposition.segments_overlapping(span) {
        let (Some(z), Some(shape)) = (seg.z, seg.shape.as_ref()) else { continue };
        if z < r || z + shape.len() > d {
            continue;
        }
        let Some(pos) = seg.representative(span) else { continue };
        sets.entry(z).or_default().insert(shape.clone());
        positions.entry((z, shape.clone())).or_insert(pos);
    }
    (sets, positions)
}

/// Candidate winning scores: sums of at most `n` of the positive rule values.
pub fn enumerate_budgets(n: usize, rule: &ScoringRule, m: usize) -> Result<Vec<u64>> {
    let k = rule
        .truncation(m)
        .ok_or_else(|| Error::UnsupportedRule(format!("{rule} is not k-truncated for m = {m}")))?;
    let v = rule.score_vector(m)?;
    Ok(admissible_sums(&v[..k], n))
}

/// Equivalent instance whose rule ends in zero; winners are unchanged.
fn shifted(instance: &SpatialInstance) -> Result<SpatialInstance> {
    if instance.rule.is_approval() {
        return Err(Error::UnsupportedRule("approval voting is handled by the FPT solver".into()));
    }
    if instance.is_weighted() {
        return Err(Error::Unsupported("voters carry different weights".into()));
    }
    let v = instance.score_vector()?;
    let base = v[v.len() - 1];
    let prefix: Vec<u64> = v.iter().map(|s| s - base).take_while(|&s| s > 0).collect();
    let mut out = instance.clone();
    out.rule = ScoringRule::Vector(prefix);
    Ok(out)
}

/// Decides the possible-winner question for a one-dimensional positional instance
/// with equal weights.
pub fn solve_pw1(instance: &SpatialInstance) -> Result<Verdict> {
    require_line(instance)?;
    let inst = shifted(instance)?;
    if inst.rule.truncation(inst.m()) == Some(1) {
        return solve_single_winner(&inst);
    }
    solve_by_schedule(&inst)
}

/// Same as [`solve_pw1`] but always runs the scheduling dynamic program.
pub fn solve_pw1_dp(instance: &SpatialInstance) -> Result<Verdict> {
    require_line(instance)?;
    solve_by_schedule(&shifted(instance)?)
}

fn solve_by_schedule(inst: &SpatialInstance) -> Result<Verdict> {
    let reduction = build_jobs(inst)?;
    let m = inst.m();
    let n = inst.n();
    let query = inst.query;
    let scores = inst.score_vector()?;
    let lattice = enumerate_budgets(n, &inst.rule, m)?;

    let best_possible: u64 = reduction
        .jobs
        .iter()
        .map(|vj| {
            reduction.decomposition.segments_overlapping(inst.voters[vj.voter].span()).iter().map(|s| s.scores[query]).max().unwrap_or(0)
        })
        .sum();
    let total: u64 = scores.iter().sum::<u64>() * n as u64;
    let least_needed = total.div_ceil(m as u64);

    let base = reduction.shapes_instance(0);
    check_p_structured(&base).map_err(|v| Error::Internal(format!("reduction output is not P-structured: {v}")))?;
    for &budget in lattice.iter().rev() {
        if budget > best_possible || budget < least_needed {
            continue;
        }
        let mut shapes = base.clone();
        shapes.machines = budget;
        let ps = PStructuredInstance::new(shapes, query, budget, lattice.clone())?;
        let Some(schedule) = dp_solve(&ps)? else { continue };
        let completion: Vec<Point> = reduction
            .jobs
            .iter()
            .zip(&schedule.placements)
            .map(|(vj, pl)| {
                vj.positions
                    .get(&(pl.start, pl.shape.clone()))
                    .map(|x| vec![x.clone()])
                    .ok_or_else(|| Error::Internal("scheduled shape has no representative position".into()))
            })
            .collect::<Result<_>>()?;
        return verified(inst, completion, Algorithm::ScheduleDp);
    }
    Ok(Verdict::no(Algorithm::ScheduleDp))
}

/// Single positive score: the queried candidate takes every voter that can
/// rank it first, the rest are spread by earliest-deadline assignment.
fn solve_single_winner(inst: &SpatialInstance) -> Result<Verdict> {
    let decomposition = compute_decomposition(&inst.candidates, &inst.rule, &inst.tiebreak)?;
    let query = inst.query;
    let m = inst.m();
    let ranges: Vec<(usize, usize)> = inst
        .voters
        .iter()
        .map(|v| {
            let top = |x: &Rational| decomposition.segment_of(x).ranking.0[0];
            (top(&v.span().lo), top(&v.span().hi))
        })
        .collect();
    let mut assigned: Vec<Option<usize>> = ranges.iter().map(|&(a, b)| (a <= query && query <= b).then_some(query)).collect();
    let budget = assigned.iter().flatten().count();

    let mut by_start: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (j, &(a, _)) in ranges.iter().enumerate() {
        if assigned[j].is_none() {
            by_start[a].push(j);
        }
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (c, starting) in by_start.iter().enumerate() {
        for &j in starting {
            pending.insert((ranges[j].1, j));
        }
        if pending.first().is_some_and(|&(end, _)| end < c) {
            return Ok(Verdict::no(Algorithm::PluralityAssignment));
        }
        if c == query {
            continue;
        }
        for _ in 0..budget {
            let Some((_, j)) = pending.pop_first() else { break };
            assigned[j] = Some(c);
        }
    }
    if !pending.is_empty() {
        return Ok(Verdict::no(Algorithm::PluralityAssignment));
    }
    let completion: Vec<Point> = inst
        .voters
        .iter()
        .zip(&assigned)
        .map(|(v, c)| {
            let c = c.expect("every voter assigned");
            decomposition
                .segments_overlapping(v.span())
                .iter()
                .find(|s| s.ranking.0[0] == c)
                .and_then(|s| s.representative(v.span()))
                .map(|x| vec![x])
                .ok_or_else(|| Error::Internal("assigned candidate is not reachable".into()))
        })
        .collect::<Result<_>>()?;
    verified(inst, completion, Algorithm::PluralityAssignment)
}
