//! Seeded random instance generators used by the CLI, the benches and the tests.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{rat, ratio, CandidateSet, Interval, Point, ScoringRule, SpatialInstance, TieBreak, VoterSpec};
use crate::shapes::{check_p_structured, structure_lattice, Job, PStructuredInstance, Shape, ShapesInstance};
use crate::weighted::PartitionInstance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct ScheduleParams {
    pub max_p: usize,
    pub max_jobs: usize,
    pub max_horizon: usize,
    pub max_demand: u64,
}

impl Default for ScheduleParams {
    fn default() -> Self {
        Self { max_p: 2, max_jobs: 5, max_horizon: 7, max_demand: 2 }
    }
}

/// Random P-structured job set with a target slot and a budget drawn from its lattice.
pub fn random_p_structured<R: Rng>(rng: &mut R, params: ScheduleParams) -> PStructuredInstance {
    loop {
        let p = rng.gen_range(1..=params.max_p);
        let horizon = rng.gen_range(p..=params.max_horizon.max(p));
        let global: Vec<Vec<Shape>> = (0..=horizon - p)
            .map(|_| {
                let count = rng.gen_range(1..=3);
                let mut set: BTreeSet<Shape> = BTreeSet::new();
                for _ in 0..count {
                    let mut f: Shape = (0..p).map(|_| rng.gen_range(0..=params.max_demand)).collect();
                    if f.iter().all(|&x| x == 0) {
                        f[rng.gen_range(0..p)] = 1;
                    }
                    set.insert(f);
                }
                set.into_iter().collect()
            })
            .collect();
        let n = rng.gen_range(1..=params.max_jobs);
        let jobs: Vec<Job> = (0..n)
            .map(|_| {
                let r = rng.gen_range(0..=horizon - p);
                let d = rng.gen_range(r + p..=horizon);
                let last = d - p;
                let sets: BTreeMap<usize, BTreeSet<Shape>> = (r..=last)
                    .map(|t| {
                        let g = &global[t];
                        let set: BTreeSet<Shape> = if t == r || t == last {
                            let k = rng.gen_range(1..=g.len());
                            g.choose_multiple(rng, k).cloned().collect()
                        } else {
                            g.iter().cloned().collect()
                        };
                        (t, set)
                    })
                    .collect();
                Job::new(p, r, d, sets).expect("generated job is well formed")
            })
            .collect();
        let max_machines = params.max_demand * n as u64;
        let instance = ShapesInstance::new(jobs, max_machines);
        if check_p_structured(&instance).is_err() {
            continue;
        }
        let lattice = structure_lattice(&instance);
        let budget = lattice[rng.gen_range(0..lattice.len())];
        let target = rng.gen_range(0..horizon);
        let mut instance = instance;
        instance.machines = budget.max(1);
        return PStructuredInstance::new(instance, target, budget, lattice).expect("structured by construction");
    }
}

#[derive(Debug, Clone)]
pub struct SpatialParams {
    pub dim: usize,
    pub max_m: usize,
    pub max_n: usize,
    /// Coordinates are drawn from `0..=coord`.
    pub coord: i64,
    pub rules: Vec<ScoringRule>,
    /// Weights are drawn from `1..=w` when set.
    pub max_weight: Option<u64>,
    pub random_tiebreak: bool,
}

impl Default for SpatialParams {
    fn default() -> Self {
        Self {
            dim: 1,
            max_m: 5,
            max_n: 5,
            coord: 20,
            rules: vec![ScoringRule::Plurality, ScoringRule::KApproval(2), ScoringRule::Borda],
            max_weight: None,
            random_tiebreak: true,
        }
    }
}

fn random_candidates<R: Rng>(rng: &mut R, m: usize, dim: usize, coord: i64) -> CandidateSet {
    if dim == 1 {
        let mut xs: Vec<i64> = (0..=coord).collect::<Vec<_>>().choose_multiple(rng, m).copied().collect();
        xs.sort_unstable();
        return CandidateSet::on_line(xs.into_iter().map(rat).collect()).expect("distinct sorted positions");
    }
    let mut points: BTreeSet<Vec<i64>> = BTreeSet::new();
    while points.len() < m {
        points.insert((0..dim).map(|_| rng.gen_range(0..=coord)).collect());
    }
    let mut points: Vec<Point> = points.into_iter().map(|p| p.into_iter().map(rat).collect()).collect();
    points.shuffle(rng);
    CandidateSet::new(points).expect("distinct positions")
}

fn random_box<R: Rng>(rng: &mut R, dim: usize, coord: i64) -> Vec<Interval> {
    (0..dim)
        .map(|_| {
            let a = rng.gen_range(-2..=coord + 2);
            let b = if rng.gen_bool(0.2) { a } else { rng.gen_range(-2..=coord + 2) };
            Interval::new(rat(a.min(b)), rat(a.max(b))).expect("ordered")
        })
        .collect()
}

/// Random spatial instance with integer positions and integer box endpoints.
pub fn random_spatial<R: Rng>(rng: &mut R, params: &SpatialParams) -> SpatialInstance {
    loop {
        let rule = params.rules.choose(rng).expect("at least one rule").clone();
        let m = rng.gen_range(2..=params.max_m.max(2));
        if !rule.is_approval() && rule.score_vector(m).is_err() {
            continue;
        }
        let candidates = random_candidates(rng, m, params.dim, params.coord);
        let n = rng.gen_range(1..=params.max_n.max(1));
        let voters = (0..n)
            .map(|_| {
                let mut v = VoterSpec::new(random_box(rng, params.dim, params.coord));
                if let Some(w) = params.max_weight {
                    v = v.with_weight(rat(rng.gen_range(1..=w) as i64));
                }
                if rule.is_approval() {
                    v = v.with_radius(ratio(rng.gen_range(0..=4 * params.coord), rng.gen_range(1..=4)));
                }
                v
            })
            .collect();
        let tiebreak = if params.random_tiebreak {
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(rng);
            TieBreak::from_order(&order).expect("permutation")
        } else {
            TieBreak::lower_index(m)
        };
        let query = rng.gen_range(0..m);
        if let Ok(inst) = SpatialInstance::new(candidates, voters, rule, tiebreak, query) {
            return inst;
        }
    }
}

pub fn random_partition<R: Rng>(rng: &mut R, max_len: usize, max_value: u64) -> PartitionInstance {
    let len = rng.gen_range(1..=max_len.max(1));
    PartitionInstance::new((0..len).map(|_| rng.gen_range(1..=max_value.max(1))).collect()).expect("positive values")
}

/// Random graph on `n` vertices with each edge present with probability 1/2.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(0.5)).collect()
}
