//! Scheduling with shapes: jobs that occupy a time-varying number of
//! identical machines, plus the structured dynamic program and an exhaustive
//! baseline.

mod brute;
mod dp;
mod reductions;
mod structure;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use brute::{brute_force_feasible, brute_force_schedule, DEFAULT_CAP};
pub use dp::dp_solve;
pub use reductions::{gen_from_binpacking, gen_from_independent_set};
pub use structure::{check_p_structured, structure_lattice, PStructure, PStructuredInstance, StructureViolation};

/// Machine demands `(M_0, ..., M_{p-1})` over consecutive unit slots.
pub type Shape = Vec<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub p: usize,
    pub r: usize,
    pub d: usize,
    /// Admissible shapes per start time; a missing start admits nothing.
    pub shape_sets: BTreeMap<usize, BTreeSet<Shape>>,
}

impl Job {
    pub fn new(p: usize, r: usize, d: usize, shape_sets: BTreeMap<usize, BTreeSet<Shape>>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInput("processing time must be positive".into()));
        }
        if r + p > d {
            return Err(Error::InvalidInput(format!("job window [{r}, {d}) is shorter than {p}")));
        }
        for (&t, shapes) in &shape_sets {
            if t < r || t + p > d {
                return Err(Error::InvalidInput(format!("start {t} lies outside [{r}, {}]", d - p)));
            }
            if shapes.iter().any(|f| f.len() != p) {
                return Err(Error::InvalidInput(format!("a shape at start {t} does not have length {p}")));
            }
        }
        Ok(Self { p, r, d, shape_sets })
    }

    /// Job whose every start in `[r, d-p]` admits the same shapes.
    pub fn uniform(p: usize, r: usize, d: usize, shapes: &[Shape]) -> Result<Self> {
        let set: BTreeSet<Shape> = shapes.iter().cloned().collect();
        let sets = (r..=d.saturating_sub(p)).map(|t| (t, set.clone())).collect();
        Self::new(p, r, d, sets)
    }

    pub fn last_start(&self) -> usize {
        self.d - self.p
    }

    pub fn shapes_at(&self, t: usize) -> impl Iterator<Item = &Shape> {
        self.shape_sets.get(&t).into_iter().flatten()
    }

    /// Largest demand of any shape at any offset.
    pub fn peak(&self) -> u64 {
        self.shape_sets.values().flatten().flat_map(|f| f.iter().copied()).max().unwrap_or(0)
    }

    /// Number of (start, shape) options.
    pub fn options(&self) -> usize {
        self.shape_sets.values().map(BTreeSet::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapesInstance {
    pub jobs: Vec<Job>,
    pub machines: u64,
}

impl ShapesInstance {
    pub fn new(jobs: Vec<Job>, machines: u64) -> Self {
        Self { jobs, machines }
    }

    /// One past the last slot any job may occupy.
    pub fn horizon(&self) -> usize {
        self.jobs.iter().map(|j| j.d).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub start: usize,
    pub shape: Shape,
}

/// One placement per job, in job order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub placements: Vec<Placement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BusyProfile {
    /// `busy[t]` = machines in use during `[t, t+1)`.
    pub busy: Vec<u64>,
    /// True when no slot exceeds the machine count.
    pub within_capacity: bool,
}

impl BusyProfile {
    pub fn at(&self, t: usize) -> u64 {
        self.busy.get(t).copied().unwrap_or(0)
    }
}

/// Per-slot machine usage of `schedule`, after checking every placement is admissible.
pub fn busy_profile(instance: &ShapesInstance, schedule: &Schedule) -> Result<BusyProfile> {
    if schedule.placements.len() != instance.jobs.len() {
        return Err(Error::InvalidSchedule(format!(
            "{} placements for {} jobs",
            schedule.placements.len(),
            instance.jobs.len()
        )));
    }
    let mut busy = vec![0u64; instance.horizon()];
    for (idx, (job, pl)) in instance.jobs.iter().zip(&schedule.placements).enumerate() {
        if pl.start < job.r || pl.start > job.last_start() {
            return Err(Error::InvalidSchedule(format!(
                "job {idx} starts at {} outside [{}, {}]",
                pl.start,
                job.r,
                job.last_start()
            )));
        }
        if !job.shape_sets.get(&pl.start).is_some_and(|s| s.contains(&pl.shape)) {
            return Err(Error::InvalidSchedule(format!("job {idx} uses a shape not admitted at start {}", pl.start)));
        }
        for (i, &demand) in pl.shape.iter().enumerate() {
            busy[pl.start + i] += demand;
        }
    }
    let within_capacity = busy.iter().all(|&b| b <= instance.machines);
    Ok(BusyProfile { busy, within_capacity })
}

/// All sums of at most `n` entries drawn with repetition from `values`, sorted.
pub fn admissible_sums(values: &[u64], n: usize) -> Vec<u64> {
    let mut vals: Vec<u64> = values.iter().copied().filter(|&v| v > 0).collect();
    vals.sort_unstable();
    vals.dedup();
    let mut reach: BTreeSet<u64> = BTreeSet::from([0]);
    let mut frontier: BTreeSet<u64> = reach.clone();
    for _ in 0..n {
        let next: BTreeSet<u64> = frontier
            .iter()
            .flat_map(|&s| vals.iter().map(move |&v| s + v))
            .filter(|s| !reach.contains(s))
            .collect();
        if next.is_empty() {
            break;
        }
        reach.extend(next.iter().copied());
        frontier = next;
    }
    reach.into_iter().collect()
}
