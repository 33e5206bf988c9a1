use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{admissible_sums, Shape, ShapesInstance};
use crate::error::{Error as CrateError, Result};

/// Reason a job set fails to be P-structured.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureViolation {
    #[error("jobs {first} and {other} have different processing times")]
    UnequalProcessingTimes { first: usize, other: usize },
    #[error("job {job} disagrees with the shared shape set at interior start {start}")]
    NonGlobalInteriorSet { job: usize, start: usize },
    #[error("job {job} admits a shape at endpoint start {start} outside the shared set")]
    EndpointOutsideGlobal { job: usize, start: usize },
    #[error("jobs {a} and {b} share a deadline but their deadline-side shape sets are incomparable")]
    NoValidOrder { a: usize, b: usize },
}

impl StructureViolation {
    /// Which condition of the definition failed (1, 2 or 3).
    pub fn condition(&self) -> u8 {
        match self {
            StructureViolation::UnequalProcessingTimes { .. } => 1,
            StructureViolation::NonGlobalInteriorSet { .. } | StructureViolation::EndpointOutsideGlobal { .. } => 2,
            StructureViolation::NoValidOrder { .. } => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PStructure {
    pub p: usize,
    /// Shared shape set per start time, wherever some job has that start in its interior.
    pub global: BTreeMap<usize, BTreeSet<Shape>>,
    /// Job indices in processing order: deadline, then multi-start jobs by deadline-side set inclusion,
    /// then single-start jobs.
    pub order: Vec<usize>,
}

pub fn check_p_structured(instance: &ShapesInstance) -> std::result::Result<PStructure, StructureViolation> {
    let jobs = &instance.jobs;
    let p = jobs.first().map_or(1, |j| j.p);
    if let Some(other) = jobs.iter().position(|j| j.p != p) {
        return Err(StructureViolation::UnequalProcessingTimes { first: 0, other });
    }

    let empty = BTreeSet::new();
    let mut global: BTreeMap<usize, BTreeSet<Shape>> = BTreeMap::new();
    for (idx, job) in jobs.iter().enumerate() {
        for t in job.r + 1..job.last_start() {
            let set = job.shape_sets.get(&t).unwrap_or(&empty);
            match global.get(&t) {
                Some(g) if g != set => return Err(StructureViolation::NonGlobalInteriorSet { job: idx, start: t }),
                Some(_) => {}
                None => {
                    global.insert(t, set.clone());
                }
            }
        }
    }
    for (idx, job) in jobs.iter().enumerate() {
        for t in [job.r, job.last_start()] {
            if let (Some(g), Some(set)) = (global.get(&t), job.shape_sets.get(&t)) {
                if !set.is_subset(g) {
                    return Err(StructureViolation::EndpointOutsideGlobal { job: idx, start: t });
                }
            }
        }
    }

    let deadline_set = |idx: usize| jobs[idx].shape_sets.get(&jobs[idx].last_start()).unwrap_or(&empty);
    let mut order: Vec<usize> = (0..jobs.len()).collect();
    // A job with a single start can never be moved later, so it needs no inclusion and goes last.
    let single = |idx: usize| jobs[idx].r == jobs[idx].last_start();
    order.sort_by_key(|&idx| (jobs[idx].d, single(idx), deadline_set(idx).len(), idx));
    for w in order.windows(2) {
        let (a, b) = (w[0], w[1]);
        if jobs[a].d == jobs[b].d && !single(b) && !deadline_set(a).is_subset(deadline_set(b)) {
            return Err(StructureViolation::NoValidOrder { a, b });
        }
    }
    Ok(PStructure { p, global, order })
}

/// A P-structured job set together with the target slot and machine budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PStructuredInstance {
    pub instance: ShapesInstance,
    pub structure: PStructure,
    pub target: usize,
    pub budget: u64,
    pub lattice: Vec<u64>,
}

impl PStructuredInstance {
    pub fn new(instance: ShapesInstance, target: usize, budget: u64, lattice: Vec<u64>) -> Result<Self> {
        let structure = check_p_structured(&instance)
            .map_err(|v| CrateError::InvalidInput(format!("job set is not P-structured: {v}")))?;
        if lattice.binary_search(&budget).is_err() {
            return Err(CrateError::InvalidBudget { budget });
        }
        Ok(Self { instance, structure, target, budget, lattice })
    }

    /// Uses the sums of at most `n` shape entries as the admissible lattice.
    pub fn with_shape_lattice(instance: ShapesInstance, target: usize, budget: u64) -> Result<Self> {
        let lattice = structure_lattice(&instance);
        Self::new(instance, target, budget, lattice)
    }
}

/// Sums of at most `n` demand values occurring in any shape.
pub fn structure_lattice(instance: &ShapesInstance) -> Vec<u64> {
    let values: BTreeSet<u64> = instance
        .jobs
        .iter()
        .flat_map(|j| j.shape_sets.values().flatten().flatten().copied())
        .collect();
    admissible_sums(&values.into_iter().collect::<Vec<_>>(), instance.jobs.len())
}
