use super::{Placement, Schedule, Shape, ShapesInstance};
use crate::error::{Error, Result};

/// Default bound on the number of enumerated assignments.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Exhaustive search for a schedule within `budget` machines that keeps all
/// of them busy at slot `target`.
pub fn brute_force_schedule(instance: &ShapesInstance, budget: u64, target: usize, cap: u128) -> Result<Option<Schedule>> {
    search(instance, budget, Some(target), cap)
}

/// Exhaustive search for any schedule within the instance's machine count.
pub fn brute_force_feasible(instance: &ShapesInstance, cap: u128) -> Result<Option<Schedule>> {
    search(instance, instance.machines, None, cap)
}

fn search(instance: &ShapesInstance, budget: u64, target: Option<usize>, cap: u128) -> Result<Option<Schedule>> {
    let options: Vec<Vec<(usize, &Shape)>> = instance
        .jobs
        .iter()
        .map(|j| j.shape_sets.iter().flat_map(|(&t, fs)| fs.iter().map(move |f| (t, f))).collect())
        .collect();
    let size = options.iter().try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128)).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::TooLarge { size, cap });
    }
    let mut busy = vec![0u64; instance.horizon().max(target.map_or(0, |t| t + 1))];
    let mut chosen = Vec::with_capacity(options.len());
    if dfs(&options, budget, target, &mut busy, &mut chosen) {
        let placements = chosen.into_iter().map(|(start, shape): (usize, &Shape)| Placement { start, shape: shape.clone() }).collect();
        return Ok(Some(Schedule { placements }));
    }
    Ok(None)
}

fn dfs<'a>(
    options: &[Vec<(usize, &'a Shape)>],
    budget: u64,
    target: Option<usize>,
    busy: &mut [u64],
    chosen: &mut Vec<(usize, &'a Shape)>,
) -> bool {
    let depth = chosen.len();
    if depth == options.len() {
        return target.is_none_or(|t| busy[t] == budget);
    }
    for &(start, shape) in &options[depth] {
        let fits = shape.iter().enumerate().all(|(i, &f)| busy[start + i] + f <= budget);
        if !fits {
            continue;
        }
        shape.iter().enumerate().for_each(|(i, &f)| busy[start + i] += f);
        chosen.push((start, shape));
        if dfs(options, budget, target, busy, chosen) {
            return true;
        }
        chosen.pop();
        shape.iter().enumerate().for_each(|(i, &f)| busy[start + i] -= f);
    }
    false
}
