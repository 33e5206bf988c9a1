use std::collections::HashMap;

use super::structure::PStructuredInstance;
use super::{Job, Placement, Schedule, Shape};
use crate::error::{Error, Result};

/// Subproblem: the first `j` jobs (in processing order) released in `[t, t2)`,
/// each starting no later than `t2`, with capacities `caps` on the slots of
/// `[t, t+P) ∪ [t2, t2+P)` and the full budget on every other slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Cell {
    j: usize,
    t: usize,
    t2: usize,
    caps: Vec<u64>,
}

struct Choice {
    start: usize,
    shape: Shape,
    left: Cell,
    right: Cell,
}

/// Decides whether every machine of the budget can be busy at the target
/// slot without exceeding the budget anywhere, returning a witness schedule.
pub fn dp_solve(ps: &PStructuredInstance) -> Result<Option<Schedule>> {
    if ps.lattice.binary_search(&ps.budget).is_err() {
        return Err(Error::InvalidBudget { budget: ps.budget });
    }
    let jobs: Vec<&Job> = ps.structure.order.iter().map(|&i| &ps.instance.jobs[i]).collect();
    if jobs.is_empty() {
        return Ok((ps.budget == 0).then(|| Schedule { placements: vec![] }));
    }
    let mut solver = Solver {
        jobs,
        p: ps.structure.p,
        budget: ps.budget,
        target: ps.target,
        memo: HashMap::new(),
    };
    let t = solver.jobs.iter().map(|j| j.r).min().unwrap_or(0);
    let t2 = solver.jobs.iter().map(|j| j.last_start()).max().unwrap_or(0) + 1;
    let root = solver.canonical(solver.jobs.len(), t, t2, |_| ps.budget);
    if solver.value(&root) != Some(ps.budget) {
        return Ok(None);
    }
    let mut starts: Vec<Option<Placement>> = vec![None; solver.jobs.len()];
    solver.retrace(&root, &mut starts)?;
    let mut placements: Vec<Option<Placement>> = vec![None; starts.len()];
    for (pos, pl) in starts.into_iter().enumerate() {
        placements[ps.structure.order[pos]] = pl;
    }
    let placements = placements
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("witness reconstruction left a job unplaced".into()))?;
    Ok(Some(Schedule { placements }))
}

struct Solver<'a> {
    jobs: Vec<&'a Job>,
    p: usize,
    budget: u64,
    target: usize,
    memo: HashMap<Cell, Option<u64>>,
}

fn window(t: usize, t2: usize, p: usize) -> Vec<usize> {
    let mut slots: Vec<usize> = (t..t + p).chain(t2..t2 + p).collect();
    slots.sort_unstable();
    slots.dedup();
    slots
}

impl<'a> Solver<'a> {
    fn cap(&self, cell: &Cell, s: usize) -> u64 {
        match window(cell.t, cell.t2, self.p).binary_search(&s) {
            Ok(i) => cell.caps[i],
            Err(_) => self.budget,
        }
    }

    /// Builds the canonical key: `j` shrinks to the last job released in range and
    /// capacities are clamped to what the jobs in range could ever demand.
    fn canonical(&self, j: usize, t: usize, t2: usize, cap: impl Fn(usize) -> u64) -> Cell {
        let in_range = |q: &usize| (t..t2).contains(&self.jobs[*q].r);
        let j = (0..j).rev().find(in_range).map_or(0, |q| q + 1);
        let demand: u64 = (0..j).filter(in_range).map(|q| self.jobs[q].peak()).sum();
        let caps = window(t, t2, self.p).into_iter().map(|s| cap(s).min(demand)).collect();
        if j == 0 {
            return Cell { j: 0, t: 0, t2: 0, caps: vec![] };
        }
        Cell { j, t, t2, caps }
    }

    fn demand(&self, below: usize, lo: usize, hi: usize) -> u64 {
        (0..below).filter(|&q| (lo..hi).contains(&self.jobs[q].r)).map(|q| self.jobs[q].peak()).sum()
    }

    fn gain(&self, start: usize, shape: &Shape) -> u64 {
        if start <= self.target && self.target < start + self.p {
            shape[self.target - start]
        } else {
            0
        }
    }

    fn choices(&self, cell: &Cell) -> Vec<Choice> {
        let q = cell.j - 1;
        let job = self.jobs[q];
        let mut out = Vec::new();
        for start in job.r..=job.last_start().min(cell.t2) {
            let caps: Vec<u64> = (0..self.p).map(|i| self.cap(cell, start + i)).collect();
            let left_demand = self.demand(q, cell.t, start);
            let right_demand = self.demand(q, start, cell.t2);
            for shape in job.shapes_at(start) {
                if shape.iter().zip(&caps).any(|(f, c)| f > c) {
                    continue;
                }
                let spare: Vec<u64> = caps.iter().zip(shape).map(|(c, f)| c - f).collect();
                let hi: Vec<u64> = spare.iter().map(|&s| s.min(left_demand)).collect();
                let lo: Vec<u64> =
                    spare.iter().zip(&hi).map(|(&s, &h)| s.saturating_sub(right_demand).min(h)).collect();
                let mut split = lo.clone();
                loop {
                    let ml = split.clone();
                    let left = self.canonical(q, cell.t, start, |s| {
                        if s >= start {
                            ml[s - start]
                        } else {
                            self.cap(cell, s)
                        }
                    });
                    let right = self.canonical(q, start, cell.t2, |s| {
                        if (start..start + self.p).contains(&s) {
                            spare[s - start] - ml[s - start]
                        } else {
                            self.cap(cell, s)
                        }
                    });
                    out.push(Choice { start, shape: shape.clone(), left, right });
                    if !advance(&mut split, &lo, &hi) {
                        break;
                    }
                }
            }
        }
        out
    }

    fn value(&mut self, cell: &Cell) -> Option<u64> {
        if cell.j == 0 {
            return Some(0);
        }
        if let Some(v) = self.memo.get(cell) {
            return *v;
        }
        let mut best: Option<u64> = None;
        for ch in self.choices(cell) {
            let Some(l) = self.value(&ch.left) else { continue };
            let Some(r) = self.value(&ch.right) else { continue };
            let v = self.gain(ch.start, &ch.shape) + l + r;
            if best.is_none_or(|b| v > b) {
                best = Some(v);
            }
        }
        self.memo.insert(cell.clone(), best);
        best
    }

    fn retrace(&mut self, cell: &Cell, out: &mut [Option<Placement>]) -> Result<()> {
        if cell.j == 0 {
            return Ok(());
        }
        let target = self.value(cell).ok_or_else(|| Error::Internal("retrace of an infeasible cell".into()))?;
        for ch in self.choices(cell) {
            let (Some(l), Some(r)) = (self.value(&ch.left), self.value(&ch.right)) else { continue };
            if self.gain(ch.start, &ch.shape) + l + r == target {
                out[cell.j - 1] = Some(Placement { start: ch.start, shape: ch.shape });
                self.retrace(&ch.left, out)?;
                return self.retrace(&ch.right, out);
            }
        }
        Err(Error::Internal("no choice reproduces the cell value".into()))
    }
}

/// Odometer step over the box `lo..=hi`; false once exhausted.
fn advance(v: &mut [u64], lo: &[u64], hi: &[u64]) -> bool {
    for i in 0..v.len() {
        if v[i] < hi[i] {
            v[i] += 1;
            return true;
        }
        v[i] = lo[i];
    }
    false
}
