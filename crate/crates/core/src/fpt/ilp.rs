use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::lp::{feasible_point, Cmp, Constraint};
use crate::model::{rat, Rational};

/// Interchangeable voters: same ballot set and same weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub vectors: Vec<Vec<u64>>,
    pub weight: Rational,
    pub voters: Vec<usize>,
}

impl Group {
    fn size(&self) -> usize {
        self.voters.len()
    }
}

struct Search<'a> {
    groups: &'a [Group],
    m: usize,
    order: Vec<usize>,
    /// Per group, vector indices by decreasing score of the queried candidate.
    vector_order: Vec<Vec<usize>>,
    /// `diff[g][v][c]` = weight * (z_c - z_query).
    diff: Vec<Vec<Vec<Rational>>>,
    /// `tail_min[g][i][c]` = min of `diff[g][·][c]` over vector_order[g][i..].
    tail_min: Vec<Vec<Vec<Rational>>>,
    /// `suffix[pos][c]` = least possible contribution of groups order[pos..].
    suffix: Vec<Vec<Rational>>,
    counts: Vec<Vec<usize>>,
}

/// Finds ballot counts per group (aligned with `Group::vectors`) under which the
/// queried candidate ties or beats every other candidate.
pub fn solve_counts(groups: &[Group], m: usize, query: usize) -> Option<Vec<Vec<usize>>> {
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&g| std::cmp::Reverse(groups[g].size()));
    let vector_order: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| {
            let mut idx: Vec<usize> = (0..g.vectors.len()).collect();
            idx.sort_by_key(|&v| std::cmp::Reverse(g.vectors[v][query]));
            idx
        })
        .collect();
    let diff: Vec<Vec<Vec<Rational>>> = groups
        .iter()
        .map(|g| {
            g.vectors
                .iter()
                .map(|z| (0..m).map(|c| &g.weight * (rat(z[c] as i64) - rat(z[query] as i64))).collect())
                .collect()
        })
        .collect();
    let tail_min: Vec<Vec<Vec<Rational>>> = (0..groups.len())
        .map(|g| {
            let vo = &vector_order[g];
            let mut out = vec![vec![Rational::zero(); m]; vo.len() + 1];
            for i in (0..vo.len()).rev() {
                out[i] = (0..m)
                    .map(|c| {
                        let here = diff[g][vo[i]][c].clone();
                        if i + 1 < vo.len() {
                            here.min(out[i + 1][c].clone())
                        } else {
                            here
                        }
                    })
                    .collect();
            }
            out
        })
        .collect();
    let mut suffix = vec![vec![Rational::zero(); m]; order.len() + 1];
    for pos in (0..order.len()).rev() {
        let g = order[pos];
        let n = rat(groups[g].size() as i64);
        suffix[pos] = (0..m).map(|c| &suffix[pos + 1][c] + &n * &tail_min[g][0][c]).collect();
    }
    let counts = groups.iter().map(|g| vec![0; g.vectors.len()]).collect();
    let mut s = Search { groups, m, order, vector_order, diff, tail_min, suffix, counts };
    let committed = vec![Rational::zero(); m];
    s.group(0, &committed).then_some(s.counts)
}

impl Search<'_> {
    fn bound_ok(&self, committed: &[Rational], extra: impl Fn(usize) -> Rational) -> bool {
        (0..self.m).all(|c| &committed[c] + extra(c) <= Rational::zero())
    }

    fn group(&mut self, pos: usize, committed: &[Rational]) -> bool {
        if pos == self.order.len() {
            return committed.iter().all(|x| x <= &Rational::zero());
        }
        if !self.bound_ok(committed, |c| self.suffix[pos][c].clone()) {
            return false;
        }
        if self.order.len() - pos >= 2 && !self.relaxation_feasible(pos, committed) {
            return false;
        }
        let g = self.order[pos];
        let n = self.groups[g].size();
        self.distribute(pos, 0, n, committed.to_vec())
    }

    fn distribute(&mut self, pos: usize, i: usize, remaining: usize, committed: Vec<Rational>) -> bool {
        let g = self.order[pos];
        let v = self.vector_order[g][i];
        let last = i + 1 == self.vector_order[g].len();
        let options: Vec<usize> = if last { vec![remaining] } else { (0..=remaining).rev().collect() };
        for k in options {
            let kk = rat(k as i64);
            let next: Vec<Rational> = (0..self.m).map(|c| &committed[c] + &kk * &self.diff[g][v][c]).collect();
            let rest = rat((remaining - k) as i64);
            let ok = self.bound_ok(&next, |c| {
                let within = if last { Rational::zero() } else { &rest * &self.tail_min[g][i + 1][c] };
                within + &self.suffix[pos + 1][c]
            });
            if !ok {
                continue;
            }
            self.counts[g][v] = k;
            let found = if last { self.group(pos + 1, &next) } else { self.distribute(pos, i + 1, remaining - k, next) };
            if found {
                return true;
            }
        }
        self.counts[g][v] = 0;
        false
    }

    fn relaxation_feasible(&self, pos: usize, committed: &[Rational]) -> bool {
        let cols: Vec<(usize, usize)> =
            self.order[pos..].iter().flat_map(|&g| (0..self.groups[g].vectors.len()).map(move |v| (g, v))).collect();
        let mut cons = Vec::new();
        for &g in &self.order[pos..] {
            let row = cols.iter().map(|&(h, _)| if h == g { Rational::one() } else { Rational::zero() }).collect();
            cons.push(Constraint::new(row, Cmp::Eq, rat(self.groups[g].size() as i64)));
        }
        for (c, done) in committed.iter().enumerate().take(self.m) {
            let row: Vec<Rational> = cols.iter().map(|&(g, v)| self.diff[g][v][c].clone()).collect();
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            cons.push(Constraint::new(row, Cmp::Le, -done.clone()));
        }
        feasible_point(cols.len(), &cons).is_some()
    }
}

/// Exhaustive variant that fixes the queried candidate's total first and
/// then requires every other total to stay at or below it.
pub fn solve_counts_explicit(groups: &[Group], m: usize, query: usize) -> Option<Vec<Vec<usize>>> {
    let mut reachable: BTreeSet<Rational> = BTreeSet::from([Rational::zero()]);
    for g in groups {
        for _ in 0..g.size() {
            reachable = reachable
                .iter()
                .flat_map(|s| g.vectors.iter().map(move |z| s + &g.weight * rat(z[query] as i64)))
                .collect();
        }
    }
    for budget in reachable.iter().rev() {
        let mut counts: Vec<Vec<usize>> = groups.iter().map(|g| vec![0; g.vectors.len()]).collect();
        let totals = vec![Rational::zero(); m];
        if explicit(groups, query, budget, 0, 0, groups.first().map_or(0, Group::size), totals, &mut counts) {
            return Some(counts);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn explicit(
    groups: &[Group],
    query: usize,
    budget: &Rational,
    g: usize,
    v: usize,
    remaining: usize,
    totals: Vec<Rational>,
    counts: &mut [Vec<usize>],
) -> bool {
    if totals.iter().enumerate().any(|(c, t)| c != query && t > budget) || &totals[query] > budget {
        return false;
    }
    if g == groups.len() {
        return &totals[query] == budget;
    }
    let group = &groups[g];
    let last = v + 1 == group.vectors.len();
    let options: Vec<usize> = if last { vec![remaining] } else { (0..=remaining).collect() };
    for k in options {
        let kk = rat(k as i64);
        let next: Vec<Rational> =
            totals.iter().zip(&group.vectors[v]).map(|(t, &z)| t + &group.weight * &kk * rat(z as i64)).collect();
        counts[g][v] = k;
        let found = if last {
            let next_size = groups.get(g + 1).map_or(0, Group::size);
            explicit(groups, query, budget, g + 1, 0, next_size, next, counts)
        } else {
            explicit(groups, query, budget, g, v + 1, remaining - k, next, counts)
        };
        if found {
            return true;
        }
    }
    counts[g][v] = 0;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(vectors: &[&[u64]], size: usize) -> Group {
        Group { vectors: vectors.iter().map(|v| v.to_vec()).collect(), weight: Rational::one(), voters: (0..size).collect() }
    }

    #[test]
    fn forced_loss() {
        let g = [group(&[&[1, 0]], 2), group(&[&[0, 1]], 3)];
        assert!(solve_counts(&g, 2, 0).is_none());
        assert!(solve_counts_explicit(&g, 2, 0).is_none());
        assert!(solve_counts(&g, 2, 1).is_some());
    }

    #[test]
    fn balancing_required() {
        // Three voters split between candidates 0 and 1 always hand one of them two votes.
        let g = [group(&[&[1, 0, 0], &[0, 1, 0]], 3), group(&[&[0, 0, 1]], 1)];
        assert!(solve_counts(&g, 3, 2).is_none());
        let g = [group(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 3), group(&[&[1, 0, 0]], 1)];
        let counts = solve_counts(&g, 3, 2).unwrap();
        assert!(counts[0][2] >= 2);
        assert!(solve_counts_explicit(&g, 3, 2).is_some());
    }
}
