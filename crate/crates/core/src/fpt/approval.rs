use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::surd::{rational_between, Surd, SurdPoint};
use crate::error::{Error, Result};
use crate::model::{rat, CandidateSet, Interval, Rational, VoterSpec};

/// All approval ballots over `m` candidates.
pub fn approval_vectors(m: usize) -> Vec<Vec<u64>> {
    (0..1u64 << m).rev().map(|mask| (0..m).map(|c| (mask >> (m - 1 - c)) & 1).collect()).collect()
}

/// Ballots a voter can cast from inside its box, each with a realizing point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApprovalType {
    pub ballots: BTreeMap<Vec<u64>, SurdPoint>,
    /// False when the box was only sampled (dimension three and up).
    pub exact: bool,
}

pub fn approval_ballot(point: &SurdPoint, candidates: &CandidateSet, r2: &Rational) -> Vec<u64> {
    candidates
        .positions()
        .iter()
        .map(|c| u64::from(point.cmp_squared_distance(c, r2) != Ordering::Greater))
        .collect()
}

pub fn approval_type(voter: &VoterSpec, candidates: &CandidateSet) -> Result<ApprovalType> {
    let radius = voter.radius.as_ref().ok_or_else(|| Error::InvalidInput("approval voter without radius".into()))?;
    if radius.is_negative() {
        return Err(Error::InvalidInput("negative approval radius".into()));
    }
    if voter.dim() != candidates.dim() {
        return Err(Error::InvalidInput("voter and candidate dimensions differ".into()));
    }
    let r2 = radius * radius;
    let (points, exact) = match candidates.dim() {
        1 => (line_points(&voter.bounds[0], candidates, radius), true),
        2 => (plane_points(&voter.bounds, candidates, &r2), true),
        _ => (grid_points(&voter.bounds, candidates), false),
    };
    let mut ballots = BTreeMap::new();
    for p in points {
        ballots.entry(approval_ballot(&p, candidates, &r2)).or_insert(p);
    }
    Ok(ApprovalType { ballots, exact })
}

/// Whether the voter can approve exactly the candidates with `z[c] = 1`.
/// The flag is false when the answer is not guaranteed exact.
pub fn achievable_vote_approval(voter: &VoterSpec, candidates: &CandidateSet, z: &[u64]) -> Result<(bool, bool)> {
    if z.len() != candidates.len() || z.iter().any(|&v| v > 1) {
        return Err(Error::InvalidVector(format!("{z:?} is not an approval ballot")));
    }
    let t = approval_type(voter, candidates)?;
    Ok((t.ballots.contains_key(z), t.exact))
}

fn sorted_unique(mut xs: Vec<Surd>) -> Vec<Surd> {
    xs.sort();
    xs.dedup_by(|a, b| Ord::cmp(&*a, &*b) == Ordering::Equal);
    xs
}

/// Critical values plus one rational between each consecutive pair.
fn sweep_values(crit: Vec<Surd>, iv: &Interval) -> Vec<Surd> {
    let crit: Vec<Surd> = crit
        .into_iter()
        .filter(|s| s.cmp_rational(&iv.lo) != Ordering::Less && s.cmp_rational(&iv.hi) != Ordering::Greater)
        .collect();
    let crit = sorted_unique(crit);
    let mut out = Vec::with_capacity(2 * crit.len());
    for (i, s) in crit.iter().enumerate() {
        if i > 0 {
            out.push(Surd::rational(rational_between(&crit[i - 1], s)));
        }
        out.push(s.clone());
    }
    out
}

fn line_points(iv: &Interval, candidates: &CandidateSet, radius: &Rational) -> Vec<SurdPoint> {
    let mut crit = vec![Surd::rational(iv.lo.clone()), Surd::rational(iv.hi.clone())];
    for c in candidates.positions() {
        crit.push(Surd::rational(&c[0] - radius));
        crit.push(Surd::rational(&c[0] + radius));
    }
    sweep_values(crit, iv).into_iter().map(|s| SurdPoint::rational(&[s.a])).collect()
}

fn plane_points(bounds: &[Interval], candidates: &CandidateSet, r2: &Rational) -> Vec<SurdPoint> {
    let (bx, by) = (&bounds[0], &bounds[1]);
    let centers = candidates.positions();
    let mut xcrit = vec![Surd::rational(bx.lo.clone()), Surd::rational(bx.hi.clone())];
    let mut vertices: Vec<SurdPoint> = Vec::new();
    let root = |d: &Rational| -> Option<Rational> { (!d.is_negative()).then(|| d.clone()) };
    for c in centers {
        let (cx, cy) = (&c[0], &c[1]);
        xcrit.push(Surd::new(cx.clone(), rat(-1), r2.clone()));
        xcrit.push(Surd::new(cx.clone(), rat(1), r2.clone()));
        for edge in [&by.lo, &by.hi] {
            let dy = edge - cy;
            if let Some(q) = root(&(r2 - &dy * &dy)) {
                for s in [rat(-1), rat(1)] {
                    xcrit.push(Surd::new(cx.clone(), s.clone(), q.clone()));
                    vertices.push(SurdPoint { q: q.clone(), coords: vec![(cx.clone(), s), (edge.clone(), Rational::zero())] });
                }
            }
        }
    }
    for (i, c1) in centers.iter().enumerate() {
        for c2 in &centers[i + 1..] {
            let (dx, dy) = (&c2[0] - &c1[0], &c2[1] - &c1[1]);
            let l2 = &dx * &dx + &dy * &dy;
            if l2.is_zero() {
                continue;
            }
            let h2 = r2 - &l2 / rat(4);
            if h2.is_negative() {
                continue;
            }
            let q = h2 / &l2;
            let (mx, my) = ((&c1[0] + &c2[0]) / rat(2), (&c1[1] + &c2[1]) / rat(2));
            for s in [rat(-1), rat(1)] {
                let bxc = -(&dy * &s);
                xcrit.push(Surd::new(mx.clone(), bxc.clone(), q.clone()));
                vertices.push(SurdPoint { q: q.clone(), coords: vec![(mx.clone(), bxc), (my.clone(), &dx * &s)] });
            }
        }
    }

    let mut points: Vec<SurdPoint> = vertices.into_iter().filter(|v| v.within(bounds)).collect();
    for x in sweep_values(xcrit, bx) {
        let Some(x0) = x.as_rational() else { continue };
        let mut ycrit = vec![Surd::rational(by.lo.clone()), Surd::rational(by.hi.clone())];
        for c in centers {
            let dx = &x0 - &c[0];
            if let Some(q) = root(&(r2 - &dx * &dx)) {
                ycrit.push(Surd::new(c[1].clone(), rat(-1), q.clone()));
                ycrit.push(Surd::new(c[1].clone(), rat(1), q));
            }
        }
        for y in sweep_values(ycrit, by) {
            points.push(SurdPoint { q: y.q.clone(), coords: vec![(x0.clone(), Rational::zero()), (y.a, y.b)] });
        }
    }
    points
}

fn grid_points(bounds: &[Interval], candidates: &CandidateSet) -> Vec<SurdPoint> {
    const STEPS: i64 = 8;
    let d = bounds.len();
    let mut points = Vec::new();
    let total = (STEPS + 1).pow(d as u32);
    for idx in 0..total {
        let mut rest = idx;
        let p: Vec<Rational> = bounds
            .iter()
            .map(|iv| {
                let k = rest % (STEPS + 1);
                rest /= STEPS + 1;
                &iv.lo + (&iv.hi - &iv.lo) * Rational::new(k.into(), STEPS.into())
            })
            .collect();
        points.push(SurdPoint::rational(&p));
    }
    for c in candidates.positions() {
        let clipped: Vec<Rational> = c
            .iter()
            .zip(bounds)
            .map(|(x, iv)| x.clone().max(iv.lo.clone()).min(iv.hi.clone()))
            .collect();
        points.push(SurdPoint::rational(&clipped));
    }
    points
}
