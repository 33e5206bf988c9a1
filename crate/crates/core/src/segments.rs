//! One-dimensional decomposition of the axis into maximal pieces over which
//! the distance-induced ranking is constant.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::model::{derive_ranking, rat, score_of, CandidateSet, Interval, Ranking, Rational, ScoringRule, TieBreak};

/// Finite end of a segment; `closed` tells whether the end point belongs to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: Rational,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    /// `None` means unbounded.
    pub left: Option<Bound>,
    pub right: Option<Bound>,
    pub ranking: Ranking,
    /// Per-candidate scores of `ranking`.
    pub scores: Vec<u64>,
    /// A point strictly inside the segment (the point itself for point segments).
    pub witness: Rational,
    /// Lowest index among the top-k candidates (k-truncated rules only).
    pub z: Option<usize>,
    /// Scores of candidates `z, z+1, ..., z+k-1` (k-truncated rules only).
    pub shape: Option<Vec<u64>>,
}

impl Segment {
    pub fn contains(&self, x: &Rational) -> bool {
        let left_ok = match &self.left {
            None => true,
            Some(b) => x > &b.value || (x == &b.value && b.closed),
        };
        left_ok && self.ends_at_or_after(x)
    }

    fn ends_at_or_after(&self, x: &Rational) -> bool {
        match &self.right {
            None => true,
            Some(b) => x < &b.value || (x == &b.value && b.closed),
        }
    }

    pub fn is_point(&self) -> bool {
        matches!((&self.left, &self.right), (Some(l), Some(r)) if l.value == r.value)
    }

    /// Closure of `self ∩ iv`, or `None` when the intersection is empty.
    pub fn clip(&self, iv: &Interval) -> Option<Interval> {
        let lo = match &self.left {
            Some(b) if b.value > iv.lo => b.value.clone(),
            _ => iv.lo.clone(),
        };
        let hi = match &self.right {
            Some(b) if b.value < iv.hi => b.value.clone(),
            _ => iv.hi.clone(),
        };
        if lo > hi {
            return None;
        }
        if lo == hi && !(self.contains(&lo) && iv.contains(&lo)) {
            return None;
        }
        Some(Interval { lo, hi })
    }

    /// A point of `self ∩ iv`: the midpoint of the clipped interval.
    pub fn representative(&self, iv: &Interval) -> Option<Rational> {
        self.clip(iv).map(|c| c.midpoint())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub segments: Vec<Segment>,
    pub breakpoints: Vec<Rational>,
    pub score_vector: Vec<u64>,
    pub k: Option<usize>,
}

/// Builds the decomposition of the line for a positional rule.
pub fn compute_decomposition(
    candidates: &CandidateSet,
    rule: &ScoringRule,
    tiebreak: &TieBreak,
) -> Result<SegmentDecomposition> {
    if candidates.dim() != 1 {
        return Err(Error::Unsupported("segment decomposition needs one-dimensional candidates".into()));
    }
    if rule.is_approval() {
        return Err(Error::UnsupportedRule("segment decomposition needs a positional rule".into()));
    }
    let m = candidates.len();
    let score_vector = rule.score_vector(m)?;
    let k = rule.truncation(m);

    let mut breakpoints: Vec<Rational> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for h in i + 1..m {
            breakpoints.push((candidates.coord(i) + candidates.coord(h)) / rat(2));
        }
    }
    breakpoints.sort();
    breakpoints.dedup();

    let rank_at = |x: &Rational| derive_ranking(std::slice::from_ref(x), candidates, tiebreak);
    let make = |left: Option<Bound>, right: Option<Bound>, ranking: Ranking, witness: Rational| {
        let scores = score_of(&ranking, &score_vector);
        let (z, shape) = match k {
            Some(k) => {
                let z = ranking.top(k).iter().copied().min().unwrap_or(0);
                let shape = (z..z + k).map(|c| scores.get(c).copied().unwrap_or(0)).collect();
                (Some(z), Some(shape))
            }
            None => (None, None),
        };
        Segment { left, right, ranking, scores, witness, z, shape }
    };

    let first = &breakpoints[0];
    let last = &breakpoints[breakpoints.len() - 1];
    let mut segments = Vec::with_capacity(2 * breakpoints.len() + 1);
    let w0 = first - rat(1);
    segments.push(make(None, None, rank_at(&w0)?, w0));
    for (i, b) in breakpoints.iter().enumerate() {
        let open_witness = match breakpoints.get(i + 1) {
            Some(next) => (b + next) / rat(2),
            None => last + rat(1),
        };
        let open_ranking = rank_at(&open_witness)?;
        let at_b = rank_at(b)?;
        let closed = Bound { value: b.clone(), closed: true };
        let open = Bound { value: b.clone(), closed: false };
        let current = segments.last_mut().expect("nonempty");
        if at_b == current.ranking {
            current.right = Some(closed);
            segments.push(make(Some(open), None, open_ranking, open_witness));
        } else if at_b == open_ranking {
            current.right = Some(open);
            segments.push(make(Some(closed), None, open_ranking, open_witness));
        } else {
            current.right = Some(open.clone());
            segments.push(make(Some(closed.clone()), Some(closed), at_b, b.clone()));
            segments.push(make(Some(open), None, open_ranking, open_witness));
        }
    }
    Ok(SegmentDecomposition { segments, breakpoints, score_vector, k })
}

impl SegmentDecomposition {
    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn index_of(&self, x: &Rational) -> usize {
        self.segments.partition_point(|s| !s.ends_at_or_after(x))
    }

    pub fn segment_of(&self, x: &Rational) -> &Segment {
        &self.segments[self.index_of(x)]
    }

    /// Indices of the segments meeting `[iv.lo, iv.hi]`, in order.
    pub fn overlapping_range(&self, iv: &Interval) -> RangeInclusive<usize> {
        self.index_of(&iv.lo)..=self.index_of(&iv.hi)
    }

    pub fn segments_overlapping(&self, iv: &Interval) -> &[Segment] {
        &self.segments[self.overlapping_range(iv)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ratio;

    fn layout(xs: &[Rational]) -> CandidateSet {
        CandidateSet::on_line(xs.to_vec()).unwrap()
    }

    fn figure_layout() -> CandidateSet {
        layout(&[rat(-4), rat(-2), ratio(9, 2), rat(8)])
    }

    #[test]
    fn figure_segments() {
        let d = compute_decomposition(&figure_layout(), &ScoringRule::Borda, &TieBreak::lower_index(4)).unwrap();
        assert_eq!(d.len(), 7);
        let e2 = &d.segments[1];
        assert_eq!(e2.ranking.0, vec![1, 0, 2, 3]);
        assert_eq!(e2.z, Some(0));
        assert_eq!(e2.shape, Some(vec![2, 3, 1]));
        let zs: Vec<usize> = d.segments.iter().map(|s| s.z.unwrap()).collect();
        assert_eq!(zs, vec![0, 0, 0, 0, 1, 1, 1]);
    }

    #[test]
    fn two_candidates() {
        let c = layout(&[rat(0), rat(2)]);
        let d = compute_decomposition(&c, &ScoringRule::Plurality, &TieBreak::lower_index(2)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.breakpoints, vec![rat(1)]);
        assert_eq!(d.segments[0].ranking.0, vec![0, 1]);
        assert_eq!(d.segments[1].ranking.0, vec![1, 0]);
        assert_eq!(d.segment_of(&rat(1)).ranking.0, vec![0, 1]);
        let d = compute_decomposition(&c, &ScoringRule::Plurality, &TieBreak::higher_index(2)).unwrap();
        assert_eq!(d.segment_of(&rat(1)).ranking.0, vec![1, 0]);
        assert_eq!(d.segment_of(&rat(-100)).ranking.0, vec![0, 1]);
    }

    #[test]
    fn overlapping_segments() {
        let d = compute_decomposition(&figure_layout(), &ScoringRule::Borda, &TieBreak::lower_index(4)).unwrap();
        let p1 = Interval::new(ratio(-7, 5), rat(4)).unwrap();
        assert_eq!(d.overlapping_range(&p1), 1..=5);
        let point = Interval::point(ratio(1, 2));
        assert_eq!(d.segments_overlapping(&point).len(), 1);
        let all = Interval::new(rat(-100), rat(100)).unwrap();
        assert_eq!(d.segments_overlapping(&all).len(), 7);
        for s in d.segments_overlapping(&p1) {
            let t = s.representative(&p1).unwrap();
            assert!(s.contains(&t) && p1.contains(&t));
        }
    }

    #[test]
    fn coincident_midpoints_with_mixed_tiebreak() {
        let c = layout(&[rat(0), rat(1), rat(2), rat(3)]);
        let tb = TieBreak::from_order(&[3, 1, 2, 0]).unwrap();
        let d = compute_decomposition(&c, &ScoringRule::Plurality, &tb).unwrap();
        let mid = d.segment_of(&ratio(3, 2));
        assert!(mid.is_point());
        assert_eq!(mid.ranking.0, vec![1, 2, 3, 0]);
        assert!(d.len() <= 7);
    }

    #[test]
    fn point_clip() {
        let c = layout(&[rat(0), rat(2)]);
        let d = compute_decomposition(&c, &ScoringRule::Plurality, &TieBreak::lower_index(2)).unwrap();
        let touching = Interval::point(rat(1));
        assert!(d.segments[1].clip(&touching).is_none());
        assert_eq!(d.segments[0].representative(&touching), Some(rat(1)));
        let iv = Interval::new(rat(1), rat(3)).unwrap();
        assert_eq!(d.segments[1].representative(&iv), Some(rat(2)));
    }
}
