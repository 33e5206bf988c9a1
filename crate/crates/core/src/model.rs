//! Exact-arithmetic domain model: candidates, voters with interval boxes,
//! scoring rules, derived rankings and tallies.
//!
//! Every coordinate, bound, weight and radius is a [`Rational`]. Distances are
//! only ever compared through squared norms, so no solver path leaves the
//! rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Point = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-0.25"` or `"7/2"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['-', '+']);
        if !int_digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let whole: BigInt = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            int_digits.parse().ok()?
        };
        let frac: BigInt = frac_part.parse().ok()?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(n))
}

/// Canonical text form: `n` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn squared_distance(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| {
            let diff = x - y;
            acc + &diff * &diff
        })
}

/// A closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "interval lower bound {} exceeds upper bound {}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat(2)
    }
}

/// Candidate positions. Candidates are addressed by 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    positions: Vec<Point>,
    dim: usize,
}

impl CandidateSet {
    pub fn new(positions: Vec<Point>) -> Result<Self> {
        if positions.len() < 2 {
            return Err(Error::InvalidInput("at least two candidates are required".into()));
        }
        let dim = positions[0].len();
        if dim == 0 {
            return Err(Error::InvalidInput("candidate dimension must be at least 1".into()));
        }
        if positions.iter().any(|p| p.len() != dim) {
            return Err(Error::InvalidInput("candidates have inconsistent dimensions".into()));
        }
        if dim == 1 && positions.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(Error::InvalidInput(
                "one-dimensional candidate positions must be strictly increasing".into(),
            ));
        }
        Ok(Self { positions, dim })
    }

    /// Convenience constructor for the one-dimensional case.
    pub fn on_line(xs: Vec<Rational>) -> Result<Self> {
        Self::new(xs.into_iter().map(|x| vec![x]).collect())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn position(&self, c: usize) -> &Point {
        &self.positions[c]
    }

    pub fn positions(&self) -> &[Point] {
        &self.positions
    }

    /// 1-D coordinate of candidate `c`. Only meaningful when `dim() == 1`.
    pub fn coord(&self, c: usize) -> &Rational {
        &self.positions[c][0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterSpec {
    pub bounds: Vec<Interval>,
    pub weight: Rational,
    pub radius: Option<Rational>,
}

impl VoterSpec {
    pub fn new(bounds: Vec<Interval>) -> Self {
        Self { bounds, weight: Rational::one(), radius: None }
    }

    pub fn on_line(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(Self::new(vec![Interval::new(lo, hi)?]))
    }

    pub fn with_weight(mut self, weight: Rational) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_radius(mut self, radius: Rational) -> Self {
        self.radius = Some(radius);
        self
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn contains(&self, point: &[Rational]) -> bool {
        point.len() == self.bounds.len() && self.bounds.iter().zip(point).all(|(iv, x)| iv.contains(x))
    }

    /// True when the box is a single point.
    pub fn is_point(&self) -> bool {
        self.bounds.iter().all(Interval::is_degenerate)
    }

    pub fn center(&self) -> Point {
        self.bounds.iter().map(Interval::midpoint).collect()
    }

    /// 1-D interval of the box. Only meaningful when `dim() == 1`.
    pub fn span(&self) -> &Interval {
        &self.bounds[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "param")]
pub enum ScoringRule {
    Plurality,
    Veto,
    KApproval(usize),
    TruncatedBorda(usize),
    Borda,
    /// Explicit positive prefix; the vector for `m` candidates is padded with zeros.
    Vector(Vec<u64>),
    Approval,
}

impl ScoringRule {
    pub fn is_approval(&self) -> bool {
        matches!(self, ScoringRule::Approval)
    }

    pub fn score_vector(&self, m: usize) -> Result<Vec<u64>> {
        if m < 2 {
            return Err(Error::InvalidRule(format!("{m} candidates; at least two required")));
        }
        let mut v = vec![0u64; m];
        match self {
            ScoringRule::Plurality => v[0] = 1,
            ScoringRule::Veto => v[..m - 1].iter_mut().for_each(|s| *s = 1),
            ScoringRule::KApproval(k) => {
                if *k == 0 || *k >= m {
                    return Err(Error::InvalidRule(format!("{k}-approval needs 1 <= k <= m-1 (m = {m})")));
                }
                v[..*k].iter_mut().for_each(|s| *s = 1);
            }
            ScoringRule::TruncatedBorda(k) => {
                if *k == 0 || *k >= m {
                    return Err(Error::InvalidRule(format!(
                        "{k}-truncated Borda needs 1 <= k <= m-1 (m = {m})"
                    )));
                }
                for (i, s) in v[..*k].iter_mut().enumerate() {
                    *s = (*k - i) as u64;
                }
            }
            ScoringRule::Borda => {
                for (i, s) in v.iter_mut().enumerate() {
                    *s = (m - 1 - i) as u64;
                }
            }
            ScoringRule::Vector(prefix) => {
                if prefix.len() > m {
                    return Err(Error::InvalidRule(format!(
                        "score vector has {} entries but only {m} candidates",
                        prefix.len()
                    )));
                }
                v[..prefix.len()].copy_from_slice(prefix);
            }
            ScoringRule::Approval => {
                return Err(Error::InvalidRule("approval voting has no positional score vector".into()))
            }
        }
        if v.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidRule("score vector must be nonincreasing".into()));
        }
        if v[0] <= v[m - 1] {
            return Err(Error::InvalidRule("first score must exceed the last score".into()));
        }
        Ok(v)
    }

    /// Number of positive entries when the vector for `m` ends in zero.
    pub fn truncation(&self, m: usize) -> Option<usize> {
        let v = self.score_vector(m).ok()?;
        (v[m - 1] == 0).then(|| v.iter().filter(|&&s| s > 0).count())
    }
}

impl fmt::Display for ScoringRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoringRule::Plurality => write!(f, "plurality"),
            ScoringRule::Veto => write!(f, "veto"),
            ScoringRule::KApproval(k) => write!(f, "k-approval {k}"),
            ScoringRule::TruncatedBorda(k) => write!(f, "truncated-borda {k}"),
            ScoringRule::Borda => write!(f, "borda"),
            ScoringRule::Vector(v) => {
                write!(f, "vector")?;
                for s in v {
                    write!(f, " {s}")?;
                }
                Ok(())
            }
            ScoringRule::Approval => write!(f, "approval"),
        }
    }
}

/// Fixed priority among candidates, consulted on equal distances.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TieBreak {
    /// `rank[c]` is the priority of candidate `c`; lower wins.
    rank: Vec<usize>,
}

impl TieBreak {
    pub fn lower_index(m: usize) -> Self {
        Self { rank: (0..m).collect() }
    }

    pub fn higher_index(m: usize) -> Self {
        Self { rank: (0..m).rev().collect() }
    }

    /// Builds the tie-break from a priority order, most favored first.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let m = order.len();
        let mut rank = vec![usize::MAX; m];
        for (pos, &c) in order.iter().enumerate() {
            if c >= m || rank[c] != usize::MAX {
                return Err(Error::InvalidInput("tie-break order is not a permutation".into()));
            }
            rank[c] = pos;
        }
        Ok(Self { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, c: usize) -> usize {
        self.rank[c]
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.rank.len()).collect();
        order.sort_by_key(|&c| self.rank[c]);
        order
    }

    pub fn is_default(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r)
    }

    /// Tie-break of the mirrored line where candidate `c` becomes `m - 1 - c`.
    pub fn mirrored(&self) -> Self {
        let m = self.rank.len();
        Self { rank: (0..m).map(|c| self.rank[m - 1 - c]).collect() }
    }
}

/// A strict order over candidates, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ranking(pub Vec<usize>);

impl Ranking {
    pub fn identity(m: usize) -> Self {
        Ranking((0..m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self, k: usize) -> &[usize] {
        &self.0[..k]
    }

    /// `position[c]` = rank of candidate `c` (0 = first).
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &c) in self.0.iter().enumerate() {
            pos[c] = i;
        }
        pos
    }
}

/// Partial spatial profile plus the queried candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialInstance {
    pub candidates: CandidateSet,
    pub voters: Vec<VoterSpec>,
    pub rule: ScoringRule,
    pub tiebreak: TieBreak,
    pub query: usize,
}

impl SpatialInstance {
    pub fn new(
        candidates: CandidateSet,
        voters: Vec<VoterSpec>,
        rule: ScoringRule,
        tiebreak: TieBreak,
        query: usize,
    ) -> Result<Self> {
        let m = candidates.len();
        let d = candidates.dim();
        if query >= m {
            return Err(Error::InvalidInput(format!("query candidate {} out of range", query + 1)));
        }
        if tiebreak.len() != m {
            return Err(Error::InvalidInput("tie-break order must cover every candidate".into()));
        }
        if !rule.is_approval() {
            rule.score_vector(m)?;
        }
        for (j, v) in voters.iter().enumerate() {
            if v.dim() != d {
                return Err(Error::InvalidInput(format!("voter {} has dimension {} (expected {d})", j + 1, v.dim())));
            }
            if v.bounds.iter().any(|iv| iv.lo > iv.hi) {
                return Err(Error::InvalidInput(format!("voter {} has an empty interval", j + 1)));
            }
            if !v.weight.is_positive() {
                return Err(Error::InvalidInput(format!("voter {} has a nonpositive weight", j + 1)));
            }
            match (&v.radius, rule.is_approval()) {
                (None, true) => {
                    return Err(Error::InvalidInput(format!("voter {} needs an approval radius", j + 1)))
                }
                (Some(_), false) => {
                    return Err(Error::InvalidInput(format!(
                        "voter {} has a radius but the rule is positional",
                        j + 1
                    )))
                }
                (Some(r), true) if r.is_negative() => {
                    return Err(Error::InvalidInput(format!("voter {} has a negative radius", j + 1)))
                }
                _ => {}
            }
        }
        Ok(Self { candidates, voters, rule, tiebreak, query })
    }

    pub fn m(&self) -> usize {
        self.candidates.len()
    }

    pub fn n(&self) -> usize {
        self.voters.len()
    }

    pub fn dim(&self) -> usize {
        self.candidates.dim()
    }

    pub fn score_vector(&self) -> Result<Vec<u64>> {
        self.rule.score_vector(self.m())
    }

    /// True when voters carry different weights.
    pub fn is_weighted(&self) -> bool {
        self.voters.windows(2).any(|w| w[0].weight != w[1].weight)
    }

    pub fn with_query(&self, query: usize) -> Result<Self> {
        Self::new(self.candidates.clone(), self.voters.clone(), self.rule.clone(), self.tiebreak.clone(), query)
    }
}

/// Ranks candidates by squared distance from `point`, ties by `tiebreak`.
pub fn derive_ranking(point: &[Rational], candidates: &CandidateSet, tiebreak: &TieBreak) -> Result<Ranking> {
    if point.len() != candidates.dim() {
        return Err(Error::InvalidInput(format!(
            "point has dimension {} but candidates have dimension {}",
            point.len(),
            candidates.dim()
        )));
    }
    let dist: Vec<Rational> = candidates.positions().iter().map(|c| squared_distance(point, c)).collect();
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&a, &b| match dist[a].cmp(&dist[b]) {
        Ordering::Equal => tiebreak.rank(a).cmp(&tiebreak.rank(b)),
        o => o,
    });
    Ok(Ranking(order))
}

/// Per-candidate positional scores of one ranking.
pub fn score_of(ranking: &Ranking, scores: &[u64]) -> Vec<u64> {
    let mut out = vec![0; ranking.len()];
    for (i, &c) in ranking.0.iter().enumerate() {
        out[c] = scores[i];
    }
    out
}

/// Approval vector of a voter at `point` with radius `radius` (boundary inclusive).
pub fn approval_at(point: &[Rational], candidates: &CandidateSet, radius: &Rational) -> Vec<u64> {
    let r2 = radius * radius;
    candidates
        .positions()
        .iter()
        .map(|c| u64::from(squared_distance(point, c) <= r2))
        .collect()
}

/// Votes cast by voter `j` of `instance` at `point` (unweighted).
pub fn vote_at(instance: &SpatialInstance, j: usize, point: &[Rational]) -> Result<Vec<u64>> {
    if instance.rule.is_approval() {
        let radius = instance.voters[j]
            .radius
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("approval voter without radius".into()))?;
        if point.len() != instance.dim() {
            return Err(Error::InvalidInput("point dimension mismatch".into()));
        }
        Ok(approval_at(point, &instance.candidates, radius))
    } else {
        let ranking = derive_ranking(point, &instance.candidates, &instance.tiebreak)?;
        Ok(score_of(&ranking, &instance.score_vector()?))
    }
}

/// Weighted totals of a full completion. Every point must lie in its voter's box.
pub fn tally(instance: &SpatialInstance, completion: &[Point]) -> Result<Vec<Rational>> {
    if completion.len() != instance.n() {
        return Err(Error::InvalidCompletion(format!(
            "{} positions for {} voters",
            completion.len(),
            instance.n()
        )));
    }
    let mut totals = vec![Rational::zero(); instance.m()];
    for (j, (voter, point)) in instance.voters.iter().zip(completion).enumerate() {
        if !voter.contains(point) {
            return Err(Error::InvalidCompletion(format!("position of voter {} lies outside its box", j + 1)));
        }
        let votes = vote_at(instance, j, point)?;
        add_weighted(&mut totals, &votes, &voter.weight);
    }
    Ok(totals)
}

pub fn add_weighted(totals: &mut [Rational], votes: &[u64], weight: &Rational) {
    for (t, &v) in totals.iter_mut().zip(votes) {
        if v != 0 {
            *t += weight * rat(v as i64);
        }
    }
}

/// True when `query` ties or beats every other total.
pub fn is_winner(totals: &[Rational], query: usize) -> bool {
    totals.iter().all(|t| t <= &totals[query])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[i64]) -> CandidateSet {
        CandidateSet::on_line(xs.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn score_vectors() {
        assert_eq!(ScoringRule::Borda.score_vector(4).unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(ScoringRule::Plurality.score_vector(3).unwrap(), vec![1, 0, 0]);
        assert_eq!(ScoringRule::TruncatedBorda(2).score_vector(3).unwrap(), vec![2, 1, 0]);
        assert_eq!(ScoringRule::Veto.score_vector(3).unwrap(), vec![1, 1, 0]);
        assert_eq!(ScoringRule::Vector(vec![12, 10, 8]).score_vector(5).unwrap(), vec![12, 10, 8, 0, 0]);
        assert!(matches!(ScoringRule::KApproval(3).score_vector(3), Err(Error::InvalidRule(_))));
        assert!(ScoringRule::Vector(vec![1, 2]).score_vector(3).is_err());
        assert!(ScoringRule::Vector(vec![2, 2]).score_vector(2).is_err());
        assert_eq!(ScoringRule::Borda.truncation(4), Some(3));
        assert_eq!(ScoringRule::Vector(vec![2, 1, 1]).truncation(3), None);
    }

    #[test]
    fn rankings() {
        let c = line(&[0, 10]);
        let tb = TieBreak::lower_index(2);
        assert_eq!(derive_ranking(&[rat(0)], &c, &tb).unwrap().0, vec![0, 1]);
        assert_eq!(derive_ranking(&[rat(5)], &c, &tb).unwrap().0, vec![0, 1]);
        assert_eq!(derive_ranking(&[rat(5)], &c, &TieBreak::higher_index(2)).unwrap().0, vec![1, 0]);
        let c3 = line(&[0, 1, 4]);
        let r = derive_ranking(&[ratio(13, 5)], &c3, &TieBreak::lower_index(3)).unwrap();
        assert_eq!(r.0, vec![2, 1, 0]);
        assert!(derive_ranking(&[rat(0), rat(1)], &c3, &TieBreak::lower_index(3)).is_err());
    }

    #[test]
    fn positional_scores() {
        assert_eq!(score_of(&Ranking(vec![1, 0, 2]), &[2, 1, 0]), vec![1, 2, 0]);
        assert_eq!(score_of(&Ranking(vec![0, 1]), &[1, 0]), vec![1, 0]);
        assert_eq!(score_of(&Ranking(vec![3, 2, 1, 0]), &[3, 2, 1, 0]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn tallies() {
        let c = line(&[0, 1, 4]);
        let v = VoterSpec::on_line(rat(0), rat(2)).unwrap();
        let inst = SpatialInstance::new(c.clone(), vec![v.clone()], ScoringRule::Borda, TieBreak::lower_index(3), 0)
            .unwrap();
        let t = tally(&inst, &[vec![rat(2)]]).unwrap();
        let expected = score_of(&derive_ranking(&[rat(2)], &c, &inst.tiebreak).unwrap(), &[2, 1, 0]);
        assert_eq!(t, expected.iter().map(|&s| rat(s as i64)).collect::<Vec<_>>());

        let heavy = v.clone().with_weight(ratio(7, 2));
        let inst = SpatialInstance::new(c.clone(), vec![heavy], ScoringRule::Plurality, TieBreak::lower_index(3), 0)
            .unwrap();
        assert_eq!(tally(&inst, &[vec![rat(0)]]).unwrap(), vec![ratio(7, 2), rat(0), rat(0)]);
        assert!(matches!(tally(&inst, &[vec![rat(3)]]), Err(Error::InvalidCompletion(_))));

        let ap = VoterSpec::on_line(rat(1), rat(1)).unwrap().with_radius(rat(0));
        let inst = SpatialInstance::new(c, vec![ap], ScoringRule::Approval, TieBreak::lower_index(3), 0).unwrap();
        assert_eq!(tally(&inst, &[vec![rat(1)]]).unwrap(), vec![rat(0), rat(1), rat(0)]);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1/2"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("-1.25"), Some(ratio(-5, 4)));
        assert_eq!(parse_rational("-.5"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("4/-6"), Some(ratio(-2, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1."), None);
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
    }

    #[test]
    fn instance_validation() {
        let c = line(&[0, 1]);
        let v = VoterSpec::on_line(rat(0), rat(1)).unwrap();
        assert!(SpatialInstance::new(c.clone(), vec![v.clone()], ScoringRule::Approval, TieBreak::lower_index(2), 0)
            .is_err());
        assert!(SpatialInstance::new(c.clone(), vec![v.clone()], ScoringRule::Plurality, TieBreak::lower_index(2), 2)
            .is_err());
        assert!(SpatialInstance::new(
            c,
            vec![v.with_weight(rat(-1))],
            ScoringRule::Plurality,
            TieBreak::lower_index(2),
            0
        )
        .is_err());
        assert!(CandidateSet::on_line(vec![rat(1), rat(1)]).is_err());
        assert!(CandidateSet::new(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]).is_ok());
    }
}
