use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lp::{maximize, Cmp, Constraint, LpOutcome};
use crate::model::{rat, CandidateSet, Point, Rational, TieBreak, VoterSpec};

/// Distinct per-candidate assignments of the score vector, in descending lexicographic order.
pub fn positional_vectors(scores: &[u64]) -> Vec<Vec<u64>> {
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    for &s in scores {
        *counts.entry(s).or_default() += 1;
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(scores.len());
    fill(&mut counts, scores.len(), &mut current, &mut out);
    out
}

fn fill(counts: &mut BTreeMap<u64, usize>, m: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if current.len() == m {
        out.push(current.clone());
        return;
    }
    let values: Vec<u64> = counts.iter().rev().filter(|(_, &c)| c > 0).map(|(&v, _)| v).collect();
    for v in values {
        *counts.get_mut(&v).expect("present") -= 1;
        current.push(v);
        fill(counts, m, current, out);
        current.pop();
        *counts.get_mut(&v).expect("present") += 1;
    }
}

fn check_vector(z: &[u64], scores: &[u64]) -> Result<()> {
    let mut a = z.to_vec();
    let mut b = scores.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(Error::InvalidVector(format!("{z:?} is not a permutation of the score vector {scores:?}")));
    }
    Ok(())
}

/// Whether some point of the voter's box ranks candidates so that candidate
/// `c` receives `z[c]`.
pub fn achievable_vote_positional(
    voter: &VoterSpec,
    candidates: &CandidateSet,
    z: &[u64],
    tiebreak: &TieBreak,
    scores: &[u64],
) -> Result<bool> {
    Ok(positional_witness(voter, candidates, z, tiebreak, scores)?.is_some())
}

/// A point of the box realizing `z`, if any.
pub fn positional_witness(
    voter: &VoterSpec,
    candidates: &CandidateSet,
    z: &[u64],
    tiebreak: &TieBreak,
    scores: &[u64],
) -> Result<Option<Point>> {
    check_vector(z, scores)?;
    let d = candidates.dim();
    if voter.dim() != d {
        return Err(Error::InvalidInput("voter and candidate dimensions differ".into()));
    }
    let m = candidates.len();
    let mut values: Vec<u64> = z.to_vec();
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.dedup();
    let groups: Vec<Vec<usize>> = values.iter().map(|v| (0..m).filter(|&c| z[c] == *v).collect()).collect();

    // Rows are (coefficients on y, constant, strict) meaning coeffs·y + constant (<|<=) 0.
    let lo: Vec<Rational> = voter.bounds.iter().map(|iv| iv.lo.clone()).collect();
    let mut rows: Vec<(Vec<Rational>, Rational, bool)> = Vec::new();
    for pair in groups.windows(2) {
        for &a in &pair[0] {
            for &b in &pair[1] {
                let (pa, pb) = (candidates.position(a), candidates.position(b));
                let strict = !tiebreak.prefers(a, b);
                let coeffs: Vec<Rational> = (0..d).map(|i| rat(2) * (&pb[i] - &pa[i])).collect();
                let mut constant: Rational = pa.iter().map(|x| x * x).sum::<Rational>() - pb.iter().map(|x| x * x).sum::<Rational>();
                for i in 0..d {
                    constant += &coeffs[i] * &lo[i];
                }
                if coeffs.iter().all(Zero::is_zero) {
                    if constant > Rational::zero() || (strict && constant.is_zero()) {
                        return Ok(None);
                    }
                    continue;
                }
                rows.push((coeffs, constant, strict));
            }
        }
    }

    let any_strict = rows.iter().any(|r| r.2);
    let n_vars = d + usize::from(any_strict);
    let mut cons: Vec<Constraint> = Vec::new();
    for (i, iv) in voter.bounds.iter().enumerate() {
        let mut coeffs = vec![Rational::zero(); n_vars];
        coeffs[i] = Rational::one();
        cons.push(Constraint::new(coeffs, Cmp::Le, &iv.hi - &iv.lo));
    }
    for (coeffs, constant, strict) in rows {
        let mut row = coeffs;
        if any_strict {
            row.push(if strict { Rational::one() } else { Rational::zero() });
        }
        cons.push(Constraint::new(row, Cmp::Le, -constant));
    }
    let mut objective = vec![Rational::zero(); n_vars];
    if any_strict {
        let mut cap = vec![Rational::zero(); n_vars];
        cap[d] = Rational::one();
        cons.push(Constraint::new(cap, Cmp::Le, Rational::one()));
        objective[d] = Rational::one();
    }
    match maximize(n_vars, &cons, &objective) {
        LpOutcome::Optimal { value, x } if !any_strict || value > Rational::zero() => {
            Ok(Some((0..d).map(|i| &lo[i] + &x[i]).collect()))
        }
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{derive_ranking, ratio, score_of, Interval};

    #[test]
    fn distinct_vectors() {
        assert_eq!(positional_vectors(&[1, 0, 0]), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(positional_vectors(&[2, 1, 0]).len(), 6);
        assert_eq!(positional_vectors(&[1, 1, 0, 0]).len(), 6);
    }

    #[test]
    fn box_left_of_midpoint() {
        let c = CandidateSet::on_line(vec![rat(0), rat(2)]).unwrap();
        let v = VoterSpec::on_line(rat(0), ratio(2, 5)).unwrap();
        let tb = TieBreak::lower_index(2);
        assert!(achievable_vote_positional(&v, &c, &[1, 0], &tb, &[1, 0]).unwrap());
        assert!(!achievable_vote_positional(&v, &c, &[0, 1], &tb, &[1, 0]).unwrap());
        assert!(matches!(achievable_vote_positional(&v, &c, &[1, 1], &tb, &[1, 0]), Err(Error::InvalidVector(_))));
    }

    #[test]
    fn tie_resolved_by_priority() {
        let c = CandidateSet::on_line(vec![rat(0), rat(2)]).unwrap();
        let v = VoterSpec::on_line(rat(1), rat(1)).unwrap();
        assert!(achievable_vote_positional(&v, &c, &[1, 0], &TieBreak::lower_index(2), &[1, 0]).unwrap());
        assert!(!achievable_vote_positional(&v, &c, &[0, 1], &TieBreak::lower_index(2), &[1, 0]).unwrap());
        assert!(achievable_vote_positional(&v, &c, &[0, 1], &TieBreak::higher_index(2), &[1, 0]).unwrap());
    }

    #[test]
    fn planar_witness_realizes_vector() {
        let c = CandidateSet::new(vec![vec![rat(0), rat(0)], vec![rat(4), rat(0)], vec![rat(0), rat(4)]]).unwrap();
        let v = VoterSpec::new(vec![Interval::new(rat(0), rat(4)).unwrap(), Interval::new(rat(0), rat(4)).unwrap()]);
        let tb = TieBreak::lower_index(3);
        let scores = [2, 1, 0];
        for z in positional_vectors(&scores) {
            let w = positional_witness(&v, &c, &z, &tb, &scores).unwrap().expect("all rankings reachable");
            assert!(v.contains(&w));
            assert_eq!(score_of(&derive_ranking(&w, &c, &tb).unwrap(), &scores), z);
        }
    }

    #[test]
    fn coincident_candidates() {
        let p = vec![rat(1), rat(1)];
        let c = CandidateSet::new(vec![p.clone(), p]).unwrap();
        let v = VoterSpec::new(vec![Interval::new(rat(0), rat(3)).unwrap(); 2]);
        let tb = TieBreak::lower_index(2);
        assert!(achievable_vote_positional(&v, &c, &[1, 0], &tb, &[1, 0]).unwrap());
        assert!(!achievable_vote_positional(&v, &c, &[0, 1], &tb, &[1, 0]).unwrap());
    }
}
