//! Fixed-parameter algorithm in the number of candidates: each voter is
//! reduced to the set of ballots it can cast from its box, and an integer
//! program over ballot counts decides the election.

mod approval;
mod ilp;
mod positional;
mod surd;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{add_weighted, is_winner, vote_at, Rational, SpatialInstance};
use crate::verdict::{Algorithm, Verdict, Witness};

pub use approval::{achievable_vote_approval, approval_ballot, approval_type, approval_vectors, ApprovalType};
pub use ilp::{solve_counts, solve_counts_explicit, Group};
pub use positional::{achievable_vote_positional, positional_vectors, positional_witness};
pub use surd::{rational_between, sign2, sign3, Surd, SurdPoint};

/// Ballots one voter can cast, each with a point of its box that casts it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoterOptions {
    pub ballots: BTreeMap<Vec<u64>, SurdPoint>,
    pub exact: bool,
}

impl VoterOptions {
    pub fn vectors(&self) -> Vec<Vec<u64>> {
        self.ballots.keys().cloned().collect()
    }
}

/// Every voting vector the rule allows for `m` candidates.
pub fn voting_vectors(instance: &SpatialInstance) -> Result<Vec<Vec<u64>>> {
    if instance.rule.is_approval() {
        if instance.m() > 16 {
            return Err(Error::TooLarge { size: 1u128 << instance.m(), cap: 1 << 16 });
        }
        Ok(approval_vectors(instance.m()))
    } else {
        if instance.m() > 9 {
            return Err(Error::TooLarge { size: (1..=instance.m() as u128).product(), cap: 362_880 });
        }
        Ok(positional_vectors(&instance.score_vector()?))
    }
}

pub fn voter_options(instance: &SpatialInstance, j: usize) -> Result<VoterOptions> {
    let voter = &instance.voters[j];
    if instance.rule.is_approval() {
        let t = approval_type(voter, &instance.candidates)?;
        return Ok(VoterOptions { ballots: t.ballots, exact: t.exact });
    }
    let scores = instance.score_vector()?;
    let mut ballots = BTreeMap::new();
    if voter.is_point() {
        let p: Vec<Rational> = voter.bounds.iter().map(|iv| iv.lo.clone()).collect();
        ballots.insert(vote_at(instance, j, &p)?, SurdPoint::rational(&p));
        return Ok(VoterOptions { ballots, exact: true });
    }
    for z in positional_vectors(&scores) {
        if let Some(p) = positional_witness(voter, &instance.candidates, &z, &instance.tiebreak, &scores)? {
            ballots.insert(z, SurdPoint::rational(&p));
        }
    }
    Ok(VoterOptions { ballots, exact: true })
}

/// Voters grouped by identical ballot sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub voters: Vec<VoterOptions>,
    /// Each type's ballot set with the voters having it.
    pub types: Vec<(Vec<Vec<u64>>, Vec<usize>)>,
    pub exact: bool,
}

impl TypeCensus {
    pub fn counts(&self) -> Vec<usize> {
        self.types.iter().map(|(_, members)| members.len()).collect()
    }
}

pub fn type_census(instance: &SpatialInstance) -> Result<TypeCensus> {
    voting_vectors(instance)?;
    let voters: Vec<VoterOptions> = (0..instance.n()).map(|j| voter_options(instance, j)).collect::<Result<_>>()?;
    let mut index: BTreeMap<Vec<Vec<u64>>, usize> = BTreeMap::new();
    let mut types: Vec<(Vec<Vec<u64>>, Vec<usize>)> = Vec::new();
    for (j, v) in voters.iter().enumerate() {
        let key = v.vectors();
        if key.is_empty() {
            return Err(Error::Internal(format!("voter {} has no achievable ballot", j + 1)));
        }
        let t = *index.entry(key.clone()).or_insert_with(|| {
            types.push((key, Vec::new()));
            types.len() - 1
        });
        types[t].1.push(j);
    }
    let exact = voters.iter().all(|v| v.exact);
    Ok(TypeCensus { voters, types, exact })
}

/// Groups of interchangeable voters: same type and same weight.
pub fn groups(instance: &SpatialInstance, census: &TypeCensus) -> Vec<Group> {
    let mut out: Vec<Group> = Vec::new();
    for (vectors, members) in &census.types {
        let mut by_weight: BTreeMap<Rational, Vec<usize>> = BTreeMap::new();
        for &j in members {
            by_weight.entry(instance.voters[j].weight.clone()).or_default().push(j);
        }
        for (weight, voters) in by_weight {
            out.push(Group { vectors: vectors.clone(), weight, voters });
        }
    }
    out
}

/// Decides the possible-winner question through voter types and integer feasibility.
pub fn solve_pw_fpt(instance: &SpatialInstance) -> Result<Verdict> {
    let census = type_census(instance)?;
    let groups = groups(instance, &census);
    let counts = solve_counts(&groups, instance.m(), instance.query);
    finish(instance, &census, &groups, counts)
}

/// Same decision, searching over explicit winning scores of the queried candidate.
pub fn solve_pw_fpt_explicit(instance: &SpatialInstance) -> Result<Verdict> {
    let census = type_census(instance)?;
    let groups = groups(instance, &census);
    let counts = solve_counts_explicit(&groups, instance.m(), instance.query);
    finish(instance, &census, &groups, counts)
}

fn finish(
    instance: &SpatialInstance,
    census: &TypeCensus,
    groups: &[Group],
    counts: Option<Vec<Vec<usize>>>,
) -> Result<Verdict> {
    let Some(counts) = counts else {
        let mut v = Verdict::no(Algorithm::Fpt);
        v.exact = census.exact;
        return Ok(v);
    };
    let mut positions: Vec<Option<SurdPoint>> = vec![None; instance.n()];
    for (g, per_vector) in groups.iter().zip(&counts) {
        let mut members = g.voters.iter();
        for (z, &k) in g.vectors.iter().zip(per_vector) {
            for _ in 0..k {
                let j = *members.next().ok_or_else(|| Error::Internal("ballot counts exceed group size".into()))?;
                positions[j] = Some(census.voters[j].ballots[z].clone());
            }
        }
    }
    let positions: Vec<SurdPoint> = positions
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("a voter received no ballot".into()))?;
    let totals = tally_points(instance, &positions)?;
    if !is_winner(&totals, instance.query) {
        return Err(Error::Internal("witness completion does not make the query a winner".into()));
    }
    let witness = match positions.iter().map(SurdPoint::as_rational).collect::<Option<Vec<_>>>() {
        Some(points) => Witness::Completion(points),
        None => Witness::Algebraic(positions),
    };
    let mut v = Verdict::yes(Algorithm::Fpt, Some(witness));
    v.exact = census.exact;
    Ok(v)
}

/// Weighted totals for positions that may have algebraic coordinates.
pub fn tally_points(instance: &SpatialInstance, positions: &[SurdPoint]) -> Result<Vec<Rational>> {
    if positions.len() != instance.n() {
        return Err(Error::InvalidCompletion("one position per voter is required".into()));
    }
    let mut totals = vec![Rational::zero(); instance.m()];
    for (j, (voter, p)) in instance.voters.iter().zip(positions).enumerate() {
        if !p.within(&voter.bounds) {
            return Err(Error::InvalidCompletion(format!("position of voter {} lies outside its box", j + 1)));
        }
        let votes = match (p.as_rational(), &voter.radius) {
            (Some(point), _) => vote_at(instance, j, &point)?,
            (None, Some(r)) if instance.rule.is_approval() => approval_ballot(p, &instance.candidates, &(r * r)),
            (None, _) => return Err(Error::InvalidCompletion("algebraic position under a positional rule".into())),
        };
        add_weighted(&mut totals, &votes, &voter.weight);
    }
    Ok(totals)
}
