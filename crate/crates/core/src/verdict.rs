//! Solver answers and the evidence attached to them.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fpt::tally_points;
use crate::model::{format_rational, is_winner, tally, Point, SpatialInstance};
use crate::shapes::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Shapes-scheduling dynamic program over all admissible budgets.
    ScheduleDp,
    /// Interval assignment for single-winner-per-voter rules (plurality after shifting).
    PluralityAssignment,
    /// Voter types plus integer feasibility search.
    Fpt,
    WeightedLargeK,
    WeightedExact,
    SegmentProduct,
    VectorProduct,
    WorstCase,
}

/// A concrete position per voter demonstrating a yes answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Completion(Vec<Point>),
    /// Positions with coordinates in a quadratic extension `a + b*sqrt(q)`.
    Algebraic(Vec<crate::fpt::SurdPoint>),
    Schedule(Schedule),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    pub algorithm: Algorithm,
    /// False when the answer came from a non-exact geometric subroutine.
    pub exact: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn no(algorithm: Algorithm) -> Self {
        Self { answer: false, algorithm, exact: true, witness: None }
    }

    pub fn yes(algorithm: Algorithm, witness: Option<Witness>) -> Self {
        Self { answer: true, algorithm, exact: true, witness }
    }

    /// Re-tallies the attached positions; a witness that does not make the query win is an internal error.
    pub fn check_witness(&self, instance: &SpatialInstance) -> Result<()> {
        let totals = match &self.witness {
            Some(Witness::Completion(c)) => tally(instance, c)?,
            Some(Witness::Algebraic(points)) => tally_points(instance, points)?,
            Some(Witness::Schedule(_)) | None => return Ok(()),
        };
        if is_winner(&totals, instance.query) {
            Ok(())
        } else {
            Err(Error::Internal("witness does not make the query a winner".into()))
        }
    }

    /// Machine-readable form; positions are written as exact strings.
    pub fn to_json(&self, seconds: Option<f64>, with_witness: bool) -> Value {
        let mut out = json!({
            "answer": self.answer,
            "algorithm": self.algorithm,
            "exact": self.exact,
        });
        if let Some(s) = seconds {
            out["timing"] = json!({ "seconds": s });
        }
        if with_witness {
            out["witness"] = match &self.witness {
                Some(Witness::Completion(c)) => {
                    json!(c.iter().map(|p| p.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
                }
                Some(Witness::Algebraic(points)) => json!(points
                    .iter()
                    .map(|p| (0..p.coords.len()).map(|i| p.coord(i).to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
                Some(Witness::Schedule(s)) => json!(s),
                None => Value::Null,
            };
        }
        out
    }

    pub fn completion(&self) -> Option<&[Point]> {
        match &self.witness {
            Some(Witness::Completion(c)) => Some(c),
            _ => None,
        }
    }
}

/// Wraps a completion as a yes verdict after re-tallying it.
pub fn verified(instance: &SpatialInstance, completion: Vec<Point>, algorithm: Algorithm) -> Result<Verdict> {
    let totals = tally(instance, &completion)?;
    if !is_winner(&totals, instance.query) {
        return Err(Error::Internal("witness completion does not make the query a winner".into()));
    }
    Ok(Verdict::yes(algorithm, Some(Witness::Completion(completion))))
}
