//! Solver selection shared by the command line and the C interface.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fpt::solve_pw_fpt;
use crate::model::SpatialInstance;
use crate::nw::solve_nw;
use crate::oracles::{nw_bruteforce, nw_bruteforce_vectors, pw_bruteforce, pw_bruteforce_vectors};
use crate::pw1::solve_pw1;
use crate::verdict::{Algorithm, Verdict};
use crate::weighted::{solve_wpw1_exact, solve_wpw1_large_k};

/// Largest positive-entry count after shifting for which the scheduling route is preferred.
const PW1_MAX_K: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Pw1,
    Fpt,
    Weighted,
    Oracle,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Self::Auto,
            "pw1" => Self::Pw1,
            "fpt" => Self::Fpt,
            "weighted" => Self::Weighted,
            "oracle" => Self::Oracle,
            other => return Err(Error::InvalidInput(format!("unknown algorithm {other:?}"))),
        })
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Auto => "auto",
            Self::Pw1 => "pw1",
            Self::Fpt => "fpt",
            Self::Weighted => "weighted",
            Self::Oracle => "oracle",
        })
    }
}

fn positional_line(instance: &SpatialInstance) -> bool {
    instance.dim() == 1 && !instance.rule.is_approval()
}

fn shifted_width(instance: &SpatialInstance) -> Result<usize> {
    let s = instance.score_vector()?;
    let floor = *s.last().unwrap_or(&0);
    Ok(s.iter().filter(|&&x| x > floor).count())
}

fn wide_approval(instance: &SpatialInstance) -> Result<bool> {
    let s = instance.score_vector()?;
    let k = s.iter().take_while(|&&x| x == 1).count();
    Ok(s[k..].iter().all(|&x| x == 0) && 2 * k >= instance.m())
}

fn weighted(instance: &SpatialInstance, cap: u128) -> Result<Verdict> {
    if !positional_line(instance) {
        return Err(Error::Unsupported("the weighted solvers need a one-dimensional positional instance".into()));
    }
    if wide_approval(instance)? {
        solve_wpw1_large_k(instance)
    } else {
        solve_wpw1_exact(instance, cap)
    }
}

/// Decides whether the query is a possible winner.
pub fn solve_pw(instance: &SpatialInstance, strategy: Strategy, cap: u128) -> Result<Verdict> {
    match strategy {
        Strategy::Pw1 => solve_pw1(instance),
        Strategy::Fpt => solve_pw_fpt(instance),
        Strategy::Weighted => weighted(instance, cap),
        Strategy::Oracle if positional_line(instance) => pw_bruteforce(instance, cap),
        Strategy::Oracle => pw_bruteforce_vectors(instance, cap),
        Strategy::Auto if !positional_line(instance) => solve_pw_fpt(instance),
        Strategy::Auto if !instance.is_weighted() && shifted_width(instance)? <= PW1_MAX_K => solve_pw1(instance),
        Strategy::Auto => weighted(instance, cap),
    }
}

/// Decides whether the query is a necessary winner.
pub fn solve_necessary(instance: &SpatialInstance, strategy: Strategy, cap: u128) -> Result<Verdict> {
    match strategy {
        Strategy::Oracle => {
            let (answer, algorithm) = if positional_line(instance) {
                (nw_bruteforce(instance, cap)?, Algorithm::SegmentProduct)
            } else {
                (nw_bruteforce_vectors(instance, cap)?, Algorithm::VectorProduct)
            };
            let mut v = if answer { Verdict::yes(algorithm, None) } else { Verdict::no(algorithm) };
            v.exact = !(instance.rule.is_approval() && instance.dim() > 2);
            Ok(v)
        }
        _ => solve_nw(instance),
    }
}
