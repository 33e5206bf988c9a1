//! Text instance documents.
//!
//! One directive per line, `#` starts a comment:
//!
//! ```text
//! dim 1
//! rule k-approval 2
//! tiebreak 1 2 3
//! query 2
//! candidate 0
//! candidate 5/2
//! candidate 7
//! voter 0..3
//! voter 1/2..4 weight 3
//! ```
//!
//! Candidate indices in `query` and `tiebreak` are 1-based. Voter boxes list one
//! `lo..hi` range per dimension and may carry `weight w` and `radius r`.

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{
    format_rational, parse_rational, CandidateSet, Interval, Point, Rational, ScoringRule, SpatialInstance, TieBreak,
    VoterSpec,
};

impl FromStr for ScoringRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut words = s.split_whitespace();
        let kind = words.next().ok_or_else(|| Error::InvalidRule("empty rule".into()))?;
        let params: Vec<u64> = words
            .map(|w| w.parse().map_err(|_| Error::InvalidRule(format!("{w:?} is not a nonnegative integer"))))
            .collect::<Result<_>>()?;
        let single = |name: &str| match params.as_slice() {
            [k] => Ok(*k as usize),
            _ => Err(Error::InvalidRule(format!("{name} takes exactly one parameter"))),
        };
        let bare = |rule: ScoringRule| {
            if params.is_empty() {
                Ok(rule)
            } else {
                Err(Error::InvalidRule(format!("{kind} takes no parameters")))
            }
        };
        match kind {
            "plurality" => bare(ScoringRule::Plurality),
            "veto" => bare(ScoringRule::Veto),
            "borda" => bare(ScoringRule::Borda),
            "approval" => bare(ScoringRule::Approval),
            "k-approval" => Ok(ScoringRule::KApproval(single(kind)?)),
            "truncated-borda" => Ok(ScoringRule::TruncatedBorda(single(kind)?)),
            "vector" if !params.is_empty() => Ok(ScoringRule::Vector(params)),
            "vector" => Err(Error::InvalidRule("vector needs at least one score".into())),
            other => Err(Error::InvalidRule(format!("unknown rule {other:?}"))),
        }
    }
}

fn number(line: usize, field: &str, text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::Parse { line, msg: format!("{field}: {text:?} is not a number") })
}

fn index(line: usize, field: &str, text: &str) -> Result<usize> {
    match text.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(i - 1),
        _ => Err(Error::Parse { line, msg: format!("{field}: {text:?} is not a 1-based candidate index") }),
    }
}

fn range(line: usize, text: &str) -> Result<Interval> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::Parse { line, msg: format!("voter box: expected lo..hi, got {text:?}") })?;
    let lo = number(line, "voter box", lo)?;
    let hi = number(line, "voter box", hi)?;
    Interval::new(lo, hi).map_err(|e| Error::Parse { line, msg: e.to_string() })
}

fn voter(line: usize, fields: &[&str]) -> Result<VoterSpec> {
    let mut bounds = Vec::new();
    let mut weight = None;
    let mut radius = None;
    let mut it = fields.iter();
    while let Some(&f) = it.next() {
        match f {
            "weight" | "radius" => {
                let value = it.next().ok_or_else(|| Error::Parse { line, msg: format!("{f} needs a value") })?;
                let value = number(line, f, value)?;
                let slot = if f == "weight" { &mut weight } else { &mut radius };
                if slot.replace(value).is_some() {
                    return Err(Error::Parse { line, msg: format!("{f} given twice") });
                }
            }
            _ if weight.is_some() || radius.is_some() => {
                return Err(Error::Parse { line, msg: format!("unexpected {f:?} after voter options") });
            }
            _ => bounds.push(range(line, f)?),
        }
    }
    if bounds.is_empty() {
        return Err(Error::Parse { line, msg: "voter needs at least one lo..hi range".into() });
    }
    let mut v = VoterSpec::new(bounds);
    if let Some(w) = weight {
        if w <= Rational::zero() {
            return Err(Error::Parse { line, msg: format!("weight must be positive, got {}", format_rational(&w)) });
        }
        v = v.with_weight(w);
    }
    if let Some(r) = radius {
        if r < Rational::zero() {
            return Err(Error::Parse { line, msg: format!("radius must be nonnegative, got {}", format_rational(&r)) });
        }
        v = v.with_radius(r);
    }
    Ok(v)
}

fn once<T>(slot: &mut Option<(usize, T)>, line: usize, key: &str, value: T) -> Result<()> {
    if let Some((first, _)) = slot {
        return Err(Error::Parse { line, msg: format!("{key} already given on line {first}") });
    }
    *slot = Some((line, value));
    Ok(())
}

/// Parses an instance document.
pub fn parse_document(text: &str) -> Result<SpatialInstance> {
    let mut dim: Option<(usize, usize)> = None;
    let mut rule: Option<(usize, ScoringRule)> = None;
    let mut tiebreak: Option<(usize, Vec<usize>)> = None;
    let mut query: Option<(usize, usize)> = None;
    let mut candidates: Vec<(usize, Point)> = Vec::new();
    let mut voters: Vec<(usize, VoterSpec)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let fields: Vec<&str> = content.split_whitespace().collect();
        let Some((&key, rest)) = fields.split_first() else { continue };
        match key {
            "dim" => {
                let d = match rest {
                    [d] => d.parse::<usize>().ok().filter(|&d| d >= 1),
                    _ => None,
                }
                .ok_or_else(|| Error::Parse { line, msg: "dim takes one positive integer".into() })?;
                once(&mut dim, line, key, d)?;
            }
            "rule" => {
                let r = rest.join(" ").parse().map_err(|e: Error| Error::Parse { line, msg: e.to_string() })?;
                once(&mut rule, line, key, r)?;
            }
            "tiebreak" => {
                let order = rest.iter().map(|t| index(line, key, t)).collect::<Result<Vec<_>>>()?;
                once(&mut tiebreak, line, key, order)?;
            }
            "query" => {
                let q = match rest {
                    [q] => index(line, key, q)?,
                    _ => return Err(Error::Parse { line, msg: "query takes one candidate index".into() }),
                };
                once(&mut query, line, key, q)?;
            }
            "candidate" => {
                if rest.is_empty() {
                    return Err(Error::Parse { line, msg: "candidate needs coordinates".into() });
                }
                let p = rest.iter().map(|t| number(line, key, t)).collect::<Result<Point>>()?;
                candidates.push((line, p));
            }
            "voter" => voters.push((line, voter(line, rest)?)),
            other => return Err(Error::Parse { line, msg: format!("unknown directive {other:?}") }),
        }
    }

    let d = match (dim, candidates.first()) {
        (Some((_, d)), _) => d,
        (None, Some((_, p))) => p.len(),
        (None, None) => return Err(Error::Parse { line: 0, msg: "no candidates".into() }),
    };
    for (line, p) in &candidates {
        if p.len() != d {
            return Err(Error::Parse { line: *line, msg: format!("candidate has {} coordinates, expected {d}", p.len()) });
        }
    }
    for (line, v) in &voters {
        if v.dim() != d {
            return Err(Error::Parse { line: *line, msg: format!("voter box has {} ranges, expected {d}", v.dim()) });
        }
    }
    let (rule_line, rule) = rule.ok_or_else(|| Error::Parse { line: 0, msg: "missing rule".into() })?;
    let (query_line, query) = query.ok_or_else(|| Error::Parse { line: 0, msg: "missing query".into() })?;
    let m = candidates.len();
    if query >= m {
        return Err(Error::Parse { line: query_line, msg: format!("query {} exceeds {m} candidates", query + 1) });
    }
    for (line, v) in &voters {
        if rule.is_approval() && v.radius.is_none() {
            return Err(Error::Parse { line: *line, msg: "approval voters need a radius".into() });
        }
    }
    if !rule.is_approval() {
        rule.score_vector(m).map_err(|e| Error::Parse { line: rule_line, msg: e.to_string() })?;
    }
    let tiebreak = match tiebreak {
        Some((line, order)) => {
            TieBreak::from_order(&order).map_err(|e| Error::Parse { line, msg: e.to_string() })?
        }
        None => TieBreak::lower_index(m),
    };
    if tiebreak.order().len() != m {
        return Err(Error::Parse { line: 0, msg: format!("tiebreak covers {} of {m} candidates", tiebreak.order().len()) });
    }
    let candidates = CandidateSet::new(candidates.into_iter().map(|(_, p)| p).collect())?;
    SpatialInstance::new(candidates, voters.into_iter().map(|(_, v)| v).collect(), rule, tiebreak, query)
}

/// Writes the canonical document for `instance`.
pub fn serialize_document(instance: &SpatialInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", instance.dim()));
    out.push_str(&format!("rule {}\n", instance.rule));
    let order: Vec<String> = instance.tiebreak.order().iter().map(|c| (c + 1).to_string()).collect();
    out.push_str(&format!("tiebreak {}\n", order.join(" ")));
    out.push_str(&format!("query {}\n", instance.query + 1));
    for p in instance.candidates.positions() {
        let coords: Vec<String> = p.iter().map(format_rational).collect();
        out.push_str(&format!("candidate {}\n", coords.join(" ")));
    }
    for v in &instance.voters {
        let ranges: Vec<String> =
            v.bounds.iter().map(|b| format!("{}..{}", format_rational(&b.lo), format_rational(&b.hi))).collect();
        out.push_str(&format!("voter {}", ranges.join(" ")));
        if !v.weight.is_one() {
            out.push_str(&format!(" weight {}", format_rational(&v.weight)));
        }
        if let Some(r) = &v.radius {
            out.push_str(&format!(" radius {}", format_rational(r)));
        }
        out.push('\n');
    }
    out
}
