//! Acceptance suite: one PASS/FAIL line per criterion.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use spatialpw::fpt::solve_pw_fpt;
use spatialpw::gen::{random_p_structured, random_partition, random_spatial, rng, ScheduleParams, SpatialParams};
use spatialpw::model::{rat, ratio, CandidateSet, Rational, ScoringRule, SpatialInstance, TieBreak, VoterSpec};
use spatialpw::nw::solve_nw;
use spatialpw::oracles::{
    binpacking_bruteforce, independent_set_bruteforce, nw_bruteforce, nw_bruteforce_vectors, partition_bruteforce,
    pw_bruteforce, pw_bruteforce_vectors,
};
use spatialpw::pw1::solve_pw1;
use spatialpw::segments::{compute_decomposition, Segment};
use spatialpw::shapes::{
    brute_force_feasible, brute_force_schedule, busy_profile, dp_solve, gen_from_binpacking, gen_from_independent_set,
};
use spatialpw::solve::{solve_pw, Strategy};
use spatialpw::weighted::{
    gen_partition_borda, gen_partition_kapproval, gen_partition_plurality, solve_wpw1_exact, solve_wpw1_large_k,
    PartitionInstance,
};
use spatialpw::Error;

const ORACLE_CAP: u128 = 1_000_000;
const SCHEDULE_CAP: u128 = 100_000_000;

type Outcome = Result<String, String>;

fn agree(label: &str, total: usize, mismatches: &[String]) -> Outcome {
    if mismatches.is_empty() {
        Ok(format!("{total}/{total} {label}"))
    } else {
        Err(format!("{}/{total} {label}; first: {}", total - mismatches.len(), mismatches[0]))
    }
}

fn criterion_1() -> Outcome {
    let params = SpatialParams {
        rules: vec![ScoringRule::Plurality, ScoringRule::KApproval(2), ScoringRule::TruncatedBorda(2)],
        ..SpatialParams::default()
    };
    let mut r = rng(1);
    let start = Instant::now();
    let mut bad = Vec::new();
    for i in 0..500 {
        let inst = random_spatial(&mut r, &params);
        let got = solve_pw1(&inst).map_err(|e| format!("instance {i}: {e}"))?.answer;
        let want = pw_bruteforce(&inst, ORACLE_CAP).map_err(|e| format!("instance {i}: {e}"))?.answer;
        if got != want {
            bad.push(format!("instance {i}: solver {got}, oracle {want}"));
        }
    }
    let elapsed = start.elapsed();
    let summary = agree("agree with the segment oracle", 500, &bad)?;
    if elapsed > Duration::from_secs(60) {
        return Err(format!("{summary}, but took {elapsed:.1?} (limit 60s)"));
    }
    Ok(format!("{summary} in {elapsed:.1?}"))
}

fn criterion_2() -> Outcome {
    let mut r = rng(2);
    let mut bad = Vec::new();
    let mut yes = 0;
    for i in 0..200 {
        let p = random_p_structured(&mut r, ScheduleParams::default());
        let dp = dp_solve(&p).map_err(|e| format!("instance {i}: {e}"))?;
        let brute = brute_force_schedule(&p.instance, p.budget, p.target, SCHEDULE_CAP)
            .map_err(|e| format!("instance {i}: {e}"))?;
        if dp.is_some() != brute.is_some() {
            bad.push(format!("instance {i}: dp {}, exhaustive {}", dp.is_some(), brute.is_some()));
        }
        if let Some(s) = dp {
            yes += 1;
            let profile = busy_profile(&p.instance, &s).map_err(|e| format!("instance {i}: {e}"))?;
            if !profile.within_capacity || profile.at(p.target) != p.budget {
                bad.push(format!("instance {i}: witness does not fill slot {} with {}", p.target, p.budget));
            }
        }
    }
    agree(&format!("agree with exhaustive scheduling ({yes} yes, witnesses validated)"), 200, &bad)
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut bad = Vec::new();
    let mut overlap = 0;
    for i in 0..200 {
        let params = SpatialParams { dim: 1 + i % 2, max_m: 4, max_n: 5, ..SpatialParams::default() };
        let inst = random_spatial(&mut r, &params);
        let got = solve_pw_fpt(&inst).map_err(|e| format!("instance {i}: {e}"))?.answer;
        let want = pw_bruteforce_vectors(&inst, ORACLE_CAP).map_err(|e| format!("instance {i}: {e}"))?.answer;
        if got != want {
            bad.push(format!("instance {i}: fpt {got}, oracle {want}"));
        }
        if inst.dim() == 1 && inst.rule.truncation(inst.m()).is_some() {
            overlap += 1;
            let pw1 = solve_pw1(&inst).map_err(|e| format!("instance {i}: {e}"))?.answer;
            if pw1 != got {
                bad.push(format!("instance {i}: fpt {got}, pw1 {pw1}"));
            }
        }
    }
    agree(&format!("agree with the vector oracle ({overlap} also checked against pw1)"), 200, &bad)
}

fn criterion_4() -> Outcome {
    let params =
        SpatialParams { max_m: 4, max_n: 4, rules: vec![ScoringRule::Approval], ..SpatialParams::default() };
    let mut r = rng(4);
    let mut bad = Vec::new();
    for i in 0..100 {
        let inst = random_spatial(&mut r, &params);
        let got = solve_pw_fpt(&inst).map_err(|e| format!("instance {i}: {e}"))?.answer;
        let want = pw_bruteforce_vectors(&inst, ORACLE_CAP).map_err(|e| format!("instance {i}: {e}"))?.answer;
        if got != want {
            bad.push(format!("instance {i}: fpt {got}, oracle {want}"));
        }
    }
    agree("approval instances agree with the vector oracle", 100, &bad)
}

fn partition_family() -> Vec<PartitionInstance> {
    let mut out = Vec::new();
    // Every multiset of up to four values from 1..=5.
    fn rec(start: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<PartitionInstance>) {
        if !cur.is_empty() {
            out.push(PartitionInstance::new(cur.clone()).unwrap());
        }
        if left == 0 {
            return;
        }
        for v in start..=5 {
            cur.push(v);
            rec(v, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(1, 4, &mut Vec::new(), &mut out);
    let mut r = rng(5);
    while out.len() < 200 {
        let pi = random_partition(&mut r, 8, 12);
        if pi.values.len() >= 5 {
            out.push(pi);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let family = partition_family();
    let mut bad = Vec::new();
    let mut yes = 0;
    for pi in &family {
        let want = partition_bruteforce(&pi.values).map_err(|e| e.to_string())?;
        yes += usize::from(want);
        let cases = [
            ("borda", gen_partition_borda(pi)),
            ("plurality", gen_partition_plurality(pi)),
            ("2-approval", gen_partition_kapproval(pi, 2).map_err(|e| e.to_string())?),
        ];
        for (name, inst) in cases {
            let got = solve_wpw1_exact(&inst, ORACLE_CAP).map_err(|e| format!("{name} {:?}: {e}", pi.values))?.answer;
            if got != want {
                bad.push(format!("{name} {:?}: solver {got}, partition {want}", pi.values));
            }
        }
    }
    agree(
        &format!("partition instances ({yes} splittable) agree under all three reductions"),
        family.len(),
        &bad,
    )
}

fn criterion_6() -> Outcome {
    let params = SpatialParams {
        max_m: 4,
        rules: vec![ScoringRule::KApproval(1), ScoringRule::KApproval(2), ScoringRule::KApproval(3)],
        max_weight: Some(5),
        ..SpatialParams::default()
    };
    let mut r = rng(6);
    let mut bad = Vec::new();
    let mut count = 0;
    let mut yes = 0;
    while count < 150 {
        let inst = random_spatial(&mut r, &params);
        let k = inst.rule.truncation(inst.m()).unwrap_or(0);
        if 2 * k < inst.m() || k >= inst.m() {
            continue;
        }
        count += 1;
        let fast = solve_wpw1_large_k(&inst).map_err(|e| e.to_string())?.answer;
        let exact = solve_wpw1_exact(&inst, ORACLE_CAP).map_err(|e| e.to_string())?.answer;
        yes += usize::from(exact);
        if fast != exact {
            bad.push(format!("instance {count}: fast {fast}, exact {exact}"));
        }
    }
    agree(&format!("weighted wide-approval instances agree ({yes} yes)"), 150, &bad)
}

fn multisets(max_len: usize, max_value: u64) -> Vec<Vec<u64>> {
    fn rec(start: u64, max_value: u64, left: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for v in start..=max_value {
            cur.push(v);
            rec(v, max_value, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, max_value, max_len, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of graphs on `n` vertices without isolated vertices.
fn graph_classes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        if (0..n).any(|v| edges.iter().all(|&(a, b)| a != v && b != v)) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| edges.iter().fold(0u32, |acc, &(a, b)| acc | 1 << index(p[a], p[b])))
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut packing = 0;
    for sizes in multisets(6, 4) {
        for bin in 4..=6 {
            for k in 1..=3 {
                packing += 1;
                let inst = gen_from_binpacking(&sizes, bin, k).map_err(|e| e.to_string())?;
                let got = brute_force_feasible(&inst, SCHEDULE_CAP).map_err(|e| e.to_string())?.is_some();
                if got != binpacking_bruteforce(&sizes, bin, k) {
                    bad.push(format!("bin packing {sizes:?} bin {bin} k {k}"));
                }
            }
        }
    }
    let mut graphs = 0;
    for n in 2..=6 {
        for edges in graph_classes(n) {
            for k in 1..=n {
                graphs += 1;
                let inst = gen_from_independent_set(&edges, n, k).map_err(|e| e.to_string())?;
                let got = brute_force_feasible(&inst, SCHEDULE_CAP).map_err(|e| e.to_string())?.is_some();
                if got != independent_set_bruteforce(&edges, n, k) {
                    bad.push(format!("independent set {edges:?} k {k}"));
                }
            }
        }
    }
    agree(
        &format!("reduction instances agree ({packing} bin packing, {graphs} independent set)"),
        packing + graphs,
        &bad,
    )
}

fn direct_ranking(x: &Rational, candidates: &CandidateSet, tiebreak: &TieBreak) -> Vec<usize> {
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    let dist = |c: usize| {
        let d = x - candidates.coord(c);
        &d * &d
    };
    order.sort_by(|&a, &b| match dist(a).cmp(&dist(b)) {
        Ordering::Equal => tiebreak.rank(a).cmp(&tiebreak.rank(b)),
        o => o,
    });
    order
}

fn samples(s: &Segment) -> Vec<Rational> {
    match (&s.left, &s.right) {
        (None, None) => vec![rat(-1), rat(0), rat(1)],
        (None, Some(r)) => (1..=3).map(|i| &r.value - rat(i)).collect(),
        (Some(l), None) => (1..=3).map(|i| &l.value + rat(i)).collect(),
        (Some(l), Some(r)) if l.value == r.value => vec![l.value.clone()],
        (Some(l), Some(r)) => (1..=3).map(|i| &l.value + (&r.value - &l.value) * ratio(i, 4)).collect(),
    }
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut violations = Vec::new();
    for i in 0..1000 {
        let m = r.gen_range(2..=8);
        let params = SpatialParams {
            max_m: m,
            max_n: 1,
            coord: 12,
            rules: vec![ScoringRule::Plurality, ScoringRule::KApproval(2), ScoringRule::Borda],
            ..SpatialParams::default()
        };
        let inst = random_spatial(&mut r, &params);
        let m = inst.m();
        let d = compute_decomposition(&inst.candidates, &inst.rule, &inst.tiebreak).map_err(|e| e.to_string())?;
        if d.len() > m * (m - 1) / 2 + 1 {
            violations.push(format!("layout {i}: {} segments for m = {m}", d.len()));
        }
        if d.segments.windows(2).any(|w| w[0].z > w[1].z) {
            violations.push(format!("layout {i}: z decreases"));
        }
        if d.segments[0].ranking.0 != (0..m).collect::<Vec<_>>() {
            violations.push(format!("layout {i}: leftmost ranking is not the identity"));
        }
        for (si, s) in d.segments.iter().enumerate() {
            for x in samples(s) {
                if !s.contains(&x) || direct_ranking(&x, &inst.candidates, &inst.tiebreak) != s.ranking.0 {
                    violations.push(format!("layout {i}: segment {si} disagrees with a direct sort"));
                }
            }
        }
    }
    agree("layouts without invariant violations", 1000, &violations)
}

fn plurality_instance(n: usize, seed: u64) -> SpatialInstance {
    let mut r = rng(seed);
    let m = 20;
    let candidates = CandidateSet::on_line((0..m).map(|i| rat(10 * i)).collect()).unwrap();
    let voters = (0..n)
        .map(|_| {
            let lo = r.gen_range(-5..200);
            let hi = lo + r.gen_range(0..30);
            VoterSpec::on_line(rat(lo), rat(hi)).unwrap()
        })
        .collect();
    SpatialInstance::new(candidates, voters, ScoringRule::Plurality, TieBreak::lower_index(m as usize), 7).unwrap()
}

fn time_solve(n: usize) -> Result<Duration, String> {
    let mut best = Duration::MAX;
    for seed in 0..3 {
        let inst = plurality_instance(n, 90 + seed);
        let start = Instant::now();
        solve_pw1(&inst).map_err(|e| e.to_string())?;
        best = best.min(start.elapsed());
    }
    Ok(best)
}

fn criterion_9() -> Outcome {
    let times: Vec<Duration> = [50, 100, 200].iter().map(|&n| time_solve(n)).collect::<Result<_, _>>()?;
    let floor = Duration::from_millis(2);
    let ratios: Vec<f64> =
        times.windows(2).map(|w| w[1].max(floor).as_secs_f64() / w[0].max(floor).as_secs_f64()).collect();
    let summary = format!(
        "n=50/100/200 best-of-3 {:.1?}/{:.1?}/{:.1?}, doubling ratios {:.2}/{:.2}",
        times[0], times[1], times[2], ratios[0], ratios[1]
    );
    if times[2] >= Duration::from_secs(5) || ratios.iter().any(|&q| q >= 4.0) {
        return Err(summary);
    }
    Ok(summary)
}

fn criterion_10() -> Outcome {
    let mut r = rng(10);
    let mut bad = Vec::new();
    let mut yes = 0;
    let mut confirmed = 0;
    for i in 0..200 {
        let params = SpatialParams {
            dim: 1 + i % 2,
            max_m: 4,
            max_n: 4,
            rules: vec![ScoringRule::Plurality, ScoringRule::KApproval(2), ScoringRule::Borda, ScoringRule::Approval],
            max_weight: (i % 3 == 0).then_some(4),
            ..SpatialParams::default()
        };
        let inst = random_spatial(&mut r, &params);
        let nw = solve_nw(&inst).map_err(|e| format!("instance {i}: {e}"))?.answer;
        if nw {
            yes += 1;
            let pw = solve_pw(&inst, Strategy::Auto, ORACLE_CAP).map_err(|e| format!("instance {i}: {e}"))?.answer;
            if !pw {
                bad.push(format!("instance {i}: necessary but not possible"));
            }
        }
        let oracle = if inst.dim() == 1 && !inst.rule.is_approval() {
            nw_bruteforce(&inst, ORACLE_CAP)
        } else {
            nw_bruteforce_vectors(&inst, ORACLE_CAP)
        };
        match oracle {
            Ok(want) => {
                confirmed += 1;
                if want != nw {
                    bad.push(format!("instance {i}: solver {nw}, exhaustive {want}"));
                }
            }
            Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(format!("instance {i}: {e}")),
        }
    }
    agree(&format!("instances consistent ({yes} necessary, {confirmed} confirmed exhaustively)"), 200, &bad)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("pw1 truncated vs oracle", criterion_1),
        ("shapes dp vs exhaustive", criterion_2),
        ("fpt vs oracle", criterion_3),
        ("approval fpt d=1", criterion_4),
        ("partition reductions", criterion_5),
        ("weighted wide approval", criterion_6),
        ("reduction generators", criterion_7),
        ("segment invariants", criterion_8),
        ("plurality scaling", criterion_9),
        ("necessary winner", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} criterion {:>2} {name}: {detail} [{:.1?}]", i + 1, start.elapsed());
    }
    println!("acceptance: {}/10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
