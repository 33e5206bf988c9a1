use spatialpw::fpt::{solve_pw_fpt, solve_pw_fpt_explicit};
use spatialpw::gen::{random_spatial, rng, SpatialParams};
use spatialpw::model::{rat, ScoringRule};
use spatialpw::nw::solve_nw;
use spatialpw::oracles::{nw_bruteforce_vectors, pw_bruteforce, pw_bruteforce_vectors, DEFAULT_CAP};
use spatialpw::solve::{solve_necessary, solve_pw, Strategy};
use spatialpw::weighted::{scale_weights, solve_wpw1_exact};

fn params(dim: usize, rules: Vec<ScoringRule>) -> SpatialParams {
    SpatialParams { dim, max_m: 4, max_n: 4, coord: 10, rules, ..SpatialParams::default() }
}

#[test]
fn fpt_type_search_matches_explicit_budgets_and_enumeration() {
    let mut r = rng(101);
    for i in 0..80 {
        let dim = 1 + i % 2;
        let inst = random_spatial(&mut r, &params(dim, vec![ScoringRule::Plurality, ScoringRule::Borda]));
        let expected = pw_bruteforce_vectors(&inst, DEFAULT_CAP).unwrap().answer;
        let fast = solve_pw_fpt(&inst).unwrap();
        assert_eq!(fast.answer, expected, "{inst:?}");
        assert_eq!(solve_pw_fpt_explicit(&inst).unwrap().answer, expected);
        fast.check_witness(&inst).unwrap();
    }
}

#[test]
fn approval_in_the_plane_matches_enumeration() {
    let mut r = rng(102);
    for _ in 0..60 {
        let inst = random_spatial(&mut r, &params(2, vec![ScoringRule::Approval]));
        let v = solve_pw_fpt(&inst).unwrap();
        assert!(v.exact);
        assert_eq!(v.answer, pw_bruteforce_vectors(&inst, DEFAULT_CAP).unwrap().answer, "{inst:?}");
        v.check_witness(&inst).unwrap();
    }
}

#[test]
fn weighted_exact_matches_enumeration() {
    let mut r = rng(103);
    let p = SpatialParams { max_weight: Some(6), ..params(1, vec![ScoringRule::Plurality, ScoringRule::Borda, ScoringRule::TruncatedBorda(2)]) };
    for _ in 0..120 {
        let inst = random_spatial(&mut r, &p);
        let v = solve_wpw1_exact(&inst, DEFAULT_CAP).unwrap();
        assert_eq!(v.answer, pw_bruteforce(&inst, DEFAULT_CAP).unwrap().answer, "{inst:?}");
        v.check_witness(&inst).unwrap();
    }
}

#[test]
fn scaling_every_weight_keeps_the_answer() {
    let mut r = rng(104);
    let p = SpatialParams { max_weight: Some(5), ..params(1, vec![ScoringRule::KApproval(2), ScoringRule::Borda]) };
    for _ in 0..60 {
        let inst = random_spatial(&mut r, &p);
        let scaled = scale_weights(&inst, &rat(7)).unwrap();
        assert_eq!(
            solve_pw(&inst, Strategy::Auto, DEFAULT_CAP).unwrap().answer,
            solve_pw(&scaled, Strategy::Auto, DEFAULT_CAP).unwrap().answer
        );
    }
}

#[test]
fn necessary_winner_matches_enumeration_in_the_plane() {
    let mut r = rng(105);
    for _ in 0..80 {
        let inst = random_spatial(&mut r, &params(2, vec![ScoringRule::Plurality, ScoringRule::Borda, ScoringRule::Approval]));
        let expected = nw_bruteforce_vectors(&inst, DEFAULT_CAP).unwrap();
        let v = solve_nw(&inst).unwrap();
        assert_eq!(v.answer, expected, "{inst:?}");
        if v.answer {
            assert!(solve_pw(&inst, Strategy::Auto, DEFAULT_CAP).unwrap().answer);
        }
    }
}

#[test]
fn every_strategy_agrees_with_the_oracle_on_the_line() {
    let mut r = rng(106);
    for _ in 0..100 {
        let inst = random_spatial(&mut r, &params(1, vec![ScoringRule::Plurality, ScoringRule::KApproval(2), ScoringRule::Borda]));
        let expected = solve_pw(&inst, Strategy::Oracle, DEFAULT_CAP).unwrap().answer;
        for s in [Strategy::Auto, Strategy::Pw1, Strategy::Fpt, Strategy::Weighted] {
            let v = solve_pw(&inst, s, DEFAULT_CAP).unwrap();
            assert_eq!(v.answer, expected, "{s} on {inst:?}");
            v.check_witness(&inst).unwrap();
        }
        assert_eq!(
            solve_necessary(&inst, Strategy::Auto, DEFAULT_CAP).unwrap().answer,
            solve_necessary(&inst, Strategy::Oracle, DEFAULT_CAP).unwrap().answer
        );
    }
}
