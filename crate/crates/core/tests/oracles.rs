//! Fast engines against slow, independent ones: merged jet bundles and
//! stratum arithmetic against full expansion with the substitution rules,
//! relation-route rings against the socle route, and Brill–Noether classes
//! computed with two different class rings.

use tautring::jet::{porteous_delta, PointedRing};
use tautring::kappa::kappa_term;
use tautring::partition::Partition;
use tautring::pointed::{self, parse_monomial, PointedPoly};
use tautring::rational::{int, rat};
use tautring::relations::{
    chern_diff_pointed, cut_and_push, enumerate_k_plans, enumerate_plans, enumerate_plans_with, faber_relation,
    faber_relation_formularium, generate_relations, hyperelliptic_classes, hyperelliptic_cuts,
    hyperelliptic_dual_relation, relation_formularium, relation_strata, relations_up_to, DiagonalPlan, Divisor,
    EngineConfig,
};
use tautring::ring::{window_top, GradedQuotient, SocleRing};
use tautring::socle::solve_proportionalities;
use tautring::stratum::StratumPoly;
use tautring::{Execution, KappaPoly};

fn cfg() -> EngineConfig {
    EngineConfig::default()
}

fn quotient(g: u32) -> GradedQuotient {
    GradedQuotient::new(g, &relations_up_to(g, window_top(g), &cfg(), None).unwrap(), Execution::default())
}

#[test]
fn merged_plans_match_full_expansion() {
    // every diagonal plan with 2g - 1 ≤ 5 points, including blocks of size 1
    for g in 2..=3 {
        for c in 1..=g {
            for plan in enumerate_plans_with(g, c, 1) {
                let fast = faber_relation(g, &plan, &cfg()).unwrap();
                let slow = faber_relation_formularium(g, &plan).unwrap();
                assert_eq!(fast, slow, "g={g} {plan}");
            }
        }
    }
}

#[test]
fn k_plans_match_full_expansion() {
    for g in 2..=3 {
        for c in 1..=g {
            for plan in enumerate_k_plans(g, c) {
                let fast = faber_relation(g, &plan, &cfg()).unwrap();
                let slow = faber_relation_formularium(g, &plan).unwrap();
                assert_eq!(fast, slow, "g={g} {plan}");
            }
        }
    }
}

#[test]
fn unmerged_strata_match_full_expansion() {
    let cases = [
        (2, 3, "K1*D23", 2),
        (2, 3, "D12*D13*K2", 2),
        (3, 4, "D12*K3", 3),
        (3, 4, "D13*D24", 3),
        (3, 5, "D12*D34*K5", 3),
        (3, 5, "K1^2*D23", 3),
        (4, 4, "D12^2*K3", 3),
        (4, 5, "D14*D25*D35", 4),
    ];
    for (g, d, m, j) in cases {
        let m = parse_monomial(d, m).unwrap();
        let fast = relation_strata(g, d, &m, j, &cfg()).unwrap();
        let slow = relation_formularium(g, d, &m, j).unwrap();
        assert_eq!(fast, slow, "g={g} d={d} {m} j={j}");
    }
}

/// Pushes to `C_2^keep` and sets every `κ_i`, `i ≥ 1`, to zero (they vanish
/// in `R^*(M_2)`, and with them the `λ_i`).
fn push_genus_two_lambda_free(p: &PointedPoly, keep: usize) -> StratumPoly {
    let pushed = pointed::pushforward_to(p, 2, keep).unwrap();
    let reduced = PointedPoly::from_terms(
        keep,
        pushed.terms().map(|(m, c)| (m.clone(), KappaPoly::constant(c.evaluate(|_| int(0))))),
    );
    StratumPoly::from_pointed(&reduced)
}

fn pointed_sum(d: usize, terms: &[(i64, &str)]) -> PointedPoly {
    PointedPoly::from_terms(
        d,
        terms.iter().map(|&(c, m)| (parse_monomial(d, m).unwrap(), KappaPoly::constant(int(c)))),
    )
}

#[test]
fn genus_two_auxiliary_identities() {
    let c2 = chern_diff_pointed(2, 3, 2);
    // K_1^2 = 0 on C_2, from D12·D13·c_2
    let a = push_genus_two_lambda_free(&c2.mul_monomial(&parse_monomial(3, "D12*D13").unwrap()), 1);
    assert_eq!(a, StratumPoly::from_pointed(&pointed_sum(1, &[(11, "K1^2")])));
    // 2K_1^2 + 3K_1K_2 - 6K_1D_12 on C_2^2 from D13·c_2, so K_1K_2 = 2K_1D_12
    let b = push_genus_two_lambda_free(&c2.mul_monomial(&parse_monomial(3, "D13").unwrap()), 2);
    assert_eq!(b, StratumPoly::from_pointed(&pointed_sum(2, &[(2, "K1^2"), (3, "K1*K2"), (-6, "K1*D12")])));
    // c_2(F_3) with K_iK_j -> 2K_iD_ij is the symmetric relation on C_2^3
    let lambda_free = push_genus_two_lambda_free(&c2, 3);
    let substitution = pointed_sum(3, &[(1, "K1*K2"), (-2, "K1*D12"), (1, "K1*K3"), (-2, "K1*D13"), (1, "K2*K3"), (-2, "K2*D23")]);
    let displayed = pointed_sum(
        3,
        &[(1, "K1*D12"), (1, "K1*D13"), (1, "K2*D23"), (-1, "K1*D23"), (-1, "K2*D13"), (-1, "K3*D12"), (2, "D12*D13")],
    );
    assert_eq!(lambda_free.sub(&StratumPoly::from_pointed(&substitution)), StratumPoly::from_pointed(&displayed));
}

#[test]
fn monomials_beyond_the_plans_give_ideal_members() {
    // arbitrary monomials times c_j(F_d - E), j > d - g, on C_g^d for d ≥ 2g - 1
    let g = 4;
    let q = quotient(g);
    let cases = [(7, "D12*D34*D56", 4), (7, "K1*D23*D45", 4), (7, "K1*K2", 5), (8, "D12*D34*D56*D78", 5), (8, "K1*D23*D45*D67", 5)];
    for (d, m, j) in cases {
        let m = parse_monomial(d, m).unwrap();
        let r = relation_strata(g, d, &m, j, &cfg()).unwrap();
        assert!(q.is_zero(&r), "d={d} {m} j={j}: {r}");
    }
}

#[test]
fn block_order_does_not_matter() {
    let g = 3;
    let a = parse_monomial(5, "D12*D13*D45").unwrap();
    let perms = [[5, 4, 3, 2, 1], [2, 4, 5, 1, 3], [1, 3, 2, 5, 4]];
    let base = relation_strata(g, 5, &a, 3, &cfg()).unwrap();
    for p in perms {
        assert_eq!(relation_strata(g, 5, &a.relabel(&p), 3, &cfg()).unwrap(), base, "{p:?}");
    }
}

#[test]
fn uncovered_plans_lie_in_the_ideal() {
    for g in 3..=5 {
        let q = quotient(g);
        for c in 1..=window_top(g) {
            let plans = enumerate_plans_with(g, c, 1);
            for r in generate_relations(g, &plans, &cfg(), None).unwrap() {
                assert!(q.contains(&r.relation), "g={g} {}: {}", r.plan, r.relation);
            }
        }
    }
}

#[test]
fn k_plans_lie_in_the_ideal() {
    for g in 3..=5 {
        let q = quotient(g);
        for c in 1..=window_top(g) {
            for r in generate_relations(g, &enumerate_k_plans(g, c), &cfg(), None).unwrap() {
                assert!(q.contains(&r.relation), "g={g} {}: {}", r.plan, r.relation);
            }
        }
    }
}

#[test]
fn relation_route_matches_socle_route() {
    for g in 3..=7 {
        let q = quotient(g);
        assert!(q.window_vanishes(), "g={g} dims {:?}", q.dims());
        let table = solve_proportionalities(g, Execution::default()).unwrap();
        assert_eq!(q.derived_socle().unwrap(), table, "g={g}");
        let socle = SocleRing::new(table.clone(), Execution::default());
        assert_eq!(q.dims()[..=(g - 2) as usize], socle.dims()[..], "g={g}");
        let from_socle = GradedQuotient::from_socle(&table, Execution::default());
        assert_eq!(from_socle.dims()[..=(g - 2) as usize], socle.dims()[..], "g={g}");
    }
}

#[test]
fn genus_nine_printed_relations_pair_to_zero() {
    let k = |c: i64, idx: &[u32]| kappa_term(int(c), idx);
    let printed = [
        &(&(&k(5195, &[1, 1, 1, 1]) + &k(3644694, &[3, 1])) + &k(749412, &[2, 2])) - &k(265788, &[2, 1, 1]),
        &(&k(33859814400, &[3, 2]) - &k(95311440, &[2, 1, 1, 1])) + &k(2288539, &[1, 1, 1, 1, 1]),
        &(&k(19151377, &[1, 1, 1, 1, 1]) + &k(16929907200, &[2, 2, 1])) - &k(1142345520, &[2, 1, 1, 1]),
        &k(1422489600, &[3, 3]) - &k(983, &[1, 1, 1, 1, 1, 1]),
        &k(1185408000, &[2, 2, 2]) - &k(47543, &[1, 1, 1, 1, 1, 1]),
        &k(42019, &[1, 1, 1, 1, 1, 1]) - &k(1234800, &[2, 1, 1, 1, 1]),
        // eliminations, moved to one side
        &(&(&k(1399562496, &[4]) - &k(2453760, &[2, 2])) + &k(65425, &[1, 1, 1, 1])) - &k(2470320, &[2, 1, 1]),
        &(&k(7223427072, &[5]) - &k(307440, &[2, 1, 1, 1])) + &k(8729, &[1, 1, 1, 1, 1]),
        &k(309657600, &[6]) - &k(1, &[1, 1, 1, 1, 1, 1]),
        &k(26011238400, &[7]) - &k(1, &[1, 1, 1, 1, 1, 1, 1]),
    ];
    let table = solve_proportionalities(9, Execution::default()).unwrap();
    let ring = SocleRing::new(table.clone(), Execution::default());
    let q = GradedQuotient::from_socle(&table, Execution::default());
    for r in &printed {
        assert!(ring.annihilates(r), "{r}");
        assert!(q.is_zero(r), "{r}");
    }
}

#[test]
fn porteous_classes_agree_across_class_rings() {
    for g in 3..=4 {
        let pieces: Vec<PointedPoly> = (0..=g).map(|k| chern_diff_pointed(g, 2, k)).collect();
        let slow = porteous_delta(&PointedRing(2), 1, (g - 1) as usize, &pieces).unwrap();
        let fast = hyperelliptic_classes(g, &cfg()).unwrap();
        for ((divisors, mult), cut) in hyperelliptic_cuts(g).iter().zip(&fast) {
            let pushed = cut_and_push(g, &slow, divisors);
            assert_eq!(pushed, cut.pushforward, "g={g} {divisors:?}");
            assert_eq!(pushed.scale(&rat(1, *mult as i64)), cut.class);
        }
    }
}

#[test]
fn hyperelliptic_dual_system_gives_relations() {
    for g in 4..=5 {
        let q = quotient(g);
        let cuts: Vec<Vec<Divisor>> = vec![
            vec![Divisor::K(1)],
            vec![Divisor::D(1, 2)],
            vec![Divisor::D(2, 4)],
            vec![Divisor::K(1), Divisor::D(2, 3)],
            vec![Divisor::D(1, 2), Divisor::D(3, 4)],
        ];
        for divisors in cuts.iter().filter(|d| d.len() < (g - 2) as usize) {
            let r = hyperelliptic_dual_relation(g, divisors, &cfg()).unwrap();
            assert!(q.is_zero(&r), "g={g} {divisors:?}: {r}");
        }
    }
}

#[test]
fn plan_monomials() {
    let plan = DiagonalPlan::new(4, Partition::new(vec![3, 2, 2]), 4).unwrap();
    assert_eq!(plan.monomial().to_string(), "D12*D13*D45*D67");
    // j - a push-forward degree, the diagonals cancel against the fibres
    assert_eq!(plan.codim(), 4 - 3);
    assert!(enumerate_plans(4, 2).iter().all(|p| p.codim() == 2));
}
