//! Property suites for the family model and the threshold optimizers.

use proptest::prelude::*;

use expthresh_core::family::{GroundSet, MinimalFamily};
use expthresh_core::lambda::Lambda;
use expthresh_core::rat::{int, pow, rat, Rat};
use expthresh_core::selector::{
    claim_slack, expected_mass, normalize_lambda, o1_probability, subset_prob,
};
use expthresh_core::subset::Subset;
use expthresh_core::threshold::{
    check_dual_certificate, lp_min_weight, min_cover_weight, q_threshold, qf_threshold,
};
use num::One;

fn family_strategy(max_n: usize) -> impl Strategy<Value = MinimalFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        let mask_max = (1u32 << n) - 1;
        prop::collection::vec(1..=mask_max, 0..=4).prop_map(move |masks| {
            MinimalFamily::new(
                GroundSet::new(n).unwrap(),
                masks.into_iter().map(Subset::from_mask),
            )
            .unwrap()
        })
    })
}

fn small_p() -> impl Strategy<Value = Rat> {
    (1i64..=19, 20i64..=40).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn constructed_families_are_antichains(f in family_strategy(6)) {
        let min = f.minimal();
        for (i, a) in min.iter().enumerate() {
            for (j, b) in min.iter().enumerate() {
                prop_assert!(i == j || !a.is_subset_of(*b), "{a:?} inside {b:?}");
            }
        }
    }

    #[test]
    fn membership_is_monotone(f in family_strategy(6), extra in any::<u32>()) {
        let universe = f.ground().universe().mask();
        for mask in 0..=universe {
            let i = Subset::from_mask(mask);
            let j = Subset::from_mask(mask | (extra & universe));
            if f.contains(i) {
                prop_assert!(f.contains(j));
            }
        }
    }

    #[test]
    fn fam_text_roundtrips(f in family_strategy(6)) {
        prop_assume!(!f.has_empty_minimal()); // the grammar cannot express the empty set
        let text = f.to_fam_string();
        prop_assert_eq!(MinimalFamily::parse_fam(&text).unwrap(), f);
    }

    #[test]
    fn member_count_matches_direct_scan(f in family_strategy(6)) {
        let direct = (0u32..1 << f.n())
            .filter(|&m| f.minimal().iter().any(|s| s.mask() & m == s.mask()))
            .count();
        prop_assert_eq!(f.members().len(), direct);
    }

    #[test]
    fn cover_and_lp_weights_are_monotone_in_p(f in family_strategy(5), a in small_p(), b in small_p()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(min_cover_weight(&f, &lo).unwrap().weight <= min_cover_weight(&f, &hi).unwrap().weight);
        prop_assert!(lp_min_weight(&f, &lo, None).unwrap().value <= lp_min_weight(&f, &hi, None).unwrap().value);
    }

    #[test]
    fn relaxation_ordering(f in family_strategy(5), p in small_p()) {
        // lp(unbounded) <= lp(r) <= integral cover weight for r >= max |minimal|
        let r = f.max_minimal_size().max(1);
        let unb = lp_min_weight(&f, &p, None).unwrap().value;
        let restricted = lp_min_weight(&f, &p, Some(r)).unwrap().value;
        let integral = min_cover_weight(&f, &p).unwrap().weight;
        prop_assert!(unb <= restricted);
        prop_assert!(restricted <= integral);
    }

    #[test]
    fn certificates_verify_and_duality_is_weak(f in family_strategy(5), p in small_p()) {
        let out = lp_min_weight(&f, &p, None).unwrap();
        prop_assert!(out.lambda.is_feasible_for(&f));
        prop_assert_eq!(out.lambda.weight(&p), out.value.clone());

        // y_I = p^|I| / #minimal is always dual-feasible for p <= 1
        if !f.is_empty_family() {
            let k = f.minimal().len() as i64;
            let y: std::collections::BTreeMap<Subset, Rat> = f
                .minimal()
                .iter()
                .map(|&i| (i, pow(&p, i.len()) / int(k)))
                .collect();
            let check = check_dual_certificate(&f, &p, None, &y).unwrap();
            prop_assert!(check.feasible);
            prop_assert!(check.dual_value <= out.value);
        }
    }

    #[test]
    fn antitone_in_family_and_dummy_invariance(f in family_strategy(4), add in 1u32..16) {
        let tol = pow(&rat(1, 2), 12);
        let budget = rat(1, 2);
        let n = f.n();
        let added = Subset::from_mask(add & f.ground().universe().mask());
        prop_assume!(!added.is_empty());
        let bigger = MinimalFamily::new(
            f.ground(),
            f.minimal().iter().copied().chain([added]),
        )
        .unwrap();
        // adding a generator never increases the thresholds; the bisection
        // grids coincide, so the comparison is exact
        let q_f = q_threshold(&f, &tol, &budget).unwrap();
        let q_b = q_threshold(&bigger, &tol, &budget).unwrap();
        prop_assert!(q_b.p_hat <= q_f.p_hat);
        let qf_f = qf_threshold(&f, &tol, None, &budget).unwrap();
        let qf_b = qf_threshold(&bigger, &tol, None, &budget).unwrap();
        prop_assert!(qf_b.p_hat <= qf_f.p_hat);

        // embedding into a larger ground set changes nothing
        let wide = f.with_ground(n + 2).unwrap();
        prop_assert_eq!(q_threshold(&wide, &tol, &budget).unwrap().p_hat, q_f.p_hat);
        prop_assert_eq!(
            qf_threshold(&wide, &tol, None, &budget).unwrap().p_hat,
            qf_f.p_hat
        );
        let p = rat(3, 10);
        prop_assert_eq!(
            min_cover_weight(&wide, &p).unwrap().weight,
            min_cover_weight(&f, &p).unwrap().weight
        );
        prop_assert_eq!(
            lp_min_weight(&wide, &p, Some(2)).unwrap().value,
            lp_min_weight(&f, &p, Some(2)).unwrap().value
        );
    }

    #[test]
    fn threshold_ordering(f in family_strategy(4)) {
        let tol = pow(&rat(1, 2), 12);
        let budget = rat(1, 2);
        let r = f.max_minimal_size().max(1);
        let q = q_threshold(&f, &tol, &budget).unwrap().p_hat;
        let qf_r = qf_threshold(&f, &tol, Some(r), &budget).unwrap().p_hat;
        let qf_unb = qf_threshold(&f, &tol, None, &budget).unwrap().p_hat;
        prop_assert!(q <= &qf_r + &tol);
        prop_assert!(q <= &qf_unb + &tol);
        prop_assert!(qf_r <= &qf_unb + &tol);
    }

    #[test]
    fn expected_mass_at_most_power_bound(
        masks in prop::collection::vec((1u32..64, 1i64..=8, 1i64..=8), 0..5),
        m in 0usize..=6,
    ) {
        let n = 6;
        let lambda = Lambda::new(
            GroundSet::new(n).unwrap(),
            masks
                .into_iter()
                .map(|(mask, num, den)| (Subset::from_mask(mask), rat(num, den))),
        )
        .unwrap();
        let mass = expected_mass(&lambda, n, m).unwrap();
        let bound: Rat = lambda
            .entries()
            .map(|(s, w)| w * pow(&rat(m as i64, n as i64), s.len()))
            .sum();
        prop_assert!(mass <= bound);
        // and the probability really is a probability
        for (s, _) in lambda.entries() {
            let pr = subset_prob(s.len(), n, m).unwrap();
            prop_assert!(pr >= int(0) && pr <= int(1));
        }
    }

    #[test]
    fn markov_consistency(
        masks in prop::collection::vec((1u32..32, 1i64..=4, 2i64..=8), 0..4),
        m in 0usize..=5,
        r in 1usize..=3,
    ) {
        let n = 5;
        let lambda = Lambda::new(
            GroundSet::new(n).unwrap(),
            masks
                .into_iter()
                .map(|(mask, num, den)| (Subset::from_mask(mask), rat(num, den))),
        )
        .unwrap();
        let o1 = o1_probability(&lambda, n, m, r).unwrap();
        let floor = int(1) - int(2 * r as i64) * expected_mass(&lambda, n, m).unwrap();
        prop_assert!(o1 >= floor);
    }
}

#[test]
fn normalize_contract_feasibility_and_improved_weight() {
    // lambda = 1 on each minimal element plus empty-set mass k/10;
    // normalization must stay feasible and meet the improved weight bound
    let families = [
        MinimalFamily::parse_fam("n=3\n1 2\n2 3\n1 3").unwrap(),
        MinimalFamily::singletons(4).unwrap(),
        MinimalFamily::parse_fam("n=5\n1 2 3\n3 4\n5").unwrap(),
    ];
    let p = rat(1, 100);
    for f in &families {
        for k in 0..10i64 {
            let l0 = rat(k, 10);
            let lambda = Lambda::new(
                f.ground(),
                f.minimal()
                    .iter()
                    .map(|&mm| (mm, int(1)))
                    .chain([(Subset::EMPTY, l0.clone())]),
            )
            .unwrap();
            assert!(lambda.is_feasible_for(f));
            let normd = normalize_lambda(&lambda).unwrap();
            assert_eq!(normd.empty_set_weight(), int(0));
            assert!(normd.is_feasible_for(f));
            if lambda.weight(&p) <= rat(1, 2) {
                let improved =
                    (int(1) - int(2) * &l0) / (int(2) * (int(1) - &l0));
                assert!(
                    normd.weight(&p) <= improved,
                    "family {f}, l0 = {l0}"
                );
            }
        }
    }
}

#[test]
fn claim_holds_exhaustively_on_small_ground() {
    // all (Y, I) pairs on n = 5 for a batch of structured r-supported
    // assignments, feasibility anchored at I = the full ground set
    let n = 5;
    let ground = GroundSet::new(n).unwrap();
    let universe = Subset::universe(n);
    for r in 1..=3usize {
        let mut lambdas: Vec<Lambda> = Vec::new();
        // uniform mass on all size-r subsets, scaled to be feasible at V
        let size_r: Vec<Subset> = (0u32..1 << n)
            .map(Subset::from_mask)
            .filter(|s| s.len() == r)
            .collect();
        let count = size_r.len() as i64;
        lambdas.push(
            Lambda::new(ground, size_r.iter().map(|&s| (s, rat(1, count)))).unwrap(),
        );
        // lopsided: everything on one set plus singletons
        lambdas.push(
            Lambda::new(
                ground,
                [(Subset::from_mask((1 << r) - 1), rat(1, 2))]
                    .into_iter()
                    .chain((1..=n).map(|v| (Subset::singleton(v), rat(1, 2)))),
            )
            .unwrap(),
        );
        for lambda in &lambdas {
            assert!(lambda.constraint_sum(universe) >= Rat::one());
            for i_mask in 0u32..1 << n {
                let i = Subset::from_mask(i_mask);
                if lambda.constraint_sum(i) < Rat::one() {
                    continue; // mu undefined off the feasible members
                }
                for y_mask in 0u32..1 << n {
                    let y = Subset::from_mask(y_mask);
                    let c = claim_slack(y, i, lambda, r).unwrap();
                    assert!(
                        c.lhs <= c.rhs,
                        "claim violated: r={r} I={{{i}}} Y={{{y}}} lhs={} rhs={}",
                        c.lhs,
                        c.rhs
                    );
                }
            }
        }
    }
}

#[test]
fn feasibility_at_minimal_elements_extends_to_all_members() {
    // the constraint left side is monotone in the member, checked
    // exhaustively on every member of a batch of families on n <= 8
    let families = [
        MinimalFamily::parse_fam("n=8\n1 2\n3 4 5\n6\n7 8").unwrap(),
        MinimalFamily::parse_fam("n=6\n1 2 3\n2 3 4\n4 5 6").unwrap(),
        MinimalFamily::singletons(5).unwrap(),
    ];
    for f in &families {
        let lambda = Lambda::new(
            f.ground(),
            f.minimal().iter().map(|&mm| (mm, rat(1, 1))),
        )
        .unwrap();
        assert!(lambda.is_feasible_for(f));
        for member in f.members() {
            assert!(
                lambda.constraint_sum(member) >= Rat::one(),
                "member {{{member}}} of {f}"
            );
        }
    }
}
