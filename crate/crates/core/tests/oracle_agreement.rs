use binfpt::base_p::truncate;
use binfpt::{fpt, nu_naive, nu_semigroup, Binomial, Budget, NuQuery, Prime, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_binomial(rng: &mut ChaCha8Rng) -> Binomial {
    loop {
        let m = rng.random_range(1..=3);
        let a: Vec<u64> = (0..m).map(|_| rng.random_range(0..=6)).collect();
        let b: Vec<u64> = (0..m).map(|_| rng.random_range(0..=6)).collect();
        if let Ok(g) = Binomial::from_exponents(&a, &b) {
            if g.vanishes_at_origin() {
                return g;
            }
        }
    }
}

#[test]
fn closed_form_matches_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let budget = Budget::default();
    let mut failures = Vec::new();
    for _ in 0..300 {
        let g = random_binomial(&mut rng);
        for p in [2u64, 3, 5, 7, 11] {
            let prime = Prime::new(p).unwrap();
            let res = fpt(&g, prime).unwrap();
            assert!(res.value.is_positive() && res.value <= Rational::one());
            for e in 1..=2 {
                let q = NuQuery::new(g.clone(), prime, e).unwrap();
                let predicted = truncate(&res.value, p, e).unwrap().scale(p.pow(e));
                let semi = nu_semigroup(&q, &budget).unwrap();
                if predicted != semi {
                    failures.push(format!(
                        "{g} p={p} e={e}: predicted {predicted} ({:?}) oracle {semi}",
                        res.case
                    ));
                }
                if p.pow(e) <= 125 {
                    assert_eq!(nu_naive(&q, &budget).unwrap(), semi, "{g} p={p} e={e}");
                }
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} mismatches:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

#[test]
fn boundary_candidate_instance_deep_levels() {
    let g = Binomial::new(vec!["x".into(), "y".into()], vec![0, 4], vec![5, 3]).unwrap();
    let prime = Prime::new(5).unwrap();
    let res = fpt(&g, prime).unwrap();
    for e in 1..=5 {
        let q = NuQuery::new(g.clone(), prime, e).unwrap();
        let predicted = truncate(&res.value, 5, e).unwrap().scale(5u64.pow(e));
        assert_eq!(
            predicted,
            nu_semigroup(&q, &Budget::default()).unwrap(),
            "e={e}"
        );
    }
}
