use machin_refine::exact::{combination_product, pi_interval, Rational};
use machin_refine::identity::{
    corpus, verify, verify_with, MachinIdentity, Refutation, TangentRoute, TangentWitness, Verdict,
};
use machin_refine::precision::PrecisionBudget;

fn quarter_pi() -> machin_refine::exact::Interval {
    pi_interval(&Rational::pow10(-30)).unwrap().scale(&Rational::new(1, 4).unwrap())
}

#[test]
fn corpus_identities_are_true() {
    for (name, id) in corpus::all() {
        let Verdict::True(v) = verify(&id) else { panic!("{name}: {id}") };
        assert!(v.certificate().angle_sum.intersects(&quarter_pi()), "{name}");
    }
}

#[test]
fn perturbed_corpus_identities_are_false() {
    for (name, id) in corpus::all() {
        let pairs = id.pairs();
        for i in 0..pairs.len() {
            let mut flipped = pairs.clone();
            flipped[i].0 = -flipped[i].0;
            let mut bumped = pairs.clone();
            bumped[i].0 += 1;
            bumped.retain(|(c, _)| *c != 0);
            for p in [flipped, bumped] {
                let bad = MachinIdentity::from_pairs(&p).unwrap();
                let verdict = verify(&bad);
                assert!(verdict.is_false(), "{name} perturbed to {bad}: {verdict:?}");
            }
        }
    }
}

#[test]
fn five_times_euler_is_a_branch_refutation() {
    // tan(5π/4) = 1, so only the enclosure separates it from π/4.
    let id: MachinIdentity = "5*atan(1/2) + 5*atan(1/3) = pi/4".parse().unwrap();
    match verify(&id) {
        Verdict::False(Refutation::Branch(s)) => assert!(s.lo() > &Rational::from_integer(3)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn certificates_replay() {
    for (name, id) in corpus::all() {
        let Verdict::True(first) = verify(&id) else { panic!("{name}") };
        let Verdict::True(again) = verify(&id) else { panic!("{name}") };
        assert_eq!(first, again, "{name}");
        match &first.certificate().tangent {
            TangentWitness::Product(z) => {
                assert_eq!(z.re, z.im, "{name}");
                assert_eq!(z, &combination_product(&id.pairs()).unwrap(), "{name}");
            }
            TangentWitness::Balance(w) => panic!("{name} is small enough for the product: {w:?}"),
        }
        // The balance route certifies the same identity with the same branch.
        let Verdict::True(b) = verify_with(&id, TangentRoute::Balance, PrecisionBudget::default()) else {
            panic!("{name}")
        };
        assert_eq!(b.certificate().angle_sum, first.certificate().angle_sum, "{name}");
    }
}
