use jnp_core::catalog::{assignment, emit};
use jnp_core::search::{cross_check_reduction, enumerate_jnp, projection, SearchLaw};
use jnp_core::{laws, Algebra, Field, Orientation, Scalar};

fn base(name: &str) -> Algebra {
    emit(name, None, &assignment(&[])).unwrap().algebra
}

fn l(v: &[Scalar], i: usize) -> &Scalar {
    &v[i - 1]
}

#[test]
fn a1_solutions_have_case1_shape() {
    for p in [3, 5] {
        let f = Field::Prime(p);
        let r = enumerate_jnp(&base("2d-A1"), f, SearchLaw::Jnp, 10_000).unwrap();
        assert!(r.count > 0);
        for s in &r.solutions {
            let v = projection(s);
            assert_eq!(l(&v, 1), l(&v, 6));
            for i in [3, 5, 7, 8] {
                assert!(l(&v, i).is_zero(), "l{i} over F_{p}");
            }
        }
    }
}

#[test]
fn a2_solutions_have_case2_shape() {
    for p in [3, 5] {
        let f = Field::Prime(p);
        let r = enumerate_jnp(&base("2d-A2"), f, SearchLaw::Jnp, 10_000).unwrap();
        assert!(r.count > 0);
        for s in &r.solutions {
            let v = projection(s);
            let s12 = l(&v, 1) + l(&v, 2);
            for i in [4, 6, 8] {
                assert_eq!(&s12, l(&v, i));
            }
            for i in [3, 5, 7] {
                assert!(l(&v, i).is_zero());
            }
        }
    }
}

#[test]
fn solution_counts_are_stable() {
    // The shapes leave (l1, l2, l4) free on A1 and (l1, l2) free on A2.
    let f = Field::Prime(3);
    assert_eq!(enumerate_jnp(&base("2d-A1"), f, SearchLaw::Jnp, 100).unwrap().count, 27);
    assert_eq!(enumerate_jnp(&base("2d-A2"), f, SearchLaw::Jnp, 100).unwrap().count, 9);
    let f = Field::Prime(5);
    assert_eq!(enumerate_jnp(&base("2d-A1"), f, SearchLaw::Jnp, 1000).unwrap().count, 125);
    assert_eq!(enumerate_jnp(&base("2d-A2"), f, SearchLaw::Jnp, 1000).unwrap().count, 25);
}

#[test]
fn representatives_pass_and_are_first_in_bucket() {
    let f = Field::Prime(3);
    let r = enumerate_jnp(&base("2d-A1"), f, SearchLaw::Jnp, 100).unwrap();
    assert_eq!(r.buckets.iter().map(|b| b.size).sum::<usize>(), r.count);
    for b in &r.buckets {
        let first = r
            .solutions
            .iter()
            .position(|s| s == &b.representative)
            .unwrap();
        let alg = base("2d-A1").reduce_into(f).unwrap().with_circ(b.representative.clone(), Orientation::Left).unwrap();
        assert!(laws::check_jnp(&alg).unwrap().pass);
        let inv = jnp_core::catalog::invariants(&alg).unwrap();
        assert_eq!(inv, b.invariants);
        for s in &r.solutions[..first] {
            let other = alg.clone().with_circ(s.clone(), Orientation::Left).unwrap();
            assert_ne!(jnp_core::catalog::invariants(&other).unwrap(), b.invariants);
        }
    }
}

#[test]
fn one_dimensional_matches_hand_expansion() {
    // On k·1 every product λ·1∘1 = λ·1 satisfies the axioms.
    let f = Field::Prime(5);
    let r = enumerate_jnp(&base("1d-unit"), f, SearchLaw::Jnp, 100).unwrap();
    let lambdas: Vec<String> = r.solutions.iter().map(|s| s.get(0, 0, 0).to_string()).collect();
    assert_eq!(lambdas, ["0", "1", "2", "3", "4"]);
    assert!(cross_check_reduction(&base("1d-unit"), f, 100).unwrap());
}

#[test]
fn reduction_matches_full_scan() {
    assert!(cross_check_reduction(&base("2d-A1"), Field::Prime(2), 1 << 10).unwrap());
    assert!(cross_check_reduction(&base("2d-A2"), Field::Prime(2), 1 << 10).unwrap());
    assert!(cross_check_reduction(&base("2d-A1"), Field::Prime(3), 10_000).unwrap());
    assert!(cross_check_reduction(&base("2d-A2"), Field::Prime(3), 10_000).unwrap());
}

#[test]
fn dnp_is_a_subset_of_jnp() {
    let f = Field::Prime(3);
    let jnp = enumerate_jnp(&base("2d-A1"), f, SearchLaw::Jnp, 100).unwrap();
    let dnp = enumerate_jnp(&base("2d-A1"), f, SearchLaw::Dnp, 100).unwrap();
    assert!(dnp.solutions.iter().all(|s| jnp.solutions.contains(s)));
    let nov = enumerate_jnp(&base("2d-A1"), f, SearchLaw::Novikov, 100).unwrap();
    assert!(jnp.solutions.iter().all(|s| nov.solutions.contains(s)));
}

#[test]
fn rational_field_and_budget_are_rejected() {
    assert!(enumerate_jnp(&base("2d-A1"), Field::Rational, SearchLaw::Jnp, 100).is_err());
    assert!(matches!(
        cross_check_reduction(&base("2d-A1"), Field::Prime(3), 100),
        Err(jnp_core::Error::Budget { needed: 6561, .. })
    ));
}
