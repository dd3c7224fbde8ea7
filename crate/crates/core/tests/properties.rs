use jnp_core::catalog::standard_corpus;
use jnp_core::construct::{commutator_jacobi, operator_circ, tensor_jnp};
use jnp_core::frobenius::{form_to_integral, integral_space, integral_to_form, invariant_form_space};
use jnp_core::io::AlgebraFile;
use jnp_core::laws::{check_jnp, check_novikov, check_unital_comm_assoc};
use jnp_core::{vector, Algebra, Field, Scalar};
use proptest::prelude::*;

fn corpus() -> Vec<(String, Algebra)> {
    standard_corpus().into_iter().map(|(n, f)| (n, f.algebra)).collect()
}

fn scalars(f: Field, xs: &[(i64, i64)]) -> Vec<Scalar> {
    xs.iter()
        .map(|&(n, d)| {
            // Denominators may vanish in characteristic p.
            let d = if f == Field::Rational { d } else { 1 };
            f.parse(&format!("{n}/{d}")).unwrap()
        })
        .collect()
}

fn entry() -> impl Strategy<Value = usize> {
    0..corpus().len()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    proptest::collection::vec((-4i64..=4, 1i64..=3), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prime_field_arithmetic(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
        let f = Field::prime(p).unwrap();
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_none());
        }
    }

    #[test]
    fn products_are_bilinear(i in entry(), x in coords(), y in coords(), z in coords()) {
        let (_, alg) = &corpus()[i];
        let n = alg.dim;
        let f = alg.field;
        let (x, y, z) = (scalars(f, &x[..n.min(4)]), scalars(f, &y[..n.min(4)]), scalars(f, &z[..n.min(4)]));
        prop_assume!(x.len() == n);
        let circ = alg.left_circ().unwrap();
        for t in [&alg.dot, &circ] {
            let lhs = t.product(&vector::add(&x, &y), &z);
            let rhs = vector::add(&t.product(&x, &z), &t.product(&y, &z));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn circ_factors_through_the_unit(i in entry()) {
        let (name, alg) = &corpus()[i];
        let circ = alg.left_circ().unwrap();
        let d = circ.left_operator(&alg.unit);
        prop_assert_eq!(&operator_circ(&alg.dot, &d), &circ, "{}", name);
    }

    #[test]
    fn jnp_implies_weaker_laws(i in entry()) {
        let (name, alg) = &corpus()[i];
        let alg = if alg.orientation == jnp_core::Orientation::Right { alg.opposite() } else { alg.clone() };
        prop_assert!(check_jnp(&alg).unwrap().pass, "{}", name);
        prop_assert!(check_novikov(&alg).unwrap().pass, "{}", name);
        prop_assert!(check_unital_comm_assoc(&alg).pass, "{}", name);
    }

    #[test]
    fn perturbations_yield_genuine_witnesses(i in entry(), pos in 0usize..64, delta in 1i64..4) {
        let (_, alg) = &corpus()[i];
        let alg = if alg.orientation == jnp_core::Orientation::Right { alg.opposite() } else { alg.clone() };
        let n = alg.dim;
        let (a, b, c) = (pos % n, (pos / n) % n, (pos / (n * n)) % n);
        let mut bad = alg.clone();
        let t = bad.circ.as_mut().unwrap();
        let x = t.get(a, b, c) + &alg.field.from_i64(delta);
        t.set(a, b, c, x);
        let v = check_jnp(&bad).unwrap();
        if let Some(ce) = v.counterexample {
            prop_assert!(!v.pass);
            prop_assert_ne!(ce.lhs, ce.rhs);
        } else {
            prop_assert!(v.pass);
        }
    }

    #[test]
    fn files_round_trip(i in entry()) {
        let file: AlgebraFile = standard_corpus().swap_remove(i).1;
        let back = AlgebraFile::parse(&file.to_string_pretty()).unwrap();
        prop_assert_eq!(back, file);
    }
}

#[test]
fn integrals_and_forms_invert_each_other() {
    for (name, alg) in corpus() {
        let integrals = integral_space(&alg).unwrap();
        assert_eq!(integrals.len(), invariant_form_space(&alg).unwrap().len(), "{name}");
        for v in integrals {
            let g = integral_to_form(&alg, &v).unwrap();
            assert_eq!(form_to_integral(&alg, &g).unwrap(), v, "{name}");
        }
    }
}

#[test]
fn commutator_bracket_is_antisymmetric() {
    for (name, alg) in corpus() {
        if alg.orientation == jnp_core::Orientation::Right {
            continue;
        }
        let out = commutator_jacobi(&alg).unwrap().output;
        let br = out.bracket.as_ref().unwrap();
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                assert_eq!(br.basis_product(i, j), vector::neg(br.basis_product(j, i)).as_slice(), "{name}");
            }
        }
    }
}

#[test]
fn tensor_dimensions_multiply() {
    let c = corpus();
    let small: Vec<&Algebra> = c.iter().map(|(_, a)| a).filter(|a| a.dim == 2 && a.field == Field::Rational).take(3).collect();
    for a in &small {
        for b in &small {
            let t = tensor_jnp(a, b).unwrap().output;
            assert_eq!(t.dim, 4);
            assert!(check_jnp(&t).unwrap().pass);
        }
    }
}
