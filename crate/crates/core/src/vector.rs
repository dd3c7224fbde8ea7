//! Coefficient vectors as plain scalar slices.

use crate::scalar::{Field, Scalar};

pub fn zeros(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn basis(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zeros(field, n);
    v[i] = field.one();
    v
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * x).collect()
}

pub fn neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

/// `acc += c * a`, skipping the work when `c` is zero.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, a: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (t, x) in acc.iter_mut().zip(a) {
        if !x.is_zero() {
            *t += &(c * x);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    let mut s = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += &(x * y);
        }
    }
    s
}

pub fn is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Parses a comma-separated list of scalars.
pub fn parse(field: Field, s: &str) -> crate::Result<Vec<Scalar>> {
    s.split(',').map(|t| field.parse(t)).collect()
}

pub fn to_strings(a: &[Scalar]) -> Vec<String> {
    a.iter().map(Scalar::to_string).collect()
}
