//! Invariant forms, integrals and Frobenius structures.
//!
//! A bilinear form is stored as its Gram matrix `G[i][j] = B(e_i, e_j)` and a
//! functional as its row of values on the basis. Right algebras are handled
//! through their opposite (left) product.

use serde::Serialize;

use crate::algebra::{Algebra, Orientation, StructureTensor, Which};
use crate::construct::{self, operator_circ};
use crate::error::{Error, Result};
use crate::laws::{self, finish, for_pairs, for_triples, Counterexample, Ops, Step, Verdict};
use crate::matrix::{nonsingular_combination, Matrix};
use crate::scalar::Scalar;
use crate::vector;

/// `xᵀ G y`.
pub fn form_value(g: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let gy = g.mul_vec(y).expect("form size");
    vector::dot(x, &gy, g.field())
}

fn check_form_shape(alg: &Algebra, g: &Matrix) -> Result<()> {
    laws::check_square(alg, g, "form")
}

fn symmetric_step(g: &Matrix) -> Step {
    for_pairs(g.rows(), "symmetric", |i, j| (vec![g.get(i, j).clone()], vec![g.get(j, i).clone()]))
}

fn nondegenerate_step(g: &Matrix) -> Step {
    let rank = g.rank();
    if rank == g.rows() {
        return Ok(());
    }
    Err((
        "nondegenerate".into(),
        Counterexample {
            indices: vec![rank as i64],
            lhs: vec![],
            rhs: vec![],
        },
    ))
}

/// `B(a·b, c) = B(a, b·c)`.
fn qua1_step(dot: &StructureTensor, g: &Matrix) -> Step {
    let d = Ops { t: dot };
    let n = dot.dim();
    let e = |i| vector::basis(dot.field(), n, i);
    for_triples(n, "quaJNP1", |a, b, c| {
        (vec![form_value(g, &d.ee(a, b), &e(c))], vec![form_value(g, &e(a), &d.ee(b, c))])
    })
}

/// `B(a∘b, c) = −B(b, a∘c + c∘a)`.
fn qua2_step(circ: &StructureTensor, g: &Matrix) -> Step {
    let o = Ops { t: circ };
    let n = circ.dim();
    let e = |i| vector::basis(circ.field(), n, i);
    for_triples(n, "quaJNP2", |a, b, c| {
        let lhs = form_value(g, &o.ee(a, b), &e(c));
        let rhs = -form_value(g, &e(b), &vector::add(&o.ee(a, c), &o.ee(c, a)));
        (vec![lhs], vec![rhs])
    })
}

/// Quadratic check for a left or right JNP algebra; the JNP axioms are
/// checked first.
pub fn check_quadratic(alg: &Algebra, g: &Matrix) -> Result<Verdict> {
    check_form_shape(alg, g)?;
    let circ = alg.left_circ()?;
    let name = match alg.orientation {
        Orientation::Left => "quadratic",
        Orientation::Right => "right-quadratic",
    };
    let step = (|| {
        laws::jnp_step(&alg.dot, &circ, &alg.unit)?;
        symmetric_step(g)?;
        nondegenerate_step(g)?;
        qua1_step(&alg.dot, g)?;
        qua2_step(&circ, g)
    })();
    Ok(finish(name, step))
}

/// Symmetric, nondegenerate and associative-invariant form on a unital
/// commutative associative algebra.
pub fn check_dot_frobenius(alg: &Algebra, g: &Matrix) -> Result<Verdict> {
    check_form_shape(alg, g)?;
    let step = (|| {
        laws::unital_comm_assoc_step(&alg.dot, &alg.unit)?;
        symmetric_step(g)?;
        nondegenerate_step(g)?;
        qua1_step(&alg.dot, g)
    })();
    Ok(finish("dot-frobenius", step))
}

fn sym_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n + j - i - i * i.saturating_sub(1) / 2
}

fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Basis of the invariant symmetric bilinear forms.
pub fn invariant_form_space(alg: &Algebra) -> Result<Vec<Matrix>> {
    let circ = alg.left_circ()?;
    let n = alg.dim;
    let f = alg.field;
    let pairs = upper_pairs(n);
    let m = pairs.len();
    debug_assert!(pairs.iter().enumerate().all(|(k, &(i, j))| sym_index(n, i, j) == k));
    let d = Ops { t: &alg.dot };
    let c = Ops { t: &circ };
    // Row for B(x, y) - B(z, w) = 0 with x, y, z, w vectors.
    let mut rows = Vec::new();
    let push = |x: &[Scalar], y: &[Scalar], sign: &Scalar, row: &mut Vec<Scalar>| {
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    row[sym_index(n, i, j)] += &(&(xi * yj) * sign);
                }
            }
        }
    };
    let one = f.one();
    let minus = -&one;
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let (ea, eb, ek) = (alg.basis(a), alg.basis(b), alg.basis(k));
                let mut r1 = vec![f.zero(); m];
                push(&d.ee(a, b), &ek, &one, &mut r1);
                push(&ea, &d.ee(b, k), &minus, &mut r1);
                rows.push(r1);
                let mut r2 = vec![f.zero(); m];
                push(&c.ee(a, b), &ek, &one, &mut r2);
                push(&eb, &vector::add(&c.ee(a, k), &c.ee(k, a)), &one, &mut r2);
                rows.push(r2);
            }
        }
    }
    let kernel = if n == 0 {
        Vec::new()
    } else {
        Matrix::from_rows(f, rows)?.kernel_basis()
    };
    Ok(kernel
        .into_iter()
        .map(|x| {
            let mut g = Matrix::zeros(f, n, n);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                g.set(i, j, x[k].clone());
                g.set(j, i, x[k].clone());
            }
            g
        })
        .collect())
}

/// Basis of the functionals `v` with `v((a∘b)·c) = −v(b·(a∘c + c∘a))`.
pub fn integral_space(alg: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let rows = integral_rows(alg)?;
    if alg.dim == 0 {
        return Ok(Vec::new());
    }
    Ok(Matrix::from_rows(alg.field, rows)?.kernel_basis())
}

fn integral_rows(alg: &Algebra) -> Result<Vec<Vec<Scalar>>> {
    let circ = alg.left_circ()?;
    let d = Ops { t: &alg.dot };
    let c = Ops { t: &circ };
    let n = alg.dim;
    let mut rows = Vec::with_capacity(n * n * n);
    for a in 0..n {
        for b in 0..n {
            for k in 0..n {
                let lhs = d.ve(&c.ee(a, b), k);
                let rhs = d.ev(b, &vector::add(&c.ee(a, k), &c.ee(k, a)));
                rows.push(vector::add(&lhs, &rhs));
            }
        }
    }
    Ok(rows)
}

pub fn is_integral(alg: &Algebra, v: &[Scalar]) -> Result<bool> {
    alg.check_len(v)?;
    Ok(integral_rows(alg)?.iter().all(|r| vector::dot(r, v, alg.field).is_zero()))
}

/// Gram matrix of `(a, b) ↦ v(a·b)`.
pub fn gram_of_functional(alg: &Algebra, v: &[Scalar]) -> Result<Matrix> {
    alg.check_len(v)?;
    let n = alg.dim;
    let mut g = Matrix::zeros(alg.field, n, n);
    for i in 0..n {
        for j in 0..n {
            g.set(i, j, vector::dot(v, alg.dot.basis_product(i, j), alg.field));
        }
    }
    Ok(g)
}

pub fn integral_to_form(alg: &Algebra, v: &[Scalar]) -> Result<Matrix> {
    if !is_integral(alg, v)? {
        return Err(Error::NotInSpace("functional is not an integral".into()));
    }
    gram_of_functional(alg, v)
}

fn is_invariant(alg: &Algebra, g: &Matrix) -> Result<bool> {
    let circ = alg.left_circ()?;
    Ok(g.is_symmetric() && qua1_step(&alg.dot, g).is_ok() && qua2_step(&circ, g).is_ok())
}

/// `v(a) = B(a, 1_A)`.
pub fn form_to_integral(alg: &Algebra, g: &Matrix) -> Result<Vec<Scalar>> {
    check_form_shape(alg, g)?;
    if !is_invariant(alg, g)? {
        return Err(Error::NotInSpace("form is not invariant".into()));
    }
    g.mul_vec(&alg.unit)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", rename_all = "lowercase")]
pub enum FrobeniusAnswer {
    Yes { integral: Vec<Scalar>, form: Matrix },
    No,
}

/// Decides whether some invariant form is nondegenerate and, if so, returns
/// the first one found together with its integral.
pub fn is_frobenius(alg: &Algebra, budget: u128) -> Result<FrobeniusAnswer> {
    let forms = invariant_form_space(alg)?;
    if alg.dim == 0 {
        return Ok(FrobeniusAnswer::Yes {
            integral: vec![],
            form: Matrix::zeros(alg.field, 0, 0),
        });
    }
    let Some(coeffs) = nonsingular_combination(&forms, budget)? else {
        return Ok(FrobeniusAnswer::No);
    };
    let mut g = Matrix::zeros(alg.field, alg.dim, alg.dim);
    for (c, m) in coeffs.iter().zip(&forms) {
        g = g.add(&m.scale(c))?;
    }
    let integral = form_to_integral(alg, &g)?;
    Ok(FrobeniusAnswer::Yes { integral, form: g })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusPair {
    pub integral: Vec<Scalar>,
    /// `e = Σ E[i][j] e_i ⊗ e_j`.
    pub casimir: Matrix,
    pub euler_casimir: Vec<Scalar>,
}

pub fn frobenius_pair(alg: &Algebra, v: &[Scalar]) -> Result<FrobeniusPair> {
    if !is_integral(alg, v)? {
        return Err(Error::NotInSpace("functional is not an integral".into()));
    }
    let f = gram_of_functional(alg, v)?;
    let e = f
        .inverse()
        .map_err(|_| Error::Degenerate(format!("Gram matrix of v has rank {}", f.rank())))?
        .transpose();
    let n = alg.dim;
    let field = alg.field;
    let mut omega = alg.zero_vector();
    let mut left = alg.zero_vector();
    let mut right = alg.zero_vector();
    for i in 0..n {
        for m in 0..n {
            let c = e.get(i, m);
            if c.is_zero() {
                continue;
            }
            vector::axpy(&mut omega, c, alg.dot.basis_product(i, m));
            left[m] += &(c * &v[i]);
            right[i] += &(c * &v[m]);
        }
    }
    if left != alg.unit || right != alg.unit {
        return Err(Error::Internal("pair does not recover the unit".into()));
    }
    for a in 0..n {
        let l = alg.dot.left_operator(&vector::basis(field, n, a));
        if l.mul(&e)? != e.mul(&l.transpose())? {
            return Err(Error::Internal("casimir element is not balanced".into()));
        }
    }
    Ok(FrobeniusPair {
        integral: v.to_vec(),
        casimir: e,
        euler_casimir: omega,
    })
}

/// `P̂ = G⁻¹ Pᵀ G`, so that `B(P a, b) = B(a, P̂ b)`.
pub fn adjoint_operator(alg: &Algebra, p: &Matrix, g: &Matrix) -> Result<Matrix> {
    laws::check_square(alg, p, "operator")?;
    check_form_shape(alg, g)?;
    let ginv = g.inverse().map_err(|_| Error::Degenerate("form is degenerate".into()))?;
    ginv.mul(&p.transpose())?.mul(g)
}

/// `a ∘_q b = a · (P + q P̂)(b)` on a unital commutative differential
/// Frobenius algebra, with the quadratic verdict for the result.
pub fn differential_frobenius_construct(
    alg: &Algebra,
    p: &Matrix,
    g: &Matrix,
    q: &Scalar,
) -> Result<(Algebra, Verdict)> {
    if alg.field.characteristic() == 2 {
        return Err(Error::Characteristic("differential Frobenius construction needs char != 2".into()));
    }
    check_dot_frobenius(alg, g)?.into_result()?;
    laws::check_derivation(alg, Which::Dot, p)?.into_result()?;
    let phat = adjoint_operator(alg, p, g)?;
    let d = p.add(&phat.scale(q))?;
    let mut out = alg.clone();
    out.circ = Some(operator_circ(&alg.dot, &d));
    out.orientation = Orientation::Left;
    out.bracket = None;
    let verdict = check_quadratic(&out, g)?;
    Ok((out, verdict))
}

#[derive(Clone, Debug)]
pub struct FrobeniusJacobi {
    pub algebra: Algebra,
    pub form: Matrix,
    pub verdict: Verdict,
}

/// Jacobi algebra on `A ⊗ B` with the product form `B_A ⊗ B_B`.
pub fn frobenius_jacobi_tensor(a: &Algebra, ga: &Matrix, b: &Algebra, gb: &Matrix) -> Result<FrobeniusJacobi> {
    if a.orientation != Orientation::Left {
        return Err(Error::Orientation {
            expected: "left",
            found: a.orientation.name(),
        });
    }
    if b.orientation != Orientation::Right {
        return Err(Error::Orientation {
            expected: "right",
            found: b.orientation.name(),
        });
    }
    check_quadratic(a, ga)?.into_result()?;
    check_quadratic(b, gb)?.into_result()?;
    let algebra = construct::tensor_jacobi(a, b)?.output;
    let form = ga.kron(gb);
    let verdict = check_frobenius_jacobi(&algebra, &form)?;
    Ok(FrobeniusJacobi { algebra, form, verdict })
}

/// Jacobi axioms plus a symmetric nondegenerate form invariant for both
/// the dot product and the bracket.
pub fn check_frobenius_jacobi(alg: &Algebra, g: &Matrix) -> Result<Verdict> {
    check_form_shape(alg, g)?;
    let br = alg.product(Which::Bracket)?;
    let n = alg.dim;
    let e = |i| vector::basis(alg.field, n, i);
    let step = (|| {
        laws::jacobi_step(&alg.dot, br, &alg.unit)?;
        symmetric_step(g)?;
        nondegenerate_step(g)?;
        let d = Ops { t: &alg.dot };
        for_triples(n, "ass-inv", |a, b, c| {
            (vec![form_value(g, &d.ee(a, b), &e(c))], vec![form_value(g, &e(a), &d.ee(b, c))])
        })?;
        let l = Ops { t: br };
        for_triples(n, "Lie-inv", |a, b, c| {
            (vec![form_value(g, &l.ee(a, b), &e(c))], vec![form_value(g, &e(a), &l.ee(b, c))])
        })
    })();
    Ok(finish("frobenius-jacobi", step))
}

/// Whether `G` is nondegenerate, for use as a quick precondition.
pub fn is_nondegenerate(g: &Matrix) -> bool {
    g.is_square() && g.rank() == g.rows()
}
