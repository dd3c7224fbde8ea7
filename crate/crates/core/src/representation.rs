//! Modules over a JNP algebra, given by matrix families `l`, `r`, `s`
//! indexed by the basis of the algebra.

use serde::Serialize;

use crate::algebra::{Algebra, Which};
use crate::error::{Error, Result};
use crate::frobenius::gram_of_functional;
use crate::laws::{self, finish, Counterexample, Step, Verdict};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleStructure {
    pub dim: usize,
    pub l: Vec<Matrix>,
    pub r: Vec<Matrix>,
    pub s: Vec<Matrix>,
}

impl ModuleStructure {
    fn validate(&self, alg: &Algebra) -> Result<()> {
        for (name, fam) in [("l", &self.l), ("r", &self.r), ("s", &self.s)] {
            if fam.len() != alg.dim {
                return Err(Error::Dimension(format!(
                    "module family {name} has {} maps for algebra of dimension {}",
                    fam.len(),
                    alg.dim
                )));
            }
            if let Some(m) = fam.iter().find(|m| m.rows() != self.dim || m.cols() != self.dim) {
                return Err(Error::Dimension(format!(
                    "module map of size {}x{} in module of dimension {}",
                    m.rows(),
                    m.cols(),
                    self.dim
                )));
            }
            if let Some(m) = fam.iter().find(|m| m.field() != alg.field) {
                return Err(Error::FieldMismatch(m.field().to_string(), alg.field.to_string()));
            }
        }
        Ok(())
    }
}

/// `φ(x) = Σ x_k φ(e_k)`.
fn eval(alg: &Algebra, dim: usize, fam: &[Matrix], x: &[Scalar]) -> Matrix {
    let mut out = Matrix::zeros(alg.field, dim, dim);
    for (c, m) in x.iter().zip(fam) {
        if !c.is_zero() {
            out = out.add(&m.scale(c)).expect("same size");
        }
    }
    out
}

fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b).expect("same size")
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.add(b).expect("same size")
}

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.sub(b).expect("same size")
}

/// Compares two operators column by column; the witness is `[a, b, v]`.
fn compare(sub_law: &str, a: usize, b: usize, lhs: &Matrix, rhs: &Matrix) -> Step {
    for v in 0..lhs.cols() {
        let (l, r) = (lhs.column(v), rhs.column(v));
        if l != r {
            return Err((
                sub_law.to_string(),
                Counterexample {
                    indices: vec![a as i64, b as i64, v as i64],
                    lhs: l,
                    rhs: r,
                },
            ));
        }
    }
    Ok(())
}

fn module_step(alg: &Algebra, m: &ModuleStructure) -> Result<Step> {
    let circ = alg.left_circ()?;
    let n = alg.dim;
    let dim = m.dim;
    let ev = |fam: &[Matrix], x: &[Scalar]| eval(alg, dim, fam, x);
    let (l, r, s) = (&m.l, &m.r, &m.s);
    let id = Matrix::identity(alg.field, dim);
    let r1 = ev(r, &alg.unit);
    let s_unit = ev(s, &alg.unit);
    Ok((|| {
        for a in 0..n {
            for b in 0..n {
                let ab = circ.basis_product(a, b);
                let ba = circ.basis_product(b, a);
                compare(
                    "bimodule-1",
                    a,
                    b,
                    &sub(&mul(&l[a], &l[b]), &ev(l, ab)),
                    &sub(&mul(&l[b], &l[a]), &ev(l, ba)),
                )?;
                compare(
                    "bimodule-2",
                    a,
                    b,
                    &sub(&mul(&l[a], &r[b]), &mul(&r[b], &l[a])),
                    &sub(&ev(r, ab), &mul(&r[b], &r[a])),
                )?;
                compare("bimodule-3", a, b, &ev(l, ab), &mul(&r[b], &l[a]))?;
                compare("bimodule-4", a, b, &mul(&r[a], &r[b]), &mul(&r[b], &r[a]))?;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let dab = alg.dot.basis_product(a, b);
                compare("assoc-module", a, b, &ev(s, dab), &mul(&s[a], &s[b]))?;
            }
        }
        compare("assoc-unit", 0, 0, &s_unit, &id)?;
        let a_circ_one: Vec<Vec<Scalar>> = (0..n).map(|a| circ.product(&alg.basis(a), &alg.unit)).collect();
        for a in 0..n {
            for b in 0..n {
                let ab = circ.basis_product(a, b);
                let dab = alg.dot.basis_product(a, b);
                compare("module1a", a, b, &mul(&r[b], &s[a]), &mul(&s[a], &r[b]))?;
                compare("module1b", a, b, &mul(&s[a], &r[b]), &ev(s, ab))?;
                compare("module2", a, b, &ev(l, dab), &mul(&s[a], &l[b]))?;
                compare(
                    "module3",
                    a,
                    b,
                    &sub(&mul(&l[a], &s[b]), &mul(&s[b], &l[a])),
                    &sub(&ev(s, ab), &mul(&ev(s, &a_circ_one[a]), &s[b])),
                )?;
                compare(
                    "module4",
                    a,
                    b,
                    &sub(&ev(r, dab), &mul(&s[b], &r[a])),
                    &sub(&mul(&s[a], &r[b]), &mul(&ev(s, dab), &r1)),
                )?;
            }
        }
        Ok(())
    })())
}

pub fn check_module(alg: &Algebra, m: &ModuleStructure) -> Result<Verdict> {
    m.validate(alg)?;
    Ok(finish("module", module_step(alg, m)?))
}

/// `(A, L_∘, R_∘, L_·)`.
pub fn adjoint_module(alg: &Algebra) -> Result<ModuleStructure> {
    let n = alg.dim;
    let mut l = Vec::with_capacity(n);
    let mut r = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    for i in 0..n {
        let e = alg.basis(i);
        let circ = alg.left_circ()?;
        l.push(circ.left_operator(&e));
        r.push(circ.right_operator(&e));
        s.push(alg.left_mult_operator(Which::Dot, &e)?);
    }
    Ok(ModuleStructure { dim: n, l, r, s })
}

/// `(V*, l* + r*, −r*, −s*)` with `φ*(a) = −φ(a)ᵀ`.
pub fn dual_module(alg: &Algebra, m: &ModuleStructure) -> Result<ModuleStructure> {
    check_module(alg, m)?.into_result()?;
    Ok(dual_unchecked(m))
}

fn dual_unchecked(m: &ModuleStructure) -> ModuleStructure {
    let neg_t = |x: &Matrix| {
        let t = x.transpose();
        t.scale(&-&t.field().one())
    };
    ModuleStructure {
        dim: m.dim,
        l: m.l.iter().zip(&m.r).map(|(l, r)| add(&neg_t(l), &neg_t(r))).collect(),
        r: m.r.iter().map(Matrix::transpose).collect(),
        s: m.s.iter().map(Matrix::transpose).collect(),
    }
}

/// Whether `f(a)(b) = v(a·b)` is an isomorphism from the adjoint module to
/// its dual.
pub fn check_frobenius_via_modules(alg: &Algebra, v: &[Scalar]) -> Result<Verdict> {
    laws::check_jnp(&left_view(alg)?)?.into_result()?;
    let f = gram_of_functional(alg, v)?.transpose();
    let adj = adjoint_module(alg)?;
    let dual = dual_unchecked(&adj);
    let step = (|| {
        let rank = f.rank();
        if rank != alg.dim {
            return Err((
                "invertible".to_string(),
                Counterexample {
                    indices: vec![rank as i64],
                    lhs: vec![],
                    rhs: vec![],
                },
            ));
        }
        for i in 0..alg.dim {
            compare("intertwine-s", i, 0, &mul(&f, &adj.s[i]), &mul(&dual.s[i], &f))?;
            compare("intertwine-l", i, 0, &mul(&f, &adj.l[i]), &mul(&dual.l[i], &f))?;
            compare("intertwine-r", i, 0, &mul(&f, &adj.r[i]), &mul(&dual.r[i], &f))?;
        }
        Ok(())
    })();
    Ok(finish("frobenius-module", step))
}

fn left_view(alg: &Algebra) -> Result<Algebra> {
    let mut out = alg.clone();
    out.circ = Some(alg.left_circ()?);
    out.orientation = crate::algebra::Orientation::Left;
    Ok(out)
}
