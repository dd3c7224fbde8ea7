//! Algebra-producing constructions.
//!
//! Each public constructor validates its inputs, builds the new structure
//! constants, and re-runs the checker for the law its output is known to
//! satisfy. A failing post-check is an [`Error::Internal`].

use crate::algebra::{tensor_vector, Algebra, Orientation, StructureTensor, Which};
use crate::error::{Error, Result};
use crate::laws::{self, Ops, Verdict};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::vector;

#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub output: Algebra,
    pub provenance: String,
    pub verdicts: Vec<Verdict>,
}

fn report(output: Algebra, provenance: String, verdicts: Vec<Verdict>) -> Result<ConstructionReport> {
    if let Some(bad) = verdicts.iter().find(|v| !v.pass) {
        return Err(Error::Internal(format!("{provenance}: {}", bad.summary())));
    }
    Ok(ConstructionReport {
        output,
        provenance,
        verdicts,
    })
}

fn require(v: Verdict) -> Result<()> {
    v.into_result().map(|_| ())
}

fn same_field(a: &Algebra, b: &Algebra) -> Result<()> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.to_string(), b.field.to_string()));
    }
    Ok(())
}

/// Structure constants of `a ∘ b = a · D(b)`.
pub fn operator_circ(dot: &StructureTensor, d: &Matrix) -> StructureTensor {
    let o = Ops { t: dot };
    let cols: Vec<Vec<Scalar>> = (0..dot.dim()).map(|j| d.column(j)).collect();
    StructureTensor::from_fn(dot.field(), dot.dim(), |i, j| o.ev(i, &cols[j]))
}

fn with_left_circ(alg: &Algebra, circ: StructureTensor) -> Algebra {
    let mut out = alg.clone();
    out.circ = Some(circ);
    out.orientation = Orientation::Left;
    out.bracket = None;
    out
}

fn with_bracket_only(alg: &Algebra, bracket: StructureTensor) -> Algebra {
    let mut out = alg.clone();
    out.circ = None;
    out.orientation = Orientation::Left;
    out.bracket = Some(bracket);
    out
}

/// `a ∘ b = a · P(b)` for a derivation `P` of the dot product.
pub fn from_derivation(alg: &Algebra, p: &Matrix) -> Result<ConstructionReport> {
    require(laws::check_unital_comm_assoc(alg))?;
    require(laws::check_derivation(alg, Which::Dot, p)?)?;
    let out = with_left_circ(alg, operator_circ(&alg.dot, p));
    let v = laws::check_jnp(&out)?;
    report(out, "from-derivation".into(), vec![v])
}

/// `a ∘_q b = a · (P + qQ)(b)` for an admissible pair `(P, Q)`.
pub fn circ_q(alg: &Algebra, p: &Matrix, q_map: &Matrix, q: &Scalar) -> Result<ConstructionReport> {
    require(laws::check_unital_comm_assoc(alg))?;
    require(laws::check_derivation(alg, Which::Dot, p)?)?;
    require(laws::check_admissible_pair(alg, p, q_map)?)?;
    let d = p.add(&q_map.scale(q))?;
    let out = with_left_circ(alg, operator_circ(&alg.dot, &d));
    let v = laws::check_jnp(&out)?;
    report(out, format!("circ-q(q={q})"), vec![v])
}

fn jacobi_verdicts(out: &Algebra) -> Result<Vec<Verdict>> {
    let mut vs = vec![laws::check_jacobi(out)?];
    if out.field.characteristic() != 2 {
        vs.push(laws::check_transposed_poisson(out)?);
    }
    Ok(vs)
}

/// `[a, b] = a ∘ b − b ∘ a`.
pub fn commutator_jacobi(jnp: &Algebra) -> Result<ConstructionReport> {
    require(laws::check_jnp(jnp)?)?;
    let c = jnp.product(Which::Circ)?;
    let br = StructureTensor::from_fn(jnp.field, jnp.dim, |i, j| {
        vector::sub(c.basis_product(i, j), c.basis_product(j, i))
    });
    let out = with_bracket_only(jnp, br);
    let vs = jacobi_verdicts(&out)?;
    report(out, "commutator".into(), vs)
}

/// `[a, b] = P(a) ∘ b − P(b) ∘ a` for a derivation of both products.
pub fn twisted_jacobi(jnp: &Algebra, p: &Matrix) -> Result<ConstructionReport> {
    require(laws::check_jnp(jnp)?)?;
    require(laws::check_derivation(jnp, Which::Dot, p)?)?;
    require(laws::check_derivation(jnp, Which::Circ, p)?)?;
    let c = Ops {
        t: jnp.product(Which::Circ)?,
    };
    let img: Vec<Vec<Scalar>> = (0..jnp.dim).map(|j| p.column(j)).collect();
    let br = StructureTensor::from_fn(jnp.field, jnp.dim, |i, j| {
        vector::sub(&c.ve(&img[i], j), &c.ve(&img[j], i))
    });
    let out = with_bracket_only(jnp, br);
    let v = laws::check_jacobi(&out)?;
    report(out, "twisted".into(), vec![v])
}

fn tensor_dot(a: &StructureTensor, b: &StructureTensor) -> StructureTensor {
    let (n1, n2) = (a.dim(), b.dim());
    StructureTensor::from_fn(a.field(), n1 * n2, |x, y| {
        tensor_vector(a.basis_product(x / n2, y / n2), b.basis_product(x % n2, y % n2))
    })
}

/// `circ ⊗ dot + dot ⊗ circ` on the tensor product.
fn tensor_circ(a: &Algebra, ac: &StructureTensor, b: &Algebra, bc: &StructureTensor) -> StructureTensor {
    let n2 = b.dim;
    StructureTensor::from_fn(a.field, a.dim * n2, |x, y| {
        let (i1, i2, j1, j2) = (x / n2, x % n2, y / n2, y % n2);
        vector::add(
            &tensor_vector(ac.basis_product(i1, j1), b.dot.basis_product(i2, j2)),
            &tensor_vector(a.dot.basis_product(i1, j1), bc.basis_product(i2, j2)),
        )
    })
}

pub fn tensor_jnp(a: &Algebra, b: &Algebra) -> Result<ConstructionReport> {
    same_field(a, b)?;
    require(laws::check_jnp(a)?)?;
    require(laws::check_jnp(b)?)?;
    let circ = tensor_circ(a, a.product(Which::Circ)?, b, b.product(Which::Circ)?);
    let out = Algebra::new(tensor_dot(&a.dot, &b.dot), tensor_vector(&a.unit, &b.unit))?
        .with_circ(circ, Orientation::Left)?;
    let v = laws::check_jnp(&out)?;
    report(out, "tensor-jnp".into(), vec![v])
}

/// Dot and bracket of the tensor Jacobi algebra, from a left product `circ`
/// on the first factor and a literal right product `diamond` on the second.
pub fn tensor_jacobi_unchecked(
    a: &Algebra,
    circ: &StructureTensor,
    b: &Algebra,
    diamond: &StructureTensor,
) -> Result<Algebra> {
    let n2 = b.dim;
    let br = StructureTensor::from_fn(a.field, a.dim * n2, |x, y| {
        let (i1, i2, j1, j2) = (x / n2, x % n2, y / n2, y % n2);
        vector::sub(
            &tensor_vector(circ.basis_product(i1, j1), diamond.basis_product(i2, j2)),
            &tensor_vector(circ.basis_product(j1, i1), diamond.basis_product(j2, i2)),
        )
    });
    Algebra::new(tensor_dot(&a.dot, &b.dot), tensor_vector(&a.unit, &b.unit))?.with_bracket(br)
}

/// Jacobi algebra on `A ⊗ B` from a JNP algebra and a right JNP algebra.
pub fn tensor_jacobi(a: &Algebra, b: &Algebra) -> Result<ConstructionReport> {
    same_field(a, b)?;
    require(laws::check_jnp(a)?)?;
    require(laws::check_right_jnp(b)?)?;
    let out = tensor_jacobi_unchecked(a, a.product(Which::Circ)?, b, b.product(Which::Circ)?)?;
    let v = laws::check_jacobi(&out)?;
    report(out, "tensor-jacobi".into(), vec![v])
}

/// `a × b = a ∘ b + ξ · a · b`.
pub fn xi_shift(jnp: &Algebra, xi: &[Scalar]) -> Result<ConstructionReport> {
    jnp.check_len(xi)?;
    require(laws::check_jnp(jnp)?)?;
    let c = jnp.product(Which::Circ)?;
    let d = Ops { t: &jnp.dot };
    let circ = StructureTensor::from_fn(jnp.field, jnp.dim, |i, j| {
        vector::add(c.basis_product(i, j), &d.vv(xi, &d.ee(i, j)))
    });
    let out = with_left_circ(jnp, circ);
    let v = laws::check_jnp(&out)?;
    report(out, "xi-shift".into(), vec![v])
}

fn kantor_tensor(alg: &Algebra, u: &[Scalar]) -> Result<StructureTensor> {
    let c = Ops {
        t: alg.product(Which::Circ)?,
    };
    let d = Ops { t: &alg.dot };
    Ok(StructureTensor::from_fn(alg.field, alg.dim, |i, j| c.ev(i, &d.vv(u, &alg.basis(j)))))
}

fn right_kantor_tensor(alg: &Algebra, v: &[Scalar]) -> Result<StructureTensor> {
    let c = Ops {
        t: alg.product(Which::Circ)?,
    };
    let d = Ops { t: &alg.dot };
    Ok(StructureTensor::from_fn(alg.field, alg.dim, |i, j| c.ve(&d.vv(v, &alg.basis(i)), j)))
}

/// `a ∘_u b = a ∘ (u · b)`; `u` need not be invertible.
pub fn kantor_deform(jnp: &Algebra, u: &[Scalar]) -> Result<ConstructionReport> {
    jnp.check_len(u)?;
    require(laws::check_jnp(jnp)?)?;
    let out = with_left_circ(jnp, kantor_tensor(jnp, u)?);
    let v = laws::check_jnp(&out)?;
    let name = if dot_inverse(jnp, u).is_ok() {
        "conformal-deformation"
    } else {
        "kantor"
    };
    report(out, name.into(), vec![v])
}

/// `a ⋄_v b = (v · a) ⋄ b` on a right JNP algebra.
pub fn right_kantor_deform(rjnp: &Algebra, v: &[Scalar]) -> Result<ConstructionReport> {
    rjnp.check_len(v)?;
    require(laws::check_right_jnp(rjnp)?)?;
    let mut out = rjnp.clone();
    out.circ = Some(right_kantor_tensor(rjnp, v)?);
    let verdict = laws::check_right_jnp(&out)?;
    report(out, "right-kantor".into(), vec![verdict])
}

/// Inverse of `u` for the dot product, by solving `L(u) x = 1_A`.
pub fn dot_inverse(alg: &Algebra, u: &[Scalar]) -> Result<Vec<Scalar>> {
    let l = alg.left_mult_operator(Which::Dot, u)?;
    if !l.is_nonsingular() {
        return Err(Error::NonInvertibleElement);
    }
    let x = l.solve(&alg.unit)?.ok_or(Error::NonInvertibleElement)?;
    if alg.dot.product(u, &x) != alg.unit {
        return Err(Error::NonInvertibleElement);
    }
    Ok(x)
}

fn conformal_tensor(alg: &Algebra, u: &[Scalar]) -> Result<StructureTensor> {
    let uinv = dot_inverse(alg, u)?;
    let b = alg.product(Which::Bracket)?;
    let d = Ops { t: &alg.dot };
    let ue: Vec<Vec<Scalar>> = (0..alg.dim).map(|i| d.vv(u, &alg.basis(i))).collect();
    Ok(StructureTensor::from_fn(alg.field, alg.dim, |i, j| {
        d.vv(&uinv, &b.product(&ue[i], &ue[j]))
    }))
}

/// `[a, b]_u = u⁻¹ · [u · a, u · b]`.
pub fn conformal_deform_jacobi(jacobi: &Algebra, u: &[Scalar]) -> Result<ConstructionReport> {
    jacobi.check_len(u)?;
    let br = conformal_tensor(jacobi, u)?;
    require(laws::check_jacobi(jacobi)?)?;
    let mut out = jacobi.clone();
    out.bracket = Some(br);
    let v = laws::check_jacobi(&out)?;
    report(out, "conformal".into(), vec![v])
}

/// Compares the tensor Jacobi algebra of the two deformed factors with the
/// conformal deformation of the undeformed tensor Jacobi algebra by `u ⊗ v`.
pub fn check_deformation_compatibility(a: &Algebra, u: &[Scalar], b: &Algebra, v: &[Scalar]) -> Result<Verdict> {
    same_field(a, b)?;
    a.check_len(u)?;
    b.check_len(v)?;
    dot_inverse(a, u)?;
    dot_inverse(b, v)?;
    require(laws::check_jnp(a)?)?;
    require(laws::check_right_jnp(b)?)?;
    let lhs = tensor_jacobi_unchecked(a, &kantor_tensor(a, u)?, b, &right_kantor_tensor(b, v)?)?;
    let base = tensor_jacobi_unchecked(a, a.product(Which::Circ)?, b, b.product(Which::Circ)?)?;
    let rhs_bracket = conformal_tensor(&base, &tensor_vector(u, v))?;
    let lb = lhs.product(Which::Bracket)?;
    let n = lhs.dim;
    let step = laws::for_pairs(n, "bracket", |i, j| {
        (lb.basis_product(i, j).to_vec(), rhs_bracket.basis_product(i, j).to_vec())
    })
    .and_then(|_| {
        laws::for_pairs(n, "dot", |i, j| {
            (lhs.dot.basis_product(i, j).to_vec(), base.dot.basis_product(i, j).to_vec())
        })
    });
    Ok(laws::finish("deformation-compatibility", step))
}

/// Space of derivations of the chosen product, as operator matrices.
pub fn derivation_space(alg: &Algebra, which: &[Which]) -> Result<Vec<Matrix>> {
    let n = alg.dim;
    let f = alg.field;
    let tensors: Vec<&StructureTensor> = which.iter().map(|w| alg.product(*w)).collect::<Result<_>>()?;
    // Unknown P[m][j] at position m * n + j.
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for t in tensors {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![f.zero(); n * n];
                    // P(e_i e_j)_k
                    for (m, c) in t.basis_product(i, j).iter().enumerate() {
                        row[k * n + m] += c;
                    }
                    // (P(e_i) e_j)_k and (e_i P(e_j))_k
                    for m in 0..n {
                        row[m * n + i] -= t.get(m, j, k);
                        row[m * n + j] -= t.get(i, m, k);
                    }
                    rows.push(row);
                }
            }
        }
    }
    Ok(operator_kernel(f, n, rows))
}

pub(crate) fn operator_kernel(f: Field, n: usize, rows: Vec<Vec<Scalar>>) -> Vec<Matrix> {
    if rows.is_empty() {
        return (0..n * n)
            .map(|idx| {
                let mut m = Matrix::zeros(f, n, n);
                m.set(idx / n, idx % n, f.one());
                m
            })
            .collect();
    }
    let sys = Matrix::from_rows(f, rows).expect("rectangular system");
    sys.kernel_basis()
        .into_iter()
        .map(|x| {
            let mut m = Matrix::zeros(f, n, n);
            for (idx, c) in x.into_iter().enumerate() {
                m.set(idx / n, idx % n, c);
            }
            m
        })
        .collect()
}

/// Solutions `Q` of `Q(a·b) = Q(a)·b − a·P(b)`: a particular solution (if
/// any) and a basis of the homogeneous solutions.
pub fn admissible_partners(alg: &Algebra, p: &Matrix) -> Result<(Option<Matrix>, Vec<Matrix>)> {
    laws::check_square(alg, p, "P")?;
    let n = alg.dim;
    let f = alg.field;
    let t = &alg.dot;
    let o = Ops { t };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ap = o.ev(i, &p.column(j));
            for k in 0..n {
                let mut row = vec![f.zero(); n * n];
                for (m, c) in t.basis_product(i, j).iter().enumerate() {
                    row[k * n + m] += c;
                }
                for m in 0..n {
                    row[m * n + i] -= t.get(m, j, k);
                }
                rows.push(row);
                rhs.push(-&ap[k]);
            }
        }
    }
    let sys = Matrix::from_rows(f, rows.clone())?;
    let particular = sys.solve(&rhs)?.map(|x| {
        let mut m = Matrix::zeros(f, n, n);
        for (idx, c) in x.into_iter().enumerate() {
            m.set(idx / n, idx % n, c);
        }
        m
    });
    Ok((particular, operator_kernel(f, n, rows)))
}
