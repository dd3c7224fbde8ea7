//! Identity checkers evaluated on basis tuples.
//!
//! Every identity here is multilinear, so it holds for all elements as soon as
//! it holds on basis vectors. Tuples are scanned in lexicographic order and the
//! first mismatch is returned as a [`Counterexample`].

use serde::Serialize;

use crate::algebra::{Algebra, Orientation, StructureTensor, Which};
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Span};
use crate::scalar::{Field, Scalar};
use crate::vector;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub indices: Vec<i64>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub law: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn pass(law: impl Into<String>) -> Verdict {
        Verdict {
            law: law.into(),
            pass: true,
            counterexample: None,
        }
    }

    pub fn fail(law: impl Into<String>, ce: Counterexample) -> Verdict {
        Verdict {
            law: law.into(),
            pass: false,
            counterexample: Some(ce),
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        match &self.counterexample {
            None => format!("{}: pass", self.law),
            Some(ce) => format!(
                "{}: FAIL at {:?}: lhs = [{}], rhs = [{}]",
                self.law,
                ce.indices,
                vector::to_strings(&ce.lhs).join(", "),
                vector::to_strings(&ce.rhs).join(", ")
            ),
        }
    }

    /// Turns a failing verdict into an error.
    pub fn into_result(self) -> Result<Verdict> {
        if self.pass {
            Ok(self)
        } else {
            Err(Error::law(self))
        }
    }
}

/// Outcome of a chain of sub-checks: the failing sub-law and its witness.
pub(crate) type Step = std::result::Result<(), (String, Counterexample)>;

pub(crate) fn finish(law: &str, step: Step) -> Verdict {
    match step {
        Ok(()) => Verdict::pass(law),
        Err((sub, ce)) => Verdict::fail(format!("{law}/{sub}"), ce),
    }
}

fn mismatch(sub: &str, indices: &[usize], lhs: Vec<Scalar>, rhs: Vec<Scalar>) -> Step {
    if lhs == rhs {
        Ok(())
    } else {
        Err((
            sub.to_string(),
            Counterexample {
                indices: indices.iter().map(|&i| i as i64).collect(),
                lhs,
                rhs,
            },
        ))
    }
}

pub(crate) fn for_singles(n: usize, sub: &str, mut f: impl FnMut(usize) -> (Vec<Scalar>, Vec<Scalar>)) -> Step {
    for i in 0..n {
        let (l, r) = f(i);
        mismatch(sub, &[i], l, r)?;
    }
    Ok(())
}

pub(crate) fn for_pairs(
    n: usize,
    sub: &str,
    mut f: impl FnMut(usize, usize) -> (Vec<Scalar>, Vec<Scalar>),
) -> Step {
    for i in 0..n {
        for j in 0..n {
            let (l, r) = f(i, j);
            mismatch(sub, &[i, j], l, r)?;
        }
    }
    Ok(())
}

pub(crate) fn for_triples(
    n: usize,
    sub: &str,
    mut f: impl FnMut(usize, usize, usize) -> (Vec<Scalar>, Vec<Scalar>),
) -> Step {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let (l, r) = f(i, j, k);
                mismatch(sub, &[i, j, k], l, r)?;
            }
        }
    }
    Ok(())
}

/// Shorthand for evaluating products on basis vectors and their images.
pub(crate) struct Ops<'a> {
    pub t: &'a StructureTensor,
}

impl Ops<'_> {
    /// `e_i * e_j`.
    pub fn ee(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.t.basis_product(i, j).to_vec()
    }

    /// `x * e_j`.
    pub fn ve(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = vector::zeros(self.t.field(), self.t.dim());
        for (i, c) in x.iter().enumerate() {
            vector::axpy(&mut out, c, self.t.basis_product(i, j));
        }
        out
    }

    /// `e_i * y`.
    pub fn ev(&self, i: usize, y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.t.field(), self.t.dim());
        for (j, c) in y.iter().enumerate() {
            vector::axpy(&mut out, c, self.t.basis_product(i, j));
        }
        out
    }

    pub fn vv(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.t.product(x, y)
    }
}

fn unit_step(dot: &StructureTensor, unit: &[Scalar]) -> Step {
    let d = Ops { t: dot };
    let n = dot.dim();
    for_singles(n, "unit", |i| (d.vv(unit, &vector::basis(dot.field(), n, i)), vector::basis(dot.field(), n, i)))?;
    for_singles(n, "unit", |i| (d.vv(&vector::basis(dot.field(), n, i), unit), vector::basis(dot.field(), n, i)))
}

fn comm_assoc_step(dot: &StructureTensor) -> Step {
    let d = Ops { t: dot };
    let n = dot.dim();
    for_pairs(n, "commutativity", |i, j| (d.ee(i, j), d.ee(j, i)))?;
    for_triples(n, "associativity", |i, j, k| (d.ve(&d.ee(i, j), k), d.ev(i, &d.ee(j, k))))
}

pub(crate) fn unital_comm_assoc_step(dot: &StructureTensor, unit: &[Scalar]) -> Step {
    unit_step(dot, unit)?;
    comm_assoc_step(dot)
}

pub(crate) fn novikov_step(circ: &StructureTensor) -> Step {
    let c = Ops { t: circ };
    let n = circ.dim();
    for_triples(n, "NA1", |a, b, k| {
        let lhs = vector::sub(&c.ve(&c.ee(a, b), k), &c.ev(a, &c.ee(b, k)));
        let rhs = vector::sub(&c.ve(&c.ee(b, a), k), &c.ev(b, &c.ee(a, k)));
        (lhs, rhs)
    })?;
    for_triples(n, "NA2", |a, b, k| (c.ve(&c.ee(a, b), k), c.ve(&c.ee(a, k), b)))
}

/// `(a·b)∘c = a·(b∘c)`.
fn jnpa1_step(sub: &str, dot: &StructureTensor, circ: &StructureTensor) -> Step {
    let (d, c) = (Ops { t: dot }, Ops { t: circ });
    for_triples(dot.dim(), sub, |a, b, k| (c.ve(&d.ee(a, b), k), d.ev(a, &c.ee(b, k))))
}

/// `c∘(a·b) = (c∘a)·b + a·(c∘b) − a·b·(c∘1_A)`, indices `(a, b, c)`.
fn jnpa2_step(dot: &StructureTensor, circ: &StructureTensor, unit: &[Scalar]) -> Step {
    let (d, c) = (Ops { t: dot }, Ops { t: circ });
    for_triples(dot.dim(), "JNPA2", |a, b, k| {
        let lhs = c.ev(k, &d.ee(a, b));
        let mut rhs = vector::add(&d.ve(&c.ee(k, a), b), &d.ev(a, &c.ee(k, b)));
        let tail = d.vv(&d.ee(a, b), &c.ev(k, unit));
        rhs = vector::sub(&rhs, &tail);
        (lhs, rhs)
    })
}

/// `a∘(b·c) = (a∘b)·c + b·(a∘c)`.
fn dnpa2_step(dot: &StructureTensor, circ: &StructureTensor) -> Step {
    let (d, c) = (Ops { t: dot }, Ops { t: circ });
    for_triples(dot.dim(), "DNPA2", |a, b, k| {
        let lhs = c.ev(a, &d.ee(b, k));
        let rhs = vector::add(&d.ve(&c.ee(a, b), k), &d.ev(b, &c.ee(a, k)));
        (lhs, rhs)
    })
}

pub(crate) fn lie_step(bracket: &StructureTensor) -> Step {
    let b = Ops { t: bracket };
    let n = bracket.dim();
    let zero = vector::zeros(bracket.field(), n);
    for_singles(n, "antisymmetry", |i| (b.ee(i, i), zero.clone()))?;
    for_pairs(n, "antisymmetry", |i, j| (b.ee(i, j), vector::neg(&b.ee(j, i))))?;
    for_triples(n, "jacobi-identity", |i, j, k| {
        let s = vector::add(&b.ev(i, &b.ee(j, k)), &b.ev(j, &b.ee(k, i)));
        (vector::add(&s, &b.ev(k, &b.ee(i, j))), zero.clone())
    })
}

/// `[a,b·c] = [a,b]·c + b·[a,c] + b·c·[1_A,a]`.
pub(crate) fn jac_step(dot: &StructureTensor, bracket: &StructureTensor, unit: &[Scalar]) -> Step {
    let (d, b) = (Ops { t: dot }, Ops { t: bracket });
    for_triples(dot.dim(), "Jac", |i, j, k| {
        let lhs = b.ev(i, &d.ee(j, k));
        let s = vector::add(&d.ve(&b.ee(i, j), k), &d.ev(j, &b.ee(i, k)));
        let tail = d.vv(&d.ee(j, k), &b.ve(unit, i));
        (lhs, vector::add(&s, &tail))
    })
}

pub(crate) fn jacobi_step(dot: &StructureTensor, bracket: &StructureTensor, unit: &[Scalar]) -> Step {
    lie_step(bracket)?;
    unital_comm_assoc_step(dot, unit)?;
    jac_step(dot, bracket, unit)
}

fn require_left(alg: &Algebra) -> Result<&StructureTensor> {
    let c = alg.product(Which::Circ)?;
    if alg.orientation != Orientation::Left {
        return Err(Error::Orientation {
            expected: "left",
            found: alg.orientation.name(),
        });
    }
    Ok(c)
}

fn require_right(alg: &Algebra) -> Result<StructureTensor> {
    alg.product(Which::Circ)?;
    if alg.orientation != Orientation::Right {
        return Err(Error::Orientation {
            expected: "right",
            found: alg.orientation.name(),
        });
    }
    alg.left_circ()
}

pub fn check_unital_comm_assoc(alg: &Algebra) -> Verdict {
    finish("unital-comm-assoc", unital_comm_assoc_step(&alg.dot, &alg.unit))
}

pub fn check_novikov(alg: &Algebra) -> Result<Verdict> {
    Ok(finish("novikov", novikov_step(require_left(alg)?)))
}

pub fn check_right_novikov(alg: &Algebra) -> Result<Verdict> {
    Ok(finish("right-novikov", novikov_step(&require_right(alg)?)))
}

pub(crate) fn dnp_step(dot: &StructureTensor, circ: &StructureTensor) -> Step {
    comm_assoc_step(dot)?;
    novikov_step(circ)?;
    jnpa1_step("DNPA1", dot, circ)?;
    dnpa2_step(dot, circ)
}

pub fn check_dnp(alg: &Algebra) -> Result<Verdict> {
    Ok(finish("dnp", dnp_step(&alg.dot, require_left(alg)?)))
}

pub(crate) fn jnp_step(dot: &StructureTensor, circ: &StructureTensor, unit: &[Scalar]) -> Step {
    unital_comm_assoc_step(dot, unit)?;
    novikov_step(circ)?;
    jnpa1_step("JNPA1", dot, circ)?;
    jnpa2_step(dot, circ, unit)
}

pub fn check_jnp(alg: &Algebra) -> Result<Verdict> {
    Ok(finish("jnp", jnp_step(&alg.dot, require_left(alg)?, &alg.unit)))
}

pub fn check_right_jnp(alg: &Algebra) -> Result<Verdict> {
    Ok(finish("right-jnp", jnp_step(&alg.dot, &require_right(alg)?, &alg.unit)))
}

pub fn check_jacobi(alg: &Algebra) -> Result<Verdict> {
    let b = alg.product(Which::Bracket)?;
    Ok(finish("jacobi", jacobi_step(&alg.dot, b, &alg.unit)))
}

/// `2c·[a,b] = [c·a,b] + [a,c·b]` together with the Lie and
/// commutative-associative axioms.
pub fn check_transposed_poisson(alg: &Algebra) -> Result<Verdict> {
    if alg.field.characteristic() == 2 {
        return Err(Error::Characteristic("transposed Poisson check needs char != 2".into()));
    }
    let br = alg.product(Which::Bracket)?;
    let step = (|| {
        comm_assoc_step(&alg.dot)?;
        lie_step(br)?;
        let (d, b) = (Ops { t: &alg.dot }, Ops { t: br });
        let two = alg.field.from_i64(2);
        for_triples(alg.dim, "transposed-Poisson", |i, j, k| {
            let lhs = vector::scale(&two, &d.ev(k, &b.ee(i, j)));
            let rhs = vector::add(&b.ve(&d.ee(k, i), j), &b.ev(i, &d.ee(k, j)));
            (lhs, rhs)
        })
    })();
    Ok(finish("transposed-poisson", step))
}

pub(crate) fn check_square(alg: &Algebra, m: &Matrix, what: &str) -> Result<()> {
    if m.rows() != alg.dim || m.cols() != alg.dim {
        return Err(Error::Dimension(format!(
            "{what} is {}x{}, algebra has dimension {}",
            m.rows(),
            m.cols(),
            alg.dim
        )));
    }
    if m.field() != alg.field {
        return Err(Error::FieldMismatch(m.field().to_string(), alg.field.to_string()));
    }
    Ok(())
}

pub(crate) fn derivation_step(t: &StructureTensor, p: &Matrix) -> Step {
    let o = Ops { t };
    let img: Vec<Vec<Scalar>> = (0..t.dim()).map(|j| p.column(j)).collect();
    for_pairs(t.dim(), "derivation", |i, j| {
        let lhs = p.mul_vec(&o.ee(i, j)).expect("square operator");
        let rhs = vector::add(&o.ve(&img[i], j), &o.ev(i, &img[j]));
        (lhs, rhs)
    })
}

/// Whether `p` is a derivation of the chosen product. Operators act on
/// column vectors: column `j` holds the image of `e_j`.
pub fn check_derivation(alg: &Algebra, which: Which, p: &Matrix) -> Result<Verdict> {
    check_square(alg, p, "operator")?;
    let t = alg.product(which)?;
    Ok(finish(&format!("derivation-{}", which.name()), derivation_step(t, p)))
}

/// `Q(a·b) = Q(a)·b − a·P(b)`.
pub fn check_admissible_pair(alg: &Algebra, p: &Matrix, q: &Matrix) -> Result<Verdict> {
    check_square(alg, p, "P")?;
    check_square(alg, q, "Q")?;
    let d = Ops { t: &alg.dot };
    let step = for_pairs(alg.dim, "RSI1", |i, j| {
        let lhs = q.mul_vec(&d.ee(i, j)).expect("square operator");
        let rhs = vector::sub(&d.ve(&q.column(i), j), &d.ev(i, &p.column(j)));
        (lhs, rhs)
    });
    Ok(finish("admissible-pair", step))
}

/// Default cap on projective points visited by [`check_simple_novikov`].
pub const DEFAULT_SIMPLE_BUDGET: u128 = 2_000_000;

/// Smallest subspace containing `v` and stable under left and right
/// multiplication by every basis vector.
pub fn ideal_closure(circ: &StructureTensor, v: &[Scalar]) -> Span {
    let o = Ops { t: circ };
    let n = circ.dim();
    let mut span = Span::new(circ.field(), n);
    let mut queue = vec![v.to_vec()];
    span.insert(v);
    while let Some(w) = queue.pop() {
        for i in 0..n {
            for x in [o.ev(i, &w), o.ve(&w, i)] {
                if span.insert(&x) {
                    if span.dim() == n {
                        return span;
                    }
                    queue.push(x);
                }
            }
        }
    }
    span
}

/// Simplicity of the second product over a prime field, by scanning every
/// projective point.
pub fn check_simple_novikov(alg: &Algebra, budget: u128) -> Result<Verdict> {
    let circ = alg.left_circ()?;
    let p = match alg.field {
        Field::Rational => {
            return Err(Error::Characteristic(
                "simplicity scan needs a prime field".into(),
            ))
        }
        Field::Prime(p) => p as u128,
    };
    let n = alg.dim;
    let points: u128 = (0..n as u32).map(|e| p.pow(e)).sum();
    if points > budget {
        return Err(Error::Budget {
            needed: points,
            budget,
        });
    }
    if circ.is_zero() {
        return Ok(Verdict::fail(
            "simple/nonzero",
            Counterexample {
                indices: vec![],
                lhs: vec![],
                rhs: vec![],
            },
        ));
    }
    let elems = alg.field.elements().expect("prime field");
    for lead in 0..n {
        let tail = n - lead - 1;
        let count = p.pow(tail as u32);
        for code in 0..count {
            let mut v = alg.zero_vector();
            v[lead] = alg.field.one();
            let mut c = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = elems[(c % p) as usize].clone();
                c /= p;
            }
            let span = ideal_closure(&circ, &v);
            if span.dim() < n {
                return Ok(Verdict::fail(
                    "simple/ideal",
                    Counterexample {
                        indices: vec![span.dim() as i64],
                        lhs: v,
                        rhs: vec![],
                    },
                ));
            }
        }
    }
    Ok(Verdict::pass("simple"))
}
