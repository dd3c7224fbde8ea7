//! Parametric classification tables and worked examples.
//!
//! Every entry is a generator from a parameter assignment to an
//! [`AlgebraFile`], together with the law its instances must satisfy. In the
//! 2- and 3-dimensional tables `e_1` (index 0) is the unit. The prime
//! characteristic families use the basis `y_{-1}, y_0, ...` stored at indices
//! `0, 1, ...`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::algebra::{Algebra, Orientation, StructureTensor, Which};
use crate::construct::tensor_jacobi_unchecked;
use crate::error::{Error, Result};
use crate::frobenius;
use crate::io::AlgebraFile;
use crate::laws::{self, Verdict};
use crate::matrix::{Matrix, Span};
use crate::scalar::{binomial_mod_p, Field, Scalar};
use crate::vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Jnp,
    RightJnp,
    Quadratic,
    RightQuadratic,
    SimpleJnp,
    DifferentialFrobenius,
    FrobeniusJacobi,
    UnitalCommAssoc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamKind {
    Scalar,
    Integer,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

/// Parameter values by name, as strings in the scalar grammar.
pub type Assignment = BTreeMap<String, String>;

pub fn assignment(pairs: &[(&str, &str)]) -> Assignment {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

/// Resolved parameters for a generator.
pub struct Ctx {
    pub field: Field,
    scalars: BTreeMap<&'static str, Scalar>,
    ints: BTreeMap<&'static str, i64>,
}

impl Ctx {
    fn s(&self, name: &str) -> Scalar {
        self.scalars[name].clone()
    }

    fn i(&self, name: &str) -> i64 {
        self.ints[name]
    }

    fn c(&self, x: i64) -> Scalar {
        self.field.from_i64(x)
    }

    fn nonzero(&self, name: &str) -> Result<()> {
        if self.scalars[name].is_zero() {
            return Err(Error::Constraint(format!("{name} must be nonzero")));
        }
        Ok(())
    }

    fn char_not(&self, bad: &[u64]) -> Result<()> {
        let c = self.field.characteristic();
        if bad.contains(&c) {
            return Err(Error::Characteristic(format!("entry needs characteristic outside {bad:?}")));
        }
        Ok(())
    }
}

type Generator = fn(&Ctx) -> Result<AlgebraFile>;

#[derive(Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub field_note: &'static str,
    pub default_field: Field,
    pub params: Vec<ParamSpec>,
    pub law: Law,
    generator: Generator,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub name: &'static str,
    pub description: &'static str,
    pub field: &'static str,
    pub params: Vec<ParamSpec>,
    pub law: Law,
}

fn scalar(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Scalar,
    }
}

fn integer(name: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        kind: ParamKind::Integer,
    }
}

fn entry(
    name: &'static str,
    description: &'static str,
    params: &[&'static str],
    law: Law,
    generator: Generator,
) -> CatalogEntry {
    CatalogEntry {
        name,
        description,
        field_note: "any",
        default_field: Field::Rational,
        params: params.iter().map(|p| scalar(p)).collect(),
        law,
        generator,
    }
}

// ---------------------------------------------------------------------------
// Tensor helpers.

fn vecn(f: Field, n: usize, terms: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vector::zeros(f, n);
    for (k, c) in terms {
        v[*k] += c;
    }
    v
}

/// Tensor from its nonzero basis products.
fn table(f: Field, n: usize, rows: Vec<((usize, usize), Vec<Scalar>)>) -> StructureTensor {
    let mut t = StructureTensor::zeros(f, n);
    for ((i, j), v) in rows {
        for (k, c) in v.into_iter().enumerate() {
            t.set(i, j, k, c);
        }
    }
    t
}

/// Unit `e_1` plus symmetric products among `e_2, ..., e_n`.
fn unital_dot(f: Field, n: usize, extra: &[(usize, usize, usize)]) -> StructureTensor {
    let mut t = StructureTensor::zeros(f, n);
    for i in 0..n {
        t.set(0, i, i, f.one());
        t.set(i, 0, i, f.one());
    }
    for &(i, j, k) in extra {
        t.set(i, j, k, f.one());
        t.set(j, i, k, f.one());
    }
    t
}

fn left(dot: StructureTensor, circ: StructureTensor) -> Result<Algebra> {
    let f = dot.field();
    let n = dot.dim();
    Algebra::new(dot, vector::basis(f, n, 0))?.with_circ(circ, Orientation::Left)
}

fn gram(f: Field, rows: Vec<Vec<Scalar>>) -> Matrix {
    Matrix::from_rows(f, rows).expect("square literal")
}

// ---------------------------------------------------------------------------
// Two-dimensional table.

fn dot_a1(f: Field) -> StructureTensor {
    unital_dot(f, 2, &[])
}

fn dot_a2(f: Field) -> StructureTensor {
    unital_dot(f, 2, &[(1, 1, 1)])
}

fn j2d(ctx: &Ctx, ty: u8) -> Result<Algebra> {
    let f = ctx.field;
    let (k1, k2) = (ctx.s("k1"), ctx.s("k2"));
    let z = f.zero();
    match ty {
        1 | 2 => {
            let e11 = if ty == 1 { vec![k1.clone(), z.clone()] } else { vec![k1.clone(), f.one()] };
            let circ = table(
                f,
                2,
                vec![
                    ((0, 0), e11),
                    ((0, 1), vec![z.clone(), k2]),
                    ((1, 0), vec![z, k1]),
                ],
            );
            left(dot_a1(f), circ)
        }
        _ => {
            let s = &k1 + &k2;
            let circ = table(
                f,
                2,
                vec![
                    ((0, 0), vec![k1, k2]),
                    ((0, 1), vec![z.clone(), s.clone()]),
                    ((1, 0), vec![z.clone(), s.clone()]),
                    ((1, 1), vec![z, s]),
                ],
            );
            left(dot_a2(f), circ)
        }
    }
}

// ---------------------------------------------------------------------------
// Three-dimensional table.

fn j3d(ctx: &Ctx, ty: u8) -> Result<Algebra> {
    let f = ctx.field;
    let (k1, k2, k3) = (ctx.s("k1"), ctx.s("k2"), ctx.s("k3"));
    let one = f.one();
    let v = |terms: &[(usize, Scalar)]| vecn(f, 3, terms);
    match ty {
        1..=4 => {
            let dot = unital_dot(f, 3, &[(1, 1, 2)]);
            let mut e11 = vec![(0, k1.clone())];
            let mut e21 = vec![(1, k1.clone())];
            match ty {
                2 => e11.push((2, one.clone())),
                3 => {
                    e11.extend([(1, one.clone()), (2, one.clone())]);
                    e21.push((2, one.clone()));
                }
                4 => {
                    e11.push((1, one.clone()));
                    e21.push((2, one.clone()));
                }
                _ => {}
            }
            let two_k2_k1 = &(&ctx.c(2) * &k2) - &k1;
            let circ = table(
                f,
                3,
                vec![
                    ((0, 0), v(&e11)),
                    ((0, 1), v(&[(1, k2.clone()), (2, k3)])),
                    ((0, 2), v(&[(2, two_k2_k1)])),
                    ((1, 0), v(&e21)),
                    ((1, 1), v(&[(2, k2)])),
                    ((2, 0), v(&[(2, k1)])),
                ],
            );
            left(dot, circ)
        }
        5 | 6 => {
            let dot = unital_dot(f, 3, &[(1, 1, 1)]);
            let s = &k1 + &k2;
            let mut e11 = vec![(0, k1.clone()), (1, k2)];
            if ty == 5 {
                e11.push((2, one));
            }
            let circ = table(
                f,
                3,
                vec![
                    ((0, 0), v(&e11)),
                    ((0, 1), v(&[(1, s.clone())])),
                    ((0, 2), v(&[(2, k3)])),
                    ((1, 0), v(&[(1, s.clone())])),
                    ((1, 1), v(&[(1, s)])),
                    ((2, 0), v(&[(2, k1)])),
                ],
            );
            left(dot, circ)
        }
        7 => {
            let dot = unital_dot(f, 3, &[(1, 1, 1), (2, 2, 2)]);
            let s2 = &k1 + &k2;
            let s3 = &k1 + &k3;
            let circ = table(
                f,
                3,
                vec![
                    ((0, 0), v(&[(0, k1), (1, k2), (2, k3)])),
                    ((0, 1), v(&[(1, s2.clone())])),
                    ((0, 2), v(&[(2, s3.clone())])),
                    ((1, 0), v(&[(1, s2.clone())])),
                    ((1, 1), v(&[(1, s2)])),
                    ((2, 0), v(&[(2, s3.clone())])),
                    ((2, 2), v(&[(2, s3)])),
                ],
            );
            left(dot, circ)
        }
        _ => {
            let dot = unital_dot(f, 3, &[]);
            let z = vector::zeros(f, 3);
            let e2 = v(&[(1, one.clone())]);
            let e3 = v(&[(2, one.clone())]);
            let e23 = v(&[(1, one.clone()), (2, one.clone())]);
            let kk = v(&[(1, k2), (2, k3)]);
            let k1e1 = v(&[(0, k1.clone())]);
            let plus = |a: &[Scalar], b: &[Scalar]| vector::add(a, b);
            let (r1, r2, r3) = match ty {
                8 => (plus(&k1e1, &e2), e3, kk),
                9 => (plus(&k1e1, &e2), e23, kk),
                10 => (plus(&k1e1, &e3), kk, e2),
                11 => (plus(&k1e1, &e3), kk, e23),
                12 => (plus(&k1e1, &e2), e2, kk),
                13 => (plus(&k1e1, &e2), z, kk),
                14 => (plus(&k1e1, &e3), kk, e3),
                15 => (plus(&k1e1, &e3), kk, z),
                16 => (plus(&k1e1, &e23), e23, kk),
                17 => (plus(&k1e1, &e23), e3, kk),
                18 => (plus(&k1e1, &e23), e2, kk),
                19 => (plus(&k1e1, &e23), z, kk),
                20 => (k1e1, kk, e3),
                21 => (k1e1, kk, e2),
                22 => (k1e1, kk, z),
                23 => (k1e1, kk, e23),
                _ => unreachable!("types 1..=23"),
            };
            let circ = table(
                f,
                3,
                vec![
                    ((0, 0), r1),
                    ((0, 1), r2),
                    ((0, 2), r3),
                    ((1, 0), v(&[(1, k1.clone())])),
                    ((2, 0), v(&[(2, k1)])),
                ],
            );
            left(dot, circ)
        }
    }
}

// ---------------------------------------------------------------------------
// Prime characteristic families.

/// Algebras on `y_{-1}, ..., y_{top}` with the binomial products; `dot3`
/// overrides the dot product for the 3-dimensional family.
fn binomial_family(f: Field, n_exp: u32, a: Scalar, b: Scalar) -> Result<(StructureTensor, StructureTensor)> {
    let p = match f {
        Field::Prime(p) => p,
        Field::Rational => return Err(Error::Characteristic("family needs a prime field".into())),
    };
    if p == 2 {
        return Err(Error::Characteristic("family needs an odd prime".into()));
    }
    let size = p
        .checked_pow(n_exp)
        .filter(|&s| s <= 4096)
        .ok_or_else(|| Error::Constraint("p^n too large".into()))? as i64;
    let top = size - 2;
    let dim = size as usize;
    let idx = |i: i64| (i + 1) as usize;
    let mut dot = StructureTensor::zeros(f, dim);
    let mut circ = StructureTensor::zeros(f, dim);
    for i in -1..=top {
        for j in -1..=top {
            let cd = binomial_mod_p(i + j + 2, j + 1, p);
            let target = i + j + 1;
            place(&mut dot, idx(i), idx(j), target, top, cd, "dot")?;
            let cc = binomial_mod_p(i + j + 1, j, p);
            place(&mut circ, idx(i), idx(j), i + j, top, cc, "circ")?;
        }
    }
    let t = idx(top);
    let e = circ.get(0, 0, t) + &a;
    circ.set(0, 0, t, e);
    let e = circ.get(0, 1, t) + &b;
    circ.set(0, 1, t, e);
    Ok((dot, circ))
}

fn place(t: &mut StructureTensor, i: usize, j: usize, target: i64, top: i64, c: u64, what: &str) -> Result<()> {
    if c == 0 {
        return Ok(());
    }
    if target < -1 || target > top {
        return Err(Error::Internal(format!(
            "{what}: nonzero coefficient {c} at out-of-range index {target}"
        )));
    }
    let f = t.field();
    t.set(i, j, (target + 1) as usize, f.from_i64(c as i64));
    Ok(())
}

fn char3_simple(ctx: &Ctx) -> Result<AlgebraFile> {
    if ctx.field != Field::Prime(3) {
        return Err(Error::Characteristic("char3-simple needs F_3".into()));
    }
    ctx.nonzero("k1")?;
    let f = ctx.field;
    let (k1, k2, k3) = (ctx.s("k1"), ctx.s("k2"), ctx.s("k3"));
    let (_, circ) = binomial_family(f, 1, ctx.s("a"), ctx.s("b"))?;
    let v = |terms: &[(usize, Scalar)]| vecn(f, 3, terms);
    let dot = table(
        f,
        3,
        vec![
            ((0, 0), v(&[(0, k1.clone()), (1, k2.clone()), (2, k3.clone())])),
            ((0, 1), v(&[(1, k1.clone()), (2, -&k2)])),
            ((1, 0), v(&[(1, k1.clone()), (2, -&k2)])),
            ((0, 2), v(&[(2, k1.clone())])),
            ((2, 0), v(&[(2, k1.clone())])),
            ((1, 1), v(&[(2, -&k1)])),
        ],
    );
    let inv = k1.inv().expect("nonzero");
    let inv2 = &inv * &inv;
    let inv3 = &inv2 * &inv;
    let unit = vec![
        inv.clone(),
        -&(&inv2 * &k2),
        -&(&(&inv2 * &k3) + &(&inv3 * &(&k2 * &k2))),
    ];
    let alg = Algebra::new(dot, unit)?.with_circ(circ, Orientation::Left)?;
    Ok(AlgebraFile::new(alg))
}

fn charp_simple(ctx: &Ctx) -> Result<AlgebraFile> {
    let n = ctx.i("n");
    if !(1..=8).contains(&n) {
        return Err(Error::Constraint("n must be in 1..=8".into()));
    }
    let (dot, circ) = binomial_family(ctx.field, n as u32, ctx.s("a"), ctx.s("b"))?;
    let unit = vector::basis(ctx.field, dot.dim(), 0);
    let alg = Algebra::new(dot, unit)?.with_circ(circ, Orientation::Left)?;
    Ok(AlgebraFile::new(alg))
}

// ---------------------------------------------------------------------------
// Truncated polynomial examples.

fn truncated_dot(f: Field, n: usize) -> StructureTensor {
    let mut t = StructureTensor::zeros(f, n);
    for i in 0..n {
        for j in 0..n - i {
            t.set(i, j, i + j, f.one());
        }
    }
    t
}

fn truncated_size(ctx: &Ctx) -> Result<usize> {
    let n = ctx.i("N");
    if !(1..=64).contains(&n) {
        return Err(Error::Constraint("N must be in 1..=64".into()));
    }
    Ok(n as usize)
}

/// `k[x]/(x^N)` with zero second product.
fn poly_truncated(ctx: &Ctx) -> Result<AlgebraFile> {
    let n = truncated_size(ctx)?;
    let f = ctx.field;
    let alg = Algebra::new(truncated_dot(f, n), vector::basis(f, n, 0))?.with_circ(StructureTensor::zeros(f, n), Orientation::Left)?;
    Ok(AlgebraFile::new(alg))
}

/// `k[x]/(x^N)` with `a∘b = a·b'`; `d/dx` is a derivation only when the
/// characteristic divides `N` (or `N = 1`).
fn poly_derivation(ctx: &Ctx) -> Result<AlgebraFile> {
    let n = truncated_size(ctx)?;
    let f = ctx.field;
    let ok = n == 1 || matches!(f, Field::Prime(p) if (n as u64) % p == 0);
    if !ok {
        return Err(Error::Characteristic(
            "d/dx is a derivation of k[x]/(x^N) only when char k divides N".into(),
        ));
    }
    let mut p = Matrix::zeros(f, n, n);
    for j in 1..n {
        p.set(j - 1, j, f.from_i64(j as i64));
    }
    let dot = truncated_dot(f, n);
    let circ = crate::construct::operator_circ(&dot, &p);
    let alg = Algebra::new(dot, vector::basis(f, n, 0))?.with_circ(circ, Orientation::Left)?;
    Ok(AlgebraFile::new(alg).with_map("P", p))
}

// ---------------------------------------------------------------------------
// Worked examples.

fn conformal_3d(ctx: &Ctx) -> Result<AlgebraFile> {
    let f = ctx.field;
    let v = |terms: &[(usize, Scalar)]| vecn(f, 3, terms);
    let circ = table(f, 3, vec![((0, 0), v(&[(2, f.one())])), ((0, 2), v(&[(2, -&f.one())]))]);
    Ok(AlgebraFile::new(left(unital_dot(f, 3, &[(1, 1, 1)]), circ)?))
}

fn ratio(f: Field, n: i64, d: i64) -> Result<Scalar> {
    f.from_ratio(&BigInt::from(n), &BigInt::from(d))
}

fn four_dim(ctx: &Ctx) -> Result<AlgebraFile> {
    let f = ctx.field;
    ctx.char_not(&[2, 3])?;
    let dot = unital_dot(f, 4, &[(1, 1, 2), (1, 2, 3)]);
    let alg = Algebra::new(dot, vector::basis(f, 4, 0))?;
    let cols = vec![
        vector::zeros(f, 4),
        vec![f.zero(), ratio(f, 1, 3)?, ratio(f, 1, 2)?, f.one()],
        vec![f.zero(), f.zero(), ratio(f, 2, 3)?, f.one()],
        vec![f.zero(), f.zero(), f.zero(), f.one()],
    ];
    let p = Matrix::from_columns(f, 4, &cols);
    let g = Matrix::from_i64(f, &[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
    Ok(AlgebraFile::new(alg).with_map("P", p).with_form(g))
}

fn final_pair(f: Field) -> Result<(Algebra, Algebra, Matrix)> {
    let v = |terms: &[(usize, Scalar)]| vecn(f, 2, terms);
    let one = f.one();
    let m2 = f.from_i64(-2);
    let circ = table(
        f,
        2,
        vec![
            ((0, 0), v(&[(0, one.clone())])),
            ((0, 1), v(&[(1, m2.clone())])),
            ((1, 0), v(&[(1, one.clone())])),
        ],
    );
    let diamond = table(
        f,
        2,
        vec![
            ((0, 0), v(&[(0, one.clone())])),
            ((0, 1), v(&[(1, one)])),
            ((1, 0), v(&[(1, m2)])),
        ],
    );
    let a = left(dot_a1(f), circ)?;
    let b = Algebra::new(dot_a1(f), vector::basis(f, 2, 0))?.with_circ(diamond, Orientation::Right)?;
    let g = Matrix::from_i64(f, &[&[0, 1], &[1, 0]]);
    Ok((a, b, g))
}

fn final_jnp(ctx: &Ctx) -> Result<AlgebraFile> {
    let (a, _, g) = final_pair(ctx.field)?;
    Ok(AlgebraFile::new(a).with_form(g))
}

fn final_right_jnp(ctx: &Ctx) -> Result<AlgebraFile> {
    let (_, b, g) = final_pair(ctx.field)?;
    Ok(AlgebraFile::new(b).with_form(g))
}

fn final_frobenius_pair(ctx: &Ctx) -> Result<AlgebraFile> {
    let (a, b, g) = final_pair(ctx.field)?;
    let j = tensor_jacobi_unchecked(&a, a.product(Which::Circ)?, &b, b.product(Which::Circ)?)?;
    Ok(AlgebraFile::new(j).with_form(g.kron(&g)))
}

fn base(ctx: &Ctx, which: u8) -> Result<AlgebraFile> {
    let f = ctx.field;
    let dot = match which {
        1 => unital_dot(f, 1, &[]),
        2 => dot_a1(f),
        _ => dot_a2(f),
    };
    let n = dot.dim();
    Ok(AlgebraFile::new(Algebra::new(dot, vector::basis(f, n, 0))?))
}

// ---------------------------------------------------------------------------
// Quadratic tables.

fn quad_2d(ctx: &Ctx, row: u8) -> Result<AlgebraFile> {
    let f = ctx.field;
    let z = f.zero();
    let g12 = ctx.s("g12");
    ctx.nonzero("g12")?;
    let (alg, g) = match row {
        1 => {
            let g11 = ctx.s("g11");
            let alg = j2d(&fixed(ctx, &[("k1", z.clone()), ("k2", z.clone())]), 1)?;
            (alg, gram(f, vec![vec![g11, g12.clone()], vec![g12, z]]))
        }
        2 | 3 => {
            ctx.nonzero("k1")?;
            let k1 = ctx.s("k1");
            let k2 = &ctx.c(-2) * &k1;
            let alg = j2d(&fixed(ctx, &[("k1", k1.clone()), ("k2", k2)]), if row == 2 { 1 } else { 2 })?;
            let g11 = if row == 2 {
                z.clone()
            } else {
                -&g12.checked_div(&k1)?
            };
            (alg, gram(f, vec![vec![g11, g12.clone()], vec![g12, z]]))
        }
        _ => {
            let g11 = ctx.s("g11");
            if g11 == g12 {
                return Err(Error::Constraint("g11 must differ from g12".into()));
            }
            let alg = j2d(&fixed(ctx, &[("k1", z.clone()), ("k2", z)]), 3)?;
            (alg, gram(f, vec![vec![g11, g12.clone()], vec![g12.clone(), g12]]))
        }
    };
    Ok(AlgebraFile::new(alg).with_form(g))
}

/// Context with some parameters replaced by fixed values.
fn fixed(ctx: &Ctx, vals: &[(&'static str, Scalar)]) -> Ctx {
    let mut scalars = ctx.scalars.clone();
    for (k, v) in vals {
        scalars.insert(k, v.clone());
    }
    Ctx {
        field: ctx.field,
        scalars,
        ints: ctx.ints.clone(),
    }
}

fn sym3(f: Field, g11: Scalar, g12: Scalar, g13: Scalar, g22: Scalar, g33: Scalar) -> Matrix {
    let z = f.zero();
    gram(
        f,
        vec![
            vec![g11, g12.clone(), g13.clone()],
            vec![g12, g22, z.clone()],
            vec![g13, z.clone(), g33],
        ],
    )
}

fn quad_3d(ctx: &Ctx, row: &str) -> Result<AlgebraFile> {
    let f = ctx.field;
    let z = f.zero();
    ctx.nonzero("g13")?;
    let g13 = ctx.s("g13");
    let c = |x: i64| f.from_i64(x);
    // Rows with k1 != 0 and k2 = -k1/2 share the off-diagonal entry.
    let half = |ty: u8| -> Result<(Algebra, Scalar, Scalar)> {
        ctx.char_not(&[2, 3])?;
        ctx.nonzero("k1")?;
        let (k1, k3) = (ctx.s("k1"), ctx.s("k3"));
        let k2 = -&k1.checked_div(&c(2))?;
        let alg = j3d(&fixed(ctx, &[("k2", k2)]), ty)?;
        Ok((alg, k1, k3))
    };
    let three_k1 = |k1: &Scalar| &c(3) * k1;
    let (alg, g) = match row {
        "J1-k0" => {
            let alg = j3d(&fixed(ctx, &[("k1", z.clone()), ("k2", z.clone()), ("k3", z.clone())]), 1)?;
            (alg, sym3(f, ctx.s("g11"), ctx.s("g12"), g13.clone(), g13, z))
        }
        "J1-half" | "J2-half" => {
            let ty = if row == "J1-half" { 1 } else { 2 };
            let (alg, k1, k3) = half(ty)?;
            let g12 = -&(&(&c(2) * &k3) * &g13).checked_div(&three_k1(&k1))?;
            let g11 = if ty == 1 { z.clone() } else { -&g13.checked_div(&k1)? };
            (alg, sym3(f, g11, g12, g13.clone(), g13, z))
        }
        "J3-k3m2" | "J4-k3m2" => {
            let ty = if row == "J3-k3m2" { 3 } else { 4 };
            let alg = j3d(&fixed(ctx, &[("k1", z.clone()), ("k2", z.clone()), ("k3", c(-2))]), ty)?;
            let g12 = if ty == 3 { -&g13 } else { z.clone() };
            (alg, sym3(f, ctx.s("g11"), g12, g13.clone(), g13, z))
        }
        "J3-half" | "J4-half" => {
            let ty = if row == "J3-half" { 3 } else { 4 };
            let (alg, k1, k3) = half(ty)?;
            let t = &(&c(2) * &k3) + &c(4);
            let g12 = -&(&t * &g13).checked_div(&three_k1(&k1))?;
            let num = if ty == 3 { &t - &three_k1(&k1) } else { t };
            let g11 = (&num * &g13).checked_div(&(&three_k1(&k1) * &k1))?;
            (alg, sym3(f, g11, g12, g13.clone(), g13, z))
        }
        "J5" | "J6-m" => {
            ctx.nonzero("k1")?;
            ctx.nonzero("g12")?;
            let k1 = ctx.s("k1");
            let g12 = ctx.s("g12");
            let ty = if row == "J5" { 5 } else { 6 };
            let alg = j3d(&fixed(ctx, &[("k2", -&k1), ("k3", &c(-2) * &k1)]), ty)?;
            let g11 = if ty == 5 {
                &g12 - &g13.checked_div(&k1)?
            } else {
                g12.clone()
            };
            (alg, sym3(f, g11, g12.clone(), g13, g12, z))
        }
        "J6-k0" | "J7-k0" => {
            ctx.nonzero("g12")?;
            let ty = if row == "J6-k0" { 6 } else { 7 };
            let alg = j3d(&fixed(ctx, &[("k1", z.clone()), ("k2", z.clone()), ("k3", z.clone())]), ty)?;
            let (g11, g12) = (ctx.s("g11"), ctx.s("g12"));
            let g33 = if ty == 7 {
                if g11 == &g12 + &g13 {
                    return Err(Error::Constraint("g11 must differ from g12 + g13".into()));
                }
                g13.clone()
            } else {
                z
            };
            (alg, sym3(f, g11, g12.clone(), g13, g12, g33))
        }
        _ => unreachable!("quadratic rows are fixed"),
    };
    Ok(AlgebraFile::new(alg).with_form(g))
}

// ---------------------------------------------------------------------------
// The table of entries.

macro_rules! gen {
    ($f:ident, $arg:expr) => {{
        fn g(ctx: &Ctx) -> Result<AlgebraFile> {
            $f(ctx, $arg)
        }
        g as Generator
    }};
}

macro_rules! alg_gen {
    ($f:ident, $arg:expr) => {{
        fn g(ctx: &Ctx) -> Result<AlgebraFile> {
            Ok(AlgebraFile::new($f(ctx, $arg)?))
        }
        g as Generator
    }};
}

fn j3d_generator(ty: u8) -> Generator {
    macro_rules! table3 {
        ($($n:literal),*) => {
            match ty {
                $($n => alg_gen!(j3d, $n),)*
                _ => unreachable!("types 1..=23"),
            }
        };
    }
    table3!(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23)
}

const J3D_NAMES: [&str; 23] = [
    "3d-J1", "3d-J2", "3d-J3", "3d-J4", "3d-J5", "3d-J6", "3d-J7", "3d-J8", "3d-J9", "3d-J10", "3d-J11", "3d-J12",
    "3d-J13", "3d-J14", "3d-J15", "3d-J16", "3d-J17", "3d-J18", "3d-J19", "3d-J20", "3d-J21", "3d-J22", "3d-J23",
];

/// All entries in listing order.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("1d-unit", "one-dimensional unital algebra, dot only", &[], Law::UnitalCommAssoc, gen!(base, 1)),
        entry("2d-A1", "dot e1 unit, e2e2 = 0", &[], Law::UnitalCommAssoc, gen!(base, 2)),
        entry("2d-A2", "dot e1 unit, e2e2 = e2", &[], Law::UnitalCommAssoc, gen!(base, 3)),
        entry("2d-J1", "2-dim type J1", &["k1", "k2"], Law::Jnp, alg_gen!(j2d, 1)),
        entry("2d-J2", "2-dim type J2", &["k1", "k2"], Law::Jnp, alg_gen!(j2d, 2)),
        entry("2d-J3", "2-dim type J3", &["k1", "k2"], Law::Jnp, alg_gen!(j2d, 3)),
    ];
    for (i, name) in J3D_NAMES.iter().enumerate() {
        out.push(entry(name, "3-dim classification type", &["k1", "k2", "k3"], Law::Jnp, j3d_generator(i as u8 + 1)));
    }
    let mut c3 = entry(
        "char3-simple",
        "3-dim JNP algebra with simple Novikov part over F_3",
        &["k1", "k2", "k3", "a", "b"],
        Law::SimpleJnp,
        char3_simple,
    );
    c3.field_note = "F_3";
    c3.default_field = Field::Prime(3);
    out.push(c3);
    let mut cp = entry(
        "charp-simple",
        "p^n-dim binomial family with simple Novikov part",
        &["a", "b"],
        Law::SimpleJnp,
        charp_simple,
    );
    cp.params.insert(0, integer("n"));
    cp.field_note = "F_p, p odd";
    cp.default_field = Field::Prime(3);
    out.push(cp);
    let mut pd = entry(
        "poly-derivation",
        "k[x]/(x^N) with a∘b = a·(d/dx)b",
        &[],
        Law::Jnp,
        poly_derivation,
    );
    pd.params.push(integer("N"));
    pd.field_note = "char divides N, or N = 1";
    pd.default_field = Field::Prime(3);
    out.push(pd);
    let mut pt = entry("poly-truncated", "k[x]/(x^N) with zero second product", &[], Law::Jnp, poly_truncated);
    pt.params.push(integer("N"));
    out.push(pt);
    out.push(entry(
        "conformal-3d",
        "3-dim JNP algebra with e1∘e1 = e3, e1∘e3 = -e3",
        &[],
        Law::Jnp,
        conformal_3d,
    ));
    let mut fd = entry(
        "4d-diff-frobenius",
        "4-dim differential Frobenius algebra with derivation P and form",
        &[],
        Law::DifferentialFrobenius,
        four_dim,
    );
    fd.field_note = "char not 2 or 3";
    out.push(fd);
    out.push(entry("final-jnp", "quadratic JNP factor of the tensor example", &[], Law::Quadratic, final_jnp));
    out.push(entry(
        "final-right-jnp",
        "quadratic right JNP factor of the tensor example",
        &[],
        Law::RightQuadratic,
        final_right_jnp,
    ));
    out.push(entry(
        "final-frobenius-pair",
        "4-dim Frobenius Jacobi algebra from the two factors",
        &[],
        Law::FrobeniusJacobi,
        final_frobenius_pair,
    ));
    let quad2: [(&str, &[&str], Generator); 4] = [
        ("quad-2d-J1-k0", &["g11", "g12"], gen!(quad_2d, 1)),
        ("quad-2d-J1-m2", &["k1", "g12"], gen!(quad_2d, 2)),
        ("quad-2d-J2-m2", &["k1", "g12"], gen!(quad_2d, 3)),
        ("quad-2d-J3-k0", &["g11", "g12"], gen!(quad_2d, 4)),
    ];
    for (name, params, g) in quad2 {
        out.push(entry(name, "2-dim quadratic table row", params, Law::Quadratic, g));
    }
    let quad3: [(&str, &[&str], Generator); 11] = [
        ("quad-3d-J1-k0", &["g11", "g12", "g13"], gen!(quad_3d, "J1-k0")),
        ("quad-3d-J1-half", &["k1", "k3", "g13"], gen!(quad_3d, "J1-half")),
        ("quad-3d-J2-half", &["k1", "k3", "g13"], gen!(quad_3d, "J2-half")),
        ("quad-3d-J3-k3m2", &["g11", "g13"], gen!(quad_3d, "J3-k3m2")),
        ("quad-3d-J3-half", &["k1", "k3", "g13"], gen!(quad_3d, "J3-half")),
        ("quad-3d-J4-k3m2", &["g11", "g13"], gen!(quad_3d, "J4-k3m2")),
        ("quad-3d-J4-half", &["k1", "k3", "g13"], gen!(quad_3d, "J4-half")),
        ("quad-3d-J5", &["k1", "g12", "g13"], gen!(quad_3d, "J5")),
        ("quad-3d-J6-k0", &["g11", "g12", "g13"], gen!(quad_3d, "J6-k0")),
        ("quad-3d-J6-m", &["k1", "g12", "g13"], gen!(quad_3d, "J6-m")),
        ("quad-3d-J7-k0", &["g11", "g12", "g13"], gen!(quad_3d, "J7-k0")),
    ];
    for (name, params, g) in quad3 {
        let mut e = entry(name, "3-dim quadratic table row", params, Law::Quadratic, g);
        if name.ends_with("half") {
            e.field_note = "char not 2 or 3";
        }
        out.push(e);
    }
    out
}

pub fn find(name: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn list_entries() -> Vec<EntrySummary> {
    entries()
        .into_iter()
        .map(|e| EntrySummary {
            name: e.name,
            description: e.description,
            field: e.field_note,
            params: e.params,
            law: e.law,
        })
        .collect()
}

impl CatalogEntry {
    pub fn emit(&self, field: Option<Field>, values: &Assignment) -> Result<AlgebraFile> {
        let field = field.unwrap_or(self.default_field);
        for k in values.keys() {
            if !self.params.iter().any(|p| p.name == k) {
                return Err(Error::Constraint(format!("{} has no parameter {k}", self.name)));
            }
        }
        let mut scalars = BTreeMap::new();
        let mut ints = BTreeMap::new();
        for p in &self.params {
            let raw = values
                .get(p.name)
                .ok_or_else(|| Error::Constraint(format!("missing parameter {}", p.name)))?;
            match p.kind {
                ParamKind::Scalar => {
                    scalars.insert(p.name, field.parse(raw)?);
                }
                ParamKind::Integer => {
                    let v: i64 = raw
                        .trim()
                        .parse()
                        .map_err(|_| Error::Constraint(format!("{} must be an integer", p.name)))?;
                    ints.insert(p.name, v);
                }
            }
        }
        let ctx = Ctx { field, scalars, ints };
        (self.generator)(&ctx)
    }

    /// Runs the checker for the law this entry asserts.
    pub fn check(&self, file: &AlgebraFile) -> Result<Verdict> {
        check_law(self.law, file)
    }
}

pub fn emit(name: &str, field: Option<Field>, values: &Assignment) -> Result<AlgebraFile> {
    find(name)?.emit(field, values)
}

pub fn check_law(law: Law, file: &AlgebraFile) -> Result<Verdict> {
    let alg = &file.algebra;
    match law {
        Law::Jnp => laws::check_jnp(alg),
        Law::RightJnp => laws::check_right_jnp(alg),
        Law::Quadratic | Law::RightQuadratic => frobenius::check_quadratic(alg, file.form()?),
        Law::SimpleJnp => {
            let v = laws::check_jnp(alg)?;
            if !v.pass {
                return Ok(v);
            }
            laws::check_simple_novikov(alg, laws::DEFAULT_SIMPLE_BUDGET)
        }
        Law::DifferentialFrobenius => {
            let g = file.form()?;
            let p = file.map("P")?;
            let v = frobenius::check_dot_frobenius(alg, g)?;
            if !v.pass {
                return Ok(v);
            }
            let v = laws::check_derivation(alg, Which::Dot, p)?;
            if !v.pass {
                return Ok(v);
            }
            let half = ratio(alg.field, -1, 2)?;
            Ok(frobenius::differential_frobenius_construct(alg, p, g, &half)?.1)
        }
        Law::FrobeniusJacobi => frobenius::check_frobenius_jacobi(alg, file.form()?),
        Law::UnitalCommAssoc => Ok(laws::check_unital_comm_assoc(alg)),
    }
}

// ---------------------------------------------------------------------------
// Verification sweeps.

#[derive(Clone, Debug, Serialize)]
pub struct SamplingPlan {
    /// Values tried for every free scalar parameter over Q.
    pub values: Vec<String>,
    /// Restrict to these entries; all entries when empty.
    #[serde(default)]
    pub entries: Vec<String>,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            values: ["-1", "0", "1", "2"].iter().map(|s| s.to_string()).collect(),
            entries: Vec::new(),
        }
    }
}

impl SamplingPlan {
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let mut plan = SamplingPlan::default();
        if let Some(vals) = v.get("values") {
            plan.values = vals
                .as_array()
                .ok_or_else(|| Error::Format("plan.values must be an array".into()))?
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => Ok(s.clone()),
                    serde_json::Value::Number(n) => Ok(n.to_string()),
                    _ => Err(Error::Format("plan.values holds scalars".into())),
                })
                .collect::<Result<_>>()?;
        }
        if let Some(es) = v.get("entries") {
            plan.entries = es
                .as_array()
                .ok_or_else(|| Error::Format("plan.entries must be an array".into()))?
                .iter()
                .map(|x| x.as_str().map(str::to_string).ok_or_else(|| Error::Format("entry names are strings".into())))
                .collect::<Result<_>>()?;
        }
        Ok(plan)
    }
}

fn cartesian(names: &[&str], values: &[String]) -> Vec<Assignment> {
    let mut out = vec![Assignment::new()];
    for name in names {
        let mut next = Vec::with_capacity(out.len() * values.len());
        for a in &out {
            for v in values {
                let mut b = a.clone();
                b.insert(name.to_string(), v.clone());
                next.push(b);
            }
        }
        out = next;
    }
    out
}

/// The instances a sweep visits for one entry.
pub fn samples(e: &CatalogEntry, plan: &SamplingPlan) -> Vec<(Field, Assignment)> {
    let strings = |xs: &[i64]| xs.iter().map(i64::to_string).collect::<Vec<_>>();
    match e.name {
        "char3-simple" => {
            let mut out = Vec::new();
            for mut a in cartesian(&["k2", "k3", "a", "b"], &strings(&[0, 1, 2])) {
                for k1 in ["1", "2"] {
                    a.insert("k1".into(), k1.into());
                    out.push((Field::Prime(3), a.clone()));
                }
            }
            out
        }
        "charp-simple" => {
            let mut out = Vec::new();
            for (p, n) in [(3u64, 1), (5, 1), (7, 1), (3, 2)] {
                for a in cartesian(&["a", "b"], &strings(&[0, 1])) {
                    let mut a = a;
                    a.insert("n".into(), n.to_string());
                    out.push((Field::Prime(p), a));
                }
            }
            out
        }
        "poly-derivation" => [(3u64, 1), (3, 3), (3, 6), (5, 5), (2, 4), (7, 7)]
            .iter()
            .map(|&(p, n)| (Field::Prime(p), assignment(&[("N", &n.to_string())])))
            .collect(),
        "poly-truncated" => (1..=4).map(|n| (Field::Rational, assignment(&[("N", &n.to_string())]))).collect(),
        _ => {
            let names: Vec<&str> = e.params.iter().map(|p| p.name).collect();
            cartesian(&names, &plan.values)
                .into_iter()
                .map(|a| (e.default_field, a))
                .collect()
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub field: Field,
    pub assignment: Assignment,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryReport {
    pub name: &'static str,
    pub law: Law,
    pub instances: usize,
    pub passed: usize,
    /// Assignments rejected by the entry's constraints.
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub entries: Vec<EntryReport>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.failures.is_empty())
    }
}

pub fn verify_catalog(plan: &SamplingPlan) -> Result<VerifyReport> {
    let mut reports = Vec::new();
    for e in entries() {
        if !plan.entries.is_empty() && !plan.entries.iter().any(|n| n == e.name) {
            continue;
        }
        let mut r = EntryReport {
            name: e.name,
            law: e.law,
            instances: 0,
            passed: 0,
            skipped: 0,
            failures: Vec::new(),
        };
        for (field, a) in samples(&e, plan) {
            let file = match e.emit(Some(field), &a) {
                Ok(f) => f,
                Err(Error::Constraint(_)) | Err(Error::Characteristic(_)) | Err(Error::DivisionByZero) => {
                    r.skipped += 1;
                    continue;
                }
                Err(err) => return Err(err),
            };
            r.instances += 1;
            let v = e.check(&file)?;
            if v.pass {
                r.passed += 1;
            } else {
                r.failures.push(Failure {
                    field,
                    assignment: a,
                    verdict: v,
                });
            }
        }
        reports.push(r);
    }
    Ok(VerifyReport { entries: reports })
}

// ---------------------------------------------------------------------------
// Isomorphism invariants.

/// Computable isomorphism invariants of a JNP algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Invariants {
    /// `dim {a : a·A = 0}`.
    pub dot_annihilator: usize,
    /// `dim {a : a∘A = A∘a = 0}`.
    pub circ_annihilator: usize,
    /// `dim span {e_i∘e_j + e_j∘e_i}`.
    pub symmetrized_circ_rank: usize,
    /// `dim A∘A`.
    pub circ_square: usize,
    /// `dim span {e_i∘e_j − e_j∘e_i}`.
    pub commutator_rank: usize,
    /// `dim A∘1_A`, the image of right multiplication by the unit.
    pub circ_unit_rank: usize,
    pub integral_space: usize,
}

fn span_dim(f: Field, n: usize, vs: impl IntoIterator<Item = Vec<Scalar>>) -> usize {
    let mut s = Span::new(f, n);
    for v in vs {
        s.insert(&v);
    }
    s.dim()
}

fn annihilator_dim(f: Field, n: usize, ops: &[Matrix]) -> usize {
    if n == 0 {
        return 0;
    }
    // Stack the maps a ↦ a*e_j and a ↦ e_j*a and take the common kernel.
    let mut rows = Vec::new();
    for m in ops {
        rows.extend(m.to_rows());
    }
    if rows.is_empty() {
        return n;
    }
    n - Matrix::from_rows(f, rows).expect("rectangular").rank()
}

pub fn invariants(alg: &Algebra) -> Result<Invariants> {
    let f = alg.field;
    let n = alg.dim;
    let circ = alg.left_circ()?;
    let dot_right: Vec<Matrix> = (0..n).map(|j| alg.dot.right_operator(&alg.basis(j))).collect();
    let mut circ_ops: Vec<Matrix> = (0..n).map(|j| circ.right_operator(&alg.basis(j))).collect();
    circ_ops.extend((0..n).map(|j| circ.left_operator(&alg.basis(j))));
    let pairs = || (0..n).flat_map(|i| (0..n).map(move |j| (i, j)));
    Ok(Invariants {
        dot_annihilator: annihilator_dim(f, n, &dot_right),
        circ_annihilator: annihilator_dim(f, n, &circ_ops),
        symmetrized_circ_rank: span_dim(
            f,
            n,
            pairs().map(|(i, j)| vector::add(circ.basis_product(i, j), circ.basis_product(j, i))),
        ),
        circ_square: span_dim(f, n, pairs().map(|(i, j)| circ.basis_product(i, j).to_vec())),
        commutator_rank: span_dim(
            f,
            n,
            pairs().map(|(i, j)| vector::sub(circ.basis_product(i, j), circ.basis_product(j, i))),
        ),
        circ_unit_rank: span_dim(f, n, (0..n).map(|i| circ.product(&alg.basis(i), &alg.unit))),
        integral_space: frobenius::integral_space(alg)?.len(),
    })
}

/// A small set of JNP algebras over Q used by sweeps and tests: every
/// classification type at one generic assignment plus the worked examples.
pub fn standard_corpus() -> Vec<(String, AlgebraFile)> {
    let mut out = Vec::new();
    let mut push = |name: &str, vals: &[(&str, &str)]| {
        let file = emit(name, None, &assignment(vals)).expect("corpus assignments are valid");
        let label = if vals.is_empty() {
            name.to_string()
        } else {
            let parts: Vec<String> = vals.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{name}[{}]", parts.join(","))
        };
        out.push((label, file));
    };
    push("2d-J1", &[("k1", "1"), ("k2", "0")]);
    push("2d-J1", &[("k1", "1"), ("k2", "-2")]);
    push("2d-J1", &[("k1", "0"), ("k2", "0")]);
    push("2d-J2", &[("k1", "1"), ("k2", "-2")]);
    push("2d-J3", &[("k1", "1"), ("k2", "0")]);
    push("2d-J3", &[("k1", "0"), ("k2", "0")]);
    for name in J3D_NAMES {
        push(name, &[("k1", "1"), ("k2", "2"), ("k3", "-1")]);
    }
    push("3d-J6", &[("k1", "0"), ("k2", "0"), ("k3", "0")]);
    push("conformal-3d", &[]);
    push("poly-truncated", &[("N", "3")]);
    push("final-jnp", &[]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_sizes() {
        let names: Vec<&str> = list_entries().iter().map(|e| e.name).collect();
        assert_eq!(names.iter().filter(|n| n.starts_with("2d-J")).count(), 3);
        assert_eq!(names.iter().filter(|n| n.starts_with("3d-J")).count(), 23);
        assert!(names.contains(&"charp-simple"));
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
    }

    #[test]
    fn char3_unit_and_products() {
        let f = emit(
            "char3-simple",
            None,
            &assignment(&[("k1", "1"), ("k2", "0"), ("k3", "0"), ("a", "0"), ("b", "0")]),
        )
        .unwrap();
        let alg = &f.algebra;
        let p3 = Field::Prime(3);
        assert_eq!(alg.unit, vector::basis(p3, 3, 0));
        // y_0 ∘ y_1 = 2 y_1
        assert_eq!(alg.circ.as_ref().unwrap().basis_product(1, 2), &[p3.zero(), p3.zero(), p3.from_i64(2)]);
    }

    #[test]
    fn constraints_reject() {
        let bad = emit("quad-2d-J1-m2", None, &assignment(&[("k1", "0"), ("g12", "1")]));
        assert!(matches!(bad, Err(Error::Constraint(_))));
        let bad = emit("char3-simple", Some(Field::Prime(5)), &assignment(&[("k1", "1"), ("k2", "0"), ("k3", "0"), ("a", "0"), ("b", "0")]));
        assert!(matches!(bad, Err(Error::Characteristic(_))));
    }
}
