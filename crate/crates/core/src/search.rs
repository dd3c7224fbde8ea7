//! Exhaustive search for second products over a prime field.
//!
//! In a JNP algebra `(a·b)∘c = a·(b∘c)` with `b = 1_A` forces
//! `a∘c = a·(1_A∘c)`, so the whole product is fixed by the operator
//! `D = 1_A∘(–)`: `e_i∘e_j = Σ_m D[m][j] e_i·e_m`. The search walks all
//! `p^(n²)` matrices `D` instead of all `p^(n³)` tensors.

use std::collections::{BTreeMap, HashSet};

use serde::{Serialize, Serializer};

use crate::algebra::{Algebra, Orientation, StructureTensor};
use crate::catalog::{invariants, Invariants};
use crate::error::{Error, Result};
use crate::io::tensor_json;
use crate::laws::{self, Verdict};
use crate::scalar::{Field, Scalar};

/// Law used to filter candidates. Only `Jnp` and `Dnp` are covered by the
/// reduction; `Novikov` filters the same reduced candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchLaw {
    Jnp,
    Novikov,
    Dnp,
}

impl SearchLaw {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "jnp" => Ok(SearchLaw::Jnp),
            "novikov" => Ok(SearchLaw::Novikov),
            "dnp" => Ok(SearchLaw::Dnp),
            _ => Err(Error::Format(format!("unknown search law {s:?}"))),
        }
    }

    fn check(self, alg: &Algebra) -> Result<Verdict> {
        match self {
            SearchLaw::Jnp => laws::check_jnp(alg),
            SearchLaw::Novikov => laws::check_novikov(alg),
            SearchLaw::Dnp => laws::check_dnp(alg),
        }
    }
}

fn ser_tensor<S: Serializer>(t: &StructureTensor, s: S) -> std::result::Result<S::Ok, S::Error> {
    tensor_json(t).serialize(s)
}

fn ser_tensors<S: Serializer>(ts: &[StructureTensor], s: S) -> std::result::Result<S::Ok, S::Error> {
    ts.iter().map(tensor_json).collect::<Vec<_>>().serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct Bucket {
    pub invariants: Invariants,
    pub size: usize,
    #[serde(serialize_with = "ser_tensor")]
    pub representative: StructureTensor,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub field: Field,
    pub law: SearchLaw,
    pub candidates: u128,
    pub count: usize,
    /// Solutions in enumeration order.
    #[serde(serialize_with = "ser_tensors")]
    pub solutions: Vec<StructureTensor>,
    /// One bucket per value of the invariants, sorted by invariants.
    pub buckets: Vec<Bucket>,
}

fn prime_of(field: Field) -> Result<u64> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Error::Characteristic("search runs over a prime field".into())),
    }
}

/// Reduces the dot of `base` into `field` and checks it is unital,
/// commutative and associative.
fn prepare(base: &Algebra, field: Field) -> Result<Algebra> {
    prime_of(field)?;
    let mut alg = if base.field == field {
        base.clone()
    } else {
        base.reduce_into(field)?
    };
    alg.circ = None;
    alg.bracket = None;
    alg.orientation = Orientation::Left;
    laws::check_unital_comm_assoc(&alg).into_result()?;
    Ok(alg)
}

fn budget_check(p: u64, unknowns: usize, budget: u128) -> Result<u128> {
    let needed = (p as u128).checked_pow(unknowns as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(needed)
}

/// Calls `visit` on every tuple of `len` field elements, last entry fastest,
/// so tuples arrive in lexicographic order.
fn for_each_tuple(elems: &[Scalar], len: usize, mut visit: impl FnMut(&[Scalar]) -> Result<()>) -> Result<()> {
    let mut digits = vec![0usize; len];
    let mut tuple = vec![elems[0].clone(); len];
    loop {
        visit(&tuple)?;
        let mut i = len;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < elems.len() {
                tuple[i] = elems[digits[i]].clone();
                break;
            }
            digits[i] = 0;
            tuple[i] = elems[0].clone();
        }
    }
}

/// `d^k_ij = Σ_m D[m][j] c^k_im` with `D` given row-major.
pub fn circ_from_operator(dot: &StructureTensor, d: &[Scalar]) -> StructureTensor {
    let n = dot.dim();
    assert_eq!(d.len(), n * n, "operator size");
    let f = dot.field();
    StructureTensor::from_fn(f, n, |i, j| {
        let mut out = vec![f.zero(); n];
        for m in 0..n {
            let coeff = &d[m * n + j];
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in dot.basis_product(i, m).iter().enumerate() {
                if !c.is_zero() {
                    out[k] += &(coeff * c);
                }
            }
        }
        out
    })
}

fn with_circ(alg: &Algebra, circ: StructureTensor) -> Result<Algebra> {
    alg.clone().with_circ(circ, Orientation::Left)
}

pub fn enumerate_jnp(base: &Algebra, field: Field, law: SearchLaw, budget: u128) -> Result<SearchResult> {
    let p = prime_of(field)?;
    let n = base.dim;
    let candidates = budget_check(p, n * n, budget)?;
    let alg = prepare(base, field)?;
    let elems = field.elements().expect("prime field");
    let mut solutions = Vec::new();
    for_each_tuple(&elems, n * n, |d| {
        let circ = circ_from_operator(&alg.dot, d);
        let cand = with_circ(&alg, circ.clone())?;
        if law.check(&cand)?.pass {
            solutions.push(circ);
        }
        Ok(())
    })?;
    let mut buckets: BTreeMap<Invariants, Bucket> = BTreeMap::new();
    for circ in &solutions {
        let cand = with_circ(&alg, circ.clone())?;
        // Filter soundness, asserted rather than assumed.
        debug_assert!(law.check(&cand)?.pass);
        let inv = invariants(&cand)?;
        buckets
            .entry(inv.clone())
            .and_modify(|b| b.size += 1)
            .or_insert_with(|| Bucket {
                invariants: inv,
                size: 1,
                representative: circ.clone(),
            });
    }
    Ok(SearchResult {
        field,
        law,
        candidates,
        count: solutions.len(),
        solutions,
        buckets: buckets.into_values().collect(),
    })
}

/// Coordinates `[d^0_00, d^1_00, d^0_01, d^1_01, d^0_10, d^1_10, d^0_11, d^1_11]`
/// of a 2-dimensional product, i.e. `e_i∘e_j = l e_1 + l' e_2` read in order.
pub fn projection(circ: &StructureTensor) -> Vec<Scalar> {
    let n = circ.dim();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            out.extend(circ.basis_product(i, j).iter().cloned());
        }
    }
    out
}

/// Whether the full scan over all `p^(n³)` tensors finds exactly the JNP
/// products that the reduced scan finds.
pub fn cross_check_reduction(base: &Algebra, field: Field, budget: u128) -> Result<bool> {
    let p = prime_of(field)?;
    let n = base.dim;
    budget_check(p, n * n * n, budget)?;
    let alg = prepare(base, field)?;
    let reduced: HashSet<Vec<Scalar>> = enumerate_jnp(&alg, field, SearchLaw::Jnp, budget)?
        .solutions
        .iter()
        .map(|t| t.entries().to_vec())
        .collect();
    let elems = field.elements().expect("prime field");
    let mut full = HashSet::new();
    for_each_tuple(&elems, n * n * n, |entries| {
        let circ = StructureTensor::from_fn(field, n, |i, j| entries[(i * n + j) * n..(i * n + j + 1) * n].to_vec());
        if laws::check_jnp(&with_circ(&alg, circ)?)?.pass {
            full.insert(entries.to_vec());
        }
        Ok(())
    })?;
    Ok(full == reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector;

    fn unit_1d(f: Field) -> Algebra {
        let dot = StructureTensor::from_fn(f, 1, |_, _| vec![f.one()]);
        Algebra::new(dot, vec![f.one()]).unwrap()
    }

    #[test]
    fn tuples_in_lex_order() {
        let f = Field::Prime(2);
        let mut seen = Vec::new();
        for_each_tuple(&f.elements().unwrap(), 2, |t| {
            seen.push(vector::to_strings(t).join(""));
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, ["00", "01", "10", "11"]);
    }

    #[test]
    fn one_dimensional() {
        let f = Field::Prime(5);
        let r = enumerate_jnp(&unit_1d(f), f, SearchLaw::Jnp, 100).unwrap();
        assert_eq!(r.count, 5);
        assert!(cross_check_reduction(&unit_1d(f), f, 100).unwrap());
        assert!(matches!(
            enumerate_jnp(&unit_1d(f), f, SearchLaw::Jnp, 4),
            Err(Error::Budget { needed: 5, budget: 4 })
        ));
    }
}
