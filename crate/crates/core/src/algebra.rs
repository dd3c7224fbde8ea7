//! Algebras given by structure constants.
//!
//! A [`StructureTensor`] stores `t[i][j][k]` with `e_i * e_j = sum_k t[i][j][k] e_k`.
//! An [`Algebra`] bundles the commutative product `dot`, an optional second
//! product `circ` (read as a left or right Novikov product according to its
//! [`Orientation`]), an optional bracket, and the unit vector.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};
use crate::vector;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureTensor {
    field: Field,
    dim: usize,
    entries: Vec<Scalar>,
}

impl StructureTensor {
    pub fn zeros(field: Field, dim: usize) -> Self {
        StructureTensor {
            field,
            dim,
            entries: vec![field.zero(); dim * dim * dim],
        }
    }

    /// Builds a tensor from a function giving the product of two basis vectors.
    pub fn from_fn(field: Field, dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Scalar>) -> Self {
        let mut t = Self::zeros(field, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "product vector has wrong length");
                t.entries[(i * dim + j) * dim..(i * dim + j + 1) * dim].clone_from_slice(&v);
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[(i * self.dim + j) * self.dim + k]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, x: Scalar) {
        let n = self.dim;
        self.entries[(i * n + j) * n + k] = x;
    }

    /// Coefficients of `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.entries[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Bilinear extension to arbitrary coefficient vectors.
    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vector::zeros(self.field, self.dim);
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(x * y), self.basis_product(i, j));
            }
        }
        out
    }

    /// The opposite product `e_i *' e_j = e_j * e_i`.
    pub fn opposite(&self) -> Self {
        Self::from_fn(self.field, self.dim, |i, j| self.basis_product(j, i).to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "tensor dimension mismatch");
        StructureTensor {
            field: self.field,
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// Nonzero entries in `(i, j, k)` lexicographic order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, &Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = self.get(i, j, k);
                    if !x.is_zero() {
                        out.push((i, j, k, x));
                    }
                }
            }
        }
        out
    }

    /// `v -> a * v` as a matrix.
    pub fn left_operator(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.product(a, &vector::basis(self.field, self.dim, j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// `v -> v * a` as a matrix.
    pub fn right_operator(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.product(&vector::basis(self.field, self.dim, j), a))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub(crate) fn map_entries(&self, field: Field, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(StructureTensor {
            field,
            dim: self.dim,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

/// How the second product is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Orientation {
    /// A (left) Novikov product `a ∘ b`.
    #[default]
    Left,
    /// A right Novikov product `a ⋄ b`, stored literally.
    Right,
}

impl Orientation {
    pub fn name(&self) -> &'static str {
        match self {
            Orientation::Left => "left",
            Orientation::Right => "right",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Which {
    Dot,
    Circ,
    Bracket,
}

impl Which {
    pub fn name(&self) -> &'static str {
        match self {
            Which::Dot => "dot",
            Which::Circ => "circ",
            Which::Bracket => "bracket",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub field: Field,
    pub dim: usize,
    pub dot: StructureTensor,
    pub circ: Option<StructureTensor>,
    pub orientation: Orientation,
    pub bracket: Option<StructureTensor>,
    pub unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(dot: StructureTensor, unit: Vec<Scalar>) -> Result<Algebra> {
        if unit.len() != dot.dim() {
            return Err(Error::Dimension(format!(
                "unit of length {} for dimension {}",
                unit.len(),
                dot.dim()
            )));
        }
        Ok(Algebra {
            field: dot.field(),
            dim: dot.dim(),
            dot,
            circ: None,
            orientation: Orientation::Left,
            bracket: None,
            unit,
        })
    }

    pub fn with_circ(mut self, circ: StructureTensor, orientation: Orientation) -> Result<Algebra> {
        self.check_tensor(&circ)?;
        self.circ = Some(circ);
        self.orientation = orientation;
        Ok(self)
    }

    pub fn with_bracket(mut self, bracket: StructureTensor) -> Result<Algebra> {
        self.check_tensor(&bracket)?;
        self.bracket = Some(bracket);
        Ok(self)
    }

    fn check_tensor(&self, t: &StructureTensor) -> Result<()> {
        if t.dim() != self.dim {
            return Err(Error::Dimension(format!("tensor of dimension {} for algebra of dimension {}", t.dim(), self.dim)));
        }
        if t.field() != self.field {
            return Err(Error::FieldMismatch(t.field().to_string(), self.field.to_string()));
        }
        Ok(())
    }

    pub fn product(&self, which: Which) -> Result<&StructureTensor> {
        match which {
            Which::Dot => Ok(&self.dot),
            Which::Circ => self.circ.as_ref().ok_or(Error::MissingProduct("circ")),
            Which::Bracket => self.bracket.as_ref().ok_or(Error::MissingProduct("bracket")),
        }
    }

    /// The second product read as a left Novikov product: literal for left
    /// orientation, opposite for right.
    pub fn left_circ(&self) -> Result<StructureTensor> {
        let c = self.product(Which::Circ)?;
        Ok(match self.orientation {
            Orientation::Left => c.clone(),
            Orientation::Right => c.opposite(),
        })
    }

    /// Swaps orientation and transposes the second product, so a right
    /// algebra becomes the left algebra of its opposite and vice versa.
    pub fn opposite(&self) -> Algebra {
        let mut out = self.clone();
        out.circ = self.circ.as_ref().map(StructureTensor::opposite);
        out.orientation = match self.orientation {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
        };
        out
    }

    pub fn multiply(&self, which: Which, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>> {
        let t = self.product(which)?;
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(t.product(a, b))
    }

    pub fn left_mult_operator(&self, which: Which, a: &[Scalar]) -> Result<Matrix> {
        let t = self.product(which)?;
        self.check_len(a)?;
        Ok(t.left_operator(a))
    }

    pub fn right_mult_operator(&self, which: Which, a: &[Scalar]) -> Result<Matrix> {
        let t = self.product(which)?;
        self.check_len(a)?;
        Ok(t.right_operator(a))
    }

    pub fn check_len(&self, a: &[Scalar]) -> Result<()> {
        if a.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} in dimension {}", a.len(), self.dim)));
        }
        if let Some(x) = a.iter().find(|x| x.field() != self.field) {
            return Err(Error::FieldMismatch(x.field().to_string(), self.field.to_string()));
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        vector::basis(self.field, self.dim, i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vector::zeros(self.field, self.dim)
    }

    /// Maps every coefficient into `target`, e.g. reducing integral rational
    /// data modulo a prime.
    pub fn reduce_into(&self, target: Field) -> Result<Algebra> {
        let conv = |x: &Scalar| x.reduce_into(target);
        Ok(Algebra {
            field: target,
            dim: self.dim,
            dot: self.dot.map_entries(target, conv)?,
            circ: self.circ.as_ref().map(|c| c.map_entries(target, conv)).transpose()?,
            orientation: self.orientation,
            bracket: self.bracket.as_ref().map(|c| c.map_entries(target, conv)).transpose()?,
            unit: self.unit.iter().map(conv).collect::<Result<_>>()?,
        })
    }
}

/// Position of `e_i ⊗ f_j` in the basis of a tensor product.
pub fn tensor_index(n1: usize, n2: usize, i: usize, j: usize) -> Result<usize> {
    if i >= n1 || j >= n2 {
        return Err(Error::OutOfRange(format!("({i}, {j}) in {n1} x {n2}")));
    }
    Ok(i * n2 + j)
}

/// Coefficients of `a ⊗ b` in the product basis.
pub fn tensor_vector(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}
