//! Integer lattice vectors, the `M × N` pairing and small integer matrices.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;
use crate::serde_int;

/// Which of the two dual lattices a vector belongs to: the character lattice
/// `M` or the lattice `N` of one-parameter subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LatticeTag {
    M,
    N,
}

impl fmt::Display for LatticeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeTag::M => f.write_str("M"),
            LatticeTag::N => f.write_str("N"),
        }
    }
}

/// An integer vector tagged with the lattice it lives in.
///
/// Ordering is lexicographic on the coordinates. Arithmetic operators panic on
/// rank or tag mismatch, like slice indexing does on out-of-range access;
/// the fallible entry points ([`pairing`], [`det2`], ...) report errors instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector {
    coords: Vec<BigInt>,
    tag: LatticeTag,
}

impl LatticeVector {
    pub fn new(tag: LatticeTag, coords: Vec<BigInt>) -> Self {
        LatticeVector { coords, tag }
    }

    /// A character-lattice vector.
    pub fn m<T: Into<BigInt>>(coords: impl IntoIterator<Item = T>) -> Self {
        Self::new(LatticeTag::M, coords.into_iter().map(Into::into).collect())
    }

    /// A one-parameter-subgroup lattice vector.
    pub fn n<T: Into<BigInt>>(coords: impl IntoIterator<Item = T>) -> Self {
        Self::new(LatticeTag::N, coords.into_iter().map(Into::into).collect())
    }

    pub fn zero(tag: LatticeTag, rank: usize) -> Self {
        Self::new(tag, vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn tag(&self) -> LatticeTag {
        self.tag
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    /// The same coordinates read in the other lattice.
    pub fn retagged(mut self, tag: LatticeTag) -> Self {
        self.tag = tag;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Largest absolute value of a coordinate (0 for the empty vector).
    pub fn max_abs(&self) -> BigInt {
        self.coords
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Greatest common divisor of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self::new(self.tag, self.coords.iter().map(|c| c * k).collect())
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Same coordinates under the usual dot product, ignoring tags.
    pub(crate) fn dot(&self, other: &LatticeVector) -> BigInt {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: rank,
                found: self.rank(),
            })
        }
    }

    pub(crate) fn check_tag(&self, tag: LatticeTag) -> Result<()> {
        if self.tag == tag {
            Ok(())
        } else {
            Err(Error::TagMismatch {
                expected: tag,
                found: self.tag,
            })
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.rank(), other.rank(), "lattice vector rank mismatch");
        assert_eq!(self.tag, other.tag, "lattice vector tag mismatch");
        Self::new(
            self.tag,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| op(a, b))
                .collect(),
        )
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector::new(self.tag, self.coords.iter().map(|c| -c).collect())
    }
}

/// Vectors serialize as plain JSON arrays of integers; the tag is implied by context.
impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_int::vec::serialize(&self.coords, s)
    }
}

/// The duality pairing `⟨m, p⟩ = Σ mᵢ pᵢ` between `M` and `N`.
pub fn pairing(m: &LatticeVector, p: &LatticeVector) -> Result<BigInt> {
    m.check_tag(LatticeTag::M)?;
    p.check_tag(LatticeTag::N)?;
    p.check_rank(m.rank())?;
    Ok(m.dot(p))
}

/// Divides `v` by the gcd of its entries.
pub fn primitive(v: &LatticeVector) -> Result<LatticeVector> {
    let g = v.content();
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(LatticeVector::new(
        v.tag,
        v.coords.iter().map(|c| c / &g).collect(),
    ))
}

/// The 2×2 determinant `a₁b₂ − a₂b₁`.
pub fn det2(a: &LatticeVector, b: &LatticeVector) -> Result<BigInt> {
    a.check_rank(2)?;
    b.check_rank(2)?;
    Ok(&a.coords[0] * &b.coords[1] - &a.coords[1] * &b.coords[0])
}

/// A dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if rows.checked_mul(cols) != Some(entries.len()) {
            return Err(Error::LengthMismatch {
                expected: rows.saturating_mul(cols),
                found: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows<T: Into<BigInt>>(rows: Vec<Vec<T>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            if row.len() != n_cols {
                return Err(Error::LengthMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            entries.extend(row.into_iter().map(Into::into));
        }
        Self::new(n_rows, n_cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                entries.push(
                    (0..self.cols)
                        .map(|k| self.get(i, k) * other.get(k, j))
                        .sum(),
                );
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Result<IntMatrix> {
        self.require_square()?;
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Applies the matrix to a column vector; the result keeps `v`'s tag.
    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        v.check_rank(self.cols)?;
        Ok(LatticeVector::new(
            v.tag(),
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.coords()).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn det(&self) -> Result<BigInt> {
        self.require_square()?;
        Ok(linalg::det(self.to_rows()))
    }

    /// Entries reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mod_floor(p)).collect(),
        }
    }

    /// Product reduced modulo `p`.
    pub fn mul_mod(&self, other: &IntMatrix, p: &BigInt) -> Result<IntMatrix> {
        Ok(self.mul(other)?.reduce_mod(p))
    }

    pub(crate) fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Matrices serialize as an array of row arrays.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_int::grid::serialize(&self.to_rows(), s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = serde_int::grid::deserialize(d)?;
        IntMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}
