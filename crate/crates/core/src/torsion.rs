//! Finite-order tests in `GL_n(Z)` and algebraicity of monomial automorphisms.
//!
//! An element of `GL_n(Z)` some power of which is divisible has finite order.
//! The test used here: the kernel of reduction modulo an odd prime is
//! torsion-free, so `A` has finite order iff `A^m = I` over the integers,
//! where `m` is the order of `A` modulo 3.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::lnd::TorusPoint;

const WITNESS_PRIME: u64 = 3;

/// A monomial automorphism `x ↦ t · x^A` of the torus: a unimodular matrix
/// together with a torus point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAut {
    matrix: IntMatrix,
    scale: TorusPoint,
}

impl MonomialAut {
    pub fn new(matrix: IntMatrix, scale: TorusPoint) -> Result<Self> {
        require_unimodular(&matrix)?;
        if scale.rank() != matrix.rows() {
            return Err(Error::LengthMismatch {
                expected: matrix.rows(),
                found: scale.rank(),
            });
        }
        Ok(MonomialAut { matrix, scale })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn scale(&self) -> &TorusPoint {
        &self.scale
    }
}

fn require_unimodular(a: &IntMatrix) -> Result<()> {
    a.require_square()?;
    if !a.det()?.abs().is_one() {
        return Err(Error::invalid(format!("{a} is not in GL_n(Z)")));
    }
    Ok(())
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|q| q * q <= p)
            .all(|q| !p.is_multiple_of(q))
}

/// `|GL_n(F_p)| = Π_{i<n} (pⁿ − pⁱ)`.
fn gl_order(n: usize, p: u64) -> BigInt {
    let p = BigInt::from(p);
    let pn = num_traits::pow(p.clone(), n);
    (0..n)
        .map(|i| &pn - num_traits::pow(p.clone(), i))
        .product()
}

/// Multiplicative order of `A` modulo the odd prime `p`.
pub fn order_mod_p(a: &IntMatrix, p: u64) -> Result<u64> {
    a.require_square()?;
    if p < 3 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    let modulus = BigInt::from(p);
    if a.det()?.mod_floor(&modulus).is_zero() {
        return Err(Error::invalid(format!("{p} divides det(A)")));
    }
    let limit = gl_order(a.rows(), p)
        .to_u64()
        .ok_or_else(|| Error::invalid("matrix too large for an order search"))?;
    let base = a.reduce_mod(&modulus);
    let mut power = base.clone();
    for k in 1..=limit {
        if power.is_identity() {
            return Ok(k);
        }
        power = power.mul_mod(&base, &modulus)?;
    }
    Err(Error::VerifyMismatch(format!(
        "no identity power of {a} modulo {p} within |GL_n(F_p)|"
    )))
}

/// The order of `A ∈ GL_n(Z)`, or `None` if it is infinite.
pub fn finite_order(a: &IntMatrix) -> Result<Option<u64>> {
    require_unimodular(a)?;
    let m = order_mod_p(a, WITNESS_PRIME)?;
    Ok(a.pow(m)?.is_identity().then_some(m))
}

/// Whether the monomial map lies in an algebraic subgroup, i.e. its matrix
/// part has finite order.
pub fn is_algebraic_monomial(g: &MonomialAut) -> bool {
    finite_order(&g.matrix).is_ok_and(|o| o.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn order_mod_p_examples() {
        for p in [3, 5, 7] {
            assert_eq!(order_mod_p(&IntMatrix::identity(3), p).unwrap(), 1);
        }
        assert_eq!(order_mod_p(&mat(&[&[0, -1], &[1, 0]]), 3).unwrap(), 4);
        assert_eq!(order_mod_p(&mat(&[&[1, 1], &[0, 1]]), 3).unwrap(), 3);
        assert_eq!(order_mod_p(&mat(&[&[1, 1], &[0, 1]]), 7).unwrap(), 7);
    }

    #[test]
    fn order_mod_p_errors() {
        assert!(order_mod_p(&mat(&[&[3, 0], &[0, 1]]), 3).is_err());
        assert!(order_mod_p(&IntMatrix::identity(2), 2).is_err());
        assert!(order_mod_p(&IntMatrix::identity(2), 9).is_err());
        assert!(order_mod_p(&mat(&[&[1, 2, 3]]), 3).is_err());
    }

    #[test]
    fn finite_order_examples() {
        assert_eq!(finite_order(&mat(&[&[0, -1], &[1, -1]])).unwrap(), Some(3));
        assert_eq!(finite_order(&mat(&[&[-1, 0], &[0, -1]])).unwrap(), Some(2));
        assert_eq!(finite_order(&mat(&[&[1, 1], &[0, 1]])).unwrap(), None);
        assert_eq!(finite_order(&mat(&[&[1, 1], &[-1, 0]])).unwrap(), Some(6));
        assert!(finite_order(&mat(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn finite_order_in_rank_three() {
        let perm = mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(finite_order(&perm).unwrap(), Some(3));
        let shear = mat(&[&[1, 0, 2], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(finite_order(&shear).unwrap(), None);
    }

    #[test]
    fn monomial_examples() {
        let t = TorusPoint::from_integers([5, -2]).unwrap();
        let id = MonomialAut::new(IntMatrix::identity(2), t).unwrap();
        assert!(is_algebraic_monomial(&id));
        let one = TorusPoint::identity(2);
        let rot = MonomialAut::new(mat(&[&[0, -1], &[1, 0]]), one.clone()).unwrap();
        assert!(is_algebraic_monomial(&rot));
        let shear = MonomialAut::new(mat(&[&[1, 1], &[0, 1]]), one.clone()).unwrap();
        assert!(!is_algebraic_monomial(&shear));
        assert!(MonomialAut::new(mat(&[&[2, 1], &[1, 2]]), one).is_err());
        assert!(MonomialAut::new(IntMatrix::identity(3), TorusPoint::identity(2)).is_err());
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 3), BigInt::from(48));
        assert_eq!(gl_order(1, 5), BigInt::from(4));
    }
}
