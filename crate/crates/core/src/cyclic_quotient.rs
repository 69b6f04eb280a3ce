//! The toric surfaces `X_{d,e} = A² / G_{d,e}`.
//!
//! `G_{d,e}` is cyclic of order `d`, generated by `(x, y) ↦ (ξᵉx, ξy)` for a
//! primitive `d`-th root of unity `ξ`. It is never represented with actual
//! roots of unity: `x^{m₁}y^{m₂}` is invariant iff `e·m₁ + m₂ ≡ 0 (mod d)`.
//! `(d, e) = (1, 0)` stands for `A²` itself.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cone::{make_cone, Cone};
use crate::error::{Error, Result};
use crate::lattice::{IntMatrix, LatticeVector};

/// Validated parameters of `X_{d,e}` with the derived pair `(e′, a)`:
/// `0 ≤ e′ < d`, `e·e′ = 1 + a·d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceDE {
    d: BigInt,
    e: BigInt,
    e_prime: BigInt,
    a: BigInt,
}

impl SurfaceDE {
    pub fn new(d: impl Into<BigInt>, e: impl Into<BigInt>) -> Result<Self> {
        let (d, e) = (d.into(), e.into());
        let (e_prime, a) = eprime_a(&d, &e)?;
        Ok(SurfaceDE { d, e, e_prime, a })
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn e_prime(&self) -> &BigInt {
        &self.e_prime
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// `σ_{d,e}`, with rays `ρ₁ = (0, 1)` and `ρ₂ = (d, −e)` in that order.
    pub fn cone(&self) -> Cone {
        make_cone(
            2,
            &[
                LatticeVector::n([0, 1]),
                LatticeVector::n([self.d.clone(), -&self.e]),
            ],
        )
        .expect("σ_{d,e} is strongly convex for valid parameters")
    }

    /// `(l, −1)`: the root with distinguished ray `ρ₁` indexed by `l`.
    pub fn first_family_root(&self, l: u64) -> LatticeVector {
        LatticeVector::m([BigInt::from(l), -BigInt::one()])
    }

    /// `(a + k·e, e′ + k·d)`: the root with distinguished ray `ρ₂` indexed by `k`.
    pub fn second_family_root(&self, k: u64) -> LatticeVector {
        let k = BigInt::from(k);
        LatticeVector::m([&self.a + &k * &self.e, &self.e_prime + &k * &self.d])
    }
}

impl fmt::Display for SurfaceDE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X({},{})", self.d, self.e)
    }
}

fn invalid_surface(d: &BigInt, e: &BigInt, reason: &'static str) -> Error {
    Error::InvalidSurface {
        d: d.to_string(),
        e: e.to_string(),
        reason,
    }
}

/// The unique `(e′, a)` with `0 ≤ e′ < d` and `e·e′ = 1 + a·d`.
pub fn eprime_a(d: &BigInt, e: &BigInt) -> Result<(BigInt, BigInt)> {
    if !d.is_positive() {
        return Err(invalid_surface(d, e, "d must be positive"));
    }
    if e.is_negative() || e >= d {
        return Err(invalid_surface(d, e, "e must satisfy 0 <= e < d"));
    }
    let g = e.extended_gcd(d);
    if !g.gcd.is_one() {
        return Err(invalid_surface(d, e, "gcd(e, d) must be 1"));
    }
    let e_prime = g.x.mod_floor(d);
    let a = (e * &e_prime - 1) / d;
    Ok((e_prime, a))
}

/// Whether `x^{m₁}y^{m₂}` is `G_{d,e}`-invariant.
pub fn invariant_member(d: &BigInt, e: &BigInt, m1: &BigInt, m2: &BigInt) -> Result<bool> {
    eprime_a(d, e)?;
    if m1.is_negative() || m2.is_negative() {
        return Err(Error::invalid("monomial exponents must be non-negative"));
    }
    Ok((e * m1 + m2).mod_floor(d).is_zero())
}

/// Witness that the invariant monomials of `G_{d,e}` form the monoid `σ∨_{d,e} ∩ M`.
///
/// The lattice map is `φ(m) = map · m / d`, sending the invariant sublattice
/// `{e·m₁ + m₂ ≡ 0 (mod d)}` isomorphically onto `M` and the positive quadrant
/// onto `σ∨_{d,e}`. `basis` holds, as columns, the invariant exponents mapped to
/// the standard basis of `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    pub map: IntMatrix,
    pub basis: IntMatrix,
    /// Number of invariant exponents in `[0, box]²` that were checked.
    pub checked: usize,
}

impl QuotientWitness {
    /// Image of an exponent pair, or `None` if it is not in the invariant lattice.
    pub fn image(&self, d: &BigInt, m1: &BigInt, m2: &BigInt) -> Option<LatticeVector> {
        let v = self
            .map
            .apply(&LatticeVector::m([m1.clone(), m2.clone()]))
            .ok()?;
        let mut out = Vec::with_capacity(2);
        for c in v.into_coords() {
            let (q, r) = c.div_mod_floor(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(LatticeVector::m(out))
    }
}

/// Builds and verifies the identification of the invariant monomials of
/// `G_{d,e}` in `[0, box]²` with the lattice points of `σ∨_{d,e}`.
///
/// Checks that an exponent pair maps into `M` exactly when it is invariant,
/// that invariant exponents land in `σ∨`, that the map is injective, and that
/// every lattice point of `σ∨` whose preimage lies in `[0, box]²` is hit.
pub fn monoid_matches_cone(d: &BigInt, e: &BigInt, bound: u64) -> Result<QuotientWitness> {
    let surface = SurfaceDE::new(d.clone(), e.clone())?;
    let cone = surface.cone();
    // φ(m₁, m₂) = ((e·m₁ + m₂)/d, m₁)
    let map = IntMatrix::from_rows(vec![
        vec![e.clone(), BigInt::one()],
        vec![d.clone(), BigInt::zero()],
    ])?;
    let basis = IntMatrix::from_rows(vec![
        vec![BigInt::zero(), BigInt::one()],
        vec![d.clone(), -e],
    ])?;
    let witness = QuotientWitness {
        map,
        basis,
        checked: 0,
    };
    let mismatch = |msg: String| Err(Error::VerifyMismatch(msg));

    if witness.map.det()?.abs() != *d {
        return mismatch("lattice map determinant is not ±d".into());
    }
    for j in 0..2 {
        let col = LatticeVector::m([
            witness.basis.get(0, j).clone(),
            witness.basis.get(1, j).clone(),
        ]);
        let image = witness.image(d, &col.coords()[0], &col.coords()[1]);
        let mut unit = vec![BigInt::zero(); 2];
        unit[j] = BigInt::one();
        if image != Some(LatticeVector::m(unit)) {
            return mismatch(format!("basis column {j} does not map to a unit vector"));
        }
    }

    let side = bound
        .to_i64()
        .ok_or_else(|| Error::invalid("box too large"))?;
    let mut images = std::collections::BTreeSet::new();
    let mut checked = 0usize;
    for m1 in 0..=side {
        for m2 in 0..=side {
            let (b1, b2) = (BigInt::from(m1), BigInt::from(m2));
            let invariant = invariant_member(d, e, &b1, &b2)?;
            match (invariant, witness.image(d, &b1, &b2)) {
                (true, Some(p)) => {
                    if !cone.dual_contains(&p)? {
                        return mismatch(format!("x^{m1} y^{m2} maps outside the dual cone"));
                    }
                    if !images.insert(p) {
                        return mismatch(format!("x^{m1} y^{m2} collides with another monomial"));
                    }
                    checked += 1;
                }
                (false, None) => {}
                (true, None) => {
                    return mismatch(format!("invariant x^{m1} y^{m2} has no lattice image"))
                }
                (false, Some(_)) => {
                    return mismatch(format!("non-invariant x^{m1} y^{m2} has a lattice image"))
                }
            }
        }
    }

    // Surjectivity: φ⁻¹(p) = (p₂, d·p₁ − e·p₂); every coordinate of φ on the box is at most `bound`.
    for p1 in -side..=side {
        for p2 in -side..=side {
            let p = LatticeVector::m([p1, p2]);
            if !cone.dual_contains(&p)? {
                continue;
            }
            let pre1 = BigInt::from(p2);
            let pre2 = d * p1 - e * p2;
            let in_box = |v: &BigInt| !v.is_negative() && *v <= BigInt::from(side);
            if in_box(&pre1) && in_box(&pre2) && !images.contains(&p) {
                return mismatch(format!("dual-cone point {p} is not hit"));
            }
        }
    }

    Ok(QuotientWitness { checked, ..witness })
}

/// `X_{d₁,e₁} ≅ X_{d₂,e₂}` iff `d₁ = d₂` and `e₁ = e₂` or `e₁·e₂ ≡ 1 (mod d)`.
pub fn iso_test(s1: &SurfaceDE, s2: &SurfaceDE) -> bool {
    s1.d == s2.d && (s1.e == s2.e || (&s1.e * &s2.e).mod_floor(&s1.d).is_one())
}

/// Representative `(d, min(e, e′))` of the isomorphism class.
pub fn canonical_form(s: &SurfaceDE) -> SurfaceDE {
    if s.e_prime < s.e {
        SurfaceDE {
            d: s.d.clone(),
            e: s.e_prime.clone(),
            e_prime: s.e.clone(),
            a: s.a.clone(),
        }
    } else {
        s.clone()
    }
}
