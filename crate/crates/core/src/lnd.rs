//! The semigroup algebra `K[σ∨ ∩ M]` and its homogeneous locally nilpotent
//! derivations.
//!
//! For a root `α` with distinguished ray `ρ` the derivation is
//! `δ_α(χ^m) = ⟨m, ρ⟩ · χ^{m+α}`. It is homogeneous of degree `α` and locally
//! nilpotent, and `exp(sδ_α)` is the comorphism of the corresponding additive
//! group action. All coefficients are exact rationals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exec::{BoxPoints, Strategy};
use crate::lattice::{LatticeTag, LatticeVector};
use crate::roots::{is_root, Root};
use crate::serde_int;

/// A finite rational combination of characters `χ^m` with `m ∈ σ∨ ∩ M`.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    cone: Arc<Cone>,
    terms: BTreeMap<LatticeVector, BigRational>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_cone(&self.cone, &other.cone) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

fn same_cone(a: &Arc<Cone>, b: &Arc<Cone>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LaurentPoly {
    pub fn zero(cone: Arc<Cone>) -> Self {
        LaurentPoly {
            cone,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cone: Arc<Cone>) -> Self {
        let rank = cone.rank();
        Self::constant(cone, rank, BigRational::one())
    }

    fn constant(cone: Arc<Cone>, rank: usize, c: BigRational) -> Self {
        let mut p = Self::zero(cone);
        if !c.is_zero() {
            p.terms.insert(LatticeVector::zero(LatticeTag::M, rank), c);
        }
        p
    }

    /// `c · χ^m`.
    pub fn monomial(cone: Arc<Cone>, m: LatticeVector, c: BigRational) -> Result<Self> {
        Self::from_terms(cone, [(m, c)])
    }

    /// Sums the given terms; repeated exponents are combined.
    pub fn from_terms(
        cone: Arc<Cone>,
        terms: impl IntoIterator<Item = (LatticeVector, BigRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(cone);
        for (m, c) in terms {
            if !p.cone.dual_contains(&m)? {
                return Err(Error::OutsideDualCone(m));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LatticeVector, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &LatticeVector) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Whether every term has degree `m`.
    pub fn is_homogeneous_of_degree(&self, m: &LatticeVector) -> bool {
        self.terms.keys().all(|k| k == m)
    }

    fn add_term(&mut self, m: LatticeVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_cone(&self, other: &LaurentPoly) -> Result<()> {
        if same_cone(&self.cone, &other.cone) {
            Ok(())
        } else {
            Err(Error::ConeMismatch)
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_cone(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, k: &BigRational) -> LaurentPoly {
        if k.is_zero() {
            return Self::zero(self.cone.clone());
        }
        LaurentPoly {
            cone: self.cone.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Convolution product, `χ^m · χ^{m'} = χ^{m+m'}`.
    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_cone(other)?;
        let mut out = Self::zero(self.cone.clone());
        for (m, c) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m + m2, c * c2);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}·χ^{m}")?;
        }
        Ok(())
    }
}

/// JSON form: `{"cone": ..., "terms": [{"c": "3/2", "m": [1, 2]}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub cone: Cone,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    #[serde(with = "rational_str")]
    pub c: BigRational,
    #[serde(with = "serde_int::vec")]
    pub m: Vec<BigInt>,
}

impl From<&LaurentPoly> for PolyJson {
    fn from(p: &LaurentPoly) -> Self {
        PolyJson {
            cone: (*p.cone).clone(),
            terms: p
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    c: c.clone(),
                    m: m.coords().to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<PolyJson> for LaurentPoly {
    type Error = Error;

    fn try_from(p: PolyJson) -> Result<Self> {
        LaurentPoly::from_terms(
            Arc::new(p.cone),
            p.terms
                .into_iter()
                .map(|t| (LatticeVector::new(LatticeTag::M, t.m), t.c)),
        )
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LaurentPoly::try_from(PolyJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Rationals as `"p/q"` strings in lowest terms with `q > 0`; integers print as `"p"`.
pub mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse(&raw).map_err(serde::de::Error::custom)
    }

    /// Parses `"p"` or `"p/q"` with `q ≠ 0`.
    pub fn parse(raw: &str) -> Result<BigRational, String> {
        let bad = || format!("invalid rational {raw:?}");
        let (num, den) = match raw.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (raw.trim(), "1"),
        };
        let num = num.parse().map_err(|_| bad())?;
        let den: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
        if num_traits::Zero::is_zero(&den) {
            return Err(bad());
        }
        Ok(BigRational::new(num, den))
    }
}

/// A point of the torus `T` with nonzero rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Result<Self> {
        if coords.iter().any(Zero::is_zero) {
            return Err(Error::invalid("torus point coordinates must be nonzero"));
        }
        Ok(TorusPoint { coords })
    }

    pub fn from_integers<T: Into<BigInt>>(coords: impl IntoIterator<Item = T>) -> Result<Self> {
        Self::new(
            coords
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint {
            coords: vec![BigRational::one(); rank],
        }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Coordinate-wise reciprocal.
    pub fn inverse(&self) -> TorusPoint {
        TorusPoint {
            coords: self.coords.iter().map(|c| c.recip()).collect(),
        }
    }

    /// `χ^m(t) = Π tᵢ^{mᵢ}`.
    pub fn character(&self, m: &LatticeVector) -> Result<BigRational> {
        m.check_rank(self.rank())?;
        let mut acc = BigRational::one();
        for (t, e) in self.coords.iter().zip(m.coords()) {
            let k = e
                .abs()
                .to_u32()
                .ok_or_else(|| Error::invalid("character exponent too large"))?;
            let p = num_traits::pow::Pow::pow(t, k);
            if e.is_negative() {
                acc /= p;
            } else {
                acc *= p;
            }
        }
        Ok(acc)
    }
}

/// A root of a fixed cone, checked once and reusable as a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    cone: Arc<Cone>,
    root: Root,
    ray: LatticeVector,
}

impl Derivation {
    pub fn new(cone: Arc<Cone>, root: &Root) -> Result<Self> {
        match is_root(&cone, &root.alpha)? {
            Some(r) if r == root.ray => {}
            _ => return Err(Error::NotARoot(root.alpha.clone())),
        }
        let ray = cone.rays()[root.ray].clone();
        Ok(Derivation {
            cone,
            root: root.clone(),
            ray,
        })
    }

    pub fn root(&self) -> &Root {
        &self.root
    }

    pub fn cone(&self) -> &Arc<Cone> {
        &self.cone
    }

    /// `δ(χ^m) = ⟨m, ρ⟩ · χ^{m+α}`, extended linearly.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if !same_cone(&self.cone, &f.cone) {
            return Err(Error::ConeMismatch);
        }
        let mut out = LaurentPoly::zero(f.cone.clone());
        for (m, c) in &f.terms {
            let weight = m.dot(&self.ray);
            if weight.is_zero() {
                continue;
            }
            out.add_term(m + &self.root.alpha, c * BigRational::from_integer(weight));
        }
        Ok(out)
    }

    /// Smallest `ℓ` with `δ^ℓ(χ^m) = 0`, found by iterating the derivation.
    pub fn nilpotency_index(&self, m: &LatticeVector) -> Result<u64> {
        let mut f = LaurentPoly::monomial(self.cone.clone(), m.clone(), BigRational::one())?;
        let mut steps = 0;
        while !f.is_zero() {
            f = self.apply(&f)?;
            steps += 1;
        }
        Ok(steps)
    }

    /// `exp(sδ)(f) = Σᵢ sⁱ δⁱ(f) / i!`; the sum is finite.
    pub fn exp(&self, s: &BigRational, f: &LaurentPoly) -> Result<LaurentPoly> {
        if !same_cone(&self.cone, &f.cone) {
            return Err(Error::ConeMismatch);
        }
        let mut total = f.clone();
        if s.is_zero() {
            return Ok(total);
        }
        let mut term = f.clone();
        let mut i = BigInt::zero();
        loop {
            term = self.apply(&term)?;
            if term.is_zero() {
                return Ok(total);
            }
            i += 1;
            term = term.scale(&(s / BigRational::from_integer(i.clone())));
            total = total.add(&term)?;
        }
    }
}

/// `δ_α(f)` on `f`'s cone.
pub fn delta_apply(root: &Root, f: &LaurentPoly) -> Result<LaurentPoly> {
    Derivation::new(f.cone.clone(), root)?.apply(f)
}

/// Smallest `ℓ` with `δ_α^ℓ(χ^m) = 0`.
pub fn nilpotency_index(cone: &Arc<Cone>, root: &Root, m: &LatticeVector) -> Result<u64> {
    Derivation::new(cone.clone(), root)?.nilpotency_index(m)
}

/// `exp(s·δ_α)(f)`.
pub fn exp_lnd(root: &Root, s: &BigRational, f: &LaurentPoly) -> Result<LaurentPoly> {
    Derivation::new(f.cone.clone(), root)?.exp(s, f)
}

/// Product in `K[σ∨ ∩ M]`.
pub fn poly_mul(f: &LaurentPoly, g: &LaurentPoly) -> Result<LaurentPoly> {
    f.mul(g)
}

/// The torus action on functions: each `χ^m` is scaled by `χ^m(t)`.
pub fn torus_act(t: &TorusPoint, f: &LaurentPoly) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(f.cone.clone());
    for (m, c) in &f.terms {
        out.add_term(m.clone(), c * t.character(m)?);
    }
    Ok(out)
}

/// Whether `δ_{r1}` and `δ_{r2}` commute, checked exactly on every monomial of
/// `σ∨ ∩ M` in the box of radius `2·max|root coordinate| + 2`.
pub fn commutes(cone: &Arc<Cone>, r1: &Root, r2: &Root) -> Result<bool> {
    commutes_with(cone, r1, r2, Strategy::default())
}

pub fn commutes_with(cone: &Arc<Cone>, r1: &Root, r2: &Root, strategy: Strategy) -> Result<bool> {
    let d1 = Derivation::new(cone.clone(), r1)?;
    let d2 = Derivation::new(cone.clone(), r2)?;
    let reach = r1.alpha.max_abs().max(r2.alpha.max_abs());
    let radius = (reach * 2u32 + 2u32)
        .to_u64()
        .ok_or_else(|| Error::invalid("roots too large for a commutator box"))?;
    let grid = BoxPoints::new(cone.rank(), radius)
        .ok_or_else(|| Error::invalid("roots too large for a commutator box"))?;
    let failed = std::sync::atomic::AtomicBool::new(false);
    let ok = strategy.all_range(grid.len(), |i| {
        let p = grid.point(i);
        if !cone.dual_contains_i64(&p) {
            return true;
        }
        let f = LaurentPoly::monomial(cone.clone(), LatticeVector::m(p), BigRational::one());
        let check = || -> Result<bool> {
            let f = f?;
            let a = d1.apply(&d2.apply(&f)?)?;
            let b = d2.apply(&d1.apply(&f)?)?;
            Ok(a == b)
        };
        check().unwrap_or_else(|_| {
            failed.store(true, std::sync::atomic::Ordering::Relaxed);
            false
        })
    });
    if failed.into_inner() {
        return Err(Error::VerifyMismatch(
            "commutator evaluation left the dual cone".into(),
        ));
    }
    Ok(ok)
}
