//! Demazure roots of a cone.
//!
//! `α ∈ M` is a root of `σ` with distinguished ray `ρ` when `⟨α, ρ⟩ = −1` and
//! `⟨α, ρ'⟩ ≥ 0` for every other ray `ρ'`. Roots are the degrees of the
//! homogeneous locally nilpotent derivations of `K[σ∨ ∩ M]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cone::{pair_i64, Cone};
use crate::cyclic_quotient::SurfaceDE;
use crate::error::{Error, Result};
use crate::exec::{BoxPoints, Strategy};
use crate::lattice::{LatticeTag, LatticeVector};
use crate::serde_int::{self, Int};

/// A root together with the index of its distinguished ray in the cone's ray list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub ray: usize,
    pub alpha: LatticeVector,
}

impl Root {
    pub fn new(alpha: LatticeVector, ray: usize) -> Self {
        Root { ray, alpha }
    }
}

#[derive(Serialize, Deserialize)]
struct RootJson {
    alpha: Vec<Int>,
    ray: usize,
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RootJson {
            alpha: serde_int::wrap(self.alpha.coords()),
            ray: self.ray,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Root {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RootJson::deserialize(d)?;
        Ok(Root::new(
            LatticeVector::new(LatticeTag::M, serde_int::unwrap(raw.alpha)),
            raw.ray,
        ))
    }
}

/// The distinguished ray of `alpha` if it is a root of `cone`.
pub fn is_root(cone: &Cone, alpha: &LatticeVector) -> Result<Option<usize>> {
    alpha.check_tag(LatticeTag::M)?;
    alpha.check_rank(cone.rank())?;
    Ok(classify(cone.rays().iter().map(|r| alpha.dot(r))))
}

fn classify(pairings: impl Iterator<Item = BigInt>) -> Option<usize> {
    let minus_one = -BigInt::one();
    let mut distinguished = None;
    for (i, p) in pairings.enumerate() {
        if p == minus_one && distinguished.is_none() {
            distinguished = Some(i);
        } else if p.is_negative() {
            return None;
        }
    }
    distinguished
}

/// Every root with all coordinates in `[-bound, bound]`, ordered by
/// distinguished ray and then lexicographically.
pub fn enumerate_roots(cone: &Cone, bound: u64) -> Result<Vec<Root>> {
    enumerate_roots_with(cone, bound, Strategy::default())
}

pub fn enumerate_roots_with(cone: &Cone, bound: u64, strategy: Strategy) -> Result<Vec<Root>> {
    let grid = BoxPoints::new(cone.rank(), bound)
        .ok_or_else(|| Error::invalid(format!("box of radius {bound} is too large")))?;
    let mut roots = strategy.filter_map_range(grid.len(), |i| {
        let p = grid.point(i);
        classify(cone.rays().iter().map(|r| pair_i64(&p, r)))
            .map(|ray| Root::new(LatticeVector::m(p), ray))
    });
    roots.sort();
    Ok(roots)
}

/// The two root families of `X_{d,e}` in the basis where `σ_{d,e}` has rays
/// `ρ₁ = (0, 1)` and `ρ₂ = (d, −e)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootFamilies {
    /// `(l, −1)` for `0 ≤ l ≤ l_max`, distinguished ray `ρ₁`.
    pub first: Vec<LatticeVector>,
    /// `(a + k·e, e′ + k·d)` for `0 ≤ k ≤ k_max`, distinguished ray `ρ₂`.
    pub second: Vec<LatticeVector>,
}

/// Closed-form root families of `X_{d,e}`.
pub fn roots_of_xde(d: &BigInt, e: &BigInt, l_max: u64, k_max: u64) -> Result<RootFamilies> {
    let s = SurfaceDE::new(d.clone(), e.clone())?;
    Ok(RootFamilies {
        first: (0..=l_max).map(|l| s.first_family_root(l)).collect(),
        second: (0..=k_max).map(|k| s.second_family_root(k)).collect(),
    })
}

/// Partitions roots by distinguished ray.
pub fn group_by_ray(roots: &[Root]) -> BTreeMap<usize, Vec<Root>> {
    let mut groups: BTreeMap<usize, Vec<Root>> = BTreeMap::new();
    for r in roots {
        groups.entry(r.ray).or_default().push(r.clone());
    }
    groups
}
