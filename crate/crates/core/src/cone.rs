//! Strongly convex rational polyhedral cones in `N_R`.
//!
//! A cone is stored by its primitive ray generators. Its dual `σ∨` is kept
//! implicit as the inequality list `⟨·, ρ⟩ ≥ 0`; explicit dual generators and
//! Hilbert bases are only computed for full-dimensional cones in rank 2.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::{BoxPoints, Strategy};
use crate::lattice::{pairing, primitive, LatticeTag, LatticeVector};
use crate::linalg;
use crate::serde_int::{self, Int};

/// A strongly convex rational polyhedral cone, given by its rays.
///
/// Ray order is significant: roots refer to their distinguished ray by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    rank: usize,
    rays: Vec<LatticeVector>,
}

impl Cone {
    /// The zero cone `{0}`, whose toric variety is the torus itself.
    pub fn zero(rank: usize) -> Self {
        Cone {
            rank,
            rays: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, index: usize) -> Option<&LatticeVector> {
        self.rays.get(index)
    }

    /// Same set of rays, ignoring order.
    pub fn same_rays(&self, other: &Cone) -> bool {
        if self.rank != other.rank || self.rays.len() != other.rays.len() {
            return false;
        }
        let mut a = self.rays.clone();
        let mut b = other.rays.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// Whether `m` lies in `σ∨`, i.e. `⟨m, ρ⟩ ≥ 0` for every ray.
    pub fn dual_contains(&self, m: &LatticeVector) -> Result<bool> {
        m.check_tag(LatticeTag::M)?;
        m.check_rank(self.rank)?;
        Ok(self.rays.iter().all(|r| !m.dot(r).is_negative()))
    }

    /// Same as [`Cone::dual_contains`] for raw coordinates of the right rank.
    pub(crate) fn dual_contains_i64(&self, m: &[i64]) -> bool {
        self.rays.iter().all(|r| !pair_i64(m, r).is_negative())
    }
}

pub(crate) fn pair_i64(m: &[i64], ray: &LatticeVector) -> BigInt {
    m.iter().zip(ray.coords()).map(|(&a, b)| b * a).sum()
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    rank: usize,
    rays: Vec<Vec<Int>>,
}

impl Serialize for Cone {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConeJson {
            rank: self.rank,
            rays: self
                .rays
                .iter()
                .map(|r| serde_int::wrap(r.coords()))
                .collect(),
        }
        .serialize(s)
    }
}

/// Deserialization runs [`make_cone`], so JSON input is normalized and validated.
impl<'de> Deserialize<'de> for Cone {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ConeJson::deserialize(d)?;
        let gens = raw
            .rays
            .into_iter()
            .map(|r| LatticeVector::new(LatticeTag::N, serde_int::unwrap(r)))
            .collect::<Vec<_>>();
        make_cone(raw.rank, &gens).map_err(serde::de::Error::custom)
    }
}

/// Builds the cone spanned by `generators`.
///
/// Generators are made primitive; zero generators, repeated rays and
/// generators that are not extremal are dropped. The surviving rays keep their
/// input order.
pub fn make_cone(rank: usize, generators: &[LatticeVector]) -> Result<Cone> {
    if rank == 0 {
        return Err(Error::invalid("cone rank must be at least 1"));
    }
    let mut rays: Vec<LatticeVector> = Vec::with_capacity(generators.len());
    for g in generators {
        g.check_tag(LatticeTag::N)?;
        g.check_rank(rank)?;
        if g.is_zero() {
            continue;
        }
        let p = primitive(g)?;
        if !rays.contains(&p) {
            rays.push(p);
        }
    }

    // A cone contains a line iff some generator's negative lies in it.
    let coords: Vec<&[BigInt]> = rays.iter().map(LatticeVector::coords).collect();
    for r in &rays {
        let neg = -r;
        if linalg::in_cone(&coords, neg.coords()) {
            return Err(Error::NotStronglyConvex(r.clone()));
        }
    }

    let extremal: Vec<bool> = (0..rays.len())
        .map(|i| {
            let others: Vec<&[BigInt]> = coords
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, c)| *c)
                .collect();
            !linalg::in_cone(&others, coords[i])
        })
        .collect();
    let rays = rays
        .into_iter()
        .zip(extremal)
        .filter_map(|(r, keep)| keep.then_some(r))
        .collect();
    Ok(Cone { rank, rays })
}

/// Membership of `m` in the dual cone `σ∨`.
pub fn dual_contains(cone: &Cone, m: &LatticeVector) -> Result<bool> {
    cone.dual_contains(m)
}

fn require_full_2d(cone: &Cone) -> Result<()> {
    if cone.rank != 2 || cone.rays.len() != 2 {
        return Err(Error::invalid(format!(
            "expected a rank-2 cone with two rays, got rank {} with {} rays",
            cone.rank,
            cone.rays.len()
        )));
    }
    Ok(())
}

/// The two primitive generators of `σ∨` for a full-dimensional cone in rank 2.
///
/// The `i`-th returned vector is orthogonal to the `i`-th ray and pairs
/// positively with the other one.
pub fn dual_rays_2d(cone: &Cone) -> Result<[LatticeVector; 2]> {
    require_full_2d(cone)?;
    let dual_to = |i: usize| -> Result<LatticeVector> {
        let r = cone.rays[i].coords();
        let u = LatticeVector::new(LatticeTag::M, vec![-&r[1], r[0].clone()]);
        let u = primitive(&u)?;
        if pairing(&u, &cone.rays[1 - i])?.is_negative() {
            Ok(-&u)
        } else {
            Ok(u)
        }
    };
    Ok([dual_to(0)?, dual_to(1)?])
}

/// The Hilbert basis of the monoid `σ∨ ∩ M` for a full-dimensional cone in
/// rank 2, sorted lexicographically.
///
/// Candidates come from the box of radius `max|dual ray coordinate| + 1`, which
/// contains the triangle spanned by `0` and the dual rays; every irreducible
/// element lies in that triangle. Reducibility is decided against the box of
/// twice that radius, which holds every summand of a candidate that is not
/// already split off by a dual ray.
pub fn hilbert_basis_2d(cone: &Cone) -> Result<Vec<LatticeVector>> {
    hilbert_basis_2d_with(cone, Strategy::default())
}

pub fn hilbert_basis_2d_with(cone: &Cone, strategy: Strategy) -> Result<Vec<LatticeVector>> {
    let duals = dual_rays_2d(cone)?;
    let too_large = || Error::invalid("cone too large for a Hilbert basis box scan");
    let radius: BigInt = duals
        .iter()
        .map(LatticeVector::max_abs)
        .max()
        .expect("two dual rays")
        + 1;
    let radius = radius.to_u64().ok_or_else(too_large)?;
    let inner = BoxPoints::new(2, radius).ok_or_else(too_large)?;
    let outer =
        BoxPoints::new(2, radius.checked_mul(2).ok_or_else(too_large)?).ok_or_else(too_large)?;

    let summands: Vec<Vec<i64>> = (0..outer.len())
        .map(|i| outer.point(i))
        .filter(|p| p.iter().any(|&c| c != 0) && cone.dual_contains_i64(p))
        .collect();

    let basis = strategy.filter_map_range(inner.len(), |i| {
        let x = inner.point(i);
        if x.iter().all(|&c| c == 0) || !cone.dual_contains_i64(&x) {
            return None;
        }
        let reducible = summands.iter().any(|y| {
            let z: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            z.iter().any(|&c| c != 0) && cone.dual_contains_i64(&z)
        });
        (!reducible).then(|| LatticeVector::m(x))
    });
    Ok(basis)
}
