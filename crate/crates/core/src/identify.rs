//! Recovering a toric variety from its root data.
//!
//! Two routes are provided. For surfaces, the orders of the kernel
//! intersections `K_{l,k} = ker χ^{α₁(l)} ∩ ker χ^{α₂(k)}` of weight characters
//! with different distinguished rays form a grid of arithmetic progressions
//! from which `(d, e)` is read off up to isomorphism. In any rank, the full
//! set of roots determines the cone: each root's distinguished ray is the
//! normal of the hyperplane along which the other roots of that ray translate.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cone::{make_cone, Cone};
use crate::cyclic_quotient::{canonical_form, SurfaceDE};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::lattice::{det2, primitive, LatticeTag, LatticeVector};
use crate::linalg;
use crate::roots::enumerate_roots_with;
use crate::serde_int;

/// `|K_{l,k}|` for `0 ≤ l ≤ l_max`, `0 ≤ k ≤ k_max`; `entries[l][k]`.
///
/// Deserialization rejects grids whose shape disagrees with `l_max`, `k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFingerprint")]
pub struct Fingerprint {
    #[serde(with = "serde_int::grid")]
    pub entries: Vec<Vec<BigInt>>,
    pub k_max: usize,
    pub l_max: usize,
}

#[derive(Deserialize)]
struct RawFingerprint {
    #[serde(with = "serde_int::grid")]
    entries: Vec<Vec<BigInt>>,
    k_max: usize,
    l_max: usize,
}

impl TryFrom<RawFingerprint> for Fingerprint {
    type Error = Error;

    fn try_from(raw: RawFingerprint) -> Result<Self> {
        let fp = Fingerprint {
            entries: raw.entries,
            k_max: raw.k_max,
            l_max: raw.l_max,
        };
        fp.check_shape()?;
        Ok(fp)
    }
}

impl Fingerprint {
    pub fn entry(&self, l: usize, k: usize) -> &BigInt {
        &self.entries[l][k]
    }

    pub fn transposed(&self) -> Fingerprint {
        Fingerprint {
            l_max: self.k_max,
            k_max: self.l_max,
            entries: (0..=self.k_max)
                .map(|k| {
                    (0..=self.l_max)
                        .map(|l| self.entries[l][k].clone())
                        .collect()
                })
                .collect(),
        }
    }

    fn check_shape(&self) -> Result<()> {
        let ok = self.entries.len() == self.l_max + 1
            && self.entries.iter().all(|row| row.len() == self.k_max + 1);
        if ok {
            Ok(())
        } else {
            Err(Error::InconsistentFingerprint(format!(
                "grid is not ({} + 1) x ({} + 1)",
                self.l_max, self.k_max
            )))
        }
    }
}

/// Order of `ker χ^{α₁} ∩ ker χ^{α₂}` in a rank-2 torus: `|det(α₁, α₂)|`.
/// Zero means the kernel is positive-dimensional.
pub fn kernel_order(alpha1: &LatticeVector, alpha2: &LatticeVector) -> Result<BigInt> {
    Ok(det2(alpha1, alpha2)?.abs())
}

/// The kernel-order grid of `X_{d,e}` over the two closed-form root families.
///
/// Each entry is computed as a determinant and cross-checked against
/// `a + l·e′ + k·e + l·k·d` (in absolute value, which only matters for `A²`).
pub fn fingerprint(s: &SurfaceDE, l_max: usize, k_max: usize) -> Result<Fingerprint> {
    let mut entries = Vec::with_capacity(l_max + 1);
    for l in 0..=l_max {
        let alpha1 = s.first_family_root(l as u64);
        let mut row = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let alpha2 = s.second_family_root(k as u64);
            let order = kernel_order(&alpha1, &alpha2)?;
            let closed = closed_form(s, l, k);
            if order != closed.abs() {
                return Err(Error::VerifyMismatch(format!(
                    "kernel order {order} at (l, k) = ({l}, {k}) disagrees with closed form {closed}"
                )));
            }
            row.push(order);
        }
        entries.push(row);
    }
    Ok(Fingerprint {
        l_max,
        k_max,
        entries,
    })
}

/// `a + l·e′ + k·e + l·k·d`.
pub fn closed_form(s: &SurfaceDE, l: usize, k: usize) -> BigInt {
    let (l, k) = (BigInt::from(l), BigInt::from(k));
    s.a() + &l * s.e_prime() + &k * s.e() + &l * &k * s.d()
}

/// Recovers the canonical `(d, e)` from a kernel-order grid.
///
/// Along each row `l` the entries grow by `e + l·d`, along each column `k` by
/// `e′ + k·d`. `e` is the smallest row difference and `d` the gap to the next;
/// `e′` comes from the columns. The `(0, 0)` entry is left out of the
/// differences since it is 0 (an infinite kernel) when `e = 1`. The result is
/// accepted only if `e·e′ ≡ 1 (mod d)` and the grid it predicts equals the input.
pub fn recover_de(fp: &Fingerprint) -> Result<SurfaceDE> {
    fp.check_shape()?;
    let bad = |msg: String| Error::InconsistentFingerprint(msg);
    if fp.l_max < 2 || fp.k_max < 2 {
        return Err(bad("need l_max, k_max >= 2".into()));
    }

    let row_diffs = (0..=fp.l_max)
        .map(|l| progression_step(&fp.entries[l], l == 0).map_err(|m| bad(format!("row {l}: {m}"))))
        .collect::<Result<Vec<_>>>()?;
    let cols: Vec<Vec<BigInt>> = fp.transposed().entries;
    let col_diffs = (0..=fp.k_max)
        .map(|k| progression_step(&cols[k], k == 0).map_err(|m| bad(format!("column {k}: {m}"))))
        .collect::<Result<Vec<_>>>()?;

    let mut sorted = row_diffs.clone();
    sorted.sort();
    let e = sorted[0].clone();
    let d = &sorted[1] - &sorted[0];
    let e_prime = col_diffs.iter().min().expect("k_max >= 2").clone();

    if !d.is_positive() || e.is_negative() || e >= d {
        return Err(bad(format!("differences give d = {d}, e = {e}")));
    }
    let s = SurfaceDE::new(d.clone(), e.clone()).map_err(|err| bad(err.to_string()))?;
    if *s.e_prime() != e_prime {
        return Err(bad(format!(
            "column step {e_prime} is not the inverse of e = {e} modulo d = {d}"
        )));
    }
    let predicted = fingerprint(&s, fp.l_max, fp.k_max)?;
    if predicted.entries != fp.entries {
        return Err(bad(format!("grid differs from the one predicted by {s}")));
    }
    Ok(canonical_form(&s))
}

/// Common difference of an arithmetic progression, skipping the first entry if asked.
fn progression_step(seq: &[BigInt], skip_first: bool) -> std::result::Result<BigInt, String> {
    let seq = if skip_first { &seq[1..] } else { seq };
    if seq.len() < 2 {
        return Err("too short".into());
    }
    let step = &seq[1] - &seq[0];
    if seq.windows(2).all(|w| &w[1] - &w[0] == step) {
        Ok(step)
    } else {
        Err("not an arithmetic progression".into())
    }
}

/// Recovers a cone from its roots, given as the complete set of roots inside
/// some box `[-B, B]^rank`.
///
/// For each root `e`, the translates `D_e = {r − e}` of the other roots are
/// scanned for hyperplanes `H` through the origin spanned by some of them.
/// With `p` a primitive normal of `H`, the candidate ray is `−⟨e, p⟩·p`; it is
/// kept only if `⟨e, p⟩ = ±1` and every input root pairs to at least `−1` with
/// it. The kept hyperplane holding the most translates wins, ties going to the
/// lexicographically smallest normal. The result is verified by enumerating its roots
/// in the box of radius `max |coordinate|` of the input and comparing.
///
/// The search costs `O(n^rank)` for `n` roots, so boxes in rank 3 and above
/// should stay small.
///
/// Errors: [`Error::FailedSpan`] when no hyperplane survives for some root
/// (the box is too small), [`Error::VerifyMismatch`] when the
/// reconstructed cone has different roots.
pub fn reconstruct_cone(roots: &[LatticeVector], rank: usize) -> Result<Cone> {
    reconstruct_cone_with(roots, rank, Strategy::default())
}

pub fn reconstruct_cone_with(
    roots: &[LatticeVector],
    rank: usize,
    strategy: Strategy,
) -> Result<Cone> {
    if rank == 0 {
        return Err(Error::invalid("rank must be at least 1"));
    }
    let mut input = BTreeSet::new();
    for r in roots {
        r.check_tag(LatticeTag::M)?;
        r.check_rank(rank)?;
        input.insert(r.clone());
    }
    if input.is_empty() {
        return Ok(Cone::zero(rank));
    }
    let distinct: Vec<LatticeVector> = input.iter().cloned().collect();

    let rays = strategy.map(&distinct, |e| distinguished_ray(e, &distinct, rank));
    // Ray order follows the first appearance of a root in the input.
    let by_root: BTreeMap<&LatticeVector, &LatticeVector> = distinct
        .iter()
        .zip(rays.iter())
        .filter_map(|(e, r)| r.as_ref().ok().map(|r| (e, r)))
        .collect();
    if let Some(err) = rays.iter().find_map(|r| r.as_ref().err()) {
        return Err(err.clone());
    }
    let mut generators: Vec<LatticeVector> = Vec::new();
    for r in roots {
        let ray = by_root[r];
        if !generators.contains(ray) {
            generators.push(ray.clone());
        }
    }

    let cone = make_cone(rank, &generators).map_err(|err| {
        Error::VerifyMismatch(format!("reconstructed rays do not form a cone: {err}"))
    })?;
    if cone.rays().len() != generators.len() {
        return Err(Error::VerifyMismatch(
            "some reconstructed ray is not extremal".into(),
        ));
    }

    let bound = distinct
        .iter()
        .map(LatticeVector::max_abs)
        .max()
        .expect("non-empty")
        .to_u64()
        .ok_or_else(|| Error::invalid("roots too large to verify"))?;
    let found: BTreeSet<LatticeVector> = enumerate_roots_with(&cone, bound, strategy)?
        .into_iter()
        .map(|r| r.alpha)
        .collect();
    if found != input {
        let missing = input.difference(&found).count();
        let extra = found.difference(&input).count();
        return Err(Error::VerifyMismatch(format!(
            "reconstructed cone has {extra} roots not in the input and misses {missing}"
        )));
    }
    Ok(cone)
}

fn distinguished_ray(
    e: &LatticeVector,
    roots: &[LatticeVector],
    rank: usize,
) -> Result<LatticeVector> {
    let failed = |reason: String| Error::FailedSpan {
        root: e.clone(),
        reason,
    };
    let translates: Vec<LatticeVector> = roots.iter().filter(|r| *r != e).map(|r| r - e).collect();

    let normals = candidate_normals(&translates, rank);
    if normals.is_empty() {
        return Err(failed("translates do not span a hyperplane".into()));
    }
    // Every root pairs to at least −1 with every ray, which rules out most
    // spurious hyperplanes. Among the rest the fullest one wins; ties go to
    // the lexicographically smallest normal (the iteration order).
    let mut best: Option<(usize, LatticeVector)> = None;
    for p in &normals {
        let pe = dot(e.coords(), p);
        if !pe.abs().is_one() {
            continue;
        }
        let ray: Vec<BigInt> = p.iter().map(|x| -(x * &pe)).collect();
        if roots.iter().any(|r| dot(r.coords(), &ray) < -BigInt::one()) {
            continue;
        }
        let count = translates
            .iter()
            .filter(|x| dot(x.coords(), p).is_zero())
            .count();
        if best.as_ref().is_none_or(|(c, _)| count > *c) {
            best = Some((count, LatticeVector::new(LatticeTag::N, ray)));
        }
    }
    best.map(|(_, ray)| ray)
        .ok_or_else(|| failed("no hyperplane of translates yields a ray".into()))
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Primitive normals (sign-normalized, sorted) of all hyperplanes spanned by
/// `rank − 1` of the given vectors.
fn candidate_normals(points: &[LatticeVector], rank: usize) -> BTreeSet<Vec<BigInt>> {
    let mut out = BTreeSet::new();
    let mut chosen: Vec<&[BigInt]> = Vec::with_capacity(rank.saturating_sub(1));
    collect_normals(points, rank, 0, &mut chosen, &mut out);
    out
}

fn collect_normals<'a>(
    points: &'a [LatticeVector],
    rank: usize,
    start: usize,
    chosen: &mut Vec<&'a [BigInt]>,
    out: &mut BTreeSet<Vec<BigInt>>,
) {
    if chosen.len() + 1 == rank {
        let n = linalg::normal(chosen, rank);
        let v = LatticeVector::new(LatticeTag::N, n);
        if let Ok(p) = primitive(&v) {
            let mut c = p.into_coords();
            if c.iter()
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_negative())
            {
                c.iter_mut().for_each(|x| *x = -&*x);
            }
            out.insert(c);
        }
        return;
    }
    for i in start..points.len() {
        chosen.push(points[i].coords());
        collect_normals(points, rank, i + 1, chosen, out);
        chosen.pop();
    }
}

/// Enumerates the roots of `cone` in a box and reconstructs the cone from them,
/// doubling the box up to three times while the root set is too small to
/// single out every hyperplane. A small box can also hold exactly the roots of
/// a different cone; that counts as too small as well, and is reported as
/// [`Error::VerifyMismatch`] once the doublings run out. Returns the
/// reconstructed cone and the bound that succeeded.
pub fn reconstruct_round_trip(cone: &Cone, start_bound: u64) -> Result<(Cone, u64)> {
    reconstruct_round_trip_with(cone, start_bound, Strategy::default())
}

pub fn reconstruct_round_trip_with(
    cone: &Cone,
    start_bound: u64,
    strategy: Strategy,
) -> Result<(Cone, u64)> {
    let mut bound = start_bound.max(1);
    let mut attempt = 0;
    loop {
        let roots: Vec<LatticeVector> = enumerate_roots_with(cone, bound, strategy)?
            .into_iter()
            .map(|r| r.alpha)
            .collect();
        let result = reconstruct_cone_with(&roots, cone.rank(), strategy).and_then(|c| {
            if c.same_rays(cone) {
                Ok(c)
            } else {
                Err(Error::VerifyMismatch(format!(
                    "box {bound} holds the same roots as a different cone"
                )))
            }
        });
        match result {
            Err(Error::FailedSpan { .. } | Error::VerifyMismatch(_)) if attempt < 3 => {
                attempt += 1;
                bound = bound
                    .checked_mul(2)
                    .ok_or_else(|| Error::invalid("box bound overflow"))?;
            }
            other => return other.map(|c| (c, bound)),
        }
    }
}
