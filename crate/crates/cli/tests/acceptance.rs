//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (tolerance 0). Oracles are computed here in
//! machine integers, independently of the library code paths they check.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_core::{
    canonical_form, commutes, delta_apply, enumerate_roots, exp_lnd, fingerprint, finite_order,
    hilbert_basis_2d, iso_test, make_cone, monoid_matches_cone, nilpotency_index, poly_mul,
    reconstruct_round_trip, recover_de, torus_act, BigInt, BigRational, Cone, IntMatrix,
    LatticeVector, LaurentPoly, Root, SurfaceDE, TorusPoint,
};

const SEED: u64 = 0x7011C;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn i(v: &BigInt) -> i64 {
    v.to_i64().expect("small integer")
}

fn coords(v: &LatticeVector) -> Vec<i64> {
    v.coords().iter().map(i).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `(e′, a)` by search: `0 ≤ e′ < d`, `e·e′ = 1 + a·d`.
fn eprime_a(d: i64, e: i64) -> (i64, i64) {
    let ep = (0..d).find(|x| (e * x - 1).rem_euclid(d) == 0).unwrap_or(0);
    (ep, (e * ep - 1).div_euclid(d))
}

fn surfaces(d_max: i64) -> Vec<(i64, i64)> {
    (1..=d_max)
        .flat_map(|d| {
            (0..d.max(1))
                .filter(move |&e| gcd(e, d) == 1)
                .map(move |e| (d, e))
        })
        .collect()
}

fn surface(d: i64, e: i64) -> SurfaceDE {
    SurfaceDE::new(d, e).unwrap()
}

fn criterion_1() -> Outcome {
    let bound = 12;
    let mut count = 0;
    for (d, e) in surfaces(12) {
        let (ep, a) = eprime_a(d, e);
        let inside = |v: &[i64; 2]| v.iter().all(|c| c.abs() <= bound);
        let mut want = BTreeSet::new();
        for l in 0..=bound {
            let v = [l, -1];
            if inside(&v) {
                want.insert((0usize, v.to_vec()));
            }
        }
        for k in 0..=bound {
            let v = [a + k * e, ep + k * d];
            if inside(&v) {
                want.insert((1usize, v.to_vec()));
            }
        }
        let got: BTreeSet<_> = enumerate_roots(&surface(d, e).cone(), bound as u64)
            .map_err(|err| err.to_string())?
            .iter()
            .map(|r| (r.ray, coords(&r.alpha)))
            .collect();
        check(got == want, || {
            format!("σ_{{{d},{e}}}: enumerated {got:?}, families {want:?}")
        })?;
        count += 1;
    }
    Ok(format!("{count} surfaces, d ≤ 12, box 12"))
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    let mut degenerate = 0;
    for (d, e) in surfaces(12).into_iter().filter(|&(d, _)| d >= 2) {
        let (ep, a) = eprime_a(d, e);
        let fp = fingerprint(&surface(d, e), 8, 8).map_err(|err| err.to_string())?;
        for l in 0..=8i64 {
            for k in 0..=8i64 {
                let (u, v) = ([l, -1], [a + k * e, ep + k * d]);
                let det = (u[0] * v[1] - u[1] * v[0]).abs();
                let formula = a + l * ep + k * e + l * k * d;
                if det == 0 {
                    check(l == 0 && k == 0 && e == 1, || {
                        format!("σ_{{{d},{e}}}: determinant 0 at ({l},{k})")
                    })?;
                    degenerate += 1;
                    continue;
                }
                check(det == formula, || {
                    format!("σ_{{{d},{e}}} ({l},{k}): |det| {det} vs {formula}")
                })?;
                let entry = i(fp.entry(l as usize, k as usize));
                check(entry == det, || {
                    format!("σ_{{{d},{e}}} ({l},{k}): fingerprint {entry} vs {det}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} entries, {degenerate} degenerate (all at (0,0), e = 1)"
    ))
}

fn canonical_oracle(d: i64, e: i64) -> (i64, i64) {
    (d, e.min(eprime_a(d, e).0))
}

fn criterion_3() -> Outcome {
    let mut recovered = 0;
    for (d, e) in surfaces(12).into_iter().filter(|&(d, _)| d >= 2) {
        let s = surface(d, e);
        let fp = fingerprint(&s, 4, 4).map_err(|err| err.to_string())?;
        let got = recover_de(&fp).map_err(|err| format!("σ_{{{d},{e}}}: {err}"))?;
        let want = canonical_oracle(d, e);
        check((i(got.d()), i(got.e())) == want, || {
            format!("σ_{{{d},{e}}}: recovered {got}, want {want:?}")
        })?;
        check(got == canonical_form(&s), || {
            format!("σ_{{{d},{e}}}: recover ≠ canonical_form")
        })?;
        recovered += 1;
    }
    let all = surfaces(20);
    let built: Vec<_> = all.iter().map(|&(d, e)| surface(d, e)).collect();
    let mut pairs = 0;
    for (x, sx) in all.iter().zip(&built) {
        for (y, sy) in all.iter().zip(&built) {
            let same = canonical_oracle(x.0, x.1) == canonical_oracle(y.0, y.1);
            check(iso_test(sx, sy) == same, || {
                format!("iso_test{x:?},{y:?} should be {same}")
            })?;
            check((canonical_form(sx) == canonical_form(sy)) == same, || {
                format!("canonical_form{x:?},{y:?} disagrees")
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{recovered} recoveries (2 ≤ d ≤ 12, 4×4 grids); {pairs} iso pairs, d ≤ 20"
    ))
}

fn random_cone(rng: &mut ChaCha8Rng) -> Cone {
    loop {
        let mut v = || -> [i64; 2] { [rng.gen_range(-20..=20), rng.gen_range(-20..=20)] };
        let (p, q) = (v(), v());
        if p[0] * q[1] - p[1] * q[0] != 0 {
            return make_cone(2, &[LatticeVector::n(p), LatticeVector::n(q)]).unwrap();
        }
    }
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cones: Vec<(String, Cone, u64)> = (0..50)
        .map(|k| {
            let c = random_cone(&mut rng);
            let start = c.rays().iter().map(|r| i(&r.max_abs())).max().unwrap() as u64;
            (format!("random #{k}"), c, start.max(2))
        })
        .collect();
    let n = |v: [i64; 3]| LatticeVector::n(v);
    cones.push((
        "octant".into(),
        make_cone(3, &[n([1, 0, 0]), n([0, 1, 0]), n([0, 0, 1])]).unwrap(),
        2,
    ));
    cones.push((
        "cone over the square".into(),
        make_cone(3, &[n([0, 0, 1]), n([1, 0, 1]), n([1, 1, 1]), n([0, 1, 1])]).unwrap(),
        2,
    ));
    let mut largest = 0;
    for (name, c, start) in &cones {
        let (back, bound) =
            reconstruct_round_trip(c, *start).map_err(|err| format!("{name} {c:?}: {err}"))?;
        check(back.same_rays(c), || {
            format!("{name}: got {back:?}, want {c:?}")
        })?;
        largest = largest.max(bound);
    }
    Ok(format!(
        "{} cones (seed {SEED:#x}), largest box {largest}",
        cones.len()
    ))
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let mut n = rng.gen_range(-5..=5);
    if n == 0 {
        n = 1;
    }
    q(n, rng.gen_range(1..=4))
}

fn random_dual_point(rng: &mut ChaCha8Rng, cone: &Cone) -> Vec<i64> {
    loop {
        let m = vec![rng.gen_range(-6..=6), rng.gen_range(-6..=6)];
        let inside = cone
            .rays()
            .iter()
            .all(|r| coords(r).iter().zip(&m).map(|(a, b)| a * b).sum::<i64>() >= 0);
        if inside {
            return m;
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, cone: &Arc<Cone>) -> LaurentPoly {
    let terms = rng.gen_range(1..=3);
    let terms: Vec<_> = (0..terms)
        .map(|_| {
            (
                LatticeVector::m(random_dual_point(rng, cone)),
                random_rational(rng),
            )
        })
        .collect();
    LaurentPoly::from_terms(cone.clone(), terms).unwrap()
}

fn criterion_5() -> Outcome {
    const SAMPLES: usize = 120;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let quadrant =
        Arc::new(make_cone(2, &[LatticeVector::n([1, 0]), LatticeVector::n([0, 1])]).unwrap());
    let sigma = Arc::new(surface(5, 2).cone());
    let setups: Vec<(Arc<Cone>, Vec<Root>)> = [quadrant, sigma]
        .into_iter()
        .map(|c| {
            let roots = enumerate_roots(&c, 3).unwrap();
            (c, roots)
        })
        .collect();
    let err = |e: toric_core::Error| e.to_string();
    let mut counts = [0usize; 6];
    for sample in 0..2 * SAMPLES {
        let (cone, roots) = &setups[sample % 2];
        let root = &roots[rng.gen_range(0..roots.len())];
        let ray = coords(&cone.rays()[root.ray]);
        let alpha = coords(&root.alpha);
        let f = random_poly(&mut rng, cone);
        let g = random_poly(&mut rng, cone);
        let s = random_rational(&mut rng);
        let s2 = random_rational(&mut rng);

        let lhs = delta_apply(root, &poly_mul(&f, &g).map_err(err)?).map_err(err)?;
        let rhs = poly_mul(&delta_apply(root, &f).map_err(err)?, &g)
            .and_then(|x| x.add(&poly_mul(&f, &delta_apply(root, &g)?)?))
            .map_err(err)?;
        check(lhs == rhs, || {
            format!("Leibniz fails for {root:?} on {f} and {g}")
        })?;
        counts[0] += 1;

        let m = random_dual_point(&mut rng, cone);
        let mono = LaurentPoly::monomial(
            cone.clone(),
            LatticeVector::m(m.clone()),
            BigRational::one(),
        )
        .map_err(err)?;
        let image = delta_apply(root, &mono).map_err(err)?;
        let shifted = LatticeVector::m([m[0] + alpha[0], m[1] + alpha[1]]);
        let pairing = m[0] * ray[0] + m[1] * ray[1];
        check(
            image.is_homogeneous_of_degree(&shifted)
                && image.coefficient(&shifted) == q(pairing, 1),
            || format!("{root:?} maps χ^{m:?} to {image}"),
        )?;
        counts[1] += 1;

        let index = nilpotency_index(cone, root, &LatticeVector::m(m.clone())).map_err(err)?;
        check(index as i64 == pairing + 1, || {
            format!("nilpotency {index} vs {}", pairing + 1)
        })?;
        counts[2] += 1;

        let exp = |s: &BigRational, p: &LaurentPoly| exp_lnd(root, s, p).map_err(err);
        let product = exp(&s, &poly_mul(&f, &g).map_err(err)?)?;
        check(
            product == poly_mul(&exp(&s, &f)?, &exp(&s, &g)?).map_err(err)?,
            || format!("exp not multiplicative for {root:?}"),
        )?;
        counts[3] += 1;

        check(exp(&s, &exp(&s2, &f)?)? == exp(&(&s + &s2), &f)?, || {
            format!("group law fails for {root:?}, s = {s}, s′ = {s2}")
        })?;
        counts[4] += 1;

        let t = vec![random_rational(&mut rng), random_rational(&mut rng)];
        let weight = t
            .iter()
            .zip(&alpha)
            .fold(BigRational::one(), |acc, (ti, &a)| {
                let p = num_traits::pow(ti.clone(), a.unsigned_abs() as usize);
                if a < 0 {
                    acc / p
                } else {
                    acc * p
                }
            });
        let point = TorusPoint::new(t).map_err(err)?;
        let conjugated = torus_act(
            &point,
            &exp(&s, &torus_act(&point.inverse(), &f).map_err(err)?)?,
        )
        .map_err(err)?;
        check(conjugated == exp(&(weight * &s), &f)?, || {
            format!("torus conjugation fails for {root:?}")
        })?;
        counts[5] += 1;
    }
    check(counts.iter().all(|&c| c >= 100), || {
        format!("too few samples: {counts:?}")
    })?;
    Ok(format!(
        "{} instances per law (Leibniz, homogeneity, nilpotency, multiplicativity, group law, conjugation)",
        counts[0]
    ))
}

fn criterion_6() -> Outcome {
    let mut pairs = 0;
    for (d, e) in surfaces(8) {
        let cone = Arc::new(surface(d, e).cone());
        let roots = enumerate_roots(&cone, 6).map_err(|err| err.to_string())?;
        for (x, r1) in roots.iter().enumerate() {
            for r2 in roots[x..].iter().filter(|r| r.ray == r1.ray) {
                let ok = commutes(&cone, r1, r2).map_err(|err| err.to_string())?;
                check(ok, || {
                    format!("σ_{{{d},{e}}}: {r1:?} and {r2:?} do not commute")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} unordered same-ray pairs, d ≤ 8, box 6"))
}

fn criterion_7() -> Outcome {
    let basis: Vec<Vec<i64>> = hilbert_basis_2d(&surface(2, 1).cone())
        .map_err(|err| err.to_string())?
        .iter()
        .map(coords)
        .collect();
    check(basis == vec![vec![1, 0], vec![1, 1], vec![1, 2]], || {
        format!("Hilbert basis of σ_{{2,1}}: {basis:?}")
    })?;
    for (d, e) in [(2, 1), (3, 1), (5, 2), (7, 3)] {
        let w = monoid_matches_cone(&BigInt::from(d), &BigInt::from(e), 8)
            .map_err(|err| format!("({d},{e}): {err}"))?;
        // Independent count: invariant monomials x^i y^j (ξ^{e·i + j} = 1) in the box.
        let invariant = (0..=8i64)
            .flat_map(|a| (0..=8i64).map(move |b| (a, b)))
            .filter(|(a, b)| (e * a + b) % d == 0)
            .count();
        check(w.checked == invariant, || {
            format!("({d},{e}): {} checked vs {invariant} invariant", w.checked)
        })?;
    }
    Ok("basis {(1,0),(1,1),(1,2)}; bijection for (2,1),(3,1),(5,2),(7,3), box 8".into())
}

fn power_order(m: [[i64; 2]; 2], limit: u64) -> Option<u64> {
    let mut p = m;
    for k in 1..=limit {
        if p == [[1, 0], [0, 1]] {
            return Some(k);
        }
        p = [
            [
                p[0][0] * m[0][0] + p[0][1] * m[1][0],
                p[0][0] * m[0][1] + p[0][1] * m[1][1],
            ],
            [
                p[1][0] * m[0][0] + p[1][1] * m[1][0],
                p[1][0] * m[0][1] + p[1][1] * m[1][1],
            ],
        ];
    }
    None
}

fn matrix(m: [[i64; 2]; 2]) -> IntMatrix {
    IntMatrix::from_rows(m.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn criterion_8() -> Outcome {
    let named: [([[i64; 2]; 2], Option<u64>); 5] = [
        ([[0, -1], [1, 0]], Some(4)),
        ([[0, -1], [1, -1]], Some(3)),
        ([[-1, 0], [0, -1]], Some(2)),
        ([[1, 1], [-1, 0]], Some(6)),
        ([[1, 1], [0, 1]], None),
    ];
    for (m, want) in named {
        let got = finite_order(&matrix(m)).map_err(|err| err.to_string())?;
        check(got == want, || format!("{m:?}: {got:?}, want {want:?}"))?;
    }
    let mut swept = 0;
    for code in 0..7i64.pow(4) {
        let digit = |k: u32| (code / 7i64.pow(k)) % 7 - 3;
        let m = [[digit(0), digit(1)], [digit(2), digit(3)]];
        if (m[0][0] * m[1][1] - m[0][1] * m[1][0]).abs() != 1 {
            continue;
        }
        let got = finite_order(&matrix(m)).map_err(|err| err.to_string())?;
        let want = power_order(m, 12);
        check(got == want, || {
            format!("{m:?}: {got:?}, iteration gives {want:?}")
        })?;
        swept += 1;
    }
    Ok(format!(
        "5 named matrices; {swept} unimodular matrices with entries in [-3,3]"
    ))
}

fn criterion_9() -> Outcome {
    let cases = common::golden_cases();
    for (name, args) in &cases {
        let (code, out) = common::toric(args);
        let path = common::golden_path(name);
        let want = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        check(code == 0 && out == want, || {
            format!("{name}: exit {code}, output {out:?}")
        })?;
    }
    Ok(format!(
        "{} subcommands byte-identical to golden files",
        cases.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("root families agree with enumeration", criterion_1),
        ("kernel-order formula", criterion_2),
        ("identification round trip and iso test", criterion_3),
        ("cone reconstruction round trip", criterion_4),
        ("derivation laws", criterion_5),
        ("same-ray commutation", criterion_6),
        ("quotient model", criterion_7),
        ("torsion orders", criterion_8),
        ("CLI golden files", criterion_9),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS {name}: {detail} [tolerance 0, {secs:.2}s]",
                k + 1
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL {name}: {detail} [tolerance 0, {secs:.2}s]",
                    k + 1
                );
            }
        }
    }
    let secs = total.elapsed().as_secs_f64();
    println!("acceptance: {} of 9 passed in {secs:.1}s", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
