//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use abelian_points::appendix::{self, galois, k4, norm, QuarticGroup, Verdict};
use abelian_points::arith;
use abelian_points::cli;
use abelian_points::elliptic::{self, CurveModel, Point};
use abelian_points::field::FiniteField;
use abelian_points::global;
use abelian_points::local::{self, DiagonalForm, SearchConfig, SearchMode};
use abelian_points::poly::IntPoly;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str) -> IntPoly {
    s.parse().unwrap()
}

/// Legendre symbol by Euler's criterion.
fn legendre(a: i64, p: u64) -> i64 {
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut r = 1u128;
    let mut b = a as u128;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `#E(F_p)` for `y^2 = x^3 + a6`, `p` odd, by summing Legendre symbols.
fn count_j0(a6: i64, p: u64) -> u64 {
    let mut n = 1i64;
    for x in 0..p as i64 {
        let rhs = (x as i128 * x as i128 * x as i128 + a6 as i128).rem_euclid(p as i128) as i64;
        n += 1 + legendre(rhs, p);
    }
    n as u64
}

/// Counts affine solutions by trying every pair.
fn naive_count(e: &CurveModel) -> u64 {
    let f = e.field();
    let mut n = 1;
    for x in f.elements() {
        for y in f.elements() {
            if e.contains(&Point::Affine(x, y)) {
                n += 1;
            }
        }
    }
    n
}

fn criterion_1() -> Outcome {
    let mut forms = 0;
    for p in [2u64, 5, 11, 17, 23] {
        let mode = if p <= 11 { SearchMode::Exhaustive } else { SearchMode::Cascade };
        let config = SearchConfig {
            mode,
            budget: u64::MAX,
        };
        for a in 1..=6i64 {
            for b in 1..=6i64 {
                for c in 1..=6i64 {
                    if (a * b * c) as u64 % p == 0 {
                        continue;
                    }
                    let form = local::staircase_cubic_form(a, b, c, p).map_err(|e| e.to_string())?;
                    let cert = local::certify_no_abelian_points(&form, p).map_err(|e| e.to_string())?;
                    ensure(cert.is_some(), || format!("{form} not certified at {p}"))?;
                    let soluble = local::brute_force_primitive_with(&form, p, 3, &config)
                        .map_err(|e| e.to_string())?;
                    ensure(!soluble, || format!("{form} has a primitive zero mod {p}^3"))?;
                    forms += 1;
                }
            }
        }
    }
    Ok(format!("{forms} forms certified, none has a primitive zero mod p^3"))
}

fn criterion_2() -> Outcome {
    let selmer = DiagonalForm::from_i64(3, &[3, 4, 5]).unwrap();
    let cfg = SearchConfig::default();
    let mut max_m = 0;
    let primes = arith::primes_up_to(100);
    for &p in &primes {
        let w = local::local_solve_escalating(&selmer, p, 5, &cfg)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("no witness at {p}"))?;
        w.verify().map_err(|e| format!("witness at {p}: {e}"))?;
        max_m = max_m.max(w.precision);
    }
    Ok(format!("{} primes, Hensel witnesses up to precision {max_m}", primes.len()))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut curves = 0;
    for q in 2..=10_000u64 {
        let Some((p, _)) = arith::prime_power(q) else { continue };
        let c = elliptic::find_ell(q).map_err(|e| format!("q = {q}: {e}"))?;
        // postconditions from first principles
        let t = q as i64 + 1 - c.n as i64;
        ensure(t * t <= 4 * q as i64, || format!("q = {q}: N = {} outside Hasse", c.n))?;
        ensure(arith::gcd_u64(t.unsigned_abs(), p) == 1 || (t == 0 && p % 4 != 1), || {
            format!("q = {q}: trace {t} not admissible")
        })?;
        ensure(arith::is_prime_u64(c.ell) && c.n % c.ell == 0, || format!("q = {q}: bad ell"))?;
        ensure(q % c.ell != 0 && (q - 1) % c.ell != 0, || format!("q = {q}: ell divides q(q-1)"))?;
        checked += 1;
        if q <= 256 {
            let field = FiniteField::of_order(q).map_err(|e| e.to_string())?;
            let (curve, n) = elliptic::search_curve_with_order(&field, |n| n == c.n)
                .map_err(|e| format!("q = {q}: {e}"))?;
            ensure(n == c.n && naive_count(&curve) == c.n, || {
                format!("q = {q}: {curve} does not have {} points", c.n)
            })?;
            curves += 1;
        }
    }
    Ok(format!("{checked} prime powers checked, {curves} explicit curves for q <= 256"))
}

fn criterion_4() -> Outcome {
    let got = arith::catalan_solutions(60, 40);
    let want: BTreeSet<(u32, u32)> = [(1, 0), (1, 1), (2, 1), (3, 2)].into_iter().collect();
    ensure(got == want, || format!("got {got:?}"))?;
    Ok(format!("{got:?}"))
}

fn criterion_5() -> Outcome {
    let a6 = -432 * 60 * 60;
    let w4 = global::torsor_prime_search(4).map_err(|e| e.to_string())?;
    ensure(w4.prime == 11 && w4.structure.to_string() == "Z/12", || {
        format!("ell = 4 gave p = {}, {}", w4.prime, w4.structure)
    })?;
    ensure(count_j0(a6, 11) == 12, || "recount at 11 differs".into())?;
    let w5 = global::torsor_prime_search(5).map_err(|e| e.to_string())?;
    ensure(w5.prime == 29 && w5.order == 30 && count_j0(a6, 29) == 30, || {
        format!("ell = 5 gave p = {}, order {}", w5.prime, w5.order)
    })?;
    let mut seen = Vec::new();
    for ell in [5u64, 7, 11, 13, 17, 19, 23] {
        let w = global::torsor_prime_search(ell).map_err(|e| e.to_string())?;
        let p = w.prime;
        ensure(p % 3 == 2 && (p + 1) % ell == 0 && p > 5, || format!("ell = {ell}: p = {p}"))?;
        ensure(w.order == p + 1 && count_j0(a6, p) == p + 1, || {
            format!("ell = {ell}: order {} at {p}", w.order)
        })?;
        w.verify().map_err(|e| e.to_string())?;
        seen.push((ell, p));
    }
    Ok(format!("p = 11 gives Z/12, p = 29 gives 30; (ell, p) = {seen:?}"))
}

fn criterion_6() -> Outcome {
    let e = elliptic::selmer_jacobian();
    let bad = e.bad_primes().map_err(|e| e.to_string())?;
    let a6 = -432 * 60 * 60;
    let (mut ss, mut ord) = (0, 0);
    for p in arith::primes_up_to(500) {
        if bad.contains(&p) {
            continue;
        }
        let n = e.reduce(p).and_then(|c| c.count_points()).map_err(|e| e.to_string())?;
        ensure(n == count_j0(a6, p), || format!("count mismatch at {p}"))?;
        if p % 3 == 2 {
            ensure(n == p + 1, || format!("#E(F_{p}) = {n}"))?;
            ss += 1;
        } else {
            ensure(n != p + 1, || format!("#E(F_{p}) = p + 1 at p = 1 mod 3"))?;
            ord += 1;
        }
    }
    Ok(format!("bad primes {bad:?}; {ss} supersingular, {ord} ordinary good primes"))
}

fn criterion_7() -> Outcome {
    for g in 4..=10_000u64 {
        let (k, ell) = global::decompose_genus(g).map_err(|e| e.to_string())?;
        ensure(g == k * ell + 1 && k >= 1, || format!("g = {g}: ({k}, {ell})"))?;
        ensure(ell == 4 || (ell % 2 == 1 && arith::is_prime_u64(ell)), || format!("g = {g}: ell = {ell}"))?;
        let rh = global::riemann_hurwitz_double_cover(1, 2 * k * ell).map_err(|e| e.to_string())?;
        ensure(rh == g, || format!("g = {g}: Riemann-Hurwitz gives {rh}"))?;
    }
    ensure(global::genus_construction_plan(3).is_err(), || "genus 3 plan exists".into())?;
    Ok("4 <= g <= 10000 decomposed; genus 3 refused".into())
}

fn criterion_8() -> Outcome {
    for f in ["x^3 - x - 1", "x^4 - x - 1"] {
        let c = appendix::norm_equation_certificate(&poly(f), 2, norm::DEFAULT_NORM_SCAN_BOUND)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{f}: no norm certificate"))?;
        c.verify().map_err(|e| e.to_string())?;
    }
    ensure(
        galois::quartic_galois_group(&poly("x^4 - 2")).ok() == Some(QuarticGroup::D4),
        || "x^4 - 2 is not D4".into(),
    )?;
    let t = norm::sqrt2_quaternion_example().map_err(|e| e.to_string())?;
    ensure(t.nontrivial && t.square_root_group == Some(QuarticGroup::D4), || {
        format!("quaternion symbol: {t:?}")
    })?;
    let r = k4::k4_s4_report();
    ensure(r.vertex_stabilizers_ok && r.edge_stabilizers_ok && r.overgroups_ok, || {
        "K4 report fails".into()
    })?;
    for f in ["x^3 - x - 1", "x^4 - x - 1", "x^5 - x - 1"] {
        let v = appendix::sn_certificate(&poly(f), 1000).map_err(|e| e.to_string())?;
        ensure(v.verdict == Verdict::CertifiedSymmetric, || format!("{f} not certified"))?;
    }
    for f in ["x^4 + 1", "x^4 + x^3 + x^2 + x + 1", "x^3 - 3*x - 1"] {
        let v = appendix::sn_certificate(&poly(f), 10_000).map_err(|e| e.to_string())?;
        ensure(v.verdict != Verdict::CertifiedSymmetric, || format!("{f} certified"))?;
    }
    Ok("norm certificates, D4 symbol, K4 report and S_d scans as expected".into())
}

/// `u * p^v` with `u` a small unit.
fn coefficient(rng: &mut ChaCha8Rng, p: u64, v: u32) -> BigInt {
    let u = loop {
        let u = rng.gen_range(1..=12u64);
        if u % p != 0 {
            break u;
        }
    };
    let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
    BigInt::from(sign) * BigInt::from(u) * BigInt::from(p).pow(v)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cfg = SearchConfig::default();
    let (mut stair, mut other, mut other_insoluble) = (0, 0, 0);
    for i in 0..500 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let d = [3u32, 5][rng.gen_range(0..2)];
        let mut vals: Vec<u32> = (0..d).collect();
        if i % 2 == 0 {
            // shuffle a staircase profile
            for j in (1..vals.len()).rev() {
                vals.swap(j, rng.gen_range(0..=j));
            }
        } else {
            for v in vals.iter_mut() {
                *v = rng.gen_range(0..d);
            }
        }
        let coeffs = vals.iter().map(|&v| coefficient(&mut rng, p, v)).collect();
        let form = DiagonalForm::new(d, coeffs).map_err(|e| e.to_string())?;
        let profile = local::valuation_profile(&form, p).map_err(|e| e.to_string())?;
        let m = profile.valuations.iter().max().unwrap() + 1;
        let staircase = local::staircase_check(&profile, d, 1);
        let soluble = local::brute_force_primitive_with(&form, p, m, &cfg)
            .map_err(|e| format!("{form} at {p}: {e}"))?;
        if staircase {
            ensure(!soluble, || format!("false anisotropic verdict for {form} at {p}"))?;
            stair += 1;
        } else {
            other += 1;
            if !soluble {
                other_insoluble += 1;
            }
        }
    }
    Ok(format!(
        "500 forms: {stair} staircase (all insoluble mod p^m), {other} others ({other_insoluble} also insoluble, no verdict claimed)"
    ))
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("abelian-points-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let cert_path = dir.join("cert.json");
    let cert_str = cert_path.to_str().unwrap().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["certify-cubic", "--a", "2", "--b", "4", "--c", "5", "--p", "2"],
        vec!["certify-cubic", "--a", "3", "--b", "4", "--c", "5"],
        vec!["certify-cy", "--ell", "5", "--p", "2"],
        vec!["scan", "--form", "2x^3 + 4y^3 + 5z^3"],
        vec!["solve-local", "--form", "3x^3 + 4y^3 + 5z^3", "--p", "7"],
        vec!["find-ell", "--q", "8", "--with-curve"],
        vec!["thm-ell", "--ell", "7"],
        vec!["thm3", "--poly", "x^2 - 2"],
        vec!["cor2", "--poly", "x^2 - 2"],
        vec!["genus-plan", "--g", "8"],
        vec!["norm-cert", "--poly", "x^3 - x - 1"],
        vec!["tame-symbol", "--example", "sqrt2"],
        vec!["tame-symbol", "--a", "t", "--b", "t"],
        vec!["sn-cert", "--poly", "x^5 - x - 1"],
        vec!["k4"],
        vec!["catalan"],
    ];
    let run = |args: &[&str]| cli::run(std::iter::once("abelian-points").chain(args.iter().copied()));
    for args in &commands {
        let first = run(args);
        let second = run(args);
        ensure(first == second, || format!("{args:?} is not deterministic"))?;
        if first.code == 0 && args[0] != "catalan" && args[0] != "k4" && args[0] != "tame-symbol" {
            std::fs::write(&cert_path, &first.output).map_err(|e| e.to_string())?;
            let v = run(&["verify", "--file", &cert_str]);
            ensure(v.code == 0, || format!("{args:?} does not re-verify: {}", v.output))?;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across two runs; certificates re-verify", commands.len()))
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(u32, &str, Check, Option<Duration>); 10] = [
        (1, "staircase cubics certified and insoluble mod p^3", criterion_1, Some(Duration::from_secs(60))),
        (2, "Selmer cubic has Hensel witnesses at p <= 100", criterion_2, Some(Duration::from_secs(120))),
        (3, "find_ell postconditions and explicit curves", criterion_3, Some(Duration::from_secs(600))),
        (4, "Catalan census", criterion_4, None),
        (5, "supersingular primes for ell = 4 and 5 <= ell <= 23", criterion_5, None),
        (6, "Selmer Jacobian supersingular exactly at p = 2 mod 3", criterion_6, Some(Duration::from_secs(60))),
        (7, "genus decompositions and Riemann-Hurwitz", criterion_7, None),
        (8, "appendix certificates", criterion_8, None),
        (9, "staircase verdicts agree with brute force on 500 forms", criterion_9, None),
        (10, "CLI determinism", criterion_10, None),
    ];
    let mut failures = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS [{n}] {name}: {detail} ({elapsed:.2?})"),
            Err(why) => {
                failures += 1;
                println!("FAIL [{n}] {name}: {why} ({elapsed:.2?})");
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
