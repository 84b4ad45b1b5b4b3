//! Galois groups from Frobenius cycle types, and the resolvent-cubic
//! classification of quartics.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{self, CycleType};
use crate::poly::{self, IntPoly};

/// Primes used to cross-check a quartic classification.
pub const QUARTIC_CROSS_CHECK_PRIMES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum QuarticGroup {
    S4,
    A4,
    D4,
    C4,
    V4,
}

impl QuarticGroup {
    pub fn is_abelian(self) -> bool {
        matches!(self, QuarticGroup::C4 | QuarticGroup::V4)
    }

    /// Frobenius cycle types that elements of the group can have.
    pub fn allowed_cycle_types(self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![1, 1, 1, 1], vec![2, 2]];
        match self {
            QuarticGroup::V4 => {}
            QuarticGroup::C4 => out.push(vec![4]),
            QuarticGroup::D4 => out.extend([vec![1, 1, 2], vec![4]]),
            QuarticGroup::A4 => out.push(vec![1, 3]),
            QuarticGroup::S4 => out.extend([vec![1, 1, 2], vec![4], vec![1, 3]]),
        }
        out
    }
}

impl fmt::Display for QuarticGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "group")]
pub enum Verdict {
    CertifiedSymmetric,
    ClassifiedQuartic(QuarticGroup),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisVerdict {
    pub polynomial: IntPoly,
    pub verdict: Verdict,
    /// First prime at which each cycle type was seen.
    pub evidence: Vec<(u64, CycleType)>,
    pub scan_bound: u64,
}

impl GaloisVerdict {
    pub fn cycle_types(&self) -> Vec<Vec<u32>> {
        self.evidence.iter().map(|(_, c)| c.0.clone()).collect()
    }

    /// Recomputes every cycle type and regenerates the verdict.
    pub fn verify(&self) -> Result<()> {
        let disc = self.polynomial.discriminant()?;
        for (p, c) in &self.evidence {
            if (&disc % BigInt::from(*p)).is_zero() {
                return Err(Error::Verification(format!("{p} divides the discriminant")));
            }
            if &field::cycle_type(&self.polynomial, *p)? != c {
                return Err(Error::Verification(format!("cycle type at {p} differs")));
            }
        }
        let fresh = sn_certificate(&self.polynomial, self.scan_bound)?;
        if &fresh != self {
            return Err(Error::Verification("verdict differs from a fresh scan".into()));
        }
        Ok(())
    }
}

/// True when the cycle types force the full symmetric group on `d` letters:
/// a `d`-cycle, a prime cycle of length above `d/2` with the rest fixed, and
/// an element with exactly one 2-cycle and otherwise odd cycles.
pub fn symmetric_criteria_met(d: u32, cycle_types: &[Vec<u32>]) -> bool {
    if d < 2 {
        return false;
    }
    let valid = |c: &&Vec<u32>| c.iter().sum::<u32>() == d && c.iter().all(|&x| x > 0);
    let full_cycle = cycle_types.iter().filter(valid).any(|c| c == &[d]);
    let large_prime = cycle_types.iter().filter(valid).any(|c| {
        let big: Vec<u32> = c.iter().copied().filter(|&x| x > 1).collect();
        big.len() == 1 && arith::is_prime_u64(big[0] as u64) && 2 * big[0] > d
    });
    let transposition = cycle_types.iter().filter(valid).any(|c| {
        c.iter().filter(|&&x| x == 2).count() == 1 && c.iter().all(|&x| x == 2 || x % 2 == 1)
    });
    full_cycle && large_prime && transposition
}

fn scan(f: &IntPoly, bound: u64) -> Result<Vec<(u64, CycleType)>> {
    let disc = f.discriminant()?;
    if disc.is_zero() {
        return Err(Error::InvalidInput(format!("{f} has a repeated root")));
    }
    let mut seen = BTreeSet::new();
    let mut evidence = Vec::new();
    for p in arith::primes_up_to(bound) {
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let c = field::cycle_type(f, p)?;
        if seen.insert(c.clone()) {
            evidence.push((p, c));
        }
    }
    Ok(evidence)
}

/// Scans good primes up to `bound` for Frobenius cycle types. Certification
/// is one-sided; quartics that fall short are classified instead.
pub fn sn_certificate(f: &IntPoly, bound: u64) -> Result<GaloisVerdict> {
    let d = f.degree().unwrap_or(0);
    if d < 2 || !f.is_monic() {
        return Err(Error::InvalidInput(format!("{f} must be monic of degree >= 2")));
    }
    let evidence = scan(f, bound)?;
    let types: Vec<Vec<u32>> = evidence.iter().map(|(_, c)| c.0.clone()).collect();
    let verdict = if symmetric_criteria_met(d as u32, &types) {
        Verdict::CertifiedSymmetric
    } else if d == 4 && f.is_irreducible_small()? {
        Verdict::ClassifiedQuartic(quartic_galois_group(f)?)
    } else {
        Verdict::Inconclusive
    };
    Ok(GaloisVerdict {
        polynomial: f.clone(),
        verdict,
        evidence,
        scan_bound: bound,
    })
}

/// `y^3 - b y^2 + (ac - 4d) y - (a^2 d - 4bd + c^2)` for
/// `x^4 + a x^3 + b x^2 + c x + d`.
pub fn resolvent_cubic(f: &IntPoly) -> Result<IntPoly> {
    if f.degree() != Some(4) || !f.is_monic() {
        return Err(Error::InvalidInput(format!("{f} is not a monic quartic")));
    }
    let (d, c, b, a) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
    let four = BigInt::from(4);
    Ok(IntPoly::new(vec![
        -(&a * &a * &d - &four * &b * &d + &c * &c),
        &a * &c - &four * &d,
        -b,
        BigInt::from(1),
    ]))
}

fn splits_over_quadratic(g: &IntPoly, delta: &BigInt) -> Result<bool> {
    let dg = g.discriminant()?;
    Ok(poly::is_integer_square(&dg) || poly::is_integer_square(&(dg * delta)))
}

fn classify(f: &IntPoly) -> Result<QuarticGroup> {
    if !f.is_irreducible_small()? {
        return Err(Error::InvalidInput(format!("{f} is reducible over Q")));
    }
    let delta = f.discriminant()?;
    let square = poly::is_integer_square(&delta);
    let roots = resolvent_cubic(f)?.rational_roots()?;
    Ok(match roots.len() {
        0 if square => QuarticGroup::A4,
        0 => QuarticGroup::S4,
        1 => {
            let r = roots[0].to_integer();
            let (d, b, a) = (f.coeff(0), f.coeff(2), f.coeff(3));
            let g1 = IntPoly::new(vec![d, -r.clone(), BigInt::from(1)]);
            let g2 = IntPoly::new(vec![b - r, a, BigInt::from(1)]);
            if splits_over_quadratic(&g1, &delta)? && splits_over_quadratic(&g2, &delta)? {
                QuarticGroup::C4
            } else {
                QuarticGroup::D4
            }
        }
        _ => QuarticGroup::V4,
    })
}

/// Galois group of a monic irreducible quartic. The verdict is checked
/// against the cycle types at the first good primes; a mismatch is an error.
pub fn quartic_galois_group(f: &IntPoly) -> Result<QuarticGroup> {
    let group = classify(f)?;
    let allowed = group.allowed_cycle_types();
    let disc = f.discriminant()?;
    let mut checked = 0;
    let mut p = 1u64;
    while checked < QUARTIC_CROSS_CHECK_PRIMES {
        p = arith::next_prime(p + 1);
        if (&disc % BigInt::from(p)).is_zero() {
            continue;
        }
        let c = field::cycle_type(f, p)?;
        if !allowed.contains(&c.0) {
            return Err(Error::InternalContradiction(format!(
                "{f} classified {group} but has cycle type {c} at {p}"
            )));
        }
        checked += 1;
    }
    Ok(group)
}

/// Whether `Q[x]/(f)` is an abelian Galois extension of `Q`.
pub fn is_abelian_extension(f: &IntPoly) -> Result<bool> {
    let d = f.degree().unwrap_or(0);
    if d > 4 {
        return Err(Error::Unsupported(format!("abelian test for degree {d}")));
    }
    if d == 0 || !f.is_irreducible_small()? {
        return Err(Error::InvalidInput(format!("{f} is not irreducible")));
    }
    match d {
        1 | 2 => Ok(true),
        3 => Ok(poly::is_integer_square(&f.discriminant()?)),
        _ => Ok(quartic_galois_group(f)?.is_abelian()),
    }
}

/// Monic integral minimal polynomial of `c^2 u`, given the monic rational
/// minimal polynomial of `u`, with the least positive integer `c` that works.
pub fn integral_rescaling(g: &[BigRational]) -> (IntPoly, BigInt) {
    let k = g.len() - 1;
    let mut c = BigInt::from(1);
    for (i, a) in g.iter().enumerate().take(k) {
        let den = a.denom();
        // c^(2(k-i)) must clear den
        let mut need = BigInt::from(1);
        for (p, e) in factor_small(den) {
            let exp = (e as usize).div_ceil(2 * (k - i));
            need *= BigInt::from(p).pow(exp as u32);
        }
        c = num_integer::Integer::lcm(&c, &need);
    }
    let c2 = BigRational::from_integer(&c * &c);
    let coeffs = g
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let scaled = a * num_traits::pow(c2.clone(), k - i);
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect();
    (IntPoly::new(coeffs), c)
}

fn factor_small(n: &BigInt) -> Vec<(u64, u32)> {
    use num_traits::ToPrimitive;
    let n = n.magnitude();
    match n.to_u64() {
        Some(v) => arith::factorize_u64(v),
        None => arith::factorize(n)
            .ok()
            .and_then(|f| f.to_u64_pairs())
            .unwrap_or_default(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn symmetric_certificates() {
        for (f, bound) in [("x^3 - x - 1", 100), ("x^4 - x - 1", 200), ("x^5 - x - 1", 200)] {
            let v = sn_certificate(&p(f), bound).unwrap();
            assert_eq!(v.verdict, Verdict::CertifiedSymmetric, "{f}");
            v.verify().unwrap();
        }
        let v = sn_certificate(&p("x^3 - x - 1"), 100).unwrap();
        let types = v.cycle_types();
        assert!(types.contains(&vec![3]) && types.contains(&vec![1, 2]));
    }

    #[test]
    fn abelian_controls_never_certify() {
        for f in ["x^4 + 1", "x^4 + x^3 + x^2 + x + 1", "x^3 - 3*x - 1"] {
            let v = sn_certificate(&p(f), 2000).unwrap();
            assert_ne!(v.verdict, Verdict::CertifiedSymmetric, "{f}");
        }
    }

    #[test]
    fn quartic_classification() {
        assert_eq!(quartic_galois_group(&p("x^4 - 2")).unwrap(), QuarticGroup::D4);
        assert_eq!(quartic_galois_group(&p("x^4 + 1")).unwrap(), QuarticGroup::V4);
        assert_eq!(
            quartic_galois_group(&p("x^4 + x^3 + x^2 + x + 1")).unwrap(),
            QuarticGroup::C4
        );
        assert_eq!(quartic_galois_group(&p("x^4 - x - 1")).unwrap(), QuarticGroup::S4);
        // x^4 + 8x + 12 has group A4
        assert_eq!(quartic_galois_group(&p("x^4 + 8*x + 12")).unwrap(), QuarticGroup::A4);
        assert!(quartic_galois_group(&p("x^4 - 1")).is_err());
        assert_eq!(resolvent_cubic(&p("x^4 - 2")).unwrap(), p("x^3 + 8*x"));
    }

    #[test]
    fn abelian_extension_test() {
        assert!(!is_abelian_extension(&p("x^4 - 2")).unwrap());
        assert!(is_abelian_extension(&p("x^2 - 2")).unwrap());
        assert!(is_abelian_extension(&p("x^3 - 3*x - 1")).unwrap());
        assert!(!is_abelian_extension(&p("x^3 - 2")).unwrap());
        assert!(matches!(
            is_abelian_extension(&p("x^5 - x - 1")),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn criteria_edge_cases() {
        assert!(!symmetric_criteria_met(4, &[vec![4], vec![1, 1, 2]]));
        assert!(symmetric_criteria_met(4, &[vec![4], vec![1, 1, 2], vec![1, 3]]));
        assert!(!symmetric_criteria_met(4, &[vec![4], vec![1, 3], vec![2, 2]]));
        assert!(!symmetric_criteria_met(3, &[vec![3], vec![1, 2, 5]]));
    }

    #[test]
    fn rescaling() {
        let half = BigRational::new(1.into(), 2.into());
        // u = 1/2 has minimal polynomial x - 1/2; 4u = 2
        let (h, c) = integral_rescaling(&[-half.clone(), BigRational::from_integer(1.into())]);
        assert_eq!(c, BigInt::from(2));
        assert_eq!(h, p("x - 2"));
        // x^2 - 1/8: c = 2 gives x^2 - 2
        let eighth = BigRational::new(1.into(), 8.into());
        let (h, _) = integral_rescaling(&[
            -eighth,
            BigRational::zero(),
            BigRational::from_integer(1.into()),
        ]);
        assert_eq!(h, p("x^2 - 2"));
    }
}
