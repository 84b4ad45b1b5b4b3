//! Norm-equation certificates over `Q((t))^ab` and tame quaternion symbols.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::galois::{self, Verdict};
use super::laurent::LaurentSeries;
use super::number_field::{format_rational_poly, NfElement, NumberField};
use crate::certificate::{Certificate, CertificateKind, Condition, Premise};
use crate::error::{Error, Result};
use crate::poly::{self, IntPoly};

/// Default prime bound for the cycle-type scan behind a norm certificate.
pub const DEFAULT_NORM_SCAN_BOUND: u64 = 500;

/// Certificate that `N(X_1, ..., X_d) = t Z^d`, with `N` the norm form of
/// `Q[x]/(f)` and `t` of valuation `m`, has no points over `Q((t))^ab`.
/// Issued when the scan certifies the Galois group of `f` is `S_d` and `d`
/// does not divide `m`.
pub fn norm_equation_certificate(f: &IntPoly, m: i64, scan_bound: u64) -> Result<Option<Certificate>> {
    let d = f.degree().unwrap_or(0);
    if d < 3 {
        return Err(Error::HypothesisViolation(format!(
            "norm certificates need degree >= 3, got {d}"
        )));
    }
    let verdict = galois::sn_certificate(f, scan_bound)?;
    if verdict.verdict != Verdict::CertifiedSymmetric || m % d as i64 == 0 {
        return Ok(None);
    }
    let evidence: Vec<(u64, Vec<u32>)> = verdict
        .evidence
        .iter()
        .map(|(p, c)| (*p, c.0.clone()))
        .collect();
    let conditions = vec![
        Condition::new(
            "cycle_types",
            format!("Frobenius cycle types of {f} at good primes up to {scan_bound}"),
            Premise::CycleTypes {
                polynomial: f.clone(),
                evidence: evidence.clone(),
            },
        ),
        Condition::new(
            "symmetric_group",
            format!("the cycle types contain a {d}-cycle, a long prime cycle and a transposition power, so the group is S_{d}"),
            Premise::SymmetricCriteria {
                degree: d as u32,
                cycle_types: evidence.into_iter().map(|(_, c)| c).collect(),
            },
        ),
        Condition::new(
            "valuation_obstruction",
            format!("{d} does not divide {m}"),
            Premise::NotDivisible {
                divisor: d as i64,
                value: m,
            },
        ),
    ];
    let mut lemma_chain = vec![
        format!("Let K = Q[x]/({f}) and F = Q((t)). The Galois closure of K has group S_{d}, which is not abelian."),
        format!("The commutator subgroup A_{d} acts transitively on the {d} roots, so K is linearly disjoint from every abelian extension of Q, and K(t) = K tensor F stays a field over F^ab."),
        "Hence the norm form has no nonzero zero over F^ab, which rules out points with Z = 0.".into(),
        format!("F^ab is identified with its completion Q^ab((t^(1/2))), with uniformizer t^(1/2), so v(t) = 2 and here the right side has valuation {m}."),
        format!("L = K tensor F^ab is unramified over F^ab, so every norm from L has valuation divisible by {d}."),
        format!("If Z is nonzero then v(t Z^{d}) = {m} + {d} v(Z), which is not divisible by {d}, so no point has Z nonzero."),
    ];
    if d == 4 {
        lemma_chain.push(
            "With d = 4 the construction gives a genus 3 curve over F with no F^ab-point.".into(),
        );
    }
    Ok(Some(Certificate {
        kind: CertificateKind::NormEquation,
        polynomial: Some(f.clone()),
        rhs_valuation: Some(m),
        scan_bound: Some(scan_bound),
        conditions,
        lemma_chain,
        ..Certificate::empty(CertificateKind::NormEquation)
    }))
}

/// Where squareness of a tame symbol is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueField {
    Rationals,
    AbelianClosure,
}

impl std::str::FromStr for ResidueField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "q" | "rationals" => Ok(ResidueField::Rationals),
            "qab" | "q^ab" | "abelian" | "abelian_closure" => Ok(ResidueField::AbelianClosure),
            _ => Err(Error::Parse(format!("unknown residue field {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameSymbolReport {
    pub a: String,
    pub b: String,
    pub valuation_a: i64,
    pub valuation_b: i64,
    pub residue_field: ResidueField,
    /// The residue class `(-1)^(v(a) v(b)) a^v(b) / b^v(a)`.
    pub representative: String,
    pub minimal_polynomial: String,
    /// Polynomial whose roots are square roots of a rescaled representative.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_root_polynomial: Option<IntPoly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_root_group: Option<galois::QuarticGroup>,
    pub is_square: bool,
    /// Whether the quaternion algebra `(a, b)` is nonsplit over the
    /// completion with this residue field.
    pub nontrivial: bool,
    pub notes: Vec<String>,
}

/// Tame symbol of two nonzero Laurent series over the same coefficient field,
/// and whether the associated quaternion algebra is split.
pub fn tame_symbol(a: &LaurentSeries, b: &LaurentSeries, residue: ResidueField) -> Result<TameSymbolReport> {
    if a.field().polynomial() != b.field().polynomial() || a.ramification() != b.ramification() {
        return Err(Error::InvalidInput("series over different fields".into()));
    }
    let va = a.valuation()?;
    let vb = b.valuation()?;
    let field: Arc<NumberField> = a.field().clone();
    let sign = if (va * vb) % 2 == 0 { 1 } else { -1 };
    let ua = field.pow_signed(&a.leading_coefficient()?, vb)?;
    let ub = field.pow_signed(&b.leading_coefficient()?, va)?;
    let u = field.scale(&field.div(&ua, &ub)?, &num_rational::BigRational::from_integer(sign.into()));
    let minpoly = field.minimal_polynomial(&u);
    let mut report = TameSymbolReport {
        a: a.to_string(),
        b: b.to_string(),
        valuation_a: va,
        valuation_b: vb,
        residue_field: residue,
        representative: field.format(&u),
        minimal_polynomial: format_rational_poly(&minpoly, "x"),
        square_root_polynomial: None,
        square_root_group: None,
        is_square: false,
        nontrivial: false,
        notes: Vec::new(),
    };
    report.is_square = match residue {
        ResidueField::Rationals => {
            let r = u.as_rational().ok_or_else(|| {
                Error::InvalidInput(format!(
                    "representative {} is not rational; use the abelian residue field",
                    report.representative
                ))
            })?;
            poly::is_rational_square(&r)
        }
        ResidueField::AbelianClosure => {
            if !galois::is_abelian_extension(field.polynomial())? {
                return Err(Error::HypothesisViolation(format!(
                    "coefficient field Q[x]/({}) is not abelian",
                    field.polynomial()
                )));
            }
            abelian_square(&minpoly, &mut report)?
        }
    };
    report.nontrivial = !report.is_square;
    if report.nontrivial && residue == ResidueField::AbelianClosure {
        report.notes.push(
            "The quaternion algebra is nonsplit over the completion, so its class in the Brauer group of F^ab is nontrivial.".into(),
        );
        report.notes.push(
            "Its Weil restriction to F gives a fourfold without F^ab-points (recorded, not computed).".into(),
        );
    }
    Ok(report)
}

fn abelian_square(minpoly: &[num_rational::BigRational], report: &mut TameSymbolReport) -> Result<bool> {
    let (g, c) = galois::integral_rescaling(minpoly);
    let h = g.compose_square();
    if !c.is_one() {
        report
            .notes
            .push(format!("representative rescaled by the square {}", &c * &c));
    }
    report.square_root_polynomial = Some(h.clone());
    if h.degree().unwrap_or(0) > 4 {
        return Err(Error::Unsupported(format!(
            "square-root field of degree {} exceeds 4",
            h.degree().unwrap_or(0)
        )));
    }
    if h.coeff(0).is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !h.is_irreducible_small()? {
        report
            .notes
            .push(format!("{h} is reducible, so the square root lies in the abelian field generated by the representative"));
        return Ok(true);
    }
    if h.degree() == Some(4) {
        report.square_root_group = Some(galois::quartic_galois_group(&h)?);
    }
    let abelian = galois::is_abelian_extension(&h)?;
    report.notes.push(format!(
        "{h} is irreducible and its splitting field is {}abelian",
        if abelian { "" } else { "not " }
    ));
    Ok(abelian)
}

/// `sqrt(2)` over `Q(sqrt 2)` against the uniformizer `t^(1/2)`.
pub fn sqrt2_quaternion_example() -> Result<TameSymbolReport> {
    let k = Arc::new(NumberField::new(IntPoly::from_i64(&[-2, 0, 1]))?);
    let sqrt2 = k.generator();
    let a = LaurentSeries::constant(k.clone(), 2, sqrt2)?;
    let b = LaurentSeries::uniformizer(k, 2)?;
    tame_symbol(&a, &b, ResidueField::AbelianClosure)
}

impl NumberField {
    /// `a^e` for any integer `e`.
    pub fn pow_signed(&self, a: &NfElement, e: i64) -> Result<NfElement> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Ok(self.pow(&base, e.unsigned_abs() as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn norm_certificates() {
        let c = norm_equation_certificate(&p("x^3 - x - 1"), 2, DEFAULT_NORM_SCAN_BOUND)
            .unwrap()
            .unwrap();
        c.verify().unwrap();
        let c4 = norm_equation_certificate(&p("x^4 - x - 1"), 2, DEFAULT_NORM_SCAN_BOUND)
            .unwrap()
            .unwrap();
        c4.verify().unwrap();
        assert!(c4.lemma_chain.iter().any(|l| l.contains("genus 3")));
        assert!(norm_equation_certificate(&p("x^3 - x - 1"), 3, DEFAULT_NORM_SCAN_BOUND)
            .unwrap()
            .is_none());
        assert!(norm_equation_certificate(&p("x^3 - 3*x - 1"), 2, DEFAULT_NORM_SCAN_BOUND)
            .unwrap()
            .is_none());
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn tampered_norm_certificate_fails() {
        let mut c = norm_equation_certificate(&p("x^3 - x - 1"), 2, 100).unwrap().unwrap();
        c.rhs_valuation = Some(3);
        assert!(c.verify().is_err());
    }

    #[test]
    fn sqrt2_symbol_is_nontrivial() {
        let r = sqrt2_quaternion_example().unwrap();
        assert_eq!(r.representative, "a");
        assert_eq!(r.square_root_polynomial, Some(p("x^4 - 2")));
        assert_eq!(r.square_root_group, Some(galois::QuarticGroup::D4));
        assert!(r.nontrivial);
    }

    #[test]
    fn rational_symbols() {
        let four: LaurentSeries = "4".parse().unwrap();
        let t: LaurentSeries = "t".parse().unwrap();
        let r = tame_symbol(&four, &t, ResidueField::Rationals).unwrap();
        assert_eq!(r.representative, "4");
        assert!(r.is_square && !r.nontrivial);
        let r = tame_symbol(&t, &t, ResidueField::Rationals).unwrap();
        assert_eq!(r.representative, "-1");
        assert!(r.nontrivial);
        // -1 becomes a square once i is available
        let r = tame_symbol(&t, &t, ResidueField::AbelianClosure).unwrap();
        assert!(r.is_square);
        let zero: LaurentSeries = "t - t".parse().unwrap();
        assert!(tame_symbol(&zero, &t, ResidueField::Rationals).is_err());
    }
}
