//! Truncated Laurent series over a number field, in a uniformizer
//! `u = t^(1/r)`. Exponents and valuations are counted in powers of `u`,
//! so `v(t) = r`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::number_field::{NfElement, NormRing, NumberField};
use crate::error::{Error, Result};

/// Relative precision given to inverses of exact series.
pub const DEFAULT_TRUNCATION: i64 = 40;

/// `sum_{n >= val} c_n u^n + O(u^prec)`; `prec = None` means exact.
#[derive(Debug, Clone)]
pub struct LaurentSeries {
    field: Arc<NumberField>,
    ramification: u32,
    val: i64,
    coeffs: Vec<NfElement>,
    prec: Option<i64>,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.field.polynomial() == other.field.polynomial()
            && self.ramification == other.ramification
            && self.prec == other.prec
            && self.coeffs == other.coeffs
            && (self.coeffs.is_empty() || self.val == other.val)
    }
}

impl LaurentSeries {
    /// `sum_i coeffs[i] u^(val + i) + O(u^prec)`.
    pub fn new(
        field: Arc<NumberField>,
        ramification: u32,
        val: i64,
        coeffs: Vec<NfElement>,
        prec: Option<i64>,
    ) -> Result<Self> {
        if ramification == 0 {
            return Err(Error::InvalidInput("ramification must be >= 1".into()));
        }
        if coeffs.iter().any(|c| c.coeffs().len() != field.degree()) {
            return Err(Error::InvalidInput("coefficient from another field".into()));
        }
        Ok(Self::normalized(field, ramification, val, coeffs, prec))
    }

    fn normalized(
        field: Arc<NumberField>,
        ramification: u32,
        mut val: i64,
        mut coeffs: Vec<NfElement>,
        prec: Option<i64>,
    ) -> Self {
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead_zeros);
        val += lead_zeros as i64;
        if let Some(p) = prec {
            let keep = (p - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last().is_some_and(NfElement::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            val = prec.unwrap_or(0);
        }
        LaurentSeries {
            field,
            ramification,
            val,
            coeffs,
            prec,
        }
    }

    /// The exact constant `c`.
    pub fn constant(field: Arc<NumberField>, ramification: u32, c: NfElement) -> Result<Self> {
        Self::new(field, ramification, 0, vec![c], None)
    }

    /// The exact monomial `c u^n`.
    pub fn monomial(field: Arc<NumberField>, ramification: u32, n: i64, c: NfElement) -> Result<Self> {
        Self::new(field, ramification, n, vec![c], None)
    }

    /// The uniformizer `u = t^(1/r)`.
    pub fn uniformizer(field: Arc<NumberField>, ramification: u32) -> Result<Self> {
        let one = field.one();
        Self::monomial(field, ramification, 1, one)
    }

    /// `t = u^r`.
    pub fn t(field: Arc<NumberField>, ramification: u32) -> Result<Self> {
        let one = field.one();
        Self::monomial(field, ramification, ramification as i64, one)
    }

    /// Exact series over `Q` with `r = 1` from `(exponent, value)` pairs.
    pub fn rational(terms: &[(i64, BigRational)], prec: Option<i64>) -> Self {
        let field = Arc::new(NumberField::rationals());
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(0);
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![field.zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            let i = (e - lo) as usize;
            coeffs[i] = field.add(&coeffs[i], &field.from_rational(c.clone()));
        }
        Self::normalized(field, 1, lo, coeffs, prec)
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    /// Valuation in powers of the uniformizer.
    pub fn valuation(&self) -> Result<i64> {
        match (self.coeffs.is_empty(), self.prec) {
            (false, _) => Ok(self.val),
            (true, None) => Err(Error::Undefined("valuation of zero".into())),
            (true, Some(p)) => Err(Error::TruncationExhausted(format!(
                "no nonzero coefficient below u^{p}"
            ))),
        }
    }

    pub fn leading_coefficient(&self) -> Result<NfElement> {
        self.valuation()?;
        Ok(self.coeffs[0].clone())
    }

    /// Coefficient of `u^n`; errors beyond the truncation.
    pub fn coefficient(&self, n: i64) -> Result<NfElement> {
        if self.prec.is_some_and(|p| n >= p) {
            return Err(Error::TruncationExhausted(format!("u^{n} is beyond the precision")));
        }
        if self.coeffs.is_empty() || n < self.val {
            return Ok(self.field.zero());
        }
        Ok(self
            .coeffs
            .get((n - self.val) as usize)
            .cloned()
            .unwrap_or_else(|| self.field.zero()))
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.field.polynomial() == other.field.polynomial()
                && self.ramification == other.ramification,
            "series over different fields"
        );
    }

    fn relative_precision(&self) -> Option<i64> {
        self.prec.map(|p| p - self.val)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let prec = match (self.prec, other.prec) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let f = &self.field;
        let lo = match (self.coeffs.is_empty(), other.coeffs.is_empty()) {
            (true, true) => return Self::normalized(f.clone(), self.ramification, 0, vec![], prec),
            (true, false) => other.val,
            (false, true) => self.val,
            (false, false) => self.val.min(other.val),
        };
        let top = |s: &Self| s.val + s.coeffs.len() as i64;
        let mut hi = top(self).max(top(other));
        if let Some(p) = prec {
            hi = hi.min(p);
        }
        fn get(s: &LaurentSeries, n: i64) -> Option<&NfElement> {
            if s.coeffs.is_empty() || n < s.val {
                None
            } else {
                s.coeffs.get((n - s.val) as usize)
            }
        }
        let coeffs = (lo..hi.max(lo))
            .map(|n| match (get(self, n), get(other, n)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => f.zero(),
            })
            .collect();
        Self::normalized(f.clone(), self.ramification, lo, coeffs, prec)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Self::normalized(self.field.clone(), self.ramification, self.val, coeffs, self.prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let f = &self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::normalized(f.clone(), self.ramification, 0, vec![], None);
        }
        let val = self.val + other.val;
        let rel = match (self.relative_precision(), other.relative_precision()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let full = self.coeffs.len() + other.coeffs.len();
        let len = match rel {
            Some(r) => (r.max(0) as usize).min(full),
            None => full.saturating_sub(1),
        };
        let mut coeffs = vec![f.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = f.add(&coeffs[i + j], &f.mul(a, b));
            }
        }
        Self::normalized(f.clone(), self.ramification, val, coeffs, rel.map(|r| val + r))
    }

    /// Multiplicative inverse; exact monomials invert exactly, other exact
    /// series get [`DEFAULT_TRUNCATION`] terms of relative precision.
    pub fn inv(&self) -> Result<Self> {
        if self.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = self.valuation()?;
        let f = &self.field;
        let rel = match self.relative_precision() {
            Some(r) => r,
            None if self.coeffs.len() == 1 => {
                let c = f.inv(&self.coeffs[0])?;
                return Ok(Self::normalized(f.clone(), self.ramification, -v, vec![c], None));
            }
            None => DEFAULT_TRUNCATION,
        };
        let a0_inv = f.inv(&self.coeffs[0])?;
        let mut b: Vec<NfElement> = Vec::with_capacity(rel as usize);
        b.push(a0_inv.clone());
        for n in 1..rel as usize {
            let mut s = f.zero();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                s = f.add(&s, &f.mul(&self.coeffs[k], &b[n - k]));
            }
            b.push(f.neg(&f.mul(&s, &a0_inv)));
        }
        Ok(Self::normalized(f.clone(), self.ramification, -v, b, Some(-v + rel)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let one = Self::constant(self.field.clone(), self.ramification, self.field.one())?;
        Ok((0..e.unsigned_abs()).fold(one, |acc, _| acc.mul(&base)))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.field.scale(x, c)).collect();
        Self::normalized(self.field.clone(), self.ramification, self.val, coeffs, self.prec)
    }

    fn format_coefficient(&self, c: &NfElement) -> String {
        match c.as_rational() {
            Some(r) => r.to_string(),
            None => format!("({})", self.field.format(c)),
        }
    }

    fn format_exponent(&self, n: i64) -> Option<String> {
        let r = self.ramification as i64;
        if n == 0 {
            return None;
        }
        if n % r == 0 {
            let k = n / r;
            return Some(if k == 1 { "t".into() } else { format!("t^{k}") });
        }
        let g = num_integer::gcd(n, r);
        Some(format!("t^({}/{})", n / g, r / g))
    }
}

impl NormRing for LaurentSeries {
    fn add(&self, other: &Self) -> Self {
        LaurentSeries::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        LaurentSeries::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        LaurentSeries::mul(self, other)
    }
    fn scale(&self, c: &BigRational) -> Self {
        LaurentSeries::scale(self, c)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.val + i as i64;
            let mut coeff = self.format_coefficient(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match self.format_exponent(n) {
                None => write!(f, "{coeff}")?,
                Some(m) if coeff == "1" => write!(f, "{m}")?,
                Some(m) => write!(f, "{coeff}*{m}")?,
            }
        }
        if let Some(p) = self.prec {
            let o = self.format_exponent(p).unwrap_or_else(|| "1".into());
            if first {
                write!(f, "O({o})")?;
            } else {
                write!(f, " + O({o})")?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for LaurentSeries {
    type Err = Error;

    /// Series over `Q` in `t`, like `"t^-1 + 2 + 3*t + O(t^40)"`; without an
    /// `O(...)` term the series is exact.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s
            .replace(['\u{2212}', '\u{2013}'], "-")
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        let mut terms = Vec::new();
        let mut prec = None;
        let parse_exp = |mono: &str| -> Result<i64> {
            match mono {
                "" => Ok(0),
                "t" => Ok(1),
                m => m
                    .strip_prefix("t^")
                    .map(|e| e.trim_matches(|c| c == '(' || c == ')'))
                    .and_then(|e| e.parse::<i64>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad monomial {m:?}"))),
            }
        };
        for term in crate::poly::split_signed_terms(&compact)? {
            if let Some(body) = term.strip_prefix('+').unwrap_or(term).strip_prefix("O(") {
                let inner = body
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unterminated {term:?}")))?;
                prec = Some(if inner == "1" { 0 } else { parse_exp(inner)? });
                continue;
            }
            let (neg, body) = match term.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let pos = body.find('t').unwrap_or(body.len());
            let coeff_text = body[..pos].trim_end_matches('*');
            let coeff = if coeff_text.is_empty() {
                BigRational::one()
            } else {
                coeff_text
                    .parse::<BigRational>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {coeff_text:?}")))?
            };
            let exp = parse_exp(&body[pos..])?;
            terms.push((exp, if neg { -coeff } else { coeff }));
        }
        if let Some(p) = prec {
            if terms.iter().any(|&(e, _)| e >= p) {
                return Err(Error::Parse(format!("term beyond O(t^{p})")));
            }
        }
        Ok(LaurentSeries::rational(&terms, prec))
    }
}

/// Rational number from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> LaurentSeries {
        text.parse().unwrap()
    }

    #[test]
    fn valuations() {
        let a = s("t^2").mul(&s("1 + t"));
        assert_eq!(a.valuation().unwrap(), 2);
        let q = s("t^3").div(&s("t")).unwrap();
        assert_eq!(q.valuation().unwrap(), 2);
        assert_eq!(q, s("t^2"));
    }

    #[test]
    fn geometric_series() {
        let one_plus_t = s("1 + t");
        let inv = one_plus_t.inv().unwrap();
        assert_eq!(inv.precision(), Some(DEFAULT_TRUNCATION));
        for n in 0..DEFAULT_TRUNCATION {
            let want = if n % 2 == 0 { rat(1) } else { rat(-1) };
            assert_eq!(inv.coefficient(n).unwrap().as_rational().unwrap(), want);
        }
        let prod = one_plus_t.mul(&inv);
        assert_eq!(prod.to_string(), format!("1 + O(t^{DEFAULT_TRUNCATION})"));
    }

    #[test]
    fn text_round_trip() {
        let x = s("t^-1 + 2 + 3*t + O(t^40)");
        assert_eq!(x.to_string(), "t^-1 + 2 + 3*t + O(t^40)");
        assert_eq!(x.valuation().unwrap(), -1);
        assert_eq!(s("-1/2*t^3 + t^5").to_string(), "-1/2*t^3 + t^5");
        assert!("t^50 + O(t^40)".parse::<LaurentSeries>().is_err());
    }

    #[test]
    fn half_uniformizer() {
        let q = Arc::new(NumberField::rationals());
        let t = LaurentSeries::t(q.clone(), 2).unwrap();
        assert_eq!(t.valuation().unwrap(), 2);
        let u = LaurentSeries::uniformizer(q, 2).unwrap();
        assert_eq!(u.mul(&u), t);
        assert_eq!(u.to_string(), "t^(1/2)");
    }

    #[test]
    fn zero_handling() {
        let z = s("t").sub(&s("t"));
        assert!(z.is_exact_zero());
        assert!(z.inv().is_err());
        let inexact = s("1 + O(t^3)").sub(&s("1"));
        assert!(matches!(inexact.valuation(), Err(Error::TruncationExhausted(_))));
    }

    fn series() -> impl Strategy<Value = LaurentSeries> {
        (
            -5i64..5,
            prop::collection::vec(-6i64..6, 1..8),
            prop::option::of(5i64..20),
            1i64..6,
        )
            .prop_filter_map("nonzero leading term", |(v, cs, prec, lead)| {
                let mut terms: Vec<(i64, BigRational)> = vec![(v, rat(lead))];
                for (i, c) in cs.into_iter().enumerate() {
                    terms.push((v + 1 + i as i64, rat(c)));
                }
                let prec = prec.map(|p| v + p);
                terms.retain(|(e, _)| prec.map_or(true, |p| *e < p));
                Some(LaurentSeries::rational(&terms, prec))
            })
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in series(), b in series()) {
            let va = a.valuation().unwrap();
            let vb = b.valuation().unwrap();
            prop_assert_eq!(a.mul(&b).valuation().unwrap(), va + vb);
        }

        #[test]
        fn ultrametric(a in series(), b in series()) {
            let va = a.valuation().unwrap();
            let vb = b.valuation().unwrap();
            let sum = a.add(&b);
            match sum.valuation() {
                Ok(v) => {
                    prop_assert!(v >= va.min(vb));
                    if va != vb {
                        prop_assert_eq!(v, va.min(vb));
                    }
                }
                Err(_) => prop_assert_eq!(va, vb),
            }
        }

        #[test]
        fn inverse_is_inverse(a in series()) {
            let prod = a.mul(&a.inv().unwrap());
            prop_assert_eq!(prod.valuation().unwrap(), 0);
            prop_assert_eq!(prod.leading_coefficient().unwrap().as_rational().unwrap(), rat(1));
            let p = prod.precision().unwrap_or(i64::MAX);
            for n in 1..p.min(30) {
                prop_assert!(prod.coefficient(n).unwrap().is_zero());
            }
        }
    }
}
