//! Dense integer polynomials and the shared polynomial text format.
//!
//! Two spellings are accepted everywhere a polynomial is read:
//! `"x^4 - 2"` and the dense constant-first list `"[-2, 0, 0, 0, 1]"`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

/// Polynomial with integer coefficients, stored constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// `f(x^2)`.
    pub fn compose_square(&self) -> Self {
        let mut out = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Self::new(out)
    }

    /// Resultant `Res(self, other)` as the Sylvester determinant.
    pub fn resultant(&self, other: &Self) -> BigInt {
        let (Some(m), Some(n)) = (self.degree(), other.degree()) else {
            return BigInt::zero();
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        for r in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                rows[r][r + j] = c.clone();
            }
        }
        for r in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + r][r + j] = c.clone();
            }
        }
        bareiss_determinant(rows)
    }

    /// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`; degree one gives 1.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = match self.degree() {
            None | Some(0) => {
                return Err(Error::InvalidInput(
                    "discriminant of a constant polynomial".into(),
                ))
            }
            Some(n) => n,
        };
        if n == 1 {
            return Ok(BigInt::one());
        }
        let res = self.resultant(&self.derivative());
        let sign = BigInt::from(if (n * (n - 1) / 2) % 2 == 0 { 1 } else { -1 });
        let (q, r) = (res * sign).div_rem(&self.leading());
        if !r.is_zero() {
            return Err(Error::InternalContradiction(
                "resultant not divisible by leading coefficient".into(),
            ));
        }
        Ok(q)
    }

    /// Rational roots of a nonzero polynomial, sorted, without multiplicity.
    pub fn rational_roots(&self) -> Result<Vec<num_rational::BigRational>> {
        use num_rational::BigRational;
        if self.is_zero() {
            return Err(Error::InvalidInput("roots of the zero polynomial".into()));
        }
        let mut roots = Vec::new();
        // strip factors of x
        let shift = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            roots.push(BigRational::zero());
        }
        let core = Self::new(self.coeffs[shift..].to_vec());
        if core.degree().unwrap_or(0) == 0 {
            return Ok(roots);
        }
        let nums = signed_divisors(&core.coeffs[0])?;
        let dens: Vec<BigInt> = signed_divisors(&core.leading())?
            .into_iter()
            .filter(|d| d.is_positive())
            .collect();
        for num in &nums {
            for den in &dens {
                if !num.gcd(den).is_one() {
                    continue;
                }
                // den^n f(num/den) = sum c_i num^i den^(n-i)
                let n = core.coeffs.len() - 1;
                let mut acc = BigInt::zero();
                for (i, c) in core.coeffs.iter().enumerate() {
                    acc += c * num.pow(i as u32) * den.pow((n - i) as u32);
                }
                if acc.is_zero() {
                    roots.push(BigRational::new(num.clone(), den.clone()));
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }

    /// Exact irreducibility over the rationals for monic polynomials of degree
    /// at most four: no rational root, and for quartics no splitting into two
    /// monic integer quadratics (Gauss's lemma makes integer factors enough).
    pub fn is_irreducible_small(&self) -> Result<bool> {
        let d = self
            .degree()
            .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
        if !self.is_monic() {
            return Err(Error::Unsupported(
                "irreducibility test needs a monic polynomial".into(),
            ));
        }
        if d > 4 {
            return Err(Error::Unsupported(format!(
                "exact irreducibility implemented for degree <= 4, got {d}"
            )));
        }
        if d == 0 {
            return Ok(false);
        }
        if d == 1 {
            return Ok(true);
        }
        if !self.rational_roots()?.is_empty() {
            return Ok(false);
        }
        if d < 4 {
            return Ok(true);
        }
        Ok(self.quadratic_split().is_none())
    }

    /// For a monic quartic without rational roots, a factorization
    /// `(x^2 + a x + b)(x^2 + c x + d)` over the integers if one exists.
    pub fn quadratic_split(&self) -> Option<(IntPoly, IntPoly)> {
        if self.degree() != Some(4) || !self.is_monic() {
            return None;
        }
        let e0 = self.coeff(0);
        let e1 = self.coeff(1);
        let e2 = self.coeff(2);
        let e3 = self.coeff(3);
        if e0.is_zero() {
            return None;
        }
        for b in signed_divisors(&e0).ok()? {
            let d = &e0 / &b;
            // a^2 - e3 a + (e2 - b - d) = 0
            let disc = &e3 * &e3 - BigInt::from(4) * (&e2 - &b - &d);
            if disc.is_negative() {
                continue;
            }
            let s = disc.sqrt();
            if &s * &s != disc {
                continue;
            }
            for root in [&e3 + &s, &e3 - &s] {
                if root.is_odd() {
                    continue;
                }
                let a: BigInt = root / 2;
                let c = &e3 - &a;
                if &a * &d + &b * &c == e1 {
                    return Some((
                        IntPoly::new(vec![b.clone(), a.clone(), BigInt::one()]),
                        IntPoly::new(vec![d.clone(), c, BigInt::one()]),
                    ));
                }
            }
        }
        None
    }
}

/// All positive and negative divisors of a nonzero integer.
pub fn signed_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    if n.is_zero() {
        return Err(Error::InvalidInput("divisors of 0".into()));
    }
    let mag: BigUint = n.magnitude().clone();
    let fac = arith::factorize(&mag)?;
    let mut divs = vec![BigUint::one()];
    for (p, e) in fac.factors() {
        let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
        for d in &divs {
            let mut pk = BigUint::one();
            for _ in 0..=*e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    let mut out: Vec<BigInt> = divs
        .into_iter()
        .flat_map(|d| {
            let d = BigInt::from(d);
            [d.clone(), -d]
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Fraction-free Gaussian elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// True iff the rational `r` is the square of a rational.
pub fn is_rational_square(r: &num_rational::BigRational) -> bool {
    if r.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let s = n.sqrt();
        &s * &s == *n
    };
    is_sq(r.numer()) && is_sq(r.denom())
}

pub fn is_integer_square(n: &BigInt) -> bool {
    !n.is_negative() && {
        let s = n.sqrt();
        &s * &s == *n
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.coeffs, "x")
    }
}

/// Writes a constant-first coefficient list as `a x^n + ... + c`.
pub(crate) fn write_poly<T>(f: &mut fmt::Formatter<'_>, coeffs: &[T], var: &str) -> fmt::Result
where
    T: fmt::Display + Zero + One + PartialEq + Signed + Clone,
{
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let show_coeff = i == 0 || !mag.is_one();
        if show_coeff {
            write!(f, "{mag}")?;
            if i > 0 {
                write!(f, "*")?;
            }
        }
        match i {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn normalize_minus(s: &str) -> String {
    s.replace(['\u{2212}', '\u{2013}'], "-")
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = normalize_minus(s.trim());
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unterminated list in {s:?}")))?;
            let coeffs = body
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(IntPoly::new(coeffs));
        }
        let terms = parse_univariate_terms(&s)?;
        let deg = terms.iter().map(|(_, e)| *e).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); deg as usize + 1];
        for (c, e) in terms {
            coeffs[e as usize] += c;
        }
        Ok(IntPoly::new(coeffs))
    }
}

/// Splits `"3x^2 - x + 1"` into signed terms `(coefficient, exponent)`.
/// Any single alphabetic variable name is accepted, used consistently.
fn parse_univariate_terms(s: &str) -> Result<Vec<(BigInt, u32)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut var: Option<char> = None;
    let mut out = Vec::new();
    for term in split_signed_terms(&compact)? {
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        let var_pos = body.find(|c: char| c.is_alphabetic());
        let (coeff, exp) = match var_pos {
            None => (parse_int(body)?, 0),
            Some(pos) => {
                let v = body[pos..].chars().next().unwrap_or('x');
                match var {
                    None => var = Some(v),
                    Some(existing) if existing != v => {
                        return Err(Error::Parse(format!(
                            "mixed variables {existing:?} and {v:?} in {s:?}"
                        )))
                    }
                    _ => {}
                }
                let coeff_part = body[..pos].trim_end_matches('*');
                let coeff = if coeff_part.is_empty() {
                    BigInt::one()
                } else {
                    parse_int(coeff_part)?
                };
                let rest = &body[pos + v.len_utf8()..];
                let exp = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?
                } else {
                    return Err(Error::Parse(format!("unexpected {rest:?} in {s:?}")));
                };
                (coeff, exp)
            }
        };
        out.push((if negative { -coeff } else { coeff }, exp));
    }
    Ok(out)
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
}

/// Splits a whitespace-free expression at top-level `+`/`-` signs, keeping
/// the sign attached to the following term. A sign right after `^` is part
/// of an exponent.
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<&str>> {
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'(' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    if terms.iter().any(|t| t.is_empty()) {
        return Err(Error::Parse(format!("malformed expression {s:?}")));
    }
    Ok(terms)
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Reads a small coefficient as `i64`, for contexts that need machine ints.
pub fn to_i64(c: &BigInt) -> Result<i64> {
    c.to_i64()
        .ok_or_else(|| Error::Unsupported(format!("coefficient {c} exceeds 64 bits")))
}
