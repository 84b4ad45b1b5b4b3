//! Exact arithmetic in `Q[x]/(f)` and the norm form of a power basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// `Q(alpha)` with `alpha` a root of a monic irreducible integer polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    degree: usize,
}

/// Coordinates in the power basis `1, alpha, ..., alpha^(d-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NfElement {
    coeffs: Vec<BigRational>,
}

impl NfElement {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl NumberField {
    /// Requires `f` monic; irreducibility is checked exactly up to degree 4
    /// and is the caller's responsibility beyond.
    pub fn new(poly: IntPoly) -> Result<Self> {
        let degree = poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidInput("defining polynomial must be nonconstant".into()))?;
        if !poly.is_monic() {
            return Err(Error::InvalidInput(format!("{poly} is not monic")));
        }
        if degree <= 4 && !poly.is_irreducible_small()? {
            return Err(Error::InvalidInput(format!("{poly} is reducible")));
        }
        Ok(NumberField { poly, degree })
    }

    /// The field `Q`, as `Q[x]/(x)`.
    pub fn rationals() -> Self {
        NumberField {
            poly: IntPoly::x(),
            degree: 1,
        }
    }

    pub fn polynomial(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn element(&self, coeffs: Vec<BigRational>) -> Result<NfElement> {
        if coeffs.len() > self.degree {
            return Err(Error::InvalidInput(format!(
                "{} coordinates for a degree {} field",
                coeffs.len(),
                self.degree
            )));
        }
        let mut coeffs = coeffs;
        coeffs.resize(self.degree, BigRational::zero());
        Ok(NfElement { coeffs })
    }

    pub fn from_rational(&self, r: BigRational) -> NfElement {
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[0] = r;
        NfElement { coeffs }
    }

    pub fn from_int(&self, n: i64) -> NfElement {
        self.from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(&self) -> NfElement {
        self.from_int(0)
    }

    pub fn one(&self) -> NfElement {
        self.from_int(1)
    }

    /// The class of `x`.
    pub fn generator(&self) -> NfElement {
        if self.degree == 1 {
            let root = -self.poly.coeff(0);
            return self.from_rational(BigRational::from_integer(root));
        }
        let mut coeffs = vec![BigRational::zero(); self.degree];
        coeffs[1] = BigRational::one();
        NfElement { coeffs }
    }

    pub fn add(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &NfElement, b: &NfElement) -> NfElement {
        NfElement {
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn neg(&self, a: &NfElement) -> NfElement {
        NfElement {
            coeffs: a.coeffs.iter().map(|x| -x).collect(),
        }
    }

    pub fn scale(&self, a: &NfElement, c: &BigRational) -> NfElement {
        NfElement {
            coeffs: a.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Reduces a coefficient vector of any length modulo `f`.
    fn reduce(&self, mut c: Vec<BigRational>) -> NfElement {
        let d = self.degree;
        let f: Vec<BigRational> = self
            .poly
            .coeffs()
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for i in (d..c.len()).rev() {
            let lead = std::mem::take(&mut c[i]);
            if lead.is_zero() {
                continue;
            }
            for j in 0..d {
                let t = &lead * &f[j];
                c[i - d + j] -= t;
            }
        }
        c.truncate(d);
        c.resize(d, BigRational::zero());
        NfElement { coeffs: c }
    }

    pub fn mul(&self, a: &NfElement, b: &NfElement) -> NfElement {
        let d = self.degree;
        let mut c = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        self.reduce(c)
    }

    pub fn pow(&self, a: &NfElement, e: u32) -> NfElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of multiplication by `a`; column `j` holds `a * alpha^j`.
    pub fn mult_matrix(&self, a: &NfElement) -> Vec<Vec<BigRational>> {
        let d = self.degree;
        let mut cols = Vec::with_capacity(d);
        let mut basis = self.one();
        let alpha = self.generator();
        for _ in 0..d {
            cols.push(self.mul(a, &basis).coeffs);
            basis = self.mul(&basis, &alpha);
        }
        (0..d).map(|r| (0..d).map(|c| cols[c][r].clone()).collect()).collect()
    }

    pub fn norm(&self, a: &NfElement) -> BigRational {
        rational_det(self.mult_matrix(a))
    }

    pub fn inv(&self, a: &NfElement) -> Result<NfElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rhs = vec![BigRational::zero(); self.degree];
        rhs[0] = BigRational::one();
        let x = solve(self.mult_matrix(a), rhs)?;
        Ok(NfElement { coeffs: x })
    }

    pub fn div(&self, a: &NfElement, b: &NfElement) -> Result<NfElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Monic minimal polynomial over `Q`, constant term first.
    pub fn minimal_polynomial(&self, a: &NfElement) -> Vec<BigRational> {
        // first linear dependency among 1, a, a^2, ...
        let d = self.degree;
        let mut powers: Vec<Vec<BigRational>> = vec![self.one().coeffs];
        let mut cur = self.one();
        for _ in 1..=d {
            cur = self.mul(&cur, a);
            // a^n as a combination of the lower powers, if it is one
            let m: Vec<Vec<BigRational>> = (0..d)
                .map(|r| powers.iter().map(|c| c[r].clone()).collect())
                .collect();
            if let Some(y) = solve_consistent(m, cur.coeffs.clone()) {
                let mut out: Vec<BigRational> = y.into_iter().map(|v| -v).collect();
                out.push(BigRational::one());
                return out;
            }
            powers.push(cur.coeffs.clone());
        }
        unreachable!("an element of a degree-d field satisfies a polynomial of degree <= d")
    }

    pub fn format(&self, a: &NfElement) -> String {
        format_rational_poly(&a.coeffs, "a")
    }
}

/// Text like `3/2*a^2 - a + 1`.
pub fn format_rational_poly(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        let p = m[k][k].clone();
        det *= &p;
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] / &p;
            for c in k..n {
                let t = &factor * &m[k][c];
                m[r][c] -= t;
            }
        }
    }
    det
}

/// Solves a square nonsingular system.
fn solve(m: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Result<Vec<BigRational>> {
    solve_consistent(m, rhs).ok_or(Error::DivisionByZero)
}

/// Solves `m y = rhs` (m is rows x cols, full column rank expected);
/// `None` when inconsistent or underdetermined.
fn solve_consistent(m: Vec<Vec<BigRational>>, rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> = m
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(piv) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
            return None;
        };
        a.swap(piv, pivot_row);
        let p = a[pivot_row][c].clone();
        for x in a[pivot_row].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                for k in 0..=cols {
                    let t = &factor * &a[pivot_row][k];
                    a[r][k] -= t;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some(pivots.into_iter().map(|r| a[r][cols].clone()).collect())
}

// ---------------------------------------------------------------------------
// Norm forms over commutative rings containing Q

/// The ring operations needed to expand a determinant.
pub trait NormRing: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: &BigRational) -> Self;
}

impl NormRing for BigRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: &BigRational) -> Self {
        self * c
    }
}

/// Leibniz expansion; fine for the small sizes used here.
pub fn leibniz_det<R: NormRing>(m: &[Vec<R>]) -> R {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc: Option<R> = None;
    let mut sign_negative = false;
    // Heap's algorithm tracks the permutation sign by transposition count
    let mut c = vec![0usize; n];
    let term = |perm: &[usize], negative: bool, acc: &mut Option<R>| {
        let mut prod = m[0][perm[0]].clone();
        for r in 1..n {
            prod = prod.mul(&m[r][perm[r]]);
        }
        *acc = Some(match acc.take() {
            None if negative => prod.scale(&-BigRational::one()),
            None => prod,
            Some(a) if negative => a.sub(&prod),
            Some(a) => a.add(&prod),
        });
    };
    term(&perm, sign_negative, &mut acc);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            sign_negative = !sign_negative;
            term(&perm, sign_negative, &mut acc);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    acc.expect("nonempty matrix")
}

/// `N(sum_i x_i alpha^i)`: the determinant of multiplication by
/// `beta = sum x_i alpha^i` on the power basis of `Q[x]/(f)`.
pub fn norm_form_eval<R: NormRing>(f: &IntPoly, x: &[R]) -> Result<R> {
    let d = f
        .degree()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidInput("defining polynomial must be nonconstant".into()))?;
    if !f.is_monic() {
        return Err(Error::InvalidInput(format!("{f} is not monic")));
    }
    if x.len() != d {
        return Err(Error::InvalidInput(format!("{} coordinates for degree {d}", x.len())));
    }
    if d > 8 {
        return Err(Error::Unsupported(format!("norm form of degree {d} > 8")));
    }
    // alpha^k mod f for k < 2d - 1, skipping the irreducibility check
    let field = NumberField {
        poly: f.clone(),
        degree: d,
    };
    let alpha = field.generator();
    let mut powers = vec![field.one()];
    for k in 1..(2 * d - 1) {
        let next = field.mul(&powers[k - 1], &alpha);
        powers.push(next);
    }
    // M[r][c] = sum_i x_i * coeff_r(alpha^(i + c))
    let m: Vec<Vec<R>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let mut entry = x[0].scale(&powers[c].coeffs[r]);
                    for (i, xi) in x.iter().enumerate().skip(1) {
                        entry = entry.add(&xi.scale(&powers[i + c].coeffs[r]));
                    }
                    entry
                })
                .collect()
        })
        .collect();
    Ok(leibniz_det(&m))
}

/// Polynomial in `x1, ..., xn` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The variable `x_(i+1)`.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::from_terms(nvars, vec![(e, BigRational::one())])
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, BigRational)>) -> Self {
        let mut out = Self::zero(nvars);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        let entry = self.terms.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(x)
                    .fold(c.clone(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k as usize))
            })
            .sum()
    }
}

impl NormRing for MPoly {
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // total degree descending, then lexicographic descending
        let mut terms: Vec<(&Vec<u32>, &BigRational)> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| {
                    if k == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{k}", v + 1)
                    }
                })
                .collect();
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ip(s: &str) -> IntPoly {
        s.parse().unwrap()
    }

    #[test]
    fn cubic_norm_form_symbolic() {
        let f = ip("x^3 - 2");
        let vars: Vec<MPoly> = (0..3).map(|i| MPoly::var(i, 3)).collect();
        let n = norm_form_eval(&f, &vars).unwrap();
        let want = MPoly::from_terms(
            3,
            vec![
                (vec![3, 0, 0], q(1, 1)),
                (vec![0, 3, 0], q(2, 1)),
                (vec![0, 0, 3], q(4, 1)),
                (vec![1, 1, 1], q(-6, 1)),
            ],
        );
        assert_eq!(n, want);
        assert_eq!(n.to_string(), "x1^3 - 6*x1*x2*x3 + 2*x2^3 + 4*x3^3");
    }

    #[test]
    fn quadratic_norm_form() {
        let vars: Vec<MPoly> = (0..2).map(|i| MPoly::var(i, 2)).collect();
        let n = norm_form_eval(&ip("x^2 - 2"), &vars).unwrap();
        assert_eq!(n.to_string(), "x1^2 - 2*x2^2");
    }

    #[test]
    fn norm_of_one() {
        for f in ["x^3 - 2", "x^4 - x - 1", "x^5 - x - 1", "x"] {
            let f = ip(f);
            let d = f.degree().unwrap();
            let mut x = vec![q(0, 1); d];
            x[0] = q(1, 1);
            assert_eq!(norm_form_eval(&f, &x).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn norm_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in ["x^3 - 2", "x^3 - x - 1", "x^4 - 2"] {
            let k = NumberField::new(ip(f)).unwrap();
            let d = k.degree();
            for _ in 0..100 {
                let mut rand_elt = || {
                    let c: Vec<BigRational> = (0..d)
                        .map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                        .collect();
                    k.element(c).unwrap()
                };
                let (b, g) = (rand_elt(), rand_elt());
                let prod = k.mul(&b, &g);
                let nb = norm_form_eval(k.polynomial(), b.coeffs()).unwrap();
                let ng = norm_form_eval(k.polynomial(), g.coeffs()).unwrap();
                let np = norm_form_eval(k.polynomial(), prod.coeffs()).unwrap();
                assert_eq!(&nb * &ng, np);
                // Gaussian-elimination determinant as a second opinion
                assert_eq!(k.norm(&b), nb);
            }
        }
    }

    #[test]
    fn inverse_and_minimal_polynomial() {
        let k = NumberField::new(ip("x^2 - 2")).unwrap();
        let a = k.generator();
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.minimal_polynomial(&a), vec![q(-2, 1), q(0, 1), q(1, 1)]);
        assert_eq!(k.minimal_polynomial(&k.from_int(3)), vec![q(-3, 1), q(1, 1)]);
        assert!(NumberField::new(ip("x^4 + 4")).is_err());
    }

    #[test]
    fn anisotropy_spot_check() {
        // no nonzero zero of the x^3 - x - 1 norm form in a small box
        let f = ip("x^3 - x - 1");
        let vals: Vec<BigRational> = (-4..=4)
            .flat_map(|n| (1..=3).map(move |d| q(n, d)))
            .collect();
        for a in &vals {
            for b in &vals {
                for c in &vals {
                    if a.is_zero() && b.is_zero() && c.is_zero() {
                        continue;
                    }
                    let x = [a.clone(), b.clone(), c.clone()];
                    assert!(!norm_form_eval(&f, &x).unwrap().is_zero());
                }
            }
        }
    }
}
