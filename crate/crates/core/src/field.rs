//! Prime fields, small extension fields, and polynomial data over `F_p`:
//! root counts, squarefreeness and Frobenius cycle types.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{self, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Extension fields up to this size get discrete-log tables.
const TABLE_LIMIT: u64 = 1 << 16;

// ---------------------------------------------------------------------------
// Polynomials over F_p

/// Polynomial over `F_p`, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::new(p, vec![c])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// Reduction of an integer polynomial modulo `p`.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().unwrap_or(0))
            .collect();
        Self::new(p, coeffs)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let inv = inv_mod_prime(divisor.leading(), self.p)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mul_mod(rem[i], inv, self.p);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = (rem[k] + self.p - mul_mod(c, b, self.p)) % self.p;
            }
        }
        rem.truncate(dd);
        Ok((Self::new(self.p, quot), Self::new(self.p, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        // leading coefficient is a unit since p is prime
        let inv = inv_mod_prime(self.leading(), self.p).unwrap_or(1);
        self.scale(inv)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap_or_else(|_| Self::zero(self.p));
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Result<Self> {
        let mut acc = Self::constant(self.p, 1).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Number of distinct roots in `F_p`: `deg gcd(f, x^p - x)`.
    pub fn count_distinct_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidInput("root count of the zero polynomial".into()));
        }
        if self.degree() == Some(0) {
            return Ok(0);
        }
        let x = Self::x(self.p);
        let xp = x.pow_mod(self.p, self)?;
        let g = self.gcd(&xp.sub(&x));
        Ok(g.degree().unwrap_or(0))
    }

    /// `gcd(f, f')` is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Rabin's irreducibility test for a monic polynomial.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(n) => n as u64,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Self::x(self.p);
        let frob_power = |k: u64| -> Result<Self> {
            let mut h = x.clone();
            for _ in 0..k {
                h = h.pow_mod(self.p, &f)?;
            }
            Ok(h)
        };
        if frob_power(n)?.sub(&x).rem(&f)? != Self::zero(self.p) {
            return Ok(false);
        }
        for (r, _) in arith::factorize_u64(n) {
            let h = frob_power(n / r)?;
            if f.gcd(&h.sub(&x)).degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Degrees of the irreducible factors of a monic squarefree polynomial,
    /// by distinct-degree factorization.
    pub fn distinct_degree_profile(&self) -> Result<Vec<u32>> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree { p: self.p });
        }
        let mut f = self.monic();
        let x = Self::x(self.p);
        let mut h = x.clone();
        let mut parts = Vec::new();
        let mut i = 1u32;
        while let Some(d) = f.degree() {
            if d < 2 * i as usize {
                if d > 0 {
                    parts.push(d as u32);
                }
                break;
            }
            h = h.pow_mod(self.p, &f)?;
            let g = f.gcd(&h.sub(&x));
            let gd = g.degree().unwrap_or(0);
            if gd > 0 {
                parts.extend(std::iter::repeat(i).take(gd / i as usize));
                f = f.div_rem(&g)?.0;
                h = h.rem(&f)?;
            }
            i += 1;
        }
        parts.sort_unstable();
        Ok(parts)
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp({self} mod {})", self.p)
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_int: Vec<BigInt> = self.coeffs.iter().map(|&c| BigInt::from(c)).collect();
        crate::poly::write_poly(f, &as_int, "x")
    }
}

pub fn inv_mod_prime(a: u64, p: u64) -> Result<u64> {
    let a = a % p;
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(pow_mod(a, p - 2, p))
}

/// Lexicographically first monic irreducible polynomial of degree `a` over
/// `F_p`, ordering by coefficients from `x^(a-1)` down to the constant.
pub fn find_irreducible(p: u64, a: u32) -> Result<PolyFp> {
    if !arith::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if a == 0 {
        return Err(Error::InvalidInput("degree must be >= 1".into()));
    }
    let count = p
        .checked_pow(a)
        .ok_or_else(|| Error::Unsupported(format!("F_{p}^{a} too large")))?;
    for n in 0..count {
        let mut coeffs = Vec::with_capacity(a as usize + 1);
        let mut m = n;
        for _ in 0..a {
            coeffs.push(m % p);
            m /= p;
        }
        coeffs.push(1);
        let f = PolyFp::new(p, coeffs);
        if f.is_irreducible()? {
            return Ok(f);
        }
    }
    Err(Error::InternalContradiction(format!(
        "no irreducible polynomial of degree {a} over F_{p}"
    )))
}

// ---------------------------------------------------------------------------
// Cycle types

/// Degrees of the irreducible factors of a squarefree reduction, ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Vec<u32>);

impl CycleType {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&d| d == 1)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn reduce_monic(f: &IntPoly, p: u64) -> Result<PolyFp> {
    if !arith::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if !f.is_monic() {
        return Err(Error::InvalidInput(format!("{f} is not monic")));
    }
    Ok(PolyFp::from_int_poly(f, p))
}

/// Frobenius cycle type at `p` of a monic integer polynomial. Refuses
/// reductions that are not squarefree.
pub fn cycle_type(f: &IntPoly, p: u64) -> Result<CycleType> {
    let r = reduce_monic(f, p)?;
    Ok(CycleType(r.distinct_degree_profile()?))
}

/// True iff `f mod p` is squarefree with `deg f` distinct roots.
pub fn splits_completely(f: &IntPoly, p: u64) -> Result<bool> {
    let r = reduce_monic(f, p)?;
    let d = r.degree().unwrap_or(0);
    Ok(r.is_squarefree() && r.count_distinct_roots()? == d)
}

pub fn is_squarefree_mod_p(f: &IntPoly, p: u64) -> Result<bool> {
    let r = PolyFp::from_int_poly(f, p);
    if r.is_zero() {
        return Err(Error::InvalidInput(format!("{f} vanishes mod {p}")));
    }
    Ok(r.is_squarefree())
}

pub fn count_distinct_roots(f: &IntPoly, p: u64) -> Result<usize> {
    PolyFp::from_int_poly(f, p).count_distinct_roots()
}

// ---------------------------------------------------------------------------
// Finite fields

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    degree: u32,
    q: u64,
    modulus: PolyFp,
    tables: Option<Tables>,
}

/// The field `F_q`, `q = p^a`, realized as `F_p[x]/(m)` for an explicit
/// irreducible modulus `m`. Elements are encoded as integers in `[0, q)`:
/// the residue `c_0 + c_1 x + ...` is stored as `c_0 + c_1 p + ...`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    inner: Arc<FieldInner>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus
    }
}

impl Eq for FiniteField {}

impl FiniteField {
    pub fn prime(p: u64) -> Result<Self> {
        if !arith::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Self::build(p, 1, PolyFp::x(p)))
    }

    /// `F_{p^a}` with the canonical (lexicographically first) modulus.
    pub fn new(p: u64, a: u32) -> Result<Self> {
        if a == 1 {
            return Self::prime(p);
        }
        let m = find_irreducible(p, a)?;
        Ok(Self::build(p, a, m))
    }

    /// Field of order `q`; fails unless `q` is a prime power.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, a) = arith::prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
        Self::new(p, a)
    }

    pub fn with_modulus(modulus: PolyFp) -> Result<Self> {
        let p = modulus.characteristic();
        if !arith::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if modulus.leading() != 1 || !modulus.is_irreducible()? {
            return Err(Error::InvalidInput(format!(
                "{modulus} is not monic irreducible over F_{p}"
            )));
        }
        let a = modulus.degree().unwrap_or(0) as u32;
        Ok(Self::build(p, a, modulus))
    }

    fn build(p: u64, degree: u32, modulus: PolyFp) -> Self {
        let q = p.pow(degree);
        let mut inner = FieldInner {
            p,
            degree,
            q,
            modulus,
            tables: None,
        };
        if degree > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        FiniteField {
            inner: Arc::new(inner),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.degree
    }

    pub fn order(&self) -> u64 {
        self.inner.q
    }

    pub fn modulus(&self) -> &PolyFp {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.degree == 1
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        1
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.inner.p as i64) as u64
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.inner.p))
            .to_u64()
            .unwrap_or(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.inner.q
    }

    pub fn contains(&self, a: u64) -> bool {
        a < self.inner.q
    }

    fn digits(&self, mut a: u64) -> Vec<u64> {
        let p = self.inner.p;
        (0..self.inner.degree)
            .map(|_| {
                let d = a % p;
                a /= p;
                d
            })
            .collect()
    }

    fn undigits(&self, coeffs: &[u64]) -> u64 {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.inner.p + c)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        if self.inner.degree == 1 {
            let s = a + b;
            return if s >= p { s - p } else { s };
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.inner.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        let p = self.inner.p;
        if self.inner.degree == 1 {
            return if a == 0 { 0 } else { p - a };
        }
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.inner.degree {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.inner.degree == 1 {
            return mul_mod(a, b, self.inner.p);
        }
        if let Some(t) = &self.inner.tables {
            let s = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[s] as u64;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.inner.p;
        let pa = PolyFp::new(p, self.digits(a));
        let pb = PolyFp::new(p, self.digits(b));
        let r = pa
            .mul(&pb)
            .rem(&self.inner.modulus)
            .unwrap_or_else(|_| PolyFp::zero(p));
        self.undigits(r.coeffs())
    }

    pub fn square(&self, a: u64) -> u64 {
        self.mul(a, a)
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.inner.tables {
            let order = self.inner.q - 1;
            let idx = (t.log[a as usize] as u128 * (e % order) as u128 % order as u128) as usize;
            return t.exp[idx] as u64;
        }
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.inner.tables {
            let order = (self.inner.q - 1) as usize;
            let l = t.log[a as usize] as usize;
            return Ok(t.exp[(order - l) % order] as u64);
        }
        Ok(self.pow(a, self.inner.q - 2))
    }

    pub fn div(&self, a: u64, b: u64) -> Result<u64> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character: 0 for 0, 1 for nonzero squares, -1 otherwise.
    /// In characteristic 2 every element is a square.
    pub fn quadratic_character(&self, a: u64) -> i64 {
        if a == 0 {
            return 0;
        }
        if self.inner.p == 2 {
            return 1;
        }
        if self.pow(a, (self.inner.q - 1) / 2) == 1 {
            1
        } else {
            -1
        }
    }

    /// Absolute trace `a + a^p + ... + a^(p^(deg-1))`, an element of `F_p`.
    pub fn trace(&self, a: u64) -> u64 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.inner.degree {
            acc = self.add(acc, x);
            x = self.pow(x, self.inner.p);
        }
        acc
    }

    /// A square root of `a`, if one exists.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        let q = self.inner.q;
        if self.inner.p == 2 {
            return Some(self.pow(a, q / 2));
        }
        if self.quadratic_character(a) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let mut s = 0u32;
        let mut odd = q - 1;
        while odd % 2 == 0 {
            odd /= 2;
            s += 1;
        }
        let z = self.elements().find(|&z| self.quadratic_character(z) == -1)?;
        let mut m = s;
        let mut c = self.pow(z, odd);
        let mut t = self.pow(a, odd);
        let mut r = self.pow(a, (odd + 1) / 2);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.square(t2);
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = self.square(b);
            }
            m = i;
            c = self.square(b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }

    /// A solution of `z^2 + z = c` in characteristic 2, if one exists.
    pub fn solve_artin_schreier(&self, c: u64) -> Result<Option<u64>> {
        if self.inner.p != 2 {
            return Err(Error::Unsupported("z^2 + z = c needs characteristic 2".into()));
        }
        if self.trace(c) != 0 {
            return Ok(None);
        }
        let a = self.inner.degree;
        let z = if a % 2 == 1 {
            // half trace
            let mut acc = 0;
            let mut x = c;
            for _ in 0..=(a - 1) / 2 {
                acc = self.add(acc, x);
                x = self.square(self.square(x));
            }
            acc
        } else {
            let tau = self
                .elements()
                .find(|&t| self.trace(t) == 1)
                .ok_or_else(|| Error::InternalContradiction("no element of trace 1".into()))?;
            let tau_pows: Vec<u64> = std::iter::successors(Some(tau), |&t| Some(self.square(t)))
                .take(a as usize)
                .collect();
            let mut acc = 0;
            let mut c_pow = c;
            for i in 0..(a as usize - 1) {
                let inner = tau_pows[i + 1..].iter().fold(0, |s, &t| self.add(s, t));
                acc = self.add(acc, self.mul(inner, c_pow));
                c_pow = self.square(c_pow);
            }
            acc
        };
        if self.add(self.square(z), z) != c {
            return Err(Error::InternalContradiction(format!(
                "z^2 + z = {c} solver produced {z}"
            )));
        }
        Ok(Some(z))
    }

    pub fn format_element(&self, a: u64) -> String {
        if self.inner.degree == 1 {
            return a.to_string();
        }
        let as_int: Vec<BigInt> = self.digits(a).into_iter().map(BigInt::from).collect();
        struct W<'a>(&'a [BigInt]);
        impl fmt::Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                crate::poly::write_poly(f, self.0, "a")
            }
        }
        format!("{}", W(&as_int))
    }
}

fn build_tables(inner: &FieldInner) -> Tables {
    let tmp = FiniteField {
        inner: Arc::new(FieldInner {
            p: inner.p,
            degree: inner.degree,
            q: inner.q,
            modulus: inner.modulus.clone(),
            tables: None,
        }),
    };
    let order = inner.q - 1;
    let primes: Vec<u64> = arith::factorize_u64(order).iter().map(|&(r, _)| r).collect();
    let pow_slow = |a: u64, mut e: u64| {
        let mut acc = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = tmp.mul_slow(acc, base);
            }
            base = tmp.mul_slow(base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (2..inner.q)
        .find(|&g| primes.iter().all(|&r| pow_slow(g, order / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; inner.q as usize];
    let mut x = 1u64;
    for i in 0..order as usize {
        exp[i] = x as u32;
        exp[i + order as usize] = x as u32;
        log[x as usize] = i as u32;
        x = tmp.mul_slow(x, generator);
    }
    Tables { exp, log }
}
