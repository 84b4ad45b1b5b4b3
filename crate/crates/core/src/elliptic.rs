//! Weierstrass curves over finite fields: exhaustive point counting, group
//! structure, supersingularity, admissible orders and curve searches.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, gcd_u64};
use crate::error::{Error, Result};
use crate::field::FiniteField;

/// Largest field size counted by enumeration.
pub const DEFAULT_EXHAUSTIVE_BOUND: u64 = 1_000_000;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveModel {
    field: FiniteField,
    a: [u64; 5],
}

/// A point of `E(F_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(u64, u64),
}

/// `E(F_q) = Z/m x Z/n` with `m | n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStructure {
    pub order: u64,
    pub m: u64,
    pub n: u64,
}

impl GroupStructure {
    pub fn is_cyclic(&self) -> bool {
        self.m == 1
    }

    pub fn exponent(&self) -> u64 {
        self.n
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "Z/{}", self.n)
        } else {
            write!(f, "Z/{} x Z/{}", self.m, self.n)
        }
    }
}

fn discriminant_in<T: Clone>(
    a: &[T; 5],
    int: impl Fn(i64) -> T,
    add: impl Fn(&T, &T) -> T,
    mul: impl Fn(&T, &T) -> T,
) -> T {
    let [a1, a2, a3, a4, a6] = a;
    let sq = |x: &T| mul(x, x);
    let b2 = add(&sq(a1), &mul(&int(4), a2));
    let b4 = add(&mul(&int(2), a4), &mul(a1, a3));
    let b6 = add(&sq(a3), &mul(&int(4), a6));
    let b8 = {
        let t1 = mul(&sq(a1), a6);
        let t2 = mul(&int(4), &mul(a2, a6));
        let t3 = mul(&int(-1), &mul(a1, &mul(a3, a4)));
        let t4 = mul(a2, &sq(a3));
        let t5 = mul(&int(-1), &sq(a4));
        add(&add(&add(&t1, &t2), &add(&t3, &t4)), &t5)
    };
    let d1 = mul(&int(-1), &mul(&sq(&b2), &b8));
    let d2 = mul(&int(-8), &mul(&b4, &sq(&b4)));
    let d3 = mul(&int(-27), &sq(&b6));
    let d4 = mul(&int(9), &mul(&b2, &mul(&b4, &b6)));
    add(&add(&d1, &d2), &add(&d3, &d4))
}

impl CurveModel {
    /// Long Weierstrass model; fails when singular.
    pub fn new(field: &FiniteField, a: [u64; 5]) -> Result<Self> {
        if a.iter().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidInput(format!(
                "coefficient outside F_{}",
                field.order()
            )));
        }
        let e = CurveModel {
            field: field.clone(),
            a,
        };
        if e.discriminant() == 0 {
            return Err(Error::InvalidInput(format!("{e} is singular")));
        }
        Ok(e)
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(field: &FiniteField, a4: u64, a6: u64) -> Result<Self> {
        Self::new(field, [0, 0, 0, a4, a6])
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn coefficients(&self) -> [u64; 5] {
        self.a
    }

    pub fn discriminant(&self) -> u64 {
        let f = &self.field;
        discriminant_in(
            &self.a,
            |n| f.from_int(n),
            |x, y| f.add(*x, *y),
            |x, y| f.mul(*x, *y),
        )
    }

    pub fn j_invariant(&self) -> u64 {
        let f = &self.field;
        let [a1, a2, a3, a4, _] = self.a;
        let b2 = f.add(f.square(a1), f.mul(f.from_int(4), a2));
        let b4 = f.add(f.mul(f.from_int(2), a4), f.mul(a1, a3));
        let c4 = f.sub(f.square(b2), f.mul(f.from_int(24), b4));
        let c4_cubed = f.mul(c4, f.square(c4));
        f.div(c4_cubed, self.discriminant()).unwrap_or(0)
    }

    fn rhs(&self, x: u64) -> u64 {
        let f = &self.field;
        let [_, a2, _, a4, a6] = self.a;
        let x2 = f.square(x);
        let x3 = f.mul(x2, x);
        f.add(f.add(x3, f.mul(a2, x2)), f.add(f.mul(a4, x), a6))
    }

    fn linear(&self, x: u64) -> u64 {
        let f = &self.field;
        f.add(f.mul(self.a[0], x), self.a[2])
    }

    pub fn contains(&self, p: &Point) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let f = &self.field;
                f.add(f.square(y), f.mul(self.linear(x), y)) == self.rhs(x)
            }
        }
    }

    /// Number of `y` with `(x, y)` on the curve.
    fn fibre_size(&self, x: u64) -> usize {
        let f = &self.field;
        let h = self.linear(x);
        let r = self.rhs(x);
        if f.characteristic() == 2 {
            if h == 0 {
                return 1;
            }
            let c = f.div(r, f.square(h)).unwrap_or(0);
            if f.trace(c) == 0 {
                2
            } else {
                0
            }
        } else {
            // (y + h/2)^2 = r + h^2/4
            let four = f.from_int(4);
            let d = f.add(r, f.div(f.square(h), four).unwrap_or(0));
            (1 + f.quadratic_character(d)) as usize
        }
    }

    /// All `y` with `(x, y)` on the curve.
    fn fibre(&self, x: u64) -> Vec<u64> {
        let f = &self.field;
        let h = self.linear(x);
        let r = self.rhs(x);
        if f.characteristic() == 2 {
            if h == 0 {
                return f.sqrt(r).into_iter().collect();
            }
            let h2 = f.square(h);
            let c = f.div(r, h2).unwrap_or(0);
            match f.solve_artin_schreier(c).ok().flatten() {
                Some(z) => {
                    let y0 = f.mul(h, z);
                    vec![y0, f.add(y0, h)]
                }
                None => Vec::new(),
            }
        } else {
            let half_h = f.div(h, f.from_int(2)).unwrap_or(0);
            let d = f.add(r, f.square(half_h));
            match f.sqrt(d) {
                None => Vec::new(),
                Some(0) => vec![f.neg(half_h)],
                Some(s) => vec![f.sub(s, half_h), f.sub(f.neg(s), half_h)],
            }
        }
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        std::iter::once(Point::Infinity).chain(
            self.field
                .elements()
                .flat_map(move |x| self.fibre(x).into_iter().map(move |y| Point::Affine(x, y))),
        )
    }

    pub fn neg(&self, p: &Point) -> Point {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let f = &self.field;
                Point::Affine(x, f.sub(f.neg(y), self.linear(x)))
            }
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let f = &self.field;
        let [a1, a2, a3, a4, _] = self.a;
        let (x1, y1, x2, y2) = match (*p, *q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        if x1 == x2 && f.add(f.add(y1, y2), self.linear(x2)) == 0 {
            return Point::Infinity;
        }
        let lambda = if x1 != x2 {
            f.div(f.sub(y2, y1), f.sub(x2, x1)).unwrap_or(0)
        } else {
            let num = f.sub(
                f.add(
                    f.add(f.mul(f.from_int(3), f.square(x1)), f.mul(f.from_int(2), f.mul(a2, x1))),
                    a4,
                ),
                f.mul(a1, y1),
            );
            let den = f.add(f.mul(f.from_int(2), y1), self.linear(x1));
            f.div(num, den).unwrap_or(0)
        };
        let nu = f.sub(y1, f.mul(lambda, x1));
        let x3 = f.sub(
            f.sub(f.add(f.square(lambda), f.mul(a1, lambda)), a2),
            f.add(x1, x2),
        );
        let y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), nu), a3);
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, k: u64, p: &Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = *p;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.add(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Order of `p`, given a multiple `n` of it with known factorization.
    pub fn point_order(&self, p: &Point, n: u64, factors: &[(u64, u32)]) -> u64 {
        let mut ord = n;
        for &(r, k) in factors {
            for _ in 0..k {
                if self.mul(ord / r, p) == Point::Infinity {
                    ord /= r;
                } else {
                    break;
                }
            }
        }
        ord
    }

    fn check_bound(&self, bound: u64) -> Result<()> {
        if self.field.order() > bound {
            return Err(Error::BoundExceeded(format!(
                "q = {} exceeds the exhaustive bound {bound}",
                self.field.order()
            )));
        }
        Ok(())
    }

    /// `#E(F_q)` including the point at infinity.
    pub fn count_points(&self) -> Result<u64> {
        self.count_points_with(DEFAULT_EXHAUSTIVE_BOUND)
    }

    pub fn count_points_with(&self, bound: u64) -> Result<u64> {
        self.check_bound(bound)?;
        Ok(1 + self.field.elements().map(|x| self.fibre_size(x) as u64).sum::<u64>())
    }

    /// Invariant factors from the exponent (lcm of all point orders).
    pub fn group_structure(&self) -> Result<GroupStructure> {
        self.group_structure_with(DEFAULT_EXHAUSTIVE_BOUND)
    }

    pub fn group_structure_with(&self, bound: u64) -> Result<GroupStructure> {
        let order = self.count_points_with(bound)?;
        let factors = arith::factorize_u64(order);
        let mut exponent = 1u64;
        for p in self.points() {
            if exponent == order {
                break;
            }
            let o = self.point_order(&p, order, &factors);
            exponent = exponent.lcm(&o);
        }
        let m = order / exponent;
        let q1 = self.field.order() - 1;
        if exponent % m != 0 || q1 % m != 0 {
            return Err(Error::InternalContradiction(format!(
                "{self}: exponent {exponent} incompatible with order {order}"
            )));
        }
        Ok(GroupStructure {
            order,
            m,
            n: exponent,
        })
    }

    /// Whether some point has order exactly `ell`, a prime power.
    pub fn has_point_of_order(&self, ell: u64) -> Result<bool> {
        if arith::prime_power(ell).is_none() {
            return Err(Error::InvalidInput(format!("{ell} is not a prime power")));
        }
        Ok(self.group_structure()?.exponent() % ell == 0)
    }

    /// Trace of Frobenius divisible by the characteristic (prime fields).
    pub fn is_supersingular(&self) -> Result<bool> {
        if !self.field.is_prime_field() {
            return Err(Error::Unsupported(
                "supersingularity test is implemented over prime fields".into(),
            ));
        }
        let p = self.field.order() as i128;
        let t = p + 1 - self.count_points()? as i128;
        Ok(t % p == 0)
    }

    fn format_coeff(&self, c: u64) -> String {
        let f = &self.field;
        if f.is_prime_field() {
            let p = f.order();
            if c > p / 2 && p > 3 {
                return format!("-{}", p - c);
            }
        }
        c.to_string()
    }
}

/// Formats `lhs = rhs` for Weierstrass coefficients given as signed strings.
fn write_weierstrass(f: &mut fmt::Formatter<'_>, a: [String; 5]) -> fmt::Result {
    let term = |c: &str, mono: &str| -> Option<String> {
        if c == "0" {
            return None;
        }
        Some(match (c, mono) {
            (_, "") => c.to_string(),
            ("1", m) => m.to_string(),
            ("-1", m) => format!("-{m}"),
            (c, m) => format!("{c}*{m}"),
        })
    };
    let join = |terms: Vec<String>| -> String {
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            match (i, t.strip_prefix('-')) {
                (0, _) => out.push_str(t),
                (_, Some(rest)) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                (_, None) => {
                    out.push_str(" + ");
                    out.push_str(t);
                }
            }
        }
        out
    };
    let lhs: Vec<String> = std::iter::once("y^2".to_string())
        .chain(term(&a[0], "x*y"))
        .chain(term(&a[2], "y"))
        .collect();
    let rhs: Vec<String> = std::iter::once("x^3".to_string())
        .chain(term(&a[1], "x^2"))
        .chain(term(&a[3], "x"))
        .chain(term(&a[4], ""))
        .collect();
    write!(f, "{} = {}", join(lhs), join(rhs))
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_weierstrass(f, self.a.map(|c| self.format_coeff(c)))?;
        write!(f, " over F_{}", self.field.order())
    }
}

/// Signed integer Weierstrass coefficients parsed from text.
fn parse_weierstrass(s: &str) -> Result<[BigInt; 5]> {
    let s = s.replace(['\u{2212}', '\u{2013}'], "-");
    let (lhs, rhs) = s
        .split_once('=')
        .ok_or_else(|| Error::Parse(format!("missing '=' in {s:?}")))?;
    let mut a: [BigInt; 5] = Default::default();
    let mut seen_y2 = false;
    let mut seen_x3 = false;
    for (side, text) in [(0, lhs), (1, rhs)] {
        let compact: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        for term in crate::poly::split_signed_terms(&compact)? {
            let (neg, body) = match term.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let pos = body.find(|c: char| c.is_alphabetic()).unwrap_or(body.len());
            let coeff = if pos == 0 {
                BigInt::one()
            } else {
                body[..pos]
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
            };
            let coeff = if neg { -coeff } else { coeff };
            let slot = match (side, &body[pos..]) {
                (0, "y^2") => {
                    seen_y2 = true;
                    if !coeff.is_one() {
                        return Err(Error::Parse("y^2 must have coefficient 1".into()));
                    }
                    continue;
                }
                (0, "xy") | (0, "yx") => 0,
                (0, "y") => 2,
                (1, "x^3") => {
                    seen_x3 = true;
                    if !coeff.is_one() {
                        return Err(Error::Parse("x^3 must have coefficient 1".into()));
                    }
                    continue;
                }
                (1, "x^2") => 1,
                (1, "x") => 3,
                (1, "") => 4,
                (_, m) => return Err(Error::Parse(format!("unexpected monomial {m:?}"))),
            };
            a[slot] += coeff;
        }
    }
    if !seen_y2 || !seen_x3 {
        return Err(Error::Parse(format!("not a Weierstrass equation: {s:?}")));
    }
    Ok(a)
}

fn parse_field_order(s: &str) -> Result<u64> {
    let t = s.trim();
    let digits = t
        .strip_prefix("F_")
        .or_else(|| t.strip_prefix("GF("))
        .ok_or_else(|| Error::Parse(format!("expected F_q, got {t:?}")))?;
    let digits = digits.trim_matches(|c| c == '{' || c == '}' || c == ')');
    digits
        .parse::<u64>()
        .map_err(|_| Error::Parse(format!("bad field order {digits:?}")))
}

impl FromStr for CurveModel {
    type Err = Error;

    /// `"y^2 = x^3 + A*x + B over F_q"` or the long form. Over a non-prime
    /// field, coefficients are element encodings in `[0, q)`, optionally
    /// negated.
    fn from_str(s: &str) -> Result<Self> {
        let (eq, field) = s
            .rsplit_once(" over ")
            .ok_or_else(|| Error::Parse(format!("missing 'over F_q' in {s:?}")))?;
        let field = FiniteField::of_order(parse_field_order(field)?)?;
        let ints = parse_weierstrass(eq)?;
        let mut a = [0u64; 5];
        for (slot, c) in a.iter_mut().zip(ints.iter()) {
            *slot = if field.is_prime_field() {
                field.from_bigint(c)
            } else {
                let mag = c
                    .abs()
                    .to_u64()
                    .filter(|&m| field.contains(m))
                    .ok_or_else(|| Error::Parse(format!("coefficient {c} not in F_{}", field.order())))?;
                if c.is_negative() {
                    field.neg(mag)
                } else {
                    mag
                }
            };
        }
        CurveModel::new(&field, a)
    }
}

impl Serialize for CurveModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CurveModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Curves over the rationals

/// An integral Weierstrass model over `Q`, kept for reduction mod primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurve {
    a: [BigInt; 5],
}

impl RationalCurve {
    pub fn new(a: [BigInt; 5]) -> Result<Self> {
        let e = RationalCurve { a };
        if e.discriminant().is_zero() {
            return Err(Error::InvalidInput(format!("{e} is singular")));
        }
        Ok(e)
    }

    pub fn coefficients(&self) -> &[BigInt; 5] {
        &self.a
    }

    pub fn discriminant(&self) -> BigInt {
        discriminant_in(&self.a, BigInt::from, |x, y| x + y, |x, y| x * y)
    }

    /// Primes dividing the discriminant of this model.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let d = self.discriminant().abs().to_biguint().unwrap_or_default();
        let f = arith::factorize(&d)?;
        f.factors()
            .iter()
            .map(|(p, _)| {
                p.to_u64()
                    .ok_or_else(|| Error::Unsupported(format!("bad prime {p} exceeds 64 bits")))
            })
            .collect()
    }

    /// Reduction mod `p`; fails at primes of bad reduction for this model.
    pub fn reduce(&self, p: u64) -> Result<CurveModel> {
        let field = FiniteField::prime(p)?;
        let a = [0, 1, 2, 3, 4].map(|i| field.from_bigint(&self.a[i]));
        CurveModel::new(&field, a).map_err(|_| {
            Error::HypothesisViolation(format!("{self} has bad reduction at {p}"))
        })
    }
}

impl fmt::Display for RationalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_weierstrass(f, self.a.clone().map(|c| c.to_string()))
    }
}

impl FromStr for RationalCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RationalCurve::new(parse_weierstrass(s)?)
    }
}

/// `y^2 = x^3 - 432 * 60^2`, the Jacobian of the diagonal cubic with
/// coefficient product 60 (for instance `3X^3 + 4Y^3 + 5Z^3`).
pub fn selmer_jacobian() -> RationalCurve {
    let a6 = BigInt::from(-432 * 60 * 60);
    RationalCurve::new([
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        BigInt::zero(),
        a6,
    ])
    .expect("nonsingular model")
}

// ---------------------------------------------------------------------------
// Orders of curves over F_q

/// Hasse bound plus the coprime-trace or zero-trace conditions for an
/// order `n` to occur over `F_q`.
pub fn admissible_order(q: u64, n: u64) -> Result<bool> {
    let (p, _) = arith::prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    if n == 0 {
        return Err(Error::InvalidInput("order must be positive".into()));
    }
    let t = q as i128 + 1 - n as i128;
    if t * t > 4 * q as i128 {
        return Ok(false);
    }
    let coprime = gcd_u64(t.unsigned_abs() as u64, p) == 1;
    Ok(coprime || (t == 0 && p % 4 != 1))
}

/// An order `n` admissible over `F_q` and a prime `ell | n` prime to `q(q-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllChoice {
    pub q: u64,
    pub n: u64,
    pub ell: u64,
}

/// Case analysis on `q`:
/// `q in {2,4,16}`: `n = q+1`; other powers of 2: `n = q+2`; `q = 3`: `n = 5`;
/// other powers of 3: `n = q+1`; `p >= 5`: `n = q-2`. The prime is the
/// smallest divisor of `n` prime to `q(q-1)`.
pub fn find_ell(q: u64) -> Result<EllChoice> {
    let (p, a) = arith::prime_power(q)
        .ok_or_else(|| Error::InvalidInput(format!("{q} is not a prime power")))?;
    let n = match (p, a) {
        (2, 1 | 2 | 4) => q + 1,
        (2, _) => q + 2,
        (3, 1) => 5,
        (3, _) => q + 1,
        _ => q - 2,
    };
    let q_q1 = (q as u128) * (q as u128 - 1);
    let ell = arith::factorize_u64(n)
        .into_iter()
        .map(|(r, _)| r)
        .find(|&r| q_q1 % r as u128 != 0)
        .ok_or_else(|| {
            Error::InternalContradiction(format!("no prime of {n} is prime to q(q-1) for q = {q}"))
        })?;
    let choice = EllChoice { q, n, ell };
    verify_ell_choice(&choice)?;
    Ok(choice)
}

/// Rechecks the postconditions of [`find_ell`].
pub fn verify_ell_choice(c: &EllChoice) -> Result<()> {
    let fail = |why: &str| Err(Error::InternalContradiction(format!("{c:?}: {why}")));
    if !arith::is_prime_u64(c.ell) {
        return fail("ell is not prime");
    }
    if gcd_u64(c.ell, c.q) != 1 || gcd_u64(c.ell, c.q - 1) != 1 {
        return fail("ell divides q(q-1)");
    }
    if c.n % c.ell != 0 {
        return fail("ell does not divide n");
    }
    if !admissible_order(c.q, c.n)? {
        return fail("n is not admissible");
    }
    Ok(())
}

/// Nonsingular models over `F_q` in a fixed scan order.
///
/// Characteristic at least 5: `(a4, a6)` row-major. Characteristic 3:
/// `y^2 = x^3 + a2 x^2 + a6`, then `y^2 = x^3 + a4 x + a6`. Characteristic 2:
/// `y^2 + xy = x^3 + a2 x^2 + a6`, then `y^2 + a3 y = x^3 + a4 x + a6`.
/// Every curve over `F_q` is isomorphic to one of these.
pub fn curve_models(field: &FiniteField) -> impl Iterator<Item = CurveModel> + '_ {
    let q = field.order();
    let p = field.characteristic();
    let pairs = move || (0..q).flat_map(move |u| (0..q).map(move |v| (u, v)));
    let raw: Box<dyn Iterator<Item = [u64; 5]>> = match p {
        2 => Box::new(
            pairs()
                .map(|(a2, a6)| [1, a2, 0, 0, a6])
                .chain((1..q).flat_map(move |a3| pairs().map(move |(a4, a6)| [0, 0, a3, a4, a6]))),
        ),
        3 => Box::new(
            pairs()
                .map(|(a2, a6)| [0, a2, 0, 0, a6])
                .chain(pairs().map(|(a4, a6)| [0, 0, 0, a4, a6])),
        ),
        _ => Box::new(pairs().map(|(a4, a6)| [0, 0, 0, a4, a6])),
    };
    raw.filter_map(move |a| CurveModel::new(field, a).ok())
}

/// First model in [`curve_models`] order whose point count satisfies `pred`.
pub fn search_curve_with_order(
    field: &FiniteField,
    pred: impl Fn(u64) -> bool,
) -> Result<(CurveModel, u64)> {
    for e in curve_models(field) {
        let n = e.count_points()?;
        if pred(n) {
            return Ok((e, n));
        }
    }
    Err(Error::NotFound(format!(
        "no curve over F_{} has an order with the requested property",
        field.order()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> CurveModel {
        s.parse().unwrap()
    }

    /// Counts solutions by trying every `(x, y)` pair.
    fn naive_count(e: &CurveModel) -> u64 {
        let f = e.field();
        1 + f
            .elements()
            .flat_map(|x| f.elements().map(move |y| Point::Affine(x, y)))
            .filter(|pt| e.contains(pt))
            .count() as u64
    }

    #[test]
    fn counts() {
        let e = curve("y^2 + y = x^3 over F_2");
        assert_eq!(e.count_points().unwrap(), 3);
        assert_eq!(naive_count(&e), 3);
        assert_eq!(curve("y^2 = x^3 + 1 over F_5").count_points().unwrap(), 6);
        let sel = selmer_jacobian().reduce(11).unwrap();
        assert_eq!(sel.count_points().unwrap(), 12);
    }

    #[test]
    fn structures() {
        let sel = selmer_jacobian().reduce(11).unwrap();
        let g = sel.group_structure().unwrap();
        assert_eq!((g.m, g.n), (1, 12));
        assert!(sel.has_point_of_order(4).unwrap());
        assert!(sel.has_point_of_order(3).unwrap());
        assert!(!sel.has_point_of_order(5).unwrap());
        let e = curve("y^2 = x^3 + x over F_5");
        let g = e.group_structure().unwrap();
        assert_eq!(g.m * g.n, naive_count(&e));
        assert_eq!(4 % g.m, 0);
        assert!(curve("y^2 + y = x^3 over F_2").has_point_of_order(3).unwrap());
    }

    #[test]
    fn supersingular() {
        assert!(curve("y^2 = x^3 + 1 over F_5").is_supersingular().unwrap());
        assert!(!curve("y^2 = x^3 + 1 over F_7").is_supersingular().unwrap());
        let e17 = selmer_jacobian().reduce(17).unwrap();
        assert_eq!(e17.count_points().unwrap(), 18);
        assert!(e17.is_supersingular().unwrap());
        for p in arith::primes_up_to(500).into_iter().filter(|&p| p >= 5) {
            let e = CurveModel::short(&FiniteField::prime(p).unwrap(), 0, 1).unwrap();
            assert_eq!(e.is_supersingular().unwrap(), p % 3 == 2, "p = {p}");
        }
    }

    #[test]
    fn selmer_model() {
        let e = selmer_jacobian();
        assert_eq!(e.coefficients()[4], BigInt::from(-1_555_200));
        assert_eq!(e.bad_primes().unwrap(), vec![2, 3, 5]);
        for p in [17, 23, 29] {
            assert_eq!(e.reduce(p).unwrap().count_points().unwrap(), p + 1);
        }
        assert!(matches!(e.reduce(5), Err(Error::HypothesisViolation(_))));
    }

    #[test]
    fn admissibility() {
        assert!(admissible_order(2, 3).unwrap());
        assert!(admissible_order(5, 8).unwrap());
        assert!(!admissible_order(5, 12).unwrap());
        assert!(admissible_order(6, 3).is_err());
    }

    #[test]
    fn ell_examples() {
        let pick = |q| {
            let c = find_ell(q).unwrap();
            (c.n, c.ell)
        };
        assert_eq!(pick(2), (3, 3));
        assert_eq!(pick(8), (10, 5));
        assert_eq!(pick(25), (23, 23));
        assert_eq!(pick(27), (28, 7));
        assert_eq!(pick(3), (5, 5));
        assert!(find_ell(12).is_err());
    }

    #[test]
    fn ell_postconditions_up_to_10k() {
        for q in 2..=10_000u64 {
            if arith::prime_power(q).is_some() {
                let c = find_ell(q).unwrap();
                verify_ell_choice(&c).unwrap();
            }
        }
    }

    #[test]
    fn curve_search() {
        let f7 = FiniteField::prime(7).unwrap();
        let (e, n) = search_curve_with_order(&f7, |n| n == 5).unwrap();
        assert_eq!(n, 5);
        assert_eq!(naive_count(&e), 5);
        let f11 = FiniteField::prime(11).unwrap();
        let (_, n) = search_curve_with_order(&f11, |n| n % 5 == 0).unwrap();
        assert_eq!(n % 5, 0);
        let f5 = FiniteField::prime(5).unwrap();
        assert!(matches!(
            search_curve_with_order(&f5, |n| n == 12),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn hasse_and_naive_agree_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let f = FiniteField::of_order(q).unwrap();
            for e in curve_models(&f) {
                let n = e.count_points().unwrap();
                assert_eq!(n, naive_count(&e), "{e}");
                assert_eq!(n as usize, e.points().count(), "{e}");
                let t = q as i64 + 1 - n as i64;
                assert!(t * t <= 4 * q as i64);
            }
        }
    }

    #[test]
    fn structure_invariants_up_to_27() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27] {
            let f = FiniteField::of_order(q).unwrap();
            for e in curve_models(&f) {
                let g = e.group_structure().unwrap();
                assert_eq!(g.m * g.n, g.order);
                assert_eq!(g.n % g.m, 0);
                assert_eq!((q - 1) % g.m, 0);
                // oracle: exponent from orders computed by repeated addition
                let mut lcm = 1u64;
                for pt in e.points() {
                    let mut k = 1;
                    let mut acc = pt;
                    while acc != Point::Infinity {
                        acc = e.add(&acc, &pt);
                        k += 1;
                    }
                    lcm = lcm.lcm(&k);
                }
                assert_eq!(lcm, g.n, "{e}");
            }
        }
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "y^2 = x^3 + 1 over F_5",
            "y^2 + y = x^3 over F_2",
            "y^2 + x*y = x^3 + 3*x^2 + 1 over F_8",
            "y^2 = x^3 + 2*x^2 + 1 over F_9",
        ] {
            let e = curve(s);
            assert_eq!(e.to_string(), s);
            let json = serde_json::to_string(&e).unwrap();
            assert_eq!(serde_json::from_str::<CurveModel>(&json).unwrap(), e);
        }
        assert!("y^2 = x^3 over F_5".parse::<CurveModel>().is_err());
        let r: RationalCurve = "y^2 = x^3 - 1555200".parse().unwrap();
        assert_eq!(r, selmer_jacobian());
        assert_eq!(r.to_string(), "y^2 = x^3 - 1555200");
    }

    #[test]
    fn group_law_is_associative_on_samples() {
        let e = curve("y^2 + x*y = x^3 + 3*x^2 + 1 over F_8");
        let pts: Vec<Point> = e.points().collect();
        for a in &pts {
            assert!(e.contains(a));
            assert_eq!(e.add(a, &e.neg(a)), Point::Infinity);
            for b in &pts {
                assert!(e.contains(&e.add(a, b)));
                for c in pts.iter().take(5) {
                    assert_eq!(e.add(&e.add(a, b), c), e.add(a, &e.add(b, c)));
                }
            }
        }
    }
}
