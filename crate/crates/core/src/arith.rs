//! Exact integer arithmetic: primality, factorization, valuations, totients,
//! multiplicative orders and the small searches built on them.
//!
//! Arbitrary-precision entry points take [`BigUint`]/[`BigInt`]; the `_u64`
//! variants are the fast paths used by the searches elsewhere in the crate.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Witnesses making Miller-Rabin deterministic below 3.3 * 10^24 (and in
/// particular for every 64-bit input).
const DETERMINISTIC_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Extra random rounds above 2^64. Each round errs with probability at most
/// 1/4, so 64 rounds keep the error below 2^-128.
const PROBABILISTIC_ROUNDS: usize = 64;
const PROBABILISTIC_SEED: u64 = 0x5eed_ab31_1a4e_0001;

const TRIAL_DIVISION_LIMIT: u64 = 10_000;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

fn miller_rabin_u64(n: u64, base: u64) -> bool {
    let a = base % n;
    if a == 0 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &DETERMINISTIC_BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    DETERMINISTIC_BASES.iter().all(|&b| miller_rabin_u64(n, b))
}

/// If `q = p^a` with `p` prime and `a >= 1`, returns `(p, a)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let factors = factorize_u64(q);
    match factors.as_slice() {
        [(p, a)] => Some((*p, *a)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// 128-bit Montgomery arithmetic

fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const LO: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & LO);
    let (b1, b0) = (b >> 64, b & LO);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & LO) + (p10 & LO);
    let lo = (p00 & LO) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Montgomery form modulo an odd 128-bit modulus, R = 2^128.
#[derive(Debug, Clone, Copy)]
struct Montgomery {
    n: u128,
    neg_inv: u128,
    r2: u128,
    one: u128,
}

impl Montgomery {
    fn new(n: u128) -> Self {
        debug_assert!(n & 1 == 1 && n > 1);
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        let r = n.wrapping_neg() % n;
        let mut r2 = r;
        for _ in 0..128 {
            r2 = Self::add_mod(r2, r2, n);
        }
        Montgomery {
            n,
            neg_inv: inv.wrapping_neg(),
            r2,
            one: r,
        }
    }

    fn add_mod(a: u128, b: u128, n: u128) -> u128 {
        let (s, overflow) = a.overflowing_add(b);
        if overflow || s >= n {
            s.wrapping_sub(n)
        } else {
            s
        }
    }

    fn redc(&self, hi: u128, lo: u128) -> u128 {
        let m = lo.wrapping_mul(self.neg_inv);
        let (mh, ml) = mul_wide(m, self.n);
        let (_, carry) = lo.overflowing_add(ml);
        let (t, c1) = hi.overflowing_add(mh);
        let (t, c2) = t.overflowing_add(carry as u128);
        if c1 || c2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        self.redc(hi, lo)
    }

    fn to_mont(&self, a: u128) -> u128 {
        self.mul(a % self.n, self.r2)
    }

    fn pow(&self, base: u128, mut exp: u128) -> u128 {
        let mut acc = self.one;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

fn miller_rabin_u128(mont: &Montgomery, base: u128) -> bool {
    let n = mont.n;
    let a = base % n;
    if a == 0 {
        return true;
    }
    let minus_one = mont.to_mont(n - 1);
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mut x = mont.pow(mont.to_mont(a), d);
    if x == mont.one || x == minus_one {
        return true;
    }
    for _ in 1..s {
        x = mont.mul(x, x);
        if x == minus_one {
            return true;
        }
    }
    false
}

fn random_bases() -> impl Iterator<Item = u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(PROBABILISTIC_SEED);
    (0..PROBABILISTIC_ROUNDS).map(move |_| rng.gen_range(2..u64::MAX))
}

fn is_prime_u128(n: u128) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime_u64(small);
    }
    if DETERMINISTIC_BASES.iter().any(|&p| n % p as u128 == 0) {
        return false;
    }
    let mont = Montgomery::new(n);
    DETERMINISTIC_BASES
        .iter()
        .copied()
        .chain(random_bases())
        .all(|b| miller_rabin_u128(&mont, b as u128))
}

fn miller_rabin_big(n: &BigUint, base: &BigUint) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    let mut x = base.modpow(&d, n);
    if x == one || x == n_minus_one {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_one {
            return true;
        }
    }
    false
}

/// Primality test. Deterministic below 2^64 (and in fact below 3.3 * 10^24);
/// above that, 64 extra seeded Miller-Rabin rounds bound the error by 2^-128.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u128() {
        return is_prime_u128(small);
    }
    if n.is_even() {
        return false;
    }
    DETERMINISTIC_BASES
        .iter()
        .copied()
        .chain(random_bases())
        .all(|b| miller_rabin_big(n, &BigUint::from(b)))
}

// ---------------------------------------------------------------------------
// Factorization

/// Prime factorization: primes strictly increasing, positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    fn from_primes(mut primes: Vec<BigUint>) -> Self {
        primes.sort();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for p in primes {
            match factors.last_mut() {
                Some((last, e)) if *last == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
        Factorization { factors }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Factors as machine integers, when every prime fits.
    pub fn to_u64_pairs(&self) -> Option<Vec<(u64, u32)>> {
        self.factors
            .iter()
            .map(|(p, e)| p.to_u64().map(|p| (p, *e)))
            .collect()
    }
}

/// Effort bound for [`factorize_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorConfig {
    /// Pollard-Brent iterations allowed per cofactor before giving up.
    pub rho_iterations: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            rho_iterations: 1 << 24,
        }
    }
}

fn rho_u64(n: u64) -> u64 {
    // Always succeeds for composite 64-bit n; each polynomial is tried with a
    // generous bound before moving on.
    for c in 1u64.. {
        if let Some(f) = brent_u64(n, c, 1 << 26) {
            return f;
        }
    }
    unreachable!()
}

fn brent_u64(n: u64, c: u64, budget: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
    let mut x;
    let mut ys;
    let mut spent = 0u64;
    let m = 128u64;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        loop {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            let g = gcd_u64(q, n);
            k += m;
            spent += m;
            if g != 1 {
                if g != n {
                    return Some(g);
                }
                loop {
                    ys = f(ys);
                    let g = gcd_u64(x.abs_diff(ys), n);
                    if g != 1 {
                        return if g == n { None } else { Some(g) };
                    }
                }
            }
            if k >= r {
                break;
            }
        }
        r *= 2;
        if spent > budget {
            return None;
        }
    }
}

fn brent_u128(n: u128, c: u128, budget: u64) -> Option<u128> {
    if n % 2 == 0 {
        return Some(2);
    }
    let mont = Montgomery::new(n);
    let cm = mont.to_mont(c);
    let f = |x: u128| Montgomery::add_mod(mont.mul(x, x), cm, n);
    let (mut y, mut r, mut q) = (mont.to_mont(2), 1u64, mont.one);
    let mut x;
    let mut ys;
    let mut spent = 0u64;
    let m = 128u64;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        loop {
            ys = y;
            for _ in 0..m.min(r - k) {
                y = f(y);
                q = mont.mul(q, x.abs_diff(y));
            }
            let g = q.gcd(&n);
            k += m;
            spent += m;
            if g != 1 {
                if g != n {
                    return Some(g);
                }
                loop {
                    ys = f(ys);
                    let g = x.abs_diff(ys).gcd(&n);
                    if g != 1 {
                        return if g == n { None } else { Some(g) };
                    }
                }
            }
            if k >= r {
                break;
            }
            if spent > budget {
                return None;
            }
        }
        r *= 2;
        if spent > budget {
            return None;
        }
    }
}

fn brent_big(n: &BigUint, c: u64, budget: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut spent = 0u64;
    let m = 64u64;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    loop {
        let x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            let mut ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * diff(&x, &y)) % n;
            }
            let g = q.gcd(n);
            k += m;
            spent += m;
            if !g.is_one() {
                if &g != n {
                    return Some(g);
                }
                loop {
                    ys = f(&ys);
                    let g = diff(&x, &ys).gcd(n);
                    if !g.is_one() {
                        return if &g == n { None } else { Some(g) };
                    }
                }
            }
            if k >= r || spent > budget {
                break;
            }
        }
        r *= 2;
        if spent > budget {
            return None;
        }
    }
}

fn split_composite(n: &BigUint, config: &FactorConfig) -> Result<BigUint> {
    let per_poly = (config.rho_iterations / 4).max(256);
    let mut spent = 0u64;
    let mut c = 1u64;
    while spent < config.rho_iterations {
        let found = if let Some(small) = n.to_u128() {
            brent_u128(small, c as u128, per_poly).map(BigUint::from)
        } else {
            brent_big(n, c, per_poly)
        };
        if let Some(f) = found {
            return Ok(f);
        }
        spent += per_poly;
        c += 1;
    }
    Err(Error::ResourceLimit(format!(
        "no factor of {n} found within {} rho iterations",
        config.rho_iterations
    )))
}

/// Complete factorization of a 64-bit integer; `1` factors as the empty list.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize_u64 needs n >= 1");
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            primes.push(m);
            continue;
        }
        let f = rho_u64(m);
        stack.push(f);
        stack.push(m / f);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Factorization with the default effort bound.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with(n, &FactorConfig::default())
}

/// Trial division followed by Pollard-Brent splitting. Fails with
/// [`Error::ResourceLimit`] when a cofactor resists the configured effort.
pub fn factorize_with(n: &BigUint, config: &FactorConfig) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor 0".into()));
    }
    if let Some(small) = n.to_u64() {
        let pairs = factorize_u64(small);
        return Ok(Factorization {
            factors: pairs.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect(),
        });
    }
    let mut n = n.clone();
    let mut primes = Vec::new();
    for p in primes_up_to(TRIAL_DIVISION_LIMIT) {
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            primes.push(bp.clone());
            n /= &bp;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            primes.push(m);
            continue;
        }
        let f = split_composite(&m, config)?;
        let g = &m / &f;
        stack.push(f);
        stack.push(g);
    }
    Ok(Factorization::from_primes(primes))
}

// ---------------------------------------------------------------------------
// Valuations, totients, orders

/// Largest `e` with `p^e | n`.
pub fn valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::Undefined("valuation of 0".into()));
    }
    if p < 2 {
        return Err(Error::InvalidInput(format!("valuation base {p} < 2")));
    }
    let bp = BigInt::from(p);
    let mut m = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return Ok(e);
        }
        m = q;
        e += 1;
    }
}

pub fn valuation_i128(mut n: i128, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::Undefined("valuation of 0".into()));
    }
    if p < 2 {
        return Err(Error::InvalidInput(format!("valuation base {p} < 2")));
    }
    let p = p as i128;
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    Ok(e)
}

/// Euler's totient via the factorization of `n`.
pub fn euler_phi(n: &BigUint) -> Result<BigUint> {
    if n.is_zero() {
        return Err(Error::InvalidInput("euler_phi(0)".into()));
    }
    let f = factorize(n)?;
    Ok(f.factors().iter().fold(BigUint::one(), |acc, (p, e)| {
        acc * p.pow(e - 1) * (p - 1u32)
    }))
}

pub fn euler_phi_u64(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi_u64 needs n >= 1");
    factorize_u64(n)
        .iter()
        .fold(1, |acc, &(p, e)| acc * p.pow(e - 1) * (p - 1))
}

/// Ramification index over `Q_p` of the completion of `Q(mu_n)` at a prime
/// above `p`: writing `n = m * p^i` with `p` not dividing `m`, this is
/// `phi(p^i) = p^(i-1) (p - 1)` (and `1` when `i = 0`).
pub fn cyclotomic_ramification(p: u64, n: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    let i = valuation_i128(n as i128, p)?;
    Ok(if i == 0 { 1 } else { p.pow(i - 1) * (p - 1) })
}

/// Number of roots of unity in the completion of `Q(mu_n)` at a prime above
/// `p`: `(p^f - 1) * p^i` with `f` the order of `p` modulo the prime-to-`p`
/// part of `n` (for `p = 2` the factor `-1` is always present).
pub fn cyclotomic_roots_of_unity(p: u64, n: u64) -> Result<u128> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be >= 1".into()));
    }
    let i = valuation_i128(n as i128, p)?;
    let m = n / p.pow(i);
    let f = if m == 1 {
        1
    } else {
        multiplicative_order(p % m, m)?
    };
    let residue = (p as u128).pow(f as u32) - 1;
    let i = if p == 2 { i.max(1) } else { i };
    Ok(residue * (p as u128).pow(i))
}

/// True iff `gcd(d, p (p - 1)) = 1`: then every finite subextension of
/// `Q_p^ab` has ramification index `p^j m` with `m | p - 1`, hence prime to
/// `d`.
pub fn abelian_ramification_obstruction(d: u64, p: u64) -> bool {
    let pp = p as u128 * (p as u128 - 1);
    (d as u128).gcd(&pp) == 1
}

/// Least `k >= 1` with `a^k = 1 (mod m)`.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("modulus {m} < 2")));
    }
    let a = a % m;
    if gcd_u64(a, m) != 1 {
        return Err(Error::InvalidInput(format!("gcd({a}, {m}) != 1")));
    }
    let mut order = euler_phi_u64(m);
    for (q, _) in factorize_u64(order) {
        while order % q == 0 && pow_mod(a, order / q, m) == 1 {
            order /= q;
        }
    }
    Ok(order)
}

/// Combines pairwise coprime congruences `x = r_i (mod m_i)` into one.
pub fn crt_combine(congruences: &[(u64, u64)]) -> Result<(u128, u128)> {
    let mut r: u128 = 0;
    let mut m: u128 = 1;
    for &(ri, mi) in congruences {
        if mi == 0 {
            return Err(Error::InvalidInput("modulus 0".into()));
        }
        let (ri, mi) = ((ri % mi) as u128, mi as u128);
        if m.gcd(&mi) != 1 {
            return Err(Error::InvalidInput(format!(
                "moduli are not pairwise coprime (modulus {mi})"
            )));
        }
        // x = r + m * k, need m k = ri - r (mod mi)
        let inv = mod_inverse_u128(m % mi, mi)
            .ok_or_else(|| Error::InternalContradiction("no inverse for coprime moduli".into()))?;
        let delta = (ri + mi - r % mi) % mi;
        let k = mul_mod_u128(delta, inv, mi);
        r += m * k;
        m *= mi;
        if m > u64::MAX as u128 * u64::MAX as u128 {
            return Err(Error::InvalidInput("combined modulus too large".into()));
        }
    }
    Ok((r % m, m))
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        (a % m) * (b % m) % m
    } else {
        let (a, b) = (BigUint::from(a), BigUint::from(b));
        ((a * b) % BigUint::from(m)).to_u128().unwrap_or(0)
    }
}

fn mod_inverse_u128(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (a, m) = (BigInt::from(a), BigInt::from(m));
    let e = a.extended_gcd(&m);
    if !e.gcd.is_one() {
        return None;
    }
    e.x.mod_floor(&m).to_u128()
}

/// Smallest positive integer `<= limit` satisfying every congruence and the
/// predicate, scanning the progression in increasing order.
pub fn crt_search(
    congruences: &[(u64, u64)],
    predicate: impl Fn(u64) -> bool,
    limit: u64,
) -> Result<u64> {
    let (r, m) = crt_combine(congruences)?;
    let mut x = if r == 0 { m } else { r };
    while x <= limit as u128 {
        let candidate = x as u64;
        if predicate(candidate) {
            return Ok(candidate);
        }
        x += m;
    }
    Err(Error::BoundExceeded(format!(
        "no solution of {congruences:?} below {limit}"
    )))
}

/// All `(s, t)` with `0 <= s <= s_max`, `0 <= t <= t_max` and
/// `|2^s - 3^t| = 1`, by exact evaluation. Natural numbers include 0.
pub fn catalan_solutions(s_max: u32, t_max: u32) -> BTreeSet<(u32, u32)> {
    let mut out = BTreeSet::new();
    let two = BigInt::from(2);
    let three = BigInt::from(3);
    for s in 0..=s_max {
        let a = two.pow(s);
        for t in 0..=t_max {
            let diff = &a - three.pow(t);
            if diff.abs().is_one() {
                out.insert((s, t));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_primality() {
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(0));
        for n in 0..5000 {
            assert_eq!(is_prime_u64(n), trial_division_is_prime(n), "{n}");
        }
        assert_eq!(is_prime_u64(1_555_201), trial_division_is_prime(1_555_201));
    }

    #[test]
    fn large_primality() {
        // 2^61 - 1 and 2^89 - 1 are Mersenne primes; 2^67 - 1 is not.
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(is_prime(&((BigUint::one() << 89usize) - 1u32)));
        assert!(!is_prime(&((BigUint::one() << 67usize) - 1u32)));
        // Strong pseudoprime to the first 12 prime bases.
        let psp = BigUint::parse_bytes(b"318665857834031151167461", 10).unwrap();
        assert!(!is_prime(&psp));
        // 2^127 - 1, 2^521 - 1
        assert!(is_prime(&((BigUint::one() << 127usize) - 1u32)));
        assert!(is_prime(&((BigUint::one() << 521usize) - 1u32)));
    }

    #[test]
    fn factor_examples() {
        let f = factorize(&BigUint::from(60u32)).unwrap();
        assert_eq!(f.to_u64_pairs().unwrap(), vec![(2, 2), (3, 1), (5, 1)]);
        assert!(factorize(&BigUint::one()).unwrap().is_empty());
        // Oracle: repeated trial division of 432 * 60^2.
        let mut n = 1_555_200u64;
        let mut oracle = Vec::new();
        let mut d = 2;
        while n > 1 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            if e > 0 {
                oracle.push((d, e));
            }
            d += 1;
        }
        assert_eq!(oracle, vec![(2, 8), (3, 5), (5, 2)]);
        let f = factorize(&BigUint::from(1_555_200u32)).unwrap();
        assert_eq!(f.to_u64_pairs().unwrap(), oracle);
        assert!(factorize(&BigUint::zero()).is_err());
    }

    #[test]
    fn factor_semiprime_u128() {
        let p = 4_294_967_311u64; // next prime after 2^32
        let q = 1_000_000_000_039u64;
        let n = BigUint::from(p) * BigUint::from(q) * BigUint::from(q);
        let f = factorize(&n).unwrap();
        assert_eq!(f.product(), n);
        assert_eq!(f.to_u64_pairs().unwrap(), vec![(p, 1), (q, 2)]);
    }

    #[test]
    fn factor_effort_bound_is_explicit() {
        // Product of two ~64-bit primes cannot be split in 1000 iterations.
        let p = BigUint::from(18_446_744_073_709_551_557u64);
        let q = BigUint::from(18_446_744_073_709_551_533u64);
        let err = factorize_with(&(p * q), &FactorConfig { rho_iterations: 1000 }).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&BigInt::from(50), 5).unwrap(), 2);
        assert_eq!(valuation(&BigInt::from(7), 2).unwrap(), 0);
        assert_eq!(valuation(&BigInt::from(-1_555_200), 2).unwrap(), 8);
        assert!(matches!(valuation(&BigInt::zero(), 3), Err(Error::Undefined(_))));
        // repeated exact division oracle
        let mut n = 1_555_200u64;
        let mut e = 0;
        while n % 2 == 0 {
            n /= 2;
            e += 1;
        }
        assert_eq!(valuation(&BigInt::from(1_555_200), 2).unwrap(), e);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi_u64(25), 20);
        assert_eq!(euler_phi_u64(1), 1);
        assert_eq!(euler_phi_u64(8), 4);
        assert_eq!(euler_phi(&BigUint::from(25u32)).unwrap(), BigUint::from(20u32));
    }

    #[test]
    fn ramification_examples() {
        assert_eq!(cyclotomic_ramification(5, 50).unwrap(), 20);
        assert_eq!(cyclotomic_ramification(5, 12).unwrap(), 1);
        assert_eq!(cyclotomic_ramification(2, 8).unwrap(), 4);
        assert!(abelian_ramification_obstruction(3, 5));
        assert!(!abelian_ramification_obstruction(3, 7));
        assert!(abelian_ramification_obstruction(5, 2));
    }

    #[test]
    fn roots_of_unity_in_completions() {
        // Q_5: mu_4
        assert_eq!(cyclotomic_roots_of_unity(5, 1).unwrap(), 4);
        // Q_5(mu_25): mu_4 x mu_25
        assert_eq!(cyclotomic_roots_of_unity(5, 25).unwrap(), 100);
        // Q_2: +-1; Q_2(mu_8): mu_8
        assert_eq!(cyclotomic_roots_of_unity(2, 1).unwrap(), 2);
        assert_eq!(cyclotomic_roots_of_unity(2, 8).unwrap(), 8);
        // Q_2(mu_7) has residue field F_8: mu_7 x {+-1}
        assert_eq!(cyclotomic_roots_of_unity(2, 7).unwrap(), 14);
        // Q_11(mu_3): residue field F_121
        assert_eq!(cyclotomic_roots_of_unity(11, 3).unwrap(), 120);
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 7).unwrap(), 3);
        assert_eq!(multiplicative_order(1, 5).unwrap(), 1);
        let brute = (1..487).find(|&k| pow_mod(10, k, 487) == 1).unwrap();
        assert_eq!(multiplicative_order(10, 487).unwrap(), brute);
        assert!(multiplicative_order(6, 9).is_err());
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_search(&[(2, 3), (4, 5)], is_prime_u64, 1000).unwrap(), 29);
        assert_eq!(crt_search(&[(1, 2)], is_prime_u64, 1000).unwrap(), 3);
        assert_eq!(crt_search(&[(2, 3), (6, 7)], is_prime_u64, 1000).unwrap(), 41);
        assert!(matches!(
            crt_search(&[(0, 4), (0, 6)], is_prime_u64, 1000),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            crt_search(&[(0, 2)], is_prime_u64, 1),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn catalan_examples() {
        let expected: BTreeSet<_> = [(1, 0), (1, 1), (2, 1), (3, 2)].into_iter().collect();
        assert_eq!(catalan_solutions(60, 40), expected);
        assert_eq!(catalan_solutions(3, 2), expected);
        assert!(catalan_solutions(0, 0).is_empty());
    }

    #[test]
    fn isqrt_edges() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, u64::MAX] {
            let r = isqrt(n);
            assert!(r as u128 * r as u128 <= n as u128);
            assert!((r as u128 + 1) * (r as u128 + 1) > n as u128);
        }
    }
}
