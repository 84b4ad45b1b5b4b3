//! Diagonal forms over `Q_p`: valuation profiles, the staircase criterion,
//! brute-force residue searches and Hensel-liftable local points.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::certificate::{Certificate, CertificateKind, Condition, Premise};
use crate::error::{Error, Result};

/// `sum_i c_i x_i^d` with nonzero integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawForm", into = "RawForm")]
pub struct DiagonalForm {
    degree: u32,
    coefficients: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawForm {
    degree: u32,
    #[serde(with = "crate::json::big_ints")]
    coefficients: Vec<BigInt>,
}

impl TryFrom<RawForm> for DiagonalForm {
    type Error = Error;

    fn try_from(r: RawForm) -> Result<Self> {
        DiagonalForm::new(r.degree, r.coefficients)
    }
}

impl From<DiagonalForm> for RawForm {
    fn from(f: DiagonalForm) -> Self {
        RawForm {
            degree: f.degree,
            coefficients: f.coefficients,
        }
    }
}

impl DiagonalForm {
    pub fn new(degree: u32, coefficients: Vec<BigInt>) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidInput(format!("degree {degree} < 2")));
        }
        if coefficients.len() < 2 {
            return Err(Error::InvalidInput("need at least two variables".into()));
        }
        if coefficients.iter().any(Zero::is_zero) {
            return Err(Error::InvalidInput("coefficients must be nonzero".into()));
        }
        Ok(DiagonalForm {
            degree,
            coefficients,
        })
    }

    pub fn from_i64(degree: u32, coefficients: &[i64]) -> Result<Self> {
        Self::new(degree, coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn num_vars(&self) -> usize {
        self.coefficients.len()
    }

    pub fn eval(&self, x: &[BigInt]) -> BigInt {
        self.coefficients
            .iter()
            .zip(x)
            .map(|(c, xi)| c * xi.pow(self.degree))
            .sum()
    }

    fn variable_names(&self) -> Vec<String> {
        let k = self.num_vars();
        if k <= 4 {
            ["x", "y", "z", "w"][..k].iter().map(|s| s.to_string()).collect()
        } else {
            (0..k).map(|i| format!("x{i}")).collect()
        }
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, v)) in self.coefficients.iter().zip(self.variable_names()).enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{v}^{}", self.degree)?;
        }
        Ok(())
    }
}

fn normalize_superscripts(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_sup = false;
    for ch in s.chars() {
        let digit = "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|c| c == ch);
        match digit {
            Some(d) => {
                if !in_sup {
                    out.push('^');
                    in_sup = true;
                }
                out.push(char::from(b'0' + d as u8));
            }
            None => {
                in_sup = false;
                let sub = "₀₁₂₃₄₅₆₇₈₉".chars().position(|c| c == ch);
                match sub {
                    Some(d) => out.push(char::from(b'0' + d as u8)),
                    None => out.push(ch),
                }
            }
        }
    }
    out.replace(['\u{2212}', '\u{2013}'], "-")
}

impl FromStr for DiagonalForm {
    type Err = Error;

    /// Parses `"2x^3 + 4y^3 + 5z^3"`; variable names are arbitrary
    /// identifiers and every exponent must agree.
    fn from_str(s: &str) -> Result<Self> {
        let s = normalize_superscripts(s);
        let compact: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty form".into()));
        }
        let mut names: Vec<String> = Vec::new();
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut degree: Option<u32> = None;
        for term in crate::poly::split_signed_terms(&compact)? {
            let (neg, body) = match term.strip_prefix('-') {
                Some(r) => (true, r),
                None => (false, term.strip_prefix('+').unwrap_or(term)),
            };
            let pos = body
                .find(|c: char| c.is_alphabetic())
                .ok_or_else(|| Error::Parse(format!("constant term {term:?} in a form")))?;
            let c = if pos == 0 {
                BigInt::one()
            } else {
                body[..pos]
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
            };
            let (name, exp) = body[pos..]
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("missing exponent in {term:?}")))?;
            let exp: u32 = exp
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?;
            if *degree.get_or_insert(exp) != exp {
                return Err(Error::Parse(format!("mixed degrees in {s:?}")));
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::Parse(format!("variable {name} repeated")));
            }
            names.push(name.to_string());
            coeffs.push(if neg { -c } else { c });
        }
        DiagonalForm::new(degree.unwrap_or(0), coeffs)
    }
}

// ---------------------------------------------------------------------------
// Valuations

/// `c_i = u_i p^(a_i)` with `p` not dividing `u_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationProfile {
    pub prime: u64,
    pub valuations: Vec<u32>,
    #[serde(with = "crate::json::big_ints")]
    pub units: Vec<BigInt>,
}

pub fn valuation_profile(form: &DiagonalForm, p: u64) -> Result<ValuationProfile> {
    if !arith::is_prime_u64(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let bp = BigInt::from(p);
    let mut valuations = Vec::new();
    let mut units = Vec::new();
    for c in form.coefficients() {
        let mut u = c.clone();
        let mut a = 0;
        while u.is_multiple_of(&bp) {
            u /= &bp;
            a += 1;
        }
        valuations.push(a);
        units.push(u);
    }
    Ok(ValuationProfile {
        prime: p,
        valuations,
        units,
    })
}

/// The residues `e * a_i mod d` are pairwise distinct.
pub fn distinct_residues(valuations: &[u32], d: u32, e: u64) -> bool {
    let mut seen = vec![false; d as usize];
    for &a in valuations {
        let r = ((a as u128 * e as u128) % d as u128) as usize;
        if seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

/// True iff no nonzero solution exists over any complete discretely valued
/// extension of `Q_p` with ramification index `e`: distinct residues force
/// a unique term of minimal valuation.
pub fn staircase_check(profile: &ValuationProfile, d: u32, e: u64) -> bool {
    e >= 1 && distinct_residues(&profile.valuations, d, e)
}

/// Sorted valuations are exactly `0, 1, ..., d-1`.
pub fn is_full_staircase(valuations: &[u32], d: u32) -> bool {
    let mut v = valuations.to_vec();
    v.sort_unstable();
    v.len() == d as usize && v.iter().enumerate().all(|(i, &a)| a == i as u32)
}

// ---------------------------------------------------------------------------
// Certificates

fn profile_condition(form: &DiagonalForm, profile: &ValuationProfile) -> Condition {
    Condition::new(
        "valuation_profile",
        format!(
            "v_{}(coefficients) = {:?}",
            profile.prime, profile.valuations
        ),
        Premise::Valuations {
            prime: profile.prime,
            coefficients: form.coefficients().to_vec(),
            valuations: profile.valuations.clone(),
        },
    )
}

/// No nonzero solution over extensions of `Q_p` with ramification index
/// `e` (or any `e' = e mod d`).
pub fn certify_staircase_local(form: &DiagonalForm, p: u64, e: u64) -> Result<Option<Certificate>> {
    if e == 0 {
        return Err(Error::InvalidInput("ramification index must be >= 1".into()));
    }
    let profile = valuation_profile(form, p)?;
    let d = form.degree();
    if !staircase_check(&profile, d, e) {
        return Ok(None);
    }
    let conditions = vec![
        profile_condition(form, &profile),
        Condition::new(
            "distinct_residues",
            format!("{e} * v_i mod {d} pairwise distinct"),
            Premise::DistinctResidues {
                degree: d,
                valuations: profile.valuations.clone(),
                ramification: e,
            },
        ),
    ];
    let lemma_chain = vec![
        format!(
            "Over an extension of Q_{p} with ramification index {e}, the term c_i x_i^{d} has normalized valuation {e}*v_p(c_i) + {d}*v(x_i), which is {e}*v_p(c_i) mod {d}."
        ),
        "These residues are pairwise distinct, so for a nonzero vector exactly one term attains the minimal valuation.".into(),
        "A sum with a unique term of minimal valuation is nonzero, so the form has no nonzero zero over such an extension.".into(),
    ];
    Ok(Some(Certificate {
        kind: CertificateKind::StaircaseLocal,
        form: Some(form.clone()),
        prime: Some(p),
        ramification: Some(e),
        profile: Some(profile.valuations),
        conditions,
        lemma_chain,
        ..Certificate::empty(CertificateKind::StaircaseLocal)
    }))
}

/// Certificate that the form has no points over `Q_p^ab`, hence none over
/// `Q^ab`. Issued when the valuations at `p` are a permutation of
/// `0..d-1` and `gcd(d, p(p-1)) = 1`. A missing certificate says nothing
/// about solubility.
pub fn certify_no_abelian_points(form: &DiagonalForm, p: u64) -> Result<Option<Certificate>> {
    let profile = valuation_profile(form, p)?;
    let d = form.degree();
    if !is_full_staircase(&profile.valuations, d) {
        return Ok(None);
    }
    if !arith::abelian_ramification_obstruction(d as u64, p) {
        return Ok(None);
    }
    let conditions = vec![
        profile_condition(form, &profile),
        Condition::new(
            "staircase_profile",
            format!("sorted valuations are 0..{} with one variable per step", d - 1),
            Premise::FullStaircase {
                degree: d,
                valuations: profile.valuations.clone(),
            },
        ),
        Condition::new(
            "ramification_coprime",
            format!("gcd({d}, {p}*({p}-1)) = 1"),
            Premise::RamificationCoprime {
                degree: d as u64,
                prime: p,
            },
        ),
    ];
    let lemma_chain = vec![
        "Kronecker-Weber: Q^ab is generated by the roots of unity, so a Q^ab-point is defined over some Q(mu_N), and its image in a completion above p is a Q_p^ab-point.".into(),
        format!(
            "Local Kronecker-Weber: a finite subextension of Q_p^ab has ramification index dividing phi({p}^i) = {p}^(i-1)*({p}-1) for some i >= 0."
        ),
        format!("Since gcd({d}, {p}*({p}-1)) = 1, every such ramification index e is prime to {d}."),
        format!(
            "Over an extension with ramification index e, c_i x_i^{d} has valuation e*v_i + {d}*v(x_i), congruent to e*v_i mod {d}."
        ),
        format!(
            "The valuations v_i form a permutation of 0..{}, so e*v_i mod {d} are pairwise distinct when gcd(e, {d}) = 1 (a permuted profile is accepted).",
            d - 1
        ),
        "A unique term of minimal valuation cannot cancel, so there is no nonzero solution over Q_p^ab, and hence none over Q^ab.".into(),
    ];
    Ok(Some(Certificate {
        kind: CertificateKind::NoAbelianPoints,
        form: Some(form.clone()),
        prime: Some(p),
        profile: Some(profile.valuations),
        conditions,
        lemma_chain,
        ..Certificate::empty(CertificateKind::NoAbelianPoints)
    }))
}

/// All [`certify_no_abelian_points`] certificates at primes `p <= p_max`,
/// sorted by prime. Only primes dividing a coefficient can qualify.
pub fn scan_primes_for_certificate(form: &DiagonalForm, p_max: u64) -> Result<Vec<Certificate>> {
    if p_max < 2 {
        return Err(Error::InvalidInput("p_max must be >= 2".into()));
    }
    let mut primes = std::collections::BTreeSet::new();
    for c in form.coefficients() {
        let mag = c.abs().to_biguint().unwrap_or_default();
        for (p, _) in arith::factorize(&mag)?.factors() {
            if let Some(p) = p.to_u64().filter(|&p| p <= p_max) {
                primes.insert(p);
            }
        }
    }
    let mut out = Vec::new();
    for p in primes {
        if let Some(c) = certify_no_abelian_points(form, p)? {
            out.push(c);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Builders

/// `a X^3 + b p Y^3 + c p^2 Z^3` for `p = 2 mod 3` not dividing `abc`.
pub fn staircase_cubic_form(a: i64, b: i64, c: i64, p: u64) -> Result<DiagonalForm> {
    if !arith::is_prime_u64(p) {
        return Err(Error::HypothesisViolation(format!("{p} is not prime")));
    }
    if p % 3 != 2 {
        return Err(Error::HypothesisViolation(format!(
            "p = {p} is {} mod 3, not 2 mod 3",
            p % 3
        )));
    }
    for (name, v) in [("a", a), ("b", b), ("c", c)] {
        if v == 0 || v.unsigned_abs() % p == 0 {
            return Err(Error::HypothesisViolation(format!(
                "p = {p} divides {name} = {v}; the coefficients must be prime to p"
            )));
        }
    }
    let p = BigInt::from(p);
    DiagonalForm::new(
        3,
        vec![BigInt::from(a), BigInt::from(b) * &p, BigInt::from(c) * &p * &p],
    )
}

/// `sum_{i < ell} p^i X_i^ell` for an odd prime `ell` not dividing `p(p-1)`.
pub fn build_cy_form(ell: u32, p: u64) -> Result<DiagonalForm> {
    if !arith::is_prime_u64(p) {
        return Err(Error::HypothesisViolation(format!("{p} is not prime")));
    }
    if ell < 3 || !arith::is_prime_u64(ell as u64) {
        return Err(Error::HypothesisViolation(format!("{ell} is not an odd prime")));
    }
    if !arith::abelian_ramification_obstruction(ell as u64, p) {
        return Err(Error::HypothesisViolation(format!(
            "{ell} divides p(p-1) = {}",
            p as u128 * (p as u128 - 1)
        )));
    }
    let bp = BigInt::from(p);
    DiagonalForm::new(ell, (0..ell).map(|i| bp.pow(i)).collect())
}

// ---------------------------------------------------------------------------
// Residue searches

/// How [`brute_force_primitive_with`] explores residues mod `p^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Every primitive tuple, normalized so the first unit coordinate is 1.
    Exhaustive,
    /// Reachable partial sums, tracked separately for tuples with and
    /// without a unit coordinate.
    Cascade,
    /// Exhaustive when within budget, otherwise cascade.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub mode: SearchMode,
    /// Maximum number of tuples visited by an exhaustive search.
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: SearchMode::Auto,
            budget: 50_000_000,
        }
    }
}

/// Largest modulus `p^m` the residue tables are built for.
pub const MAX_MODULUS: u64 = 1 << 22;

struct Residues {
    p: u64,
    modulus: u64,
    /// `tables[i][x] = c_i x^d mod p^m`
    tables: Vec<Vec<u32>>,
}

impl Residues {
    fn new(form: &DiagonalForm, p: u64, m: u32) -> Result<Self> {
        if !arith::is_prime_u64(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidInput("precision must be >= 1".into()));
        }
        let modulus = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or_else(|| Error::ResourceLimit(format!("{p}^{m} exceeds {MAX_MODULUS}")))?;
        let bm = BigInt::from(modulus);
        let d = form.degree();
        let powers: Vec<u64> = (0..modulus)
            .map(|x| arith::pow_mod(x, d as u64, modulus))
            .collect();
        let tables = form
            .coefficients()
            .iter()
            .map(|c| {
                let c = c.mod_floor(&bm).to_u64().unwrap_or(0);
                powers
                    .iter()
                    .map(|&xd| arith::mul_mod(c, xd, modulus) as u32)
                    .collect()
            })
            .collect();
        Ok(Residues { p, modulus, tables })
    }

    fn k(&self) -> usize {
        self.tables.len()
    }

    /// Number of normalized primitive tuples.
    fn normalized_count(&self) -> u128 {
        let big = self.modulus as u128;
        let small = (self.modulus / self.p) as u128;
        let k = self.k() as u32;
        (0..k)
            .map(|j| small.saturating_pow(j).saturating_mul(big.saturating_pow(k - 1 - j)))
            .fold(0u128, u128::saturating_add)
    }

    /// Calls `visit` on every normalized primitive tuple whose form value
    /// vanishes mod `p^m`; stops early when `visit` returns true.
    fn for_each_zero(&self, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
        let k = self.k();
        let mut x = vec![0u64; k];
        for j in 0..k {
            x.iter_mut().for_each(|v| *v = 0);
            x[j] = 1;
            if self.recurse(0, j, 0, &mut x, &mut visit) {
                return true;
            }
        }
        false
    }

    fn recurse(
        &self,
        idx: usize,
        unit_idx: usize,
        sum: u64,
        x: &mut Vec<u64>,
        visit: &mut impl FnMut(&[u64]) -> bool,
    ) -> bool {
        let k = self.k();
        let q = self.modulus;
        let add = |s: u64, t: u32| {
            let r = s + t as u64;
            if r >= q {
                r - q
            } else {
                r
            }
        };
        if idx == unit_idx {
            let s = add(sum, self.tables[idx][1]);
            if idx + 1 == k {
                return s == 0 && visit(x);
            }
            return self.recurse(idx + 1, unit_idx, s, x, visit);
        }
        let step = if idx < unit_idx { self.p } else { 1 };
        let table = &self.tables[idx];
        let mut v = 0;
        while v < q {
            let s = add(sum, table[v as usize]);
            x[idx] = v;
            if idx + 1 == k {
                if s == 0 && visit(x) {
                    return true;
                }
            } else if self.recurse(idx + 1, unit_idx, s, x, visit) {
                return true;
            }
            v += step;
        }
        x[idx] = 0;
        false
    }

    fn cascade(&self) -> bool {
        let q = self.modulus as usize;
        let words = q.div_ceil(64);
        let mut r0 = vec![0u64; words];
        let mut r1 = vec![0u64; words];
        set_bit(&mut r0, 0);
        let k = self.k();
        for (i, table) in self.tables.iter().enumerate() {
            let mut units = vec![0u64; words];
            let mut nonunits = vec![0u64; words];
            for (x, &v) in table.iter().enumerate() {
                if x as u64 % self.p == 0 {
                    set_bit(&mut nonunits, v as usize);
                } else {
                    set_bit(&mut units, v as usize);
                }
            }
            let mut all = units.clone();
            or_into(&mut all, &nonunits);
            if i + 1 == k {
                return bits(&all).any(|v| get_bit(&r1, (q - v) % q))
                    || bits(&units).any(|v| get_bit(&r0, (q - v) % q));
            }
            let mut next1 = sumset(&r1, &all, q);
            or_into(&mut next1, &sumset(&r0, &units, q));
            r0 = sumset(&r0, &nonunits, q);
            r1 = next1;
            if get_bit(&r1, 0) {
                return true;
            }
        }
        get_bit(&r1, 0)
    }
}

fn set_bit(b: &mut [u64], i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn get_bit(b: &[u64], i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn or_into(dst: &mut [u64], src: &[u64]) {
    dst.iter_mut().zip(src).for_each(|(d, s)| *d |= s);
}

fn bits(b: &[u64]) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let t = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + t)
        })
    })
}

/// ORs the bits of `src` in `[lo, hi)` into `dst`, moved by `shift`.
fn or_shifted_range(dst: &mut [u64], src: &[u64], lo: usize, hi: usize, shift: isize) {
    if lo >= hi {
        return;
    }
    for w in lo / 64..=(hi - 1) / 64 {
        let base = w * 64;
        let mut word = src[w];
        if base < lo {
            word &= !0u64 << (lo - base);
        }
        if base + 64 > hi {
            let keep = hi - base;
            word &= (1u64 << keep) - 1;
        }
        if word == 0 {
            continue;
        }
        let target = base as isize + shift;
        let tw = target.div_euclid(64);
        let tb = target.rem_euclid(64) as u32;
        if tw >= 0 && (tw as usize) < dst.len() {
            dst[tw as usize] |= word << tb;
        }
        if tb != 0 && tw + 1 >= 0 && ((tw + 1) as usize) < dst.len() {
            dst[(tw + 1) as usize] |= word >> (64 - tb);
        }
    }
}

/// `{a + b mod q : a in x, b in y}`.
fn sumset(x: &[u64], y: &[u64], q: usize) -> Vec<u64> {
    let count = |b: &[u64]| b.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    let (dense, sparse) = if count(x) >= count(y) { (x, y) } else { (y, x) };
    let mut out = vec![0u64; dense.len()];
    for v in bits(sparse) {
        // bits b < q - v move up by v, the rest wrap to b + v - q
        or_shifted_range(&mut out, dense, 0, q - v, v as isize);
        or_shifted_range(&mut out, dense, q - v, q, v as isize - q as isize);
    }
    out
}

/// Whether some primitive tuple satisfies `F = 0 mod p^m`.
pub fn brute_force_primitive(form: &DiagonalForm, p: u64, m: u32) -> Result<bool> {
    brute_force_primitive_with(form, p, m, &SearchConfig::default())
}

pub fn brute_force_primitive_with(
    form: &DiagonalForm,
    p: u64,
    m: u32,
    config: &SearchConfig,
) -> Result<bool> {
    let r = Residues::new(form, p, m)?;
    let within_budget = r.normalized_count() <= config.budget as u128;
    match config.mode {
        SearchMode::Exhaustive if !within_budget => Err(Error::ResourceLimit(format!(
            "{} tuples mod {p}^{m} exceed the budget {}",
            r.normalized_count(),
            config.budget
        ))),
        SearchMode::Exhaustive => Ok(r.for_each_zero(|_| true)),
        SearchMode::Auto if within_budget => Ok(r.for_each_zero(|_| true)),
        SearchMode::Cascade | SearchMode::Auto => Ok(r.cascade()),
    }
}

// ---------------------------------------------------------------------------
// Hensel-liftable local points

/// A primitive integer vector `x` and a coordinate `j` with
/// `v_p(dF/dx_j (x)) = w` and `F(x) = 0 mod p^(2w+1)`, so `x` lifts to a
/// `Z_p`-point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    pub form: DiagonalForm,
    pub prime: u64,
    pub precision: u32,
    pub point: Vec<u64>,
    pub coordinate: usize,
    pub partial_valuation: u32,
    /// `v_p(F(x))`; absent when `F(x) = 0` exactly.
    pub value_valuation: Option<u32>,
}

impl LocalWitness {
    pub fn verify(&self) -> Result<()> {
        let fail = |why: String| Err(Error::Verification(why));
        let p = self.prime;
        if self.point.len() != self.form.num_vars() {
            return fail("point has the wrong length".into());
        }
        if self.point.iter().all(|&x| x % p == 0) {
            return fail("point is not primitive".into());
        }
        let x: Vec<BigInt> = self.point.iter().map(|&v| BigInt::from(v)).collect();
        let j = self.coordinate;
        let partial = BigInt::from(self.form.degree())
            * &self.form.coefficients()[j]
            * x[j].pow(self.form.degree() - 1);
        if partial.is_zero() {
            return fail("partial derivative vanishes".into());
        }
        let w = arith::valuation(&partial, p)?;
        if w != self.partial_valuation {
            return fail(format!("partial valuation is {w}"));
        }
        let value = self.form.eval(&x);
        let v = if value.is_zero() {
            None
        } else {
            Some(arith::valuation(&value, p)?)
        };
        if v != self.value_valuation {
            return fail(format!("value valuation is {v:?}"));
        }
        if v.is_some_and(|v| v < 2 * w + 1) {
            return fail(format!("F(x) is not 0 mod p^{}", 2 * w + 1));
        }
        Ok(())
    }
}

fn hensel_witness(form: &DiagonalForm, p: u64, m: u32, point: &[u64]) -> Option<LocalWitness> {
    let x: Vec<BigInt> = point.iter().map(|&v| BigInt::from(v)).collect();
    let value = form.eval(&x);
    let value_valuation = if value.is_zero() {
        None
    } else {
        Some(arith::valuation(&value, p).ok()?)
    };
    let d = form.degree();
    let (coordinate, w) = (0..point.len())
        .filter(|&j| point[j] != 0)
        .filter_map(|j| {
            let partial = BigInt::from(d) * &form.coefficients()[j] * x[j].pow(d - 1);
            Some((j, arith::valuation(&partial, p).ok()?))
        })
        .min_by_key(|&(_, w)| w)?;
    if value_valuation.is_some_and(|v| v < 2 * w + 1) {
        return None;
    }
    Some(LocalWitness {
        form: form.clone(),
        prime: p,
        precision: m,
        point: point.to_vec(),
        coordinate,
        partial_valuation: w,
        value_valuation,
    })
}

/// Searches normalized primitive tuples mod `p^m` for a Hensel-liftable
/// witness. `None` means none at this precision.
pub fn local_solve_diagonal(
    form: &DiagonalForm,
    p: u64,
    m: u32,
    config: &SearchConfig,
) -> Result<Option<LocalWitness>> {
    let r = Residues::new(form, p, m)?;
    if r.normalized_count() > config.budget as u128 {
        return Err(Error::ResourceLimit(format!(
            "{} tuples mod {p}^{m} exceed the budget {}",
            r.normalized_count(),
            config.budget
        )));
    }
    let mut found = None;
    r.for_each_zero(|x| {
        found = hensel_witness(form, p, m, x);
        found.is_some()
    });
    Ok(found)
}

/// Precisions tried in turn by [`local_solve_escalating`].
pub const PRECISION_LADDER: [u32; 3] = [1, 3, 5];

/// Tries precisions 1, 3, 5 up to `max_m` and returns the first witness.
/// Precisions beyond the budget are skipped; if nothing was found and one
/// was skipped the result is a resource-limit error.
pub fn local_solve_escalating(
    form: &DiagonalForm,
    p: u64,
    max_m: u32,
    config: &SearchConfig,
) -> Result<Option<LocalWitness>> {
    let mut skipped = None;
    for m in PRECISION_LADDER.into_iter().filter(|&m| m <= max_m.max(1)) {
        match local_solve_diagonal(form, p, m, config) {
            Ok(Some(w)) => return Ok(Some(w)),
            Ok(None) => {}
            Err(e @ Error::ResourceLimit(_)) => {
                skipped = Some(e);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    match skipped {
        Some(e) => Err(e),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> DiagonalForm {
        s.parse().unwrap()
    }

    #[test]
    fn profiles() {
        let v = |s: &str, p| valuation_profile(&form(s), p).unwrap().valuations;
        assert_eq!(v("2x^3 + 4y^3 + 5z^3", 2), vec![1, 2, 0]);
        assert_eq!(v("3x^3 + 4y^3 + 5z^3", 2), vec![0, 2, 0]);
        assert_eq!(v("x^3 + y^3 + z^3", 7), vec![0, 0, 0]);
        let prof = valuation_profile(&form("2x^3 + 4y^3 + 5z^3"), 2).unwrap();
        assert_eq!(prof.units, vec![BigInt::from(1), BigInt::from(1), BigInt::from(5)]);
    }

    #[test]
    fn staircase_examples() {
        let prof = |v: Vec<u32>| ValuationProfile {
            prime: 2,
            units: vec![BigInt::one(); v.len()],
            valuations: v,
        };
        assert!(staircase_check(&prof(vec![0, 1, 2]), 3, 1));
        assert!(!staircase_check(&prof(vec![0, 1, 2]), 3, 3));
        assert!(staircase_check(&prof(vec![0, 1, 2, 3, 4]), 5, 2));
    }

    #[test]
    fn parse_and_display() {
        let f = form("2x^3 + 4y^3 + 5z^3");
        assert_eq!(f.to_string(), "2x^3 + 4y^3 + 5z^3");
        assert_eq!(form("X³+5Y³+1500Z³"), DiagonalForm::from_i64(3, &[1, 5, 1500]).unwrap());
        assert_eq!(form("x_0^5 - 2x_1^5").coefficients()[1], BigInt::from(-2));
        assert!("x^3 + y^2".parse::<DiagonalForm>().is_err());
        assert!("x^3 + x^3".parse::<DiagonalForm>().is_err());
        assert!("x^3 + 1".parse::<DiagonalForm>().is_err());
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"degree":3,"coefficients":[2,4,5]}"#);
    }

    #[test]
    fn certificates() {
        let c = certify_no_abelian_points(&form("2x^3 + 4y^3 + 5z^3"), 2).unwrap();
        assert!(c.is_some());
        for p in arith::primes_up_to(100) {
            assert!(certify_no_abelian_points(&form("3x^3 + 4y^3 + 5z^3"), p)
                .unwrap()
                .is_none());
        }
        let found = scan_primes_for_certificate(&form("2x^3 + 4y^3 + 5z^3"), 100).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].prime, Some(2));
        assert!(scan_primes_for_certificate(&form("3x^3 + 4y^3 + 5z^3"), 100)
            .unwrap()
            .is_empty());
        let cy = build_cy_form(5, 2).unwrap();
        let found = scan_primes_for_certificate(&cy, 10).unwrap();
        assert_eq!(found.iter().map(|c| c.prime).collect::<Vec<_>>(), vec![Some(2)]);
    }

    #[test]
    fn builders() {
        assert_eq!(
            staircase_cubic_form(1, 1, 60, 11).unwrap(),
            DiagonalForm::from_i64(3, &[1, 11, 7260]).unwrap()
        );
        // 5 divides 60, so the coprimality hypothesis fails at p = 5
        assert!(matches!(
            staircase_cubic_form(1, 1, 60, 5),
            Err(Error::HypothesisViolation(_))
        ));
        assert!(matches!(
            staircase_cubic_form(1, 1, 1, 7),
            Err(Error::HypothesisViolation(_))
        ));
        assert_eq!(
            build_cy_form(5, 2).unwrap(),
            DiagonalForm::from_i64(5, &[1, 2, 4, 8, 16]).unwrap()
        );
        assert!(build_cy_form(5, 11).is_err());
    }

    #[test]
    fn x3_5y3_1500z3_has_5_adic_points() {
        let f = DiagonalForm::from_i64(3, &[1, 5, 1500]).unwrap();
        assert!(certify_no_abelian_points(&f, 5).unwrap().is_none());
        let w = local_solve_escalating(&f, 5, 5, &SearchConfig::default())
            .unwrap()
            .expect("a 5-adic point");
        w.verify().unwrap();
    }

    #[test]
    fn brute_force_examples() {
        assert!(!brute_force_primitive(&form("2x^3 + 4y^3 + 5z^3"), 2, 3).unwrap());
        assert!(brute_force_primitive(&form("x^3 + y^3 + z^3"), 2, 1).unwrap());
        assert!(!brute_force_primitive(&form("x^3 + 5y^3 + 25z^3"), 5, 3).unwrap());
    }

    /// Every tuple mod p^m, no normalization.
    fn naive_primitive(f: &DiagonalForm, p: u64, m: u32) -> bool {
        let q = p.pow(m);
        let k = f.num_vars();
        let total = q.pow(k as u32);
        (0..total).any(|mut code| {
            let x: Vec<BigInt> = (0..k)
                .map(|_| {
                    let v = code % q;
                    code /= q;
                    BigInt::from(v)
                })
                .collect();
            let primitive = x.iter().any(|v| !(v % p).is_zero());
            primitive && (f.eval(&x) % BigInt::from(q)).is_zero()
        })
    }

    #[test]
    fn modes_agree_with_naive() {
        let exh = SearchConfig {
            mode: SearchMode::Exhaustive,
            budget: u64::MAX,
        };
        let cas = SearchConfig {
            mode: SearchMode::Cascade,
            budget: 0,
        };
        for p in [2u64, 3, 5] {
            for a in 1..=4i64 {
                for b in [1i64, 2, 3, 6, 9, 10] {
                    for c in [1i64, 4, 5, 25, 12] {
                        let f = DiagonalForm::from_i64(3, &[a, b, c]).unwrap();
                        let m = if p == 5 { 2 } else { 3 };
                        let want = naive_primitive(&f, p, m);
                        assert_eq!(brute_force_primitive_with(&f, p, m, &exh).unwrap(), want, "{f} p={p}");
                        assert_eq!(brute_force_primitive_with(&f, p, m, &cas).unwrap(), want, "{f} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn local_solve_examples() {
        let cfg = SearchConfig::default();
        let selmer = form("3x^3 + 4y^3 + 5z^3");
        let w = local_solve_diagonal(&selmer, 7, 3, &cfg).unwrap().unwrap();
        w.verify().unwrap();
        assert!(local_solve_diagonal(&form("2x^3 + 4y^3 + 5z^3"), 2, 3, &cfg)
            .unwrap()
            .is_none());
        let w = local_solve_diagonal(&form("x^3 + y^3 + z^3"), 5, 1, &cfg).unwrap().unwrap();
        let x: Vec<BigInt> = w.point.iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(w.partial_valuation, 0);
        assert!((form("x^3 + y^3 + z^3").eval(&x) % BigInt::from(5)).is_zero());
    }

    #[test]
    fn tampered_witness_rejected() {
        let cfg = SearchConfig::default();
        let selmer = form("3x^3 + 4y^3 + 5z^3");
        let mut w = local_solve_diagonal(&selmer, 7, 1, &cfg).unwrap().unwrap();
        // 3 + 4 + 5 = 12 is a unit mod 7
        w.point = vec![1, 1, 1];
        assert!(w.verify().is_err(), "{w:?}");
    }

    #[test]
    fn sumset_matches_naive() {
        let q = 200usize;
        let mut x = vec![0u64; q.div_ceil(64)];
        let mut y = vec![0u64; q.div_ceil(64)];
        for v in [0usize, 3, 63, 64, 65, 127, 150, 199] {
            set_bit(&mut x, v);
        }
        for v in [1usize, 50, 64, 100, 199] {
            set_bit(&mut y, v);
        }
        let got: Vec<usize> = bits(&sumset(&x, &y, q)).collect();
        let mut want: Vec<usize> = bits(&x)
            .flat_map(|a| bits(&y).map(move |b| (a + b) % q).collect::<Vec<_>>())
            .collect();
        want.sort_unstable();
        want.dedup();
        assert_eq!(got, want);
    }
}
