//! Closed-form values and exact range checks of the numeric inequalities
//! behind the bounds for `σ(A_n ≀ C_m)`, `σ(M11 ≀ C_m)` and `σ(PSL(2,p) ≀ C_m)`.
//!
//! Everything is exact: factorials and binomials are big integers, `2.6` is
//! `13/5`, and half-integer powers are compared after squaring both sides.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::{alpha, divisors, is_prime, smallest_prime_divisor};
use crate::serde_big;

const MEMO: usize = 512;

fn memo() -> &'static [BigUint] {
    static TABLE: OnceLock<Vec<BigUint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = vec![BigUint::one()];
        for i in 1..=MEMO {
            let next = &v[i - 1] * BigUint::from(i);
            v.push(next);
        }
        v
    })
}

pub fn factorial(n: u64) -> BigUint {
    match memo().get(n as usize) {
        Some(f) => f.clone(),
        None => (MEMO as u64 + 1..=n).fold(memo()[MEMO].clone(), |acc, i| acc * BigUint::from(i)),
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A value with notes on violated hypotheses; evaluation never refuses.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluated<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

fn ratio(a: BigUint, b: BigUint) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn int(a: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

fn pow_r(x: &BigRational, e: u64) -> BigRational {
    num_traits::pow(x.clone(), e as usize)
}

/// `α(m) + 11^m + 12^m`.
pub fn c1_value(m: u64) -> BigUint {
    BigUint::from(alpha(m)) + BigUint::from(11u32).pow(m as u32) + BigUint::from(12u32).pow(m as u32)
}

/// `α(m) + (p+1)^m + (p(p−1)/2)^m`; valid for primes `p ≥ 11` and `m` with
/// least prime divisor at least 5.
pub fn c2_value(p: u64, m: u64) -> Evaluated<BigUint> {
    let mut warnings = Vec::new();
    if !is_prime(p) || p < 11 {
        warnings.push(format!("p = {p} is not a prime at least 11"));
    }
    match smallest_prime_divisor(m) {
        None => warnings.push("m = 1 has no prime divisor; the value is σ(PSL(2,p)) itself".into()),
        Some(l) if l < 5 => warnings.push(format!("least prime divisor {l} of m is below 5")),
        _ => {}
    }
    let value = BigUint::from(alpha(m))
        + BigUint::from(p + 1).pow(m as u32)
        + BigUint::from(p * (p - 1) / 2).pow(m as u32);
    Evaluated { value, warnings }
}

/// `α(m) + Σ_{i odd ≤ n/2−2} C(n,i)^m + C(n,n/2)^m / 2^m` for `n ≡ 2 mod 4`.
pub fn main2_value(n: u64, m: u64) -> Result<Evaluated<BigUint>> {
    let mut warnings = Vec::new();
    if n % 4 != 2 {
        return Err(Error::Hypothesis(format!("n = {n} is not 2 mod 4")));
    }
    if n <= 12 {
        warnings.push(format!("n = {n} is not larger than 12"));
    }
    let mut v = BigUint::from(alpha(m));
    for i in (1..=n / 2 - 2).step_by(2) {
        v += binomial(n, i).pow(m as u32);
    }
    let mid = binomial(n, n / 2).pow(m as u32);
    let two_m = BigUint::one() << m;
    let (q, r) = mid.div_rem(&two_m);
    if !r.is_zero() {
        return Err(Error::Hypothesis(format!("2^{m} does not divide C({n},{})^{m}", n / 2)));
    }
    Ok(Evaluated { value: v + q, warnings })
}

/// `α(m) + ½ Σ_{i odd ≤ n} C(n,i)^m`.
pub fn main2_lower_bound(n: u64, m: u64) -> Evaluated<BigRational> {
    let mut warnings = Vec::new();
    if n <= 12 {
        warnings.push(format!("n = {n} is not larger than 12"));
    }
    if n % 4 == 2 {
        warnings.push("for n ≡ 2 mod 4 the exact value is main2_value".into());
    }
    let s: BigUint = (1..=n).step_by(2).map(|i| binomial(n, i).pow(m as u32)).sum();
    let value = BigRational::from_integer(BigInt::from(alpha(m))) + ratio(s, BigUint::from(2u32));
    Evaluated { value, warnings }
}

/// `|S_n : S_{n/a} ≀ S_a|` as the order `((n/a)!)^a a!` of the wreath product.
pub fn wreath_order(n: u64, a: u64) -> BigUint {
    factorial(n / a).pow(a as u32) * factorial(a)
}

/// Ratio of the extra cover members to the unbeatable family:
/// for `4 | n`, `(C(n,n/2)/2)^m / (½ Σ_{i odd} C(n,i)^m)`;
/// for odd `n` with least prime `p`, `Σ_{i ≤ n/3} C(n,i)^m / (n!/((n/p)!^p p!))^m`.
pub fn f_ratio(n: u64, m: u64) -> Result<Evaluated<BigRational>> {
    let mut warnings = Vec::new();
    if m < 2 {
        warnings.push("m < 2".into());
    }
    if n % 4 == 0 {
        if n < 16 {
            warnings.push(format!("n = {n} < 16"));
        }
        let num = pow_r(&ratio(binomial(n, n / 2), BigUint::from(2u32)), m);
        let den: BigUint = (1..=n).step_by(2).map(|i| binomial(n, i).pow(m as u32)).sum();
        return Ok(Evaluated { value: num / ratio(den, BigUint::from(2u32)), warnings });
    }
    if n % 2 == 1 && !is_prime(n) && n > 1 {
        let p = smallest_prime_divisor(n).expect("n > 1");
        if p * p * p > n {
            warnings.push(format!("least prime {p} exceeds the cube root of {n}"));
        }
        let num: BigUint = (1..=n / 3).map(|i| binomial(n, i).pow(m as u32)).sum();
        let den = (factorial(n) / wreath_order(n, p)).pow(m as u32);
        return Ok(Evaluated { value: ratio(num, den), warnings });
    }
    Err(Error::Hypothesis(format!("n = {n} is neither divisible by 4 nor odd composite")))
}

// ---------------------------------------------------------------------------
// Stirling bounds with interval arithmetic on fixed-point logarithms.

/// Working precision in bits of the fixed-point logarithms.
const PREC: u32 = 256;
/// Guard bits added to every intermediate computation.
const GUARD: u32 = 64;
/// Rounding slack, in ulps of the working precision, added on each side of
/// every computed logarithm. It exceeds the accumulated floor errors of the
/// series by many orders of magnitude.
const SLACK_BITS: u32 = 24;

/// A closed interval `[lo, hi]` of reals in fixed point with scale `2^PREC`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
}

impl Interval {
    fn exact(x: BigInt) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    fn widen(mut self, ulps: &BigInt) -> Self {
        self.lo -= ulps;
        self.hi += ulps;
        self
    }

    fn add(&self, o: &Self) -> Self {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn sub(&self, o: &Self) -> Self {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn scale(&self, k: &BigInt) -> Self {
        debug_assert!(!k.is_negative());
        Interval { lo: &self.lo * k, hi: &self.hi * k }
    }

    fn half(&self) -> Self {
        Interval { lo: self.lo.div_floor(&BigInt::from(2)), hi: -((-&self.hi).div_floor(&BigInt::from(2))) }
    }

    /// Midpoint as `f64` (for display only).
    pub fn approx(&self) -> f64 {
        let mid: BigInt = (&self.lo + &self.hi) >> 1usize;
        let shift = mid.bits().saturating_sub(60) as usize;
        let top = (&mid >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - PREC as i32)
    }

    /// `self < other` holds for every pair of points.
    pub fn strictly_below(&self, other: &Self) -> bool {
        self.hi < other.lo
    }
}

fn one_fixed(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// `atanh(z)` for fixed-point `z` (scale `2^bits`) with `|z| ≤ 1/3`.
fn atanh_fixed(z: &BigInt, bits: u32) -> BigInt {
    let z2 = (z * z) >> bits as usize;
    let mut p = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u64;
    while !p.is_zero() {
        sum += &p / BigInt::from(k);
        p = (&p * &z2) >> bits as usize;
        k += 2;
    }
    sum
}

/// `arctan(1/k)` in fixed point.
fn arctan_inv_fixed(k: u64, bits: u32) -> BigInt {
    let one = one_fixed(bits);
    let k2 = BigInt::from(k * k);
    let mut p = one / BigInt::from(k);
    let mut sum = BigInt::zero();
    let mut j = 1u64;
    let mut sign = true;
    while !p.is_zero() {
        let t = &p / BigInt::from(j);
        if sign {
            sum += t;
        } else {
            sum -= t;
        }
        p /= &k2;
        j += 2;
        sign = !sign;
    }
    sum
}

fn slack() -> BigInt {
    BigInt::one() << SLACK_BITS as usize
}

fn round_down(x: &BigInt) -> BigInt {
    x >> GUARD as usize
}

fn to_interval(x: BigInt) -> Interval {
    Interval::exact(round_down(&x)).widen(&slack())
}

fn ln2_fixed(bits: u32) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let z = one_fixed(bits) / BigInt::from(3);
    atanh_fixed(&z, bits) * 2
}

/// `ln x` for `x ≥ 1` given as a big integer.
fn ln_biguint(x: &BigUint) -> Interval {
    let bits = PREC + GUARD;
    let k = x.bits() - 1;
    // f = x / 2^k ∈ [1, 2) in fixed point
    let f = (BigInt::from(x.clone()) << bits as usize) >> k as usize;
    let one = one_fixed(bits);
    let z = ((&f - &one) << bits as usize) / (&f + &one);
    let v = atanh_fixed(&z, bits) * 2 + ln2_fixed(bits) * BigInt::from(k);
    to_interval(v)
}

fn ln_pi() -> Interval {
    let bits = PREC + GUARD;
    let pi = arctan_inv_fixed(5, bits) * 16 - arctan_inv_fixed(239, bits) * 4;
    // normalize π/2 ∈ [1, 2)
    let f = &pi >> 1usize;
    let one = one_fixed(bits);
    let z = ((&f - &one) << bits as usize) / (&f + &one);
    to_interval(atanh_fixed(&z, bits) * 2 + ln2_fixed(bits))
}

fn ln2() -> Interval {
    to_interval(ln2_fixed(PREC + GUARD))
}

fn fixed_ratio(num: u64, den: u64) -> Interval {
    let bits = PREC + GUARD;
    to_interval((BigInt::from(num) << bits as usize) / BigInt::from(den))
}

/// Logarithms of both sides of
/// `√(2πn)(n/e)^n e^{1/(12n+1)} < n! < √(2πn)(n/e)^n e^{1/(12n)}`.
#[derive(Clone, Debug)]
pub struct StirlingBounds {
    pub n: u64,
    pub ln_lower: Interval,
    pub ln_factorial: Interval,
    pub ln_upper: Interval,
}

impl StirlingBounds {
    /// Both inequalities hold with certainty.
    pub fn brackets(&self) -> bool {
        self.ln_lower.strictly_below(&self.ln_factorial) && self.ln_factorial.strictly_below(&self.ln_upper)
    }
}

pub fn stirling_bounds(n: u64) -> StirlingBounds {
    stirling_with_factorial(n, &factorial(n))
}

fn stirling_with_factorial(n: u64, fact: &BigUint) -> StirlingBounds {
    let nb = BigUint::from(n);
    let ln_n = ln_biguint(&nb);
    let one = Interval::exact(BigInt::one() << PREC as usize);
    let ln_2pin = ln2().add(&ln_pi()).add(&ln_n).half();
    // n ln n − n = n (ln n − 1)
    let main = ln_n.sub(&one).scale(&BigInt::from(n));
    let base = ln_2pin.add(&main);
    StirlingBounds {
        n,
        ln_lower: base.add(&fixed_ratio(1, 12 * n + 1)),
        ln_factorial: ln_biguint(fact),
        ln_upper: base.add(&fixed_ratio(1, 12 * n)),
    }
}

/// Checks the Stirling bracket for every `1 ≤ n ≤ max`; returns the first
/// failure.
pub fn verify_stirling_up_to(max: u64) -> Option<u64> {
    let mut fact = BigUint::one();
    let ln_consts = (ln2(), ln_pi());
    let one = Interval::exact(BigInt::one() << PREC as usize);
    for n in 1..=max {
        fact *= BigUint::from(n);
        let ln_n = ln_biguint(&BigUint::from(n));
        let base = ln_consts.0.add(&ln_consts.1).add(&ln_n).half().add(&ln_n.sub(&one).scale(&BigInt::from(n)));
        let b = StirlingBounds {
            n,
            ln_lower: base.add(&fixed_ratio(1, 12 * n + 1)),
            ln_factorial: ln_biguint(&fact),
            ln_upper: base.add(&fixed_ratio(1, 12 * n)),
        };
        if !b.brackets() {
            return Some(n);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Inequality sweeps.

/// Identifiers accepted by [`inequality_suite`].
pub const LEMMAS: &[&str] = &[
    "route",
    "family-min",
    "diagonal",
    "imprimitive-order",
    "imprimitive-order-least",
    "imprimitive-vs-middle",
    "imprimitive-product",
    "primitive-product",
    "lower-bound-odd",
    "lower-bound-odd-reduced",
];

/// One evaluated instance `lhs ≤ rhs` (or `≥` for `imprimitive-order`, stored
/// flipped so that the claim is always `lhs ≤ rhs`).
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct InequalityCase {
    pub n: u64,
    pub m: Option<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub part: u8,
    #[serde(serialize_with = "serde_big::rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "serde_big::rational")]
    pub rhs: BigRational,
}

impl InequalityCase {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    /// `rhs / lhs`; the smallest value is the tightest case.
    fn slack(&self) -> BigRational {
        if self.lhs.is_zero() {
            return BigRational::from_integer(BigInt::from(u64::MAX));
        }
        &self.rhs / &self.lhs
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub lemma: String,
    pub statement: String,
    pub n_range: (u64, u64),
    pub m_range: Option<(u64, u64)>,
    pub cases_tested: usize,
    /// `n` values in range skipped because they violate the hypotheses.
    pub outside_hypothesis: Vec<u64>,
    pub pass: bool,
    pub counterexamples: Vec<InequalityCase>,
    pub tightest: Option<InequalityCase>,
}

fn r3(n: u64, m: u64) -> BigRational {
    // (1/2^{m−1}) ((n/2−1)!)² ((n/2)!)^{2m−2}
    let h = n / 2;
    ratio(factorial(h - 1).pow(2) * factorial(h).pow((2 * m - 2) as u32), BigUint::one() << (m - 1))
}

fn r2(n: u64, m: u64) -> BigRational {
    // ((n/2−2)!)((n/2)!)(((n/2−1)!((n/2+1)!))/2)^{m−1}
    let h = n / 2;
    int(factorial(h - 2) * factorial(h)) * pow_r(&ratio(factorial(h - 1) * factorial(h + 1), BigUint::from(2u32)), m - 1)
}

fn r1(n: u64, m: u64, p: u64) -> BigRational {
    // (1/(2^{m−1} n)) ((n/p)!^p p!)^m
    ratio(wreath_order(n, p).pow(m as u32), (BigUint::one() << (m - 1)) * BigUint::from(n))
}

fn an_order(n: u64) -> BigUint {
    factorial(n) / 2u32
}

fn primitive(n: u64, m: u64) -> BigRational {
    pow_r(&BigRational::new(BigInt::from(13), BigInt::from(5)), n * m)
}

fn least_divisor_above_two(n: u64) -> u64 {
    divisors(n).into_iter().find(|&d| d > 2).expect("n > 2")
}

fn statement(id: &str) -> &'static str {
    match id {
        "route" => "n odd composite, p least prime: n − 2 ≤ |S_n : S_{n/p} wr S_p|^m",
        "family-min" => {
            "(1) n odd composite: (1/(2^{m−1}n))((n/p)!^p p!)^m ≤ (2/(n(n−2)))|A_n|^m; \
             (2) 4 | n: ((n/2−2)!)((n/2)!)((n/2−1)!(n/2+1)!/2)^{m−1} ≤ (4/(3(n−1)(n−3)))|A_n|^m; \
             (3) n ≡ 2 mod 4: (1/2^{m−1})((n/2−1)!)²((n/2)!)^{2m−2} ≤ (4/(3(n−1)(n−3)))|A_n|^m"
        }
        "diagonal" => {
            "m ≥ 2: (1+α(m))(n!/2)^{m/2} ≤ the least family count; (1) n odd with p³ ≤ n, \
             (2) 4 | n and n > 8, (3) n ≡ 2 mod 4 and n > 10"
        }
        "imprimitive-order" => "n ≥ 8, divisors 1 < a ≤ b < n: ((n/a)!)^a a! ≥ ((n/b)!)^b b!",
        "imprimitive-order-least" => {
            "n ≥ 8 composite, a the least divisor above 1 (n odd) or above 2 (n even), divisors a ≤ b < n: \
             ((n/a)!)^a a! ≥ ((n/b)!)^b b!"
        }
        "imprimitive-vs-middle" => "n even, n > 10, a least divisor above 2: n((n/a)!)^a a! ≤ 2((n/2)!)²",
        "imprimitive-product" => {
            "n even, n > 10, m ≥ 2, a least divisor above 2: (1+α(m))(((n/a)!)^a a!/2)^m ≤ the least \
             family count, (1) 4 | n, (2) n ≡ 2 mod 4"
        }
        "primitive-product" => {
            "n > 12, m ≥ 2: (1+α(m)) 2.6^{nm} ≤ the least family count; (1) n odd with p³ ≤ n, \
             (2) 4 | n, (3) n ≡ 2 mod 4"
        }
        "lower-bound-odd" => {
            "n > 12 odd, m > 1: (1) n composite: 2^{nm−m−1} ≤ (n!)^m/((n/p)!^{mp} p!^m); \
             (2) 2^{nm−2} ≤ (n−1)!(n!)^{m−1}/2.6^{nm}; (3) 2^{nm−m/2−2} ≤ (n−1)!(n!)^{m/2−1}"
        }
        "lower-bound-odd-reduced" => "n ≥ 15 odd composite: 2^{n−1}(n/p)!^p p! ≤ n!",
        _ => "",
    }
}

fn uses_m(id: &str) -> bool {
    !matches!(id, "imprimitive-order" | "imprimitive-order-least" | "imprimitive-vs-middle" | "lower-bound-odd-reduced")
}

fn case(n: u64, m: Option<u64>, part: u8, lhs: BigRational, rhs: BigRational) -> InequalityCase {
    InequalityCase { n, m, a: None, b: None, part, lhs, rhs }
}

/// Cases of one lemma at fixed `n` (and `m`); empty when `n` is outside the
/// hypotheses.
fn cases_at(id: &str, n: u64, m: u64) -> Vec<InequalityCase> {
    let odd_comp = n % 2 == 1 && n > 1 && !is_prime(n);
    let p = smallest_prime_divisor(n).unwrap_or(1);
    let one_plus_alpha = BigRational::from_integer(BigInt::from(1 + alpha(m)));
    let half_an_m = |e: u64| pow_r(&int(an_order(n)), e);
    let family_min = |n: u64| -> Option<(u8, BigRational)> {
        if odd_comp {
            Some((1, r1(n, m, p)))
        } else if n % 4 == 0 {
            Some((2, r2(n, m)))
        } else if n % 4 == 2 {
            Some((3, r3(n, m)))
        } else {
            None
        }
    };
    let mut out = Vec::new();
    match id {
        "route" if odd_comp => {
            let lhs = int(BigUint::from(n - 2));
            let rhs = int((factorial(n) / wreath_order(n, p)).pow(m as u32));
            out.push(case(n, Some(m), 1, lhs, rhs));
        }
        "family-min" if n >= 5 => {
            if odd_comp {
                let rhs = ratio(BigUint::from(2u32), BigUint::from(n * (n - 2))) * half_an_m(m);
                out.push(case(n, Some(m), 1, r1(n, m, p), rhs));
            } else if n % 2 == 0 {
                let rhs = ratio(BigUint::from(4u32), BigUint::from(3 * (n - 1) * (n - 3))) * half_an_m(m);
                let (part, lhs) = if n % 4 == 0 { (2, r2(n, m)) } else { (3, r3(n, m)) };
                out.push(case(n, Some(m), part, lhs, rhs));
            }
        }
        "diagonal" if m >= 2 => {
            let ok = (odd_comp && p * p * p <= n) || (n % 4 == 0 && n > 8) || (n % 4 == 2 && n > 10);
            if let (true, Some((part, rhs))) = (ok, family_min(n)) {
                // square both sides: (1+α)² (n!/2)^m ≤ rhs²
                let lhs = &one_plus_alpha * &one_plus_alpha * half_an_m(m);
                out.push(case(n, Some(m), part, lhs, &rhs * &rhs));
            }
        }
        "imprimitive-order" if n >= 8 => {
            let ds: Vec<u64> = divisors(n).into_iter().filter(|&d| d > 1 && d < n).collect();
            for (i, &a) in ds.iter().enumerate() {
                for &b in &ds[i..] {
                    out.push(InequalityCase {
                        n,
                        m: None,
                        a: Some(a),
                        b: Some(b),
                        part: 1,
                        lhs: int(wreath_order(n, b)),
                        rhs: int(wreath_order(n, a)),
                    });
                }
            }
        }
        "imprimitive-order-least" if n >= 8 && !is_prime(n) && n != 2 * p => {
            let a = if n % 2 == 0 { least_divisor_above_two(n) } else { p };
            for b in divisors(n).into_iter().filter(|&d| d >= a && d < n) {
                out.push(InequalityCase {
                    n,
                    m: None,
                    a: Some(a),
                    b: Some(b),
                    part: 1,
                    lhs: int(wreath_order(n, b)),
                    rhs: int(wreath_order(n, a)),
                });
            }
        }
        "imprimitive-vs-middle" if n % 2 == 0 && n > 10 => {
            let a = least_divisor_above_two(n);
            let lhs = int(BigUint::from(n) * wreath_order(n, a));
            let rhs = int(factorial(n / 2).pow(2) * 2u32);
            out.push(InequalityCase { a: Some(a), ..case(n, None, 1, lhs, rhs) });
        }
        "imprimitive-product" if n % 2 == 0 && n > 10 && m >= 2 => {
            let a = least_divisor_above_two(n);
            let lhs = &one_plus_alpha * pow_r(&ratio(wreath_order(n, a), BigUint::from(2u32)), m);
            let (part, rhs) = if n % 4 == 0 { (1, r2(n, m)) } else { (2, r3(n, m)) };
            out.push(InequalityCase { a: Some(a), ..case(n, Some(m), part, lhs, rhs) });
        }
        "primitive-product" if n > 12 && m >= 2 => {
            let ok = (odd_comp && p * p * p <= n) || n % 2 == 0;
            if let (true, Some((part, rhs))) = (ok, family_min(n)) {
                out.push(case(n, Some(m), part, &one_plus_alpha * primitive(n, m), rhs));
            }
        }
        "lower-bound-odd" if n > 12 && n % 2 == 1 && m > 1 => {
            let two = |e: u64| int(BigUint::one() << e);
            if odd_comp {
                let rhs = ratio(factorial(n).pow(m as u32), wreath_order(n, p).pow(m as u32));
                out.push(case(n, Some(m), 1, two(n * m - m - 1), rhs));
            }
            let rhs2 = int(factorial(n - 1) * factorial(n).pow((m - 1) as u32)) / primitive(n, m);
            out.push(case(n, Some(m), 2, two(n * m - 2), rhs2));
            // square: 2^{2nm−m−4} ≤ ((n−1)!)² (n!)^{m−2}
            let rhs3 = int(factorial(n - 1).pow(2) * factorial(n).pow((m - 2) as u32));
            out.push(case(n, Some(m), 3, two(2 * n * m - m - 4), rhs3));
        }
        "lower-bound-odd-reduced" if n >= 15 && odd_comp => {
            let lhs = int((BigUint::one() << (n - 1)) * wreath_order(n, p));
            out.push(case(n, None, 1, lhs, int(factorial(n))));
        }
        _ => {}
    }
    out
}

/// Evaluates a lemma on every `n` in `n_range` and `m` in `m_range` within
/// its hypotheses.
pub fn inequality_suite(id: &str, n_range: (u64, u64), m_range: (u64, u64)) -> Result<InequalityReport> {
    if !LEMMAS.contains(&id) {
        return Err(Error::UnknownLemma(id.to_string()));
    }
    if n_range.0 > n_range.1 || m_range.0 > m_range.1 || m_range.0 == 0 {
        return Err(Error::Hypothesis(format!("empty or invalid range n {n_range:?}, m {m_range:?}")));
    }
    let ms: Vec<u64> = if uses_m(id) { (m_range.0..=m_range.1).collect() } else { vec![2] };
    let mut cases = Vec::new();
    let mut outside = Vec::new();
    for n in n_range.0..=n_range.1 {
        let before = cases.len();
        for &m in &ms {
            cases.extend(cases_at(id, n, m));
        }
        if cases.len() == before {
            outside.push(n);
        }
    }
    if !uses_m(id) {
        for c in &mut cases {
            c.m = None;
        }
    }
    let counterexamples: Vec<InequalityCase> = cases.iter().filter(|c| !c.holds()).cloned().collect();
    let tightest = cases.iter().min_by(|a, b| a.slack().cmp(&b.slack())).cloned();
    Ok(InequalityReport {
        lemma: id.to_string(),
        statement: statement(id).to_string(),
        n_range,
        m_range: uses_m(id).then_some(m_range),
        cases_tested: cases.len(),
        outside_hypothesis: outside,
        pass: counterexamples.is_empty() && !cases.is_empty(),
        counterexamples,
        tightest,
    })
}
