//! Exact scalars: rationals, binomials, Bernoulli numbers and power sums.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always normalized (lowest terms, positive denominator).
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Canonical string form: `p/q` with `q > 1`, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Multinomial coefficient `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let mut total = 0u32;
    let mut acc = BigInt::one();
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

static BERNOULLI: Mutex<Vec<Rational>> = Mutex::new(Vec::new());

/// Bernoulli number `B_m` with the convention `B_1 = -1/2`.
///
/// Values come from the recurrence `Σ_{j≤m} C(m+1, j) B_j = 0` and are cached
/// in a process-wide table.
pub fn bernoulli(m: usize) -> Rational {
    let mut table = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(Rational::one());
    }
    while table.len() <= m {
        let next = table.len();
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += Rational::from_integer(binomial(next as u32 + 1, j as u32)) * b;
            }
        }
        let lead = Rational::from_integer(BigInt::from(next + 1));
        table.push(-acc / lead);
    }
    table[m].clone()
}

/// Coefficients `c_1..c_{r+1}` (index `j-1` holds the `k^j` coefficient) of
/// the polynomial `k ↦ Σ_{i=1..k} i^r`.
pub fn power_sum_polynomial(r: u32) -> Vec<Rational> {
    let mut coeffs = vec![Rational::zero(); r as usize + 1];
    let scale = Rational::from_integer(BigInt::from(r + 1));
    for l in 0..=r {
        let b = bernoulli(l as usize);
        if b.is_zero() {
            continue;
        }
        let sign = if l % 2 == 0 { 1 } else { -1 };
        let term = Rational::from_integer(binomial(r + 1, l) * sign) * b / &scale;
        // power k^{r+1-l} lives at index r - l
        coeffs[(r - l) as usize] = term;
    }
    coeffs
}

/// `Σ_{i=1..k} i^r` via Faulhaber's closed form.
pub fn faulhaber_sum(k: u64, r: u32) -> Rational {
    let kq = Rational::from_integer(BigInt::from(k));
    let mut power = Rational::one();
    let mut total = Rational::zero();
    for c in power_sum_polynomial(r) {
        power *= &kq;
        total += c * &power;
    }
    total
}

/// Exact `base^exp` for a rational base.
pub fn rpow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn sign_pow(exp: usize) -> i64 {
    if exp.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Smallest positive common denominator of a set of rationals.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
        .abs()
}
