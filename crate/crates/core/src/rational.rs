//! Exact rationals over `i128`.
//!
//! Every value handled here is bounded by weighted matrix totals. With
//! `m * p <= 10^4` the extended matrix holds at most about `10^8` weighted
//! entries, so numerators and denominators stay below `2^54` and a
//! cross-multiplication stays far below `2^127`. Arithmetic is still checked
//! and an overflow surfaces as [`CfpError::Overflow`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{CfpError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Compares `a/b` with `c/d` (`b, d > 0`) by comparing integer parts and
/// recursing on reciprocals of the remainders. Never multiplies.
fn cmp_fractions(a: i128, b: i128, c: i128, d: i128) -> Ordering {
    let (qa, ra) = (a.div_euclid(b), a.rem_euclid(b));
    let (qc, rc) = (c.div_euclid(d), c.rem_euclid(d));
    match qa.cmp(&qc) {
        Ordering::Equal => {}
        ord => return ord,
    }
    match (ra == 0, rc == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        // ra/b < rc/d  <=>  d/rc < b/ra
        (false, false) => cmp_fractions(d, rc, b, ra),
    }
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num / den` in lowest terms with a positive denominator.
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(CfpError::InvalidArgument("zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = num.checked_neg().ok_or(CfpError::Overflow)?;
            den = den.checked_neg().ok_or(CfpError::Overflow)?;
        }
        Ok(Rational { num, den })
    }

    pub fn from_integer(n: i128) -> Self {
        Rational { num: n, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        let num = self
            .num
            .checked_mul(rhs.den)
            .and_then(|a| rhs.num.checked_mul(self.den).and_then(|b| a.checked_add(b)))
            .ok_or(CfpError::Overflow)?;
        let den = self.den.checked_mul(rhs.den).ok_or(CfpError::Overflow)?;
        Rational::new(num, den)
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(Rational {
            num: rhs.num.checked_neg().ok_or(CfpError::Overflow)?,
            den: rhs.den,
        })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let num = self.num.checked_mul(rhs.num).ok_or(CfpError::Overflow)?;
        let den = self.den.checked_mul(rhs.den).ok_or(CfpError::Overflow)?;
        Rational::new(num, den)
    }

    /// `1 - self`.
    pub fn one_minus(self) -> Result<Self> {
        Rational::ONE.checked_sub(self)
    }

    fn cross_cmp(&self, other: &Self) -> Ordering {
        match (self.num.checked_mul(other.den), other.num.checked_mul(self.den)) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => cmp_fractions(self.num, self.den, other.num, other.den),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cross_cmp(other)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational {
    type Err = CfpError;

    /// Accepts `num/den`, an integer, or a finite decimal such as `0.985`,
    /// which is read exactly as a fraction over a power of ten.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || CfpError::InvalidArgument(format!("not a rational: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            return Rational::new(n, d).map_err(|_| bad());
        }
        let (negative, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int_part) || !all_digits(frac_part) || frac_part.len() > 30 {
            return Err(bad());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut num: i128 = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let den = 10i128.checked_pow(frac_part.len() as u32).ok_or_else(bad)?;
        Rational::new(num, den)
    }
}
