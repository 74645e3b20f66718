//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Canonical rendering: always `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p`, `-p`, `p/q` (surrounding whitespace ignored).
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Integer value if `x` is integral.
pub fn to_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn multinomial(parts: &[usize]) -> BigInt {
    let n: usize = parts.iter().sum();
    parts.iter().fold(factorial(n), |acc, &p| acc / factorial(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form() {
        assert_eq!(format_q(&frac(-4, 6)), "-2/3");
        assert_eq!(format_q(&q(5)), "5/1");
        assert_eq!(parse_q("-2/3"), Some(frac(-2, 3)));
        assert_eq!(parse_q(" 7 "), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn counting() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(multinomial(&[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(&[]), BigInt::from(1));
        assert_eq!(factorial(0), BigInt::from(1));
    }
}
