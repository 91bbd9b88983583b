//! Arbitrary-precision rationals and their canonical text form.
//!
//! Values serialize as `"p/q"`, or `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Schema(format!("'{s}' is not a rational of the form p/q"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn factorial_q(n: u64) -> Rational {
    Rational::from_integer(factorial(n))
}

pub fn binomial(n: i64, k: u64) -> Rational {
    // generalized binomial, n may be negative
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int(n - i as i64) / int(i as i64 + 1);
    }
    acc
}

pub fn pow_i(r: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(r.clone(), e as usize)
    } else {
        num_traits::pow(r.recip(), (-e) as usize)
    }
}

/// Positive divisors of `|n|`; `n` must be nonzero.
pub(crate) fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    if n.bits() > 48 {
        return Err(Error::ComplexityGuard(format!(
            "integer {n} too large for rational-root candidate search"
        )));
    }
    let n = n.to_u64().expect("checked bit size");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Prime factorization of a positive integer as (prime, exponent) pairs.
pub(crate) fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut n = n.abs();
    if n.bits() > 64 {
        return Err(Error::ComplexityGuard(format!("integer {n} too large to factor")));
    }
    let mut out = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/2", "-1/30", "17/3840"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/8").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn generalized_binomial() {
        assert_eq!(binomial(5, 2), int(10));
        assert_eq!(binomial(-2, 3), int(-4));
    }

    #[test]
    fn divisor_and_prime_tables() {
        let d: Vec<i64> = divisors(&BigInt::from(12))
            .unwrap()
            .iter()
            .map(|b| b.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 12]);
        let f = factor_integer(&BigInt::from(360)).unwrap();
        assert_eq!(
            f,
            vec![
                (BigInt::from(2), 3),
                (BigInt::from(3), 2),
                (BigInt::from(5), 1)
            ]
        );
    }
}

/// Serializes a rational as its canonical string.
pub fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn ser_rational_map<S, K>(
    m: &std::collections::BTreeMap<K, Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error>
where
    S: serde::Serializer,
    K: std::fmt::Display,
{
    use serde::ser::SerializeMap;
    let mut out = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        out.serialize_entry(&k.to_string(), &format_rational(v))?;
    }
    out.end()
}
