//! Small integer and rational helpers shared by the counting code.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Trial-division factorization, primes in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Exponent of the prime `l` in `n` (n > 0).
pub fn valuation(n: &BigUint, l: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let l = BigUint::from(l);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&l);
        if !rem.is_zero() {
            return v;
        }
        n = quot;
        v += 1;
    }
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    let exp = u32::try_from(exp).expect("exponent out of range");
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// `base^exp` as an exact rational; negative exponents allowed.
pub fn rational_pow(base: u64, exp: &BigInt) -> BigRational {
    let mag = big_pow(base, exp.abs().to_u64().expect("exponent out of range"));
    let mag = BigInt::from(mag);
    if exp.is_negative() {
        BigRational::new(BigInt::one(), mag)
    } else {
        BigRational::from_integer(mag)
    }
}

/// `p^k` when it fits in a u64.
pub fn checked_pow(p: u64, k: u32) -> Option<u64> {
    p.checked_pow(k)
}

/// ⌊a / p^k⌋ for a ≥ 0, with p^k allowed to overflow (then the quotient is 0).
pub fn floor_div_pow(a: u64, p: u64, k: u32) -> u64 {
    match checked_pow(p, k) {
        Some(d) => a / d,
        None => 0,
    }
}

/// Fractional part {a/b} = a/b − ⌊a/b⌋ for any integer a and b > 0.
pub fn frac(a: &BigInt, b: &BigInt) -> BigRational {
    debug_assert!(b.is_positive());
    BigRational::new(a.mod_floor(b), b.clone())
}

#[cfg(test)]
pub fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_rational(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

/// `"num/den"`, the serialized form of an exact rational.
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn fractional_parts_of_negatives() {
        let r = frac(&BigInt::from(-1), &BigInt::from(4));
        assert_eq!(r, ratio(3, 4));
        assert_eq!(frac(&BigInt::from(8), &BigInt::from(4)), BigRational::zero());
    }

    #[test]
    fn ratio_strings() {
        let r = ratio(6, 8);
        assert_eq!(fmt_ratio(&r), "3/4");
        assert_eq!(parse_ratio("3/4"), Some(r));
        assert_eq!(parse_ratio("-2"), Some(BigRational::from_integer((-2).into())));
        assert_eq!(parse_ratio("1/0"), None);
        assert_eq!(valuation(&BigUint::from(48u32), 2), 4);
    }
}
