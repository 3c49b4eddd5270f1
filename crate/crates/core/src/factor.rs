//! Prime factorization, divisors, Euler phi and the Legendre symbol.
//!
//! Everything here runs on u64 by trial division; the levels this crate
//! handles are tiny, so nothing cleverer is warranted.

use crate::error::{Error, Result};

/// Prime factorization as (prime, exponent) pairs, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// The integer this factorization multiplies back to.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::FactorNonPositive(n));
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push((rest, 1));
    }
    Ok(Factorization(out))
}

pub fn is_prime(n: u64) -> bool {
    match factorize(n) {
        Ok(f) => f.factors() == [(n, 1)],
        Err(_) => false,
    }
}

/// All positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factorize(n).expect("divisors of 0").factors() {
        let snapshot = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(snapshot.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).expect("phi of 0").factors().iter().map(|&(p, e)| p.pow(e - 1) * (p - 1)).product()
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

/// Extended Euclid: returns (g, u, v) with a*u + b*v = g = gcd(a, b), g >= 0.
pub fn egcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, u, v) = egcd(b, a.rem_euclid(b));
    // g = b*u + (a - (a div b)*b)*v, with a.div_euclid(b) matching rem_euclid
    (g, v, u - a.div_euclid(b) * v)
}

/// Inverse of a mod m, or None when gcd(a, m) > 1. Requires m >= 1.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    assert!(m >= 1);
    assert!(a <= i64::MAX as u64 && m <= i64::MAX as u64);
    let (g, u, _) = egcd(a as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(u.rem_euclid(m as i64) as u64)
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol (a|p) for an odd prime p, by Euler's criterion:
/// a^((p-1)/2) is 0, 1 or p-1 mod p.
pub fn legendre(a: i64, p: u64) -> Result<i32> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let a_mod = a.rem_euclid(p as i64) as u64;
    if a_mod == 0 {
        return Ok(0);
    }
    let e = mod_pow(a_mod, (p - 1) / 2, p);
    Ok(if e == 1 { 1 } else { -1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(1).unwrap().factors(), &[]);
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(25).unwrap().factors(), &[(5, 2)]);
        assert_eq!(factorize(2 * 3 * 5 * 7 * 11).unwrap().value(), 2310);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(13), 12);
        assert_eq!(euler_phi(25), 20);
    }

    /// Exhaustive oracle: (a|p) = 1 iff a is a nonzero square mod p.
    fn legendre_by_squares(a: i64, p: u64) -> i32 {
        let a_mod = a.rem_euclid(p as i64) as u64;
        if a_mod == 0 {
            return 0;
        }
        for x in 1..p {
            if x * x % p == a_mod {
                return 1;
            }
        }
        -1
    }

    #[test]
    fn legendre_matches_square_enumeration() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            for a in -30i64..30 {
                assert_eq!(legendre(a, p).unwrap(), legendre_by_squares(a, p), "a = {a}, p = {p}");
            }
        }
    }

    #[test]
    fn legendre_known_values() {
        assert_eq!(legendre(-1, 5).unwrap(), 1);
        assert_eq!(legendre(-1, 7).unwrap(), -1);
        assert_eq!(legendre(-3, 13).unwrap(), 1);
        assert_eq!(legendre(26, 13).unwrap(), 0);
    }

    #[test]
    fn legendre_rejects_non_odd_primes() {
        assert!(legendre(1, 2).is_err());
        assert!(legendre(1, 9).is_err());
        assert!(legendre(1, 1).is_err());
    }

    #[test]
    fn egcd_identity_holds() {
        for a in -40i64..40 {
            for b in -40i64..40 {
                let (g, u, v) = egcd(a, b);
                assert_eq!(g, gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64);
                assert_eq!(a * u + b * v, g, "a = {a}, b = {b}");
            }
        }
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_u64(4, 6), 12);
        assert_eq!(lcm_u64(3, 2), 6);
        assert_eq!(lcm_u64(1, 1), 1);
        assert_eq!(lcm_u64(0, 5), 0);
    }

    #[test]
    fn modular_inverses() {
        for m in 1..40u64 {
            for a in 0..m {
                match mod_inverse(a, m) {
                    Some(inv) => {
                        assert_eq!(gcd_u64(a, m), 1);
                        assert_eq!(a * inv % m, 1 % m);
                        assert!(inv < m);
                    }
                    None => assert_ne!(gcd_u64(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (1..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }
}
