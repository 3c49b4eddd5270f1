//! 2x2 matrices of determinant 1 over Z/N, and enumeration of SL2(Z/N).
//!
//! The group is generated by S = [[0,-1],[1,0]] and T = [[1,1],[0,1]], so
//! enumeration is a breadth-first closure from the identity under right
//! multiplication by those two generators. The closure is checked against the
//! closed order formula N^3 prod_{p|N} (1 - 1/p^2).

use crate::error::{Error, Result};
use crate::factor::factorize;
use std::collections::HashMap;
use std::fmt;

/// An element of SL2(Z/N): entries reduced mod N, det = 1 mod N.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix2 {
    n: u32,
    a: u32,
    b: u32,
    c: u32,
    d: u32,
}

impl ModMatrix2 {
    /// Builds a matrix from possibly-unreduced signed entries.
    /// Panics if the determinant is not 1 mod n; callers construct group
    /// elements only.
    pub fn new(n: u32, a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        let m = n as i64;
        let r = |x: i64| x.rem_euclid(m) as u32;
        let mat = ModMatrix2 { n, a: r(a), b: r(b), c: r(c), d: r(d) };
        assert!(mat.det_is_one(), "determinant of [[{a},{b}],[{c},{d}]] is not 1 mod {n}");
        mat
    }

    fn det_is_one(&self) -> bool {
        let n = self.n as u64;
        let ad = self.a as u64 * self.d as u64 % n;
        let bc = self.b as u64 * self.c as u64 % n;
        (ad + n - bc % n) % n == 1 % n
    }

    pub fn identity(n: u32) -> Self {
        ModMatrix2::new(n, 1, 0, 0, 1)
    }

    /// S = [[0,-1],[1,0]], order 4, S^2 = -I.
    pub fn s(n: u32) -> Self {
        ModMatrix2::new(n, 0, -1, 1, 0)
    }

    /// T = [[1,1],[0,1]], the basic translation.
    pub fn t(n: u32) -> Self {
        ModMatrix2::new(n, 1, 1, 0, 1)
    }

    pub fn neg_identity(n: u32) -> Self {
        ModMatrix2::new(n, -1, 0, 0, -1)
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    /// Entries as (a, b, c, d), each in [0, n).
    pub fn entries(&self) -> (u32, u32, u32, u32) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn trace(&self) -> u32 {
        (self.a + self.d) % self.n
    }

    pub fn is_identity(&self) -> bool {
        *self == ModMatrix2::identity(self.n)
    }

    pub fn mul(&self, rhs: &ModMatrix2) -> ModMatrix2 {
        assert_eq!(self.n, rhs.n, "modulus mismatch in matrix product");
        let n = self.n as u64;
        let m = |x: u64| (x % n) as u32;
        ModMatrix2 {
            n: self.n,
            a: m(self.a as u64 * rhs.a as u64 + self.b as u64 * rhs.c as u64),
            b: m(self.a as u64 * rhs.b as u64 + self.b as u64 * rhs.d as u64),
            c: m(self.c as u64 * rhs.a as u64 + self.d as u64 * rhs.c as u64),
            d: m(self.c as u64 * rhs.b as u64 + self.d as u64 * rhs.d as u64),
        }
    }

    /// Inverse by the adjugate; valid because det = 1.
    pub fn inv(&self) -> ModMatrix2 {
        ModMatrix2::new(self.n, self.d as i64, -(self.b as i64), -(self.c as i64), self.a as i64)
    }

    pub fn neg(&self) -> ModMatrix2 {
        self.mul(&ModMatrix2::neg_identity(self.n))
    }

    pub fn pow(&self, k: i64) -> ModMatrix2 {
        let base = if k < 0 { self.inv() } else { *self };
        let mut acc = ModMatrix2::identity(self.n);
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Entry-wise reduction to a divisor modulus.
    pub fn reduce(&self, m: u32) -> ModMatrix2 {
        assert!(m >= 1 && self.n.is_multiple_of(m), "can only reduce to a divisor modulus");
        ModMatrix2::new(
            m,
            (self.a % m) as i64,
            (self.b % m) as i64,
            (self.c % m) as i64,
            (self.d % m) as i64,
        )
    }

    /// Right action on a row vector: (x, y) * self.
    pub fn act_row(&self, v: (u32, u32)) -> (u32, u32) {
        let n = self.n as u64;
        let (x, y) = (v.0 as u64, v.1 as u64);
        (
            ((x * self.a as u64 + y * self.c as u64) % n) as u32,
            ((x * self.b as u64 + y * self.d as u64) % n) as u32,
        )
    }

    /// Left action on a column vector: self * (x, y)^t.
    pub fn act_col(&self, v: (u32, u32)) -> (u32, u32) {
        let n = self.n as u64;
        let (x, y) = (v.0 as u64, v.1 as u64);
        (
            ((self.a as u64 * x + self.b as u64 * y) % n) as u32,
            ((self.c as u64 * x + self.d as u64 * y) % n) as u32,
        )
    }
}

impl fmt::Debug for ModMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]] mod {}", self.a, self.b, self.c, self.d, self.n)
    }
}

/// |SL2(Z/N)| = N^3 prod_{p|N} (1 - 1/p^2), computed in integers.
pub fn sl2_order(n: u32) -> u64 {
    factorize(n as u64)
        .expect("positive modulus")
        .factors()
        .iter()
        .map(|&(p, e)| p.pow(3 * e - 2) * (p * p - 1))
        .product()
}

/// Enumerates SL2(Z/N) as the closure of {S, T} under right multiplication.
/// The order of the result is the breadth-first discovery order from the
/// identity, so it is deterministic.
pub fn sl2_enumerate(n: u32, bound: u32) -> Result<Vec<ModMatrix2>> {
    if n < 2 {
        return Err(Error::LevelTooSmall { level: n, minimum: 2 });
    }
    if n > bound {
        return Err(Error::BoundExceeded { level: n, bound });
    }
    let gens = [ModMatrix2::s(n), ModMatrix2::t(n)];
    let mut elements = vec![ModMatrix2::identity(n)];
    let mut seen: HashMap<ModMatrix2, usize> = HashMap::new();
    seen.insert(elements[0], 0);
    let mut head = 0;
    while head < elements.len() {
        let g = elements[head];
        head += 1;
        for gen in &gens {
            let h = g.mul(gen);
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(h) {
                slot.insert(elements.len());
                elements.push(h);
            }
        }
    }
    debug_assert_eq!(elements.len() as u64, sl2_order(n));
    Ok(elements)
}
