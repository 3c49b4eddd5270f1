//! Local models of the finite symmetries fixing a point of the surface:
//! rotation weights on a smooth chart, the cyclic quotient singularity
//! left after quasi-reflections are factored out, its Hirzebruch-Jung
//! resolution, and invariant monomials of the chart action.

use std::collections::HashSet;

use crate::cosets::{cusp_matrix, CuspClass};
use crate::error::{Error, Result};
use crate::factor::{gcd_u64, lcm_u64, mod_inverse};
use crate::modmatrix::ModMatrix2;
use crate::rational::Rational;
use crate::subgroup::SubgroupSpec;

/// A generator of a cyclic action on a chart with coordinates (x, t),
/// acting as (x, t) -> (zeta^a x, zeta^b t) for a primitive root of unity
/// zeta of the given order, weights = (a, b).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicActionWeights {
    pub order: u32,
    pub weights: (u32, u32),
}

/// Chart weights of the stabilizer of an interior fixed point: a cyclic
/// group of the given order acting with weights (order-2, order-1). Only
/// the orders 3, 4 and 6 arise, over the elliptic points of the base.
pub fn interior_fixed_point_weights(order: u32) -> Result<CyclicActionWeights> {
    match order {
        3 | 4 | 6 => Ok(CyclicActionWeights { order, weights: (order - 2, order - 1) }),
        other => Err(Error::UnsupportedOrder(other)),
    }
}

/// How the chart symmetries over a cusp act near the fiber at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CuspAction {
    /// Every symmetry fixes the fiber coordinate, so the quotient chart is
    /// a smooth product and the cusp contributes no singular point.
    FixesWholeFiber,
    /// Canonical generators of the chart group, with weights on (q, s).
    Action(Vec<CyclicActionWeights>),
}

fn convert(nref: u32, j: u32, positive: bool) -> CyclicActionWeights {
    let rot_order = (nref as u64 / gcd_u64(nref as u64, j as u64)) as u32;
    let order = if positive { rot_order } else { lcm_u64(rot_order as u64, 2) as u32 };
    let w1 = (j as u64 * order as u64 / nref as u64 % order as u64) as u32;
    let w2 = if positive { 0 } else { order / 2 };
    CyclicActionWeights { order, weights: (w1, w2) }
}

/// The group acting on the surface chart at a cusp, as canonical
/// generators.
///
/// With M carrying infinity to the cusp, the symmetries of the chart are
/// the pairs (j, e), e = +-1, such that e * M T^j M^{-1} lies in the
/// stabilizer; (j, e) acts as (q, s) -> (zeta^j q, e s). Levels below
/// three are read through the level-four model, where the chart
/// coordinates live.
pub fn cusp_fixed_point_weights(spec: &SubgroupSpec, cusp: &CuspClass) -> CuspAction {
    let nref = spec.reference_level();
    let m = cusp_matrix(nref, cusp.numer as i64, cusp.denom as i64);
    let m_inv = m.inv();
    let t = ModMatrix2::t(nref);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut tj = ModMatrix2::identity(nref);
    for j in 0..nref {
        let conj = m.mul(&tj).mul(&m_inv);
        if spec.contains_reduced(&conj) {
            plus.push(j);
        }
        if spec.contains_reduced(&conj.neg()) {
            minus.push(j);
        }
        tj = tj.mul(&t);
    }
    debug_assert_eq!(plus[0], 0);

    if minus.is_empty() {
        return CuspAction::FixesWholeFiber;
    }
    let mut all: Vec<u32> = plus.iter().chain(minus.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();

    let gens = match all.iter().copied().find(|&j| j > 0) {
        // Only the sign flip acts beyond the identity.
        None => vec![convert(nref, 0, false)],
        Some(j0) => {
            // The j appearing form the subgroup of Z/nref generated by j0.
            debug_assert!(all.iter().all(|&j| j % j0 == 0));
            if minus.contains(&0) {
                // The group splits as <(j0, +)> x <(0, -)>.
                debug_assert!(plus.contains(&j0), "(j0, +) must accompany (0, -)");
                vec![convert(nref, nref - j0, true), convert(nref, 0, false)]
            } else {
                // Signs are determined by j, so one generator suffices.
                vec![convert(nref, nref - j0, plus.contains(&j0))]
            }
        }
    };
    CuspAction::Action(gens)
}

/// The cyclic quotient singularity a finite abelian chart action leaves
/// once its quasi-reflections are factored out, with the data of the
/// minimal resolution. A record with m_hat = 1 is a smooth point.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SingularityRecord {
    /// Order of the residual cyclic group.
    pub m_hat: u64,
    /// Normalized second weight: the singularity has type (1/m_hat)(1, q_hat).
    pub q_hat: u64,
    /// Self-intersections of the exceptional chain, each at most -2.
    pub hj_chain: Vec<i64>,
    /// Contribution to the self-intersection of the proper transform of a
    /// curve through the first chart coordinate: -q_hat/m_hat.
    pub zprime_correction: Rational,
}

impl SingularityRecord {
    pub fn smooth() -> SingularityRecord {
        SingularityRecord {
            m_hat: 1,
            q_hat: 0,
            hj_chain: Vec::new(),
            zprime_correction: Rational::ZERO,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.m_hat == 1
    }
}

fn embedded_closure(gens: &[CyclicActionWeights], l: u64) -> Vec<(u64, u64)> {
    let embedded: Vec<(u64, u64)> = gens
        .iter()
        .map(|g| {
            let f = l / g.order as u64;
            (g.weights.0 as u64 * f % l, g.weights.1 as u64 * f % l)
        })
        .collect();
    let mut set = HashSet::new();
    set.insert((0u64, 0u64));
    let mut stack = vec![(0u64, 0u64)];
    while let Some((a, b)) = stack.pop() {
        for &(ga, gb) in &embedded {
            let next = ((a + ga) % l, (b + gb) % l);
            if set.insert(next) {
                stack.push(next);
            }
        }
    }
    let mut elems: Vec<(u64, u64)> = set.into_iter().collect();
    elems.sort_unstable();
    elems
}

/// Resolve the quotient of a smooth chart by the abelian group the given
/// rotations generate.
///
/// Axis rotations are quasi-reflections: the quotient by them is again
/// smooth after re-coordinatizing, so they are factored out iteratively
/// until none remain. The residual group is cyclic and acts freely off the
/// origin; its type, resolution chain and self-intersection correction
/// form the record.
pub fn resolve_quotient(gens: &[CyclicActionWeights]) -> SingularityRecord {
    if gens.is_empty() {
        return SingularityRecord::smooth();
    }
    let l = gens.iter().fold(1u64, |acc, g| lcm_u64(acc, g.order as u64));
    let mut elems = embedded_closure(gens, l);

    loop {
        let r_x = elems.iter().filter(|&&(_, b)| b == 0).count() as u64;
        let r_t = elems.iter().filter(|&&(a, _)| a == 0).count() as u64;
        if r_x == 1 && r_t == 1 {
            break;
        }
        let mapped: HashSet<(u64, u64)> =
            elems.iter().map(|&(a, b)| (a * r_x % l, b * r_t % l)).collect();
        assert!(mapped.len() < elems.len(), "factoring quasi-reflections must shrink the group");
        elems = mapped.into_iter().collect();
        elems.sort_unstable();
    }

    let m_hat = elems.len() as u64;
    if m_hat == 1 {
        return SingularityRecord::smooth();
    }
    let order_of = |v: u64| l / gcd_u64(l, v);
    let gen = elems
        .iter()
        .copied()
        .find(|&(a, b)| lcm_u64(order_of(a), order_of(b)) == m_hat)
        .expect("residual group must be cyclic");
    debug_assert_eq!(gen.0 * m_hat % l, 0);
    debug_assert_eq!(gen.1 * m_hat % l, 0);
    let alpha = gen.0 * m_hat / l % m_hat;
    let beta = gen.1 * m_hat / l % m_hat;
    let alpha_inv = mod_inverse(alpha, m_hat)
        .expect("first weight must be a unit once axis rotations are gone");
    let q_hat = beta * alpha_inv % m_hat;
    assert!(q_hat > 0 && gcd_u64(q_hat, m_hat) == 1, "residual action must be free off 0");
    SingularityRecord {
        m_hat,
        q_hat,
        hj_chain: hj_expand(m_hat, q_hat),
        zprime_correction: -Rational::new(q_hat as i128, m_hat as i128),
    }
}

/// Resolve the quotient by a single rotation of the given order and
/// weights.
pub fn resolve_cyclic_quotient(order: u32, weights: (u32, u32)) -> SingularityRecord {
    resolve_quotient(&[CyclicActionWeights { order, weights }])
}

/// Coefficients of the Hirzebruch-Jung continued fraction
/// m/q = a1 - 1/(a2 - 1/(...)), as the chain self-intersections -a_i.
/// Requires 0 <= q < m with q and m coprime; m = 1 gives the empty chain.
pub fn hj_expand(m: u64, q: u64) -> Vec<i64> {
    assert!(m >= 1 && q < m);
    assert!(m == 1 || gcd_u64(m, q) == 1);
    let (mut m, mut q) = (m, q);
    let mut chain = Vec::new();
    while q > 0 {
        let a = m.div_ceil(q);
        chain.push(-(a as i64));
        let next = a * q - m;
        m = q;
        q = next;
    }
    chain
}

/// Exponent pair (a, b) of a monomial x^a t^b.
pub type Monomial = (u32, u32);

/// Minimal generating set of the monomials invariant under every listed
/// rotation, ordered by total degree, then by decreasing first exponent.
/// Since x^L and t^L are invariant for L the common order, irreducible
/// invariants have both exponents at most L and a box scan is complete.
pub fn invariant_generators(gens: &[CyclicActionWeights]) -> Vec<Monomial> {
    let l = gens.iter().fold(1u64, |acc, g| lcm_u64(acc, g.order as u64));
    let lb = l as u32;
    let invariant = |a: u32, b: u32| {
        gens.iter().all(|g| {
            (a as u64 * g.weights.0 as u64 + b as u64 * g.weights.1 as u64)
                .is_multiple_of(g.order as u64)
        })
    };
    let mut points = Vec::new();
    let mut in_monoid = vec![vec![false; lb as usize + 1]; lb as usize + 1];
    for a in 0..=lb {
        for b in 0..=lb {
            if (a, b) != (0, 0) && invariant(a, b) {
                points.push((a, b));
                in_monoid[a as usize][b as usize] = true;
            }
        }
    }
    let mut irreducible: Vec<Monomial> = points
        .iter()
        .copied()
        .filter(|&(a, b)| {
            !points.iter().any(|&(c, d)| {
                c <= a
                    && d <= b
                    && (c, d) != (a, b)
                    && in_monoid[(a - c) as usize][(b - d) as usize]
            })
        })
        .collect();
    irreducible.sort_by_key(|&(a, b)| (a + b, b));
    irreducible
}
