//! Right cosets of a structure subgroup in SL2(Z/N), with the induced
//! generator permutations, cusp classes, elliptic counts and genus.
//!
//! Cosets are keyed by a canonical label so membership lookups are O(1):
//! the full matrix for `Full`, the bottom row for `Point`, and the bottom
//! row up to unit scaling for `Cyclic`. The table is built by breadth-first
//! closure from the identity coset under right multiplication by S and T,
//! which also certifies transitivity.

use std::collections::HashMap;

use crate::error::Result;
use crate::factor::{divisors, egcd, euler_phi, factorize, gcd_u64, legendre};
use crate::modmatrix::ModMatrix2;
use crate::rational::Rational;
use crate::subgroup::{StructureKind, SubgroupSpec};

pub(crate) fn units(n: u32) -> Vec<u32> {
    (1..n.max(2)).filter(|&u| gcd_u64(u as u64, n as u64) == 1).collect()
}

/// Lexicographically least unit multiple of v, the canonical name for the
/// cyclic subgroup (or projective row) that v generates mod n.
pub(crate) fn canonical_unit_multiple(n: u32, units: &[u32], v: (u32, u32)) -> (u32, u32) {
    let mut best = None;
    for &u in units {
        let cand =
            ((u as u64 * v.0 as u64 % n as u64) as u32, (u as u64 * v.1 as u64 % n as u64) as u32);
        if best.is_none_or(|b| cand < b) {
            best = Some(cand);
        }
    }
    best.expect("unit group is never empty")
}

fn label(spec: &SubgroupSpec, units: &[u32], g: &ModMatrix2) -> (u32, u32, u32, u32) {
    let (a, b, c, d) = g.entries();
    match spec.kind() {
        StructureKind::Full => (a, b, c, d),
        StructureKind::Point => (0, 0, c, d),
        StructureKind::Cyclic => {
            let (c, d) = canonical_unit_multiple(spec.level(), units, (c, d));
            (0, 0, c, d)
        }
    }
}

/// An integer matrix in SL2(Z) sending the cusp at infinity to numer/denom,
/// reduced mod n. The fraction must be in lowest terms; infinity is 1/0.
pub fn cusp_matrix(n: u32, numer: i64, denom: i64) -> ModMatrix2 {
    let (g, u, v) = egcd(numer, denom);
    assert_eq!(g, 1, "cusp fraction {numer}/{denom} is not reduced");
    // det [[numer, -v], [denom, u]] = numer*u + denom*v = 1
    ModMatrix2::new(n, numer, -v, denom, u)
}

/// The right coset space of a structure subgroup's image in SL2(Z/N).
#[derive(Debug, Clone)]
pub struct CosetTable {
    spec: SubgroupSpec,
    units: Vec<u32>,
    reps: Vec<ModMatrix2>,
    perm_s: Vec<usize>,
    perm_t: Vec<usize>,
    perm_neg: Vec<usize>,
    index: HashMap<(u32, u32, u32, u32), usize>,
}

impl CosetTable {
    pub fn build(spec: SubgroupSpec, bound: u32) -> Result<CosetTable> {
        let n = spec.level();
        let units = units(n);
        let s = ModMatrix2::s(n);
        let t = ModMatrix2::t(n);

        let identity = ModMatrix2::identity(n);
        let mut index = HashMap::new();
        let mut reps = vec![identity];
        index.insert(label(&spec, &units, &identity), 0);

        // The bound gates the closure the same way it gates sl2_enumerate.
        if n > bound {
            return Err(crate::error::Error::BoundExceeded { level: n, bound });
        }

        let mut head = 0;
        while head < reps.len() {
            let g = reps[head];
            head += 1;
            for gen in [&s, &t] {
                let h = g.mul(gen);
                let key = label(&spec, &units, &h);
                if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(key) {
                    slot.insert(reps.len());
                    reps.push(h);
                }
            }
        }
        assert_eq!(
            reps.len() as u64,
            spec.index_sl2(),
            "coset count disagrees with the index formula for {spec}"
        );

        let lookup = |g: &ModMatrix2| index[&label(&spec, &units, g)];
        let perm_s: Vec<usize> = reps.iter().map(|g| lookup(&g.mul(&s))).collect();
        let perm_t: Vec<usize> = reps.iter().map(|g| lookup(&g.mul(&t))).collect();
        let neg = ModMatrix2::neg_identity(n);
        let perm_neg: Vec<usize> = reps.iter().map(|g| lookup(&g.mul(&neg))).collect();

        // -I is central, so negation must commute with both generator actions.
        debug_assert!((0..reps.len()).all(|i| perm_s[perm_neg[i]] == perm_neg[perm_s[i]]));
        debug_assert!((0..reps.len()).all(|i| perm_t[perm_neg[i]] == perm_neg[perm_t[i]]));

        Ok(CosetTable { spec, units, reps, perm_s, perm_t, perm_neg, index })
    }

    pub fn spec(&self) -> SubgroupSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of the coset of the identity.
    pub fn basepoint(&self) -> usize {
        0
    }

    /// The first group element that reached this coset during closure.
    pub fn rep(&self, i: usize) -> &ModMatrix2 {
        &self.reps[i]
    }

    pub fn perm_s(&self) -> &[usize] {
        &self.perm_s
    }

    pub fn perm_t(&self) -> &[usize] {
        &self.perm_t
    }

    pub fn perm_neg(&self) -> &[usize] {
        &self.perm_neg
    }

    /// The coset containing g. Panics if g has the wrong modulus.
    pub fn coset_of(&self, g: &ModMatrix2) -> usize {
        assert_eq!(g.modulus(), self.spec.level(), "coset lookup across moduli");
        self.index[&label(&self.spec, &self.units, g)]
    }

    /// Grouping of cosets under right multiplication by -I, the fibers of
    /// the projection to the PSL2 coset space.
    pub fn psl2_classes(&self) -> Psl2Classes {
        let m = self.len();
        let mut class_of = vec![usize::MAX; m];
        let mut reps = Vec::new();
        for i in 0..m {
            if class_of[i] == usize::MAX {
                let c = reps.len();
                class_of[i] = c;
                class_of[self.perm_neg[i]] = c;
                reps.push(i);
            }
        }
        let perm_s: Vec<usize> = reps.iter().map(|&i| class_of[self.perm_s[i]]).collect();
        let perm_t: Vec<usize> = reps.iter().map(|&i| class_of[self.perm_t[i]]).collect();
        Psl2Classes { class_of, reps, perm_s, perm_t }
    }
}

pub fn coset_table(spec: SubgroupSpec, bound: u32) -> Result<CosetTable> {
    CosetTable::build(spec, bound)
}

/// Cosets mod the action of -I, with the induced S and T permutations.
#[derive(Debug, Clone)]
pub struct Psl2Classes {
    pub class_of: Vec<usize>,
    pub reps: Vec<usize>,
    pub perm_s: Vec<usize>,
    pub perm_t: Vec<usize>,
}

impl Psl2Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn perm_st(&self) -> Vec<usize> {
        self.perm_s.iter().map(|&c| self.perm_t[c]).collect()
    }
}

/// One cusp class: canonical fraction, width, and regularity. The class of
/// the cusp at infinity is stored as 1/0 and rendered "inf".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspClass {
    pub numer: u32,
    pub denom: u32,
    pub width: u64,
    pub regular: bool,
}

impl CuspClass {
    pub fn rep_string(&self) -> String {
        if self.denom == 0 {
            "inf".to_owned()
        } else {
            format!("{}/{}", self.numer, self.denom)
        }
    }
}

impl std::fmt::Display for CuspClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rep_string())
    }
}

/// Cusp classes in canonical order plus the coset -> cusp projection.
#[derive(Debug, Clone)]
pub struct CuspData {
    pub classes: Vec<CuspClass>,
    pub cusp_of_coset: Vec<usize>,
}

/// Cusp classes of the subgroup: orbits of T on the PSL2 coset space.
///
/// Width is the orbit length. A cusp is regular when conjugating T by a
/// matrix carrying infinity to the cusp lands in the subgroup after `width`
/// steps with sign +1; when only the negative lands there the plain T-orbit
/// in SL2 closes after 2*width steps and the cusp is irregular.
pub fn cusps(table: &CosetTable) -> CuspData {
    let psl2 = table.psl2_classes();
    let n_classes = psl2.len();

    let mut orbit_of_class = vec![usize::MAX; n_classes];
    let mut widths = Vec::new();
    let mut regulars = Vec::new();
    for c0 in 0..n_classes {
        if orbit_of_class[c0] != usize::MAX {
            continue;
        }
        let orbit_id = widths.len();
        let mut width = 0u64;
        let mut c = c0;
        loop {
            orbit_of_class[c] = orbit_id;
            width += 1;
            c = psl2.perm_t[c];
            if c == c0 {
                break;
            }
        }
        // Plain T-orbit length in SL2 is width for a regular cusp and
        // 2*width for an irregular one.
        let i0 = psl2.reps[c0];
        let mut sl2_len = 0u64;
        let mut i = i0;
        loop {
            sl2_len += 1;
            i = table.perm_t()[i];
            if i == i0 {
                break;
            }
        }
        assert!(sl2_len == width || sl2_len == 2 * width);
        widths.push(width);
        regulars.push(sl2_len == width);
    }

    // Sweep reduced fractions k/m in (denominator, numerator) order,
    // starting at infinity = 1/0, and keep the first fraction landing in
    // each orbit as its canonical representative.
    let n = table.spec().level();
    let n_orbits = widths.len();
    let mut rep_of_orbit: Vec<Option<(u32, u32)>> = vec![None; n_orbits];
    let mut assigned = 0;
    'sweep: for m in 0..=n {
        let upper = if m == 0 { 1 } else { n * m };
        for k in 0..=upper {
            if m == 0 && k != 1 {
                continue;
            }
            if m > 0 && gcd_u64(k as u64, m as u64) != 1 {
                continue;
            }
            let mat = cusp_matrix(n, k as i64, m as i64);
            let orbit = orbit_of_class[psl2.class_of[table.coset_of(&mat)]];
            if rep_of_orbit[orbit].is_none() {
                rep_of_orbit[orbit] = Some((k, m));
                assigned += 1;
                if assigned == n_orbits {
                    break 'sweep;
                }
            }
        }
    }
    assert_eq!(assigned, n_orbits, "fraction sweep missed a cusp orbit");

    let mut order: Vec<usize> = (0..n_orbits).collect();
    order.sort_by_key(|&o| {
        let (k, m) = rep_of_orbit[o].unwrap();
        (m, k)
    });
    let mut final_of_orbit = vec![0usize; n_orbits];
    let mut classes = Vec::with_capacity(n_orbits);
    for (pos, &o) in order.iter().enumerate() {
        final_of_orbit[o] = pos;
        let (numer, denom) = rep_of_orbit[o].unwrap();
        classes.push(CuspClass { numer, denom, width: widths[o], regular: regulars[o] });
    }
    let cusp_of_coset: Vec<usize> =
        (0..table.len()).map(|i| final_of_orbit[orbit_of_class[psl2.class_of[i]]]).collect();
    CuspData { classes, cusp_of_coset }
}

pub fn cusps_of(spec: SubgroupSpec, bound: u32) -> Result<Vec<CuspClass>> {
    Ok(cusps(&CosetTable::build(spec, bound)?).classes)
}

/// Counts (e2, e3) of elliptic points of order 2 and 3 on the quotient
/// curve, by the multiplicative closed forms. The Cyclic case multiplies
/// local factors of 1 + (-1|p) and 1 + (-3|p); the handful of small Point
/// levels with elliptic points are stored directly.
pub fn elliptic_counts(spec: &SubgroupSpec) -> (u64, u64) {
    let n = spec.level() as u64;
    match spec.kind() {
        StructureKind::Full => (0, 0),
        StructureKind::Point => match n {
            2 => (1, 0),
            3 => (0, 1),
            _ => (0, 0),
        },
        StructureKind::Cyclic => {
            let f = factorize(n).expect("level is positive");
            let e2 = if n.is_multiple_of(4) {
                0
            } else {
                f.primes()
                    .map(|p| match p {
                        2 => 1,
                        p => (1 + legendre(-1, p).expect("odd prime")) as u64,
                    })
                    .product()
            };
            let e3 = if n.is_multiple_of(9) {
                0
            } else {
                f.primes()
                    .map(|p| match p {
                        2 => 0,
                        3 => 1,
                        p => (1 + legendre(-3, p).expect("odd prime")) as u64,
                    })
                    .product()
            };
            (e2, e3)
        }
    }
}

/// Counts (e2, e3) read off the coset table: elliptic points of order 2
/// are the PSL2 classes fixed by S, and of order 3 those fixed by ST.
pub fn elliptic_counts_oracle(table: &CosetTable) -> (u64, u64) {
    let psl2 = table.psl2_classes();
    let st = psl2.perm_st();
    let e2 = psl2.perm_s.iter().enumerate().filter(|&(c, &img)| c == img).count();
    let e3 = st.iter().enumerate().filter(|&(c, &img)| c == img).count();
    (e2 as u64, e3 as u64)
}

/// Number of cusps of the Cyclic subgroup of level n: sum over divisors d
/// of phi(gcd(d, n/d)). Only the Cyclic family has a closed form here.
pub fn cyclic_cusp_count(n: u32) -> u64 {
    divisors(n as u64).into_iter().map(|d| euler_phi(gcd_u64(d, n as u64 / d))).sum()
}

/// Closed-form count of cusp classes for any structure kind. The levels 2
/// and 4 are genuine exceptions to the point-structure divisor sum, not
/// convention choices.
pub fn cusp_count_closed(spec: &SubgroupSpec) -> u64 {
    let n = spec.level() as u64;
    match spec.kind() {
        StructureKind::Full => spec.index_psl2() / n,
        StructureKind::Point => match n {
            2 => 2,
            4 => 3,
            _ => divisors(n).into_iter().map(|d| euler_phi(d) * euler_phi(n / d)).sum::<u64>() / 2,
        },
        StructureKind::Cyclic => cyclic_cusp_count(spec.level()),
    }
}

/// Genus from the index and the branch data of the map to the modular line:
/// g = 1 + d/12 - e2/4 - e3/3 - cusps/2 with d the PSL2 index.
pub fn genus_from_parts(index_psl2: u64, e2: u64, e3: u64, n_cusps: u64) -> u32 {
    let g = Rational::ONE + Rational::new(index_psl2 as i128, 12)
        - Rational::new(e2 as i128, 4)
        - Rational::new(e3 as i128, 3)
        - Rational::new(n_cusps as i128, 2);
    let g = g.to_integer().expect("genus formula must produce an integer");
    assert!(g >= 0, "genus must be non-negative");
    g as u32
}

/// Genus by Riemann-Hurwitz over the modular line, using only cycle counts
/// of S, ST and T on the PSL2 classes: 2g - 2 = d - c2 - c3 - cinf.
pub fn genus_rh_oracle(table: &CosetTable) -> u32 {
    fn cycle_count(perm: &[usize]) -> u64 {
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }
    let psl2 = table.psl2_classes();
    let d = psl2.len() as u64;
    let c2 = cycle_count(&psl2.perm_s);
    let c3 = cycle_count(&psl2.perm_st());
    let cinf = cycle_count(&psl2.perm_t);
    let double = d as i128 - (c2 + c3 + cinf) as i128 + 2;
    assert!(double >= 0 && double % 2 == 0, "Riemann-Hurwitz parity");
    (double / 2) as u32
}

/// The basic invariants of the quotient curve for one structure subgroup.
#[derive(Debug, Clone)]
pub struct CurveInvariants {
    pub spec: SubgroupSpec,
    pub index_sl2: u64,
    pub index_psl2: u64,
    pub cusps: Vec<CuspClass>,
    pub e2: u64,
    pub e3: u64,
    pub genus: u32,
}

pub fn curve_invariants(spec: SubgroupSpec, bound: u32) -> Result<CurveInvariants> {
    let table = CosetTable::build(spec, bound)?;
    let cusp_data = cusps(&table);
    let (e2, e3) = elliptic_counts(&spec);
    debug_assert_eq!((e2, e3), elliptic_counts_oracle(&table));
    let genus = genus_from_parts(spec.index_psl2(), e2, e3, cusp_data.classes.len() as u64);
    debug_assert_eq!(genus, genus_rh_oracle(&table));
    Ok(CurveInvariants {
        spec,
        index_sl2: spec.index_sl2(),
        index_psl2: spec.index_psl2(),
        cusps: cusp_data.classes,
        e2,
        e3,
        genus,
    })
}

pub fn genus(spec: SubgroupSpec, bound: u32) -> Result<u32> {
    Ok(curve_invariants(spec, bound)?.genus)
}
