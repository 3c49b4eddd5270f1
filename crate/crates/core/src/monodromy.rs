//! Monodromy of the covers of the three-sphere branched over the trefoil.
//!
//! The trefoil group is presented by two generators x, y subject to
//! x^3 = y^2. Its reduction mod N sends x to ST and y to S, and a cover is
//! encoded by the action of these images on a finite fiber. The fiber is
//! enumerated from its own description (primitive vectors, cyclic
//! subgroups, or all of SL2(Z/N)) rather than from the coset table, so the
//! two models check each other.

use std::collections::HashMap;

use crate::cosets::{canonical_unit_multiple, cusps, units, CosetTable, CuspClass};
use crate::error::{Error, Result};
use crate::factor::gcd_u64;
use crate::modmatrix::{sl2_enumerate, ModMatrix2};
use crate::subgroup::{StructureKind, SubgroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidGen {
    X,
    XInv,
    Y,
    YInv,
}

/// Image of the generator x, the matrix ST.
pub fn braid_x(n: u32) -> ModMatrix2 {
    ModMatrix2::s(n).mul(&ModMatrix2::t(n))
}

/// Image of the generator y, the matrix S.
pub fn braid_y(n: u32) -> ModMatrix2 {
    ModMatrix2::s(n)
}

/// Image of a word in the trefoil group under x -> ST, y -> S.
pub fn braid_to_sl2(word: &[BraidGen], n: u32) -> ModMatrix2 {
    let x = braid_x(n);
    let y = braid_y(n);
    let mut acc = ModMatrix2::identity(n);
    for gen in word {
        let m = match gen {
            BraidGen::X => x,
            BraidGen::XInv => x.inv(),
            BraidGen::Y => y,
            BraidGen::YInv => y.inv(),
        };
        acc = acc.mul(&m);
    }
    acc
}

/// Image of the meridian y x^{-1}, the lower unipotent [[1,0],[1,1]].
pub fn meridian(n: u32) -> ModMatrix2 {
    braid_y(n).mul(&braid_x(n).inv())
}

/// Image of the central element y^2 = x^3, which is -I.
pub fn center(n: u32) -> ModMatrix2 {
    braid_y(n).pow(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum FiberPoint {
    Vector(u32, u32),
    Element(ModMatrix2),
}

fn primitive_vectors(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if gcd_u64(gcd_u64(x as u64, y as u64), n as u64) == 1 {
                out.push((x, y));
            }
        }
    }
    out
}

/// The fiber of the cover attached to a structure subgroup, with the right
/// action of SL2(Z/N): primitive row vectors for Point, canonical
/// generators of order-N cyclic subgroups for Cyclic, group elements for
/// Full. Isomorphic to the coset space as a right G-set, which the tests
/// verify rather than assume.
#[derive(Debug, Clone)]
pub struct FiberSet {
    spec: SubgroupSpec,
    units: Vec<u32>,
    points: Vec<FiberPoint>,
    index: HashMap<FiberPoint, usize>,
}

impl FiberSet {
    pub fn build(spec: SubgroupSpec, bound: u32) -> Result<FiberSet> {
        let n = spec.level();
        if n > bound {
            return Err(Error::BoundExceeded { level: n, bound });
        }
        let units = units(n);
        let points: Vec<FiberPoint> = match spec.kind() {
            StructureKind::Full => {
                sl2_enumerate(n, bound)?.into_iter().map(FiberPoint::Element).collect()
            }
            StructureKind::Point => {
                primitive_vectors(n).into_iter().map(|(x, y)| FiberPoint::Vector(x, y)).collect()
            }
            StructureKind::Cyclic => {
                let mut canon: Vec<(u32, u32)> = primitive_vectors(n)
                    .into_iter()
                    .map(|v| canonical_unit_multiple(n, &units, v))
                    .collect();
                canon.sort_unstable();
                canon.dedup();
                canon.into_iter().map(|(x, y)| FiberPoint::Vector(x, y)).collect()
            }
        };
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        Ok(FiberSet { spec, units, points, index })
    }

    pub fn spec(&self) -> SubgroupSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The point fixed by exactly the subgroup image.
    pub fn basepoint(&self) -> usize {
        let n = self.spec.level();
        let key = match self.spec.kind() {
            StructureKind::Full => FiberPoint::Element(ModMatrix2::identity(n)),
            StructureKind::Point => FiberPoint::Vector(0, 1),
            StructureKind::Cyclic => {
                let (x, y) = canonical_unit_multiple(n, &self.units, (0, 1));
                FiberPoint::Vector(x, y)
            }
        };
        self.index[&key]
    }

    /// Right action: the index of points[i] * g.
    pub fn act(&self, i: usize, g: &ModMatrix2) -> usize {
        assert_eq!(g.modulus(), self.spec.level(), "fiber action across moduli");
        let moved = match self.points[i] {
            FiberPoint::Vector(x, y) => {
                let v = g.act_row((x, y));
                let v = match self.spec.kind() {
                    StructureKind::Cyclic => {
                        canonical_unit_multiple(self.spec.level(), &self.units, v)
                    }
                    _ => v,
                };
                FiberPoint::Vector(v.0, v.1)
            }
            FiberPoint::Element(m) => FiberPoint::Element(m.mul(g)),
        };
        self.index[&moved]
    }

    /// The vector representing point i, for the two vector-based fibers.
    pub fn vector(&self, i: usize) -> Option<(u32, u32)> {
        match self.points[i] {
            FiberPoint::Vector(x, y) => Some((x, y)),
            FiberPoint::Element(_) => None,
        }
    }

    pub fn index_of_vector(&self, v: (u32, u32)) -> Option<usize> {
        self.index.get(&FiberPoint::Vector(v.0, v.1)).copied()
    }
}

pub fn fiber_set(spec: SubgroupSpec, bound: u32) -> Result<FiberSet> {
    FiberSet::build(spec, bound)
}

/// The action of the trefoil group generators on a fiber, together with a
/// transversal writing every point as basepoint * g. The action of the
/// generator images is always transitive because S and ST generate
/// SL2(Z/N); the builder asserts this instead of trusting it.
#[derive(Debug, Clone)]
pub struct MonodromyAction {
    fiber: FiberSet,
    perm_x: Vec<usize>,
    perm_y: Vec<usize>,
    transversal: Vec<ModMatrix2>,
}

impl MonodromyAction {
    pub fn fiber(&self) -> &FiberSet {
        &self.fiber
    }

    pub fn perm_x(&self) -> &[usize] {
        &self.perm_x
    }

    pub fn perm_y(&self) -> &[usize] {
        &self.perm_y
    }

    /// Group element carrying the basepoint to point i.
    pub fn transversal(&self, i: usize) -> &ModMatrix2 {
        &self.transversal[i]
    }
}

pub fn monodromy_orbits(spec: SubgroupSpec, bound: u32) -> Result<MonodromyAction> {
    let fiber = FiberSet::build(spec, bound)?;
    let n = spec.level();
    let x = braid_x(n);
    let y = braid_y(n);
    let m = fiber.len();
    let perm_x: Vec<usize> = (0..m).map(|i| fiber.act(i, &x)).collect();
    let perm_y: Vec<usize> = (0..m).map(|i| fiber.act(i, &y)).collect();

    let bp = fiber.basepoint();
    let mut transversal: Vec<Option<ModMatrix2>> = vec![None; m];
    transversal[bp] = Some(ModMatrix2::identity(n));
    let mut queue = vec![bp];
    let mut head = 0;
    while head < queue.len() {
        let i = queue[head];
        head += 1;
        let g = transversal[i].expect("queued points carry a transversal element");
        for (perm, gen) in [(&perm_x, &x), (&perm_y, &y)] {
            let j = perm[i];
            if transversal[j].is_none() {
                transversal[j] = Some(g.mul(gen));
                queue.push(j);
            }
        }
    }
    assert_eq!(queue.len(), m, "monodromy action must be transitive");
    let transversal: Vec<ModMatrix2> = transversal.into_iter().flatten().collect();
    debug_assert!((0..m).all(|i| fiber.act(bp, &transversal[i]) == i));
    Ok(MonodromyAction { fiber, perm_x, perm_y, transversal })
}

/// One connected piece of the preimage of the branch circle. `size` points
/// of the fiber form `core_degree` meridian orbits of length
/// `branch_order` each; the piece lies over the cusp `cusp` (an index into
/// the canonical cusp list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentOverK {
    pub cusp: usize,
    pub size: u64,
    pub branch_order: u64,
    pub core_degree: u64,
}

#[derive(Debug, Clone)]
pub struct CoverOverK {
    pub spec: SubgroupSpec,
    pub fiber_size: u64,
    pub cusps: Vec<CuspClass>,
    pub components: Vec<ComponentOverK>,
}

/// Decomposition of the preimage of the branch circle: orbits of the
/// subgroup generated by the meridian image and -I, tagged by cusp. The
/// tag uses the coset model: the component of basepoint * g lies over the
/// cusp of the coset of g * S. Components biject with cusps.
pub fn cover_over_k(spec: SubgroupSpec, bound: u32) -> Result<CoverOverK> {
    let action = monodromy_orbits(spec, bound)?;
    let fiber = action.fiber();
    let n = spec.level();
    let m = fiber.len();
    let mu = meridian(n);
    let neg = center(n);
    let perm_mu: Vec<usize> = (0..m).map(|i| fiber.act(i, &mu)).collect();
    let perm_neg: Vec<usize> = (0..m).map(|i| fiber.act(i, &neg)).collect();

    let mut comp_of = vec![usize::MAX; m];
    let mut n_comps = 0usize;
    for start in 0..m {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = n_comps;
        n_comps += 1;
        comp_of[start] = id;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in [perm_mu[i], perm_neg[i]] {
                if comp_of[j] == usize::MAX {
                    comp_of[j] = id;
                    stack.push(j);
                }
            }
        }
    }

    let mut size_of = vec![0u64; n_comps];
    let mut b_of = vec![0u64; n_comps];
    let mut mu_orbits_of = vec![0u64; n_comps];
    let mut seen = vec![false; m];
    for start in 0..m {
        size_of[comp_of[start]] += 1;
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        loop {
            seen[i] = true;
            len += 1;
            i = perm_mu[i];
            if i == start {
                break;
            }
        }
        let c = comp_of[start];
        mu_orbits_of[c] += 1;
        if b_of[c] == 0 {
            b_of[c] = len;
        } else {
            assert_eq!(b_of[c], len, "meridian orbit length must be constant per component");
        }
    }

    let table = CosetTable::build(spec, bound)?;
    let cusp_data = cusps(&table);
    let s = ModMatrix2::s(n);
    let mut cusp_of = vec![usize::MAX; n_comps];
    for (i, &c) in comp_of.iter().enumerate() {
        let cusp = cusp_data.cusp_of_coset[table.coset_of(&action.transversal(i).mul(&s))];
        if cusp_of[c] == usize::MAX {
            cusp_of[c] = cusp;
        } else {
            assert_eq!(cusp_of[c], cusp, "cusp tag must be constant per component");
        }
    }
    assert_eq!(n_comps, cusp_data.classes.len(), "components must biject with cusps");
    let mut tags = cusp_of.clone();
    tags.sort_unstable();
    tags.dedup();
    assert_eq!(tags.len(), n_comps, "two components over one cusp");

    let mut components: Vec<ComponentOverK> = (0..n_comps)
        .map(|c| {
            let d = mu_orbits_of[c];
            assert!(d == 1 || d == 2, "component holds {d} meridian orbits");
            debug_assert_eq!(size_of[c], b_of[c] * d);
            ComponentOverK {
                cusp: cusp_of[c],
                size: size_of[c],
                branch_order: b_of[c],
                core_degree: d,
            }
        })
        .collect();
    components.sort_by_key(|c| c.cusp);

    Ok(CoverOverK { spec, fiber_size: m as u64, cusps: cusp_data.classes, components })
}
