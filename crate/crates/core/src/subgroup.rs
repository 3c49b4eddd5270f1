//! The three families of level structures of level N and the subgroups of
//! SL2(Z/N) that stabilize them.
//!
//! A basis of full level structures is stabilized by the identity alone; a
//! point of exact order N by the matrices with first row (1, 0) mod N acting
//! trivially on (0,1) from the right, i.e. bottom row (0, 1); a cyclic
//! subgroup of order N by the matrices with lower-left entry 0. Indices of
//! those stabilizers in SL2(Z/N) have multiplicative closed forms which the
//! tests check against the coset enumeration.

use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::modmatrix::{sl2_order, ModMatrix2};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Which level structure a surface parametrizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    /// A basis of the N-torsion: S(N), group Gamma(N).
    Full,
    /// A point of exact order N: S_1(N), group Gamma_1(N).
    Point,
    /// A cyclic subgroup of order N: S_0(N), group Gamma_0(N).
    Cyclic,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureKind::Full => "full",
            StructureKind::Point => "point",
            StructureKind::Cyclic => "cyclic",
        })
    }
}

impl StructureKind {
    pub const ALL: [StructureKind; 3] =
        [StructureKind::Full, StructureKind::Point, StructureKind::Cyclic];
}

/// A level structure kind together with its level N >= 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupSpec {
    kind: StructureKind,
    level: u32,
}

impl SubgroupSpec {
    pub fn new(kind: StructureKind, level: u32) -> Result<Self> {
        if level < 2 {
            return Err(Error::LevelTooSmall { level, minimum: 2 });
        }
        Ok(SubgroupSpec { kind, level })
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Membership of a mod-N matrix in the stabilizer subgroup.
    pub fn contains(&self, g: &ModMatrix2) -> bool {
        assert_eq!(g.modulus(), self.level, "matrix modulus must equal the level");
        let (a, b, c, d) = g.entries();
        let _ = b;
        match self.kind {
            StructureKind::Full => g.is_identity(),
            StructureKind::Point => a == 1 % self.level && c == 0 && d == 1 % self.level,
            StructureKind::Cyclic => c == 0,
        }
    }

    /// Membership after reducing a matrix of a larger modulus to the level.
    pub fn contains_reduced(&self, g: &ModMatrix2) -> bool {
        self.contains(&g.reduce(self.level))
    }

    /// The level whose charts carry the surface geometry. Levels below
    /// three have too few chart symmetries of their own, so they are
    /// computed through the level-four model; from three on the level is
    /// its own reference.
    pub fn reference_level(&self) -> u32 {
        if self.level >= 3 {
            self.level
        } else {
            4
        }
    }

    /// Whether -I lies in the stabilizer. Controls the passage from SL2 to
    /// PSL2 indices and the regularity of cusps.
    pub fn minus_i_in_image(&self) -> bool {
        match self.kind {
            StructureKind::Full | StructureKind::Point => self.level <= 2,
            StructureKind::Cyclic => true,
        }
    }

    /// Index in SL2(Z/N), as a product over prime powers.
    pub fn index_sl2(&self) -> u64 {
        let factors = factorize(self.level as u64).expect("level >= 2");
        match self.kind {
            StructureKind::Full => sl2_order(self.level),
            StructureKind::Point => {
                factors.factors().iter().map(|&(p, e)| p.pow(2 * e - 2) * (p * p - 1)).product()
            }
            StructureKind::Cyclic => {
                factors.factors().iter().map(|&(p, e)| p.pow(e - 1) * (p + 1)).product()
            }
        }
    }

    /// Index of the image in PSL2(Z/N): halves the SL2 index exactly when
    /// -I is missing from the stabilizer.
    pub fn index_psl2(&self) -> u64 {
        let idx = self.index_sl2();
        if self.minus_i_in_image() {
            idx
        } else {
            idx / 2
        }
    }

    /// Degree of the map to the lambda-line induced on the quotient curves;
    /// equals index_psl2 / 12 as a rational.
    pub fn deg_lambda(&self) -> crate::rational::Rational {
        crate::rational::Rational::new(self.index_psl2() as i128, 12)
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.level)
    }
}
