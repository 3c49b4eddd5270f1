//! Seifert fibration data of the branched cover over the trefoil and
//! recognition of the total space up to homeomorphism.

use std::fmt;

use serde::Serialize;

use crate::cosets::curve_invariants;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subgroup::SubgroupSpec;
use crate::verdict::zprime_self_intersection;

/// What produces an exceptional fiber of the fibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiberSource {
    #[serde(rename = "elliptic_order_3")]
    EllipticOrder3,
    #[serde(rename = "elliptic_order_2")]
    EllipticOrder2,
    #[serde(rename = "irregular_cusp")]
    IrregularCusp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExceptionalFiber {
    /// Multiplicity of the fiber.
    pub alpha: u64,
    pub source: FiberSource,
}

/// Seifert invariants of the cover: base orbifold genus, exceptional
/// fibers, and the euler number of the fibration, which equals the
/// self-intersection of the section's image on the quotient surface.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeifertData {
    #[serde(rename = "genus")]
    pub base_genus: u32,
    pub fibers: Vec<ExceptionalFiber>,
    pub euler: Rational,
}

/// The homeomorphism type of the cover, as far as the Seifert data pins
/// it down.
#[derive(Debug, Clone, PartialEq)]
pub enum HomeoLabel {
    Sphere3,
    /// Lens space of the given order; the order determines the space only
    /// together with the fibration, so just the order is reported.
    LensSpace(u64),
    CircleBundle {
        genus: u32,
        euler: i64,
    },
    /// A Seifert fibered space outside the named families.
    SeifertGeneral(SeifertData),
    /// Reserved for inputs the recognizer cannot classify.
    Unknown,
}

impl fmt::Display for HomeoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomeoLabel::Sphere3 => write!(f, "S3"),
            HomeoLabel::LensSpace(p) => write!(f, "L({p})"),
            HomeoLabel::CircleBundle { genus, euler } => {
                write!(f, "circle_bundle(genus={genus}, euler={euler})")
            }
            HomeoLabel::SeifertGeneral(data) => {
                write!(f, "seifert(genus={}, fibers=[", data.base_genus)?;
                for (i, fiber) in data.fibers.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", fiber.alpha)?;
                }
                write!(f, "], euler={})", data.euler)
            }
            HomeoLabel::Unknown => write!(f, "unknown"),
        }
    }
}

/// Seifert data of the cover attached to a structure subgroup. Exceptional
/// fibers come from order-3 elliptic points (multiplicity 3), order-2
/// elliptic points (multiplicity 2), and irregular cusps (multiplicity 2),
/// in that order.
pub fn seifert_data(spec: SubgroupSpec, bound: u32) -> Result<SeifertData> {
    let invariants = curve_invariants(spec, bound)?;
    let mut fibers = Vec::new();
    for _ in 0..invariants.e3 {
        fibers.push(ExceptionalFiber { alpha: 3, source: FiberSource::EllipticOrder3 });
    }
    for _ in 0..invariants.e2 {
        fibers.push(ExceptionalFiber { alpha: 2, source: FiberSource::EllipticOrder2 });
    }
    for cusp in &invariants.cusps {
        if !cusp.regular {
            fibers.push(ExceptionalFiber { alpha: 2, source: FiberSource::IrregularCusp });
        }
    }
    Ok(SeifertData { base_genus: invariants.genus, fibers, euler: zprime_self_intersection(&spec) })
}

/// Name the total space when the Seifert data lands in a recognizable
/// family: no exceptional fibers give a circle bundle (the sphere when the
/// base is rational and the euler number is -1 or 1), and a rational base
/// with at most two exceptional fibers gives a lens space whose order is
/// the euler number scaled by the fiber multiplicities.
pub fn recognize(data: &SeifertData) -> Result<HomeoLabel> {
    if data.fibers.is_empty() {
        let euler = data.euler.to_integer().ok_or_else(|| {
            Error::InconsistentSeifert(format!(
                "no exceptional fibers but fractional euler number {}",
                data.euler
            ))
        })?;
        if data.base_genus == 0 && euler.unsigned_abs() == 1 {
            return Ok(HomeoLabel::Sphere3);
        }
        let euler = i64::try_from(euler).expect("euler number fits in i64");
        return Ok(HomeoLabel::CircleBundle { genus: data.base_genus, euler });
    }
    if data.base_genus == 0 && data.fibers.len() <= 2 {
        let product: i128 = data.fibers.iter().map(|f| f.alpha as i128).product();
        let scaled = data.euler.abs() * Rational::from_integer(product);
        let p = scaled.to_integer().ok_or_else(|| {
            Error::InconsistentSeifert(format!(
                "euler number {} is not a multiple of 1/{product}",
                data.euler
            ))
        })?;
        if p == 0 {
            return Err(Error::InconsistentSeifert("euler number must be nonzero".to_owned()));
        }
        let p = u64::try_from(p).expect("order fits in u64");
        if p == 1 {
            return Ok(HomeoLabel::Sphere3);
        }
        return Ok(HomeoLabel::LensSpace(p));
    }
    Ok(HomeoLabel::SeifertGeneral(data.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::StructureKind::{self, Cyclic, Full, Point};
    use crate::verdict::smoothness_verdict;

    fn spec(kind: StructureKind, n: u32) -> SubgroupSpec {
        SubgroupSpec::new(kind, n).unwrap()
    }

    fn label(kind: StructureKind, n: u32) -> HomeoLabel {
        recognize(&seifert_data(spec(kind, n), 60).unwrap()).unwrap()
    }

    #[test]
    fn full_level_covers() {
        assert_eq!(label(Full, 2), HomeoLabel::Sphere3);
        assert_eq!(label(Full, 3), HomeoLabel::Sphere3);
        assert_eq!(label(Full, 4), HomeoLabel::CircleBundle { genus: 0, euler: -2 });
        assert_eq!(label(Full, 5), HomeoLabel::CircleBundle { genus: 0, euler: -5 });
        assert_eq!(label(Full, 6), HomeoLabel::CircleBundle { genus: 1, euler: -6 });
    }

    #[test]
    fn point_level_covers() {
        for n in 2..=6 {
            assert_eq!(label(Point, n), HomeoLabel::Sphere3, "level {n}");
        }
        assert_eq!(label(Point, 7), HomeoLabel::CircleBundle { genus: 0, euler: -2 });
    }

    #[test]
    fn cyclic_level_covers() {
        assert_eq!(label(Cyclic, 2), HomeoLabel::Sphere3);
        assert_eq!(label(Cyclic, 3), HomeoLabel::LensSpace(2));
        assert_eq!(label(Cyclic, 4), HomeoLabel::Sphere3);
        assert_eq!(label(Cyclic, 5), HomeoLabel::LensSpace(4));
        assert_eq!(label(Cyclic, 7), HomeoLabel::LensSpace(12));
        assert_eq!(label(Cyclic, 10), HomeoLabel::LensSpace(12));
        assert_eq!(label(Cyclic, 25), HomeoLabel::LensSpace(20));
        match label(Cyclic, 13) {
            HomeoLabel::SeifertGeneral(data) => {
                let alphas: Vec<u64> = data.fibers.iter().map(|f| f.alpha).collect();
                assert_eq!(alphas, [3, 3, 2, 2]);
                assert_eq!(data.euler, Rational::new(-7, 3));
            }
            other => panic!("expected general Seifert data, got {other}"),
        }
    }

    #[test]
    fn irregular_cusp_feeds_a_fiber() {
        let data = seifert_data(spec(Point, 4), 60).unwrap();
        assert_eq!(data.fibers.len(), 1);
        assert_eq!(data.fibers[0].alpha, 2);
        assert_eq!(data.fibers[0].source, FiberSource::IrregularCusp);
        assert_eq!(data.euler, Rational::new(-1, 2));
        assert_eq!(recognize(&data).unwrap(), HomeoLabel::Sphere3);
    }

    #[test]
    fn fiber_sources_are_ordered() {
        let data = seifert_data(spec(Cyclic, 13), 60).unwrap();
        let sources: Vec<FiberSource> = data.fibers.iter().map(|f| f.source).collect();
        assert_eq!(
            sources,
            [
                FiberSource::EllipticOrder3,
                FiberSource::EllipticOrder3,
                FiberSource::EllipticOrder2,
                FiberSource::EllipticOrder2,
            ]
        );
    }

    #[test]
    fn euler_number_is_the_quotient_self_intersection() {
        for kind in StructureKind::ALL {
            for n in 2..=20 {
                let s = spec(kind, n);
                let data = seifert_data(s, 60).unwrap();
                assert_eq!(data.euler, zprime_self_intersection(&s), "{s}");
            }
        }
    }

    #[test]
    fn sphere_exactly_at_smooth_levels() {
        for kind in StructureKind::ALL {
            for n in 2..=30 {
                let s = spec(kind, n);
                let smooth = smoothness_verdict(s, 60).unwrap().smooth_at_q;
                let sphere = label(kind, n) == HomeoLabel::Sphere3;
                assert_eq!(smooth, sphere, "{s}");
            }
        }
    }

    #[test]
    fn inconsistent_data_is_rejected() {
        let data = SeifertData {
            base_genus: 0,
            fibers: vec![ExceptionalFiber { alpha: 2, source: FiberSource::EllipticOrder2 }],
            euler: Rational::new(-1, 3),
        };
        assert!(matches!(recognize(&data), Err(Error::InconsistentSeifert(_))));
        let data = SeifertData { base_genus: 0, fibers: Vec::new(), euler: Rational::new(-1, 2) };
        assert!(matches!(recognize(&data), Err(Error::InconsistentSeifert(_))));
    }

    #[test]
    fn labels_render() {
        assert_eq!(label(Point, 5).to_string(), "S3");
        assert_eq!(label(Cyclic, 7).to_string(), "L(12)");
        assert_eq!(label(Full, 4).to_string(), "circle_bundle(genus=0, euler=-2)");
        assert_eq!(label(Cyclic, 13).to_string(), "seifert(genus=0, fibers=[3,3,2,2], euler=-7/3)");
        assert_eq!(HomeoLabel::Unknown.to_string(), "unknown");
    }
}
