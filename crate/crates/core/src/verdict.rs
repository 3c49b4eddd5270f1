//! Smoothness of the quotient surface at the marked point Q over the cusp
//! of the base: self-intersections of the section configuration, the
//! singular points with their resolutions, the dual graph, and the verdict
//! by contracting it.

use serde::Serialize;

use crate::cosets::{curve_invariants, CurveInvariants};
use crate::error::{Error, Result};
use crate::graph::{blow_down, BlowDownOutcome, ResolutionGraph};
use crate::modmatrix::sl2_order;
use crate::rational::Rational;
use crate::subgroup::SubgroupSpec;
use crate::weights::{
    cusp_fixed_point_weights, interior_fixed_point_weights, resolve_quotient, CuspAction,
};

/// Self-intersection of the zero section on the level-N surface before any
/// quotient: -|SL2(Z/N)|/24. Defined from level three on, where the
/// surface carries no extra symmetries.
pub fn z_self_intersection(n: u32) -> Result<Rational> {
    if n < 3 {
        return Err(Error::LevelTooSmall { level: n, minimum: 3 });
    }
    Ok(-Rational::new(sl2_order(n) as i128, 24))
}

/// Self-intersection of the section's image on the quotient surface:
/// -(e^2/24) times the subgroup index, where e = 2 when -I is in the
/// image (so the section is traversed twice) and 1 otherwise. Level two
/// reads its index through the level-four model, where it is unchanged.
pub fn zprime_self_intersection(spec: &SubgroupSpec) -> Rational {
    let e: i128 = if spec.minus_i_in_image() { 2 } else { 1 };
    -Rational::new(e * e * spec.index_sl2() as i128, 24)
}

/// Where on the surface a singular point sits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Locus {
    Interior,
    Cusp { rep: String },
}

/// A singular point of the quotient surface: its location, the order of
/// the chart group fixing it, how many points share the model, and the
/// resolved singularity data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub location: Locus,
    pub stabilizer_order: u64,
    pub count: u64,
    #[serde(flatten)]
    pub record: crate::weights::SingularityRecord,
}

/// Dual graph of the resolved configuration: central vertex Zt for the
/// transform of the section, and one chain of exceptional vertices E1,
/// E2, ... per singular point (repeated `count` times), numbered across
/// all points in order.
pub fn resolution_graph(ztilde2: Rational, points: &[SingularPoint]) -> ResolutionGraph {
    let mut g = ResolutionGraph::new();
    let zt = g.add_vertex("Zt", ztilde2);
    let mut k = 0usize;
    for p in points {
        for _ in 0..p.count {
            let mut prev = zt;
            for &s in &p.record.hj_chain {
                k += 1;
                let v = g.add_vertex(format!("E{k}"), Rational::from_integer(s as i128));
                g.add_edge(prev, v, 1);
                prev = v;
            }
        }
    }
    g
}

/// The full smoothness computation for one structure subgroup.
#[derive(Debug, Clone)]
pub struct SmoothnessVerdict {
    pub spec: SubgroupSpec,
    pub invariants: CurveInvariants,
    /// Self-intersection of the section upstairs, at the reference level.
    pub z2: Rational,
    /// Self-intersection of the section's image on the quotient.
    pub zprime2: Rational,
    /// Self-intersection of the proper transform on the resolution.
    pub ztilde2: Rational,
    pub singular_points: Vec<SingularPoint>,
    pub graph: ResolutionGraph,
    /// Contraction outcome; skipped when the base curve has positive genus.
    pub blow_down: Option<BlowDownOutcome>,
    pub smooth_at_q: bool,
    pub notes: Vec<String>,
}

impl SmoothnessVerdict {
    pub fn genus(&self) -> u32 {
        self.invariants.genus
    }

    pub fn verdict_label(&self) -> &'static str {
        if self.invariants.genus > 0 {
            "singular (genus)"
        } else if self.smooth_at_q {
            "smooth"
        } else {
            "singular"
        }
    }
}

/// Decide smoothness at Q: resolve every singular point of the quotient
/// surface, form the dual graph of the transform of the section with the
/// exceptional chains, and contract. Q is smooth exactly when the base
/// curve is rational and the whole configuration contracts to nothing.
pub fn smoothness_verdict(spec: SubgroupSpec, bound: u32) -> Result<SmoothnessVerdict> {
    let invariants = curve_invariants(spec, bound)?;
    let mut singular_points = Vec::new();

    if invariants.e3 > 0 {
        let order = if spec.minus_i_in_image() { 6 } else { 3 };
        let w = interior_fixed_point_weights(order)?;
        let record = resolve_quotient(&[w]);
        assert!(!record.is_smooth(), "an interior stabilizer always leaves a singular point");
        singular_points.push(SingularPoint {
            location: Locus::Interior,
            stabilizer_order: order as u64,
            count: invariants.e3,
            record,
        });
    }
    if invariants.e2 > 0 {
        // the stabilizer of an order-2 elliptic point contains a square
        // root of -I, so -I itself acts
        assert!(spec.minus_i_in_image(), "an order-2 point forces -I into the image");
        let w = interior_fixed_point_weights(4)?;
        let record = resolve_quotient(&[w]);
        assert!(!record.is_smooth());
        singular_points.push(SingularPoint {
            location: Locus::Interior,
            stabilizer_order: 4,
            count: invariants.e2,
            record,
        });
    }
    for cusp in &invariants.cusps {
        match cusp_fixed_point_weights(&spec, cusp) {
            CuspAction::FixesWholeFiber => {}
            CuspAction::Action(gens) => {
                let record = resolve_quotient(&gens);
                if record.is_smooth() {
                    continue;
                }
                let stabilizer_order: u64 = gens.iter().map(|g| g.order as u64).product();
                singular_points.push(SingularPoint {
                    location: Locus::Cusp { rep: cusp.rep_string() },
                    stabilizer_order,
                    count: 1,
                    record,
                });
            }
        }
    }

    let z2 = z_self_intersection(spec.reference_level())?;
    let zprime2 = zprime_self_intersection(&spec);
    let correction = singular_points.iter().fold(Rational::ZERO, |acc, p| {
        acc + Rational::from_integer(p.count as i128) * p.record.zprime_correction
    });
    let ztilde2 = zprime2 + correction;
    assert!(ztilde2.is_integer(), "resolved self-intersection must be an integer");

    let graph = resolution_graph(ztilde2, &singular_points);
    let blow = if invariants.genus == 0 { Some(blow_down(&graph)?) } else { None };
    let smooth_at_q = matches!(blow, Some(BlowDownOutcome::Contracted { .. }));

    let mut notes = Vec::new();
    if spec.level() == 2 {
        notes.push(
            "level 2 is computed through its level-4 model: the stabilizer is replaced by its \
             full preimage mod 4, which changes no reported quantity"
                .to_owned(),
        );
    }

    Ok(SmoothnessVerdict {
        spec,
        invariants,
        z2,
        zprime2,
        ztilde2,
        singular_points,
        graph,
        blow_down: blow,
        smooth_at_q,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::StructureKind::{self, Cyclic, Full, Point};

    fn spec(kind: StructureKind, n: u32) -> SubgroupSpec {
        SubgroupSpec::new(kind, n).unwrap()
    }

    fn verdict(kind: StructureKind, n: u32) -> SmoothnessVerdict {
        smoothness_verdict(spec(kind, n), 60).unwrap()
    }

    #[test]
    fn section_self_intersections_upstairs() {
        assert_eq!(z_self_intersection(3).unwrap(), Rational::from_integer(-1));
        assert_eq!(z_self_intersection(4).unwrap(), Rational::from_integer(-2));
        assert_eq!(z_self_intersection(5).unwrap(), Rational::from_integer(-5));
        assert_eq!(z_self_intersection(7).unwrap(), Rational::from_integer(-14));
        assert_eq!(z_self_intersection(2), Err(Error::LevelTooSmall { level: 2, minimum: 3 }));
    }

    #[test]
    fn quotient_self_intersections() {
        let cases = [
            (Full, 2, Rational::from_integer(-1)),
            (Full, 3, Rational::from_integer(-1)),
            (Full, 4, Rational::from_integer(-2)),
            (Full, 5, Rational::from_integer(-5)),
            (Full, 7, Rational::from_integer(-14)),
            (Point, 2, Rational::new(-1, 2)),
            (Point, 3, Rational::new(-1, 3)),
            (Point, 4, Rational::new(-1, 2)),
            (Point, 5, Rational::from_integer(-1)),
            (Point, 6, Rational::from_integer(-1)),
            (Point, 7, Rational::from_integer(-2)),
            (Cyclic, 2, Rational::new(-1, 2)),
            (Cyclic, 3, Rational::new(-2, 3)),
            (Cyclic, 4, Rational::from_integer(-1)),
            (Cyclic, 5, Rational::from_integer(-1)),
            (Cyclic, 7, Rational::new(-4, 3)),
            (Cyclic, 10, Rational::from_integer(-3)),
            (Cyclic, 13, Rational::new(-7, 3)),
            (Cyclic, 25, Rational::from_integer(-5)),
        ];
        for (kind, n, expected) in cases {
            assert_eq!(zprime_self_intersection(&spec(kind, n)), expected, "{kind:?}({n})");
        }
    }

    #[test]
    fn full_levels_match_the_unquotiented_section_from_three() {
        for n in 3..=12 {
            assert_eq!(zprime_self_intersection(&spec(Full, n)), z_self_intersection(n).unwrap());
        }
    }

    #[test]
    fn cyclic_summary_table() {
        // (level, e3 count, e2 count, zprime2, ztilde2)
        let rows = [
            (3u32, 1u64, 0u64, Rational::new(-2, 3), Rational::from_integer(-1)),
            (4, 0, 0, Rational::from_integer(-1), Rational::from_integer(-1)),
            (5, 0, 2, Rational::from_integer(-1), Rational::from_integer(-2)),
            (7, 2, 0, Rational::new(-4, 3), Rational::from_integer(-2)),
            (10, 0, 2, Rational::from_integer(-3), Rational::from_integer(-4)),
            (13, 2, 2, Rational::new(-7, 3), Rational::from_integer(-4)),
            (25, 0, 2, Rational::from_integer(-5), Rational::from_integer(-6)),
        ];
        for (n, e3, e2, zp, zt) in rows {
            let v = verdict(Cyclic, n);
            assert_eq!(v.invariants.e3, e3, "level {n}");
            assert_eq!(v.invariants.e2, e2, "level {n}");
            assert_eq!(v.zprime2, zp, "level {n}");
            assert_eq!(v.ztilde2, zt, "level {n}");
        }
    }

    #[test]
    fn smooth_sets_up_to_thirty() {
        for n in 2..=30u32 {
            assert_eq!(verdict(Full, n).smooth_at_q, [2, 3].contains(&n), "Full({n})");
            assert_eq!(verdict(Point, n).smooth_at_q, [2, 3, 4, 5, 6].contains(&n), "Point({n})");
            assert_eq!(verdict(Cyclic, n).smooth_at_q, [2, 4].contains(&n), "Cyclic({n})");
        }
    }

    #[test]
    fn contraction_sequences() {
        let seq = |kind, n| match verdict(kind, n).blow_down {
            Some(BlowDownOutcome::Contracted { sequence }) => sequence,
            other => panic!("expected contraction for {kind:?}({n}), got {other:?}"),
        };
        assert_eq!(seq(Point, 3), ["Zt", "E1", "E2"]);
        assert_eq!(seq(Point, 4), ["Zt", "E1"]);
        assert_eq!(seq(Point, 2), ["Zt", "E1"]);
        assert_eq!(seq(Cyclic, 2), ["Zt", "E1"]);
        assert_eq!(seq(Full, 2), ["Zt"]);
        assert_eq!(seq(Full, 3), ["Zt"]);
        assert_eq!(seq(Point, 5), ["Zt"]);
        assert_eq!(seq(Point, 6), ["Zt"]);
        assert_eq!(seq(Cyclic, 4), ["Zt"]);
    }

    #[test]
    fn obstructed_determinants() {
        let det = |kind, n| match verdict(kind, n).blow_down {
            Some(BlowDownOutcome::Obstructed { det_abs, .. }) => det_abs,
            other => panic!("expected obstruction for {kind:?}({n}), got {other:?}"),
        };
        assert_eq!(det(Cyclic, 3), 2);
        assert_eq!(det(Cyclic, 5), 4);
        assert_eq!(det(Cyclic, 7), 12);
        assert_eq!(det(Cyclic, 10), 12);
        assert_eq!(det(Cyclic, 13), 84);
        assert_eq!(det(Cyclic, 25), 20);
        assert_eq!(det(Point, 7), 2);
    }

    #[test]
    fn point_level_four_singular_point() {
        let v = verdict(Point, 4);
        assert_eq!(v.singular_points.len(), 1);
        let p = &v.singular_points[0];
        assert_eq!(p.location, Locus::Cusp { rep: "1/2".to_owned() });
        assert_eq!(p.stabilizer_order, 4);
        assert_eq!(p.count, 1);
        assert_eq!((p.record.m_hat, p.record.q_hat), (2, 1));
        assert_eq!(p.record.hj_chain, [-2]);
    }

    #[test]
    fn point_level_three_singular_point() {
        let v = verdict(Point, 3);
        assert_eq!(v.singular_points.len(), 1);
        let p = &v.singular_points[0];
        assert_eq!(p.location, Locus::Interior);
        assert_eq!(p.stabilizer_order, 3);
        assert_eq!((p.record.m_hat, p.record.q_hat), (3, 2));
        assert_eq!(p.record.hj_chain, [-2, -2]);
    }

    #[test]
    fn cyclic_thirteen_graph_shape() {
        let v = verdict(Cyclic, 13);
        assert_eq!(v.singular_points.len(), 2);
        assert_eq!(v.singular_points[0].stabilizer_order, 6);
        assert_eq!(v.singular_points[0].count, 2);
        assert_eq!(v.singular_points[1].stabilizer_order, 4);
        assert_eq!(v.singular_points[1].count, 2);
        let names: Vec<&str> = v.graph.vertices().iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, ["Zt", "E1", "E2", "E3", "E4"]);
        let selves: Vec<Rational> =
            v.graph.vertices().iter().map(|x| x.self_intersection).collect();
        assert_eq!(
            selves,
            [
                Rational::from_integer(-4),
                Rational::from_integer(-3),
                Rational::from_integer(-3),
                Rational::from_integer(-2),
                Rational::from_integer(-2),
            ]
        );
        assert_eq!(v.graph.edges(), [(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1)]);
    }

    #[test]
    fn determinant_factors_through_singularity_orders() {
        for kind in StructureKind::ALL {
            for n in 2..=20 {
                let v = verdict(kind, n);
                let det = v.graph.det_abs().unwrap();
                let product: u64 =
                    v.singular_points.iter().map(|p| p.record.m_hat.pow(p.count as u32)).product();
                assert_eq!(
                    Rational::from_integer(det as i128),
                    Rational::from_integer(product as i128) * v.zprime2.abs(),
                    "{kind:?}({n})"
                );
            }
        }
    }

    #[test]
    fn cyclic_quotient_section_drops_below_minus_one_from_level_six() {
        for n in 6..=60 {
            assert!(
                zprime_self_intersection(&spec(Cyclic, n)) < Rational::from_integer(-1),
                "level {n}"
            );
        }
    }

    #[test]
    fn contracted_graphs_are_negative_definite() {
        for kind in StructureKind::ALL {
            for n in 2..=20 {
                let v = verdict(kind, n);
                if !v.smooth_at_q {
                    continue;
                }
                let mat = v.graph.intersection_matrix().unwrap();
                for k in 1..=mat.len() {
                    let minor: Vec<Vec<i64>> =
                        mat[..k].iter().map(|row| row[..k].to_vec()).collect();
                    let d = crate::graph::det_i128(&minor);
                    let expected = if k % 2 == 0 { 1 } else { -1 };
                    assert_eq!(d.signum() as i64, expected, "{kind:?}({n}) minor {k}");
                }
            }
        }
    }

    #[test]
    fn genus_gate_skips_contraction() {
        let v = verdict(Cyclic, 11);
        assert_eq!(v.invariants.genus, 1);
        assert!(v.blow_down.is_none());
        assert!(!v.smooth_at_q);
        assert_eq!(v.verdict_label(), "singular (genus)");
        assert_eq!(v.ztilde2, Rational::from_integer(-2));
    }

    #[test]
    fn verdict_labels() {
        assert_eq!(verdict(Point, 5).verdict_label(), "smooth");
        assert_eq!(verdict(Cyclic, 3).verdict_label(), "singular");
        assert_eq!(verdict(Cyclic, 11).verdict_label(), "singular (genus)");
    }

    #[test]
    fn level_two_carries_a_model_note() {
        for kind in StructureKind::ALL {
            assert_eq!(verdict(kind, 2).notes.len(), 1);
            assert!(verdict(kind, 3).notes.is_empty());
        }
    }
}
