//! Assembled per-level reports and level sweeps, with JSON, markdown and
//! CSV renderers. Rendering is deterministic: equal inputs give equal
//! bytes, and the JSON field order is part of the output contract.

use serde::Serialize;

use crate::error::Result;
use crate::monodromy::cover_over_k;
use crate::rational::Rational;
use crate::seifert::{recognize, seifert_data, HomeoLabel, SeifertData};
use crate::subgroup::{StructureKind, SubgroupSpec};
use crate::verdict::{smoothness_verdict, Locus, SingularPoint};
use crate::verify::has_reference_values;

/// CLI-facing name of a structure kind.
pub fn structure_token(kind: StructureKind) -> &'static str {
    match kind {
        StructureKind::Full => "full",
        StructureKind::Point => "gamma1",
        StructureKind::Cyclic => "gamma0",
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CuspEntry {
    pub rep: String,
    pub width: u64,
    pub regular: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentEntry {
    pub cusp: String,
    pub size: u64,
    pub branch_order: u64,
    pub core_degree: u64,
}

/// Everything computed for one (structure, level) pair. Field order is the
/// serialization order.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub level: u32,
    pub structure: &'static str,
    pub index_sl2: u64,
    pub index_psl2: u64,
    pub cusps: Vec<CuspEntry>,
    pub e2: u64,
    pub e3: u64,
    pub genus: u32,
    pub z2: Rational,
    pub zprime2: Rational,
    pub ztilde2: Rational,
    pub singularities: Vec<SingularPoint>,
    pub intersection_matrix: Vec<Vec<i64>>,
    pub det: u64,
    #[serde(rename = "smooth_at_Q")]
    pub smooth_at_q: bool,
    pub seifert: SeifertData,
    pub homeomorphism: String,
    #[serde(rename = "components_over_K")]
    pub components_over_k: Vec<ComponentEntry>,
    pub notes: Vec<String>,
    #[serde(skip)]
    verdict_label: &'static str,
}

pub fn build_report(spec: SubgroupSpec, bound: u32) -> Result<Report> {
    let verdict = smoothness_verdict(spec, bound)?;
    let seifert = seifert_data(spec, bound)?;
    let label = recognize(&seifert)?;
    let cover = cover_over_k(spec, bound)?;

    debug_assert_eq!(seifert.euler, verdict.zprime2);
    debug_assert_eq!(cover.components.len(), verdict.invariants.cusps.len());
    debug_assert_eq!(cover.components.iter().map(|c| c.size).sum::<u64>(), cover.fiber_size);
    debug_assert_eq!(label == HomeoLabel::Sphere3, verdict.smooth_at_q);

    let det = verdict.graph.det_abs()?;
    if verdict.invariants.genus == 0 {
        // contraction preserves the determinant, so the original matrix
        // already knows the order of the boundary: the chain orders times
        // the unresolved self-intersection
        let chains: i128 = verdict
            .singular_points
            .iter()
            .map(|p| (p.record.m_hat as i128).pow(p.count as u32))
            .product();
        debug_assert_eq!(
            Rational::from_integer(chains) * verdict.zprime2.abs(),
            Rational::from_integer(det as i128)
        );
    }

    let mut notes = verdict.notes.clone();
    if !has_reference_values(spec.kind(), spec.level()) {
        notes.push(
            "no bundled reference values at this level; the cusp resolution rule extrapolates \
             from the referenced levels"
                .to_owned(),
        );
    }

    Ok(Report {
        level: spec.level(),
        structure: structure_token(spec.kind()),
        index_sl2: verdict.invariants.index_sl2,
        index_psl2: verdict.invariants.index_psl2,
        cusps: verdict
            .invariants
            .cusps
            .iter()
            .map(|c| CuspEntry { rep: c.rep_string(), width: c.width, regular: c.regular })
            .collect(),
        e2: verdict.invariants.e2,
        e3: verdict.invariants.e3,
        genus: verdict.invariants.genus,
        z2: verdict.z2,
        zprime2: verdict.zprime2,
        ztilde2: verdict.ztilde2,
        singularities: verdict.singular_points.clone(),
        intersection_matrix: verdict.graph.intersection_matrix()?,
        det,
        smooth_at_q: verdict.smooth_at_q,
        seifert,
        homeomorphism: label.to_string(),
        components_over_k: cover
            .components
            .iter()
            .map(|c| ComponentEntry {
                cusp: cover.cusps[c.cusp].rep_string(),
                size: c.size,
                branch_order: c.branch_order,
                core_degree: c.core_degree,
            })
            .collect(),
        notes,
        verdict_label: verdict.verdict_label(),
    })
}

pub fn render_json(report: &Report) -> String {
    let mut out = serde_json::to_string_pretty(report).expect("report serializes");
    out.push('\n');
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn render_md(report: &Report) -> String {
    let mut out = String::new();
    let push = |out: &mut String, line: &str| {
        out.push_str(line);
        out.push('\n');
    };

    push(&mut out, &format!("# {}({})", report.structure, report.level));
    push(&mut out, "");
    push(&mut out, "| invariant | value |");
    push(&mut out, "|---|---|");
    push(&mut out, &format!("| index in SL2 | {} |", report.index_sl2));
    push(&mut out, &format!("| index in PSL2 | {} |", report.index_psl2));
    push(&mut out, &format!("| order-2 points | {} |", report.e2));
    push(&mut out, &format!("| order-3 points | {} |", report.e3));
    push(&mut out, &format!("| genus | {} |", report.genus));
    push(&mut out, &format!("| Z^2 | {} |", report.z2));
    push(&mut out, &format!("| Z'^2 | {} |", report.zprime2));
    push(&mut out, &format!("| Z~'^2 | {} |", report.ztilde2));
    push(&mut out, &format!("| det | {} |", report.det));
    push(&mut out, &format!("| smooth at Q | {} |", yes_no(report.smooth_at_q)));
    push(&mut out, &format!("| verdict | {} |", report.verdict_label));
    push(&mut out, &format!("| homeomorphism | {} |", report.homeomorphism));
    push(&mut out, "");

    push(&mut out, "## Cusps");
    push(&mut out, "");
    push(&mut out, "| rep | width | regular |");
    push(&mut out, "|---|---|---|");
    for cusp in &report.cusps {
        push(&mut out, &format!("| {} | {} | {} |", cusp.rep, cusp.width, yes_no(cusp.regular)));
    }
    push(&mut out, "");

    if !report.singularities.is_empty() {
        push(&mut out, "## Singular points");
        push(&mut out, "");
        push(&mut out, "| location | stabilizer order | count | type | chain | correction |");
        push(&mut out, "|---|---|---|---|---|---|");
        for point in &report.singularities {
            let location = match &point.location {
                Locus::Interior => "interior".to_owned(),
                Locus::Cusp { rep } => format!("cusp {rep}"),
            };
            let chain =
                point.record.hj_chain.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            push(
                &mut out,
                &format!(
                    "| {} | {} | {} | (1/{})({}, {}) | {} | {} |",
                    location,
                    point.stabilizer_order,
                    point.count,
                    point.record.m_hat,
                    1,
                    point.record.q_hat,
                    chain,
                    point.record.zprime_correction
                ),
            );
        }
        push(&mut out, "");
    }

    push(&mut out, "## Intersection matrix");
    push(&mut out, "");
    push(&mut out, "```");
    for row in &report.intersection_matrix {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>4}")).collect();
        push(&mut out, cells.join(" ").trim_end());
    }
    push(&mut out, "```");
    push(&mut out, "");

    push(&mut out, "## Fibration");
    push(&mut out, "");
    push(&mut out, &format!("- base genus: {}", report.seifert.base_genus));
    push(&mut out, &format!("- euler number: {}", report.seifert.euler));
    let fibers = if report.seifert.fibers.is_empty() {
        "none".to_owned()
    } else {
        report.seifert.fibers.iter().map(|f| f.alpha.to_string()).collect::<Vec<_>>().join(", ")
    };
    push(&mut out, &format!("- exceptional fibers: {fibers}"));
    push(&mut out, "");

    push(&mut out, "## Components over K");
    push(&mut out, "");
    push(&mut out, "| cusp | size | branch order | core degree |");
    push(&mut out, "|---|---|---|---|");
    for comp in &report.components_over_k {
        push(
            &mut out,
            &format!(
                "| {} | {} | {} | {} |",
                comp.cusp, comp.size, comp.branch_order, comp.core_degree
            ),
        );
    }

    if !report.notes.is_empty() {
        push(&mut out, "");
        push(&mut out, "## Notes");
        push(&mut out, "");
        for note in &report.notes {
            push(&mut out, &format!("- {note}"));
        }
    }
    out
}

/// The branched-cover decomposition alone, for the cover subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct CoverReport {
    pub level: u32,
    pub structure: &'static str,
    pub fiber_size: u64,
    pub components: Vec<ComponentEntry>,
}

pub fn build_cover_report(spec: SubgroupSpec, bound: u32) -> Result<CoverReport> {
    let cover = cover_over_k(spec, bound)?;
    Ok(CoverReport {
        level: spec.level(),
        structure: structure_token(spec.kind()),
        fiber_size: cover.fiber_size,
        components: cover
            .components
            .iter()
            .map(|c| ComponentEntry {
                cusp: cover.cusps[c.cusp].rep_string(),
                size: c.size,
                branch_order: c.branch_order,
                core_degree: c.core_degree,
            })
            .collect(),
    })
}

pub fn render_cover_json(cover: &CoverReport) -> String {
    let mut out = serde_json::to_string_pretty(cover).expect("cover report serializes");
    out.push('\n');
    out
}

pub fn render_cover_md(cover: &CoverReport) -> String {
    let mut out = format!(
        "# cover components, {}({})\n\nfiber size {}\n\n",
        cover.structure, cover.level, cover.fiber_size
    );
    out.push_str("| cusp | size | branch order | core degree |\n");
    out.push_str("|---|---|---|---|\n");
    for comp in &cover.components {
        out.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            comp.cusp, comp.size, comp.branch_order, comp.core_degree
        ));
    }
    out
}

/// One sweep row: the classical table columns plus genus and verdict.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub level: u32,
    pub e3: u64,
    pub e2: u64,
    pub zprime2: Rational,
    pub ztilde2: Rational,
    pub genus: u32,
    pub verdict: &'static str,
}

pub fn build_table(kind: StructureKind, max_level: u32, bound: u32) -> Result<Vec<TableRow>> {
    (2..=max_level)
        .map(|n| {
            let v = smoothness_verdict(SubgroupSpec::new(kind, n)?, bound)?;
            Ok(TableRow {
                level: n,
                e3: v.invariants.e3,
                e2: v.invariants.e2,
                zprime2: v.zprime2,
                ztilde2: v.ztilde2,
                genus: v.invariants.genus,
                verdict: v.verdict_label(),
            })
        })
        .collect()
}

pub fn render_table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("N,rho,i,zprime2,ztilde2,genus,verdict\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.level, row.e3, row.e2, row.zprime2, row.ztilde2, row.genus, row.verdict
        ));
    }
    out
}

pub fn render_table_md(rows: &[TableRow]) -> String {
    let mut out = String::from("| N | #rho | #i | Z'^2 | Z~'^2 | genus | verdict |\n");
    out.push_str("|---|---|---|---|---|---|---|\n");
    for row in rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} |\n",
            row.level, row.e3, row.e2, row.zprime2, row.ztilde2, row.genus, row.verdict
        ));
    }
    out
}
