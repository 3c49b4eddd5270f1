//! Exact-arithmetic invariants of level-structure quotient curves and of
//! the three-manifolds that cover the three-sphere branched over the
//! trefoil.
//!
//! The pipeline runs in integers and rationals end to end: coset tables
//! over SL2(Z/N) give cusps, elliptic points and genus; chart weights at
//! the fixed points give cyclic quotient singularities and their
//! Hirzebruch-Jung resolutions; the resolved configuration is contracted
//! to decide smoothness at the section point Q; and the same data read
//! fiberwise gives the Seifert invariants and the homeomorphism type of
//! the associated branched cover. [`report`] assembles all of it per
//! level, and [`verify`] checks the library against its bundled
//! reference values.

pub mod cosets;
pub mod error;
pub mod factor;
pub mod graph;
pub mod modmatrix;
pub mod monodromy;
pub mod rational;
pub mod report;
pub mod schema;
pub mod seifert;
pub mod subgroup;
pub mod verdict;
pub mod verify;
pub mod weights;

pub use cosets::{curve_invariants, CurveInvariants, CuspClass};
pub use error::{Error, Result};
pub use graph::{BlowDownOutcome, ResolutionGraph};
pub use monodromy::{cover_over_k, ComponentOverK, CoverOverK};
pub use rational::Rational;
pub use report::{
    build_cover_report, build_report, build_table, render_cover_json, render_cover_md, render_json,
    render_md, render_table_csv, render_table_md, structure_token, CoverReport, Report, TableRow,
};
pub use seifert::{recognize, seifert_data, HomeoLabel, SeifertData};
pub use subgroup::{StructureKind, SubgroupSpec};
pub use verdict::{smoothness_verdict, SingularPoint, SmoothnessVerdict};
pub use verify::{run_all, Check, CheckStatus};
