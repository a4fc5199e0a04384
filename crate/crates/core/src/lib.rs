//! Tournament combinatorics: skew-adjacency determinants, switching classes,
//! blowups, CR-tournament predicates, the `L_n` family and the Z-matrix calculus.
//!
//! Vertices are 0-based indices everywhere in the API. Text and JSON output
//! that mirrors mathematical notation prints 1-based labels.

pub mod blowup;
pub mod cr;
pub mod detkit;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod iso;
pub mod lfamily;
pub mod tournament;
pub mod verify;
pub mod zmatrix;

pub use blowup::{
    blowup, classify_d5, contains_switching_isomorphic, decompose_brute_force, decompose_over_ln,
    decompose_transitive_blowup, one_transitive_blowups, theorem71_check, transitive_blowup,
    BlowupSpec, D5Class, D5Classification, Decomposition,
};
pub use cr::{
    count_cr_sigmas, cr_associated, cr_normalize, cr_vertex_witness, extend, is_basic,
    is_cr_tournament, is_strong_cr, is_trivial_cr, CrKind, CrReport, CrWitness, DominatingRelation,
    StrongCrReport,
};
pub use detkit::{
    det_exact, in_dk, in_dk_exactly, max_subtournament_det, skew_adjacency, tournament_det,
    DkReport, SkewMatrix, SquareMatrix,
};
pub use enumerate::{canonical_form, enumerate_tournaments, tournament_classes, Limits};
pub use error::{Error, Result};
pub use iso::{is_diamond, is_isomorphic, switching_equivalent, switching_isomorphic};
pub use lfamily::{gen_ln, gen_ln_minus, psi, LnVariant, PsiSignature};
pub use tournament::{Permutation, SwitchSet, Tournament, VertexSet, MAX_ORDER};
pub use verify::{run_suite, SuiteReport, SUITES};
pub use zmatrix::{z_matrix, BorderedSkew, DiagonalVector, ZMatrix};
