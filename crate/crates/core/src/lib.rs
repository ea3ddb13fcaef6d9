//! Decision procedures for the shape of one-dimensional inverse limits.
//!
//! The crate answers, for a free-group endomorphism or a primitive
//! substitution, whether the tower of fundamental groups is Mittag-Leffler
//! (equivalently whether its `lim¹` vanishes), whether the inverse limit is
//! stable, and whether that rules out embedding the space in a closed
//! surface. A small set of cohomological checks covers codimension-one
//! attractors in higher dimensions.
//!
//! Modules, bottom up:
//!
//! * [`intlat`]: exact integer matrices, Smith and Hermite forms, lattices.
//! * [`freegroup`]: reduced words and endomorphisms of free groups.
//! * [`stallings`]: folded core graphs of finitely generated subgroups.
//! * [`prostab`]: image towers, Mittag-Leffler and `lim¹` decisions.
//! * [`substitution`]: primitive substitutions, legal words, border forcing.
//! * [`verdicts`]: assembled reports with justification chains.

pub mod bigint_serde;
pub mod error;
pub mod freegroup;
pub mod intlat;
pub mod justify;
pub mod prostab;
pub mod stallings;
pub mod substitution;
pub mod verdicts;

pub use error::{Error, Result};
pub use freegroup::{Alphabet, FreeEndo, Syllable, Word};
pub use intlat::{IntMatrix, Lattice, SmithForm};
pub use justify::Justification;
pub use prostab::{AbelianTowerReport, Lim1, Lim1Verdict, TowerReport};
pub use stallings::{CoreGraph, SubgroupBasis};
pub use substitution::{BorderReport, BorderRoute, BorderStatus, GluingGraph, Substitution};
pub use verdicts::{
    AttractorBound, Caps, EndoReport, H1Presentation, LVerdict, ProjectionCheck, ShapeModel,
    Stability, SurfaceEmbedding, TilingSpaceReport, TorusCohomology, Validity,
};
