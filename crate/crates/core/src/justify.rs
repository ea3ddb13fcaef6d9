//! Named mathematical facts that verdicts cite.
//!
//! Every verdict carries the chain of facts it relied on, so a report can be
//! audited step by step without rerunning the computation.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Justification {
    pub label: String,
    pub statement: String,
}

impl Justification {
    pub fn new(label: &str, statement: &str) -> Self {
        Self { label: label.to_owned(), statement: statement.to_owned() }
    }

    /// A fact with a computed detail appended to its statement.
    pub fn with_detail(fact: (&str, &str), detail: impl AsRef<str>) -> Self {
        Self {
            label: fact.0.to_owned(),
            statement: format!("{} [{}]", fact.1, detail.as_ref()),
        }
    }
}

pub type Fact = (&'static str, &'static str);

pub const ML_IMPLIES_TRIVIAL_LIM1: Fact = (
    "mittag-leffler => lim1 trivial",
    "If the images of later groups in each fixed group of an inverse sequence are eventually constant, its lim1 is the trivial pointed set.",
);

pub const COUNTABLE_CONVERSE: Fact = (
    "countable converse",
    "For an inverse sequence of countable groups, trivial lim1 forces the Mittag-Leffler condition; finitely generated free groups and lattices are countable.",
);

pub const HOPFIAN_PLATEAU: Fact = (
    "hopfian plateau",
    "Once two consecutive images of s^n have equal rank, s restricted to the image is injective because free groups of finite rank are Hopfian, so ranks stay constant and the images stabilise exactly when the next image equals the current one.",
);

pub const RESTRICTION_EQUIVALENT: Fact = (
    "restriction to the stable image",
    "Iterating s on F^r and iterating s restricted to the eventual image subgroup give pro-isomorphic towers, so one has trivial lim1 exactly when the other does.",
);

pub const ISOMORPHISM_ON_FULL_RANK: Fact = (
    "full-rank criterion",
    "If the image of s is free of full rank r, then lim1 of the tower vanishes exactly when s is an automorphism.",
);

pub const ABELIAN_NECESSARY: Fact = (
    "abelianised tower is necessary",
    "Abelianisation carries images onto images, so a free-group tower whose abelianised tower fails Mittag-Leffler fails it too; lim1 of the free tower is then non-trivial.",
);

pub const UNIMODULAR_PLATEAU: Fact = (
    "unimodular plateau",
    "An injective self-map of a lattice is onto exactly when its determinant is a unit; otherwise the images descend strictly forever.",
);

pub const HOPFIAN_SURJECTIVE: Fact = (
    "hopfian surjectivity",
    "A surjective endomorphism of a free group of finite rank is an automorphism.",
);

pub const STABLE_IFF_LIM1: Fact = (
    "stable iff lim1 trivial",
    "An inverse limit of wedges of r circles under one based self-map is stable exactly when lim1 of its fundamental-group tower is trivial.",
);

pub const SHAPE_OF_STABLE_LIMIT: Fact = (
    "shape of a stable limit",
    "A stable limit whose images stabilise at a free group of rank m has the shape of a wedge of m circles, which is homotopy equivalent to a 2-torus with m-1 points removed.",
);

pub const BORDER_FORCED_ROSE_MODEL: Fact = (
    "border forcing gives the rose model",
    "When the substitution forces the border its tiling space is the inverse limit of a wedge of circles under the map realising the substitution, so the L-invariant equals lim1 of the rose tower.",
);

pub const PROPER_FORCES_BORDER: Fact = (
    "proper powers force the border",
    "If every image of some power of the substitution starts with one common letter and ends with one common letter, that power forces the border.",
);

pub const NEIGHBOURS_DETERMINED: Fact = (
    "neighbour determination forces the border",
    "If at some level every supertile's left and right neighbouring tiles are determined by the tile alone, the substitution forces the border.",
);

pub const GLUING_CONNECTED_LIFTS: Fact = (
    "connected gluing complex",
    "If the gluing subcomplex is path connected, collapsing it induces a surjection on fundamental groups, so non-trivial lim1 of the rose tower implies a non-trivial L-invariant.",
);

pub const NONTRIVIAL_L_OBSTRUCTS: Fact = (
    "non-trivial lim1 obstructs surface embedding",
    "A continuum presented as an inverse limit of finite polyhedra whose fundamental-group tower has non-trivial lim1 cannot be embedded in a closed surface.",
);

pub const VANISHING_NOT_SUFFICIENT: Fact = (
    "trivial L is only necessary",
    "A trivial L-invariant is necessary for embedding in a surface but does not guarantee an embedding.",
);

pub const INCONCLUSIVE_ROUTES: Fact = (
    "no certified route",
    "Neither border forcing nor the connected-gluing lift applies within the configured caps, so the L-invariant of the tiling space is not determined by the rose tower.",
);

pub const CECH_DIRECT_LIMIT: Fact = (
    "cohomology as a direct limit",
    "The Cech cohomology of an inverse limit is the direct limit of the cohomology of its terms; in degree one the bonding map is the transpose of the abelianised substitution.",
);

pub const TORUS_MINUS_POINTS: Fact = (
    "cohomology of a punctured torus",
    "The (d+1)-torus with k points removed has H^p of rank C(d+1, p) for p < d, rank d + k for p = d, and zero above d.",
);

pub const ATTRACTOR_H1_CAP: Fact = (
    "attractor H1 bound",
    "A codimension-one attractor in a closed (d+1)-manifold, d >= 2, has rational H^1 of dimension at most d + 1; in the unorientable case the transfer of the double cover injects it into the cohomology of the punctured torus.",
);

pub const PROJECTION_H1_BOUND: Fact = (
    "projection tiling H1 bound",
    "A canonical projection tiling of external dimension d and internal dimension n with finitely generated cohomology has H^1 containing a free abelian group of rank at least n + d.",
);

pub const PROJECTION_OBSTRUCTION: Fact = (
    "internal dimension obstruction",
    "Comparing n + d against the cap d + 1 shows that no canonical projection tiling space with internal dimension n > 1 is a codimension-one attractor.",
);

pub fn cite(fact: Fact) -> Justification {
    Justification::new(fact.0, fact.1)
}
