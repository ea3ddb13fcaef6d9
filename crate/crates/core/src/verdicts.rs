//! Assembled verdicts: L-invariant, stability, shape, surface embedding,
//! first cohomology, and the higher-dimensional attractor checks.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::FreeEndo;
use crate::intlat::{characteristic_polynomial, IntMatrix};
use crate::justify::{self, cite, Justification};
use crate::prostab::{abelian_tower, image_tower, is_automorphism, lim1_verdict, Lim1};
use crate::substitution::{BorderReport, BorderRoute, Substitution};

/// Search depths for the two border-forcing routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub border: usize,
    pub proper: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Self { border: 8, proper: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LVerdict {
    Trivial,
    Nontrivial,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    Yes,
    No,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceEmbedding {
    Obstructed,
    NoObstructionFound,
}

/// Shape of a stable limit: a wedge of `wedge_rank` circles, or equally a
/// 2-torus with `torus_punctures` points removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeModel {
    pub wedge_rank: usize,
    pub torus_punctures: usize,
}

impl ShapeModel {
    fn of_rank(m: usize) -> Self {
        Self { wedge_rank: m, torus_punctures: m.saturating_sub(1) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Validity {
    Exact,
    RoseModelOnly,
}

/// First cohomology as the direct limit of `Z^r` under `matrix`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H1Presentation {
    pub generators_rank: usize,
    pub matrix: IntMatrix,
    pub eventual_rank: usize,
    #[serde(with = "crate::bigint_serde")]
    pub restricted_determinant: BigInt,
    #[serde(with = "crate::bigint_serde::vec")]
    pub characteristic_polynomial: Vec<BigInt>,
    pub limit_descriptor: String,
    pub validity: Validity,
}

impl H1Presentation {
    /// Equality of everything except validity.
    pub fn same_invariants(&self, other: &H1Presentation) -> bool {
        self.generators_rank == other.generators_rank
            && self.matrix == other.matrix
            && self.eventual_rank == other.eventual_rank
            && self.restricted_determinant == other.restricted_determinant
            && self.characteristic_polynomial == other.characteristic_polynomial
            && self.limit_descriptor == other.limit_descriptor
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingSpaceReport {
    pub primitive: bool,
    pub rose_lim1: Lim1,
    pub border: BorderReport,
    pub gluing_connected: bool,
    pub l_verdict: LVerdict,
    pub notes: Vec<String>,
    pub stable: Stability,
    pub shape_model: Option<ShapeModel>,
    pub surface_embedding: SurfaceEmbedding,
    pub h1: H1Presentation,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub justification: Vec<Justification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoReport {
    pub rank: usize,
    pub is_automorphism: bool,
    pub abelianization: IntMatrix,
    pub tower_ranks: Vec<usize>,
    pub plateau_index: usize,
    pub ml: bool,
    pub lim1: Lim1,
    pub via_abelian_shortcut: bool,
    pub stable: Stability,
    pub shape_model: Option<ShapeModel>,
    pub surface_embedding: SurfaceEmbedding,
    /// Rules of the restriction to the plateau subgroup, in basis letters.
    pub induced_rules: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub justification: Vec<Justification>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCohomology {
    pub d: usize,
    pub k: usize,
    /// Ranks of `H^p` for `p = 0..=d+1`.
    pub ranks: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub justification: Vec<Justification>,
}

impl TorusCohomology {
    pub fn euler_characteristic(&self) -> i128 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(p, &r)| if p % 2 == 0 { r as i128 } else { -(r as i128) })
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionCheck {
    pub d: usize,
    pub n: usize,
    pub h1_lower_bound: usize,
    pub attractor_h1_cap: usize,
    pub obstructed: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub justification: Vec<Justification>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AttractorBound {
    pub d: usize,
    pub cap: usize,
}

impl AttractorBound {
    /// Whether an H¹ rank fits under the cap.
    pub fn admits(&self, rank: usize) -> bool {
        rank <= self.cap
    }
}

pub fn analyze_substitution(s: &Substitution, caps: Caps) -> Result<TilingSpaceReport> {
    if !s.is_primitive() {
        return Err(Error::Precondition("substitution is not primitive".into()));
    }
    let rose = s.rose_endo();
    let lim1 = lim1_verdict(&rose);
    let border = s.forces_border_with(caps.proper, caps.border)?;
    let gluing_connected = s.gluing_graph()?.connected;
    let mut justification = lim1.justification.clone();
    let mut notes = vec![
        "aperiodicity of the subshift is assumed, not checked".to_owned(),
    ];

    let l_verdict = if border.forced() {
        justification.push(match border.route {
            BorderRoute::ProperPower(n) => {
                Justification::with_detail(justify::PROPER_FORCES_BORDER, format!("level {n}"))
            }
            BorderRoute::NeighborDetermination(n) => {
                Justification::with_detail(justify::NEIGHBOURS_DETERMINED, format!("level {n}"))
            }
            BorderRoute::None => unreachable!("forced border has a route"),
        });
        justification.push(cite(justify::BORDER_FORCED_ROSE_MODEL));
        match lim1.verdict {
            Lim1::Trivial => LVerdict::Trivial,
            Lim1::Nontrivial => LVerdict::Nontrivial,
        }
    } else if lim1.verdict == Lim1::Nontrivial && gluing_connected {
        justification.push(cite(justify::GLUING_CONNECTED_LIFTS));
        LVerdict::Nontrivial
    } else {
        notes.push(match lim1.verdict {
            Lim1::Trivial => "rose tower is ML".to_owned(),
            Lim1::Nontrivial => "rose tower is not ML".to_owned(),
        });
        notes.push(format!(
            "border forcing not certified within caps (proper {}, neighbours {})",
            caps.proper, caps.border
        ));
        if !gluing_connected {
            notes.push("gluing graph is disconnected".to_owned());
        }
        justification.push(cite(justify::INCONCLUSIVE_ROUTES));
        LVerdict::Inconclusive
    };

    let (stable, shape_model) = match l_verdict {
        LVerdict::Trivial => {
            let tower = image_tower(&rose);
            justification.push(cite(justify::STABLE_IFF_LIM1));
            justification.push(cite(justify::SHAPE_OF_STABLE_LIMIT));
            (Stability::Yes, Some(ShapeModel::of_rank(tower.plateau_rank())))
        }
        LVerdict::Nontrivial => {
            justification.push(cite(justify::STABLE_IFF_LIM1));
            (Stability::No, None)
        }
        LVerdict::Inconclusive => (Stability::Inconclusive, None),
    };
    let surface_embedding = if l_verdict == LVerdict::Nontrivial {
        justification.push(cite(justify::NONTRIVIAL_L_OBSTRUCTS));
        SurfaceEmbedding::Obstructed
    } else {
        justification.push(cite(justify::VANISHING_NOT_SUFFICIENT));
        SurfaceEmbedding::NoObstructionFound
    };
    let validity = if border.forced() { Validity::Exact } else { Validity::RoseModelOnly };
    let h1 = presentation(&s.incidence_matrix(), validity);

    Ok(TilingSpaceReport {
        primitive: true,
        rose_lim1: lim1.verdict,
        border,
        gluing_connected,
        l_verdict,
        notes,
        stable,
        shape_model,
        surface_embedding,
        h1,
        justification,
    })
}

pub fn analyze_endo(e: &FreeEndo) -> EndoReport {
    let lim1 = lim1_verdict(e);
    let tower = image_tower(e);
    let mut justification = lim1.justification;
    justification.push(cite(justify::STABLE_IFF_LIM1));
    let (stable, shape_model, surface_embedding) = match lim1.verdict {
        Lim1::Trivial => {
            justification.push(cite(justify::SHAPE_OF_STABLE_LIMIT));
            justification.push(cite(justify::VANISHING_NOT_SUFFICIENT));
            (
                Stability::Yes,
                Some(ShapeModel::of_rank(tower.plateau_rank())),
                SurfaceEmbedding::NoObstructionFound,
            )
        }
        Lim1::Nontrivial => {
            justification.push(cite(justify::NONTRIVIAL_L_OBSTRUCTS));
            (Stability::No, None, SurfaceEmbedding::Obstructed)
        }
    };
    let automorphism = is_automorphism(e);
    if automorphism {
        justification.insert(0, cite(justify::HOPFIAN_SURJECTIVE));
    }
    EndoReport {
        rank: e.rank(),
        is_automorphism: automorphism,
        abelianization: e.abelianization(),
        tower_ranks: tower.ranks.clone(),
        plateau_index: tower.plateau_index,
        ml: tower.ml,
        lim1: lim1.verdict,
        via_abelian_shortcut: lim1.via_abelian_shortcut,
        stable,
        shape_model,
        surface_embedding,
        induced_rules: tower.induced_endo.as_ref().map(FreeEndo::rules),
        justification,
    }
}

fn presentation(incidence: &IntMatrix, validity: Validity) -> H1Presentation {
    let matrix = incidence.transpose();
    let tower = abelian_tower(&matrix).expect("square");
    let k = tower.lattice_ranks[tower.plateau_index];
    let det = tower.restricted_determinant.clone();
    let limit_descriptor = if k == 0 {
        "0".to_owned()
    } else if det.abs().is_one() {
        format!("Z^{k}")
    } else if k == 1 {
        format!("Z[1/{}]", det.abs())
    } else {
        format!("lim(Z^{k}, det {det})")
    };
    H1Presentation {
        generators_rank: matrix.rows(),
        characteristic_polynomial: characteristic_polynomial(&matrix).expect("square"),
        matrix,
        eventual_rank: k,
        restricted_determinant: det,
        limit_descriptor,
        validity,
    }
}

pub fn h1_presentation(s: &Substitution, caps: Caps) -> Result<H1Presentation> {
    let border = s.forces_border_with(caps.proper, caps.border)?;
    let validity = if border.forced() { Validity::Exact } else { Validity::RoseModelOnly };
    Ok(presentation(&s.incidence_matrix(), validity))
}

/// H¹ of the inverse limit of the rose under `e`, through its abelianisation.
pub fn h1_presentation_for_endo(e: &FreeEndo) -> H1Presentation {
    presentation(&e.abelianization(), Validity::RoseModelOnly)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn torus_minus_points(d: usize, k: usize) -> Result<TorusCohomology> {
    if d < 2 {
        return Err(Error::OutOfHypothesis(format!(
            "d = {d}: the punctured-torus formula needs d >= 2; use the one-dimensional analysis instead"
        )));
    }
    if k < 1 {
        return Err(Error::OutOfHypothesis("at least one puncture is required".into()));
    }
    let ranks = (0..=d + 1)
        .map(|p| match p {
            p if p < d => binomial(d as u64 + 1, p as u64),
            p if p == d => (d + k) as u64,
            _ => 0,
        })
        .collect();
    Ok(TorusCohomology { d, k, ranks, justification: vec![cite(justify::TORUS_MINUS_POINTS)] })
}

pub fn attractor_h1_bound(d: usize) -> Result<AttractorBound> {
    if d < 2 {
        return Err(Error::OutOfHypothesis(format!("d = {d}: the H1 bound needs d >= 2")));
    }
    Ok(AttractorBound { d, cap: d + 1 })
}

pub fn projection_check(d: usize, n: usize) -> Result<ProjectionCheck> {
    let bound = attractor_h1_bound(d)?;
    if n < 1 {
        return Err(Error::OutOfHypothesis("internal dimension must be at least 1".into()));
    }
    let lower = n + d;
    Ok(ProjectionCheck {
        d,
        n,
        h1_lower_bound: lower,
        attractor_h1_cap: bound.cap,
        obstructed: !bound.admits(lower),
        justification: vec![
            cite(justify::PROJECTION_H1_BOUND),
            cite(justify::ATTRACTOR_H1_CAP),
            cite(justify::PROJECTION_OBSTRUCTION),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, images: &[&str]) -> Substitution {
        Substitution::from_compact(letters, images).unwrap()
    }

    fn endo(letters: &str, images: &[&str]) -> FreeEndo {
        FreeEndo::from_compact(letters, images).unwrap()
    }

    #[test]
    fn example_with_connected_gluing() {
        let r = analyze_substitution(&sub("123", &["1131", "1231", "232"]), Caps::default()).unwrap();
        assert_eq!(r.rose_lim1, Lim1::Nontrivial);
        assert!(r.gluing_connected);
        assert_eq!(r.l_verdict, LVerdict::Nontrivial);
        assert_eq!(r.stable, Stability::No);
        assert_eq!(r.surface_embedding, SurfaceEmbedding::Obstructed);
        assert_eq!(r.h1.validity, Validity::Exact);
    }

    #[test]
    fn same_cohomology_different_l() {
        let caps = Caps::default();
        let s = sub("ab", &["ababa", "baa"]);
        let fib3 = Substitution::from_endo(&endo("ab", &["ab", "a"]).iterate(3)).unwrap();
        let r = analyze_substitution(&s, caps).unwrap();
        let f = analyze_substitution(&fib3, caps).unwrap();
        assert_eq!(r.l_verdict, LVerdict::Nontrivial);
        assert_eq!(r.surface_embedding, SurfaceEmbedding::Obstructed);
        assert_ne!(r.l_verdict, f.l_verdict);
        assert!(r.h1.same_invariants(&f.h1));
        assert_eq!(r.h1.matrix, IntMatrix::from_rows(&[[3, 2], [2, 1]]));
    }

    #[test]
    fn fibonacci_is_inconclusive_without_border_forcing() {
        let r = analyze_substitution(&sub("ab", &["ab", "a"]), Caps::default()).unwrap();
        assert_eq!(r.rose_lim1, Lim1::Trivial);
        assert_eq!(r.l_verdict, LVerdict::Inconclusive);
        assert!(r.notes.iter().any(|n| n == "rose tower is ML"));
        assert_eq!(r.stable, Stability::Inconclusive);
        assert_eq!(r.shape_model, None);
        assert_eq!(r.surface_embedding, SurfaceEmbedding::NoObstructionFound);
    }

    #[test]
    fn proper_trivial_substitution_is_stable() {
        let r = analyze_substitution(&sub("ab", &["aab", "ab"]), Caps::default()).unwrap();
        assert!(r.border.forced());
        assert_eq!(r.l_verdict, LVerdict::Trivial);
        assert_eq!(r.stable, Stability::Yes);
        assert_eq!(r.shape_model, Some(ShapeModel { wedge_rank: 2, torus_punctures: 1 }));
    }

    #[test]
    fn non_primitive_is_rejected() {
        assert!(matches!(
            analyze_substitution(&sub("ab", &["ab", "b"]), Caps::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn endo_examples() {
        let r = analyze_endo(&endo("abc", &["abc", "abc", "a"]));
        assert_eq!(r.stable, Stability::Yes);
        assert_eq!(r.shape_model, Some(ShapeModel { wedge_rank: 2, torus_punctures: 1 }));
        assert_eq!(analyze_endo(&endo("ab", &["ababa", "baaab"])).stable, Stability::No);
        let r = analyze_endo(&endo("a", &["aa"]));
        assert_eq!(r.stable, Stability::No);
        assert_eq!(r.surface_embedding, SurfaceEmbedding::Obstructed);
        let r = analyze_endo(&endo("ab", &["ab", "a"]));
        assert!(r.is_automorphism);
        assert_eq!(r.shape_model, Some(ShapeModel { wedge_rank: 2, torus_punctures: 1 }));
    }

    #[test]
    fn h1_examples() {
        let h = h1_presentation(&sub("ab", &["ab", "a"]), Caps::default()).unwrap();
        assert_eq!(h.eventual_rank, 2);
        assert_eq!(h.restricted_determinant, BigInt::from(-1));
        assert_eq!(h.limit_descriptor, "Z^2");
        assert_eq!(h.validity, Validity::RoseModelOnly);

        let h = h1_presentation_for_endo(&endo("a", &["aa"]));
        assert_eq!(h.eventual_rank, 1);
        assert_eq!(h.restricted_determinant, BigInt::from(2));
        assert_eq!(h.limit_descriptor, "Z[1/2]");
        assert_eq!(h.characteristic_polynomial, vec![BigInt::from(1), BigInt::from(-2)]);

        let h = h1_presentation_for_endo(&endo("ab", &["ababa", "baaab"]));
        assert_eq!(h.eventual_rank, 1);
        assert_eq!(h.limit_descriptor, "Z[1/5]");
    }

    #[test]
    fn torus_examples() {
        assert_eq!(torus_minus_points(2, 1).unwrap().ranks, vec![1, 3, 3, 0]);
        assert_eq!(torus_minus_points(3, 2).unwrap().ranks, vec![1, 4, 6, 5, 0]);
        for d in 2..=6 {
            for k in 1..=5 {
                let t = torus_minus_points(d, k).unwrap();
                let sign = if d % 2 == 0 { 1 } else { -1 };
                assert_eq!(t.euler_characteristic(), sign * k as i128);
            }
        }
        assert!(matches!(torus_minus_points(1, 1), Err(Error::OutOfHypothesis(_))));
        assert!(matches!(torus_minus_points(2, 0), Err(Error::OutOfHypothesis(_))));
    }

    #[test]
    fn projection_examples() {
        assert!(projection_check(2, 2).unwrap().obstructed);
        assert!(!projection_check(3, 1).unwrap().obstructed);
        assert!(!projection_check(2, 1).unwrap().obstructed);
        assert!(matches!(projection_check(1, 2), Err(Error::OutOfHypothesis(_))));
        let b = attractor_h1_bound(2).unwrap();
        assert_eq!(b.cap, 3);
        assert!(!b.admits(4));
        assert!(b.admits(3));
    }
}
