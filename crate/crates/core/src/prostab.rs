//! Image towers of free-group endomorphisms and the `lim¹` decision.
//!
//! For `s: F^r → F^r` the tower `⋯ → F^r → F^r` is Mittag-Leffler exactly
//! when the images `G_n = Im s^n` are eventually constant, and for towers of
//! countable groups that is equivalent to `lim¹` being trivial. The ranks of
//! `G_n` can only drop `r` times; once two consecutive ranks agree the
//! restriction of `s` to `G_N` is injective (free groups are Hopfian), so a
//! single subgroup comparison `G_{N+1} = G_N` decides the question. `lim¹`
//! itself is never built: when non-trivial it is uncountable.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{FreeEndo, Word};
use crate::intlat::{lattice_image, restricted_determinant, IntMatrix, Lattice};
use crate::justify::{self, cite, Justification};
use crate::stallings::{rewrite_in_basis, spanning_basis, CoreGraph, SubgroupBasis};

/// Triviality of `lim¹` of a tower.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lim1 {
    Trivial,
    Nontrivial,
}

#[derive(Debug, Clone)]
pub struct TowerReport {
    /// Ranks of `G_0, …, G_{N+1}`.
    pub ranks: Vec<usize>,
    /// First `N` with `rank G_{N+1} = rank G_N`.
    pub plateau_index: usize,
    /// `G_0, …, G_{N+1}` in canonical form.
    pub graphs: Vec<CoreGraph>,
    pub stabilized_basis: SubgroupBasis,
    /// `s` restricted to `G_N`, in the spanning basis; `None` when `G_N` is
    /// trivial.
    pub induced_endo: Option<FreeEndo>,
    pub ml: bool,
    pub lim1_trivial: bool,
    pub justification: Vec<Justification>,
}

impl TowerReport {
    pub fn plateau_graph(&self) -> &CoreGraph {
        &self.graphs[self.plateau_index]
    }

    pub fn plateau_rank(&self) -> usize {
        self.ranks[self.plateau_index]
    }
}

/// `s(H)` for the subgroup `H` with graph `g`.
pub fn image_of_subgroup(e: &FreeEndo, g: &CoreGraph) -> CoreGraph {
    let basis = spanning_basis(g);
    let images: Vec<Word> = basis
        .basis_words()
        .iter()
        .map(|w| e.apply(w).expect("subgroup graph over the endomorphism's alphabet"))
        .collect();
    CoreGraph::from_generators(e.alphabet(), &images)
}

pub fn image_tower(e: &FreeEndo) -> TowerReport {
    let mut graphs = vec![CoreGraph::rose(e.rank())];
    loop {
        let next = image_of_subgroup(e, graphs.last().expect("non-empty"));
        let plateau = next.rank() == graphs.last().expect("non-empty").rank();
        graphs.push(next);
        if plateau {
            break;
        }
    }
    let plateau_index = graphs.len() - 2;
    let ranks: Vec<usize> = graphs.iter().map(CoreGraph::rank).collect();
    let ml = graphs[plateau_index] == graphs[plateau_index + 1];
    let stabilized_basis = spanning_basis(&graphs[plateau_index]);
    let induced_endo = if stabilized_basis.rank() == 0 {
        None
    } else {
        Some(induced_restriction(e, &stabilized_basis).expect("image subgroups are invariant"))
    };

    let mut justification = vec![Justification::with_detail(
        justify::HOPFIAN_PLATEAU,
        format!(
            "image ranks {ranks:?} first repeat at n = {plateau_index}; G_{} {} G_{plateau_index}",
            plateau_index + 1,
            if ml { "=" } else { "≠" }
        ),
    )];
    if plateau_index > 0 {
        justification.push(cite(justify::RESTRICTION_EQUIVALENT));
    }
    if ml {
        justification.push(cite(justify::ML_IMPLIES_TRIVIAL_LIM1));
    } else {
        justification.push(cite(justify::ISOMORPHISM_ON_FULL_RANK));
        justification.push(cite(justify::COUNTABLE_CONVERSE));
    }

    TowerReport {
        ranks,
        plateau_index,
        graphs,
        stabilized_basis,
        induced_endo,
        ml,
        lim1_trivial: ml,
        justification,
    }
}

/// The endomorphism `β_i ↦ rewrite(s(basis word i))` of the free group on
/// the basis letters.
pub fn induced_restriction(e: &FreeEndo, b: &SubgroupBasis) -> Result<FreeEndo> {
    let alphabet = b
        .basis_alphabet()
        .ok_or_else(|| Error::Precondition("restriction to the trivial subgroup".into()))?;
    let images = b
        .basis_words()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let image = e.apply(w)?;
            rewrite_in_basis(b, &image).map_err(|_| {
                Error::Consistency(format!("image of basis word {} escapes the subgroup", i + 1))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    FreeEndo::new(alphabet, images)
}

/// Whether `s` is onto, hence (Hopfian) an automorphism.
pub fn is_automorphism(e: &FreeEndo) -> bool {
    CoreGraph::from_generators(e.alphabet(), e.images()).is_full(e.alphabet())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianTowerReport {
    /// Ranks of `L_0 = Z^r, L_1, …, L_{N+1}`.
    pub lattice_ranks: Vec<usize>,
    pub plateau_index: usize,
    #[serde(skip)]
    pub plateau_lattice: Option<Lattice>,
    /// Determinant of the map on `L_N` in a basis of `L_N`.
    #[serde(with = "crate::bigint_serde")]
    pub restricted_determinant: BigInt,
    pub ml: bool,
}

/// Lattice chain `L_{n+1} = L_n · m` from `Z^r` up to the first rank repeat.
pub fn abelian_tower(m: &IntMatrix) -> Result<AbelianTowerReport> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("abelian tower of a {}x{} matrix", m.rows(), m.cols())));
    }
    let mut lattices = vec![Lattice::full(m.rows())];
    loop {
        let next = lattice_image(m, lattices.last().expect("non-empty"))?;
        let plateau = next.rank() == lattices.last().expect("non-empty").rank();
        lattices.push(next);
        if plateau {
            break;
        }
    }
    let plateau_index = lattices.len() - 2;
    let plateau = lattices[plateau_index].clone();
    let det = restricted_determinant(m, &plateau)?;
    let ml = plateau.rank() == 0 || det.abs().is_one();
    Ok(AbelianTowerReport {
        lattice_ranks: lattices.iter().map(Lattice::rank).collect(),
        plateau_index,
        plateau_lattice: Some(plateau),
        restricted_determinant: det,
        ml,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lim1Verdict {
    pub verdict: Lim1,
    /// True when the abelianised tower alone settled the question.
    pub via_abelian_shortcut: bool,
    pub justification: Vec<Justification>,
}

pub fn lim1_verdict(e: &FreeEndo) -> Lim1Verdict {
    let abelian = abelian_tower(&e.abelianization()).expect("abelianisation is square");
    if !abelian.ml {
        return Lim1Verdict {
            verdict: Lim1::Nontrivial,
            via_abelian_shortcut: true,
            justification: vec![
                Justification::with_detail(
                    justify::UNIMODULAR_PLATEAU,
                    format!(
                        "abelianised image ranks {:?}, determinant {} on the plateau lattice",
                        abelian.lattice_ranks, abelian.restricted_determinant
                    ),
                ),
                cite(justify::ABELIAN_NECESSARY),
                cite(justify::COUNTABLE_CONVERSE),
            ],
        };
    }
    let tower = image_tower(e);
    Lim1Verdict {
        verdict: if tower.ml { Lim1::Trivial } else { Lim1::Nontrivial },
        via_abelian_shortcut: false,
        justification: tower.justification,
    }
}

/// Restricted determinant sign helper used by reports: `0` for a zero map.
pub fn determinant_or_zero(report: &AbelianTowerReport) -> BigInt {
    if report.lattice_ranks[report.plateau_index] == 0 {
        BigInt::zero()
    } else {
        report.restricted_determinant.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::Alphabet;

    fn endo(letters: &str, images: &[&str]) -> FreeEndo {
        FreeEndo::from_compact(letters, images).unwrap()
    }

    #[test]
    fn fibonacci_tower() {
        let t = image_tower(&endo("ab", &["ab", "a"]));
        assert_eq!(t.ranks, vec![2, 2]);
        assert_eq!(t.plateau_index, 0);
        assert!(t.ml && t.lim1_trivial);
    }

    #[test]
    fn abc_tower_plateaus_at_rank_two() {
        let e = endo("abc", &["abc", "abc", "a"]);
        let t = image_tower(&e);
        assert_eq!(t.ranks, vec![3, 2, 2]);
        assert_eq!(t.plateau_index, 1);
        assert!(t.ml);
        let induced = t.induced_endo.as_ref().unwrap();
        assert!(is_automorphism(induced));
    }

    #[test]
    fn rank_one_abelianisation_tower_is_not_ml() {
        let t = image_tower(&endo("ab", &["ababa", "baaab"]));
        assert_eq!(t.ranks, vec![2, 2]);
        assert!(!t.ml && !t.lim1_trivial);
    }

    #[test]
    fn induced_restriction_examples() {
        let e = endo("abc", &["abc", "abc", "a"]);
        let a = e.alphabet().clone();
        let basis = SubgroupBasis::from_words(
            &a,
            vec![Word::parse_compact(&a, "a").unwrap(), Word::parse_compact(&a, "abc").unwrap()],
        )
        .unwrap();
        let r = induced_restriction(&e, &basis).unwrap();
        let expected = FreeEndo::new(
            r.alphabet().clone(),
            vec![Word::letter(1), Word::letter(1).mul(&Word::letter(1)).mul(&Word::letter(0))],
        )
        .unwrap();
        assert_eq!(r, expected);

        let fib = endo("ab", &["ab", "a"]);
        let rose = spanning_basis(&CoreGraph::rose(2));
        let r = induced_restriction(&fib, &rose).unwrap();
        assert_eq!(r.images(), fib.images());

        let doubling = endo("a", &["aa"]);
        let r = induced_restriction(&doubling, &spanning_basis(&CoreGraph::rose(1))).unwrap();
        assert_eq!(r.images(), &[Word::letter(0).mul(&Word::letter(0))]);
    }

    #[test]
    fn escaping_image_is_a_consistency_error() {
        let e = endo("ab", &["b", "a"]);
        let a = Alphabet::from_chars("ab").unwrap();
        let basis = SubgroupBasis::from_words(&a, vec![Word::letter(0)]).unwrap();
        assert!(matches!(induced_restriction(&e, &basis), Err(Error::Consistency(_))));
    }

    #[test]
    fn automorphism_examples() {
        assert!(is_automorphism(&endo("ab", &["ab", "a"])));
        assert!(!is_automorphism(&endo("ab", &["ababa", "baa"])));
        assert!(is_automorphism(&FreeEndo::identity(Alphabet::from_chars("abc").unwrap())));
    }

    #[test]
    fn abelian_tower_examples() {
        let r = abelian_tower(&IntMatrix::from_rows(&[[1, 1], [1, 0]])).unwrap();
        assert!(r.ml);
        assert_eq!(r.restricted_determinant, BigInt::from(-1));

        let r = abelian_tower(&IntMatrix::from_rows(&[[2]])).unwrap();
        assert!(!r.ml);
        assert_eq!(r.restricted_determinant, BigInt::from(2));

        let r = abelian_tower(&IntMatrix::from_rows(&[[3, 2], [3, 2]])).unwrap();
        assert_eq!(r.lattice_ranks, vec![2, 1, 1]);
        assert_eq!(r.plateau_index, 1);
        assert_eq!(r.restricted_determinant, BigInt::from(5));
        assert!(!r.ml);

        let r = abelian_tower(&IntMatrix::zeros(2, 2)).unwrap();
        assert_eq!(r.lattice_ranks, vec![2, 0, 0]);
        assert!(r.ml);
    }

    #[test]
    fn lim1_examples() {
        assert_eq!(lim1_verdict(&endo("ab", &["ab", "a"])).verdict, Lim1::Trivial);
        let v = lim1_verdict(&endo("123", &["1131", "1231", "232"]));
        assert_eq!(v.verdict, Lim1::Nontrivial);
        assert!(!v.via_abelian_shortcut);
        assert_eq!(lim1_verdict(&endo("ab", &["ababa", "baa"])).verdict, Lim1::Nontrivial);
        let v = lim1_verdict(&endo("ab", &["ababa", "baaab"]));
        assert_eq!(v.verdict, Lim1::Nontrivial);
        assert!(v.via_abelian_shortcut);
    }

    #[test]
    fn trivial_images_collapse_to_rank_zero() {
        let t = image_tower(&endo("ab", &["", "aA"]));
        assert_eq!(t.ranks, vec![2, 0, 0]);
        assert!(t.ml);
        assert!(t.induced_endo.is_none());
    }
}
