//! Primitive substitutions on a finite alphabet.
//!
//! Only the combinatorial data matters here: incidence counts, the legal
//! language, whether supertiles determine their neighbours, and which
//! two-letter transitions occur.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freegroup::{Alphabet, FreeEndo, Syllable, Word};
use crate::intlat::{is_primitive_matrix, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    rules: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "level")]
pub enum BorderStatus {
    Forces(usize),
    UnknownUpTo(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "level")]
pub enum BorderRoute {
    ProperPower(usize),
    NeighborDetermination(usize),
    None,
}

/// Neighbouring tiles `(left, right)` seen around one letter's supertile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSet {
    pub letter: String,
    pub neighbors: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BorderReport {
    pub status: BorderStatus,
    pub route: BorderRoute,
    /// Level the extension sets were computed at.
    pub level: usize,
    pub extension_sets: Vec<ExtensionSet>,
}

impl BorderReport {
    pub fn forced(&self) -> bool {
        matches!(self.status, BorderStatus::Forces(_))
    }
}

/// Bipartite endpoint graph: `out(a)` joined to `in(b)` for each legal `ab`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingGraph {
    pub out_nodes: Vec<String>,
    pub in_nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub connected: bool,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, rules: Vec<Vec<usize>>) -> Result<Self> {
        if alphabet.len() < 2 {
            return Err(Error::Domain("a substitution needs at least two letters".into()));
        }
        if rules.len() != alphabet.len() {
            return Err(Error::Dimension(format!(
                "{} rules for {} letters",
                rules.len(),
                alphabet.len()
            )));
        }
        for (i, rule) in rules.iter().enumerate() {
            if rule.is_empty() {
                return Err(Error::Domain(format!("empty image for {}", alphabet.name(i))));
            }
            if let Some(&bad) = rule.iter().find(|&&l| l >= alphabet.len()) {
                return Err(Error::Domain(format!("letter index {bad} out of range")));
            }
        }
        Ok(Self { alphabet, rules })
    }

    /// From positive words; rejects inverses and empty images.
    pub fn from_words(alphabet: Alphabet, images: &[Word]) -> Result<Self> {
        let rules = images
            .iter()
            .enumerate()
            .map(|(i, w)| {
                if !w.is_positive() {
                    return Err(Error::Domain(format!(
                        "image of {} contains an inverse letter",
                        alphabet.name(i)
                    )));
                }
                Ok(w.syllables().iter().map(|s| s.letter).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, rules)
    }

    pub fn from_endo(e: &FreeEndo) -> Result<Self> {
        Self::from_words(e.alphabet().clone(), e.images())
    }

    /// `Substitution::from_compact("ab", &["ab", "a"])`.
    pub fn from_compact(letters: &str, images: &[&str]) -> Result<Self> {
        Self::from_endo(&FreeEndo::from_compact(letters, images)?)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Vec<usize>] {
        &self.rules
    }

    pub fn rank(&self) -> usize {
        self.alphabet.len()
    }

    pub fn apply(&self, w: &[usize]) -> Vec<usize> {
        w.iter().flat_map(|&l| self.rules[l].iter().copied()).collect()
    }

    pub fn incidence_matrix(&self) -> IntMatrix {
        let r = self.rank();
        let rows: Vec<Vec<i64>> = self
            .rules
            .iter()
            .map(|rule| {
                let mut row = vec![0i64; r];
                for &l in rule {
                    row[l] += 1;
                }
                row
            })
            .collect();
        IntMatrix::from_rows(&rows)
    }

    pub fn is_primitive(&self) -> bool {
        is_primitive_matrix(&self.incidence_matrix()).expect("incidence is square and non-negative")
    }

    fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::Precondition("substitution is not primitive".into()))
        }
    }

    /// All length-`k` factors of the words `σ^n(a)`.
    pub fn legal_words(&self, k: usize) -> Result<BTreeSet<Vec<usize>>> {
        self.require_primitive()?;
        if k == 0 {
            return Ok(BTreeSet::from([Vec::new()]));
        }
        let mut legal = BTreeSet::new();
        for a in 0..self.rank() {
            let mut w = vec![a];
            while w.len() < k {
                w = self.apply(&w);
            }
            legal.extend(w.windows(k).map(<[usize]>::to_vec));
        }
        let mut frontier: Vec<Vec<usize>> = legal.iter().cloned().collect();
        while let Some(u) = frontier.pop() {
            for f in self.apply(&u).windows(k) {
                if !legal.contains(f) {
                    legal.insert(f.to_vec());
                    frontier.push(f.to_vec());
                }
            }
        }
        Ok(legal)
    }

    fn first_map(&self) -> Vec<usize> {
        self.rules.iter().map(|r| r[0]).collect()
    }

    fn last_map(&self) -> Vec<usize> {
        self.rules.iter().map(|r| r[r.len() - 1]).collect()
    }

    /// Smallest `n ≤ cap` such that all `σ^n` images share their first letter
    /// and share their last letter.
    pub fn is_proper_power(&self, cap: usize) -> Option<usize> {
        let (f, l) = (self.first_map(), self.last_map());
        let mut first: Vec<usize> = (0..self.rank()).collect();
        let mut last = first.clone();
        for n in 1..=cap {
            first = first.iter().map(|&a| f[a]).collect();
            last = last.iter().map(|&a| l[a]).collect();
            if all_equal(&first) && all_equal(&last) {
                return Some(n);
            }
        }
        None
    }

    /// Border-forcing semi-decision with a single cap for both routes.
    pub fn forces_border(&self, cap: usize) -> Result<BorderReport> {
        self.forces_border_with(cap, cap)
    }

    /// Tries the proper-power route up to `proper_cap`, then neighbour
    /// determination up to `neighbor_cap`.
    pub fn forces_border_with(&self, proper_cap: usize, neighbor_cap: usize) -> Result<BorderReport> {
        self.require_primitive()?;
        let triples = self.legal_words(3)?;
        if let Some(n) = self.is_proper_power(proper_cap) {
            return Ok(BorderReport {
                status: BorderStatus::Forces(n),
                route: BorderRoute::ProperPower(n),
                level: n,
                extension_sets: self.named_extensions(&self.extension_sets(&triples, n)),
            });
        }
        let mut sets = self.extension_sets(&triples, 0);
        for n in 1..=neighbor_cap {
            sets = self.extension_sets(&triples, n);
            if sets.values().all(|s| s.len() == 1) {
                return Ok(BorderReport {
                    status: BorderStatus::Forces(n),
                    route: BorderRoute::NeighborDetermination(n),
                    level: n,
                    extension_sets: self.named_extensions(&sets),
                });
            }
        }
        Ok(BorderReport {
            status: BorderStatus::UnknownUpTo(neighbor_cap.max(proper_cap)),
            route: BorderRoute::None,
            level: neighbor_cap,
            extension_sets: self.named_extensions(&sets),
        })
    }

    /// `D_n(a) = {(last of σ^n(l), first of σ^n(r)) : l a r legal}`.
    pub fn extension_sets(
        &self,
        triples: &BTreeSet<Vec<usize>>,
        n: usize,
    ) -> BTreeMap<usize, BTreeSet<(usize, usize)>> {
        let first = iterate_map(&self.first_map(), n);
        let last = iterate_map(&self.last_map(), n);
        let mut sets: BTreeMap<usize, BTreeSet<(usize, usize)>> =
            (0..self.rank()).map(|a| (a, BTreeSet::new())).collect();
        for t in triples {
            sets.get_mut(&t[1]).expect("letter in range").insert((last[t[0]], first[t[2]]));
        }
        sets
    }

    fn named_extensions(&self, sets: &BTreeMap<usize, BTreeSet<(usize, usize)>>) -> Vec<ExtensionSet> {
        let name = |i: usize| self.alphabet.name(i).to_owned();
        sets.iter()
            .map(|(&a, pairs)| ExtensionSet {
                letter: name(a),
                neighbors: pairs.iter().map(|&(l, r)| (name(l), name(r))).collect(),
            })
            .collect()
    }

    pub fn gluing_graph(&self) -> Result<GluingGraph> {
        let pairs = self.legal_words(2)?;
        let r = self.rank();
        let mut parent: Vec<usize> = (0..2 * r).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for w in &pairs {
            let (x, y) = (find(&mut parent, w[0]), find(&mut parent, r + w[1]));
            parent[x.max(y)] = x.min(y);
        }
        let root = find(&mut parent, 0);
        let connected = (0..2 * r).all(|v| find(&mut parent, v) == root);
        let names = self.alphabet.letters().to_vec();
        Ok(GluingGraph {
            out_nodes: names.clone(),
            in_nodes: names,
            edges: pairs
                .iter()
                .map(|w| (self.alphabet.name(w[0]).to_owned(), self.alphabet.name(w[1]).to_owned()))
                .collect(),
            connected,
        })
    }

    /// The same rules read as an endomorphism of the free group.
    pub fn rose_endo(&self) -> FreeEndo {
        let images = self
            .rules
            .iter()
            .map(|r| Word::reduce_unchecked(r.iter().map(|&l| Syllable::pos(l))))
            .collect();
        FreeEndo::new(self.alphabet.clone(), images).expect("rules match the alphabet")
    }
}

fn all_equal(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

fn iterate_map(f: &[usize], n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..f.len()).collect();
    for _ in 0..n {
        out = out.iter().map(|&a| f[a]).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(letters: &str, images: &[&str]) -> Substitution {
        Substitution::from_compact(letters, images).unwrap()
    }

    fn words(s: &Substitution, k: usize) -> BTreeSet<String> {
        s.legal_words(k)
            .unwrap()
            .into_iter()
            .map(|w| w.iter().map(|&l| s.alphabet().name(l)).collect())
            .collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(Substitution::from_compact("a", &["aa"]).is_err());
        assert!(Substitution::from_compact("ab", &["aB", "a"]).is_err());
        assert!(Substitution::from_compact("ab", &["", "a"]).is_err());
        assert!(Substitution::from_compact("ab", &["bB", "a"]).is_err());
    }

    #[test]
    fn incidence_examples() {
        assert_eq!(sub("ab", &["ab", "a"]).incidence_matrix(), IntMatrix::from_rows(&[[1, 1], [1, 0]]));
        assert_eq!(
            sub("ab", &["ababa", "baa"]).incidence_matrix(),
            IntMatrix::from_rows(&[[3, 2], [2, 1]])
        );
    }

    #[test]
    fn primitivity_examples() {
        assert!(sub("ab", &["ab", "a"]).is_primitive());
        assert!(!sub("ab", &["ab", "b"]).is_primitive());
        assert!(sub("123", &["1131", "1231", "232"]).is_primitive());
        assert!(matches!(sub("ab", &["ab", "b"]).legal_words(2), Err(Error::Precondition(_))));
    }

    #[test]
    fn legal_word_examples() {
        let fib = sub("ab", &["ab", "a"]);
        assert_eq!(words(&fib, 2), set(&["aa", "ab", "ba"]));
        assert_eq!(words(&fib, 1), set(&["a", "b"]));
        assert_eq!(words(&fib, 3), set(&["aab", "aba", "baa", "bab"]));
        assert_eq!(words(&sub("ab", &["ab", "aa"]), 2), set(&["aa", "ab", "ba"]));
        assert_eq!(words(&sub("123", &["1131", "1231", "232"]), 1), set(&["1", "2", "3"]));
    }

    #[test]
    fn proper_power_examples() {
        assert_eq!(sub("ab", &["aba", "abba"]).is_proper_power(4), Some(1));
        assert_eq!(sub("ab", &["ab", "a"]).is_proper_power(6), None);
        assert_eq!(sub("123", &["1131", "1231", "232"]).is_proper_power(8), Some(2));
        // last letters c→a→c→b cycle and never agree with those of b
        assert_eq!(sub("abc", &["abc", "abc", "a"]).is_proper_power(8), None);
    }

    #[test]
    fn border_examples() {
        let r = sub("ab", &["aba", "abba"]).forces_border(8).unwrap();
        assert_eq!(r.status, BorderStatus::Forces(1));
        assert_eq!(r.route, BorderRoute::ProperPower(1));
        assert!(r.extension_sets.iter().all(|e| e.neighbors.len() == 1));

        for cap in 1..=6 {
            let r = sub("ab", &["ab", "a"]).forces_border(cap).unwrap();
            assert_eq!(r.status, BorderStatus::UnknownUpTo(cap));
            assert_eq!(r.route, BorderRoute::None);
            assert!(r.extension_sets.iter().any(|e| e.neighbors.len() == 2));
        }

        let r = sub("abc", &["abca", "acba", "aba"]).forces_border(8).unwrap();
        assert_eq!(r.status, BorderStatus::Forces(1));
    }

    #[test]
    fn neighbour_sets_of_fibonacci() {
        let fib = sub("ab", &["ab", "a"]);
        let triples = fib.legal_words(3).unwrap();
        let d1 = fib.extension_sets(&triples, 1);
        assert_eq!(d1[&0], BTreeSet::from([(1, 0), (0, 0)]));
        assert_eq!(d1[&1], BTreeSet::from([(1, 0)]));
    }

    #[test]
    fn gluing_examples() {
        assert!(sub("123", &["1131", "1231", "232"]).gluing_graph().unwrap().connected);
        let g = sub("ab", &["ababa", "baa"]).gluing_graph().unwrap();
        assert_eq!(g.edges.len(), 3);
        assert!(g.connected);
        let g = sub("ab", &["abba", "baab"]).gluing_graph().unwrap();
        assert_eq!(g.edges.len(), 4);
        assert!(g.connected);
    }

    #[test]
    fn disconnected_gluing_graph() {
        // only ab and ba occur: out(a)-in(b) and out(b)-in(a) are separate
        let g = sub("ab", &["aba", "bab"]).gluing_graph().unwrap();
        assert_eq!(g.edges, vec![("a".into(), "b".into()), ("b".into(), "a".into())]);
        assert!(!g.connected);
    }

    #[test]
    fn rose_endo_is_the_same_data() {
        assert_eq!(
            sub("ab", &["ab", "a"]).rose_endo(),
            FreeEndo::from_compact("ab", &["ab", "a"]).unwrap()
        );
    }
}
