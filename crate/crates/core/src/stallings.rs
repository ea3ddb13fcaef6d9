//! Stallings core graphs of finitely generated subgroups of a free group.
//!
//! A subgroup `H = ⟨w_1, …, w_k⟩` is represented by the folded, trimmed graph
//! obtained from a bouquet of loops spelling the generators. Folding makes
//! the graph deterministic in both directions, so membership is a path walk
//! and, after a canonical BFS relabelling, two subgroups are equal exactly
//! when their graphs compare equal.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::freegroup::{Alphabet, Syllable, Word};

/// A directed edge `source --letter--> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub letter: usize,
}

/// A folded, trimmed, based subgroup graph in canonical vertex numbering.
///
/// The basepoint is always vertex `0` and is never trimmed, even at degree
/// one. Every other vertex has degree at least two.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoreGraph {
    letters: usize,
    vertices: usize,
    edges: Vec<Edge>,
    out: Vec<Option<usize>>,
    inc: Vec<Option<usize>>,
}

impl CoreGraph {
    /// The graph of the full free group: one vertex, one loop per letter.
    pub fn rose(letters: usize) -> Self {
        let edges = (0..letters).map(|l| Edge { source: 0, target: 0, letter: l }).collect();
        Self::from_canonical_parts(letters, 1, edges)
    }

    /// Folded core graph of the subgroup generated by `gens`. Identity words
    /// are ignored.
    ///
    /// Panics if a generator uses a letter outside `alphabet`.
    pub fn from_generators(alphabet: &Alphabet, gens: &[Word]) -> Self {
        Self::from_generators_by(alphabet, gens, &mut |_| {})
    }

    /// As [`CoreGraph::from_generators`], with a hook that may permute the
    /// working edge list before every folding pass. The result does not
    /// depend on the hook; tests use it to exercise different fold orders.
    pub fn from_generators_by(
        alphabet: &Alphabet,
        gens: &[Word],
        reorder: &mut dyn FnMut(&mut [Edge]),
    ) -> Self {
        let letters = alphabet.len();
        let mut builder = Bouquet::new(letters);
        for g in gens {
            builder.add_loop(g, None);
        }
        let (vertices, edges) = fold(builder.vertices, builder.edges, reorder);
        let (vertices, edges) = trim(vertices, edges.into_iter().map(|e| (e, ())).collect());
        let (vertices, edges) = canonical_relabel(letters, vertices, edges);
        Self::from_canonical_parts(letters, vertices, edges.into_iter().map(|(e, _)| e).collect())
    }

    fn from_canonical_parts(letters: usize, vertices: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort();
        let mut out = vec![None; vertices * letters];
        let mut inc = vec![None; vertices * letters];
        for (i, e) in edges.iter().enumerate() {
            debug_assert!(out[e.source * letters + e.letter].is_none(), "unfolded graph");
            debug_assert!(inc[e.target * letters + e.letter].is_none(), "unfolded graph");
            out[e.source * letters + e.letter] = Some(i);
            inc[e.target * letters + e.letter] = Some(i);
        }
        Self { letters, vertices, edges, out, inc }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// First Betti number `E - V + 1`, the rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    fn step(&self, vertex: usize, s: Syllable) -> Option<(usize, usize)> {
        let slot = vertex * self.letters + s.letter;
        if s.inverse {
            self.inc[slot].map(|i| (i, self.edges[i].source))
        } else {
            self.out[slot].map(|i| (i, self.edges[i].target))
        }
    }

    /// Whether `w` reads a closed path at the basepoint.
    pub fn contains(&self, w: &Word) -> bool {
        let mut v = 0;
        for &s in w.syllables() {
            if s.letter >= self.letters {
                return false;
            }
            match self.step(v, s) {
                Some((_, next)) => v = next,
                None => return false,
            }
        }
        v == 0
    }

    /// Whether the subgroup is the whole free group on `alphabet`.
    pub fn is_full(&self, alphabet: &Alphabet) -> bool {
        self.letters == alphabet.len() && (0..alphabet.len()).all(|l| self.contains(&Word::letter(l)))
    }
}

/// Subgroup equality through the canonical form.
pub fn graphs_equal(a: &CoreGraph, b: &CoreGraph) -> bool {
    a == b
}

/// A free basis of a subgroup together with the data needed to rewrite
/// subgroup elements in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupBasis {
    graph: CoreGraph,
    tree_edges: Vec<usize>,
    basis_words: Vec<Word>,
    /// Per edge of `graph`, the element of the free group on the basis that
    /// crossing the edge contributes.
    edge_labels: Vec<Word>,
}

impl SubgroupBasis {
    pub fn graph(&self) -> &CoreGraph {
        &self.graph
    }

    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn basis_words(&self) -> &[Word] {
        &self.basis_words
    }

    pub fn rank(&self) -> usize {
        self.basis_words.len()
    }

    /// Fresh names `x1, x2, …` for the basis letters; `None` for the
    /// trivial subgroup.
    pub fn basis_alphabet(&self) -> Option<Alphabet> {
        if self.basis_words.is_empty() {
            return None;
        }
        Some(Alphabet::new((1..=self.rank()).map(|i| format!("x{i}"))).expect("distinct names"))
    }

    /// Uses `words` as the basis of the subgroup they generate.
    ///
    /// Fails unless the words freely generate that subgroup, i.e. unless
    /// their number equals its rank. Folding carries, along every edge, the
    /// element of the free group on `words` it represents, which is what
    /// makes [`rewrite_in_basis`] possible for a basis that does not come
    /// from a spanning tree.
    pub fn from_words(alphabet: &Alphabet, words: Vec<Word>) -> Result<Self> {
        if let Some(i) = words.iter().position(|w| w.is_identity()) {
            return Err(Error::Domain(format!("basis word {} is the identity", i + 1)));
        }
        let letters = alphabet.len();
        let mut builder = Bouquet::new(letters);
        for (i, w) in words.iter().enumerate() {
            builder.add_loop(w, Some(i));
        }
        let labelled: Vec<(Edge, Word)> = builder.edges.into_iter().zip(builder.labels).collect();
        let (vertices, labelled) = fold_labelled(builder.vertices, labelled)?;
        let (vertices, labelled) = trim(vertices, labelled);
        let (vertices, labelled) = canonical_relabel(letters, vertices, labelled);
        let mut labelled = labelled;
        labelled.sort_by_key(|l| l.0);
        let graph = CoreGraph::from_canonical_parts(
            letters,
            vertices,
            labelled.iter().map(|(e, _)| *e).collect(),
        );
        if graph.rank() != words.len() {
            return Err(Error::Domain(format!(
                "{} words generate a subgroup of rank {}, so they are not a free basis",
                words.len(),
                graph.rank()
            )));
        }
        let tree_edges = bfs_tree(&graph).tree_edges;
        Ok(Self {
            graph,
            tree_edges,
            basis_words: words,
            edge_labels: labelled.into_iter().map(|(_, l)| l).collect(),
        })
    }
}

struct BfsTree {
    tree_edges: Vec<usize>,
    non_tree: Vec<usize>,
    paths: Vec<Word>,
}

/// BFS from the basepoint, scanning each vertex's edges in (letter, sign)
/// order with outgoing (positive) before incoming (negative).
fn bfs_tree(g: &CoreGraph) -> BfsTree {
    let mut paths: Vec<Option<Word>> = vec![None; g.vertices];
    let mut is_tree = vec![false; g.edges.len()];
    let mut seen = vec![false; g.edges.len()];
    let mut tree_edges = Vec::new();
    let mut non_tree = Vec::new();
    paths[0] = Some(Word::identity());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let here = paths[v].clone().expect("queued vertices have paths");
        for letter in 0..g.letters {
            for s in [Syllable::pos(letter), Syllable::neg(letter)] {
                let Some((edge, next)) = g.step(v, s) else {
                    continue;
                };
                if paths[next].is_none() {
                    paths[next] = Some(here.mul(&Word::reduce_unchecked([s])));
                    is_tree[edge] = true;
                    seen[edge] = true;
                    tree_edges.push(edge);
                    queue.push_back(next);
                } else if !is_tree[edge] && !seen[edge] {
                    seen[edge] = true;
                    non_tree.push(edge);
                }
            }
        }
    }
    BfsTree {
        tree_edges,
        non_tree,
        paths: paths.into_iter().map(|p| p.expect("core graphs are connected")).collect(),
    }
}

/// The spanning-tree basis: one basis word per non-tree edge, numbered in
/// the order BFS first meets those edges.
pub fn spanning_basis(g: &CoreGraph) -> SubgroupBasis {
    let tree = bfs_tree(g);
    let mut edge_labels = vec![Word::identity(); g.edges.len()];
    let mut basis_words = Vec::with_capacity(tree.non_tree.len());
    for (i, &edge) in tree.non_tree.iter().enumerate() {
        let e = g.edges[edge];
        let word = tree.paths[e.source]
            .mul(&Word::letter(e.letter))
            .mul(&tree.paths[e.target].inverse());
        basis_words.push(word);
        edge_labels[edge] = Word::letter(i);
    }
    SubgroupBasis { graph: g.clone(), tree_edges: tree.tree_edges, basis_words, edge_labels }
}

/// Expresses a subgroup element in the basis. The result is a word over the
/// basis letters whose expansion reduces back to `w`.
pub fn rewrite_in_basis(b: &SubgroupBasis, w: &Word) -> Result<Word> {
    let g = &b.graph;
    let mut v = 0;
    let mut out = Word::identity();
    for (pos, &s) in w.syllables().iter().enumerate() {
        let step = if s.letter < g.letters { g.step(v, s) } else { None };
        let Some((edge, next)) = step else {
            return Err(Error::Membership(format!("path leaves the subgroup graph at syllable {pos}")));
        };
        let label = &b.edge_labels[edge];
        out = if s.inverse { out.mul(&label.inverse()) } else { out.mul(label) };
        v = next;
    }
    if v != 0 {
        return Err(Error::Membership("path does not return to the basepoint".into()));
    }
    Ok(out)
}

/// Substitutes basis words for basis letters and reduces.
pub fn expand_in_basis(b: &SubgroupBasis, w: &Word) -> Word {
    let mut out = Word::identity();
    for s in w.syllables() {
        let word = &b.basis_words[s.letter];
        out = if s.inverse { out.mul(&word.inverse()) } else { out.mul(word) };
    }
    out
}

/// Loops at vertex 0 spelling each generator.
struct Bouquet {
    letters: usize,
    vertices: usize,
    edges: Vec<Edge>,
    labels: Vec<Word>,
}

impl Bouquet {
    fn new(letters: usize) -> Self {
        Self { letters, vertices: 1, edges: Vec::new(), labels: Vec::new() }
    }

    /// Adds a loop spelling `w`. With a label index, the last edge of the
    /// loop carries that basis letter and all others carry the identity.
    fn add_loop(&mut self, w: &Word, label: Option<usize>) {
        let syllables = w.syllables();
        let n = syllables.len();
        if n == 0 {
            return;
        }
        let mut prev = 0;
        for (i, s) in syllables.iter().enumerate() {
            assert!(s.letter < self.letters, "generator uses a letter outside the alphabet");
            let next = if i + 1 == n {
                0
            } else {
                self.vertices += 1;
                self.vertices - 1
            };
            let edge = if s.inverse {
                Edge { source: next, target: prev, letter: s.letter }
            } else {
                Edge { source: prev, target: next, letter: s.letter }
            };
            self.edges.push(edge);
            let lab = match label {
                Some(l) if i + 1 == n => {
                    let x = Word::letter(l);
                    if s.inverse {
                        x.inverse()
                    } else {
                        x
                    }
                }
                _ => Word::identity(),
            };
            self.labels.push(lab);
            prev = next;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `a` and `b`, keeping the smaller root so the
    /// basepoint (vertex 0) always represents its class.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        true
    }
}

/// Folds until no vertex has two outgoing or two incoming edges with the
/// same letter. Each pass identifies every conflict it sees; passes repeat
/// until one finds nothing to merge.
fn fold(
    vertices: usize,
    mut edges: Vec<Edge>,
    reorder: &mut dyn FnMut(&mut [Edge]),
) -> (usize, Vec<Edge>) {
    let mut uf = UnionFind::new(vertices);
    loop {
        for e in edges.iter_mut() {
            e.source = uf.find(e.source);
            e.target = uf.find(e.target);
        }
        edges.sort();
        edges.dedup();
        reorder(&mut edges);

        let mut outgoing: HashMap<(usize, usize), usize> = HashMap::new();
        let mut incoming: HashMap<(usize, usize), usize> = HashMap::new();
        let mut merged = false;
        for e in &edges {
            let (s, t) = (uf.find(e.source), uf.find(e.target));
            match outgoing.get(&(s, e.letter)) {
                Some(&t2) => merged |= uf.union(t, t2),
                None => {
                    outgoing.insert((s, e.letter), t);
                }
            }
            let t = uf.find(t);
            let s = uf.find(s);
            match incoming.get(&(t, e.letter)) {
                Some(&s2) => merged |= uf.union(s, s2),
                None => {
                    incoming.insert((t, e.letter), s);
                }
            }
        }
        if !merged {
            break;
        }
    }
    (vertices, edges)
}

/// Folding that tracks edge labels in the free group on a proposed basis.
///
/// Merging vertex `v` into another re-gauges `v` by some `c`: edges leaving
/// `v` get `c·λ`, edges entering get `λ·c⁻¹`. This leaves the product along
/// every closed path at the basepoint unchanged, and `c` is chosen so the
/// two folded edges end up with equal labels. Two parallel edges with
/// different labels expose a relation among the proposed basis words.
fn fold_labelled(vertices: usize, mut edges: Vec<(Edge, Word)>) -> Result<(usize, Vec<(Edge, Word)>)> {
    loop {
        let Some((i, j, outgoing)) = find_conflict(&edges) else {
            return Ok((vertices, edges));
        };
        let (mut e1, mut l1) = edges[i].clone();
        let (mut e2, mut l2) = edges[j].clone();
        // The far endpoints that the fold identifies.
        let far = |e: &Edge| if outgoing { e.target } else { e.source };
        if far(&e1) == far(&e2) {
            if l1 == l2 {
                edges.remove(j);
                continue;
            }
            return Err(Error::Domain("proposed basis words satisfy a relation".into()));
        }
        if far(&e2) == 0 {
            std::mem::swap(&mut e1, &mut e2);
            std::mem::swap(&mut l1, &mut l2);
        }
        let (keep, gone) = (far(&e1), far(&e2));
        let c = if outgoing { l1.inverse().mul(&l2) } else { l1.mul(&l2.inverse()) };
        for (e, label) in edges.iter_mut() {
            if e.source == gone {
                *label = c.mul(label);
            }
            if e.target == gone {
                *label = label.mul(&c.inverse());
            }
        }
        for (e, _) in edges.iter_mut() {
            if e.source == gone {
                e.source = keep;
            }
            if e.target == gone {
                e.target = keep;
            }
        }
        edges.sort();
        edges.dedup();
    }
}

/// Returns two edges sharing an endpoint and a letter on the same side, and
/// whether the shared endpoint is their source.
fn find_conflict(edges: &[(Edge, Word)]) -> Option<(usize, usize, bool)> {
    let mut outgoing: HashMap<(usize, usize), usize> = HashMap::new();
    let mut incoming: HashMap<(usize, usize), usize> = HashMap::new();
    for (idx, (e, _)) in edges.iter().enumerate() {
        if let Some(&other) = outgoing.get(&(e.source, e.letter)) {
            return Some((other, idx, true));
        }
        outgoing.insert((e.source, e.letter), idx);
        if let Some(&other) = incoming.get(&(e.target, e.letter)) {
            return Some((other, idx, false));
        }
        incoming.insert((e.target, e.letter), idx);
    }
    None
}

/// Repeatedly removes non-basepoint vertices of degree at most one.
fn trim<L>(vertices: usize, mut edges: Vec<(Edge, L)>) -> (usize, Vec<(Edge, L)>) {
    loop {
        let mut degree = vec![0usize; vertices];
        for (e, _) in &edges {
            degree[e.source] += 1;
            degree[e.target] += 1;
        }
        let before = edges.len();
        edges.retain(|(e, _)| {
            let dangling = |v: usize| v != 0 && degree[v] <= 1;
            !dangling(e.source) && !dangling(e.target)
        });
        if edges.len() == before {
            return (vertices, edges);
        }
    }
}

/// Renumbers vertices in BFS discovery order from the basepoint, scanning
/// letters in order with outgoing edges before incoming ones. Vertices not
/// touched by any edge (other than the basepoint) disappear.
fn canonical_relabel<L>(
    letters: usize,
    vertices: usize,
    edges: Vec<(Edge, L)>,
) -> (usize, Vec<(Edge, L)>) {
    let mut out: Vec<Option<usize>> = vec![None; vertices * letters];
    let mut inc: Vec<Option<usize>> = vec![None; vertices * letters];
    for (i, (e, _)) in edges.iter().enumerate() {
        out[e.source * letters + e.letter] = Some(i);
        inc[e.target * letters + e.letter] = Some(i);
    }
    let mut new_id: Vec<Option<usize>> = vec![None; vertices];
    new_id[0] = Some(0);
    let mut count = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for letter in 0..letters {
            let neighbours = [
                out[v * letters + letter].map(|i| edges[i].0.target),
                inc[v * letters + letter].map(|i| edges[i].0.source),
            ];
            for w in neighbours.into_iter().flatten() {
                if new_id[w].is_none() {
                    new_id[w] = Some(count);
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let edges = edges
        .into_iter()
        .map(|(e, l)| {
            let e = Edge {
                source: new_id[e.source].expect("connected"),
                target: new_id[e.target].expect("connected"),
                letter: e.letter,
            };
            (e, l)
        })
        .collect();
    (count, edges)
}
