//! Base-pointed `Δ`-labelled graphs: bouquets of morphisms, product graphs,
//! cores, and the petal maps that drive the group reduction.
//!
//! Edges carry a positive label; reading `x⁻¹` means traversing an
//! `x`-edge backwards. A traversal step is an `(edge, forward)` pair.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::words::{Alphabet, Letter, Mode, Word};
use crate::{Error, Morphism, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An edge traversed forwards (`true`) or backwards.
pub type Step = (EdgeId, bool);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    /// Index into the label alphabet; the sign is always positive.
    pub label: u32,
}

/// The path spelling `f(a)` in a bouquet, read from the base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Petal {
    pub generator: u32,
    pub path: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    labels: Alphabet,
    vertex_count: usize,
    edges: Vec<Edge>,
    base: VertexId,
    petals: Option<Vec<Petal>>,
}

impl StallingsGraph {
    /// A graph with `vertex_count` vertices and the given edges.
    pub fn new(labels: Alphabet, vertex_count: usize, edges: Vec<Edge>, base: VertexId) -> Result<Self> {
        if labels.mode() != Mode::Group {
            return Err(Error::ModeMismatch { expected: "group", found: "monoid" });
        }
        if base >= vertex_count || edges.iter().any(|e| e.source >= vertex_count || e.target >= vertex_count) {
            return Err(Error::Invalid("edge endpoint or base outside the vertex range"));
        }
        if edges.iter().any(|e| e.label as usize >= labels.len()) {
            return Err(Error::Invalid("edge label outside the label alphabet"));
        }
        Ok(StallingsGraph { labels, vertex_count, edges, base, petals: None })
    }

    /// Bouquet `Γ_f`: one petal per generator spelling `f(a)` from the base.
    pub fn bouquet(f: &Morphism) -> Result<Self> {
        if f.mode() != Mode::Group {
            return Err(Error::ModeMismatch { expected: "group", found: "monoid" });
        }
        let base = 0;
        let mut vertex_count = 1;
        let mut edges = Vec::new();
        let mut petals = Vec::with_capacity(f.domain().len());
        for (a, image) in f.images().iter().enumerate() {
            if image.is_empty() {
                return Err(Error::EmptyImage(f.domain().symbol(a as u32).into()));
            }
            let mut path = Vec::with_capacity(image.len());
            let mut prev = base;
            for (i, l) in image.letters().iter().enumerate() {
                let next = if i + 1 == image.len() {
                    base
                } else {
                    vertex_count += 1;
                    vertex_count - 1
                };
                let (source, target) = if l.is_inverse() { (next, prev) } else { (prev, next) };
                path.push((edges.len(), !l.is_inverse()));
                edges.push(Edge { source, target, label: l.index() });
                prev = next;
            }
            petals.push(Petal { generator: a as u32, path });
        }
        Ok(StallingsGraph { labels: f.codomain().clone(), vertex_count, edges, base, petals: Some(petals) })
    }

    pub fn labels(&self) -> &Alphabet {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn petals(&self) -> Option<&[Petal]> {
        self.petals.as_deref()
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().map(|e| (e.source == v) as usize + (e.target == v) as usize).sum()
    }

    fn step_end(&self, (e, fwd): Step) -> VertexId {
        if fwd {
            self.edges[e].target
        } else {
            self.edges[e].source
        }
    }

    fn step_letter(&self, (e, fwd): Step) -> Letter {
        Letter::new(self.edges[e].label, !fwd)
    }

    /// Label of a path.
    pub fn path_label(&self, path: &[Step]) -> Word {
        path.iter().map(|&s| self.step_letter(s)).collect()
    }

    /// No vertex has two outgoing, or two incoming, edges with one label.
    pub fn is_folded_both_ways(&self) -> bool {
        let mut out: BTreeMap<(VertexId, u32), ()> = BTreeMap::new();
        let mut inc: BTreeMap<(VertexId, u32), ()> = BTreeMap::new();
        self.edges
            .iter()
            .all(|e| out.insert((e.source, e.label), ()).is_none() && inc.insert((e.target, e.label), ()).is_none())
    }

    /// The unique step leaving `v` that reads `l`, in a folded graph.
    fn step_reading(&self, v: VertexId, l: Letter) -> Option<Step> {
        self.edges.iter().enumerate().find_map(|(i, e)| {
            if e.label != l.index() {
                None
            } else if !l.is_inverse() && e.source == v {
                Some((i, true))
            } else if l.is_inverse() && e.target == v {
                Some((i, false))
            } else {
                None
            }
        })
    }

    /// Whether `w` labels a closed reduced path at the base.
    pub fn membership(&self, w: &Word) -> Result<bool> {
        if !self.is_folded_both_ways() {
            return Err(Error::NotFolded);
        }
        self.labels.check_word(w)?;
        let mut v = self.base;
        for &l in w.letters() {
            match self.step_reading(v, l) {
                Some(s) => v = self.step_end(s),
                None => return Ok(false),
            }
        }
        Ok(v == self.base)
    }

    /// Label-synchronised product with base `(base₁, base₂)`. Vertex `(i, j)`
    /// gets id `i·|V₂| + j`; edges are listed in `(e₁, e₂)` order.
    pub fn product(&self, other: &StallingsGraph) -> Result<ProductGraph> {
        if self.labels != other.labels {
            return Err(Error::AlphabetMismatch("product graphs need the same label alphabet"));
        }
        let n2 = other.vertex_count;
        let id = |a: VertexId, b: VertexId| a * n2 + b;
        let mut edges = Vec::new();
        let mut edge_pairs = Vec::new();
        for (i, e1) in self.edges.iter().enumerate() {
            for (j, e2) in other.edges.iter().enumerate() {
                if e1.label == e2.label {
                    edges.push(Edge {
                        source: id(e1.source, e2.source),
                        target: id(e1.target, e2.target),
                        label: e1.label,
                    });
                    edge_pairs.push((i, j));
                }
            }
        }
        let vertex_pairs = (0..self.vertex_count).flat_map(|a| (0..n2).map(move |b| (a, b))).collect();
        let graph = StallingsGraph {
            labels: self.labels.clone(),
            vertex_count: self.vertex_count * n2,
            edges,
            base: id(self.base, other.base),
            petals: None,
        };
        Ok(ProductGraph { graph, vertex_pairs, edge_pairs })
    }

    /// Core at `v`: repeatedly deletes degree-1 vertices other than `v`, then
    /// keeps the connected component of `v`. Surviving vertices and edges keep
    /// their relative order and become the new base and ids.
    pub fn core_at(&self, v: VertexId) -> Result<Subgraph> {
        if v >= self.vertex_count {
            return Err(Error::Invalid("core vertex outside the graph"));
        }
        let n = self.vertex_count;
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        let mut degree = vec![0usize; n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.source].push(i);
            incident[e.target].push(i);
            degree[e.source] += 1;
            degree[e.target] += 1;
        }
        let mut alive = vec![true; self.edges.len()];
        let mut queue: VecDeque<VertexId> = (0..n).filter(|&u| u != v && degree[u] == 1).collect();
        while let Some(u) = queue.pop_front() {
            if degree[u] != 1 {
                continue;
            }
            let Some(&e) = incident[u].iter().find(|&&e| alive[e]) else { continue };
            alive[e] = false;
            let edge = self.edges[e];
            let other = if edge.source == u { edge.target } else { edge.source };
            degree[u] -= 1;
            degree[other] -= 1;
            if other != v && degree[other] == 1 {
                queue.push_back(other);
            }
        }
        // component of v
        let mut reached = vec![false; n];
        reached[v] = true;
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            for &e in &incident[u] {
                if !alive[e] {
                    continue;
                }
                let edge = self.edges[e];
                for w in [edge.source, edge.target] {
                    if !reached[w] {
                        reached[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        let vertex_origin: Vec<VertexId> = (0..n).filter(|&u| reached[u]).collect();
        let mut new_id = vec![usize::MAX; n];
        for (i, &u) in vertex_origin.iter().enumerate() {
            new_id[u] = i;
        }
        let edge_origin: Vec<EdgeId> =
            (0..self.edges.len()).filter(|&e| alive[e] && reached[self.edges[e].source]).collect();
        let edges = edge_origin
            .iter()
            .map(|&e| {
                let old = self.edges[e];
                Edge { source: new_id[old.source], target: new_id[old.target], label: old.label }
            })
            .collect();
        let graph = StallingsGraph {
            labels: self.labels.clone(),
            vertex_count: vertex_origin.len(),
            edges,
            base: new_id[v],
            petals: None,
        };
        Ok(Subgraph { graph, vertex_origin, edge_origin })
    }

    /// Closed paths from the base through vertices of degree 2, one per petal,
    /// each oriented so that its label is the smaller of the label and its
    /// inverse, sorted by (first letter, length, label). Errors if the graph
    /// is not a bouquet at its base.
    pub fn bouquet_petals(&self) -> Result<Vec<Vec<Step>>> {
        let n = self.vertex_count;
        let mut incident: Vec<Vec<EdgeId>> = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.source].push(i);
            if e.target != e.source {
                incident[e.target].push(i);
            }
        }
        if (0..n).any(|u| u != self.base && self.degree(u) != 2) {
            return Err(Error::NotBouquet);
        }
        let mut used = vec![false; self.edges.len()];
        let mut petals = Vec::new();
        for &start in &incident[self.base] {
            if used[start] {
                continue;
            }
            let first: Step = (start, self.edges[start].source == self.base);
            let mut path = vec![first];
            used[start] = true;
            let mut at = self.step_end(first);
            let mut last = start;
            while at != self.base {
                let next = incident[at].iter().copied().find(|&e| e != last && !used[e]).ok_or(Error::NotBouquet)?;
                let step = (next, self.edges[next].source == at);
                used[next] = true;
                path.push(step);
                at = self.step_end(step);
                last = next;
            }
            let reversed: Vec<Step> = path.iter().rev().map(|&(e, fwd)| (e, !fwd)).collect();
            if self.path_label(&reversed) < self.path_label(&path) {
                path = reversed;
            }
            petals.push(path);
        }
        if used.iter().any(|u| !u) {
            return Err(Error::NotBouquet);
        }
        petals.sort_by_cached_key(|p| {
            let label = self.path_label(p);
            (label.first(), label.len(), label)
        });
        Ok(petals)
    }

    /// Deterministic DOT rendering: vertices `v0…vN`, base drawn doubled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph G {\n");
        for v in 0..self.vertex_count {
            if v == self.base {
                let _ = writeln!(s, "  v{v} [peripheries=2];");
            } else {
                let _ = writeln!(s, "  v{v};");
            }
        }
        for e in &self.edges {
            let _ = writeln!(s, "  v{} -> v{} [label=\"{}\"];", e.source, e.target, self.labels.symbol(e.label));
        }
        s.push_str("}\n");
        s
    }
}

/// `Γ₁ ⊗ Γ₂` with the underlying vertex and edge pairs.
#[derive(Debug, Clone)]
pub struct ProductGraph {
    pub graph: StallingsGraph,
    pub vertex_pairs: Vec<(VertexId, VertexId)>,
    pub edge_pairs: Vec<(EdgeId, EdgeId)>,
}

/// A subgraph together with the ids its vertices and edges had before.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: StallingsGraph,
    pub vertex_origin: Vec<VertexId>,
    pub edge_origin: Vec<EdgeId>,
}

/// `Core(g, h)` with the edge projections `δ_g`, `δ_h` onto `Γ_g`, `Γ_h`.
#[derive(Debug, Clone)]
pub struct CorePair {
    pub core: StallingsGraph,
    pub gamma_g: StallingsGraph,
    pub gamma_h: StallingsGraph,
    pub delta_g: Vec<EdgeId>,
    pub delta_h: Vec<EdgeId>,
}

/// Core of `Γ_g ⊗ Γ_h` at `(v_g, v_h)` for immersions `g, h` with a common
/// codomain.
pub fn core_of_pair(g: &Morphism, h: &Morphism) -> Result<CorePair> {
    g.require_marked()?;
    h.require_marked()?;
    let gamma_g = StallingsGraph::bouquet(g)?;
    let gamma_h = StallingsGraph::bouquet(h)?;
    let product = gamma_g.product(&gamma_h)?;
    let sub = product.graph.core_at(product.graph.base())?;
    let (delta_g, delta_h) = sub.edge_origin.iter().map(|&e| product.edge_pairs[e]).unzip();
    Ok(CorePair { core: sub.graph, gamma_g, gamma_h, delta_g, delta_h })
}

/// Reads a closed path of a bouquet as a word over the bouquet's generators.
fn decode_petal_path(bouquet: &StallingsGraph, path: &[Step]) -> Result<Word> {
    let petals = bouquet.petals().ok_or(Error::PetalProjection)?;
    let mut starts: BTreeMap<Step, (Letter, Vec<Step>)> = BTreeMap::new();
    for p in petals {
        let forward = p.path.clone();
        let backward: Vec<Step> = p.path.iter().rev().map(|&(e, f)| (e, !f)).collect();
        starts.insert(forward[0], (Letter::pos(p.generator), forward));
        starts.insert(backward[0], (Letter::neg(p.generator), backward));
    }
    let mut letters = Vec::new();
    let mut i = 0;
    while i < path.len() {
        let (l, petal) = starts.get(&path[i]).ok_or(Error::PetalProjection)?;
        if path.len() < i + petal.len() || path[i..i + petal.len()] != petal[..] {
            return Err(Error::PetalProjection);
        }
        letters.push(*l);
        i += petal.len();
    }
    let w = Word::from_letters(letters);
    if !w.is_reduced() {
        return Err(Error::PetalProjection);
    }
    Ok(w)
}

impl CorePair {
    /// Petals of the core in canonical order, as closed paths.
    pub fn petals(&self) -> Result<Vec<Vec<Step>>> {
        self.core.bouquet_petals()
    }

    /// Petal labels over `Δ`, in canonical order.
    pub fn petal_labels(&self) -> Result<Vec<Word>> {
        Ok(self.petals()?.iter().map(|p| self.core.path_label(p)).collect())
    }

    /// The maps `g': F(Σ') → F(Σ_g)` and `h': F(Σ') → F(Σ_h)` with one fresh
    /// generator `p0, p1, …` per petal, induced by `δ_g` and `δ_h`.
    pub fn petal_morphisms(&self, g: &Morphism, h: &Morphism) -> Result<(Morphism, Morphism)> {
        let petals = self.petals()?;
        let fresh = Alphabet::numbered(Mode::Group, "p", petals.len());
        let project = |delta: &[EdgeId], bouquet: &StallingsGraph| -> Result<Vec<Word>> {
            petals
                .iter()
                .map(|p| {
                    let projected: Vec<Step> = p.iter().map(|&(e, fwd)| (delta[e], fwd)).collect();
                    decode_petal_path(bouquet, &projected)
                })
                .collect()
        };
        let g_prime =
            Morphism::new_unchecked(fresh.clone(), g.domain().clone(), project(&self.delta_g, &self.gamma_g)?);
        let h_prime = Morphism::new_unchecked(fresh, h.domain().clone(), project(&self.delta_h, &self.gamma_h)?);
        if g.compose(&g_prime)?.images() != h.compose(&h_prime)?.images() {
            return Err(Error::PetalProjection);
        }
        Ok((g_prime, h_prime))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::ball;
    use crate::random;
    use crate::ImmersionTest;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn group(names: &[&str]) -> Alphabet {
        Alphabet::new(Mode::Group, names).unwrap()
    }

    fn example() -> (Morphism, Morphism) {
        let (s, d) = (group(&["a", "b", "c"]), group(&["x", "y", "z"]));
        (
            Morphism::parse(&s, &d, &["x y x x", "y^-1", "z x z"]).unwrap(),
            Morphism::parse(&s, &d, &["x", "y x x y", "z"]).unwrap(),
        )
    }

    fn unfolded() -> Morphism {
        Morphism::parse(&group(&["a", "b"]), &group(&["x", "y"]), &["x^-1 x^-1 y", "y y x"]).unwrap()
    }

    fn single_loop() -> StallingsGraph {
        StallingsGraph::new(group(&["x"]), 1, vec![Edge { source: 0, target: 0, label: 0 }], 0).unwrap()
    }

    #[test]
    fn bouquet_sizes() {
        let fig = StallingsGraph::bouquet(&unfolded()).unwrap();
        assert_eq!((fig.vertex_count(), fig.edges().len(), fig.petals().unwrap().len()), (5, 6, 2));
        let f = Morphism::parse(&group(&["a"]), &group(&["x"]), &["x"]).unwrap();
        let one = StallingsGraph::bouquet(&f).unwrap();
        assert_eq!((one.vertex_count(), one.edges().len()), (1, 1));
        let h = StallingsGraph::bouquet(&example().1).unwrap();
        assert_eq!((h.vertex_count(), h.edges().len()), (4, 6));
        let lens: Vec<usize> = h.petals().unwrap().iter().map(|p| p.path.len()).collect();
        assert_eq!(lens, [1, 4, 1]);
    }

    #[test]
    fn bouquet_rejects_empty_image() {
        let f = Morphism::parse(&group(&["a"]), &group(&["x"]), &["eps"]).unwrap();
        assert!(matches!(StallingsGraph::bouquet(&f), Err(Error::EmptyImage(_))));
    }

    #[test]
    fn folding_examples() {
        assert!(!StallingsGraph::bouquet(&unfolded()).unwrap().is_folded_both_ways());
        assert!(StallingsGraph::bouquet(&example().1).unwrap().is_folded_both_ways());
        assert!(single_loop().is_folded_both_ways());
    }

    #[test]
    fn product_examples() {
        let p = single_loop().product(&single_loop()).unwrap();
        assert_eq!((p.graph.vertex_count(), p.graph.edges().len()), (1, 1));
        let xy = group(&["x", "y"]);
        let xl = StallingsGraph::new(xy.clone(), 1, vec![Edge { source: 0, target: 0, label: 0 }], 0).unwrap();
        let yl = StallingsGraph::new(xy, 1, vec![Edge { source: 0, target: 0, label: 1 }], 0).unwrap();
        let p = xl.product(&yl).unwrap();
        assert_eq!((p.graph.vertex_count(), p.graph.edges().len()), (1, 0));
        assert!(single_loop().product(&xl).is_err());
    }

    #[test]
    fn core_examples() {
        // path v0 - v1 - v2, cored at v0
        let path = StallingsGraph::new(
            group(&["x"]),
            3,
            vec![Edge { source: 0, target: 1, label: 0 }, Edge { source: 1, target: 2, label: 0 }],
            0,
        )
        .unwrap();
        let c = path.core_at(0).unwrap();
        assert_eq!((c.graph.vertex_count(), c.graph.edges().len()), (1, 0));
        let b = StallingsGraph::bouquet(&example().0).unwrap();
        let c = b.core_at(b.base()).unwrap();
        assert_eq!((c.graph.vertex_count(), c.graph.edges().len()), (b.vertex_count(), b.edges().len()));
    }

    #[test]
    fn core_of_example_pair() {
        let (g, h) = example();
        let pair = core_of_pair(&g, &h).unwrap();
        let d = g.codomain();
        let labels: Vec<String> = pair.petal_labels().unwrap().iter().map(|w| d.format_word(w)).collect();
        assert_eq!(labels, ["x y x x y", "z x z"]);
        let (gp, hp) = pair.petal_morphisms(&g, &h).unwrap();
        let s = g.domain();
        let show = |f: &Morphism| f.images().iter().map(|w| s.format_word(w)).collect::<Vec<_>>();
        assert_eq!(show(&gp), ["a b^-1", "c"]);
        assert_eq!(show(&hp), ["a b", "c a c"]);
        let core = &pair.core;
        assert!(core.membership(&d.parse_word("x y x x y").unwrap()).unwrap());
        assert!(core.membership(&Word::empty()).unwrap());
        assert!(!core.membership(&d.parse_word("x").unwrap()).unwrap());
    }

    #[test]
    fn core_of_equal_and_disjoint_pairs() {
        let (g, _) = example();
        let pair = core_of_pair(&g, &g).unwrap();
        assert_eq!(pair.delta_g, pair.delta_h);
        assert_eq!(pair.core.edges().len(), pair.gamma_g.edges().len());
        let (gp, hp) = pair.petal_morphisms(&g, &g).unwrap();
        assert_eq!(gp, hp);
        assert!(gp.images().iter().all(|w| w.len() == 1));

        let (s, d) = (group(&["a"]), group(&["x", "y"]));
        let f1 = Morphism::parse(&s, &d, &["x y"]).unwrap();
        let f2 = Morphism::parse(&s, &d, &["y x"]).unwrap();
        let pair = core_of_pair(&f1, &f2).unwrap();
        assert_eq!((pair.core.vertex_count(), pair.core.edges().len()), (1, 0));
        let (gp, _) = pair.petal_morphisms(&f1, &f2).unwrap();
        assert!(gp.domain().is_empty());
    }

    #[test]
    fn membership_needs_folded_graph() {
        let fig = StallingsGraph::bouquet(&unfolded()).unwrap();
        assert_eq!(fig.membership(&Word::empty()), Err(Error::NotFolded));
    }

    #[test]
    fn dot_output() {
        assert_eq!(single_loop().to_dot(), "digraph G {\n  v0 [peripheries=2];\n  v0 -> v0 [label=\"x\"];\n}\n");
        let fig = StallingsGraph::bouquet(&unfolded()).unwrap().to_dot();
        assert_eq!(fig.matches(" -> ").count(), 6);
        assert_eq!(fig.lines().filter(|l| l.starts_with("  v") && !l.contains("->")).count(), 5);
        let bare = StallingsGraph::new(group(&["x"]), 1, Vec::new(), 0).unwrap();
        assert_eq!(bare.to_dot(), "digraph G {\n  v0 [peripheries=2];\n}\n");
    }

    #[test]
    fn bouquet_language_is_the_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let f = random::immersion(&mut rng, 2, 3, 3);
            let b = StallingsGraph::bouquet(&f).unwrap();
            for w in ball(f.domain(), 3) {
                assert!(b.membership(&f.apply(&w).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn folded_bouquet_iff_immersion() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..500 {
            let f = random::group_morphism(&mut rng, 2, 2, 4);
            assert_eq!(f.is_immersion(ImmersionTest::Folded).unwrap(), f.is_immersion(ImmersionTest::Marked).unwrap());
        }
    }

    #[test]
    fn coring_preserves_language() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..60 {
            let g = random::immersion(&mut rng, 2, 2, 3);
            let h = random::immersion(&mut rng, 2, 2, 3);
            let product = StallingsGraph::bouquet(&g).unwrap().product(&StallingsGraph::bouquet(&h).unwrap()).unwrap();
            let core = product.graph.core_at(product.graph.base()).unwrap();
            for w in ball(g.codomain(), 8) {
                assert_eq!(product.graph.membership(&w).unwrap(), core.graph.membership(&w).unwrap());
            }
        }
    }

    #[test]
    fn core_recognises_image_intersection() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        let decodes = |f: &Morphism, w: &Word| -> bool {
            // greedy: the first letter picks the signed generator
            let mut rest = w.clone();
            while !rest.is_empty() {
                let Some((_, img)) = f.signed_images().into_iter().find(|(_, img)| img.first() == rest.first()) else {
                    return false;
                };
                if !img.is_prefix_of(&rest) {
                    return false;
                }
                rest = rest.suffix_from(img.len());
            }
            true
        };
        for _ in 0..60 {
            let g = random::immersion(&mut rng, 2, 2, 3);
            let h = random::immersion(&mut rng, 2, 2, 3);
            let pair = core_of_pair(&g, &h).unwrap();
            for w in ball(g.codomain(), 7) {
                assert_eq!(pair.core.membership(&w).unwrap(), decodes(&g, &w) && decodes(&h, &w), "{w:?}");
            }
        }
    }
}
