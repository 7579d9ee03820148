//! Undirected simple graphs on packed adjacency rows, and the generic
//! algorithms the rest of the crate builds on.

use std::collections::HashMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::SplitMix64;

use crate::bits::{self, BitMatrix, Ones};

mod iso;

pub use iso::are_isomorphic;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: BitMatrix,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            adj: BitMatrix::new(n),
        }
    }

    /// Panics on loops or out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = SimpleGraph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complete_bipartite(s: usize, t: usize) -> Self {
        SimpleGraph::from_edges(s + t, (0..s).flat_map(|u| (s..s + t).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        SimpleGraph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        SimpleGraph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.size()
    }

    pub fn is_empty(&self) -> bool {
        self.vertex_count() == 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at {u}");
        assert!(u < self.vertex_count() && v < self.vertex_count());
        self.adj.set(u, v);
        self.adj.set(v, u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj.clear(u, v);
        self.adj.clear(v, u);
    }

    /// Adds the edge if absent, removes it otherwise.
    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            self.remove_edge(u, v);
        } else {
            self.add_edge(u, v);
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// Packed neighborhood of `u`.
    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        self.adj.row(u)
    }

    pub fn neighbors(&self, u: usize) -> Ones<'_> {
        self.adj.row_iter(u)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj.row_count(u)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.vertex_count()).map(|u| self.degree(u)).collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|u| self.degree(u))
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Subgraph induced on `keep`; vertex `i` of the result is `keep[i]`.
    pub fn induced(&self, keep: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph whose vertex `i` is vertex `new_to_old[i]` of `self`.
    pub fn permuted(&self, new_to_old: &[usize]) -> SimpleGraph {
        let n = self.vertex_count();
        let mut old_to_new = vec![0; n];
        for (new, &old) in new_to_old.iter().enumerate() {
            old_to_new[old] = new;
        }
        let mut g = SimpleGraph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(old_to_new[u], old_to_new[v]);
        }
        g
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mask = bits::set_from(self.vertex_count(), set.iter().copied());
        set.iter().all(|&u| !bits::intersects(self.row(u), &mask))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edges())
            .finish()
    }
}

/// Simple digraph on packed out-neighbor rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    arcs: BitMatrix,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            arcs: BitMatrix::new(n),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.arcs.size()
    }

    pub fn add_arc(&mut self, u: usize, v: usize) {
        assert!(u != v);
        self.arcs.set(u, v);
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.get(u, v)
    }

    pub fn out_neighbors(&self, u: usize) -> Ones<'_> {
        self.arcs.row_iter(u)
    }

    pub fn arc_count(&self) -> usize {
        (0..self.vertex_count())
            .map(|u| self.arcs.row_count(u))
            .sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|u| self.out_neighbors(u).map(move |v| (u, v)))
            .collect()
    }

    /// Underlying simple graph.
    pub fn undirected(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.vertex_count());
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("vertices", &self.vertex_count())
            .field("arcs", &self.arcs())
            .finish()
    }
}

/// Partition of the vertices by equality of open neighborhoods, with the
/// quotient graph on classes.
#[derive(Clone, Debug)]
pub struct ClassPartition {
    /// Classes ordered by smallest member; members ascending.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Degree shared by all members of each class.
    pub degrees: Vec<usize>,
    pub quotient: SimpleGraph,
}

impl ClassPartition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Classes adjacent to class `c` in the quotient.
    pub fn neighbor_classes(&self, c: usize) -> Vec<usize> {
        self.quotient.neighbors(c).collect()
    }

    /// Classes meeting a vertex set.
    pub fn classes_meeting(&self, vertices: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = vertices.iter().map(|&v| self.class_of[v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn neighborhood_classes(g: &SimpleGraph) -> ClassPartition {
    let n = g.vertex_count();
    let mut index: HashMap<&[u64], usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![0; n];
    for (v, slot) in class_of.iter_mut().enumerate() {
        let c = *index.entry(g.row(v)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(v);
        *slot = c;
    }
    let degrees: Vec<usize> = classes.iter().map(|c| g.degree(c[0])).collect();
    let mut quotient = SimpleGraph::new(classes.len());
    for (c, members) in classes.iter().enumerate() {
        for v in g.neighbors(members[0]) {
            let d = class_of[v];
            if d > c {
                quotient.add_edge(c, d);
            }
        }
    }
    ClassPartition {
        classes,
        class_of,
        degrees,
        quotient,
    }
}

/// `g ⊠ h`; vertex `(x, y)` is numbered `x * |h| + y`.
pub fn strong_product(g: &SimpleGraph, h: &SimpleGraph) -> SimpleGraph {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let mut out = SimpleGraph::new(ng * nh);
    let near = |gr: &SimpleGraph, a: usize, b: usize| a == b || gr.has_edge(a, b);
    for x1 in 0..ng {
        for y1 in 0..nh {
            let u = x1 * nh + y1;
            for x2 in 0..ng {
                if !near(g, x1, x2) {
                    continue;
                }
                for y2 in 0..nh {
                    let v = x2 * nh + y2;
                    if v > u && near(h, y1, y2) {
                        out.add_edge(u, v);
                    }
                }
            }
        }
    }
    out
}

/// BFS two-coloring, or `None` when an odd cycle exists. Each component's
/// smallest vertex gets color 0.
pub fn is_bipartite(g: &SimpleGraph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut color = vec![u8::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for v in g.neighbors(u) {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return None;
                }
            }
        }
    }
    Some(color)
}

/// Part sizes `(s, t)` with `s ≤ t` when `g` is `K_{s,t}`, `s, t ≥ 1`.
pub fn is_complete_bipartite(g: &SimpleGraph) -> Option<(usize, usize)> {
    let color = is_bipartite(g)?;
    let s = color.iter().filter(|&&c| c == 0).count();
    let t = color.len() - s;
    (s >= 1 && t >= 1 && g.edge_count() == s * t).then_some((s.min(t), s.max(t)))
}

/// Induced subgraph on the non-isolated vertices and the kept original indices.
pub fn remove_isolated(g: &SimpleGraph) -> (SimpleGraph, Vec<usize>) {
    let keep: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) > 0).collect();
    (g.induced(&keep), keep)
}

/// Seeded permutation from a SplitMix64 stream; the inner-loop generator
/// is split off the seed so nearby seeds give unrelated permutations.
pub fn seeded_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

/// Relabels vertices by a seeded permutation. The returned permutation maps
/// new indices to old ones.
pub fn shuffle(g: &SimpleGraph, seed: u64) -> (SimpleGraph, Vec<usize>) {
    let perm = seeded_permutation(g.vertex_count(), seed);
    (g.permuted(&perm), perm)
}

/// `G(n, p)` random graph driven by SplitMix64.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> SimpleGraph {
    use rand::Rng;
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut g = SimpleGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(edge_probability) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Complete bipartite subgraph grown from `v`: `Y = N(v)` and `X` every vertex
/// adjacent to all of `Y`. Present only when both sides are independent.
pub fn bipartite_hull(g: &SimpleGraph, v: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    if g.degree(v) == 0 {
        return None;
    }
    let ymask = g.row(v);
    let y: Vec<usize> = g.neighbors(v).collect();
    let x: Vec<usize> = (0..g.vertex_count())
        .filter(|&w| bits::is_subset(ymask, g.row(w)))
        .collect();
    (g.is_independent(&x) && g.is_independent(&y)).then_some((x, y))
}

/// `X, Y` independent, fully joined, and no vertex outside `X ∪ Y` is
/// adjacent to all of `X` or to all of `Y`.
pub fn is_maximal_complete_bipartite(g: &SimpleGraph, x: &[usize], y: &[usize]) -> bool {
    if x.is_empty() || y.is_empty() {
        return false;
    }
    let n = g.vertex_count();
    let xm = bits::set_from(n, x.iter().copied());
    let ym = bits::set_from(n, y.iter().copied());
    if bits::intersects(&xm, &ym) || !g.is_independent(x) || !g.is_independent(y) {
        return false;
    }
    if !x.iter().all(|&u| bits::is_subset(&ym, g.row(u))) {
        return false;
    }
    (0..n)
        .filter(|&w| (xm[w / 64] | ym[w / 64]) >> (w % 64) & 1 == 0)
        .all(|w| !bits::is_subset(&xm, g.row(w)) && !bits::is_subset(&ym, g.row(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classes_of_small_graphs() {
        let k23 = SimpleGraph::complete_bipartite(2, 3);
        let cp = neighborhood_classes(&k23);
        assert_eq!(cp.sizes(), vec![2, 3]);
        assert_eq!(cp.quotient.edge_count(), 1);

        let p3 = SimpleGraph::path(3);
        let cp = neighborhood_classes(&p3);
        assert_eq!(cp.classes, vec![vec![0, 2], vec![1]]);
        assert_eq!(cp.degrees, vec![1, 2]);
    }

    #[test]
    fn strong_products_of_complete_graphs() {
        let k2 = SimpleGraph::complete(2);
        let k3 = SimpleGraph::complete(3);
        assert_eq!(strong_product(&k2, &k3), SimpleGraph::complete(6));
        assert_eq!(strong_product(&k2, &k2), SimpleGraph::complete(4));
        let p4 = SimpleGraph::path(4);
        assert_eq!(strong_product(&SimpleGraph::new(1), &p4), p4);
    }

    #[test]
    fn bipartiteness() {
        assert!(is_bipartite(&SimpleGraph::cycle(6)).is_some());
        assert!(is_bipartite(&SimpleGraph::complete(3)).is_none());
        assert!(is_bipartite(&SimpleGraph::cycle(5)).is_none());
        assert_eq!(
            is_complete_bipartite(&SimpleGraph::complete_bipartite(3, 8)),
            Some((3, 8))
        );
        assert_eq!(is_complete_bipartite(&SimpleGraph::path(3)), Some((1, 2)));
        assert_eq!(is_complete_bipartite(&SimpleGraph::path(4)), None);
        let mut with_isolated = SimpleGraph::complete_bipartite(1, 2);
        with_isolated = with_isolated.induced(&[0, 1, 2]);
        assert!(is_complete_bipartite(&with_isolated).is_some());
        assert_eq!(is_complete_bipartite(&SimpleGraph::new(3)), None);
    }

    #[test]
    fn isolated_removal() {
        let (g, keep) = remove_isolated(&SimpleGraph::new(4));
        assert_eq!(g.vertex_count(), 0);
        assert!(keep.is_empty());
        let (g, keep) = remove_isolated(&SimpleGraph::from_edges(3, [(0, 2)]));
        assert_eq!(g, SimpleGraph::complete(2));
        assert_eq!(keep, vec![0, 2]);
    }

    #[test]
    fn shuffle_is_deterministic() {
        let g = SimpleGraph::path(30);
        let (a, pa) = shuffle(&g, 7);
        let (b, pb) = shuffle(&g, 7);
        assert_eq!(a, b);
        assert_eq!(pa, pb);
        let mut da = a.degrees();
        let mut dg = g.degrees();
        da.sort();
        dg.sort();
        assert_eq!(da, dg);
        for (u, v) in a.edges() {
            assert!(g.has_edge(pa[u], pa[v]));
        }
        assert!(are_isomorphic(&g, &a).is_some());
    }

    #[test]
    fn hulls() {
        let k = SimpleGraph::complete_bipartite(2, 3);
        let (x, y) = bipartite_hull(&k, 0).unwrap();
        assert_eq!((x, y), (vec![0, 1], vec![2, 3, 4]));
        assert!(is_maximal_complete_bipartite(&k, &[0, 1], &[2, 3, 4]));
        assert!(bipartite_hull(&SimpleGraph::complete(3), 0).is_none());
        let k22 = SimpleGraph::complete_bipartite(2, 2);
        assert!(!is_maximal_complete_bipartite(&k22, &[0], &[2]));
        assert!(bipartite_hull(&SimpleGraph::new(2), 0).is_none());
    }

    #[test]
    fn connectivity() {
        assert!(SimpleGraph::path(5).is_connected());
        assert!(!SimpleGraph::from_edges(4, [(0, 1), (2, 3)]).is_connected());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = SimpleGraph::new(n);
                let mut i = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[i] {
                            g.add_edge(u, v);
                        }
                        i += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn quotient_is_well_defined(g in arb_graph(14)) {
            let cp = neighborhood_classes(&g);
            for (c, cm) in cp.classes.iter().enumerate() {
                prop_assert!(g.is_independent(cm));
                for (d, dm) in cp.classes.iter().enumerate() {
                    if c == d { continue; }
                    let adjacent = cp.quotient.has_edge(c, d);
                    for &u in cm {
                        for &v in dm {
                            prop_assert_eq!(g.has_edge(u, v), adjacent);
                        }
                    }
                }
            }
        }

        #[test]
        fn strong_product_degree_identity(g in arb_graph(6), h in arb_graph(6)) {
            let sp = strong_product(&g, &h);
            let nh = h.vertex_count();
            // closed-neighborhood product: deg(x,y) = (deg x + 1)(deg y + 1) - 1
            for x in 0..g.vertex_count() {
                for y in 0..nh {
                    prop_assert_eq!(sp.degree(x * nh + y), (g.degree(x) + 1) * (h.degree(y) + 1) - 1);
                }
            }
            let total: usize = (0..g.vertex_count())
                .flat_map(|x| (0..nh).map(move |y| (x, y)))
                .map(|(x, y)| (g.degree(x) + 1) * (h.degree(y) + 1) - 1)
                .sum();
            prop_assert_eq!(sp.edge_count() * 2, total);
        }

        #[test]
        fn shuffled_graphs_are_isomorphic(g in arb_graph(12), seed in any::<u64>()) {
            let (s, _) = shuffle(&g, seed);
            let map = are_isomorphic(&g, &s);
            prop_assert!(map.is_some());
        }

        #[test]
        fn hull_output_is_complete_bipartite(g in arb_graph(12), v in 0usize..12) {
            let v = v % g.vertex_count();
            if let Some((x, y)) = bipartite_hull(&g, v) {
                prop_assert!(x.contains(&v));
                for &a in &x { for &b in &y { prop_assert!(g.has_edge(a, b)); } }
                prop_assert!(is_maximal_complete_bipartite(&g, &x, &y));
            }
        }
    }
}
