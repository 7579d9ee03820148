//! Directed power, power, enhanced power and difference graphs of a group
//! `G = P × Q`.
//!
//! Vertex `i` of every graph on all of `G` is the element at lexicographic
//! index `i` over `(coords_a, coords_b)`.

use std::collections::HashSet;

use crate::abelian::{CyclicProduct, GroupElement, GroupSpec, SylowTables};
use crate::error::{Error, Result};
use crate::graph::{remove_isolated, strong_product, Digraph, SimpleGraph};

/// Group order above which `difference_graph` skips the definitional
/// cross-check.
pub const DEFAULT_CROSS_CHECK_LIMIT: u64 = 5000;

/// `D(G)` with each vertex labeled by its group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledDiffGraph {
    pub graph: SimpleGraph,
    pub labels: Vec<GroupElement>,
    pub spec: GroupSpec,
}

/// Element tables for both Sylow parts of a spec.
#[derive(Clone, Debug)]
pub struct GroupTables {
    pub spec: GroupSpec,
    pub a: SylowTables,
    pub b: SylowTables,
}

impl GroupTables {
    pub fn new(spec: &GroupSpec) -> Self {
        GroupTables {
            spec: spec.clone(),
            a: SylowTables::new(spec.sylow_a()),
            b: SylowTables::new(spec.sylow_b()),
        }
    }

    /// Split a whole-group index into Sylow indices.
    #[inline]
    pub fn split(&self, idx: usize) -> (usize, usize) {
        (idx / self.b.len(), idx % self.b.len())
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        a * self.b.len() + b
    }

    pub fn label(&self, a: usize, b: usize) -> GroupElement {
        GroupElement {
            a: self.a.group.decode(a),
            b: self.b.group.decode(b),
        }
    }

    /// Sylow indices of a label.
    pub fn locate(&self, x: &GroupElement) -> (usize, usize) {
        (self.a.group.encode(&x.a), self.b.group.encode(&x.b))
    }

    /// Adjacency in `D(G)` between `(a1, b1)` and `(a2, b2)`.
    #[inline]
    pub fn diff_adjacent(&self, (a1, b1): (usize, usize), (a2, b2): (usize, usize)) -> bool {
        (self.a.strict(a1, a2) && self.b.strict(b2, b1))
            || (self.a.strict(a2, a1) && self.b.strict(b1, b2))
    }

    /// Whether `(a, b)` survives in `D(G)`.
    #[inline]
    pub fn is_vertex(&self, a: usize, b: usize) -> bool {
        !((a == 0 && b == 0) || (self.a.maximal[a] && self.b.maximal[b]))
    }
}

/// Arc `x → y` iff `y ∈ ⟨x⟩`, `x ≠ y`.
pub fn directed_power_graph(spec: &GroupSpec) -> Digraph {
    directed_power_graph_of(&spec.group())
}

pub fn directed_power_graph_of(group: &CyclicProduct) -> Digraph {
    let table = group.power_table();
    let mut d = Digraph::new(group.len());
    for x in 0..group.len() {
        for y in table.row_iter(x).filter(|&y| y != x) {
            d.add_arc(x, y);
        }
    }
    d
}

pub fn power_graph(spec: &GroupSpec) -> SimpleGraph {
    directed_power_graph(spec).undirected()
}

/// Joins `x, y` when both are powers of a single element; built by
/// enumerating cyclic subgroups and filling each with a clique.
pub fn enhanced_power_graph_of(group: &CyclicProduct) -> SimpleGraph {
    let table = group.power_table();
    let n = group.len();
    let mut g = SimpleGraph::new(n);
    let mut seen: HashSet<&[u64]> = HashSet::new();
    for z in 0..n {
        if !seen.insert(table.row(z)) {
            continue;
        }
        let members: Vec<usize> = table.row_iter(z).collect();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                g.add_edge(x, y);
            }
        }
    }
    g
}

/// `P_e(P) ⊠ P_e(Q)`, which coincides with `P_e(G)` because `|P|` and `|Q|`
/// are coprime.
pub fn enhanced_power_graph_via_product(spec: &GroupSpec) -> SimpleGraph {
    strong_product(
        &enhanced_power_graph_of(&spec.sylow_a().group()),
        &enhanced_power_graph_of(&spec.sylow_b().group()),
    )
}

/// `P_e(G)` by definition, checked against the strong-product construction.
pub fn enhanced_power_graph(spec: &GroupSpec) -> Result<SimpleGraph> {
    let direct = enhanced_power_graph_of(&spec.group());
    let product = enhanced_power_graph_via_product(spec);
    if direct != product {
        return Err(Error::InternalMismatch(format!(
            "enhanced power graph of {spec} differs from the strong product of its Sylow parts"
        )));
    }
    Ok(direct)
}

/// Adjacency in `D(G)` by the strict-power criterion on Sylow coordinates.
pub fn diff_adjacent(spec: &GroupSpec, u: &GroupElement, v: &GroupElement) -> Result<bool> {
    let pa = spec.sylow_a().group();
    let pb = spec.sylow_b().group();
    let part = |c: &CyclicProduct, x: &[u64], y: &[u64]| c.is_power(x, y) && !c.is_power(y, x);
    spec.order_of(u)?;
    spec.order_of(v)?;
    Ok((part(&pa, &u.a, &v.a) && part(&pb, &v.b, &u.b))
        || (part(&pa, &v.a, &u.a) && part(&pb, &u.b, &v.b)))
}

/// `D(G)` from the definitions: enhanced power edges minus power edges, with
/// isolated vertices dropped.
pub fn difference_graph_definitional(spec: &GroupSpec) -> LabeledDiffGraph {
    let enhanced = enhanced_power_graph_of(&spec.group());
    let power = power_graph(spec);
    let n = enhanced.vertex_count();
    let mut diff = SimpleGraph::new(n);
    for (u, v) in enhanced.edges() {
        if !power.has_edge(u, v) {
            diff.add_edge(u, v);
        }
    }
    let (graph, keep) = remove_isolated(&diff);
    LabeledDiffGraph {
        graph,
        labels: keep.into_iter().map(|i| spec.element_at(i)).collect(),
        spec: spec.clone(),
    }
}

/// `D(G)` on the vertex set `G ∖ ({e} ∪ M(P)×M(Q))` with the strict-power
/// adjacency criterion.
pub fn difference_graph_fast(spec: &GroupSpec) -> LabeledDiffGraph {
    difference_graph_from_tables(&GroupTables::new(spec))
}

pub fn difference_graph_from_tables(t: &GroupTables) -> LabeledDiffGraph {
    let mut verts = Vec::new();
    for a in 0..t.a.len() {
        for b in 0..t.b.len() {
            if t.is_vertex(a, b) {
                verts.push((a, b));
            }
        }
    }
    let mut graph = SimpleGraph::new(verts.len());
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate().skip(i + 1) {
            if t.diff_adjacent(u, v) {
                graph.add_edge(i, j);
            }
        }
    }
    LabeledDiffGraph {
        graph,
        labels: verts.into_iter().map(|(a, b)| t.label(a, b)).collect(),
        spec: t.spec.clone(),
    }
}

/// `D(G)`, cross-checking the fast construction against the definitional one
/// when `|G| ≤ cross_check_limit`.
pub fn difference_graph_with(spec: &GroupSpec, cross_check_limit: u64) -> Result<LabeledDiffGraph> {
    let fast = difference_graph_fast(spec);
    if spec.order() <= cross_check_limit {
        let def = difference_graph_definitional(spec);
        if def != fast {
            return Err(Error::InternalMismatch(format!(
                "fast and definitional difference graphs of {spec} disagree"
            )));
        }
    }
    Ok(fast)
}

pub fn difference_graph(spec: &GroupSpec) -> Result<LabeledDiffGraph> {
    difference_graph_with(spec, DEFAULT_CROSS_CHECK_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{make_group, SylowSpec};

    fn spec(a: (u64, &[u32]), b: (u64, &[u32])) -> GroupSpec {
        make_group(
            SylowSpec::new(a.0, a.1.to_vec()).unwrap(),
            SylowSpec::new(b.0, b.1.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn c6() -> GroupSpec {
        spec((2, &[1]), (3, &[1]))
    }

    #[test]
    fn directed_power_graph_of_c6() {
        let d = directed_power_graph(&c6());
        let g = c6();
        // brute force: ordered pairs x ≠ y with y ∈ ⟨x⟩
        let mut arcs = 0;
        for x in g.elements() {
            for y in g.elements() {
                if x != y && g.is_in_cyclic(&x, &y).unwrap() {
                    arcs += 1;
                }
            }
        }
        assert_eq!(d.arc_count(), arcs);
        // generator (1,1) reaches everything
        let gen = g.group().encode(&[1, 1]);
        assert_eq!(d.out_neighbors(gen).count(), 5);
        // the two order-3 elements point at each other and at e
        let b1 = g.group().encode(&[0, 1]);
        let b2 = g.group().encode(&[0, 2]);
        assert!(d.has_arc(b1, b2) && d.has_arc(b2, b1) && d.has_arc(b1, 0));
    }

    #[test]
    fn power_graph_of_c6() {
        let g = c6();
        let p = power_graph(&g);
        let gen = g.group().encode(&[1, 1]);
        assert_eq!(p.degree(gen), 5);
        // g^2 has order 3, g^3 has order 2
        let g2 = g.group().encode(&g.group().scale(2, &[1, 1]));
        let g3 = g.group().encode(&g.group().scale(3, &[1, 1]));
        assert!(p.has_edge(gen, g2));
        assert!(!p.has_edge(g2, g3));
    }

    #[test]
    fn enhanced_power_graphs() {
        let e = enhanced_power_graph(&c6()).unwrap();
        assert_eq!(e, SimpleGraph::complete(6));
        assert_eq!(e.edge_count(), 15);

        let g = spec((2, &[1, 1]), (3, &[1]));
        let e = enhanced_power_graph(&g).unwrap();
        let x = g.group().encode(&[1, 0, 0]);
        let y = g.group().encode(&[0, 1, 0]);
        assert!(!e.has_edge(x, y));
        // pairwise closure oracle
        for u in 0..e.vertex_count() {
            for v in u + 1..e.vertex_count() {
                let (a, b) = (g.element_at(u), g.element_at(v));
                assert_eq!(e.has_edge(u, v), g.generates_cyclic(&a, &b).unwrap());
            }
        }
    }

    #[test]
    fn diff_adjacency_examples() {
        let g = c6();
        let a = g.element(vec![1], vec![0]).unwrap();
        let b = g.element(vec![0], vec![1]).unwrap();
        assert!(diff_adjacent(&g, &a, &b).unwrap());
        let b2 = g.element(vec![0], vec![2]).unwrap();
        assert!(!diff_adjacent(&g, &b, &b2).unwrap());

        let g = spec((2, &[2]), (3, &[1]));
        let a4 = g.element(vec![1], vec![0]).unwrap();
        let a2b3 = g.element(vec![2], vec![1]).unwrap();
        assert!(diff_adjacent(&g, &a4, &a2b3).unwrap());
        let d = difference_graph_definitional(&g);
        let iu = d.labels.iter().position(|l| *l == a4).unwrap();
        let iv = d.labels.iter().position(|l| *l == a2b3).unwrap();
        assert!(d.graph.has_edge(iu, iv));
    }

    #[test]
    fn difference_graph_examples() {
        let d = difference_graph(&c6()).unwrap();
        assert_eq!((d.graph.vertex_count(), d.graph.edge_count()), (3, 2));
        assert_eq!(crate::graph::is_complete_bipartite(&d.graph), Some((1, 2)));

        let d = difference_graph(&spec((2, &[2]), (3, &[1]))).unwrap();
        assert_eq!((d.graph.vertex_count(), d.graph.edge_count()), (7, 10));

        let d = difference_graph(&spec((2, &[2]), (3, &[2]))).unwrap();
        assert_eq!(d.graph.vertex_count(), 23);
    }

    #[test]
    fn fast_matches_definitional_small() {
        for s in crate::abelian::enumerate_specs(100) {
            assert_eq!(
                difference_graph_fast(&s),
                difference_graph_definitional(&s),
                "{s}"
            );
            assert_eq!(
                enhanced_power_graph_of(&s.group()),
                enhanced_power_graph_via_product(&s)
            );
        }
    }
}
