//! Isomorphism testing by color refinement and individualization on the
//! neighborhood-class quotient.
//!
//! Twins (vertices with equal open neighborhoods) are interchangeable, so two
//! graphs are isomorphic iff their quotients are isomorphic as graphs weighted
//! by class size. Difference graphs have very large classes, which keeps the
//! quotient small.

use std::collections::BTreeMap;

use super::{neighborhood_classes, SimpleGraph};

/// An edge-preserving bijection `g → h` (as `map[v_g] = v_h`), or `None`
/// when the graphs are not isomorphic.
pub fn are_isomorphic(g: &SimpleGraph, h: &SimpleGraph) -> Option<Vec<usize>> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let cg = neighborhood_classes(g);
    let ch = neighborhood_classes(h);
    if cg.len() != ch.len() {
        return None;
    }
    let weights = |sizes: Vec<usize>, degrees: &[usize]| -> Vec<(usize, usize)> {
        sizes.into_iter().zip(degrees.iter().copied()).collect()
    };
    let wg = weights(cg.sizes(), &cg.degrees);
    let wh = weights(ch.sizes(), &ch.degrees);
    let qmap = weighted_isomorphism(&cg.quotient, &wg, &ch.quotient, &wh)?;

    let mut map = vec![usize::MAX; g.vertex_count()];
    for (c, members) in cg.classes.iter().enumerate() {
        for (&u, &v) in members.iter().zip(&ch.classes[qmap[c]]) {
            map[u] = v;
        }
    }
    verify(g, h, &map).then_some(map)
}

fn verify(g: &SimpleGraph, h: &SimpleGraph, map: &[usize]) -> bool {
    let mut hit = vec![false; h.vertex_count()];
    for &v in map {
        if v >= hit.len() || hit[v] {
            return false;
        }
        hit[v] = true;
    }
    g.edge_count() == h.edge_count()
        && g.edges()
            .into_iter()
            .all(|(u, v)| h.has_edge(map[u], map[v]))
}

struct Side {
    adj: Vec<Vec<usize>>,
}

impl Side {
    fn new(g: &SimpleGraph) -> Self {
        Side {
            adj: (0..g.vertex_count())
                .map(|u| g.neighbors(u).collect())
                .collect(),
        }
    }

    fn signatures(&self, colors: &[u32]) -> Vec<(u32, Vec<u32>)> {
        self.adj
            .iter()
            .enumerate()
            .map(|(u, nb)| {
                let mut s: Vec<u32> = nb.iter().map(|&v| colors[v]).collect();
                s.sort_unstable();
                (colors[u], s)
            })
            .collect()
    }
}

fn color_count(colors: &[u32]) -> usize {
    colors.iter().max().map_or(0, |&m| m as usize + 1)
}

fn histogram(colors: &[u32], k: usize) -> Vec<usize> {
    let mut h = vec![0; k];
    for &c in colors {
        h[c as usize] += 1;
    }
    h
}

/// Refines both colorings jointly until stable. Colors are named by the rank
/// of their signature in the union of both graphs, so equal colors mean equal
/// refinement history. Returns `false` as soon as the cell sizes diverge.
fn refine(a: &Side, b: &Side, ca: &mut Vec<u32>, cb: &mut Vec<u32>) -> bool {
    let mut k = color_count(ca).max(color_count(cb));
    if histogram(ca, k) != histogram(cb, k) {
        return false;
    }
    loop {
        let sa = a.signatures(ca);
        let sb = b.signatures(cb);
        let mut names: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in sa.iter().chain(&sb) {
            names.insert(s, 0);
        }
        for (i, v) in names.values_mut().enumerate() {
            *v = i as u32;
        }
        let na: Vec<u32> = sa.iter().map(|s| names[s]).collect();
        let nb: Vec<u32> = sb.iter().map(|s| names[s]).collect();
        let nk = names.len();
        if histogram(&na, nk) != histogram(&nb, nk) {
            return false;
        }
        *ca = na;
        *cb = nb;
        if nk == k {
            return true;
        }
        k = nk;
    }
}

/// Isomorphism between vertex-weighted graphs, as `map[v_a] = v_b`.
pub(crate) fn weighted_isomorphism<W: Ord + Clone>(
    ga: &SimpleGraph,
    wa: &[W],
    gb: &SimpleGraph,
    wb: &[W],
) -> Option<Vec<usize>> {
    if ga.vertex_count() != gb.vertex_count() || ga.edge_count() != gb.edge_count() {
        return None;
    }
    let mut palette: Vec<&W> = wa.iter().chain(wb).collect();
    palette.sort();
    palette.dedup();
    let rank = |w: &W| palette.binary_search(&w).unwrap() as u32;
    let ca: Vec<u32> = wa.iter().map(rank).collect();
    let cb: Vec<u32> = wb.iter().map(rank).collect();
    let (a, b) = (Side::new(ga), Side::new(gb));
    search(ga, gb, &a, &b, ca, cb)
}

fn search(
    ga: &SimpleGraph,
    gb: &SimpleGraph,
    a: &Side,
    b: &Side,
    mut ca: Vec<u32>,
    mut cb: Vec<u32>,
) -> Option<Vec<usize>> {
    if !refine(a, b, &mut ca, &mut cb) {
        return None;
    }
    let n = ca.len();
    let k = color_count(&ca);
    if k == n {
        let mut by_color = vec![0; n];
        for (v, &c) in cb.iter().enumerate() {
            by_color[c as usize] = v;
        }
        let map: Vec<usize> = ca.iter().map(|&c| by_color[c as usize]).collect();
        let ok = ga
            .edges()
            .into_iter()
            .all(|(u, v)| gb.has_edge(map[u], map[v]));
        return ok.then_some(map);
    }
    // individualize in the smallest nontrivial cell
    let hist = histogram(&ca, k);
    let target = (0..k)
        .filter(|&c| hist[c] > 1)
        .min_by_key(|&c| (hist[c], c))
        .expect("non-discrete coloring has a nontrivial cell") as u32;
    let v = ca.iter().position(|&c| c == target).unwrap();
    let fresh = k as u32;
    for w in (0..n).filter(|&w| cb[w] == target) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = fresh;
        nb[w] = fresh;
        if let Some(map) = search(ga, gb, a, b, na, nb) {
            return Some(map);
        }
    }
    None
}
