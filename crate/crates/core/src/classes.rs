//! Neighborhood classes of a labeled difference graph: their taxonomy,
//! set-builder descriptions, and closed-form sizes and degrees.
//!
//! Labels `(a, b)` fall into
//! - m-classes: `a, b` both non-identity and non-maximal;
//! - l-classes: one coordinate is the identity;
//! - u-classes: exactly one coordinate generates a maximal cyclic subgroup.
//!
//! Max-submax u-classes pair a generator of a largest cyclic subgroup on one
//! side with a generator of its maximal proper subgroup's order on the other.

use std::fmt;

use serde::Serialize;

use crate::abelian::{phi_pp, Params};
use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{neighborhood_classes, SimpleGraph};
use crate::group_graphs::{GroupTables, LabeledDiffGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassTag {
    MClass,
    /// `[(e, b)]`
    LClassB,
    /// `[(a, e)]`
    LClassA,
    UClass,
    PQMaxSubmax,
    QPMaxSubmax,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::MClass => "m",
            ClassTag::LClassB => "l-b",
            ClassTag::LClassA => "l-a",
            ClassTag::UClass => "u",
            ClassTag::PQMaxSubmax => "pq-max-submax",
            ClassTag::QPMaxSubmax => "qp-max-submax",
        })
    }
}

/// Kind of a class together with the element orders `p^u`, `q^v` of its
/// members' coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ClassKind {
    pub tag: ClassTag,
    pub u: u32,
    pub v: u32,
    /// For u-classes: whether the maximal coordinate is the `P` one.
    pub maximal_in_a: bool,
}

/// Kind of the class containing the vertex labeled `(a, b)` (Sylow indices).
pub fn classify_label(t: &GroupTables, a: usize, b: usize) -> ClassKind {
    let (u, v) = (t.a.height(a), t.b.height(b));
    let (ma, mb) = (t.a.maximal[a], t.b.maximal[b]);
    let (r1, t1) = (t.a.spec.top_exponent(), t.b.spec.top_exponent());
    let tag = if a == 0 {
        ClassTag::LClassB
    } else if b == 0 {
        ClassTag::LClassA
    } else if ma && !mb {
        if u == r1 && v + 1 == t1 {
            ClassTag::PQMaxSubmax
        } else {
            ClassTag::UClass
        }
    } else if mb && !ma {
        if v == t1 && u + 1 == r1 {
            ClassTag::QPMaxSubmax
        } else {
            ClassTag::UClass
        }
    } else {
        ClassTag::MClass
    };
    ClassKind {
        tag,
        u,
        v,
        maximal_in_a: ma
            && matches!(
                tag,
                ClassTag::UClass | ClassTag::PQMaxSubmax | ClassTag::QPMaxSubmax
            ),
    }
}

/// Kind shared by all members of `class`.
pub fn classify_class(t: &GroupTables, l: &LabeledDiffGraph, class: &[usize]) -> Result<ClassKind> {
    let mut kinds = class.iter().map(|&v| {
        let (a, b) = t.locate(&l.labels[v]);
        classify_label(t, a, b)
    });
    let first = kinds
        .next()
        .ok_or_else(|| Error::NotAClass("empty class".into()))?;
    if let Some(other) = kinds.find(|k| *k != first) {
        return Err(Error::NotAClass(format!("{first:?} vs {other:?}")));
    }
    Ok(first)
}

/// The class of vertex `v` as described by its set-builder, evaluated by
/// brute force over all labels.
pub fn expected_class_members(t: &GroupTables, l: &LabeledDiffGraph, v: usize) -> Vec<usize> {
    let (a, b) = t.locate(&l.labels[v]);
    // same order and meeting in a subgroup of index at most the prime
    let close = |s: &crate::abelian::SylowTables, x: usize, y: usize| {
        s.orders[x] == s.orders[y] && s.meet_order(x, y) as u64 * s.spec.prime() >= s.orders[x]
    };
    let member = |x: usize, y: usize| -> bool {
        if a == 0 {
            x == 0 && close(&t.b, b, y)
        } else if b == 0 {
            y == 0 && close(&t.a, a, x)
        } else if t.b.maximal[b] && !t.a.maximal[a] {
            t.a.same_cyclic(a, x) && close(&t.b, b, y) && t.b.maximal[y]
        } else if t.a.maximal[a] && !t.b.maximal[b] {
            t.b.same_cyclic(b, y) && close(&t.a, a, x) && t.a.maximal[x]
        } else {
            t.a.same_cyclic(a, x) && t.b.same_cyclic(b, y)
        }
    };
    (0..l.labels.len())
        .filter(|&w| {
            let (x, y) = t.locate(&l.labels[w]);
            member(x, y)
        })
        .collect()
}

/// Closed-form class size; generic u-classes have none, and neither do
/// max-submax classes when a Sylow part has prime exponent.
pub fn predicted_size(kind: ClassKind, params: &Params) -> Result<u64> {
    let Params {
        p, q, k, l, r1, t1, ..
    } = *params;
    let (u, v) = (kind.u, kind.v);
    let max_submax = matches!(kind.tag, ClassTag::PQMaxSubmax | ClassTag::QPMaxSubmax);
    if max_submax && (r1 < 2 || t1 < 2) {
        return Err(Error::NoFormula);
    }
    Ok(match kind.tag {
        ClassTag::MClass => phi_pp(p, u) * phi_pp(q, v),
        ClassTag::LClassB if v == 1 => q.pow(l) - 1,
        ClassTag::LClassB => q.pow(l - 1) * phi_pp(q, v),
        ClassTag::LClassA if u == 1 => p.pow(k) - 1,
        ClassTag::LClassA => p.pow(k - 1) * phi_pp(p, u),
        ClassTag::PQMaxSubmax => p.pow(k - 1) * phi_pp(p, r1) * phi_pp(q, t1 - 1),
        ClassTag::QPMaxSubmax => q.pow(l - 1) * phi_pp(q, t1) * phi_pp(p, r1 - 1),
        ClassTag::UClass => return Err(Error::NoFormula),
    })
}

/// Member degrees of the distinguished classes in the non-bipartite regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTable {
    /// `(e, d)` with `o(d) = q^t1`.
    pub top_l_b: u64,
    /// `(c, e)` with `o(c) = p^r1`.
    pub top_l_a: u64,
    pub pq: u64,
    pub qp: u64,
}

pub fn predicted_degrees(params: &Params) -> DegreeTable {
    let Params {
        p,
        q,
        n,
        m,
        k,
        l,
        r1,
        t1,
    } = *params;
    DegreeTable {
        top_l_b: (p.pow(n) - 1) * q.pow(t1 - 1),
        top_l_a: (q.pow(m) - 1) * p.pow(r1 - 1),
        pq: p.pow(r1 - 1) * q.pow(l - 1) * phi_pp(q, t1),
        qp: q.pow(t1 - 1) * p.pow(k - 1) * phi_pp(p, r1),
    }
}

/// Vertices of `x` whose neighborhood is exactly `y`, and vice versa.
///
/// Vertices sharing a neighborhood share a class, so each side is a single
/// neighborhood class or empty.
pub fn sdk_classes(g: &SimpleGraph, x: &[usize], y: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = g.vertex_count();
    let xm = bits::set_from(n, x.iter().copied());
    let ym = bits::set_from(n, y.iter().copied());
    let on = |side: &[usize], other: &[u64]| -> Vec<usize> {
        side.iter()
            .copied()
            .filter(|&w| g.row(w) == other)
            .collect()
    };
    (on(x, &ym), on(y, &xm))
}

/// One row of a class census.
#[derive(Clone, Debug, Serialize)]
pub struct ClassRow {
    pub size: usize,
    pub kind: ClassKind,
    pub degree: usize,
    pub example: String,
    pub predicted: Option<u64>,
    /// For u-classes, `size / (φ(p^u) φ(q^v))`.
    pub multiplicity: Option<u64>,
}

/// Census of all neighborhood classes of `l`, in class order.
pub fn class_table(l: &LabeledDiffGraph) -> Result<Vec<ClassRow>> {
    let t = GroupTables::new(&l.spec);
    let params = l.spec.params();
    let cp = neighborhood_classes(&l.graph);
    cp.classes
        .iter()
        .enumerate()
        .map(|(c, members)| {
            let kind = classify_class(&t, l, members)?;
            let predicted = predicted_size(kind, &params).ok();
            let multiplicity = (kind.tag == ClassTag::UClass).then(|| {
                members.len() as u64 / (phi_pp(params.p, kind.u) * phi_pp(params.q, kind.v))
            });
            Ok(ClassRow {
                size: members.len(),
                kind,
                degree: cp.degrees[c],
                example: l.labels[members[0]].to_string(),
                predicted,
                multiplicity,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{make_group, GroupSpec, SylowSpec};
    use crate::graph::bipartite_hull;
    use crate::group_graphs::difference_graph;

    fn spec(a: (u64, &[u32]), b: (u64, &[u32])) -> GroupSpec {
        make_group(
            SylowSpec::new(a.0, a.1.to_vec()).unwrap(),
            SylowSpec::new(b.0, b.1.to_vec()).unwrap(),
        )
        .unwrap()
    }

    fn c4c9() -> (GroupTables, LabeledDiffGraph) {
        let s = spec((2, &[2]), (3, &[2]));
        (GroupTables::new(&s), difference_graph(&s).unwrap())
    }

    fn vertex(l: &LabeledDiffGraph, a: u64, b: u64) -> usize {
        l.labels
            .iter()
            .position(|x| x.a == [a] && x.b == [b])
            .unwrap()
    }

    fn class_of(l: &LabeledDiffGraph, v: usize) -> Vec<usize> {
        let cp = neighborhood_classes(&l.graph);
        cp.classes[cp.class_of[v]].clone()
    }

    #[test]
    fn classify_examples() {
        let (t, l) = c4c9();
        // o(2) = 2 in C_4, o(3) = 3 in C_9, o(1) = 9
        let cls = |a, b| classify_class(&t, &l, &class_of(&l, vertex(&l, a, b))).unwrap();
        assert_eq!(cls(2, 3).tag, ClassTag::MClass);
        assert_eq!(cls(0, 1).tag, ClassTag::LClassB);
        assert_eq!(cls(2, 1).tag, ClassTag::QPMaxSubmax);
        assert_eq!(cls(1, 3).tag, ClassTag::PQMaxSubmax);
        assert_eq!(cls(1, 0).tag, ClassTag::LClassA);
    }

    #[test]
    fn set_builder_examples() {
        let (t, l) = c4c9();
        let m = expected_class_members(&t, &l, vertex(&l, 2, 3));
        assert_eq!(m.len(), 2);
        assert_eq!(m, class_of(&l, vertex(&l, 2, 3)));
        let e = expected_class_members(&t, &l, vertex(&l, 0, 1));
        assert_eq!(e.len(), 6);
        assert!(e.iter().all(|&w| l.labels[w].a == [0]));
        let u = expected_class_members(&t, &l, vertex(&l, 2, 1));
        assert_eq!(u.len(), 6);
        assert_eq!(u, class_of(&l, vertex(&l, 2, 1)));
    }

    #[test]
    fn size_formulas() {
        let mut p = spec((2, &[1]), (3, &[1])).params();
        let kind = |tag, u, v| ClassKind {
            tag,
            u,
            v,
            maximal_in_a: false,
        };
        assert_eq!(predicted_size(kind(ClassTag::MClass, 1, 1), &p).unwrap(), 2);
        p = spec((2, &[2]), (3, &[2])).params();
        assert_eq!(
            predicted_size(kind(ClassTag::PQMaxSubmax, 2, 1), &p).unwrap(),
            4
        );
        assert_eq!(
            predicted_size(kind(ClassTag::QPMaxSubmax, 1, 2), &p).unwrap(),
            6
        );
        assert_eq!(
            predicted_size(kind(ClassTag::UClass, 1, 1), &p),
            Err(Error::NoFormula)
        );

        let (t, l) = c4c9();
        for (a, b) in [(1, 3), (2, 1)] {
            let c = class_of(&l, vertex(&l, a, b));
            let k = classify_class(&t, &l, &c).unwrap();
            assert_eq!(predicted_size(k, &p).unwrap(), c.len() as u64);
        }
    }

    #[test]
    fn degree_formulas() {
        let (_, l) = c4c9();
        let d = predicted_degrees(&l.spec.params());
        assert_eq!(d.top_l_b, 9);
        assert_eq!(l.graph.degree(vertex(&l, 0, 1)), 9);
        assert_eq!(d.qp, 6);
        assert_eq!(l.graph.degree(vertex(&l, 2, 1)), 6);
        assert_eq!(d.top_l_a, 16);
        assert_eq!(l.graph.degree(vertex(&l, 1, 0)), 16);
        assert_eq!(l.graph.degree(vertex(&l, 1, 3)) as u64, d.pq);
    }

    #[test]
    fn sdk_of_he() {
        let (_, l) = c4c9();
        let (x, y) = bipartite_hull(&l.graph, vertex(&l, 0, 3)).unwrap();
        assert!(x.iter().all(|&w| l.labels[w].a == [0]));
        assert!(y.iter().all(|&w| l.labels[w].b == [0]));
        let (sx, sy) = sdk_classes(&l.graph, &x, &y);
        assert_eq!((sx.len(), sy.len()), (2, 1));
        // (e, b3) is SDK, the order-9 classes are not
        assert!(sx.contains(&vertex(&l, 0, 3)));
        assert!(!sx.contains(&vertex(&l, 0, 1)));

        let k = SimpleGraph::complete_bipartite(2, 3);
        assert_eq!(
            sdk_classes(&k, &[0, 1], &[2, 3, 4]),
            (vec![0, 1], vec![2, 3, 4])
        );
    }

    #[test]
    fn census_of_c4c9() {
        let (_, l) = c4c9();
        let rows = class_table(&l).unwrap();
        let mut sizes: Vec<usize> = rows.iter().map(|r| r.size).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 2, 4, 6, 6]);
        assert_eq!(sizes.iter().sum::<usize>(), 23);
        for r in &rows {
            if let Some(p) = r.predicted {
                assert_eq!(p, r.size as u64, "{r:?}");
            }
        }
    }
}
