//! Exhaustive desk-scale verification.
//!
//! Ground truth is always definitional: power relations come from closures
//! of multiples, `M(S)` from pairwise containment scans, and the difference
//! graph from enhanced-minus-power edges. Graph-based checks take the graph
//! under test as an argument so that a corrupted graph can be fed in.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;

use crate::abelian::{
    enumerate_specs, is_prime, list_cyclic_subgroups, maximal_cyclic_generators, order_counts,
    order_counts_by_enumeration, partitions, CyclicProduct, GroupSpec, SylowSpec,
};
use crate::bits::BitMatrix;
use crate::classes::{
    classify_class, expected_class_members, predicted_degrees, predicted_size, sdk_classes,
    ClassTag,
};
use crate::error::Error;
use crate::graph::{
    are_isomorphic, bipartite_hull, is_bipartite, is_complete_bipartite,
    is_maximal_complete_bipartite, neighborhood_classes, shuffle, strong_product,
};
use crate::group_graphs::{
    difference_graph_definitional, difference_graph_fast, enhanced_power_graph_of, GroupTables,
    LabeledDiffGraph,
};
use crate::reconstruct::reconstruct;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Spec, spec pair, or range the check ran on.
    pub subject: String,
    pub status: Status,
    /// Shuffle or fault seed needed to replay a failure.
    pub seed: Option<u64>,
    pub counterexample: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        write!(f, "{tag} {} {}", self.name, self.subject)?;
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        if let Some(c) = &self.counterexample {
            write!(f, ": {c}")?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<(), String>;
type OrderCounts = BTreeMap<u64, u64>;

fn timed(
    name: &str,
    subject: impl Into<String>,
    seed: Option<u64>,
    f: impl FnOnce() -> Outcome,
) -> CheckReport {
    let start = Instant::now();
    let outcome = f();
    CheckReport {
        name: name.to_string(),
        subject: subject.into(),
        status: if outcome.is_ok() {
            Status::Pass
        } else {
            Status::Fail
        },
        seed,
        counterexample: outcome.err(),
        elapsed: start.elapsed(),
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Definitional data for one Sylow part.
struct SylowOracle {
    group: CyclicProduct,
    contains: BitMatrix,
    orders: Vec<u64>,
    maximal: Vec<bool>,
}

impl SylowOracle {
    fn new(spec: &SylowSpec) -> Self {
        let group = spec.group();
        let contains = group.power_table();
        let n = group.len();
        let orders: Vec<u64> = (0..n).map(|x| contains.row_count(x) as u64).collect();
        let maximal = (0..n)
            .map(|x| !(0..n).any(|z| contains.get(z, x) && orders[z] > orders[x]))
            .collect();
        SylowOracle {
            group,
            contains,
            orders,
            maximal,
        }
    }

    fn strict(&self, x: usize, y: usize) -> bool {
        self.contains.get(x, y) && self.orders[x] > self.orders[y]
    }

    fn cyclic(&self, x: usize) -> BTreeSet<usize> {
        self.contains.row_iter(x).collect()
    }
}

struct Oracle {
    a: SylowOracle,
    b: SylowOracle,
}

impl Oracle {
    fn new(spec: &GroupSpec) -> Self {
        Oracle {
            a: SylowOracle::new(spec.sylow_a()),
            b: SylowOracle::new(spec.sylow_b()),
        }
    }

    fn locate(&self, l: &LabeledDiffGraph, v: usize) -> (usize, usize) {
        (
            self.a.group.encode(&l.labels[v].a),
            self.b.group.encode(&l.labels[v].b),
        )
    }
}

/// `D(G)` by the fast route, the default graph under test.
pub fn subject(spec: &GroupSpec) -> LabeledDiffGraph {
    difference_graph_fast(spec)
}

/// `D(G)` with the adjacency of one seeded vertex pair flipped.
pub fn faulty_subject(spec: &GroupSpec, seed: u64) -> LabeledDiffGraph {
    let mut l = subject(spec);
    let n = l.graph.vertex_count();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let u = rng.random_range(0..n);
    let v = (u + rng.random_range(1..n)) % n;
    l.graph.toggle_edge(u, v);
    l
}

/// Fast and definitional difference graphs agree, labels and edges.
pub fn check_adjacency_lemma(spec: &GroupSpec) -> CheckReport {
    check_adjacency_lemma_on(spec, &subject(spec))
}

pub fn check_adjacency_lemma_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("adjacency", spec.to_string(), None, || {
        let truth = difference_graph_definitional(spec);
        ensure!(
            truth.labels == l.labels,
            "vertex sets differ: {} definitional vs {} under test",
            truth.labels.len(),
            l.labels.len()
        );
        let (te, le): (BTreeSet<_>, BTreeSet<_>) = (
            truth.graph.edges().into_iter().collect(),
            l.graph.edges().into_iter().collect(),
        );
        if let Some(&(u, v)) = te.symmetric_difference(&le).next() {
            return Err(format!(
                "edge ({u},{v}) = [{}]-[{}] definitional={} under-test={}",
                l.labels[u],
                l.labels[v],
                te.contains(&(u, v)),
                le.contains(&(u, v))
            ));
        }
        Ok(())
    })
}

/// Removed vertices are exactly `{(e,e)} ∪ M(P) × M(Q)`.
pub fn check_isolated_vertices(spec: &GroupSpec) -> CheckReport {
    check_isolated_vertices_on(spec, &subject(spec))
}

pub fn check_isolated_vertices_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("isolated", spec.to_string(), None, || {
        let ma: BTreeSet<Vec<u64>> = maximal_cyclic_generators(spec.sylow_a())
            .into_iter()
            .collect();
        let mb: BTreeSet<Vec<u64>> = maximal_cyclic_generators(spec.sylow_b())
            .into_iter()
            .collect();
        let expected: Vec<_> = spec
            .elements()
            .filter(|x| !(x.is_identity() || (ma.contains(&x.a) && mb.contains(&x.b))))
            .collect();
        let removed = spec.order() as usize - l.labels.len();
        ensure!(
            removed == 1 + ma.len() * mb.len(),
            "{removed} removed, expected 1 + {}·{}",
            ma.len(),
            mb.len()
        );
        ensure!(
            expected == l.labels,
            "surviving labels differ from G minus the isolated set"
        );
        if let Some(v) = (0..l.graph.vertex_count()).find(|&v| l.graph.degree(v) == 0) {
            return Err(format!("vertex {v} [{}] is isolated", l.labels[v]));
        }
        Ok(())
    })
}

/// Every class is classified, matches its closed-form size where one exists,
/// and in the non-bipartite regime the largest classes and distinguished
/// degrees follow the formulas.
pub fn check_class_formulas(spec: &GroupSpec) -> CheckReport {
    check_class_formulas_on(spec, &subject(spec))
}

pub fn check_class_formulas_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("class-formulas", spec.to_string(), None, || {
        let t = GroupTables::new(spec);
        let params = spec.params();
        let cp = neighborhood_classes(&l.graph);
        let mut kinds = Vec::with_capacity(cp.len());
        for (c, members) in cp.classes.iter().enumerate() {
            let kind = classify_class(&t, l, members).map_err(|e| format!("class {c}: {e}"))?;
            match predicted_size(kind, &params) {
                Ok(s) => ensure!(
                    s == members.len() as u64,
                    "class of [{}] ({}) has {} members, predicted {s}",
                    l.labels[members[0]],
                    kind.tag,
                    members.len()
                ),
                Err(Error::NoFormula) => {}
                Err(e) => return Err(e.to_string()),
            }
            kinds.push(kind);
        }
        if params.r1 < 2 || params.t1 < 2 {
            return Ok(());
        }
        let degrees = predicted_degrees(&params);
        for (c, kind) in kinds.iter().enumerate() {
            let expected = match kind.tag {
                ClassTag::LClassB if kind.v == params.t1 => Some(degrees.top_l_b),
                ClassTag::LClassA if kind.u == params.r1 => Some(degrees.top_l_a),
                ClassTag::PQMaxSubmax => Some(degrees.pq),
                ClassTag::QPMaxSubmax => Some(degrees.qp),
                _ => None,
            };
            if let Some(d) = expected {
                ensure!(
                    cp.degrees[c] as u64 == d,
                    "class of [{}] ({}) has degree {}, predicted {d}",
                    l.labels[cp.classes[c][0]],
                    kind.tag,
                    cp.degrees[c]
                );
            }
        }
        let is_ms =
            |c: usize| matches!(kinds[c].tag, ClassTag::PQMaxSubmax | ClassTag::QPMaxSubmax);
        let largest = cp.sizes().into_iter().max().unwrap_or(0);
        let pq = predicted_size(
            kinds
                .iter()
                .copied()
                .find(|k| k.tag == ClassTag::PQMaxSubmax)
                .ok_or("no pq class")?,
            &params,
        );
        let qp = predicted_size(
            kinds
                .iter()
                .copied()
                .find(|k| k.tag == ClassTag::QPMaxSubmax)
                .ok_or("no qp class")?,
            &params,
        );
        let top = pq.unwrap_or(0).max(qp.unwrap_or(0));
        ensure!(
            largest as u64 == top,
            "largest class has {largest} members, max-submax formulas give {top}"
        );
        let ms_degree = (0..cp.len())
            .filter(|&c| is_ms(c) && cp.size(c) == largest)
            .map(|c| cp.degrees[c])
            .max()
            .unwrap_or(0);
        for c in (0..cp.len()).filter(|&c| cp.size(c) == largest && !is_ms(c)) {
            let lclass = matches!(kinds[c].tag, ClassTag::LClassA | ClassTag::LClassB);
            ensure!(
                lclass && cp.degrees[c] > ms_degree,
                "class of [{}] ({}) ties the largest size with degree {} vs max-submax {ms_degree}",
                l.labels[cp.classes[c][0]],
                kinds[c].tag,
                cp.degrees[c]
            );
        }
        Ok(())
    })
}

/// The set-builder of each class lemma equals the actual class of every
/// vertex.
pub fn check_class_members(spec: &GroupSpec) -> CheckReport {
    check_class_members_on(spec, &subject(spec))
}

pub fn check_class_members_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("class-members", spec.to_string(), None, || {
        let t = GroupTables::new(spec);
        let cp = neighborhood_classes(&l.graph);
        for v in 0..l.graph.vertex_count() {
            let mut expected = expected_class_members(&t, l, v);
            expected.sort_unstable();
            let actual = &cp.classes[cp.class_of[v]];
            ensure!(
                &expected == actual,
                "[{}]: set-builder gives {} vertices, class has {}",
                l.labels[v],
                expected.len(),
                actual.len()
            );
        }
        Ok(())
    })
}

/// Bipartite iff `r1 = 1` or `t1 = 1`; complete bipartite iff both parts are
/// elementary.
pub fn check_bipartite_criterion(spec: &GroupSpec) -> CheckReport {
    check_bipartite_criterion_on(spec, &subject(spec))
}

pub fn check_bipartite_criterion_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("bipartite", spec.to_string(), None, || {
        let p = spec.params();
        let predicted = p.r1 == 1 || p.t1 == 1;
        let actual = is_bipartite(&l.graph).is_some();
        ensure!(
            actual == predicted,
            "bipartite={actual}, r1={}, t1={}",
            p.r1,
            p.t1
        );
        let complete = is_complete_bipartite(&l.graph).is_some();
        ensure!(
            complete == (p.r1 == 1 && p.t1 == 1),
            "complete bipartite={complete}, r1={}, t1={}",
            p.r1,
            p.t1
        );
        Ok(())
    })
}

/// `P_e(G × H) = P_e(G) ⊠ P_e(H)` exactly when `expect_equal`.
pub fn check_strong_product_groups(
    g: &CyclicProduct,
    h: &CyclicProduct,
    expect_equal: bool,
) -> CheckReport {
    let subject = format!("{:?} x {:?}", g.moduli(), h.moduli());
    timed("strong-product", subject, None, || {
        let joint = CyclicProduct::new([g.moduli(), h.moduli()].concat());
        let direct = enhanced_power_graph_of(&joint);
        let product = strong_product(&enhanced_power_graph_of(g), &enhanced_power_graph_of(h));
        let equal = direct == product;
        ensure!(
            equal == expect_equal,
            "enhanced power graph {} the strong product",
            if equal { "equals" } else { "differs from" }
        );
        Ok(())
    })
}

pub fn check_strong_product(a: &SylowSpec, b: &SylowSpec) -> CheckReport {
    let coprime = a.prime() != b.prime();
    let mut r = check_strong_product_groups(&a.group(), &b.group(), coprime);
    r.subject = format!("{a} x {b}");
    r
}

/// Orientation uniformity, the cyclic-subgroup shape of the down side, and
/// the SDK dichotomy, over every class-seeded maximal bipartite hull.
pub fn check_sdk_lemmas(spec: &GroupSpec) -> CheckReport {
    check_sdk_lemmas_on(spec, &subject(spec))
}

pub fn check_sdk_lemmas_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("sdk", spec.to_string(), None, || {
        let o = Oracle::new(spec);
        let params = spec.params();
        let g = &l.graph;
        let cp = neighborhood_classes(g);
        let mut seen = BTreeSet::new();
        for c in 0..cp.len() {
            let Some((x, y)) = bipartite_hull(g, cp.classes[c][0]) else {
                continue;
            };
            if !is_maximal_complete_bipartite(g, &x, &y) || !seen.insert(x.clone()) {
                continue;
            }
            let what = |w: usize| format!("hull of [{}]", l.labels[w]);
            // true: y's first coordinate is above x's
            let mut orientation = BTreeSet::new();
            for &xv in &x {
                let (a, b) = o.locate(l, xv);
                for &yv in &y {
                    let (cc, d) = o.locate(l, yv);
                    if o.a.strict(cc, a) && o.b.strict(b, d) {
                        orientation.insert(true);
                    } else if o.a.strict(a, cc) && o.b.strict(d, b) {
                        orientation.insert(false);
                    } else {
                        return Err(format!(
                            "{}: [{}]-[{}] is an edge but not adjacent by definition",
                            what(cp.classes[c][0]),
                            l.labels[xv],
                            l.labels[yv]
                        ));
                    }
                }
            }
            ensure!(
                orientation.len() == 1,
                "{}: mixed orientation",
                what(cp.classes[c][0])
            );
            let (x, y) = if orientation.contains(&true) {
                (x, y)
            } else {
                (y, x)
            };

            let side_set = |vs: &[usize], first: bool| -> BTreeSet<usize> {
                vs.iter()
                    .map(|&v| {
                        let (a, b) = o.locate(l, v);
                        if first {
                            a
                        } else {
                            b
                        }
                    })
                    .collect()
            };
            let a_set = side_set(&x, true);
            let d_set = side_set(&y, false);
            let generator = |set: &BTreeSet<usize>, so: &SylowOracle| -> Option<usize> {
                let top = *set
                    .iter()
                    .max_by_key(|&&z| (so.orders[z], std::cmp::Reverse(z)))?;
                (so.cyclic(top) == *set && !so.maximal[top]).then_some(top)
            };
            let ga = generator(&a_set, &o.a)
                .ok_or_else(|| format!("{}: A is not a non-maximal cyclic subgroup", what(x[0])))?;
            let gd = generator(&d_set, &o.b)
                .ok_or_else(|| format!("{}: D is not a non-maximal cyclic subgroup", what(x[0])))?;

            let (sx, sy) = sdk_classes(g, &x, &y);
            if sx.is_empty() || sy.is_empty() {
                continue;
            }
            let (pa, qd) = (o.a.orders[ga], o.b.orders[gd]);
            let (p, q) = (params.p, params.q);
            match (pa == 1, qd == 1) {
                (true, true) => {
                    ensure!(
                        x.len() as u64 == spec.sylow_b().order() - 1
                            && y.len() as u64 == spec.sylow_a().order() - 1,
                        "dual-SDK hull with A = D = {{e}} is not H_e"
                    );
                    ensure!(
                        sx.len() as u64 == q.pow(params.l) - 1
                            && sy.len() as u64 == p.pow(params.k) - 1,
                        "H_e SDK classes have sizes {} and {}",
                        sx.len(),
                        sy.len()
                    );
                }
                (true, false) => ensure!(
                    spec.sylow_a().is_elementary(),
                    "{}: A = {{e}}, D ≠ {{e}} with non-elementary P",
                    what(x[0])
                ),
                (false, true) => ensure!(
                    spec.sylow_b().is_elementary(),
                    "{}: D = {{e}}, A ≠ {{e}} with non-elementary Q",
                    what(x[0])
                ),
                (false, false) => {
                    let supergroups_maximal = |so: &SylowOracle, gen: usize| {
                        (0..so.orders.len())
                            .filter(|&z| so.strict(z, gen))
                            .all(|z| so.maximal[z])
                    };
                    ensure!(
                        supergroups_maximal(&o.a, ga) && supergroups_maximal(&o.b, gd),
                        "{}: a cyclic supergroup of A or D is not maximal",
                        what(x[0])
                    );
                    let phi = |z: u64, pr: u64| z - z / pr;
                    let fx = phi(pa, p) * q.pow(params.l - 1) * phi(qd * q, q);
                    let fy = phi(qd, q) * p.pow(params.k - 1) * phi(pa * p, p);
                    ensure!(
                        sx.len() as u64 == fx && sy.len() as u64 == fy,
                        "{}: SDK sizes {} and {}, predicted {fx} and {fy}",
                        what(x[0]),
                        sx.len(),
                        sy.len()
                    );
                    ensure!(
                        fx > q.pow(params.l) - 1 && fy > p.pow(params.k) - 1,
                        "{}: SDK sizes do not exceed those of H_e",
                        what(x[0])
                    );
                }
            }
        }
        Ok(())
    })
}

/// No edge joins two elements one of whose orders divides the other's.
pub fn check_divisibility(spec: &GroupSpec) -> CheckReport {
    check_divisibility_on(spec, &subject(spec))
}

pub fn check_divisibility_on(spec: &GroupSpec, l: &LabeledDiffGraph) -> CheckReport {
    timed("divisibility", spec.to_string(), None, || {
        let group = spec.group();
        let orders: Vec<u64> = l
            .labels
            .iter()
            .map(|x| group.element_order(&[x.a.clone(), x.b.clone()].concat()))
            .collect();
        for (u, v) in l.graph.edges() {
            let (ou, ov) = (orders[u], orders[v]);
            ensure!(
                ou % ov != 0 && ov % ou != 0,
                "edge [{}]-[{}] with orders {ou} and {ov}",
                l.labels[u],
                l.labels[v]
            );
        }
        Ok(())
    })
}

/// Subgroup counts for one abelian `p`-group: `(p^k − 1)/(p − 1)` subgroups
/// of order `p`, and every non-maximal cyclic subgroup of order `p^u`, `u > 1`,
/// lies in exactly `p^(k−1)` cyclic subgroups of order `p^(u+1)`.
pub fn check_cyclic_subgroups(s: &SylowSpec) -> CheckReport {
    timed("cyclic-subgroups", s.to_string(), None, || {
        let p = s.prime();
        let k = s.rank();
        let subs: Vec<BTreeSet<usize>> = list_cyclic_subgroups(s)
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        let of_order = |o: usize| subs.iter().filter(move |h| h.len() == o);
        let order_p = of_order(p as usize).count() as u64;
        ensure!(
            order_p == (p.pow(k) - 1) / (p - 1),
            "{order_p} subgroups of order {p}, expected {}",
            (p.pow(k) - 1) / (p - 1)
        );
        for h in subs.iter().filter(|h| h.len() > p as usize) {
            let above: Vec<_> = of_order(h.len() * p as usize)
                .filter(|z| h.is_subset(z))
                .collect();
            if above.is_empty() {
                continue;
            }
            ensure!(
                above.len() as u64 == p.pow(k - 1),
                "a cyclic subgroup of order {} lies in {} cyclic subgroups of order {}",
                h.len(),
                above.len(),
                h.len() * p as usize
            );
        }
        Ok(())
    })
}

/// Canonical specs of equal order have distinct element order counts
/// (computed by enumeration).
pub fn check_order_sequence_separation(max_order: u64) -> CheckReport {
    timed(
        "order-separation",
        format!("order <= {max_order}"),
        None,
        || {
            let mut by_order: BTreeMap<u64, Vec<(OrderCounts, GroupSpec)>> = BTreeMap::new();
            for spec in enumerate_specs(max_order) {
                let counts = order_counts_by_enumeration(&spec.group());
                by_order
                    .entry(spec.order())
                    .or_default()
                    .push((counts, spec));
            }
            for specs in by_order.values() {
                for (i, (ci, si)) in specs.iter().enumerate() {
                    for (cj, sj) in &specs[i + 1..] {
                        ensure!(ci != cj, "{si} and {sj} have the same order counts");
                    }
                }
            }
            Ok(())
        },
    )
}

/// `partition_from_order_counts` inverts `order_counts` for every partition
/// with sum at most `max_sum` over the given primes.
pub fn check_partition_inversion(primes: &[u64], max_sum: u32) -> CheckReport {
    timed(
        "partition-inversion",
        format!("{primes:?}, sum <= {max_sum}"),
        None,
        || {
            for &p in primes {
                for n in 1..=max_sum {
                    for e in partitions(n) {
                        let s = SylowSpec::new(p, e.clone()).map_err(|err| err.to_string())?;
                        let back =
                            crate::abelian::partition_from_order_counts(p, &order_counts(&s))
                                .map_err(|err| format!("{s}: {err}"))?;
                        ensure!(back == e, "{s} inverts to {back:?}");
                    }
                }
            }
            Ok(())
        },
    )
}

/// `reconstruct(shuffle(D, seed))` returns `spec` for every seed, with
/// validation on.
pub fn check_roundtrip(spec: &GroupSpec, seeds: &[u64]) -> CheckReport {
    check_roundtrip_on(spec, &subject(spec), seeds)
}

pub fn check_roundtrip_on(spec: &GroupSpec, l: &LabeledDiffGraph, seeds: &[u64]) -> CheckReport {
    let mut failed_seed = None;
    let mut r = timed("roundtrip", spec.to_string(), None, || {
        for &seed in seeds {
            let (g, _) = shuffle(&l.graph, seed);
            let outcome = match reconstruct(&g, true) {
                Ok(r) if r.spec == *spec => Ok(()),
                Ok(r) => Err(format!("reconstructed {}", r.spec)),
                Err(e) => Err(e.to_string()),
            };
            if outcome.is_err() {
                failed_seed = Some(seed);
                return outcome;
            }
        }
        Ok(())
    });
    r.seed = failed_seed;
    r
}

/// No two distinct canonical specs of order `order` have isomorphic
/// difference graphs.
pub fn check_injectivity(order: u64) -> CheckReport {
    timed("injectivity", format!("order {order}"), None, || {
        let graphs: Vec<(GroupSpec, LabeledDiffGraph)> = enumerate_specs(order)
            .into_iter()
            .filter(|s| s.order() == order)
            .map(|s| {
                let d = difference_graph_fast(&s);
                (s, d)
            })
            .collect();
        for (i, (si, di)) in graphs.iter().enumerate() {
            for (sj, dj) in &graphs[i + 1..] {
                ensure!(
                    are_isomorphic(&di.graph, &dj.graph).is_none(),
                    "D({si}) and D({sj}) are isomorphic"
                );
            }
        }
        Ok(())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Adjacency,
    Isolated,
    ClassFormulas,
    ClassMembers,
    Bipartite,
    StrongProduct,
    Sdk,
    Divisibility,
    CyclicSubgroups,
    OrderSeparation,
    Roundtrip,
    Injectivity,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Adjacency,
        Suite::Isolated,
        Suite::ClassFormulas,
        Suite::ClassMembers,
        Suite::Bipartite,
        Suite::StrongProduct,
        Suite::Sdk,
        Suite::Divisibility,
        Suite::CyclicSubgroups,
        Suite::OrderSeparation,
        Suite::Roundtrip,
        Suite::Injectivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Adjacency => "adjacency",
            Suite::Isolated => "isolated",
            Suite::ClassFormulas => "class-formulas",
            Suite::ClassMembers => "class-members",
            Suite::Bipartite => "bipartite",
            Suite::StrongProduct => "strong-product",
            Suite::Sdk => "sdk",
            Suite::Divisibility => "divisibility",
            Suite::CyclicSubgroups => "cyclic-subgroups",
            Suite::OrderSeparation => "order-separation",
            Suite::Roundtrip => "roundtrip",
            Suite::Injectivity => "injectivity",
        }
    }

    /// Whether the suite inspects the difference graph under test.
    pub fn uses_graph(self) -> bool {
        matches!(
            self,
            Suite::Adjacency
                | Suite::Isolated
                | Suite::ClassFormulas
                | Suite::ClassMembers
                | Suite::Bipartite
                | Suite::Sdk
                | Suite::Divisibility
                | Suite::Roundtrip
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Per-suite order bounds; the effective bound is the minimum with the
/// requested maximum order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub definitional: u64,
    pub members: u64,
    pub formulas: u64,
    pub roundtrip: u64,
    pub sdk: u64,
    pub injectivity: u64,
    pub cyclic: u64,
    pub separation: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            definitional: 400,
            members: 400,
            formulas: 1000,
            roundtrip: 1200,
            sdk: 600,
            injectivity: 300,
            cyclic: 512,
            separation: 2000,
        }
    }
}

impl Bounds {
    pub fn for_suite(&self, suite: Suite) -> u64 {
        match suite {
            Suite::Adjacency | Suite::StrongProduct => self.definitional,
            Suite::ClassMembers => self.members,
            Suite::Isolated | Suite::ClassFormulas | Suite::Bipartite | Suite::Divisibility => {
                self.formulas
            }
            Suite::Sdk => self.sdk,
            Suite::Roundtrip => self.roundtrip,
            Suite::Injectivity => self.injectivity,
            Suite::CyclicSubgroups => self.cyclic,
            Suite::OrderSeparation => self.separation,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub suites: Vec<Suite>,
    pub bounds: Bounds,
    pub seeds: Vec<u64>,
    /// Worker threads; `1` runs sequentially, `0` uses all cores.
    pub jobs: usize,
    /// Flip one seeded vertex pair in every graph under test.
    pub fault_inject: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            suites: Suite::ALL.to_vec(),
            bounds: Bounds::default(),
            seeds: vec![0, 1, 2],
            jobs: 0,
            fault_inject: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub max_order: u64,
    pub reports: Vec<CheckReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl Summary {
    pub fn passed(&self) -> usize {
        self.reports.iter().filter(|r| r.passed()).count()
    }

    pub fn failed(&self) -> usize {
        self.reports.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.passed())
    }

    /// Failure lines, then one tally per check name, then the total.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.failures() {
            out.push_str(&format!("{r}\n"));
        }
        let mut tally: Vec<(&str, usize, usize)> = Vec::new();
        for r in &self.reports {
            let i = match tally.iter().position(|t| t.0 == r.name) {
                Some(i) => i,
                None => {
                    tally.push((&r.name, 0, 0));
                    tally.len() - 1
                }
            };
            if r.passed() {
                tally[i].1 += 1;
            } else {
                tally[i].2 += 1;
            }
        }
        for (name, pass, fail) in tally {
            out.push_str(&format!("{name}: {pass} passed, {fail} failed\n"));
        }
        out.push_str(&format!(
            "total: {} passed, {} failed\n",
            self.passed(),
            self.failed()
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }
}

/// Maps `f` over `items`, in parallel when the `parallel` feature is on and
/// `jobs != 1`. Output order follows input order.
pub fn par_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs == 1 {
        return items.iter().map(f).collect();
    }
    parallel_map(items, jobs, f)
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(
    items: &[T],
    jobs: usize,
    f: F,
) -> Vec<R> {
    use rayon::prelude::*;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    pool.install(|| items.par_iter().map(&f).collect())
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync + Send>(
    items: &[T],
    _jobs: usize,
    f: F,
) -> Vec<R> {
    items.iter().map(f).collect()
}

/// Every abelian `p`-group spec of order at most `max_order`.
pub fn sylow_specs(max_order: u64) -> Vec<SylowSpec> {
    let mut out = Vec::new();
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        let mut n = 1;
        while p.checked_pow(n).is_some_and(|o| o <= max_order) {
            for e in partitions(n) {
                out.push(SylowSpec::new(p, e).expect("valid partition"));
            }
            n += 1;
        }
    }
    out
}

fn run_spec_suite(suite: Suite, spec: &GroupSpec, opts: &VerifyOptions) -> CheckReport {
    let l = match opts.fault_inject {
        Some(seed) if suite.uses_graph() => faulty_subject(spec, seed),
        _ => subject(spec),
    };
    let mut r = match suite {
        Suite::Adjacency => check_adjacency_lemma_on(spec, &l),
        Suite::Isolated => check_isolated_vertices_on(spec, &l),
        Suite::ClassFormulas => check_class_formulas_on(spec, &l),
        Suite::ClassMembers => check_class_members_on(spec, &l),
        Suite::Bipartite => check_bipartite_criterion_on(spec, &l),
        Suite::Sdk => check_sdk_lemmas_on(spec, &l),
        Suite::Divisibility => check_divisibility_on(spec, &l),
        Suite::Roundtrip => check_roundtrip_on(spec, &l, &opts.seeds),
        Suite::StrongProduct => check_strong_product(spec.sylow_a(), spec.sylow_b()),
        _ => unreachable!("not a per-spec suite"),
    };
    if let (Some(seed), true) = (opts.fault_inject, suite.uses_graph()) {
        r.seed = Some(seed);
    }
    r
}

/// Runs the selected suites over all canonical specs up to `max_order`
/// (capped per suite by `opts.bounds`). Reports are ordered by suite, then
/// by spec, independent of `jobs`.
pub fn verify_range(max_order: u64, opts: &VerifyOptions) -> Summary {
    let start = Instant::now();
    let mut suites = opts.suites.clone();
    suites.sort();
    suites.dedup();
    let mut reports = Vec::new();
    for suite in suites {
        let bound = max_order.min(opts.bounds.for_suite(suite));
        match suite {
            Suite::CyclicSubgroups => {
                reports.extend(par_map(
                    &sylow_specs(bound),
                    opts.jobs,
                    check_cyclic_subgroups,
                ));
            }
            Suite::OrderSeparation => {
                reports.push(check_order_sequence_separation(bound));
                reports.push(check_partition_inversion(&[2, 3, 5], 10));
            }
            Suite::Injectivity => {
                let mut orders: Vec<u64> =
                    enumerate_specs(bound).iter().map(|s| s.order()).collect();
                orders.dedup();
                reports.extend(par_map(&orders, opts.jobs, |&o| check_injectivity(o)));
            }
            _ => {
                let specs = enumerate_specs(bound);
                reports.extend(par_map(&specs, opts.jobs, |s| {
                    run_spec_suite(suite, s, opts)
                }));
                if suite == Suite::StrongProduct {
                    let c2 = CyclicProduct::new(vec![2]);
                    reports.push(check_strong_product_groups(&c2, &c2, false));
                }
            }
        }
    }
    Summary {
        max_order,
        reports,
        elapsed: start.elapsed(),
    }
}
