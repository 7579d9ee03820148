//! Recovering `G = P × Q` (up to isomorphism) from an unlabeled difference
//! graph.
//!
//! Three branches:
//! - complete bipartite: `K_{s,t}` forces `(C_p)^k × (C_q)^l` with
//!   `s + 1 = p^k`, `t + 1 = q^l`;
//! - bipartite: one Sylow part is elementary; its rank is read off the
//!   smallest class joined to the whole opposite part, and the other part's
//!   order counts off the opposite part's class sizes;
//! - general: the max-submax classes reveal `p, q, r1, t1, k, l, n, m`, which
//!   in turn locate the complete bipartite subgraph on `{(e,b)} ∪ {(a,e)}`
//!   whose classes carry both order sequences.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::abelian::{
    exact_log, exact_root, is_prime, make_group, partition_from_order_counts, phi_pp, prime_power,
    GroupSpec, Params, SylowSpec,
};
use crate::error::{Error, Result};
use crate::graph::{
    are_isomorphic, bipartite_hull, is_bipartite, is_complete_bipartite,
    is_maximal_complete_bipartite, neighborhood_classes, ClassPartition, SimpleGraph,
};
use crate::group_graphs::difference_graph_fast;

/// Vertex count below which validation is on by default.
pub const DEFAULT_VALIDATION_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    CompleteBipartite,
    Bipartite,
    General,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::CompleteBipartite => "complete-bipartite",
            Branch::Bipartite => "bipartite",
            Branch::General => "general",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionReport {
    pub branch: Branch,
    #[serde(serialize_with = "display")]
    pub spec: GroupSpec,
    /// Extracted parameters (general branch), smaller prime first.
    pub params: Option<Params>,
    /// Element order counts of the smaller-prime Sylow part.
    pub order_counts_a: BTreeMap<u64, u64>,
    pub order_counts_b: BTreeMap<u64, u64>,
    pub validated: bool,
    pub trace: Vec<TraceStep>,
}

fn display<S: Serializer>(spec: &GroupSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

impl ReconstructionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Default)]
struct Trace(Vec<TraceStep>);

impl Trace {
    fn push(&mut self, step: &str, detail: impl Into<String>) {
        self.0.push(TraceStep {
            step: step.to_string(),
            detail: detail.into(),
        });
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::not_diff(msg)
}

fn checked_pow(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e)
        .ok_or_else(|| bad(format!("{base}^{e} overflows")))
}

/// Reconstructs the canonical spec of the abelian two-prime group whose
/// difference graph is `g`. With `validate`, `D(spec)` is rebuilt and must be
/// isomorphic to `g`.
pub fn reconstruct(g: &SimpleGraph, validate: bool) -> Result<ReconstructionReport> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if let Some(v) = (0..n).find(|&v| g.degree(v) == 0) {
        return Err(bad(format!("vertex {v} is isolated")));
    }
    let mut report = if let Some((s, t)) = is_complete_bipartite(g) {
        let spec = reconstruct_complete_bipartite(s, t)?;
        let mut trace = Trace::default();
        trace.push(
            "complete-bipartite",
            format!("K_{{{s},{t}}}: {s}+1 and {t}+1 are prime powers"),
        );
        report_for(Branch::CompleteBipartite, spec, None, trace.0)
    } else if let Some(coloring) = is_bipartite(g) {
        reconstruct_bipartite(g, &coloring)?
    } else {
        reconstruct_general(g)?
    };
    if validate {
        validate_report(g, &report.spec)?;
        report.validated = true;
    }
    Ok(report)
}

fn report_for(
    branch: Branch,
    spec: GroupSpec,
    params: Option<Params>,
    trace: Vec<TraceStep>,
) -> ReconstructionReport {
    ReconstructionReport {
        branch,
        order_counts_a: crate::abelian::order_counts(spec.sylow_a()),
        order_counts_b: crate::abelian::order_counts(spec.sylow_b()),
        spec,
        params,
        validated: false,
        trace,
    }
}

fn validate_report(g: &SimpleGraph, spec: &GroupSpec) -> Result<()> {
    let n = g.vertex_count() as u64;
    // every (a,e) and (e,b) with a, b ≠ e is a vertex
    if spec.sylow_a().order() + spec.sylow_b().order() > n + 2 {
        return Err(bad(format!(
            "{spec} has too many elements for {n} vertices"
        )));
    }
    let rebuilt = difference_graph_fast(spec);
    if are_isomorphic(g, &rebuilt.graph).is_none() {
        return Err(bad(format!("D({spec}) is not isomorphic to the input")));
    }
    Ok(())
}

/// `K_{s,t}` is `D((C_p)^k × (C_q)^l)` with `s + 1 = p^k`, `t + 1 = q^l`.
pub fn reconstruct_complete_bipartite(s: usize, t: usize) -> Result<GroupSpec> {
    let side = |x: usize| {
        prime_power(x as u64 + 1).ok_or_else(|| bad(format!("{x} + 1 is not a prime power")))
    };
    let ((p, k), (q, l)) = (side(s)?, side(t)?);
    if p == q {
        return Err(bad(format!("both sides give the prime {p}")));
    }
    make_group(
        SylowSpec::elementary(p, k as usize)?,
        SylowSpec::elementary(q, l as usize)?,
    )
}

/// Bipartite but not complete bipartite: one Sylow part is elementary.
pub fn reconstruct_bipartite(g: &SimpleGraph, coloring: &[u8]) -> Result<ReconstructionReport> {
    if !g.is_connected() {
        return Err(bad("bipartite input is disconnected"));
    }
    let mut trace = Trace::default();
    let cp = neighborhood_classes(g);
    let part_of = |c: usize| coloring[cp.classes[c][0]] as usize;
    let mut part_size = [0usize; 2];
    for &c in coloring {
        part_size[c as usize] += 1;
    }

    // smallest classes of each part; the one joined to the entire opposite part
    let mut star = Vec::new();
    for side in 0..2 {
        let in_side: Vec<usize> = (0..cp.len()).filter(|&c| part_of(c) == side).collect();
        let min = in_side.iter().map(|&c| cp.size(c)).min().unwrap_or(0);
        star.extend(
            in_side
                .into_iter()
                .filter(|&c| cp.size(c) == min && cp.degrees[c] == part_size[1 - side]),
        );
    }
    let [c_star] = star[..] else {
        return Err(bad(format!(
            "{} candidate classes joined to a whole part",
            star.len()
        )));
    };
    let (p, k) = prime_power(cp.size(c_star) as u64 + 1)
        .ok_or_else(|| bad("smallest joined class size + 1 is not a prime power"))?;
    trace.push(
        "elementary-part",
        format!(
            "joined class of size {} gives p={p}, k={k}",
            cp.size(c_star)
        ),
    );

    let other = 1 - part_of(c_star);
    let other_classes: Vec<usize> = (0..cp.len()).filter(|&c| part_of(c) == other).collect();
    let pendant: Vec<usize> = other_classes
        .iter()
        .copied()
        .filter(|&c| cp.neighbor_classes(c) == [c_star])
        .collect();
    let [base] = pendant[..] else {
        return Err(bad(format!(
            "{} classes see exactly the joined class",
            pendant.len()
        )));
    };
    let (q, l) = prime_power(cp.size(base) as u64 + 1)
        .ok_or_else(|| bad("order-q class size + 1 is not a prime power"))?;
    if p == q {
        return Err(bad(format!("both parts give the prime {p}")));
    }
    trace.push(
        "order-q-class",
        format!("size {} gives q={q}, l={l}", cp.size(base)),
    );

    let sizes: Vec<usize> = other_classes.iter().map(|&c| cp.size(c)).collect();
    let counts = order_counts_from_side(&sizes, q, l)?;
    trace.push("order-counts", format!("{counts:?}"));
    let b = sylow_from_counts(q, counts)?;
    let spec = make_group(SylowSpec::elementary(p, k as usize)?, b)?;
    Ok(report_for(Branch::Bipartite, spec, None, trace.0))
}

fn sylow_from_counts(prime: u64, mut counts: BTreeMap<u64, u64>) -> Result<SylowSpec> {
    counts.insert(1, 1);
    let exps = partition_from_order_counts(prime, &counts).map_err(|e| bad(e.to_string()))?;
    SylowSpec::new(prime, exps)
}

/// Among `candidates`, the maximum-size classes, then the smallest member
/// degree (largest with `prefer_high_degree`), then the smallest index.
fn pick(
    cp: &ClassPartition,
    candidates: &[usize],
    size: usize,
    prefer_high_degree: bool,
) -> Option<usize> {
    candidates
        .iter()
        .copied()
        .filter(|&c| cp.size(c) == size)
        .min_by_key(|&c| {
            let d = cp.degrees[c] as i64;
            (if prefer_high_degree { -d } else { d }, c)
        })
}

fn max_size(cp: &ClassPartition, classes: &[usize]) -> usize {
    classes.iter().map(|&c| cp.size(c)).max().unwrap_or(0)
}

fn min_size(cp: &ClassPartition, classes: &[usize]) -> usize {
    classes.iter().map(|&c| cp.size(c)).min().unwrap_or(0)
}

/// Reads one prime and its top exponent off the neighbor classes of a
/// max-submax class: one class per subgroup of the max element's cyclic
/// group, sizes `B·φ(p^w)` for `w = 0..r1`, summing to `B·p^(r1−1)`.
fn ladder(cp: &ClassPartition, neighbors: &[usize], what: &str) -> Result<(u64, u32, u64)> {
    let r1 = neighbors.len() as u32;
    if r1 < 2 {
        return Err(bad(format!(
            "{what}: max-submax class has {r1} neighbor classes"
        )));
    }
    let base = min_size(cp, neighbors) as u64;
    let sum: u64 = neighbors.iter().map(|&c| cp.size(c) as u64).sum();
    if !sum.is_multiple_of(base) {
        return Err(bad(format!(
            "{what}: neighbor sizes sum {sum} not a multiple of {base}"
        )));
    }
    let p = exact_root(sum / base, r1 - 1)
        .filter(|&p| is_prime(p))
        .ok_or_else(|| {
            bad(format!(
                "{what}: {} is not a prime power ^{}",
                sum / base,
                r1 - 1
            ))
        })?;
    Ok((p, r1, base))
}

/// `p, q, n, m, k, l, r1, t1` of a non-bipartite difference graph, in the
/// orientation in which the chosen largest class is a PQ max-submax class.
pub fn extract_parameters(g: &SimpleGraph, cp: &ClassPartition) -> Result<Params> {
    extract_parameters_traced(g, cp, &mut Trace::default())
}

fn extract_parameters_traced(
    g: &SimpleGraph,
    cp: &ClassPartition,
    trace: &mut Trace,
) -> Result<Params> {
    if g.is_empty() {
        return Err(Error::EmptyInput);
    }
    let all: Vec<usize> = (0..cp.len()).collect();
    let s1 = pick(cp, &all, max_size(cp, &all), false).expect("nonempty");
    let n1 = cp.neighbor_classes(s1);
    let (p, r1, b) = ladder(cp, &n1, "first ladder")?;
    trace.push(
        "largest-class",
        format!(
            "size {} degree {}; {} neighbor classes, min size {b} → p={p}, r1={r1}",
            cp.size(s1),
            cp.degrees[s1],
            n1.len()
        ),
    );

    let s2 = pick(cp, &n1, max_size(cp, &n1), false).expect("nonempty");
    let n2 = cp.neighbor_classes(s2);
    let (q, t1, b2) = ladder(cp, &n2, "second ladder")?;
    trace.push(
        "partner-class",
        format!(
            "size {} degree {}; {} neighbor classes, min size {b2} → q={q}, t1={t1}",
            cp.size(s2),
            cp.degrees[s2],
            n2.len()
        ),
    );
    if p == q {
        return Err(bad(format!("both ladders give the prime {p}")));
    }
    if !n2.contains(&s1) {
        return Err(bad("pq-class is not adjacent to the qp-class"));
    }

    let rank = |size: u64, prime: u64, top: u32, what: &str| -> Result<u32> {
        let phi = checked_pow(prime, top)? - checked_pow(prime, top - 1)?;
        if !size.is_multiple_of(phi) {
            return Err(bad(format!("{what}: {size} not divisible by {phi}")));
        }
        exact_log(prime, size / phi)
            .map(|e| e + 1)
            .ok_or_else(|| bad(format!("{what}: {} not a power of {prime}", size / phi)))
    };
    let l = rank(b, q, t1, "l")?;
    let k = rank(b2, p, r1, "k")?;
    trace.push("ranks", format!("k={k}, l={l}"));

    // the l-class among the smallest neighbor classes has degree (p^n − 1)·q^(t1−1)
    let total = |classes: &[usize],
                 base: u64,
                 prime: u64,
                 other: u64,
                 other_top: u32,
                 what: &str|
     -> Result<u32> {
        let c = pick(cp, classes, base as usize, true).expect("base size present");
        let deg = cp.degrees[c] as u64;
        let unit = checked_pow(other, other_top - 1)?;
        if !deg.is_multiple_of(unit) {
            return Err(bad(format!("{what}: degree {deg} not divisible by {unit}")));
        }
        exact_log(prime, deg / unit + 1).ok_or_else(|| {
            bad(format!(
                "{what}: {} is not a power of {prime}",
                deg / unit + 1
            ))
        })
    };
    let n = total(&n1, b, p, q, t1, "n")?;
    let m = total(&n2, b2, q, p, r1, "m")?;
    trace.push("totals", format!("n={n}, m={m}"));

    let params = Params {
        p,
        q,
        n,
        m,
        k,
        l,
        r1,
        t1,
    };
    if r1 + k - 1 > n || t1 + l - 1 > m {
        return Err(bad(format!("inconsistent exponents {params:?}")));
    }
    let pq = checked_pow(p, k - 1)? * phi_pp(p, r1) * phi_pp(q, t1 - 1);
    let qp = checked_pow(q, l - 1)? * phi_pp(q, t1) * phi_pp(p, r1 - 1);
    if cp.size(s1) as u64 != pq || cp.size(s2) as u64 != qp {
        return Err(bad(format!(
            "max-submax sizes {} and {} differ from predicted {pq} and {qp}",
            cp.size(s1),
            cp.size(s2)
        )));
    }
    Ok(params)
}

/// Classes of the two sides of the complete bipartite subgraph on
/// `{(e,b) : b ≠ e}` (returned first) and `{(a,e) : a ≠ e}`.
pub fn locate_he(
    g: &SimpleGraph,
    cp: &ClassPartition,
    params: &Params,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let x_sdk = (checked_pow(params.q, params.l)? - 1) as usize;
    let y_sdk = (checked_pow(params.p, params.k)? - 1) as usize;
    let mut found: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for c in (0..cp.len()).filter(|&c| cp.size(c) == x_sdk) {
        let Some((x, y)) = bipartite_hull(g, cp.classes[c][0]) else {
            continue;
        };
        if !is_maximal_complete_bipartite(g, &x, &y) {
            continue;
        }
        let (sx, sy) = crate::classes::sdk_classes(g, &x, &y);
        if sx.len() == x_sdk && sy.len() == y_sdk {
            let pair = (cp.classes_meeting(&x), cp.classes_meeting(&y));
            if !found.contains(&pair) {
                found.push(pair);
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => Err(bad(
            "no complete bipartite subgraph with the expected SDK classes",
        )),
        k => Err(bad(format!(
            "{k} candidate subgraphs with the expected SDK classes"
        ))),
    }
}

/// Element order counts (identity excluded) of a Sylow part from the class
/// sizes of its side: the class of size `prime^rank − 1` holds the order-prime
/// elements and each class of size `prime^(rank−1)·φ(prime^u)` holds elements of
/// order `prime^u`.
pub fn order_counts_from_side(
    sizes: &[usize],
    prime: u64,
    rank: u32,
) -> Result<BTreeMap<u64, u64>> {
    let base = checked_pow(prime, rank)? - 1;
    let unit = checked_pow(prime, rank - 1)?;
    let mut counts = BTreeMap::new();
    let mut seen_base = false;
    for &size in sizes {
        let size = size as u64;
        if size == base && !seen_base {
            seen_base = true;
            *counts.entry(prime).or_insert(0) += size;
            continue;
        }
        let u = (size.is_multiple_of(unit) && (size / unit).is_multiple_of(prime - 1))
            .then(|| exact_log(prime, size / unit / (prime - 1)))
            .flatten()
            .filter(|&e| e >= 1)
            .map(|e| e + 1)
            .ok_or_else(|| {
                bad(format!(
                    "class size {size} fits no template for prime {prime}, rank {rank}"
                ))
            })?;
        *counts.entry(checked_pow(prime, u)?).or_insert(0) += size;
    }
    if !seen_base {
        return Err(bad(format!("no class of size {base}")));
    }
    Ok(counts)
}

fn reconstruct_general(g: &SimpleGraph) -> Result<ReconstructionReport> {
    let mut trace = Trace::default();
    let cp = neighborhood_classes(g);
    let params = extract_parameters_traced(g, &cp, &mut trace)?;
    let (xe, ye) = locate_he(g, &cp, &params)?;
    let sizes = |cs: &[usize]| cs.iter().map(|&c| cp.size(c)).collect::<Vec<_>>();
    trace.push(
        "h-e",
        format!("sides {:?} and {:?}", sizes(&xe), sizes(&ye)),
    );

    let counts_q = order_counts_from_side(&sizes(&xe), params.q, params.l)?;
    let counts_p = order_counts_from_side(&sizes(&ye), params.p, params.k)?;
    let a = sylow_from_counts(params.p, counts_p)?;
    let b = sylow_from_counts(params.q, counts_q)?;
    let consistent = |s: &SylowSpec, n: u32, k: u32, r1: u32| {
        s.total_exponent() == n && s.rank() == k && s.top_exponent() == r1
    };
    if !consistent(&a, params.n, params.k, params.r1)
        || !consistent(&b, params.m, params.l, params.t1)
    {
        return Err(bad(format!(
            "order counts give {a} and {b}, inconsistent with {params:?}"
        )));
    }
    let spec = make_group(a, b)?;
    let params = if params.p < params.q {
        params
    } else {
        params.swapped()
    };
    Ok(report_for(Branch::General, spec, Some(params), trace.0))
}
