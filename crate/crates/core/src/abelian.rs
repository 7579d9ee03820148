//! Finite abelian groups presented as direct products of cyclic groups of
//! prime-power order.
//!
//! Elements are additive residue tuples. Cyclic membership is decided by
//! walking the multiples of the candidate generator, which is exact and cheap
//! at the group orders this crate targets (a few thousand elements).

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Largest group order accepted by the constructors.
pub const MAX_ORDER: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Exact logarithm: `Some(e)` when `value == base^e`.
pub fn exact_log(base: u64, value: u64) -> Option<u32> {
    if base < 2 || value == 0 {
        return None;
    }
    let mut v = value;
    let mut e = 0;
    while v.is_multiple_of(base) {
        v /= base;
        e += 1;
    }
    (v == 1).then_some(e)
}

/// Splits `n` as `p^e` with `p` prime and `e ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return exact_log(d, n).map(|e| (d, e));
        }
        d += 1;
    }
    Some((n, 1))
}

/// Integer `r` with `r^e == value`, if any.
pub fn exact_root(value: u64, e: u32) -> Option<u64> {
    if e == 0 {
        return None;
    }
    if e == 1 {
        return Some(value);
    }
    let guess = (value as f64).powf(1.0 / e as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&r| r.checked_pow(e) == Some(value))
}

/// Number of generators of a cyclic group of order `p^e`.
pub fn phi_pp(p: u64, e: u32) -> u64 {
    if e == 0 {
        1
    } else {
        p.pow(e) - p.pow(e - 1)
    }
}

/// Structure of an abelian p-group `C_{p^r1} × … × C_{p^rk}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SylowSpec {
    prime: u64,
    exponents: Vec<u32>,
}

impl SylowSpec {
    pub fn new(prime: u64, exponents: Vec<u32>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NonPrime(prime));
        }
        if exponents.is_empty()
            || exponents.contains(&0)
            || exponents.windows(2).any(|w| w[0] < w[1])
        {
            return Err(Error::NotNonIncreasing);
        }
        let n: u32 = exponents.iter().sum();
        match prime.checked_pow(n) {
            Some(o) if o <= MAX_ORDER => Ok(SylowSpec { prime, exponents }),
            _ => Err(Error::OrderTooLarge),
        }
    }

    /// `(C_p)^rank`.
    pub fn elementary(prime: u64, rank: usize) -> Result<Self> {
        SylowSpec::new(prime, vec![1; rank])
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of cyclic factors (k).
    pub fn rank(&self) -> u32 {
        self.exponents.len() as u32
    }

    /// Sum of exponents (n).
    pub fn total_exponent(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Largest exponent (r1).
    pub fn top_exponent(&self) -> u32 {
        self.exponents[0]
    }

    pub fn order(&self) -> u64 {
        self.prime.pow(self.total_exponent())
    }

    /// Exponent of the group, `p^r1`.
    pub fn exponent(&self) -> u64 {
        self.prime.pow(self.top_exponent())
    }

    pub fn is_elementary(&self) -> bool {
        self.top_exponent() == 1
    }

    pub fn group(&self) -> CyclicProduct {
        CyclicProduct::new(self.exponents.iter().map(|&e| self.prime.pow(e)).collect())
    }
}

impl fmt::Display for SylowSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.prime)?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// `P × Q` for abelian Sylow parts with distinct primes, smaller prime first.
///
/// Because the order sequence determines a finite abelian group, two canonical
/// specs are equal exactly when the groups are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupSpec {
    sylow_a: SylowSpec,
    sylow_b: SylowSpec,
}

pub fn make_group(a: SylowSpec, b: SylowSpec) -> Result<GroupSpec> {
    if a.prime == b.prime {
        return Err(Error::EqualPrimes(a.prime));
    }
    match a.order().checked_mul(b.order()) {
        Some(o) if o <= MAX_ORDER => {}
        _ => return Err(Error::OrderTooLarge),
    }
    let (sylow_a, sylow_b) = if a.prime < b.prime { (a, b) } else { (b, a) };
    Ok(GroupSpec { sylow_a, sylow_b })
}

impl GroupSpec {
    pub fn sylow_a(&self) -> &SylowSpec {
        &self.sylow_a
    }

    pub fn sylow_b(&self) -> &SylowSpec {
        &self.sylow_b
    }

    pub fn order(&self) -> u64 {
        self.sylow_a.order() * self.sylow_b.order()
    }

    /// The whole group as one cyclic product; indices are lexicographic over
    /// `(coords_a, coords_b)`.
    pub fn group(&self) -> CyclicProduct {
        let mut moduli = self.sylow_a.group().moduli;
        moduli.extend(self.sylow_b.group().moduli);
        CyclicProduct::new(moduli)
    }

    pub fn params(&self) -> Params {
        Params {
            p: self.sylow_a.prime,
            q: self.sylow_b.prime,
            n: self.sylow_a.total_exponent(),
            m: self.sylow_b.total_exponent(),
            k: self.sylow_a.rank(),
            l: self.sylow_b.rank(),
            r1: self.sylow_a.top_exponent(),
            t1: self.sylow_b.top_exponent(),
        }
    }

    /// Difference graph is bipartite iff one Sylow part has prime exponent.
    pub fn has_elementary_part(&self) -> bool {
        self.sylow_a.is_elementary() || self.sylow_b.is_elementary()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            a: vec![0; self.sylow_a.exponents.len()],
            b: vec![0; self.sylow_b.exponents.len()],
        }
    }

    pub fn element(&self, a: Vec<u64>, b: Vec<u64>) -> Result<GroupElement> {
        let x = GroupElement { a, b };
        self.check(&x)?;
        Ok(x)
    }

    /// Element at lexicographic index `idx`.
    pub fn element_at(&self, idx: usize) -> GroupElement {
        let k = self.sylow_a.exponents.len();
        let mut c = self.group().decode(idx);
        let b = c.split_off(k);
        GroupElement { a: c, b }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        let ok = |s: &SylowSpec, c: &[u64]| {
            c.len() == s.exponents.len()
                && c.iter()
                    .zip(&s.exponents)
                    .all(|(&v, &e)| v < s.prime.pow(e))
        };
        if ok(&self.sylow_a, &x.a) && ok(&self.sylow_b, &x.b) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(x.to_string()))
        }
    }

    fn flat(&self, x: &GroupElement) -> Result<Vec<u64>> {
        self.check(x)?;
        Ok(x.a.iter().chain(&x.b).copied().collect())
    }

    /// Element order `o(x)`.
    pub fn order_of(&self, x: &GroupElement) -> Result<u64> {
        Ok(self.group().element_order(&self.flat(x)?))
    }

    /// `y ∈ ⟨x⟩`.
    pub fn is_in_cyclic(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let (x, y) = (self.flat(x)?, self.flat(y)?);
        Ok(self.group().is_power(&x, &y))
    }

    /// `x ↠ y`: `y` is a power of `x` but not conversely.
    pub fn strict_power(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(self.is_in_cyclic(x, y)? && !self.is_in_cyclic(y, x)?)
    }

    /// Whether `⟨x, y⟩` is cyclic, by explicit closure.
    pub fn generates_cyclic(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        let (x, y) = (self.flat(x)?, self.flat(y)?);
        Ok(self.group().generates_cyclic(&x, &y))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", self.sylow_a, self.sylow_b)
    }
}

/// Structural parameters of `P × Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub l: u32,
    pub r1: u32,
    pub t1: u32,
}

impl Params {
    /// The same parameters with the roles of the two primes exchanged.
    pub fn swapped(self) -> Params {
        Params {
            p: self.q,
            q: self.p,
            n: self.m,
            m: self.n,
            k: self.l,
            l: self.k,
            r1: self.t1,
            t1: self.r1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&c| c == 0)
    }
}

fn fmt_side(f: &mut fmt::Formatter<'_>, c: &[u64]) -> fmt::Result {
    if c.len() == 1 {
        return write!(f, "{}", c[0]);
    }
    f.write_str("(")?;
    for (i, v) in c.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_side(f, &self.a)?;
        f.write_str(",")?;
        fmt_side(f, &self.b)
    }
}

/// `C_{m_1} × … × C_{m_s}` with elements indexed in mixed radix, first
/// coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicProduct {
    moduli: Vec<u64>,
    order: u64,
}

impl CyclicProduct {
    pub fn new(moduli: Vec<u64>) -> Self {
        let order = moduli.iter().product();
        CyclicProduct { moduli, order }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut c = vec![0; self.moduli.len()];
        for (slot, &m) in c.iter_mut().zip(&self.moduli).rev() {
            *slot = idx as u64 % m;
            idx /= m as usize;
        }
        c
    }

    pub fn encode(&self, c: &[u64]) -> usize {
        c.iter()
            .zip(&self.moduli)
            .fold(0u64, |acc, (&v, &m)| acc * m + v) as usize
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .zip(&self.moduli)
            .map(|((a, b), m)| (a + b) % m)
            .collect()
    }

    pub fn scale(&self, s: u64, x: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(a, m)| (a * (s % m)) % m)
            .collect()
    }

    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| m / gcd(c, m))
            .fold(1, lcm)
    }

    /// Indices of `0, x, 2x, …` up to (excluding) the return to 0.
    pub fn multiples(&self, x: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = vec![0; x.len()];
        loop {
            out.push(self.encode(&cur));
            let mut zero = true;
            for ((c, &d), &m) in cur.iter_mut().zip(x).zip(&self.moduli) {
                *c = (*c + d) % m;
                zero &= *c == 0;
            }
            if zero {
                return out;
            }
        }
    }

    /// `y ∈ ⟨x⟩`, by scanning the multiples of `x`.
    pub fn is_power(&self, x: &[u64], y: &[u64]) -> bool {
        let mut cur = vec![0; x.len()];
        loop {
            if cur == y {
                return true;
            }
            cur = self.add(&cur, x);
            if cur.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }

    /// `⟨x, y⟩` is cyclic iff `|⟨x⟩ + ⟨y⟩| = lcm(o(x), o(y))`.
    pub fn generates_cyclic(&self, x: &[u64], y: &[u64]) -> bool {
        let mx = self.multiples(x);
        let my = self.multiples(y);
        let mut seen = HashSet::new();
        for &i in &mx {
            let xi = self.decode(i);
            for &j in &my {
                seen.insert(self.encode(&self.add(&xi, &self.decode(j))));
            }
        }
        seen.len() as u64 == lcm(mx.len() as u64, my.len() as u64)
    }

    /// Membership table: `row x` holds `⟨x⟩`.
    pub fn power_table(&self) -> BitMatrix {
        let n = self.len();
        let mut t = BitMatrix::new(n);
        for x in 0..n {
            for y in self.multiples(&self.decode(x)) {
                t.set(x, y);
            }
        }
        t
    }
}

/// Generators of maximal cyclic subgroups, `M(S)`, in index order.
///
/// Decided by pairwise scans: `x` is kept when no `z` has `x ∈ ⟨z⟩` with
/// `⟨z⟩` strictly larger.
pub fn maximal_cyclic_generators(s: &SylowSpec) -> Vec<Vec<u64>> {
    let g = s.group();
    let table = g.power_table();
    let n = g.len();
    let orders: Vec<u64> = (0..n).map(|x| table.row_count(x) as u64).collect();
    (0..n)
        .filter(|&x| !(0..n).any(|z| table.get(z, x) && orders[z] > orders[x]))
        .map(|x| g.decode(x))
        .collect()
}

/// Multiset of element orders as `order → count`.
///
/// Elements of order dividing `p^j` number `∏ p^min(r_i, j)`.
pub fn order_counts(s: &SylowSpec) -> BTreeMap<u64, u64> {
    let p = s.prime;
    let dividing = |j: u32| -> u64 { s.exponents.iter().map(|&r| p.pow(r.min(j))).product() };
    let mut counts = BTreeMap::new();
    counts.insert(1, 1);
    for j in 1..=s.top_exponent() {
        counts.insert(p.pow(j), dividing(j) - dividing(j - 1));
    }
    counts
}

/// Element order counts of any finite abelian group, by enumeration.
pub fn order_counts_by_enumeration(g: &CyclicProduct) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    for i in 0..g.len() {
        *counts.entry(g.element_order(&g.decode(i))).or_insert(0) += 1;
    }
    counts
}

/// Rebuilds the exponent partition from element order counts.
///
/// With `s_j` the number of elements of order dividing `p^j`, the number of
/// cyclic factors of exponent at least `j` is `log_p s_j − log_p s_{j−1}`.
pub fn partition_from_order_counts(p: u64, counts: &BTreeMap<u64, u64>) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if counts.get(&1) != Some(&1) {
        return Err(Error::NotRealizable("identity count must be 1".into()));
    }
    let mut by_exp = BTreeMap::new();
    for (&order, &count) in counts {
        let e = exact_log(p, order)
            .ok_or_else(|| Error::NotRealizable(format!("{order} is not a power of {p}")))?;
        if count > 0 {
            by_exp.insert(e, count);
        }
    }
    let top = *by_exp.keys().next_back().unwrap_or(&0);
    if top == 0 {
        return Err(Error::NotRealizable("trivial group".into()));
    }
    let mut cumulative = 0u64;
    let mut prev_log = 0u32;
    let mut at_least = Vec::with_capacity(top as usize);
    for j in 0..=top {
        cumulative = cumulative
            .checked_add(by_exp.get(&j).copied().unwrap_or(0))
            .ok_or_else(|| Error::NotRealizable("count overflow".into()))?;
        let log = exact_log(p, cumulative).ok_or_else(|| {
            Error::NotRealizable(format!("{cumulative} elements of order dividing {p}^{j}"))
        })?;
        if j > 0 {
            if log <= prev_log {
                return Err(Error::NotRealizable(format!(
                    "no new elements of order {p}^{j}"
                )));
            }
            at_least.push(log - prev_log);
        }
        prev_log = log;
    }
    if at_least.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotRealizable("factor counts increase".into()));
    }
    // conjugate partition
    let mut exponents = Vec::new();
    for j in (1..=top).rev() {
        let here = at_least[j as usize - 1] - at_least.get(j as usize).copied().unwrap_or(0);
        exponents.extend(std::iter::repeat_n(j, here as usize));
    }
    let spec = SylowSpec::new(p, exponents.clone())?;
    if &order_counts(&spec) != counts {
        return Err(Error::NotRealizable("round trip mismatch".into()));
    }
    Ok(exponents)
}

/// All partitions of `n` as non-increasing lists, in lexicographically
/// decreasing order (`[n]` first).
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Every canonical two-prime spec with both Sylow parts nontrivial and order
/// at most `max_order`, sorted by `(order, spec)`.
pub fn enumerate_specs(max_order: u64) -> Vec<GroupSpec> {
    let max_order = max_order.min(MAX_ORDER);
    let primes: Vec<u64> = (2..=max_order / 2).filter(|&p| is_prime(p)).collect();
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q > max_order {
                break;
            }
            let mut pn = p;
            let mut n = 1;
            while pn * q <= max_order {
                let mut qm = q;
                let mut m = 1;
                while pn * qm <= max_order {
                    for ea in partitions(n) {
                        for eb in partitions(m) {
                            let a = SylowSpec {
                                prime: p,
                                exponents: ea.clone(),
                            };
                            let b = SylowSpec {
                                prime: q,
                                exponents: eb,
                            };
                            out.push(GroupSpec {
                                sylow_a: a,
                                sylow_b: b,
                            });
                        }
                    }
                    qm *= q;
                    m += 1;
                }
                pn *= p;
                n += 1;
            }
        }
    }
    out.sort_by(|x, y| x.order().cmp(&y.order()).then_with(|| x.cmp(y)));
    out
}

/// Every cyclic subgroup `⟨x⟩` exactly once, as a sorted index set, ordered
/// by `(order, members)`.
pub fn list_cyclic_subgroups(s: &SylowSpec) -> Vec<Vec<usize>> {
    let g = s.group();
    let mut set = BTreeSet::new();
    for x in 0..g.len() {
        let mut m = g.multiples(&g.decode(x));
        m.sort_unstable();
        set.insert((m.len(), m));
    }
    set.into_iter().map(|(_, m)| m).collect()
}

/// Precomputed element data for one Sylow part.
#[derive(Clone, Debug)]
pub struct SylowTables {
    pub spec: SylowSpec,
    pub group: CyclicProduct,
    pub orders: Vec<u64>,
    /// `contains.get(x, y)` iff `y ∈ ⟨x⟩`.
    pub contains: BitMatrix,
    /// `M(S)` membership via the height criterion `x ∉ p·S`.
    pub maximal: Vec<bool>,
}

impl SylowTables {
    pub fn new(spec: &SylowSpec) -> Self {
        let group = spec.group();
        let n = group.len();
        let contains = group.power_table();
        let orders = (0..n).map(|x| contains.row_count(x) as u64).collect();
        let mut maximal = vec![true; n];
        for z in 0..n {
            let pz = group.scale(spec.prime, &group.decode(z));
            maximal[group.encode(&pz)] = false;
        }
        SylowTables {
            spec: spec.clone(),
            group,
            orders,
            contains,
            maximal,
        }
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    /// `x ↠ y`.
    #[inline]
    pub fn strict(&self, x: usize, y: usize) -> bool {
        self.contains.get(x, y) && self.orders[x] > self.orders[y]
    }

    /// `⟨x⟩ = ⟨y⟩`.
    #[inline]
    pub fn same_cyclic(&self, x: usize, y: usize) -> bool {
        self.contains.get(x, y) && self.orders[x] == self.orders[y]
    }

    /// `log_p o(x)`.
    pub fn height(&self, x: usize) -> u32 {
        exact_log(self.spec.prime, self.orders[x]).unwrap_or(0)
    }

    /// `|⟨x⟩ ∩ ⟨y⟩|`.
    pub fn meet_order(&self, x: usize, y: usize) -> usize {
        self.contains
            .row(x)
            .iter()
            .zip(self.contains.row(y))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}
