//! Marked posets, their order and chain polytopes, and the transfer map
//! between lattice points of the two.
//!
//! The marked order polytope of `(P, λ)` is the set of `x : P → Z` with
//! `x_a = λ(a)` on marked elements and `x_p ≤ x_q` whenever `p ≤ q`. The marked
//! chain polytope is the set of `y ≥ 0` on unmarked elements such that for
//! every saturated chain `a ⋖ p_1 ⋖ ... ⋖ p_k ⋖ b` with `a`, `b` marked and all
//! `p_i` unmarked, `y_{p_1} + ... + y_{p_k} ≤ λ(b) − λ(a)`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{LatticePoint, PointSet, RowWalker};
use crate::rootsys::{build_poset, DominantWeight, Family, RootLabel};
use crate::Verdict;

#[derive(Clone, Debug)]
pub struct MarkedPoset {
    names: Vec<String>,
    marking: Vec<Option<i64>>,
    covers: Vec<(usize, usize)>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    /// `below[a][b]` iff `a < b`
    below: Vec<Vec<bool>>,
    /// a linear extension
    order: Vec<usize>,
}

impl MarkedPoset {
    /// Builds the poset generated by `relations` (pairs `a < b`, not
    /// necessarily covers). Fails on cycles and on markings that are not
    /// order preserving.
    pub fn new(
        names: Vec<String>,
        relations: &[(usize, usize)],
        marking: Vec<Option<i64>>,
    ) -> Result<Self> {
        let len = names.len();
        assert_eq!(marking.len(), len, "one marking slot per element");
        let mut succ = vec![Vec::new(); len];
        let mut indeg = vec![0usize; len];
        for &(a, b) in relations {
            if a >= len || b >= len {
                return Err(Error::UnknownElement(a.max(b)));
            }
            if a == b {
                return Err(Error::Cycle(names[a].clone(), names[b].clone()));
            }
            succ[a].push(b);
            indeg[b] += 1;
        }

        // Kahn's algorithm, smallest index first for determinism
        let mut ready: std::collections::BTreeSet<usize> =
            (0..len).filter(|&k| indeg[k] == 0).collect();
        let mut order = Vec::with_capacity(len);
        while let Some(k) = ready.pop_first() {
            order.push(k);
            for &b in &succ[k] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    ready.insert(b);
                }
            }
        }
        if order.len() != len {
            let (a, b) = relations
                .iter()
                .find(|(a, b)| !order.contains(a) && !order.contains(b))
                .copied()
                .unwrap_or(relations[0]);
            return Err(Error::Cycle(names[a].clone(), names[b].clone()));
        }

        let mut below = vec![vec![false; len]; len];
        for &a in order.iter().rev() {
            for &b in &succ[a] {
                below[a][b] = true;
                let reach = below[b].clone();
                for (slot, r) in below[a].iter_mut().zip(reach) {
                    *slot |= r;
                }
            }
        }

        let mut covers = Vec::new();
        for a in 0..len {
            for b in 0..len {
                if below[a][b] && !(0..len).any(|c| below[a][c] && below[c][b]) {
                    covers.push((a, b));
                }
            }
        }
        let mut lower = vec![Vec::new(); len];
        let mut upper = vec![Vec::new(); len];
        for &(a, b) in &covers {
            upper[a].push(b);
            lower[b].push(a);
        }

        for a in 0..len {
            for b in 0..len {
                if let (true, Some(x), Some(y)) = (below[a][b], marking[a], marking[b]) {
                    if x > y {
                        return Err(Error::InconsistentMarking {
                            low: names[a].clone(),
                            low_value: x,
                            high: names[b].clone(),
                            high_value: y,
                        });
                    }
                }
            }
        }

        Ok(MarkedPoset { names, marking, covers, lower, upper, below, order })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn marking(&self, k: usize) -> Option<i64> {
        self.marking[k]
    }

    pub fn is_marked(&self, k: usize) -> bool {
        self.marking[k].is_some()
    }

    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }

    pub fn lower_covers(&self, k: usize) -> &[usize] {
        &self.lower[k]
    }

    pub fn upper_covers(&self, k: usize) -> &[usize] {
        &self.upper[k]
    }

    /// Unmarked elements in element order; the coordinates of chain points.
    pub fn unmarked(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| !self.is_marked(k)).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Every minimal and maximal element must be marked for the polytopes to
    /// be bounded.
    pub fn check_bounded(&self) -> Result<()> {
        for k in 0..self.len() {
            let extremal = self.lower[k].is_empty() || self.upper[k].is_empty();
            if extremal && !self.is_marked(k) {
                return Err(Error::UnboundedElement(self.names[k].clone()));
            }
        }
        Ok(())
    }

    /// Saturated chains `a ⋖ p_1 ⋖ ... ⋖ p_k ⋖ b` with `k ≥ 1`, marked ends
    /// and unmarked interior, as (interior, `λ(b) − λ(a)`).
    pub fn chain_constraints(&self) -> Vec<(Vec<usize>, i64)> {
        fn extend(
            p: &MarkedPoset,
            start: i64,
            stack: &mut Vec<usize>,
            out: &mut Vec<(Vec<usize>, i64)>,
        ) {
            let last = *stack.last().unwrap();
            for &next in &p.upper[last] {
                match p.marking[next] {
                    Some(top) => out.push((stack.clone(), top - start)),
                    None => {
                        stack.push(next);
                        extend(p, start, stack, out);
                        stack.pop();
                    }
                }
            }
        }

        let mut out = Vec::new();
        for a in 0..self.len() {
            let Some(start) = self.marking[a] else { continue };
            for &first in &self.upper[a] {
                if !self.is_marked(first) {
                    extend(self, start, &mut vec![first], &mut out);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let markings: BTreeMap<&str, i64> = (0..self.len())
            .filter_map(|k| self.marking[k].map(|v| (self.names[k].as_str(), v)))
            .collect();
        serde_json::json!({
            "elements": self.names,
            "covers": self.covers,
            "markings": markings,
        })
    }
}

/// A lattice point of the marked order polytope, one entry per element
/// (marked entries equal their markings).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OrderPoint(pub Vec<i64>);

/// Upper cap of each element: the least marking reachable upward.
fn upward_caps(p: &MarkedPoset) -> Vec<i64> {
    let mut cap = vec![i64::MAX; p.len()];
    for &k in p.order.iter().rev() {
        cap[k] = match p.marking[k] {
            Some(v) => v,
            None => p.upper[k].iter().map(|&c| cap[c]).min().unwrap_or(i64::MAX),
        };
    }
    cap
}

/// All lattice points of the marked order polytope, lexicographically sorted.
pub fn order_points(p: &MarkedPoset) -> Result<Vec<OrderPoint>> {
    p.check_bounded()?;
    let caps = upward_caps(p);
    let free: Vec<usize> = p.order.iter().copied().filter(|&k| !p.is_marked(k)).collect();
    let mut x: Vec<i64> = (0..p.len()).map(|k| p.marking[k].unwrap_or(0)).collect();

    fn walk(
        p: &MarkedPoset,
        caps: &[i64],
        free: &[usize],
        depth: usize,
        x: &mut Vec<i64>,
        out: &mut Vec<OrderPoint>,
    ) {
        if depth == free.len() {
            out.push(OrderPoint(x.clone()));
            return;
        }
        let k = free[depth];
        let lo = p.lower[k].iter().map(|&q| x[q]).max().expect("bounded below");
        for v in lo..=caps[k] {
            x[k] = v;
            walk(p, caps, free, depth + 1, x, out);
        }
    }

    let mut out = Vec::new();
    walk(p, &caps, &free, 0, &mut x, &mut out);
    out.sort();
    Ok(out)
}

fn chain_walker(p: &MarkedPoset) -> Result<Option<RowWalker>> {
    p.check_bounded()?;
    let unmarked = p.unmarked();
    let mut slot = vec![usize::MAX; p.len()];
    for (i, &k) in unmarked.iter().enumerate() {
        slot[k] = i;
    }
    let mut rows = Vec::new();
    for (support, bound) in p.chain_constraints() {
        if bound < 0 {
            return Ok(None);
        }
        rows.push((support.iter().map(|&k| slot[k]).collect(), bound as u64));
    }
    Ok(Some(RowWalker::new(unmarked.len(), &rows).expect("bounded poset")))
}

/// All lattice points of the marked chain polytope, over
/// [`MarkedPoset::unmarked`] coordinates.
pub fn chain_points(p: &MarkedPoset) -> Result<PointSet> {
    Ok(match chain_walker(p)? {
        Some(w) => w.enumerate(),
        None => PointSet::default(),
    })
}

pub fn chain_point_count(p: &MarkedPoset) -> Result<u64> {
    Ok(chain_walker(p)?.map_or(0, |w| w.count()))
}

pub fn chain_contains(p: &MarkedPoset, y: &[u32]) -> bool {
    let unmarked = p.unmarked();
    if y.len() != unmarked.len() {
        return false;
    }
    let value = |k: usize| y[unmarked.iter().position(|&u| u == k).unwrap()] as i64;
    p.chain_constraints()
        .iter()
        .all(|(support, bound)| support.iter().map(|&k| value(k)).sum::<i64>() <= *bound)
}

fn in_order_polytope(p: &MarkedPoset, x: &OrderPoint) -> bool {
    x.0.len() == p.len()
        && (0..p.len()).all(|k| p.marking[k].is_none_or(|v| v == x.0[k]))
        && p.covers.iter().all(|&(a, b)| x.0[a] <= x.0[b])
}

/// `y_p = x_p − max{x_q : q ⋖ p}` on unmarked `p`.
pub fn transfer(p: &MarkedPoset, x: &OrderPoint) -> Result<LatticePoint> {
    if !in_order_polytope(p, x) {
        return Err(Error::NotInOrderPolytope);
    }
    p.unmarked()
        .into_iter()
        .map(|k| {
            let base = p.lower[k]
                .iter()
                .map(|&q| x.0[q])
                .max()
                .ok_or_else(|| Error::UnboundedElement(p.names[k].clone()))?;
            Ok((x.0[k] - base) as u32)
        })
        .collect::<Result<Vec<u32>>>()
        .map(LatticePoint)
}

/// Brute-force check that [`transfer`] maps order points bijectively onto
/// chain points.
pub fn abs_verify(p: &MarkedPoset) -> Result<Verdict> {
    let order = order_points(p)?;
    let chain = chain_points(p)?;
    let mut image = HashSet::with_capacity(order.len());
    for x in &order {
        let y = transfer(p, x)?;
        if !chain.contains(&y) {
            return Ok(Verdict::fail(
                "image_outside_chain_polytope",
                serde_json::json!({ "order_point": x, "image": y }),
            ));
        }
        if !image.insert(y.clone()) {
            return Ok(Verdict::fail(
                "not_injective",
                serde_json::json!({ "order_point": x, "image": y }),
            ));
        }
    }
    if let Some(y) = chain.iter().find(|y| !image.contains(*y)) {
        return Ok(Verdict::fail("not_surjective", serde_json::json!({ "chain_point": y })));
    }
    Ok(Verdict::Pass)
}

/// The root poset with marked leaves attached so that marked-to-marked
/// saturated chains are exactly the Dyck paths:
/// `t_i ⋖` (row-`i` initial root) marked `m_1 + ... + m_{i−1}`,
/// `α_{j,j} ⋖ u_j` marked `m_1 + ... + m_j`,
/// `α_{j,j̄} ⋖ v_j` marked `m_1 + ... + m_n`.
///
/// Unmarked elements come first, in canonical root order.
pub fn fflv_marked_poset(family: Family, n: usize, lambda: &DominantWeight) -> Result<MarkedPoset> {
    let poset = build_poset(family, n)?;
    lambda.check_rank(n)?;
    let mut names: Vec<String> = poset.labels().iter().map(|l| format!("a{l}")).collect();
    let mut marking: Vec<Option<i64>> = vec![None; poset.len()];
    let mut relations: Vec<(usize, usize)> = poset.covers().to_vec();
    let prefix = |j: usize| lambda.range_sum(1, j) as i64;

    for i in 1..=n {
        let start = if family == Family::Even && i == n {
            RootLabel::bar(n, n)
        } else {
            RootLabel::plain(i, i)
        };
        names.push(format!("t{i}"));
        marking.push(Some(prefix(i - 1)));
        relations.push((names.len() - 1, poset.index_of(&start).unwrap()));
    }
    for j in 1..=n {
        if let Some(k) = poset.index_of(&RootLabel::plain(j, j)) {
            names.push(format!("u{j}"));
            marking.push(Some(prefix(j)));
            relations.push((k, names.len() - 1));
        }
    }
    for j in 1..=n {
        names.push(format!("v{j}"));
        marking.push(Some(prefix(n)));
        relations.push((poset.index_of(&RootLabel::bar(j, j)).unwrap(), names.len() - 1));
    }
    MarkedPoset::new(names, &relations, marking)
}

/// Where the extra element of the `n = 1` family is attached to the
/// Gelfand–Tsetlin poset of `gl(k)`. Entries are `x_{r,c}` with `r` the row
/// (row 1 is the single bottom entry) and `1 ≤ c ≤ r ≤ k−1`; the marked top
/// row is `λ_1 ≥ ... ≥ λ_k = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Attachment {
    /// `λ_k ≤ y ≤ λ_1`, unrelated to the pattern entries
    Parallel,
    /// `λ_k ≤ y ≤ x_{r,c}`
    Below { row: usize, col: usize },
    /// `x_{r,c} ≤ y ≤ λ_1`
    Above { row: usize, col: usize },
}

impl Attachment {
    /// All candidates defined for some `k ≤ k_max`.
    pub fn candidates(k_max: usize) -> Vec<Attachment> {
        let mut out = vec![Attachment::Parallel];
        for row in 1..k_max {
            for col in 1..=row {
                out.push(Attachment::Below { row, col });
                out.push(Attachment::Above { row, col });
            }
        }
        out
    }

    /// Defined for `k ≥ 2`; at `k = 1` the marked top row is a single
    /// element and there is nothing to attach to.
    pub fn applies_to(&self, k: usize) -> bool {
        k >= 2
            && match *self {
                Attachment::Parallel => true,
                Attachment::Below { row, .. } | Attachment::Above { row, .. } => row < k,
            }
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attachment::Parallel => f.write_str("parallel"),
            Attachment::Below { row, col } => write!(f, "below:x{row},{col}"),
            Attachment::Above { row, col } => write!(f, "above:x{row},{col}"),
        }
    }
}

impl FromStr for Attachment {
    type Err = Error;

    /// `parallel`, `below:xR,C`, `above:xR,C`; `below-first`/`above-first`
    /// name the bottom entry `x1,1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAttachment(s.to_string());
        match s {
            "parallel" => return Ok(Attachment::Parallel),
            "below-first" => return Ok(Attachment::Below { row: 1, col: 1 }),
            "above-first" => return Ok(Attachment::Above { row: 1, col: 1 }),
            _ => {}
        }
        let (kind, entry) = s.split_once(":x").ok_or_else(bad)?;
        let (r, c) = entry.split_once(',').ok_or_else(bad)?;
        let row: usize = r.parse().map_err(|_| bad())?;
        let col: usize = c.parse().map_err(|_| bad())?;
        if row < 1 || col < 1 || col > row {
            return Err(bad());
        }
        match kind {
            "below" => Ok(Attachment::Below { row, col }),
            "above" => Ok(Attachment::Above { row, col }),
            _ => Err(bad()),
        }
    }
}

/// Gelfand–Tsetlin marked poset of `gl(k)` for `λ = Σ_{i<k} m_i ω_i` with one
/// extra unmarked element `y` at `attachment`.
pub fn n1_family_poset(k: usize, m: &[u32], attachment: Attachment) -> Result<MarkedPoset> {
    if k < 1 {
        return Err(Error::InvalidRank(k));
    }
    if m.len() != k - 1 {
        return Err(Error::WeightLength { expected: k - 1, got: m.len() });
    }
    if !attachment.applies_to(k) {
        return Err(Error::InvalidAttachment(format!("{attachment} (k = {k})")));
    }

    let mut names = Vec::new();
    let mut marking = Vec::new();
    let mut entry = BTreeMap::new();
    for row in 1..k {
        for col in 1..=row {
            entry.insert((row, col), names.len());
            names.push(format!("x{row},{col}"));
            marking.push(None);
        }
    }
    let mut lam = vec![0i64; k];
    for c in (0..k - 1).rev() {
        lam[c] = lam[c + 1] + m[c] as i64;
    }
    for (c, &v) in lam.iter().enumerate() {
        entry.insert((k, c + 1), names.len());
        names.push(format!("l{}", c + 1));
        marking.push(Some(v));
    }

    // x_{r+1,c+1} ≤ x_{r,c} ≤ x_{r+1,c}
    let mut relations = Vec::new();
    for row in 1..k {
        for col in 1..=row {
            let here = entry[&(row, col)];
            relations.push((here, entry[&(row + 1, col)]));
            relations.push((entry[&(row + 1, col + 1)], here));
        }
    }

    let extra = names.len();
    names.push("y".to_string());
    marking.push(None);
    let (bottom, top) = (entry[&(k, k)], entry[&(k, 1)]);
    match attachment {
        Attachment::Parallel => relations.extend([(bottom, extra), (extra, top)]),
        Attachment::Below { row, col } => {
            relations.extend([(bottom, extra), (extra, entry[&(row, col)])])
        }
        Attachment::Above { row, col } => {
            relations.extend([(entry[&(row, col)], extra), (extra, top)])
        }
    }
    MarkedPoset::new(names, &relations, marking)
}

/// `((k + Σ i·m_i)/k) · Π_{i≤j} (m_i + ... + m_j + j − i + 1)/(j − i + 1)` for
/// `m` of length `k − 1`.
pub fn n1_formula(k: usize, m: &[u32]) -> Result<BigRational> {
    if k < 1 {
        return Err(Error::InvalidRank(k));
    }
    if m.len() != k - 1 {
        return Err(Error::WeightLength { expected: k - 1, got: m.len() });
    }
    let int = |v: i64| BigRational::from_integer(BigInt::from(v));
    let weighted: i64 = m.iter().enumerate().map(|(i, &x)| (i as i64 + 1) * x as i64).sum();
    let mut value = int(k as i64 + weighted) / int(k as i64);
    for i in 0..m.len() {
        let mut run = 0i64;
        for (len, &mj) in (1i64..).zip(&m[i..]) {
            run += mj as i64;
            value *= int(run + len) / int(len);
        }
    }
    Ok(value)
}

#[derive(Clone, Debug, Serialize)]
pub struct AttachmentReport {
    pub attachment: String,
    pub ks: Vec<usize>,
    pub instances: usize,
    pub passed: bool,
    pub first_mismatch: Option<serde_json::Value>,
}

fn weight_grid(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (0..=max).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

/// Compares chain-point counts of every attachment candidate with
/// [`n1_formula`] for `k ≤ k_max` and `m_i ≤ m_max`.
pub fn n1_report(k_max: usize, m_max: u32) -> Result<Vec<AttachmentReport>> {
    let mut reports = Vec::new();
    for attachment in Attachment::candidates(k_max) {
        let mut report = AttachmentReport {
            attachment: attachment.to_string(),
            ks: Vec::new(),
            instances: 0,
            passed: true,
            first_mismatch: None,
        };
        for k in (1..=k_max).filter(|&k| attachment.applies_to(k)) {
            report.ks.push(k);
            for m in weight_grid(k - 1, m_max) {
                let count = chain_point_count(&n1_family_poset(k, &m, attachment)?)?;
                let formula = n1_formula(k, &m)?;
                report.instances += 1;
                if BigRational::from_integer(BigInt::from(count)) != formula && report.passed {
                    report.passed = false;
                    report.first_mismatch = Some(serde_json::json!({
                        "k": k, "m": m, "count": count, "formula": formula.to_string(),
                    }));
                }
            }
        }
        reports.push(report);
    }
    Ok(reports)
}

/// Random marked poset with at most `max_len` elements, all extremal
/// elements marked, markings in `0..=max_marking` and order preserving.
pub fn random_marked_poset<R: Rng>(rng: &mut R, max_len: usize, max_marking: i64) -> MarkedPoset {
    let len = rng.gen_range(1..=max_len);
    let names: Vec<String> = (0..len).map(|k| format!("p{k}")).collect();
    let mut relations = Vec::new();
    for a in 0..len {
        for b in a + 1..len {
            if rng.gen_bool(0.35) {
                relations.push((a, b));
            }
        }
    }
    let bare = MarkedPoset::new(names.clone(), &relations, vec![None; len])
        .expect("index order is a linear extension");
    let mut marking: Vec<Option<i64>> = vec![None; len];
    for k in 0..len {
        let extremal = bare.lower[k].is_empty() || bare.upper[k].is_empty();
        if extremal || rng.gen_bool(0.25) {
            let floor = (0..k)
                .filter(|&j| bare.below[j][k])
                .filter_map(|j| marking[j])
                .max()
                .unwrap_or(0);
            marking[k] = Some(rng.gen_range(floor..=max_marking));
        }
    }
    MarkedPoset::new(names, &relations, marking).expect("markings increase along the order")
}

/// Integer value of [`n1_formula`], if it is integral.
pub fn n1_formula_integer(k: usize, m: &[u32]) -> Result<Option<BigInt>> {
    let v = n1_formula(k, m)?;
    Ok(if v.is_integer() { Some(v.to_integer()) } else { None })
}
