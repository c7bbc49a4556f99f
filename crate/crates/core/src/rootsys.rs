//! Positive-root posets of `sp(2n)` and `sp(2n+1)`, symplectic Dyck paths and
//! weight arithmetic.
//!
//! Roots are labelled `(i, c)` where `c` runs through the column alphabet
//! `1 < 2 < ... < n < n̄ < ... < 1̄`. The even family has no column `n` (the
//! root `α_{i,n}` is reserved for the odd family, where it equals
//! `α_i + ... + α_n − α̃_{n+1}`).
//!
//! Weights are integer vectors over `(ε_1, ..., ε_n, ε_0)`, with `ε_0` the
//! `gl(1)` direction. Simple roots expand as `α_k = ε_k − ε_{k+1}` for `k < n`,
//! `α_n = 2ε_n` and `α̃_{n+1} = ε_0 + ε_n`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `sp(2n)`
    Even,
    /// `sp(2n+1)`
    Odd,
}

impl Family {
    /// Number of positive roots (coordinates of the polytope).
    pub fn root_count(self, n: usize) -> usize {
        match self {
            Family::Even => n * n,
            Family::Odd => n * (n + 1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Even => "even",
            Family::Odd => "odd",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Family::Even),
            "odd" => Ok(Family::Odd),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// A letter of the column alphabet `1 < 2 < ... < n < n̄ < ... < 1̄`.
///
/// The order does not depend on `n`: every plain column precedes every barred
/// column, plain columns ascend and barred columns descend by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    Plain(usize),
    Bar(usize),
}

impl Column {
    pub fn index(self) -> usize {
        match self {
            Column::Plain(j) | Column::Bar(j) => j,
        }
    }

    pub fn is_bar(self) -> bool {
        matches!(self, Column::Bar(_))
    }

    /// Position in the alphabet for rank `n`, starting at 1 for column `1`.
    pub fn rank(self, n: usize) -> usize {
        match self {
            Column::Plain(j) => j,
            Column::Bar(j) => 2 * n + 1 - j,
        }
    }
}

impl Ord for Column {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Column::Plain(a), Column::Plain(b)) => a.cmp(b),
            (Column::Bar(a), Column::Bar(b)) => b.cmp(a),
            (Column::Plain(_), Column::Bar(_)) => Ordering::Less,
            (Column::Bar(_), Column::Plain(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Column {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Plain(j) => write!(f, "{j}"),
            Column::Bar(j) => write!(f, "{j}bar"),
        }
    }
}

impl FromStr for Column {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (digits, bar) = match s.strip_suffix("bar") {
            Some(d) => (d, true),
            None => (s, false),
        };
        let j: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad column `{s}`")))?;
        Ok(if bar { Column::Bar(j) } else { Column::Plain(j) })
    }
}

/// Label `(row, col)` of a positive root. The derived order is the canonical
/// root order: row-major, columns in alphabet order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootLabel {
    pub row: usize,
    pub col: Column,
}

impl RootLabel {
    pub const fn plain(row: usize, col: usize) -> Self {
        RootLabel { row, col: Column::Plain(col) }
    }

    pub const fn bar(row: usize, col: usize) -> Self {
        RootLabel { row, col: Column::Bar(col) }
    }

    pub fn is_valid(&self, family: Family, n: usize) -> bool {
        let (i, j) = (self.row, self.col.index());
        if i < 1 || i > j || j > n {
            return false;
        }
        match (family, self.col) {
            (_, Column::Bar(_)) => true,
            (Family::Odd, Column::Plain(_)) => true,
            (Family::Even, Column::Plain(_)) => j < n,
        }
    }

    /// Whether a Dyck path may start here: `α_{i,i}`, or `α_{n,n̄}` in the
    /// even family where `α_{n,n}` does not exist.
    pub fn is_path_start(&self, family: Family, n: usize) -> bool {
        match self.col {
            Column::Plain(j) => j == self.row,
            Column::Bar(j) => family == Family::Even && j == n && self.row == n,
        }
    }

    /// Whether a Dyck path may end here, and with which end class.
    pub fn end_class(&self) -> Option<EndClass> {
        match self.col {
            Column::Plain(j) if j == self.row => Some(EndClass::Diagonal),
            Column::Bar(j) if j == self.row => Some(EndClass::Barred),
            _ => None,
        }
    }

    /// Coordinates over `(α_1, ..., α_n, α̃_{n+1})`.
    pub fn alpha_coords(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n + 1];
        let i = self.row;
        match self.col {
            Column::Plain(j) if j < n => {
                for k in i..=j {
                    v[k - 1] += 1;
                }
            }
            Column::Plain(_) => {
                for k in i..=n {
                    v[k - 1] += 1;
                }
                v[n] -= 1;
            }
            Column::Bar(j) => {
                for k in i..=n {
                    v[k - 1] += 1;
                }
                for k in j..n {
                    v[k - 1] += 1;
                }
            }
        }
        v
    }

    /// ε-coordinates, obtained by expanding the α-decomposition.
    pub fn eps(&self, n: usize) -> Weight {
        let alpha = self.alpha_coords(n);
        let mut w = Weight::zero(n);
        for (k, &c) in alpha.iter().enumerate() {
            if c != 0 {
                w = w + simple_root_eps(n, k + 1).scale(c);
            }
        }
        w
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

impl FromStr for RootLabel {
    type Err = Error;

    /// Parses `"i,j"` or `"i,jbar"`.
    fn from_str(s: &str) -> Result<Self> {
        let (row, col) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad root label `{s}`")))?;
        let row = row
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad root label `{s}`")))?;
        Ok(RootLabel { row, col: col.trim().parse()? })
    }
}

impl Serialize for RootLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("RootLabel", 2)?;
        st.serialize_field("row", &self.row)?;
        st.serialize_field("col", &self.col.to_string())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RootLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            row: usize,
            col: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let col = raw.col.parse().map_err(de::Error::custom)?;
        Ok(RootLabel { row: raw.row, col })
    }
}

/// ε-vector of the simple root with index `k` in `1..=n+1`, where `n+1`
/// stands for `α̃_{n+1}`.
pub fn simple_root_eps(n: usize, k: usize) -> Weight {
    let mut w = Weight::zero(n);
    match k {
        k if k < n => {
            w.0[k - 1] = 1;
            w.0[k] = -1;
        }
        k if k == n => w.0[n - 1] = 2,
        _ => {
            w.0[n] = 1;
            w.0[n - 1] += 1;
        }
    }
    w
}

/// Integer weight over `(ε_1, ..., ε_n, ε_0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n + 1])
    }

    pub fn scale(&self, c: i64) -> Self {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for Weight {
    type Output = Weight;

    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

/// Dominant weight `m_1 ω_1 + ... + m_n ω_n` in fundamental coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DominantWeight {
    m: Vec<u32>,
}

impl DominantWeight {
    pub fn new(m: Vec<u32>) -> Self {
        DominantWeight { m }
    }

    pub fn zero(n: usize) -> Self {
        DominantWeight { m: vec![0; n] }
    }

    /// `ω_i` for rank `n` (1-based `i`).
    pub fn fundamental(n: usize, i: usize) -> Self {
        let mut m = vec![0; n];
        m[i - 1] = 1;
        DominantWeight { m }
    }

    /// Inverse of [`DominantWeight::partition`]. Fails unless the input is
    /// weakly decreasing and nonnegative.
    pub fn from_partition(parts: &[i64]) -> Result<Self> {
        let mut m = Vec::with_capacity(parts.len());
        for (k, &p) in parts.iter().enumerate() {
            let next = parts.get(k + 1).copied().unwrap_or(0);
            if p < next || next < 0 {
                return Err(Error::NotDominant(parts.to_vec()));
            }
            m.push((p - next) as u32);
        }
        Ok(DominantWeight { m })
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.m
    }

    /// `λ_i = m_i + ... + m_n`.
    pub fn partition(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.m.len()];
        let mut acc = 0i64;
        for k in (0..self.m.len()).rev() {
            acc += self.m[k] as i64;
            out[k] = acc;
        }
        out
    }

    /// `m_from + ... + m_to` with 1-based inclusive bounds.
    pub fn range_sum(&self, from: usize, to: usize) -> u64 {
        if from > to {
            return 0;
        }
        self.m[from - 1..to].iter().map(|&x| x as u64).sum()
    }

    pub fn scale(&self, t: u32) -> Self {
        DominantWeight { m: self.m.iter().map(|x| x * t).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().all(|&x| x == 0)
    }

    /// Componentwise `self ≤ other` in fundamental coordinates.
    pub fn le(&self, other: &DominantWeight) -> bool {
        self.m.len() == other.m.len() && self.m.iter().zip(&other.m).all(|(a, b)| a <= b)
    }

    /// Appends zero coordinates up to rank `n`.
    pub fn extend_to(&self, n: usize) -> Self {
        let mut m = self.m.clone();
        m.resize(n.max(m.len()), 0);
        DominantWeight { m }
    }

    pub(crate) fn check_rank(&self, n: usize) -> Result<()> {
        if self.m.len() != n {
            return Err(Error::WeightLength { expected: n, got: self.m.len() });
        }
        Ok(())
    }
}

impl Add for &DominantWeight {
    type Output = DominantWeight;

    fn add(self, rhs: &DominantWeight) -> DominantWeight {
        DominantWeight { m: self.m.iter().zip(&rhs.m).map(|(a, b)| a + b).collect() }
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for DominantWeight {
    type Err = Error;

    /// Comma-separated fundamental coordinates, e.g. `"1,0,2"`.
    fn from_str(s: &str) -> Result<Self> {
        let m = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad weight entry `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DominantWeight { m })
    }
}

/// ε-coordinates of a dominant weight: `ω_i = ε_1 + ... + ε_i`, `ε_0`
/// component zero.
pub fn fundamental_to_eps(lambda: &DominantWeight) -> Weight {
    let mut eps = lambda.partition();
    eps.push(0);
    Weight(eps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub label: RootLabel,
    pub alpha: Vec<i64>,
    pub eps: Weight,
}

/// The positive-root poset of one family and rank, elements in canonical
/// order.
#[derive(Clone, Debug)]
pub struct RootPoset {
    family: Family,
    n: usize,
    roots: Vec<Root>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    index: HashMap<RootLabel, usize>,
}

/// All valid labels of a family and rank in canonical order.
pub fn root_labels(family: Family, n: usize) -> Vec<RootLabel> {
    let mut out = Vec::with_capacity(family.root_count(n));
    for i in 1..=n {
        let last_plain = match family {
            Family::Odd => n,
            Family::Even => n - 1,
        };
        for j in i..=last_plain {
            out.push(RootLabel::plain(i, j));
        }
        for j in (i..=n).rev() {
            out.push(RootLabel::bar(i, j));
        }
    }
    out
}

pub fn build_poset(family: Family, n: usize) -> Result<RootPoset> {
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    let labels = root_labels(family, n);
    let index: HashMap<RootLabel, usize> =
        labels.iter().enumerate().map(|(k, l)| (*l, k)).collect();
    let roots: Vec<Root> = labels
        .iter()
        .map(|&label| Root { label, alpha: label.alpha_coords(n), eps: label.eps(n) })
        .collect();

    let mut covers = Vec::new();
    for (a, la) in labels.iter().enumerate() {
        // next column in the same row
        if let Some(&b) = labels
            .get(a + 1)
            .filter(|lb| lb.row == la.row)
            .and_then(|lb| index.get(lb))
        {
            covers.push((a, b));
        }
        // same column, next row
        let below = RootLabel { row: la.row + 1, col: la.col };
        if let Some(&b) = index.get(&below) {
            covers.push((a, b));
        }
    }
    covers.sort_unstable();

    let mut upper = vec![Vec::new(); labels.len()];
    let mut lower = vec![Vec::new(); labels.len()];
    for &(a, b) in &covers {
        upper[a].push(b);
        lower[b].push(a);
    }
    Ok(RootPoset { family, n, roots, covers, upper, lower, index })
}

impl RootPoset {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn labels(&self) -> Vec<RootLabel> {
        self.roots.iter().map(|r| r.label).collect()
    }

    pub fn label(&self, idx: usize) -> RootLabel {
        self.roots[idx].label
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, idx: usize) -> &[usize] {
        &self.upper[idx]
    }

    pub fn lower_covers(&self, idx: usize) -> &[usize] {
        &self.lower[idx]
    }

    pub fn index_of(&self, label: &RootLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper[a].contains(&b)
    }

    /// Index of the root with the given ε-vector, if any.
    pub fn find_eps(&self, eps: &Weight) -> Option<usize> {
        self.roots.iter().position(|r| &r.eps == eps)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family,
            "n": self.n,
            "elements": self.labels(),
            "covers": self.covers,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EndClass {
    Diagonal,
    Barred,
}

/// A symplectic Dyck path: a saturated chain from a row-initial root to some
/// `α_{j,j}` or `α_{j,j̄}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DyckPath {
    pub roots: Vec<RootLabel>,
    #[serde(skip)]
    pub indices: Vec<usize>,
    pub end_class: EndClass,
}

impl DyckPath {
    pub fn start(&self) -> RootLabel {
        self.roots[0]
    }

    pub fn end(&self) -> RootLabel {
        *self.roots.last().expect("paths are nonempty")
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, label: &RootLabel) -> bool {
        self.roots.contains(label)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "start": self.start(),
            "end": self.end(),
            "end_class": self.end_class,
            "roots": self.roots,
        })
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|l| format!("({l})")).collect();
        f.write_str(&parts.join(" -> "))
    }
}

/// All symplectic Dyck paths, ordered by start row and then lexicographically
/// by label sequence.
pub fn dyck_paths(poset: &RootPoset) -> Vec<DyckPath> {
    fn walk(poset: &RootPoset, stack: &mut Vec<usize>, out: &mut Vec<DyckPath>) {
        let last = *stack.last().unwrap();
        let label = poset.label(last);
        if let Some(end_class) = label.end_class() {
            out.push(DyckPath {
                roots: stack.iter().map(|&k| poset.label(k)).collect(),
                indices: stack.clone(),
                end_class,
            });
        }
        for &next in poset.upper_covers(last) {
            stack.push(next);
            walk(poset, stack, out);
            stack.pop();
        }
    }

    let (family, n) = (poset.family, poset.n);
    let mut out = Vec::new();
    for (k, root) in poset.roots.iter().enumerate() {
        if root.label.is_path_start(family, n) {
            walk(poset, &mut vec![k], &mut out);
        }
    }
    out.sort_by(|a, b| a.roots.cmp(&b.roots));
    out
}

/// Right-hand side of the path inequality: `m_i + ... + m_j` for a diagonal
/// end `α_{j,j}`, `m_i + ... + m_n` for a barred end, with `i` the start row.
pub fn path_bound(path: &DyckPath, lambda: &DominantWeight) -> u64 {
    let i = path.start().row;
    match path.end_class {
        EndClass::Diagonal => lambda.range_sum(i, path.end().col.index()),
        EndClass::Barred => lambda.range_sum(i, lambda.rank()),
    }
}

/// `wt(s) = Σ s_α α` in ε-coordinates and `deg(s) = Σ s_α`.
pub fn wt_deg(poset: &RootPoset, s: &[u32]) -> (Weight, u64) {
    debug_assert_eq!(s.len(), poset.len());
    let mut wt = Weight::zero(poset.n);
    let mut deg = 0u64;
    for (root, &c) in poset.roots.iter().zip(s) {
        if c != 0 {
            for (w, e) in wt.0.iter_mut().zip(&root.eps.0) {
                *w += e * c as i64;
            }
            deg += c as u64;
        }
    }
    (wt, deg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_counts() {
        assert_eq!(build_poset(Family::Odd, 2).unwrap().len(), 6);
        assert_eq!(build_poset(Family::Even, 2).unwrap().len(), 4);
        for n in 1..=6 {
            assert_eq!(build_poset(Family::Even, n).unwrap().len(), n * n);
            assert_eq!(build_poset(Family::Odd, n).unwrap().len(), n * (n + 1));
        }
    }

    #[test]
    fn rank_zero_rejected() {
        assert_eq!(build_poset(Family::Odd, 0).unwrap_err(), Error::InvalidRank(0));
    }

    #[test]
    fn n3_diagram_arrows() {
        // 5 + 3 + 1 horizontal and 4 + 2 vertical arrows in the odd diagram,
        // 4 + 2 + 0 and 3 + 1 in the even one
        let odd = build_poset(Family::Odd, 3).unwrap();
        assert_eq!(odd.len(), 12);
        assert_eq!(odd.covers().len(), 15);
        let even = build_poset(Family::Even, 3).unwrap();
        assert_eq!(even.covers().len(), 10);

        let idx = |p: &RootPoset, l| p.index_of(&l).unwrap();
        assert!(odd.is_cover(idx(&odd, RootLabel::plain(1, 3)), idx(&odd, RootLabel::bar(1, 3))));
        assert!(odd.is_cover(idx(&odd, RootLabel::plain(2, 3)), idx(&odd, RootLabel::plain(3, 3))));
        assert!(odd.is_cover(idx(&odd, RootLabel::bar(2, 3)), idx(&odd, RootLabel::bar(3, 3))));
        assert!(even.is_cover(idx(&even, RootLabel::bar(2, 3)), idx(&even, RootLabel::bar(3, 3))));
        assert!(!even.is_cover(idx(&even, RootLabel::bar(1, 1)), idx(&even, RootLabel::bar(2, 2))));
    }

    #[test]
    fn path_counts_match_worked_examples() {
        assert_eq!(dyck_paths(&build_poset(Family::Odd, 2).unwrap()).len(), 7);
        assert_eq!(dyck_paths(&build_poset(Family::Even, 2).unwrap()).len(), 4);
        let odd1 = dyck_paths(&build_poset(Family::Odd, 1).unwrap());
        assert_eq!(odd1.len(), 2);
        assert_eq!(odd1[0].roots, vec![RootLabel::plain(1, 1)]);
        assert_eq!(odd1[1].roots, vec![RootLabel::plain(1, 1), RootLabel::bar(1, 1)]);
    }

    #[test]
    fn even_row_n_starts_at_barred_root() {
        let paths = dyck_paths(&build_poset(Family::Even, 2).unwrap());
        let last = paths.last().unwrap();
        assert_eq!(last.roots, vec![RootLabel::bar(2, 2)]);
        assert_eq!(last.end_class, EndClass::Barred);
    }

    #[test]
    fn bounds_of_sample_paths() {
        let lam = DominantWeight::new(vec![3, 5]);
        let poset = build_poset(Family::Odd, 2).unwrap();
        let paths = dyck_paths(&poset);
        let find = |labels: &[RootLabel]| paths.iter().find(|p| p.roots == labels).unwrap();
        assert_eq!(path_bound(find(&[RootLabel::plain(1, 1)]), &lam), 3);
        assert_eq!(
            path_bound(
                find(&[RootLabel::plain(1, 1), RootLabel::plain(1, 2), RootLabel::plain(2, 2)]),
                &lam
            ),
            8
        );
        assert_eq!(path_bound(find(&[RootLabel::plain(2, 2), RootLabel::bar(2, 2)]), &lam), 5);
    }

    #[test]
    fn eps_closed_forms() {
        let n = 4;
        for l in root_labels(Family::Odd, n) {
            let mut w = Weight::zero(n);
            let (i, j) = (l.row, l.col.index());
            match l.col {
                Column::Plain(_) if j < n => {
                    w.0[i - 1] += 1;
                    w.0[j] -= 1;
                }
                Column::Plain(_) => {
                    w.0[i - 1] += 1;
                    w.0[n] -= 1;
                }
                Column::Bar(_) => {
                    w.0[i - 1] += 1;
                    w.0[j - 1] += 1;
                }
            }
            assert_eq!(l.eps(n), w, "{l}");
        }
    }

    #[test]
    fn wt_deg_examples() {
        let p1 = build_poset(Family::Odd, 1).unwrap();
        assert_eq!(wt_deg(&p1, &[0, 0]), (Weight(vec![0, 0]), 0));
        assert_eq!(wt_deg(&p1, &[1, 0]), (Weight(vec![1, -1]), 1));
        let p2 = build_poset(Family::Odd, 2).unwrap();
        let mut s = vec![0; 6];
        s[p2.index_of(&RootLabel::bar(1, 2)).unwrap()] = 2;
        assert_eq!(wt_deg(&p2, &s), (Weight(vec![2, 2, 0]), 2));
    }

    #[test]
    fn fundamental_weights_in_eps() {
        assert_eq!(fundamental_to_eps(&DominantWeight::new(vec![1, 0])), Weight(vec![1, 0, 0]));
        assert_eq!(fundamental_to_eps(&DominantWeight::new(vec![0, 1])), Weight(vec![1, 1, 0]));
        assert_eq!(fundamental_to_eps(&DominantWeight::new(vec![1, 1])), Weight(vec![2, 1, 0]));
    }

    #[test]
    fn partition_round_trip_and_rejection() {
        let lam = DominantWeight::new(vec![2, 0, 1]);
        assert_eq!(lam.partition(), vec![3, 1, 1]);
        assert_eq!(DominantWeight::from_partition(&[3, 1, 1]).unwrap(), lam);
        assert!(DominantWeight::from_partition(&[1, 2]).is_err());
        assert!("1,x".parse::<DominantWeight>().is_err());
    }

    #[test]
    fn label_text_and_json() {
        let l: RootLabel = "2,3bar".parse().unwrap();
        assert_eq!(l, RootLabel::bar(2, 3));
        let js = serde_json::to_string(&l).unwrap();
        assert_eq!(js, r#"{"row":2,"col":"3bar"}"#);
        assert_eq!(serde_json::from_str::<RootLabel>(&js).unwrap(), l);
    }

    #[test]
    fn column_alphabet_order() {
        let mut cols = vec![Column::Bar(1), Column::Plain(2), Column::Bar(3), Column::Plain(1)];
        cols.sort();
        assert_eq!(cols, vec![Column::Plain(1), Column::Plain(2), Column::Bar(3), Column::Bar(1)]);
    }
}
