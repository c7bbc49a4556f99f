//! Polynomials in the root vectors `f_α` of the odd family, the monomial
//! order `≻`, the derivations `∂_α` and `∂_{1,n}`, and leading-term checks of
//! the straightening law along a single Dyck path.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::LatticePoint;
use crate::rootsys::{
    build_poset, dyck_paths, root_labels, Column, DominantWeight, DyckPath, EndClass, Family,
    RootLabel, Weight,
};
use crate::Verdict;

/// Rank `n` with `n(n+1) = len`.
fn rank_of_len(len: usize) -> Option<usize> {
    (1..=len).find(|n| n * (n + 1) == len)
}

/// Exponent vector over the odd-family roots of some rank, canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct FMonomial(pub LatticePoint);

impl FMonomial {
    pub fn new(exps: Vec<u32>) -> Self {
        FMonomial(LatticePoint(exps))
    }

    pub fn one(n: usize) -> Self {
        FMonomial(LatticePoint::zero(n * (n + 1)))
    }

    /// `f_label^exp`.
    pub fn power(n: usize, label: RootLabel, exp: u32) -> Result<Self> {
        let idx = var_index(n, label)?;
        let mut m = Self::one(n);
        m.0 .0[idx] = exp;
        Ok(m)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.degree()
    }

    pub fn rank(&self) -> usize {
        rank_of_len(self.0.len()).expect("length n(n+1)")
    }

    pub fn mul(&self, other: &FMonomial) -> FMonomial {
        FMonomial(self.0.add(&other.0))
    }

    /// `Σ s_α α` in ε-coordinates.
    pub fn weight(&self) -> Weight {
        let n = self.rank();
        let mut w = Weight::zero(n);
        for (label, &e) in root_labels(Family::Odd, n).iter().zip(self.exps()) {
            if e != 0 {
                w = w + label.eps(n).scale(e as i64);
            }
        }
        w
    }

    /// Row sums from row `n` down to row 1.
    pub fn d(&self) -> Vec<u64> {
        let n = self.rank();
        let mut rows = vec![0u64; n];
        for (label, &e) in root_labels(Family::Odd, n).iter().zip(self.exps()) {
            rows[n - label.row] += e as u64;
        }
        rows
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.rank();
        let map: serde_json::Map<String, serde_json::Value> = root_labels(Family::Odd, n)
            .iter()
            .zip(self.exps())
            .filter(|(_, &e)| e != 0)
            .map(|(l, &e)| (l.to_string(), e.into()))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for FMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank();
        let parts: Vec<String> = root_labels(Family::Odd, n)
            .iter()
            .zip(self.exps())
            .filter(|(_, &e)| e != 0)
            .map(|(l, &e)| if e == 1 { format!("f[{l}]") } else { format!("f[{l}]^{e}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// The order `≻`: higher degree first, then smaller `d`, then lexicographic
/// with variables compared from the largest (`f_{n,n̄}`) down to `f_{1,1}`.
pub fn succ_compare(s: &FMonomial, t: &FMonomial) -> Ordering {
    assert_eq!(s.0.len(), t.0.len(), "monomials of different rank");
    s.degree()
        .cmp(&t.degree())
        .then_with(|| t.d().cmp(&s.d()))
        .then_with(|| s.exps().iter().rev().cmp(t.exps().iter().rev()))
}

fn var_index(n: usize, label: RootLabel) -> Result<usize> {
    root_labels(Family::Odd, n)
        .iter()
        .position(|l| *l == label)
        .ok_or_else(|| Error::Parse(format!("`{label}` is not an odd-family root of rank {n}")))
}

/// Polynomial in the `f_α` with exact integer coefficients, no zero terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPolynomial {
    n: usize,
    terms: BTreeMap<FMonomial, BigInt>,
}

impl FPolynomial {
    pub fn zero(n: usize) -> Self {
        FPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn monomial(m: FMonomial, coeff: BigInt) -> Self {
        let mut p = Self::zero(m.rank());
        p.add_term(m, coeff);
        p
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: FMonomial, coeff: BigInt) {
        assert_eq!(m.rank(), self.n, "monomial of different rank");
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &FPolynomial) -> FPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &FPolynomial) -> FPolynomial {
        let mut out = FPolynomial::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &FMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FMonomial, &BigInt)> {
        self.terms.iter()
    }

    /// Terms sorted by `≻`, greatest first.
    pub fn sorted_terms(&self) -> Vec<(&FMonomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| succ_compare(b.0, a.0));
        v
    }

    pub fn leading(&self) -> Option<(&FMonomial, &BigInt)> {
        self.terms.iter().max_by(|a, b| succ_compare(a.0, b.0))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .sorted_terms()
            .into_iter()
            .map(|(m, c)| serde_json::json!({ "monomial": m.to_json(), "coeff": c.to_string() }))
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if k > 0 { "+" } else { "" };
            if k > 0 {
                f.write_str(" ")?;
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A derivation of the polynomial ring in the `f_α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivationId {
    /// `∂_α f_β = f_{β−α}` when `β − α` is an odd-family root, else 0.
    /// `α` must be a positive root of `sp(2n)`.
    Root(RootLabel),
    /// `ad E_{2n+1,n+1}`, projected onto the span of the `f_α`.
    Special,
}

impl DerivationId {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            DerivationId::Root(l) if !l.is_valid(Family::Even, n) => Err(Error::InvalidDerivation(
                format!("`{l}` is not a positive root of sp({})", 2 * n),
            )),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DerivationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivationId::Root(l) => write!(f, "d[{l}]"),
            DerivationId::Special => f.write_str("d[1,n]"),
        }
    }
}

impl Serialize for DerivationId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Image of each generator: `f_v ↦ c · f_t`, or 0.
type GeneratorTable = Vec<Option<(usize, BigInt)>>;

fn generator_table(id: DerivationId, n: usize) -> Result<GeneratorTable> {
    id.validate(n)?;
    let labels = root_labels(Family::Odd, n);
    Ok(match id {
        DerivationId::Root(alpha) => {
            let a = alpha.eps(n);
            let eps: Vec<Weight> = labels.iter().map(|l| l.eps(n)).collect();
            eps.iter()
                .map(|b| {
                    let diff = b - &a;
                    eps.iter().position(|e| *e == diff).map(|t| (t, BigInt::one()))
                })
                .collect()
        }
        DerivationId::Special => matrix::special_table(n),
    })
}

fn apply_table(table: &GeneratorTable, p: &FPolynomial) -> FPolynomial {
    let mut out = FPolynomial::zero(p.n);
    for (m, c) in &p.terms {
        for (v, &e) in m.exps().iter().enumerate() {
            let Some((t, k)) = &table[v] else { continue };
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[v] -= 1;
            exps[*t] += 1;
            out.add_term(FMonomial::new(exps), c * k * BigInt::from(e));
        }
    }
    out
}

/// `∂(p)`, extended from generators by the Leibniz rule.
pub fn apply_derivation(id: DerivationId, p: &FPolynomial) -> Result<FPolynomial> {
    Ok(apply_table(&generator_table(id, p.n)?, p))
}

/// Image of `f_label` under `id`, as (target, coefficient).
pub fn generator_image(id: DerivationId, n: usize, label: RootLabel) -> Result<Option<(RootLabel, BigInt)>> {
    let table = generator_table(id, n)?;
    let labels = root_labels(Family::Odd, n);
    Ok(table[var_index(n, label)?].clone().map(|(t, c)| (labels[t], c)))
}

/// Operator word, written left to right and applied right to left.
pub type Word = Vec<(DerivationId, u32)>;

fn word_json(w: &Word) -> serde_json::Value {
    w.iter()
        .map(|(id, e)| serde_json::json!({ "op": id.to_string(), "exp": e }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaOps {
    /// row of the final root `α_{i,ī}`
    pub i: usize,
    /// least column of row `i` on the path
    pub q: Column,
    pub delta1: Word,
    pub delta2: Word,
}

impl DeltaOps {
    /// `Δ₂Δ₁` as one word.
    pub fn word(&self) -> Word {
        self.delta2.iter().chain(&self.delta1).copied().collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "i": self.i,
            "q": self.q.to_string(),
            "delta1": word_json(&self.delta1),
            "delta2": word_json(&self.delta2),
        })
    }
}

fn check_path(n: usize, path: &DyckPath) -> Result<usize> {
    let bad = |why: &str| Error::UnsupportedPath(format!("{path}: {why}"));
    if path.roots.iter().any(|l| !l.is_valid(Family::Odd, n)) {
        return Err(bad("not a path of the odd family at this rank"));
    }
    if path.start() != RootLabel::plain(1, 1) {
        return Err(bad("does not start at 1,1"));
    }
    if path.end_class != EndClass::Barred {
        return Err(bad("does not end at a barred root"));
    }
    Ok(path.end().row)
}

fn check_support(s: &FMonomial, path: &DyckPath) -> Result<()> {
    let n = s.rank();
    for (label, &e) in root_labels(Family::Odd, n).iter().zip(s.exps()) {
        if e != 0 && !path.contains(label) {
            return Err(Error::UnsupportedPath(format!("exponent vector has `{label}` off the path {path}")));
        }
    }
    Ok(())
}

/// The operators `Δ₁ = ∂_{1,i−1}^{s_{•,ī}+s_{i,•}} δ₃ δ₂ δ₁` and
/// `Δ₂ = ∂_{1,1}^{s_{2,•}} ⋯ ∂_{1,i−2}^{s_{i−1,•}}` for `s` on `path`.
/// The leading factor of `Δ₁` is absent when `i = 1`.
pub fn build_delta_ops(s: &FMonomial, path: &DyckPath) -> Result<DeltaOps> {
    let n = s.rank();
    let i = check_path(n, path)?;
    check_support(s, path)?;

    let labels = root_labels(Family::Odd, n);
    let col = |c: Column| -> u32 {
        labels.iter().zip(s.exps()).filter(|(l, _)| l.col == c).map(|(_, &e)| e).sum()
    };
    let row = |r: usize| -> u32 {
        labels.iter().zip(s.exps()).filter(|(l, _)| l.row == r).map(|(_, &e)| e).sum()
    };
    let plain = |j| Column::Plain(j);
    let bar = |j| Column::Bar(j);
    let d = |r, c: Column| DerivationId::Root(RootLabel { row: r, col: c });

    let mut delta2 = Word::new();
    for k in 1..i.saturating_sub(1) {
        delta2.push((d(1, plain(k)), row(k + 1)));
    }

    let mut delta1 = Word::new();
    if i >= 2 {
        delta1.push((d(1, plain(i - 1)), col(bar(i)) + row(i)));
    }
    // δ₃
    for k in i + 1..=n {
        delta1.push((d(k, bar(k)), col(plain(k - 1))));
    }
    // δ₂
    delta1.push((DerivationId::Special, col(plain(n))));
    for j in (i..n).rev() {
        delta1.push((d(1, plain(j)), col(plain(j)) + col(bar(j + 1))));
    }
    // δ₁
    for k in (2..=i).rev() {
        delta1.push((d(1, bar(k)), col(plain(k - 1))));
    }

    let q = path
        .roots
        .iter()
        .filter(|l| l.row == i)
        .map(|l| l.col)
        .min()
        .expect("path ends in row i");
    Ok(DeltaOps { i, q, delta1, delta2 })
}

/// `Δ₂Δ₁ f_{1,1̄}^Σ` with `Σ` the total degree of `s`.
pub fn straighten(lambda: &DominantWeight, s: &FMonomial, path: &DyckPath) -> Result<FPolynomial> {
    let n = s.rank();
    lambda.check_rank(n)?;
    let ops = build_delta_ops(s, path)?;
    let sigma = s.degree();
    if sigma <= lambda.range_sum(1, n) {
        return Err(Error::NotViolating);
    }

    let mut tables: HashMap<DerivationId, GeneratorTable> = HashMap::new();
    let mut p = FPolynomial::monomial(
        FMonomial::power(n, RootLabel::bar(1, 1), sigma as u32)?,
        BigInt::one(),
    );
    for (id, e) in ops.word().into_iter().rev() {
        if e == 0 {
            continue;
        }
        let table = match tables.entry(id) {
            std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => v.insert(generator_table(id, n)?),
        };
        for _ in 0..e {
            p = apply_table(table, &p);
        }
    }
    Ok(p)
}

/// Checks that `straighten` has `≻`-leading monomial `f^s`.
pub fn verify_straightening(lambda: &DominantWeight, s: &FMonomial, path: &DyckPath) -> Result<Verdict> {
    let p = straighten(lambda, s, path)?;
    let Some((lead, _)) = p.leading() else {
        return Ok(Verdict::fail("zero_result", serde_json::json!({ "s": s.to_json() })));
    };
    if lead != s {
        return Ok(Verdict::fail(
            "leading_term_mismatch",
            serde_json::json!({ "s": s.to_json(), "leading": lead.to_json(), "coeff_of_s": p.coeff(s).to_string() }),
        ));
    }
    // ≻ is total, so uniqueness of the maximum is the remaining condition
    let ties = p.terms().filter(|(m, _)| succ_compare(m, s) == Ordering::Equal).count();
    if ties != 1 {
        return Ok(Verdict::fail("order_not_total", serde_json::json!({ "s": s.to_json() })));
    }
    Ok(Verdict::Pass)
}

/// Paths from `α_{1,1}` to a barred end.
pub fn straightening_paths(n: usize) -> Result<Vec<DyckPath>> {
    let poset = build_poset(Family::Odd, n)?;
    Ok(dyck_paths(&poset)
        .into_iter()
        .filter(|p| p.start() == RootLabel::plain(1, 1) && p.end_class == EndClass::Barred)
        .collect())
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every `s` supported on `path` with `Σ = m_1 + ... + m_n + 1`.
pub fn violating_exponents(lambda: &DominantWeight, path: &DyckPath) -> Vec<FMonomial> {
    let n = lambda.rank();
    let labels = root_labels(Family::Odd, n);
    let slots: Vec<usize> = path
        .roots
        .iter()
        .map(|l| labels.iter().position(|m| m == l).expect("odd-family path"))
        .collect();
    compositions(lambda.range_sum(1, n) as u32 + 1, slots.len())
        .into_iter()
        .map(|comp| {
            let mut exps = vec![0u32; labels.len()];
            for (&k, v) in slots.iter().zip(comp) {
                exps[k] = v;
            }
            FMonomial::new(exps)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct StraighteningCase {
    pub lambda: DominantWeight,
    pub path: String,
    pub s: serde_json::Value,
    pub verdict: Verdict,
}

/// All single-path instances with `Σ = bound + 1` at rank `n` and
/// `m_i ≤ m_max`, verified in parallel; deterministic order.
pub fn straightening_sweep(n: usize, m_max: u32) -> Result<Vec<StraighteningCase>> {
    let paths = straightening_paths(n)?;
    let mut jobs = Vec::new();
    for m in weight_box(n, m_max) {
        let lambda = DominantWeight::new(m);
        for path in &paths {
            for s in violating_exponents(&lambda, path) {
                jobs.push((lambda.clone(), path, s));
            }
        }
    }
    jobs.into_par_iter()
        .map(|(lambda, path, s)| {
            let verdict = verify_straightening(&lambda, &s, path)?;
            Ok(StraighteningCase { path: path.to_string(), s: s.to_json(), lambda, verdict })
        })
        .collect()
}

fn weight_box(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
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

/// The `(2n+1)×(2n+1)` realization of the odd symplectic algebra, used for
/// the structure constants of `∂_{1,n}`.
pub mod matrix {
    use super::*;

    /// Sparse integer matrix, 1-based indices.
    pub type Sparse = BTreeMap<(usize, usize), i64>;

    fn unit(a: usize, b: usize) -> Sparse {
        BTreeMap::from([((a, b), 1)])
    }

    fn add_scaled(acc: &mut Sparse, m: &Sparse, c: i64) {
        for (&k, &v) in m {
            let e = acc.entry(k).or_insert(0);
            *e += c * v;
            if *e == 0 {
                acc.remove(&k);
            }
        }
    }

    fn product(x: &Sparse, y: &Sparse) -> Sparse {
        let mut out = Sparse::new();
        for (&(a, b), &u) in x {
            for (&(c, d), &v) in y {
                if b == c {
                    add_scaled(&mut out, &unit(a, d), u * v);
                }
            }
        }
        out
    }

    pub fn bracket(x: &Sparse, y: &Sparse) -> Sparse {
        let mut out = product(x, y);
        add_scaled(&mut out, &product(y, x), -1);
        out
    }

    /// Root vector `f_label`:
    /// `f_{i,j} = E_{j+1,i} − E_{n+i,n+j+1}` (`j < n`),
    /// `f_{i,n} = E_{2n+1,i}`,
    /// `f_{i,j̄} = E_{n+i,j} + E_{n+j,i}` (`E_{n+i,i}` if `i = j`).
    pub fn root_vector(n: usize, label: RootLabel) -> Sparse {
        let i = label.row;
        match label.col {
            Column::Plain(j) if j < n => {
                let mut m = unit(j + 1, i);
                add_scaled(&mut m, &unit(n + i, n + j + 1), -1);
                m
            }
            Column::Plain(_) => unit(2 * n + 1, i),
            Column::Bar(j) if j == i => unit(n + i, i),
            Column::Bar(j) => {
                let mut m = unit(n + i, j);
                add_scaled(&mut m, &unit(n + j, i), 1);
                m
            }
        }
    }

    pub fn special_element(n: usize) -> Sparse {
        unit(2 * n + 1, n + 1)
    }

    /// ε-weight of `E_{a,b}`: index `k ≤ n` carries `ε_k`, `n + k` carries
    /// `−ε_k`, `2n + 1` carries `ε_0`.
    pub fn unit_weight(n: usize, a: usize, b: usize) -> Weight {
        let e = |k: usize| {
            let mut w = Weight::zero(n);
            if k <= n {
                w.0[k - 1] = 1;
            } else if k <= 2 * n {
                w.0[k - n - 1] = -1;
            } else {
                w.0[n] = 1;
            }
            w
        };
        e(a) - e(b)
    }

    /// Image of each `f_β` under `ad E_{2n+1,n+1}`, projected by weight onto
    /// the `f_α`.
    pub(super) fn special_table(n: usize) -> GeneratorTable {
        let labels = root_labels(Family::Odd, n);
        let basis: Vec<Sparse> = labels.iter().map(|&l| root_vector(n, l)).collect();
        let e = special_element(n);
        let shift = unit_weight(n, 2 * n + 1, n + 1);
        basis
            .iter()
            .zip(&labels)
            .map(|(b, l)| {
                let image = bracket(&e, b);
                if image.is_empty() {
                    return None;
                }
                let target_weight = shift.clone() - l.eps(n);
                let t = labels.iter().position(|m| (-m.eps(n)) == target_weight)?;
                let (&pivot, &value) = image.iter().next().expect("nonempty");
                let scale = basis[t].get(&pivot).copied().expect("weight spaces are one-dimensional");
                assert_eq!(value % scale, 0);
                let c = value / scale;
                let mut expect = Sparse::new();
                add_scaled(&mut expect, &basis[t], c);
                assert_eq!(image, expect, "bracket is not a multiple of the weight vector");
                Some((t, BigInt::from(c)))
            })
            .collect()
    }
}
