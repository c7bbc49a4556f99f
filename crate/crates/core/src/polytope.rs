//! FFLV inequality systems and exact lattice-point enumeration.
//!
//! Every symplectic Dyck path contributes one row `Σ_{α∈p} s_α ≤ bound`;
//! coordinates are implicitly nonnegative. Redundant rows are kept.

use std::collections::HashSet;
use std::ops::Deref;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{
    build_poset, dyck_paths, path_bound, root_labels, DominantWeight, DyckPath, Family, RootLabel,
};
use crate::Verdict;

/// Exponent vector `s`, dense in canonical root order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<u32>);

impl LatticePoint {
    pub fn zero(len: usize) -> Self {
        LatticePoint(vec![0; len])
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Deref for LatticePoint {
    type Target = [u32];

    fn deref(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for LatticePoint {
    fn from(v: Vec<u32>) -> Self {
        LatticePoint(v)
    }
}

/// Strictly sorted, duplicate-free set of lattice points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PointSet(Vec<LatticePoint>);

impl PointSet {
    pub fn from_points(mut points: Vec<LatticePoint>) -> Self {
        points.sort_unstable();
        points.dedup();
        PointSet(points)
    }

    fn from_sorted(points: Vec<LatticePoint>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        PointSet(points)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.0.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LatticePoint> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[LatticePoint] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<LatticePoint> {
        self.0
    }

    /// One JSON array per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for p in &self.0 {
            out.push_str(&serde_json::to_string(p).expect("vectors serialize"));
            out.push('\n');
        }
        out
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a LatticePoint;
    type IntoIter = std::slice::Iter<'a, LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub support: Vec<RootLabel>,
    #[serde(skip)]
    pub indices: Vec<usize>,
    pub bound: u64,
}

#[derive(Clone, Debug)]
pub struct InequalitySystem {
    family: Family,
    n: usize,
    lambda: DominantWeight,
    labels: Vec<RootLabel>,
    paths: Vec<DyckPath>,
    rows: Vec<Inequality>,
    walker: RowWalker,
}

pub fn inequalities(family: Family, n: usize, lambda: &DominantWeight) -> Result<InequalitySystem> {
    let poset = build_poset(family, n)?;
    lambda.check_rank(n)?;
    let paths = dyck_paths(&poset);
    let rows: Vec<Inequality> = paths
        .iter()
        .map(|p| Inequality {
            support: p.roots.clone(),
            indices: p.indices.clone(),
            bound: path_bound(p, lambda),
        })
        .collect();
    let plain: Vec<(Vec<usize>, u64)> = rows.iter().map(|r| (r.indices.clone(), r.bound)).collect();
    let walker = RowWalker::new(poset.len(), &plain).expect("every root lies on a Dyck path");
    Ok(InequalitySystem {
        family,
        n,
        lambda: lambda.clone(),
        labels: poset.labels(),
        paths,
        rows,
        walker,
    })
}

impl InequalitySystem {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> &DominantWeight {
        &self.lambda
    }

    pub fn labels(&self) -> &[RootLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rows(&self) -> &[Inequality] {
        &self.rows
    }

    pub fn paths(&self) -> &[DyckPath] {
        &self.paths
    }

    fn check_len(&self, s: &[u32]) -> Result<()> {
        if s.len() != self.dim() {
            return Err(Error::PointLength { expected: self.dim(), got: s.len() });
        }
        Ok(())
    }

    fn row_sum(&self, row: &Inequality, s: &[u32]) -> u64 {
        row.indices.iter().map(|&k| s[k] as u64).sum()
    }

    pub fn contains(&self, s: &[u32]) -> Result<bool> {
        self.check_len(s)?;
        Ok(self.rows.iter().all(|row| self.row_sum(row, s) <= row.bound))
    }

    /// Paths whose inequality fails at `s`, in canonical path order.
    pub fn violated_paths(&self, s: &[u32]) -> Result<Vec<&DyckPath>> {
        self.check_len(s)?;
        Ok(self
            .rows
            .iter()
            .zip(&self.paths)
            .filter(|(row, _)| self.row_sum(row, s) > row.bound)
            .map(|(_, p)| p)
            .collect())
    }

    /// Number of lattice points, without materializing them.
    pub fn count(&self) -> u64 {
        self.walker.count()
    }
}

/// Depth-first enumerator for `{s ≥ 0 : Σ_{k∈row} s_k ≤ bound}` systems in
/// which every coordinate lies in at least one row.
///
/// Each coordinate is capped by the remaining slack of the rows through it,
/// so every partial assignment extends (by zeros) to a point and the walk
/// never backtracks from a dead end. Branches of the first coordinate run in
/// parallel and are concatenated in order, so output is lexicographic.
#[derive(Clone, Debug)]
pub(crate) struct RowWalker {
    dim: usize,
    bounds: Vec<u64>,
    rows_of: Vec<Vec<usize>>,
}

impl RowWalker {
    /// `None` if some coordinate is in no row (unbounded).
    pub(crate) fn new(dim: usize, rows: &[(Vec<usize>, u64)]) -> Option<Self> {
        let mut rows_of = vec![Vec::new(); dim];
        for (r, (support, _)) in rows.iter().enumerate() {
            for &k in support {
                rows_of[k].push(r);
            }
        }
        if rows_of.iter().any(|r| r.is_empty()) {
            return None;
        }
        Some(RowWalker { dim, bounds: rows.iter().map(|r| r.1).collect(), rows_of })
    }

    fn cap(&self, k: usize, slack: &[u64]) -> u64 {
        self.rows_of[k].iter().map(|&r| slack[r]).min().expect("coordinate bounded")
    }

    fn walk(&self, k: usize, point: &mut Vec<u32>, slack: &mut [u64], out: &mut Vec<LatticePoint>) {
        if k == self.dim {
            out.push(LatticePoint(point.clone()));
            return;
        }
        let cap = self.cap(k, slack);
        for v in 0..=cap {
            point.push(v as u32);
            self.walk(k + 1, point, slack, out);
            point.pop();
            if v < cap {
                for &r in &self.rows_of[k] {
                    slack[r] -= 1;
                }
            }
        }
        for &r in &self.rows_of[k] {
            slack[r] += cap;
        }
    }

    fn count_walk(&self, k: usize, slack: &mut [u64]) -> u64 {
        if k == self.dim {
            return 1;
        }
        let cap = self.cap(k, slack);
        let mut total = 0;
        for v in 0..=cap {
            total += self.count_walk(k + 1, slack);
            if v < cap {
                for &r in &self.rows_of[k] {
                    slack[r] -= 1;
                }
            }
        }
        for &r in &self.rows_of[k] {
            slack[r] += cap;
        }
        total
    }

    /// Splits the search tree on the first coordinate.
    fn first_branches(&self) -> Vec<(u32, Vec<u64>)> {
        let slack = self.bounds.clone();
        let cap = self.cap(0, &slack);
        (0..=cap)
            .map(|v| {
                let mut s = slack.clone();
                for &r in &self.rows_of[0] {
                    s[r] -= v;
                }
                (v as u32, s)
            })
            .collect()
    }

    pub(crate) fn count(&self) -> u64 {
        if self.dim == 0 {
            return 1;
        }
        self.first_branches()
            .into_par_iter()
            .map(|(_, mut slack)| self.count_walk(1, &mut slack))
            .sum()
    }

    pub(crate) fn enumerate(&self) -> PointSet {
        if self.dim == 0 {
            return PointSet(vec![LatticePoint(Vec::new())]);
        }
        let chunks: Vec<Vec<LatticePoint>> = self
            .first_branches()
            .into_par_iter()
            .map(|(v, mut slack)| {
                let mut out = Vec::new();
                let mut point = vec![v];
                self.walk(1, &mut point, &mut slack, &mut out);
                out
            })
            .collect();
        PointSet::from_sorted(chunks.into_iter().flatten().collect())
    }
}

/// All lattice points, in lexicographic order of the canonical coordinates.
pub fn enumerate(sys: &InequalitySystem) -> PointSet {
    sys.walker.enumerate()
}

/// Checks `P(λ) + P(μ) = P(λ+μ)` on lattice points.
pub fn minkowski_verify(
    family: Family,
    n: usize,
    lambda: &DominantWeight,
    mu: &DominantWeight,
) -> Result<Verdict> {
    let a = enumerate(&inequalities(family, n, lambda)?);
    let b = enumerate(&inequalities(family, n, mu)?);
    let target = enumerate(&inequalities(family, n, &(lambda + mu))?);

    let sums: HashSet<LatticePoint> = a
        .as_slice()
        .par_iter()
        .flat_map_iter(|p| b.iter().map(move |q| p.add(q)))
        .collect();
    let mut extra: Vec<&LatticePoint> = sums.iter().filter(|p| !target.contains(p)).collect();
    extra.sort();
    if let Some(p) = extra.first() {
        return Ok(Verdict::fail("extra", serde_json::json!({ "point": p })));
    }
    if let Some(p) = target.iter().find(|p| !sums.contains(*p)) {
        return Ok(Verdict::fail("missing", serde_json::json!({ "point": p })));
    }
    Ok(Verdict::Pass)
}

/// Embeds odd-family labels into the even family of rank `n+1`. The odd poset
/// is the even one with the column `n+1̄` deleted, so labels carry over
/// unchanged.
pub fn slice_label_map(n: usize) -> Vec<(RootLabel, RootLabel)> {
    root_labels(Family::Odd, n).into_iter().map(|l| (l, l)).collect()
}

/// Checks that `FFLV_{2n+1}(λ)` equals the section `s_{i,n+1̄} = 0` of
/// `FFLV_{2n+2}(λ, 0)`.
pub fn slice_verify(n: usize, lambda: &DominantWeight) -> Result<Verdict> {
    lambda.check_rank(n)?;
    let odd = enumerate(&inequalities(Family::Odd, n, lambda)?);
    let big = inequalities(Family::Even, n + 1, &lambda.extend_to(n + 1))?;
    let big_labels = big.labels().to_vec();
    let zeroed: Vec<usize> = (1..=n + 1)
        .map(|i| big_labels.iter().position(|l| *l == RootLabel::bar(i, n + 1)).unwrap())
        .collect();
    let projection: Vec<usize> = slice_label_map(n)
        .iter()
        .map(|(_, even)| big_labels.iter().position(|l| l == even).unwrap())
        .collect();

    let section = PointSet::from_points(
        enumerate(&big)
            .iter()
            .filter(|p| zeroed.iter().all(|&k| p[k] == 0))
            .map(|p| LatticePoint(projection.iter().map(|&k| p[k]).collect()))
            .collect(),
    );
    if let Some(p) = odd.iter().find(|p| !section.contains(p)) {
        return Ok(Verdict::fail("missing_from_section", serde_json::json!({ "point": p })));
    }
    if let Some(p) = section.iter().find(|p| !odd.contains(p)) {
        return Ok(Verdict::fail("extra_in_section", serde_json::json!({ "point": p })));
    }
    Ok(Verdict::Pass)
}

/// `|P^Z(tλ)|` for `t = 0..=t_max`.
pub fn ehrhart_counts(
    family: Family,
    n: usize,
    lambda: &DominantWeight,
    t_max: u32,
) -> Result<Vec<u64>> {
    (0..=t_max)
        .map(|t| Ok(inequalities(family, n, &lambda.scale(t))?.count()))
        .collect()
}

/// Fits the degree-`degree` interpolant through `counts[0..=degree]` and
/// compares its value at `degree+1` with `counts[degree+1]`. Returns `None`
/// when fewer than `degree+2` counts are given.
pub fn ehrhart_extrapolates(counts: &[u64], degree: usize) -> Option<bool> {
    if counts.len() < degree + 2 {
        return None;
    }
    let x = BigRational::from_integer((degree as i64 + 1).into());
    let mut value = BigRational::zero();
    for (i, &ci) in counts.iter().enumerate().take(degree + 1) {
        let xi = BigRational::from_integer((i as i64).into());
        let mut basis = BigRational::one();
        for j in (0..=degree).filter(|&j| j != i) {
            let xj = BigRational::from_integer((j as i64).into());
            basis *= (&x - &xj) / (&xi - &xj);
        }
        value += basis * BigRational::from_integer(ci.into());
    }
    Some(value == BigRational::from_integer(counts[degree + 1].into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RootLabel as L;

    fn w(m: &[u32]) -> DominantWeight {
        DominantWeight::new(m.to_vec())
    }

    /// Rows as (sorted support, symbolic bound as coefficients of m_i).
    fn symbolic_rows(family: Family, n: usize) -> Vec<(Vec<L>, Vec<u64>)> {
        // the bound is linear in λ, so evaluating at unit vectors recovers it
        let mut rows: Vec<(Vec<L>, Vec<u64>)> = Vec::new();
        let base = inequalities(family, n, &DominantWeight::zero(n)).unwrap();
        for (r, row) in base.rows().iter().enumerate() {
            let coeffs = (1..=n)
                .map(|i| {
                    inequalities(family, n, &DominantWeight::fundamental(n, i)).unwrap().rows()[r]
                        .bound
                })
                .collect();
            let mut support = row.support.clone();
            support.sort();
            rows.push((support, coeffs));
        }
        rows.sort();
        rows
    }

    fn sorted(mut rows: Vec<(Vec<L>, Vec<u64>)>) -> Vec<(Vec<L>, Vec<u64>)> {
        for r in rows.iter_mut() {
            r.0.sort();
        }
        rows.sort();
        rows
    }

    #[test]
    fn even_rank_two_example() {
        let expected = sorted(vec![
            (vec![L::plain(1, 1)], vec![1, 0]),
            (vec![L::bar(2, 2)], vec![0, 1]),
            (vec![L::plain(1, 1), L::bar(1, 2), L::bar(1, 1)], vec![1, 1]),
            (vec![L::plain(1, 1), L::bar(1, 2), L::bar(2, 2)], vec![1, 1]),
        ]);
        assert_eq!(symbolic_rows(Family::Even, 2), expected);
    }

    #[test]
    fn odd_rank_two_example() {
        let expected = sorted(vec![
            (vec![L::plain(1, 1)], vec![1, 0]),
            (vec![L::plain(2, 2)], vec![0, 1]),
            (vec![L::plain(2, 2), L::bar(2, 2)], vec![0, 1]),
            (vec![L::plain(1, 1), L::plain(1, 2), L::plain(2, 2)], vec![1, 1]),
            (vec![L::plain(1, 1), L::plain(1, 2), L::bar(1, 2), L::bar(1, 1)], vec![1, 1]),
            (vec![L::plain(1, 1), L::plain(1, 2), L::bar(1, 2), L::bar(2, 2)], vec![1, 1]),
            (vec![L::plain(1, 1), L::plain(1, 2), L::plain(2, 2), L::bar(2, 2)], vec![1, 1]),
        ]);
        assert_eq!(symbolic_rows(Family::Odd, 2), expected);
    }

    #[test]
    fn odd_rank_one_rows() {
        let sys = inequalities(Family::Odd, 1, &w(&[4])).unwrap();
        let rows: Vec<_> = sys.rows().iter().map(|r| (r.support.clone(), r.bound)).collect();
        assert_eq!(
            rows,
            vec![(vec![L::plain(1, 1)], 4), (vec![L::plain(1, 1), L::bar(1, 1)], 4)]
        );
    }

    #[test]
    fn weight_length_mismatch() {
        assert_eq!(
            inequalities(Family::Odd, 2, &w(&[1])).unwrap_err(),
            Error::WeightLength { expected: 2, got: 1 }
        );
    }

    #[test]
    fn membership() {
        let sys = inequalities(Family::Odd, 1, &w(&[1])).unwrap();
        assert!(!sys.contains(&[2, 0]).unwrap());
        assert!(sys.contains(&[1, 0]).unwrap());
        assert!(sys.contains(&[1]).is_err());

        let sys = inequalities(Family::Odd, 2, &w(&[0, 1])).unwrap();
        let mut s = vec![0u32; 6];
        s[sys.labels().iter().position(|l| *l == L::bar(1, 2)).unwrap()] = 1;
        s[sys.labels().iter().position(|l| *l == L::plain(2, 2)).unwrap()] = 1;
        assert!(sys.contains(&s).unwrap());
    }

    #[test]
    fn violated_rows() {
        let sys = inequalities(Family::Odd, 1, &w(&[1])).unwrap();
        let v = sys.violated_paths(&[1, 1]).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].roots, vec![L::plain(1, 1), L::bar(1, 1)]);
        assert!(sys.violated_paths(&[0, 0]).unwrap().is_empty());

        let sys = inequalities(Family::Odd, 2, &w(&[1, 0])).unwrap();
        let mut s = vec![0u32; 6];
        s[sys.labels().iter().position(|l| *l == L::plain(2, 2)).unwrap()] = 1;
        let v: Vec<_> = sys.violated_paths(&s).unwrap().into_iter().map(|p| p.roots.clone()).collect();
        assert_eq!(v, vec![vec![L::plain(2, 2)], vec![L::plain(2, 2), L::bar(2, 2)]]);
    }

    #[test]
    fn enumeration_counts() {
        let count = |f, m: &[u32]| enumerate(&inequalities(f, m.len(), &w(m)).unwrap()).len();
        assert_eq!(count(Family::Odd, &[1, 0]), 5);
        assert_eq!(count(Family::Odd, &[0, 1]), 9);
        assert_eq!(count(Family::Even, &[1, 1]), 16);
        assert_eq!(count(Family::Odd, &[1, 1]), 35);
        for f in [Family::Odd, Family::Even] {
            let pts = enumerate(&inequalities(f, 3, &DominantWeight::zero(3)).unwrap());
            assert_eq!(pts.as_slice(), &[LatticePoint::zero(f.root_count(3))]);
        }
    }

    #[test]
    fn count_matches_enumeration() {
        for m in [[2u32, 1, 0], [1, 1, 1], [0, 2, 1]] {
            for f in [Family::Odd, Family::Even] {
                let sys = inequalities(f, 3, &w(&m)).unwrap();
                assert_eq!(sys.count() as usize, enumerate(&sys).len());
            }
        }
    }

    #[test]
    fn minkowski_small() {
        assert!(minkowski_verify(Family::Odd, 1, &w(&[1]), &w(&[1])).unwrap().is_pass());
        assert!(minkowski_verify(Family::Odd, 2, &w(&[2, 1]), &w(&[0, 0])).unwrap().is_pass());
        assert!(minkowski_verify(Family::Even, 2, &w(&[1, 0]), &w(&[0, 1])).unwrap().is_pass());
    }

    #[test]
    fn slice_small() {
        assert!(slice_verify(1, &w(&[1])).unwrap().is_pass());
        assert!(slice_verify(1, &w(&[0])).unwrap().is_pass());
        assert!(slice_verify(2, &w(&[1, 1])).unwrap().is_pass());
    }

    #[test]
    fn ehrhart_examples() {
        assert_eq!(ehrhart_counts(Family::Odd, 1, &w(&[1]), 3).unwrap(), vec![1, 3, 6, 10]);
        assert_eq!(ehrhart_counts(Family::Odd, 2, &w(&[0, 0]), 3).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(ehrhart_counts(Family::Even, 1, &w(&[1]), 2).unwrap(), vec![1, 2, 3]);
        assert_eq!(ehrhart_extrapolates(&[1, 3, 6, 10], 2), Some(true));
        assert_eq!(ehrhart_extrapolates(&[1, 3, 6, 11], 2), Some(false));
        assert_eq!(ehrhart_extrapolates(&[1, 3], 2), None);
    }

    #[test]
    fn json_lines() {
        let pts = enumerate(&inequalities(Family::Odd, 1, &w(&[1])).unwrap());
        assert_eq!(pts.to_json_lines(), "[0,0]\n[0,1]\n[1,0]\n");
    }
}
