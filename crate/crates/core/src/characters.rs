//! PBW-graded characters and dimensions.
//!
//! The odd-family character is computed twice: by summing over lattice points
//! of `FFLV_{2n+1}(λ)`, and by the branching route that sums even-family
//! characters of `λ − μ̃` over `μ̃ ∈ δ(λ)`. The subtraction `λ − μ̃` happens in
//! partition (ε) coordinates and the `gl(1)` charge `|μ̃|` lands on `ε_0`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{enumerate, inequalities};
use crate::Verdict;
use crate::rootsys::{build_poset, fundamental_to_eps, wt_deg, DominantWeight, Family, Weight};

fn biguint_json(x: &BigUint) -> serde_json::Value {
    match x.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

/// Polynomial in `q` with nonnegative integer coefficients. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: BTreeMap<u32, BigUint>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn monomial(exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, BigUint::one());
        p
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, u64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, BigUint::from(c));
        }
        p
    }

    pub fn add_term(&mut self, exp: u32, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.coeffs.entry(exp).or_default() += coeff;
    }

    pub fn merge(&mut self, other: &QPolynomial) {
        for (&e, c) in &other.coeffs {
            self.add_term(e, c.clone());
        }
    }

    pub fn coeff(&self, exp: u32) -> BigUint {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigUint)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.coeffs.iter().map(|(e, c)| (e.to_string(), biguint_json(c))).collect(),
        )
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(e, c)| match (e, c.is_one()) {
                (0, _) => c.to_string(),
                (1, true) => "q".to_string(),
                (1, false) => format!("{c}q"),
                (_, true) => format!("q^{e}"),
                (_, false) => format!("{c}q^{e}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Map from ε-weights to q-polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedCharacter {
    terms: BTreeMap<Weight, QPolynomial>,
}

impl GradedCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, weight: Weight, degree: u32) {
        self.terms.entry(weight).or_default().add_term(degree, BigUint::one());
    }

    pub fn merge(mut self, other: GradedCharacter) -> GradedCharacter {
        for (w, p) in other.terms {
            match self.terms.get_mut(&w) {
                Some(q) => q.merge(&p),
                None => {
                    self.terms.insert(w, p);
                }
            }
        }
        self
    }

    pub fn get(&self, weight: &Weight) -> Option<&QPolynomial> {
        self.terms.get(weight)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &QPolynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients at `q = 1`.
    pub fn dimension(&self) -> BigUint {
        self.terms.values().map(QPolynomial::eval_one).sum()
    }

    /// Weight multiplicities at `q = 1`.
    pub fn at_q_one(&self) -> BTreeMap<Weight, BigUint> {
        self.terms.iter().map(|(w, p)| (w.clone(), p.eval_one())).collect()
    }

    /// Forgets weights, keeping the grading.
    pub fn qdim(&self) -> QPolynomial {
        let mut out = QPolynomial::zero();
        for p in self.terms.values() {
            out.merge(p);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(w, p)| serde_json::json!({ "weight": w, "poly": p.to_json() }))
                .collect(),
        )
    }
}

/// Tuple `μ̃` with `0 ≤ μ̃_i ≤ m_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchingTuple(pub Vec<u32>);

impl BranchingTuple {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `wt(μ̃) = Σ μ̃_i α_{i,n} = Σ μ̃_i (ε_i − ε_0)`.
    pub fn weight(&self) -> Weight {
        let n = self.0.len();
        let mut w = Weight::zero(n);
        for (i, &c) in self.0.iter().enumerate() {
            w.0[i] += c as i64;
            w.0[n] -= c as i64;
        }
        w
    }
}

/// All `μ̃` with `0 ≤ μ̃_i ≤ m_i`, lexicographically.
pub fn delta_set(lambda: &DominantWeight) -> Vec<BranchingTuple> {
    let mut out = vec![Vec::new()];
    for &m in lambda.coords() {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=m).map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out.into_iter().map(BranchingTuple).collect()
}

fn check_partition(parts: &[i64]) -> Result<()> {
    let ok = parts.iter().all(|&p| p >= 0) && parts.windows(2).all(|w| w[0] >= w[1]);
    if !ok {
        return Err(Error::NotDominant(parts.to_vec()));
    }
    Ok(())
}

/// Partitions `μ` with `λ_{i+1} ≤ μ_i ≤ λ_i` (and `λ_{n+1} = 0`), listed as
/// `λ − μ̃` for `μ̃` in [`delta_set`] order.
pub fn interlace_set(partition: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_partition(partition)?;
    let lambda = DominantWeight::from_partition(partition)?;
    Ok(delta_set(&lambda)
        .into_iter()
        .map(|t| partition.iter().zip(&t.0).map(|(l, d)| l - *d as i64).collect())
        .collect())
}

/// Weyl dimension of the `sp(2n)` irreducible with highest weight `μ`
/// (a partition with at most `n` parts), over the type `C_n` positive roots
/// `ε_i ± ε_j` and `2ε_i`.
pub fn weyl_dim(n: usize, mu: &[i64]) -> Result<BigUint> {
    if n < 1 {
        return Err(Error::InvalidRank(n));
    }
    check_partition(mu)?;
    if mu.len() > n && mu[n..].iter().any(|&x| x != 0) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    let rho: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
    let shifted: Vec<i64> = (0..n).map(|i| mu.get(i).copied().unwrap_or(0) + rho[i]).collect();

    let mut num = BigRational::one();
    for i in 0..n {
        num *= BigRational::new(shifted[i].into(), rho[i].into());
        for j in i + 1..n {
            num *= BigRational::new(
                ((shifted[i] - shifted[j]) * (shifted[i] + shifted[j])).into(),
                ((rho[i] - rho[j]) * (rho[i] + rho[j])).into(),
            );
        }
    }
    assert!(num.is_integer(), "Weyl dimension is integral");
    Ok(num.to_integer().to_biguint().expect("dimension is positive"))
}

/// `Σ_{s ∈ P^Z(λ)} e^{λ − wt(s)} q^{deg(s)}`.
pub fn qchar_polytope(family: Family, n: usize, lambda: &DominantWeight) -> Result<GradedCharacter> {
    let sys = inequalities(family, n, lambda)?;
    let poset = build_poset(family, n)?;
    let top = fundamental_to_eps(lambda);
    let points = enumerate(&sys);
    Ok(points
        .as_slice()
        .par_iter()
        .fold(GradedCharacter::new, |mut acc, s| {
            let (wt, deg) = wt_deg(&poset, s);
            acc.add(&top - &wt, deg as u32);
            acc
        })
        .reduce(GradedCharacter::new, GradedCharacter::merge))
}

/// Branching route for the odd family:
/// `Σ_{μ̃ ∈ δ(λ)} Σ_{s ∈ FFLV_{2n}(λ−μ̃)} e^{λ − wt(μ̃) − wt(s)} q^{deg(s) + deg(μ̃)}`.
pub fn qchar_branching(n: usize, lambda: &DominantWeight) -> Result<GradedCharacter> {
    lambda.check_rank(n)?;
    let even = build_poset(Family::Even, n)?;
    let top = fundamental_to_eps(lambda);
    let partition = lambda.partition();

    let pieces = delta_set(lambda)
        .into_par_iter()
        .map(|tilde| {
            let sub: Vec<i64> = partition.iter().zip(&tilde.0).map(|(l, d)| l - *d as i64).collect();
            let mu = DominantWeight::from_partition(&sub)?;
            let shift = &top - &tilde.weight();
            let mut acc = GradedCharacter::new();
            for s in enumerate(&inequalities(Family::Even, n, &mu)?).iter() {
                let (wt, deg) = wt_deg(&even, s);
                acc.add(&shift - &wt, deg as u32 + tilde.degree());
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pieces.into_iter().fold(GradedCharacter::new(), GradedCharacter::merge))
}

/// Compares [`qchar_polytope`] (odd family) with [`qchar_branching`] as
/// graded maps. A failure witness records the first differing weight and
/// whether the two still agree at `q = 1`.
pub fn qchar_verify(n: usize, lambda: &DominantWeight) -> Result<Verdict> {
    let poly = qchar_polytope(Family::Odd, n, lambda)?;
    let branch = qchar_branching(n, lambda)?;
    if poly == branch {
        return Ok(Verdict::Pass);
    }
    let zero = QPolynomial::zero();
    let weight = poly
        .terms()
        .map(|(w, _)| w)
        .chain(branch.terms().map(|(w, _)| w))
        .find(|w| poly.get(w).unwrap_or(&zero) != branch.get(w).unwrap_or(&zero))
        .expect("characters differ somewhere");
    Ok(Verdict::fail(
        "graded_characters_differ",
        serde_json::json!({
            "weight": weight,
            "polytope": poly.get(weight).unwrap_or(&zero).to_json(),
            "branching": branch.get(weight).unwrap_or(&zero).to_json(),
            "agree_at_q_one": poly.at_q_one() == branch.at_q_one(),
        }),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DimMethod {
    /// lattice-point count
    Polytope,
    /// `Σ_{μ ≺ λ} dim V_{sp(2n)}(μ)`, odd family only
    Branching,
    /// Weyl dimension formula, even family only
    Weyl,
}

impl FromStr for DimMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "polytope" => Ok(DimMethod::Polytope),
            "branching" => Ok(DimMethod::Branching),
            "weyl" => Ok(DimMethod::Weyl),
            other => Err(Error::Parse(format!("unknown method `{other}`"))),
        }
    }
}

impl fmt::Display for DimMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimMethod::Polytope => "polytope",
            DimMethod::Branching => "branching",
            DimMethod::Weyl => "weyl",
        })
    }
}

pub fn dim(family: Family, n: usize, lambda: &DominantWeight, method: DimMethod) -> Result<BigUint> {
    lambda.check_rank(n)?;
    let mismatch = || Error::MethodFamilyMismatch { method: method.to_string(), family: family.to_string() };
    match (method, family) {
        (DimMethod::Polytope, _) => Ok(BigUint::from(inequalities(family, n, lambda)?.count())),
        (DimMethod::Branching, Family::Odd) => interlace_set(&lambda.partition())?
            .iter()
            .map(|mu| weyl_dim(n, mu))
            .sum(),
        (DimMethod::Weyl, Family::Even) => weyl_dim(n, &lambda.partition()),
        _ => Err(mismatch()),
    }
}

/// `Σ q^{deg(s)}` over lattice points.
pub fn qdim(family: Family, n: usize, lambda: &DominantWeight) -> Result<QPolynomial> {
    let points = enumerate(&inequalities(family, n, lambda)?);
    let mut out = QPolynomial::zero();
    for s in points.iter() {
        out.add_term(s.degree() as u32, BigUint::one());
    }
    Ok(out)
}
