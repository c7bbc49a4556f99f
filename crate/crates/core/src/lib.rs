//! Exact combinatorics of FFLV polytopes for the symplectic Lie algebras
//! `sp(2n)` and the odd symplectic algebras `sp(2n+1)`.
//!
//! - [`rootsys`]: root posets, symplectic Dyck paths, weight arithmetic
//! - [`polytope`]: inequality systems, lattice-point enumeration, Minkowski
//!   and slice checks, Ehrhart counts
//! - [`characters`]: PBW-graded characters and dimensions, computed from the
//!   polytope and independently from the branching rule
//! - [`marked_poset`]: marked order/chain polytopes and the transfer map
//! - [`straightening`]: the monomial order, derivations and leading-term
//!   checks of the straightening law

pub mod characters;
pub mod error;
pub mod marked_poset;
pub mod polytope;
pub mod rootsys;
pub mod straightening;

use serde::Serialize;

pub use characters::{GradedCharacter, QPolynomial};
pub use error::{Error, Result};
pub use marked_poset::MarkedPoset;
pub use polytope::{enumerate, inequalities, InequalitySystem, LatticePoint, PointSet};
pub use rootsys::{build_poset, dyck_paths, DominantWeight, DyckPath, Family, RootLabel, Weight};
pub use straightening::{FMonomial, FPolynomial};

/// Outcome of a mechanical check.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail {
        reason: String,
        witness: serde_json::Value,
    },
}

impl Verdict {
    pub fn fail(reason: &str, witness: serde_json::Value) -> Self {
        Verdict::Fail { reason: reason.to_string(), witness }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}
