use std::fmt;

use super::modp;
use crate::funcfield::{FunctionField, PrimeKind, RatFunc, SupportColumn};

/// Method tag for ranks decided by solving every combination.
pub const EXHAUSTIVE: &str = "exhaustive";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Kummer,
    ArtinSchreier,
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassKind::Kummer => "kummer",
            ClassKind::ArtinSchreier => "artin-schreier",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassStatus {
    CertifiedIndependent,
    /// The first verified relation; all of them are in
    /// [`ClassSystem::dependencies`].
    DependenceWitness(Vec<u64>),
    Inconclusive(String),
}

impl fmt::Display for ClassStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassStatus::CertifiedIndependent => f.write_str("certified-independent"),
            ClassStatus::DependenceWitness(nu) => write!(f, "dependence-witness({nu:?})"),
            ClassStatus::Inconclusive(why) => write!(f, "inconclusive ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnKind {
    /// A support polynomial; `certified` when it is a certified prime.
    Prime { kind: PrimeKind, certified: bool },
    /// A coordinate of the constant class.
    Constant,
    /// A coordinate of an additive normal form or residue.
    Coordinate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub label: String,
    pub kind: ColumnKind,
}

impl Column {
    pub(crate) fn from_support(c: &SupportColumn) -> Self {
        Column {
            label: c.poly.to_string(),
            kind: ColumnKind::Prime {
                kind: c.kind,
                certified: c.prime.is_some(),
            },
        }
    }
}

/// A verified relation among the classes. For Kummer systems
/// `∏ a_i^{ν_i} = φ·ψ·α^p`; for Artin–Schreier systems
/// `Σ ν_i a_i = φ + ψ + α^p − α`. `φ` lies in `C(T)`, `ψ` in `C(U)`; both are
/// trivial (1 or 0) for absolute ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependence {
    pub nu: Vec<u64>,
    pub phi: RatFunc,
    pub psi: RatFunc,
    pub alpha: RatFunc,
}

#[derive(Debug, Clone)]
pub struct ClassSystem {
    pub kind: ClassKind,
    pub p: u64,
    pub field: FunctionField,
    pub elements: Vec<RatFunc>,
    /// Ranks modulo `C(T)·C(U)` contributions.
    pub relative: bool,
    pub columns: Vec<Column>,
    /// Rows are elements; reduce mod `p` for the rank.
    pub valuation_matrix: Vec<Vec<i64>>,
    /// Exact rank, or a certified lower bound when inconclusive.
    pub rank: usize,
    /// Columns carrying a nonsingular `rank × rank` minor.
    pub pivot_columns: Vec<usize>,
    pub dependencies: Vec<Dependence>,
    pub status: ClassStatus,
    /// How the rank was decided, e.g. "valuation matrix".
    pub method: String,
}

impl ClassSystem {
    pub fn n(&self) -> usize {
        self.elements.len()
    }

    pub fn is_certified(&self) -> bool {
        self.status == ClassStatus::CertifiedIndependent
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.status, ClassStatus::Inconclusive(_))
    }

    /// The combination `∏ a_i^{ν_i}` or `Σ ν_i a_i`.
    pub fn combine(&self, nu: &[u64]) -> RatFunc {
        combine(self.kind, &self.field, &self.elements, nu)
    }

    /// Re-checks the matrix rank and every recorded relation.
    pub fn verify(&self) -> bool {
        let m = modp::reduce_matrix(&self.valuation_matrix, self.p);
        let rank_ok = self.method == EXHAUSTIVE || modp::rank(&m, self.p) == self.rank;
        let certified_ok = !self.is_certified() || self.rank == self.n();
        rank_ok && certified_ok && self.dependencies.iter().all(|d| self.check_dependence(d))
    }

    pub fn check_dependence(&self, d: &Dependence) -> bool {
        if d.nu.iter().all(|&x| x == 0) || d.nu.len() != self.n() {
            return false;
        }
        let lhs = self.combine(&d.nu);
        let pure = |f: &RatFunc, t: bool| f.support().iter().all(|&i| self.field.is_t_var(i) == t);
        if !pure(&d.phi, true) || !pure(&d.psi, false) {
            return false;
        }
        let rhs = match self.kind {
            ClassKind::Kummer => d.phi.mul(&d.psi).mul(&d.alpha.pow(self.p)),
            ClassKind::ArtinSchreier => d
                .phi
                .add(&d.psi)
                .add(&d.alpha.pow(self.p))
                .sub(&d.alpha),
        };
        lhs == rhs
    }
}

pub(crate) fn combine(kind: ClassKind, field: &FunctionField, elems: &[RatFunc], nu: &[u64]) -> RatFunc {
    match kind {
        ClassKind::Kummer => elems
            .iter()
            .zip(nu)
            .fold(RatFunc::one(field), |acc, (a, &k)| acc.mul(&a.pow(k))),
        ClassKind::ArtinSchreier => elems.iter().zip(nu).fold(RatFunc::zero(field), |acc, (a, &k)| {
            acc.add(&a.scale(&field.base().from_u64(k)))
        }),
    }
}

/// Rank of `matrix` mod `p`, then one verified relation per kernel vector.
/// A relation that cannot be verified makes the result inconclusive.
#[allow(clippy::too_many_arguments)]
pub(crate) fn finish(
    kind: ClassKind,
    p: u64,
    field: &FunctionField,
    elements: &[RatFunc],
    relative: bool,
    columns: Vec<Column>,
    matrix: Vec<Vec<i64>>,
    method: &str,
    mut witness: impl FnMut(&[u64]) -> Option<Dependence>,
) -> ClassSystem {
    let ncols = columns.len();
    let mut reduced = modp::reduce_matrix(&matrix, p);
    let pivot_columns = modp::rref(&mut reduced, p);
    let rank = pivot_columns.len();
    let reduced = modp::reduce_matrix(&matrix, p);
    let kernel = modp::left_kernel(&reduced, ncols, p);
    let mut dependencies = Vec::new();
    let mut failed = None;
    for nu in kernel {
        match witness(&nu) {
            Some(d) => dependencies.push(d),
            None => {
                failed = Some(nu);
                break;
            }
        }
    }
    let status = match (failed, dependencies.first()) {
        (Some(nu), _) => ClassStatus::Inconclusive(format!(
            "relation {nu:?} on the matrix could not be verified; rank is a lower bound"
        )),
        (None, Some(d)) => ClassStatus::DependenceWitness(d.nu.clone()),
        (None, None) => ClassStatus::CertifiedIndependent,
    };
    if matches!(status, ClassStatus::Inconclusive(_)) {
        dependencies.clear();
    }
    ClassSystem {
        kind,
        p,
        field: field.clone(),
        elements: elements.to_vec(),
        relative,
        columns,
        valuation_matrix: matrix,
        rank,
        pivot_columns,
        dependencies,
        status,
        method: method.into(),
    }
}
