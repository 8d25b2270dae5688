//! Ranks and membership in `F*/(F*)^p` for `F = K(T, U)`, `p` different
//! from the characteristic and `ε_p ∈ K`.

use std::collections::BTreeSet;

use super::classes::{finish, ClassKind, ClassSystem, Column, ColumnKind, Dependence};
use super::constants::{ClassVector, ConstantClasses};
use super::modp;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::fields::{cyclotomic_polynomial, FieldElement};
use crate::funcfield::{coprime_support, decompose, Decomposition, FunctionField, PrimeKind, RatFunc, SupportColumn};

/// Checks the Kummer preconditions and returns a primitive `p`-th root of
/// unity of the base field.
pub fn kummer_preconditions(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<FieldElement> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let base = field.base();
    if base.characteristic() == p {
        return Err(Error::WrongCharacteristic(format!(
            "Kummer classes need p ≠ char {}",
            base.name()
        )));
    }
    let missing = || Error::MissingRootOfUnity {
        field: base.name().to_string(),
        p,
    };
    let eps = base.root_of_unity(p).ok_or_else(missing)?;
    if !cyclotomic_polynomial(base, p).eval(&eps).is_zero() {
        return Err(missing());
    }
    check_elements(field, elems)?;
    Ok(eps)
}

pub(crate) fn check_elements(field: &FunctionField, elems: &[RatFunc]) -> Result<()> {
    for e in elems {
        if e.ring() != field {
            return Err(Error::ParentMismatch(e.ring().to_string(), field.to_string()));
        }
    }
    Ok(())
}

fn check_nonzero(elems: &[RatFunc]) -> Result<()> {
    if elems.iter().any(|e| e.is_zero()) {
        return Err(Error::InvalidArgument("Kummer classes need nonzero elements".into()));
    }
    Ok(())
}

/// Valuation data shared by the Kummer operations.
struct Table {
    support: Vec<SupportColumn>,
    decomps: Vec<Decomposition>,
    constants: ConstantClasses,
    /// Per element, when every constant could be classified.
    const_vectors: Option<Vec<ClassVector>>,
}

impl Table {
    fn new(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<Self> {
        let support = coprime_support(elems);
        let decomps = elems
            .iter()
            .map(|e| decompose(e, &support))
            .collect::<Result<Vec<_>>>()?;
        let constants = ConstantClasses::new(field.base(), p);
        let const_vectors = decomps
            .iter()
            .map(|d| constants.classify(&d.unit, p))
            .collect::<Option<Vec<_>>>();
        Ok(Table {
            support,
            decomps,
            constants,
            const_vectors,
        })
    }

    fn constant_labels(&self) -> Vec<String> {
        let labels: BTreeSet<&String> = self
            .const_vectors
            .iter()
            .flatten()
            .flatten()
            .map(|(l, _)| l)
            .collect();
        labels.into_iter().cloned().collect()
    }

    /// Columns and integer rows; `mixed_only` keeps the mixed primes alone.
    fn matrix(&self, mixed_only: bool) -> (Vec<Column>, Vec<Vec<i64>>) {
        let keep: Vec<usize> = (0..self.support.len())
            .filter(|&j| !mixed_only || self.support[j].kind == PrimeKind::Mixed)
            .collect();
        let mut columns: Vec<Column> = keep.iter().map(|&j| Column::from_support(&self.support[j])).collect();
        let mut rows: Vec<Vec<i64>> = self
            .decomps
            .iter()
            .map(|d| keep.iter().map(|&j| d.exponents[j]).collect())
            .collect();
        if !mixed_only {
            if let Some(cv) = &self.const_vectors {
                let labels = self.constant_labels();
                for l in &labels {
                    columns.push(Column {
                        label: l.clone(),
                        kind: ColumnKind::Constant,
                    });
                }
                for (row, v) in rows.iter_mut().zip(cv) {
                    for l in &labels {
                        row.push(v.iter().filter(|(k, _)| k == l).map(|(_, e)| e).sum());
                    }
                }
            }
        }
        (columns, rows)
    }

    /// Splits `f` (supported on the columns) as `φ·ψ·α^p`, with `φ` carrying
    /// the constant and the pure-T part, `ψ` the pure-U part. With
    /// `absolute`, every exponent must be divisible by `p` and the constant
    /// must have a `p`-th root, leaving `φ = ψ = 1`.
    fn split(&self, field: &FunctionField, f: &RatFunc, p: u64, absolute: bool) -> Option<(RatFunc, RatFunc, RatFunc)> {
        let d = decompose(f, &self.support).ok()?;
        let p_i = p as i64;
        let mut phi = RatFunc::one(field);
        let mut psi = RatFunc::one(field);
        let mut alpha = RatFunc::one(field);
        if absolute {
            alpha = RatFunc::constant(field, self.constants.pth_root(&d.unit, p)?);
        } else {
            phi = RatFunc::constant(field, d.unit.clone());
        }
        for (c, &e) in self.support.iter().zip(&d.exponents) {
            let col = RatFunc::from_poly(c.poly.clone());
            if absolute || c.kind == PrimeKind::Mixed {
                if e % p_i != 0 {
                    return None;
                }
                alpha = alpha.mul(&col.pow_i64(e / p_i).ok()?);
            } else if c.kind == PrimeKind::PureT {
                phi = phi.mul(&col.pow_i64(e).ok()?);
            } else {
                psi = psi.mul(&col.pow_i64(e).ok()?);
            }
        }
        Some((phi, psi, alpha))
    }
}

fn verified(
    field: &FunctionField,
    elems: &[RatFunc],
    table: &Table,
    p: u64,
    absolute: bool,
    nu: &[u64],
) -> Option<Dependence> {
    let f = super::classes::combine(ClassKind::Kummer, field, elems, nu);
    let (phi, psi, alpha) = table.split(field, &f, p, absolute)?;
    (phi.mul(&psi).mul(&alpha.pow(p)) == f).then(|| Dependence {
        nu: nu.to_vec(),
        phi,
        psi,
        alpha,
    })
}

/// Rank of the classes of `elems` in `F*/(F*)^p`.
pub fn kummer_rank(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<ClassSystem> {
    kummer_preconditions(field, elems, p)?;
    check_nonzero(elems)?;
    let table = Table::new(field, elems, p)?;
    let (columns, matrix) = table.matrix(false);
    let method = if table.const_vectors.is_some() {
        "valuation matrix with constant classes"
    } else {
        "valuation matrix"
    };
    Ok(finish(ClassKind::Kummer, p, field, elems, false, columns, matrix, method, |nu| {
        verified(field, elems, &table, p, true, nu)
    }))
}

/// Rank of the classes of `elems` modulo `C(T)*·C(U)*·(F*)^p`, read off the
/// valuations at mixed primes.
pub fn kummer_relative_rank(field: &FunctionField, elems: &[RatFunc], p: u64) -> Result<ClassSystem> {
    kummer_preconditions(field, elems, p)?;
    check_nonzero(elems)?;
    require_mixed(field)?;
    let table = Table::new(field, elems, p)?;
    let (columns, matrix) = table.matrix(true);
    Ok(finish(
        ClassKind::Kummer,
        p,
        field,
        elems,
        true,
        columns,
        matrix,
        "mixed-prime valuations",
        |nu| verified(field, elems, &table, p, false, nu),
    ))
}

pub(crate) fn require_mixed(field: &FunctionField) -> Result<()> {
    if field.t_vars().is_empty() || field.u_vars().is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{field} needs at least one T-variable and one U-variable"
        )));
    }
    Ok(())
}

/// Outcome of testing `b ∈ <A>·(F*)^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `b = ∏ a_i^{ν_i} · α^p`, verified.
    Member { nu: Vec<u64>, alpha: RatFunc },
    /// A combination `Σ y_j v_j` of valuation (or constant-class) columns
    /// that vanishes on every `a_i` but not on `b`. Usually a single prime.
    NonMember { witness: Vec<(String, u64)> },
    Inconclusive(String),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

pub fn pth_root_membership(field: &FunctionField, b: &RatFunc, a: &[RatFunc], p: u64) -> Result<Membership> {
    kummer_preconditions(field, a, p)?;
    check_elements(field, std::slice::from_ref(b))?;
    check_nonzero(a)?;
    check_nonzero(std::slice::from_ref(b))?;
    let mut all = a.to_vec();
    all.push(b.clone());
    let table = Table::new(field, &all, p)?;
    let (columns, mut rows) = table.matrix(false);
    let target: Vec<u64> = modp::reduce_matrix(&rows.split_off(a.len()), p).remove(0);
    let m = modp::reduce_matrix(&rows, p);
    let ncols = columns.len();
    let mt = modp::transpose(&m, ncols);
    match modp::solve(&mt, a.len(), &target, p) {
        Ok(nu) => {
            let prod = super::classes::combine(ClassKind::Kummer, field, a, &nu);
            let rest = b.div(&prod)?;
            let Some((_, _, alpha)) = table.split(field, &rest, p, true) else {
                return Ok(Membership::Inconclusive(
                    "valuations match but the constant part has no known p-th root".into(),
                ));
            };
            if prod.mul(&alpha.pow(p)) != *b {
                return Ok(Membership::Inconclusive("constructed root failed to verify".into()));
            }
            Ok(Membership::Member { nu, alpha })
        }
        Err(y) => {
            // prefer a single column on which every a_i vanishes
            let single = (0..ncols).find(|&j| target[j] != 0 && m.iter().all(|r| r[j] == 0));
            let y = match single {
                Some(j) => (0..ncols).map(|i| u64::from(i == j)).collect(),
                None => y,
            };
            Ok(Membership::NonMember {
                witness: columns
                    .iter()
                    .zip(&y)
                    .filter(|(_, &c)| c != 0)
                    .map(|(col, &c)| (col.label.clone(), c))
                    .collect(),
            })
        }
    }
}
