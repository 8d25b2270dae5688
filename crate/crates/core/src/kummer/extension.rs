use super::classes::{ClassKind, ClassSystem};
use crate::error::{Error, Result};
use crate::fields::FieldElement;
use crate::funcfield::{FunctionField, RatFunc};

/// A `C_p^n`-extension `F(a_1^{1/p}, …)` or `F(℘^{-1}a_1, …)`, recorded
/// symbolically: the roots are not computed with.
#[derive(Debug, Clone)]
pub struct ExtensionDescriptor {
    pub base: FunctionField,
    pub kind: ClassKind,
    pub p: u64,
    /// `(a_i, defining polynomial)`.
    pub generators: Vec<(RatFunc, String)>,
    /// Rank `n` of the elementary abelian Galois group.
    pub group_rank: usize,
    /// `galois_action[i][j] = k`: the `i`-th generator sends root `j` to
    /// `ε^k·root` (Kummer) or `root + k` (Artin–Schreier).
    pub galois_action: Vec<Vec<u64>>,
    pub epsilon: Option<FieldElement>,
}

impl ExtensionDescriptor {
    pub fn degree(&self) -> Option<u64> {
        self.p.checked_pow(self.group_rank as u32)
    }

    pub fn action_description(&self, i: usize, j: usize) -> String {
        let k = self.galois_action[i][j];
        match self.kind {
            ClassKind::Kummer if k == 0 => format!("θ{j} ↦ θ{j}"),
            ClassKind::Kummer => format!("θ{j} ↦ ε^{k}·θ{j}"),
            ClassKind::ArtinSchreier => format!("θ{j} ↦ θ{j} + {k}"),
        }
    }
}

pub fn build_cpn_extension(sys: &ClassSystem) -> Result<ExtensionDescriptor> {
    if !sys.is_certified() {
        return Err(Error::NotCertified);
    }
    let n = sys.n();
    let generators = sys
        .elements
        .iter()
        .map(|a| {
            let poly = match sys.kind {
                ClassKind::Kummer => format!("X^{} - ({a})", sys.p),
                ClassKind::ArtinSchreier => format!("X^{} - X - ({a})", sys.p),
            };
            (a.clone(), poly)
        })
        .collect();
    let galois_action = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    let epsilon = match sys.kind {
        ClassKind::Kummer => sys.field.base().root_of_unity(sys.p),
        ClassKind::ArtinSchreier => None,
    };
    Ok(ExtensionDescriptor {
        base: sys.field.clone(),
        kind: sys.kind,
        p: sys.p,
        generators,
        group_rank: n,
        galois_action,
        epsilon,
    })
}
