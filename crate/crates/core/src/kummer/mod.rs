//! Independence of classes in `F*/(F*)^p` (Kummer) and `F/℘(F)`
//! (Artin–Schreier) for function fields `F = K(T, U)`, relative ranks modulo
//! the contributions of `K(T)` and `K(U)`, and the resulting
//! `C_p^n`-extensions.

mod additive;
mod classes;
mod constants;
mod extension;
pub mod modp;
mod multiplicative;

pub use additive::{
    as_rank, as_relative_rank, wp, wp_solve, AsStrategy, LinearSystem, Obstruction, WpOutcome, MAX_COMBINATIONS,
};
pub use classes::{ClassKind, ClassStatus, ClassSystem, Column, ColumnKind, Dependence, EXHAUSTIVE};
pub use extension::{build_cpn_extension, ExtensionDescriptor};
pub use multiplicative::{kummer_preconditions, kummer_rank, kummer_relative_rank, pth_root_membership, Membership};
