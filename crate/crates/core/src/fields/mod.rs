//! Exact computable fields: `Q`, prime fields, finite fields, cyclotomic
//! fields and towers of simple algebraic extensions over them.

mod cyclotomic;
mod descriptor;
mod element;
mod factor;
mod irreducible;
pub mod linalg;
mod span;
mod tower;
mod unipoly;

pub use cyclotomic::{cyclotomic_coeffs, cyclotomic_polynomial};
pub use descriptor::{
    cyclotomic, finite_field, prime_field, rationals, BaseField, ExtendOptions, Field,
    FieldDescriptor, StepOrigin, TowerStep,
};
pub use element::FieldElement;
pub use factor::{factor_finite, roots_finite, square_free_decomposition, Factorization};
pub use irreducible::{certify_irreducible, certify_over_q, integer_coeffs, rational_root, Irreducibility};
pub use span::{span_closure, SpanClosure};
pub(crate) use span::base_coords;
pub use unipoly::UniPoly;
