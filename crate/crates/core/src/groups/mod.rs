//! Finite groups by Cayley table, subgroup lattices and `p`-Frattini
//! subgroups.

mod catalog;
mod frattini;
mod group;
mod subgroup;

pub use catalog::{catalog, catalog_names, load_catalog_file, load_group, NAMES};
pub use frattini::{
    explore_counterexamples, explore_groups, frattini_generated, frattini_intersection, frattini_p, relative_frattini,
    verify_socle_equation, EquationOutcome, ExploreRecord, Frattini, RelativeFrattini, SocleCheck, Verdict,
};
pub use group::{parse_cycles, FiniteGroup, CLOSURE_LIMIT};
pub use subgroup::{subgroups, subgroups_bounded, Subgroup, DEFAULT_ORDER_BOUND};
