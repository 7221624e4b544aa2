//! Brute-force ground truth: explicit finite abelian groups, the `X_n`
//! model with its unit filtration, and enumeration of subgroups, quotients,
//! conductors and discriminants.
//!
//! Nothing here uses the closed forms of [`crate::counting`] or
//! [`crate::local`].

mod enumerate;
mod explicit;
mod xn;

pub use enumerate::{
    count_automorphisms, count_distinct_subgroups, count_injections, count_quotients, count_subgroups, count_surjections,
    enumerate_quotient_kernels, enumerate_subgroups, SubgroupEnumeration, DEFAULT_CAP,
};
pub use explicit::{type_from_orders, ElementSet, ExplicitGroup, SubgroupHandle, HARD_LIMIT};
pub use xn::{brute_d, brute_z, extensions, BasisLabel, ExtensionRecord, XnModel};
