//! Exact cohomology computations for finite groups.
//!
//! - [`group`], [`iso`]: finite groups from Cayley tables, validation, isomorphism search.
//! - [`abelian`]: finite abelian groups, subgroups, kernels, quotients (Smith normal form).
//! - [`module`]: G-modules, equivariant maps, invariants.
//! - [`cochain`], [`cohomology`], [`induced`]: the bar complex, `H^n(G, A)`,
//!   crossed homomorphisms, change of groups, induced modules and dimension shifting.
//! - [`extension`]: group extensions from 2-cocycles and their classification.
//! - [`exact`]: short exact sequences of modules, connecting maps, long exact sequences.
//! - [`lp`], [`haar`]: covering linear programs for approximate integrals and the
//!   invariant integral on a finite group.
//! - [`lie`]: Chevalley–Eilenberg cohomology of Lie algebras over the rationals.
//! - [`json`]: the JSON interchange formats.

pub mod abelian;
pub mod cochain;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod extension;
pub mod group;
pub mod haar;
pub mod induced;
pub mod iso;
pub mod json;
pub mod lie;
pub mod lp;
pub mod module;
pub mod rational;

pub use abelian::{AbelianHom, FiniteAbelianGroup, Subgroup, Subquotient};
pub use cochain::Cochain;
pub use cohomology::{
    change_of_groups, classify_cochain, cohomology, crossed_homomorphisms, ChangeOfGroups, Classification,
    CohomologyClass, CohomologyGroup,
};
pub use error::{Error, Result};
pub use exact::{connecting, long_exact_sequence, make_ses, LesReport, ModuleSes};
pub use extension::{build_extension, classify_extensions, cocycle_from_section, equivalent, ClassifiedExtension, Extension};
pub use group::{build_group, validate_group, FiniteGroup, GroupHom, GroupSpec, ValidationReport};
pub use haar::{
    approx_integral, invariant_integral, near_additivity_gap, overlap_function, product_set_check,
    relative_integral, GroupFunction, HaarReport, SymmetricSet,
};
pub use induced::{dimension_shift_check, induced_module, DimensionShiftReport, InducedModule};
pub use lie::{build_lie_algebra, ce_cohomology, LieAlgebra, LieCohomology, LieModule};
pub use module::{build_module, fixed_points, ActionSpec, GModule, ModuleMap};

/// Size caps shared by every computation. All enumeration and validation
/// is exhaustive, so these bound the work rather than the accuracy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Largest group accepted by validation.
    pub max_group_order: usize,
    /// Largest cohomological degree.
    pub max_degree: usize,
    /// Largest number of tuples `|G|^k` in any cochain space touched.
    pub max_tuples: u128,
    /// Largest extension group for brute-force equivalence search.
    pub max_extension_order: usize,
    /// Largest extension group that gets an isomorphism-type label.
    pub max_label_order: usize,
    /// Largest set enumerated element by element.
    pub max_enumeration: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_group_order: 128,
            max_degree: 3,
            max_tuples: 20736,
            max_extension_order: 64,
            max_label_order: 32,
            max_enumeration: 1 << 20,
        }
    }
}
