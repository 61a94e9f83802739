//! Modules over smash products H#B for a graded algebra B with a nilpotent
//! derivation, and the homotopy category they form.

pub mod algebra;
pub mod dg;
pub mod homotopy;
pub mod module;
pub mod ore;

pub use algebra::{DerivationAlgebra, StructureConstant};
pub use dg::{certify_semisimple, dg_p2_checks, DgReport};
pub use homotopy::{
    a_cone, a_null_homotopy, is_a_null_homotopic, is_homotopy_trivial, is_quasi_iso, ACone, AHomotopy, QuasiIsoReport,
};
pub use module::{counit_tensor, h_tensor, kernel, restrict_to_h, smash_hom_basis, SmashHom, SmashModule};
pub use ore::{ore_kill, ore_pullback, OreKill, OrePullback};
