//! The stable category: modules modulo maps that factor through projectives.

pub mod homotopy;
pub mod radford;
pub mod shift;
pub mod triangle;

pub use homotopy::{
    h_tensor, is_null_homotopic, is_stably_trivial, null_homotopic_basis, null_homotopy, stable_class, stable_core,
    stable_decompose, stable_hom, stable_hom_dim, stably_isomorphic, HTensor, HomotopyWitness, StableHom,
};
pub use radford::{
    distinguished_grouplike, radford_identity_holds, radford_section, swap_intertwines_integral, swap_iso, Grouplike,
    RadfordSection,
};
pub use shift::{
    augmentation_ideal, counit_tensor, shift_t, shift_t_map, shift_t_presentation, shift_tprime, shift_tprime_map,
    ShiftPresentation,
};
pub use triangle::{
    check_triangle_morphism, complete_triangle_morphism, cone, MorphismCheck, Triangle, TriangleMorphism,
};
