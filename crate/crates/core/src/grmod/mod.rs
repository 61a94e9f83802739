//! Graded modules over the three Hopf algebra families.

pub mod decompose;
pub mod degree;
pub mod family;
pub mod hopf;
pub mod module;
pub(crate) mod opmod;
pub mod poly;

pub use decompose::{decompose, is_isomorphic, rank_table, slash_homology, Decomposition, RankTable};
pub use degree::{Degree, Grading};
pub use family::{max_module_dim, Anchor, FamilyKind, HopfFamily, RegularModule};
pub use hopf::{Elem, HopfAlgebra, Tensor2};
pub use module::{hom_basis, Action, GradedModule, ModuleHom, Violation, ViolationKind};
pub use poly::HalfLaurent;
