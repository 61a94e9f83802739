//! Grothendieck rings: R_n and the split ring in the balanced basis.

pub mod fusion;
pub mod rn;

pub use fusion::{
    balanced_family, balanced_indecomposable, base_case_holds, fusion_set, fusion_table, hm_split_deviation,
    product_table, split_class, split_class_of, verlinde_oracle, FusionCell, FusionTable, VerlindeElem,
};
pub use rn::{class_of, rn_mul, RnElem};
