//! Formal-field calculus at desk scale: the conformal algebra `R̂`, the
//! vertex-algebra structure on vacuum modules, twisted fields on Fock
//! spaces, and Virasoro checks.

pub mod rhat;
pub mod structure;
pub mod twisted;

pub use rhat::{bracket_equiv, conformal_axioms, nprod, w_mode, yplus, RHatElem, WindowReport};
pub use structure::{
    locality, translation_axiom, virasoro_check, virasoro_vector, LocalityReport, VertexStructure,
    VirasoroReport,
};
pub use twisted::{
    e_iota_field, quad_identity_check, quad_mode, twisted_central, FieldKind, FreeField,
    FreeFieldSpace, IotaField,
};
