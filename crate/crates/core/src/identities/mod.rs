//! Identity verification: matrix-valued forms, the identity registry, Fierz
//! rearrangements, basis expansion and a small expression evaluator.

pub mod expand;
pub mod expr;
pub mod fierz;
pub mod matform;
pub mod registry;

pub use expand::{expand_in_gamma_basis, reconstruct};
pub use expr::{eval_expr, eval_text, parse_expr, Expr};
pub use matform::MatForm;
pub use registry::{lookup, verify, verify_all, IdentityReport, REGISTRY};
