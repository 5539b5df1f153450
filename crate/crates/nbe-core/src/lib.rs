//! Normalization by evaluation for simply typed lambda calculi with weak
//! sums, in three flavors: plain STLC, call-by-push-value, and a polarized
//! calculus with pattern matching. A small finite-model interpreter serves
//! as an independent semantic oracle.

pub mod cbpv;
pub mod kernel;
pub mod oracle;
pub mod polarized;
pub mod stlc;
pub mod surface;
