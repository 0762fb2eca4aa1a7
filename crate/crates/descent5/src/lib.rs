//! Five-isogeny descent machinery for abelian surfaces built as quotients of
//! products of elliptic curves with rational 5-torsion.

pub mod arith;
pub mod curve;
pub mod descent;
pub mod cyclo;
pub mod isogeny;
pub mod pipeline;
