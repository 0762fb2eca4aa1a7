//! The parametrized elliptic curve family: models, point arithmetic,
//! reduction data, torsion, point search, heights, saturation, and analytic
//! ranks.

pub mod divpoly;
pub mod family;
pub mod field;
pub mod height;
pub mod model;
pub mod rank;
pub mod saturate;
pub mod search;
pub mod torsion;

pub use family::{curve_from_uv, eta_prime_5val, FamilyCurve, ReductionData, ReductionType};
pub use field::CurveField;
pub use model::{find_isomorphism, CurvePoint, WeierstrassIsomorphism, WeierstrassModel};
pub use rank::{analytic_rank, RankPolicy, RankTag};
pub use saturate::{divide_by_5, saturate_at_5, Saturation};
pub use torsion::{is_torsion, torsion_subgroup, TorsionStructure, TorsionSubgroup};
