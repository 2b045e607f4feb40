//! Tropical side of the degree computation: fans of signed coordinate
//! cones, Minkowski sums, stable intersection at the origin, and the
//! resulting closed-form degrees.

pub mod degree;
pub mod fan;
pub mod fm;
pub mod intersect;

pub use degree::{
    degree_via_fans, degree_linear_products, degree_with_reciprocals, DegreeResult, DimMult,
    FanTranscript,
};
pub use fan::{lattice_index, minkowski_sum, negate_fan, standard_tls, SignedCone, SignedConeFan};
pub use intersect::{generic_vector, stable_mult_origin, stable_mult_origin_generic};
