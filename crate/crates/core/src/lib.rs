//! Prime factorisation of knots via edge-ideal triangulations.
//!
//! A knot is represented as an embedded loop of edges in a triangulated
//! 3-sphere. The factorisation engine repeatedly finds quad vertex normal
//! 2-spheres meeting the loop in zero or two points, crushes them, and
//! certifies the resulting prime summands through their knot groups.

pub mod build;
pub mod census;
pub mod crush;
pub mod diagram;
pub mod factorize;
pub mod homology;
pub mod isosig;
pub mod loops;
pub mod moves;
pub mod normal;
pub mod perm;
pub mod pi1;
pub mod serialize;
pub mod shorten;
pub mod simplify;
pub mod tri;
