//! Denniston maximal arcs over GF(2^m), the functional codes they carry, and
//! exhaustive searches bounding those codes' minimum distances.

pub mod arcs;
pub mod conic_bound;
pub mod cubic_search;
pub mod funcode;
pub mod gf;
pub mod report;
