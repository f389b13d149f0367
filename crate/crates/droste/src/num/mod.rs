//! Numerical substrate shared by the geometry, geodesic, and embedding layers.

pub mod diff;
pub mod ode;
pub mod quad;
pub mod root;
