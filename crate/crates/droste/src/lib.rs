//! Numerical differential geometry for the Schwarzschild family of charts.
//!
//! The crate treats a spacetime as an atlas of concrete coordinate charts and
//! measures everything instead of assuming it: curvature residuals against the
//! vacuum field equations, isometry residuals of chart transitions, conserved
//! quantities along integrated geodesics, pullback residuals of flat-space
//! embeddings, and the gluing topology that distinguishes the maximally
//! extended manifold from its proper subcharts.
//!
//! Module map:
//!
//! * [`num`] — the small numerical substrate: central differences, adaptive
//!   Gauss–Kronrod quadrature, safeguarded Newton root finding, and an
//!   embedded Dormand–Prince 5(4) integrator with event bisection.
//! * [`geometry`] — charts as metric closures, Christoffel symbols
//!   (closed-form or differenced), Riemann/Ricci residuals, sectional
//!   curvature of 2-D charts, causal classification, and the static warped
//!   models with their closed-form vacuum residuals.
//! * [`charts`] — the chart registry, the Kruskal profile `f`, `F` and the
//!   numeric inverse of `f`, region decomposition of the (u, v) plane, and
//!   every chart-to-chart transition.
//! * [`geodesics`] — adaptive geodesic integration with horizon and blow-up
//!   events, closed-form radial null geodesics, the exponential map, Killing
//!   energy, and the capture / no-traversal experiments.
//! * [`embeddings`] — the Kasner and Fronsdal maps into flat 6-D space,
//!   their radial integrals by quadrature, pullback-isometry residuals,
//!   hypersurface constraints, and the horizon homothety.
//! * [`topology`] — gluing structures, the Hausdorff-witness search, the
//!   Einstein–Rosen bridge, and broken-geodesic connectivity queries.
//! * [`conformance`] — the dossier of printed-formula discrepancies, each
//!   carried as a measurement, never as an assertion of intent.
//! * [`report`] — deterministic report assembly (9-significant-digit floats,
//!   stable key order, CSV/JSON writers).
//! * [`cli`] — the subcommand front end used by the `droste` binary.

pub mod charts;
pub mod cli;
pub mod conformance;
pub mod embeddings;
pub mod geodesics;
pub mod geometry;
pub mod num;
pub mod report;
pub mod topology;
