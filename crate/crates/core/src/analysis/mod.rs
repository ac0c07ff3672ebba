//! Scene-level analyses: components, weak semiconvexity, shadow rasters,
//! supporting rays and the theorem audit.

mod audit;
mod components;
mod samples;
mod shadow;
mod support;
mod weak;

pub use audit::{theorem_audit, AuditConfig, AuditReport, Check, ModeSummary};
pub use components::{components, connected, separation, ComponentPartition};
pub use samples::{boundary_samples, common_tangents, perimeter_point, tangent_probes, BoundarySample, SampleSet};
pub use shadow::{label_components, shadow_scan, shadow_scan_grid, Cell, Grid, ShadowRaster};
pub use support::{inner_supporting_rays, supporting_rays, SupportRay};
pub use weak::{weak_semiconvexity_report, WeakReport};
