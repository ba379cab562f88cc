//! Torus maps, Denjoy examples, rotation estimates and orbit tools.

pub mod denjoy;
pub mod map;
pub mod orbit;
pub mod rotation;

pub use denjoy::{denjoy_product_set, DenjoyBase, DenjoyProduct, Gap};
pub use map::{eval_lift, LiftFn, MapFamily, Point, TorusMapSpec};
pub use orbit::{
    component_dynamics, image_raster, is_invariant, minimality_check, orbit_closure_raster, Behavior, ComponentVerdict,
    MinimalityCertificate, OrbitRaster,
};
pub use rotation::{
    orthogonal_rotation, rationality_test, rotation_set_estimate, ChartLift, OrthogonalRotation, RationalVerdict,
    RotationParams, RotationSetEstimate,
};
