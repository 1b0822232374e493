//! Frame geometry: commutator, structural functions, the Levi-Civita
//! connection written in the frame, the curvature operator and `K`.

mod connection;
mod curvature;
mod grid;
mod types;

pub use connection::{
    commutator, connection_ab, covariant_derivatives, frame_connection, structural_functions, ConnectionData,
    FrameVector, StructuralFunctions,
};
pub use curvature::{
    k_closed_form, k_orthogonal, k_orthogonal_a11, k_orthonormal, k_pipeline, q_value, riemann_frame_components,
    xi_closed_form, XiPair,
};
pub use grid::{eval_at_points, eval_on_grid};
pub use types::{Chart, ChartFrame, MetricConstants, Point, Sampling, VectorField, FRAME_EPSILON, GRID_INSET};
