//! User-distance laws, ordered samplers and the Voronoi ground truth.

pub(crate) mod distance;
mod points;
mod voronoi;

pub use distance::{sample_distance, sample_ordered, DistanceModel, ModelKind, OrderedDistances, PPP_CORRECTION};
pub use points::radial_ppp;
pub use voronoi::{simulate_voronoi_cell, VoronoiSampler, VoronoiScene, MIN_LOAD_PER_USER};
