//! Evaluating an IFS: images of point sets, the chaos game, deterministic
//! attractor estimation, Hausdorff distance, fixed points of single maps,
//! and the search for an avoided hyperplane.

mod attractor;
mod avoid;
mod chaos;
mod cloud;
mod fixed_point;
mod hausdorff;
mod ifs;
mod kdtree;

pub use attractor::{attractor_estimate, attractor_estimate_with, image_of, step, thin, Action, AttractorEstimate, AttractorParams, InverseHyperplaneAction};
pub use avoid::{best_avoided_hyperplane, clearance, find_avoided_hyperplane, MIN_CLEARANCE};
pub use chaos::{chaos_game, ChaosCloud};
pub use cloud::{PointCloud, DEDUP_RESOLUTION};
pub use fixed_point::{fixed_point_analysis, FixedPointReport, DOMINANCE_GAP};
pub use hausdorff::{directed_hausdorff, hausdorff, BRUTE_FORCE_LIMIT};
pub use ifs::{ifs_image, Ifs};
pub use kdtree::NearestIndex;
