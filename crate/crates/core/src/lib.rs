//! Real projective iterated function systems on P¹ and P².
//!
//! The crate is `no_std` and only needs an allocator. Everything here is
//! pure computation: projective points and maps, convex bodies relative to
//! an avoided hyperplane, attractor estimation, contractivity certificates,
//! the point/hyperplane duality, basins, the index of an IFS, and a raster
//! back end that produces RGBA buffers. File formats, PNG encoding and the
//! command line live in the `projifs` crate.

#![no_std]

extern crate alloc;

pub mod basin;
pub mod certify;
pub mod convex;
pub mod duality;
pub mod engine;
pub mod fixtures;
mod error;
pub mod grid;
pub mod index;
pub mod linalg;
pub mod math;
pub mod projcore;
pub mod render;

pub use error::{Error, Result, Stage};
pub use projcore::{cross_ratio, normalize, round_distance, Dim, Hyperplane, ProjMap, ProjPoint};
