//! Scene files, IO formats, parallel kernels and the command pipeline on
//! top of `projifs-core`.

pub mod commands;
pub mod examples;
pub mod fixtures;
pub mod formats;
pub mod parallel;
pub mod report;
pub mod scene;
