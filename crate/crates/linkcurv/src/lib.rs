//! Scene files, connection files, CSV reports and the command-line driver
//! built on `linkcurv-core`.

pub mod cli;
pub mod connection;
pub mod report;
pub mod scene;

pub use scene::{parse_scene, parse_scene_str, serialize_scene, Diagnostic};
