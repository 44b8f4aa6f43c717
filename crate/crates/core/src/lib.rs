//! Core library: vignette catalog, zero-Doppler geocoding, map-coordinate
//! stack coregistration, interferometric time-series, and the synthetic-scene
//! tooling used to validate all of it.

pub mod geometry;
pub mod poly;
