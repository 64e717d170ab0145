//! Planning toolkit for drone-assisted wildfire response.
//!
//! The crate covers the full planning chain for a regional fire agency
//! operating small drone fleets:
//!
//! - [`ingest`]: hotspot / city / fire-history / series tables and the run
//!   configuration file
//! - [`geo`]: great-circle distance, hotspot clustering, command-post
//!   (EOC) assignment
//! - [`radio`]: link attenuation and the ground-reception radius under a
//!   hovering repeater
//! - [`fleet`]: concentric-square scan plans, per-incident drone counts,
//!   and the annual procurement budget
//! - [`forecast`]: additive Holt-Winters smoothing, grid fitting, and
//!   horizon forecasts for seasonal fire counts
//! - [`firemask`]: HSV burn-pixel segmentation of aerial imagery and the
//!   repeater grid cover derived from it
//! - [`deploy`]: hover lattices, relay chains, overwatch points, and
//!   GeoJSON emission
//! - [`sensitivity`]: one-at-a-time parameter sweeps over the budget
//!   pipeline
//!
//! All geometry uses a spherical Earth of radius
//! [`geo::EARTH_RADIUS_KM`]. All functions are deterministic: identical
//! inputs produce identical outputs, byte for byte where text is emitted.

pub mod deploy;
pub mod firemask;
pub mod fleet;
pub mod forecast;
pub mod geo;
pub mod ingest;
pub mod radio;
pub mod sensitivity;
