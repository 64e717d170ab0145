//! Radio propagation under forest canopy and hover-link geometry.
//!
//! A repeater's open-terrain range shrinks under canopy: the effective
//! range is the open range scaled by an attenuation coefficient and by
//! the fraction of the path left clear of trees. A drone hovering at
//! height `h` spends part of that range on the vertical leg, so the
//! radius it serves on the ground is the horizontal leg of a right
//! triangle with hypotenuse equal to the effective range.

use thiserror::Error;

/// Errors from environment validation or link geometry.
#[derive(Debug, Error)]
pub enum RadioError {
    /// A propagation parameter is outside its meaningful range.
    #[error("invalid radio environment: {0}")]
    InvalidEnvironment(String),
    /// The hover height consumes the whole link budget.
    #[error(
        "hover height {hover_height_km} km is at or above the radio range \
         {range_km} km, leaving no ground coverage"
    )]
    HoverTooHigh { range_km: f64, hover_height_km: f64 },
}

/// Canopy attenuation model for repeater radios.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioEnvironment {
    attenuation_k: f64,
    tree_density: f64,
    open_range_km: f64,
}

impl RadioEnvironment {
    /// Builds an environment from an attenuation coefficient `k` in
    /// (0, 1], a tree density in [0, 1), and an open-terrain range in km.
    pub fn new(
        attenuation_k: f64,
        tree_density: f64,
        open_range_km: f64,
    ) -> Result<Self, RadioError> {
        let invalid = |message: String| RadioError::InvalidEnvironment(message);
        if !(attenuation_k.is_finite() && attenuation_k > 0.0 && attenuation_k <= 1.0) {
            return Err(invalid(format!(
                "attenuation coefficient must be in (0, 1], got {attenuation_k}"
            )));
        }
        if !(tree_density.is_finite() && (0.0..1.0).contains(&tree_density)) {
            return Err(invalid(format!(
                "tree density must be in [0, 1), got {tree_density}"
            )));
        }
        if !(open_range_km.is_finite() && open_range_km > 0.0) {
            return Err(invalid(format!(
                "open-terrain range must be positive, got {open_range_km} km"
            )));
        }
        Ok(Self {
            attenuation_k,
            tree_density,
            open_range_km,
        })
    }

    /// Range under canopy: `k * (1 - density) * open_range`.
    pub fn effective_range_km(&self) -> f64 {
        self.attenuation_k * (1.0 - self.tree_density) * self.open_range_km
    }
}

/// Computes the ground radius served by a drone hovering at
/// `hover_height_km` with an effective radio range of `range_km`:
/// `sqrt(range^2 - height^2)`.
pub fn receive_radius_km(range_km: f64, hover_height_km: f64) -> Result<f64, RadioError> {
    if !(range_km.is_finite() && range_km > 0.0) {
        return Err(RadioError::InvalidEnvironment(format!(
            "radio range must be positive, got {range_km} km"
        )));
    }
    if !(hover_height_km.is_finite() && hover_height_km >= 0.0) {
        return Err(RadioError::InvalidEnvironment(format!(
            "hover height must be non-negative, got {hover_height_km} km"
        )));
    }
    if hover_height_km >= range_km {
        return Err(RadioError::HoverTooHigh {
            range_km,
            hover_height_km,
        });
    }
    Ok((range_km * range_km - hover_height_km * hover_height_km).sqrt())
}

/// A validated range / hover-height pair with its derived ground radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Effective radio range (slant), km.
    pub range_km: f64,
    /// Hover height above ground, km.
    pub hover_height_km: f64,
    /// Radius served on the ground, km.
    pub receive_radius_km: f64,
}

impl LinkGeometry {
    /// Validates the pair and computes the ground radius.
    pub fn new(range_km: f64, hover_height_km: f64) -> Result<Self, RadioError> {
        let receive = receive_radius_km(range_km, hover_height_km)?;
        Ok(Self {
            range_km,
            hover_height_km,
            receive_radius_km: receive,
        })
    }
}
