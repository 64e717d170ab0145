//! Seasonal demand forecasting with additive Holt-Winters smoothing.
//!
//! A series of per-period counts (e.g. fires per month) is decomposed
//! into level, trend, and an additive seasonal cycle. The smoother's
//! three coefficients can be supplied directly or fitted by exhaustive
//! grid search against the one-step-ahead prediction error.
//!
//! All state updates funnel through one shared step function, so a
//! series generated by the model is reproduced bit-for-bit by the
//! smoother with the generating coefficients.

use thiserror::Error;

/// Errors from series construction, smoothing, or fitting.
#[derive(Debug, Error)]
pub enum ForecastError {
    /// Seasonal smoothing needs a cycle of at least two periods.
    #[error("season length must be at least 2, got {0}")]
    InvalidSeason(usize),
    /// A series value is NaN or infinite.
    #[error("series values must be finite; value {index} is {value}")]
    InvalidValue { index: usize, value: f64 },
    /// The series is too short to initialize the smoother.
    #[error(
        "series has {len} observations but initialization needs at least \
         {needed} (two full seasons)"
    )]
    InsufficientData { len: usize, needed: usize },
    /// A smoothing coefficient is outside [0, 1].
    #[error("smoothing coefficient {name} must be in [0, 1], got {value}")]
    InvalidParam { name: &'static str, value: f64 },
    /// The fitting grid step is outside (0, 1].
    #[error("grid step must be in (0, 1], got {0}")]
    InvalidGridStep(f64),
    /// Paired slices have different lengths.
    #[error("length mismatch: {actual} actual vs {predicted} predicted values")]
    LengthMismatch { actual: usize, predicted: usize },
    /// An error metric was requested over zero values.
    #[error("cannot compute an error metric over zero values")]
    EmptySeries,
}

/// A periodic series of observations with a known season length.
#[derive(Debug, Clone, PartialEq)]
pub struct SeasonalSeries {
    values: Vec<f64>,
    season_length: usize,
}

impl SeasonalSeries {
    /// Wraps finite observations with a season of at least two periods.
    pub fn new(values: Vec<f64>, season_length: usize) -> Result<Self, ForecastError> {
        if season_length < 2 {
            return Err(ForecastError::InvalidSeason(season_length));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(ForecastError::InvalidValue { index, value });
            }
        }
        Ok(Self {
            values,
            season_length,
        })
    }

    /// The observations in time order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of periods in one seasonal cycle.
    pub fn season_length(&self) -> usize {
        self.season_length
    }
}

/// Validated smoothing coefficients, each in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl HwParams {
    /// Validates level (`alpha`), trend (`beta`), and seasonal (`gamma`)
    /// coefficients.
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self, ForecastError> {
        let check = |value: f64, name: &'static str| {
            if value.is_finite() && (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(ForecastError::InvalidParam { name, value })
            }
        };
        check(alpha, "alpha")?;
        check(beta, "beta")?;
        check(gamma, "gamma")?;
        Ok(Self { alpha, beta, gamma })
    }

    /// Level coefficient.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Trend coefficient.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Seasonal coefficient.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// Smoother state after consuming some prefix of a series.
///
/// `seasonal` is kept in consumption order: index 0 is the offset the
/// next observation will use, index 1 the one after, and so on.
#[derive(Debug, Clone, PartialEq)]
pub struct HwState {
    /// Deseasonalized series level.
    pub level: f64,
    /// Per-period change in level.
    pub trend: f64,
    /// Additive seasonal offsets, next-to-use first.
    pub seasonal: Vec<f64>,
}

/// One smoother update; every code path uses exactly this arithmetic.
///
/// Returns `(new_level, new_trend, new_seasonal)` where `new_seasonal`
/// replaces the consumed offset `s_old`.
#[inline]
fn hw_step(y: f64, level: f64, trend: f64, s_old: f64, params: &HwParams) -> (f64, f64, f64) {
    let drift = level + trend;
    let new_level = params.alpha * (y - s_old) + (1.0 - params.alpha) * drift;
    let new_trend = params.beta * (new_level - level) + (1.0 - params.beta) * trend;
    let new_seasonal = params.gamma * (y - new_level) + (1.0 - params.gamma) * s_old;
    (new_level, new_trend, new_seasonal)
}

/// One-step-ahead prediction from a state: level plus trend plus the
/// next seasonal offset.
#[inline]
fn hw_predict(level: f64, trend: f64, s_next: f64) -> f64 {
    level + trend + s_next
}

/// Initializes smoother state from the first two seasons.
///
/// The level starts at the first season's mean, the trend at the
/// per-period difference between the two season means, and each seasonal
/// offset at the first season's deviation from its mean.
pub fn hw_init(series: &SeasonalSeries) -> Result<HwState, ForecastError> {
    let s = series.season_length();
    let values = series.values();
    let needed = 2 * s;
    if values.len() < needed {
        return Err(ForecastError::InsufficientData {
            len: values.len(),
            needed,
        });
    }

    let mean1 = values[..s].iter().sum::<f64>() / s as f64;
    let mean2 = values[s..2 * s].iter().sum::<f64>() / s as f64;
    Ok(HwState {
        level: mean1,
        trend: (mean2 - mean1) / s as f64,
        seasonal: values[..s].iter().map(|&y| y - mean1).collect(),
    })
}

/// States and one-step-ahead predictions from a full smoothing pass.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothOutput {
    /// State after each observation; the last entry forecasts the
    /// future.
    pub states: Vec<HwState>,
    /// Prediction made for each observation before it was consumed.
    pub fitted: Vec<f64>,
}

/// Runs the smoother over every observation from an initial state.
///
/// # Panics
///
/// Panics if the state's seasonal buffer does not match the series'
/// season length.
pub fn hw_smooth(series: &SeasonalSeries, params: &HwParams, init: &HwState) -> SmoothOutput {
    assert_eq!(
        init.seasonal.len(),
        series.season_length(),
        "seasonal buffer must match the season length"
    );

    let n = series.values().len();
    let mut states = Vec::with_capacity(n);
    let mut fitted = Vec::with_capacity(n);
    let mut level = init.level;
    let mut trend = init.trend;
    let mut seasonal = init.seasonal.clone();

    for &y in series.values() {
        let s_old = seasonal[0];
        fitted.push(hw_predict(level, trend, s_old));
        let (new_level, new_trend, new_seasonal) = hw_step(y, level, trend, s_old, params);
        level = new_level;
        trend = new_trend;
        seasonal.rotate_left(1);
        *seasonal.last_mut().expect("non-empty seasonal buffer") = new_seasonal;
        states.push(HwState {
            level,
            trend,
            seasonal: seasonal.clone(),
        });
    }

    SmoothOutput { states, fitted }
}

/// Forecast `k` periods past a state: the level drifts `k` trends and
/// picks up the seasonal offset for that period.
///
/// # Panics
///
/// Panics if `k` is zero or the state has no seasonal offsets.
pub fn hw_forecast(state: &HwState, k: u64) -> f64 {
    assert!(k >= 1, "forecast horizon starts at 1");
    let s = state.seasonal.len();
    assert!(s > 0, "state must carry seasonal offsets");
    let offset = state.seasonal[((k - 1) % s as u64) as usize];
    state.level + k as f64 * state.trend + offset
}

/// Root-mean-square difference between paired values.
pub fn rmse(actual: &[f64], predicted: &[f64]) -> Result<f64, ForecastError> {
    if actual.len() != predicted.len() {
        return Err(ForecastError::LengthMismatch {
            actual: actual.len(),
            predicted: predicted.len(),
        });
    }
    if actual.is_empty() {
        return Err(ForecastError::EmptySeries);
    }
    let sum: f64 = actual
        .iter()
        .zip(predicted)
        .map(|(a, p)| (a - p) * (a - p))
        .sum();
    Ok((sum / actual.len() as f64).sqrt())
}

/// Candidate coefficient values `0, step, 2 step, ...` capped below 1,
/// plus 1 itself.
fn param_grid(step: f64) -> Vec<f64> {
    let mut values = Vec::new();
    let mut i: u64 = 0;
    loop {
        let value = i as f64 * step;
        if value >= 1.0 - 1e-12 {
            break;
        }
        values.push(value);
        i += 1;
    }
    values.push(1.0);
    values
}

/// Sum of squared one-step errors for one candidate, using a ring index
/// instead of rotating the seasonal buffer.
fn smooth_sse(series: &SeasonalSeries, params: &HwParams, init: &HwState) -> f64 {
    let s = series.season_length();
    let mut level = init.level;
    let mut trend = init.trend;
    let mut seasonal = init.seasonal.clone();
    let mut pos = 0usize;
    let mut sum = 0.0;
    for &y in series.values() {
        let s_old = seasonal[pos];
        let residual = y - hw_predict(level, trend, s_old);
        sum += residual * residual;
        let (new_level, new_trend, new_seasonal) = hw_step(y, level, trend, s_old, params);
        level = new_level;
        trend = new_trend;
        seasonal[pos] = new_seasonal;
        pos = (pos + 1) % s;
    }
    sum
}

/// A fitted coefficient triple and its in-sample prediction error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HwFit {
    /// The winning coefficients.
    pub params: HwParams,
    /// Root-mean-square one-step-ahead error over the series.
    pub rmse: f64,
}

/// Fits coefficients by exhaustive search over the grid of multiples of
/// `grid_step` (plus 1.0) in each of the three coefficients.
///
/// Candidates are compared by one-step-ahead error from the standard
/// initialization; ties keep the lexicographically smallest
/// `(alpha, beta, gamma)`, so the result is deterministic.
pub fn hw_fit(series: &SeasonalSeries, grid_step: f64) -> Result<HwFit, ForecastError> {
    let init = hw_init(series)?;
    hw_fit_from(series, grid_step, &init)
}

/// Fits coefficients as [`hw_fit`] does, but smoothing from a caller-
/// supplied state instead of the estimated one.
///
/// When the true initial state is known — resuming from a previous fit,
/// or scoring synthetic data against the state that produced it — this
/// removes the start-up transient that otherwise dominates candidate
/// comparison on short series.
///
/// # Panics
///
/// Panics if the state's seasonal buffer does not match the series'
/// season length.
pub fn hw_fit_from(
    series: &SeasonalSeries,
    grid_step: f64,
    init: &HwState,
) -> Result<HwFit, ForecastError> {
    if !(grid_step.is_finite() && grid_step > 0.0 && grid_step <= 1.0) {
        return Err(ForecastError::InvalidGridStep(grid_step));
    }
    assert_eq!(
        init.seasonal.len(),
        series.season_length(),
        "seasonal buffer must match the season length"
    );
    let grid = param_grid(grid_step);

    let mut best: Option<(f64, HwParams)> = None;
    for &alpha in &grid {
        for &beta in &grid {
            for &gamma in &grid {
                let params = HwParams { alpha, beta, gamma };
                let sse = smooth_sse(series, &params, init);
                let better = match best {
                    None => true,
                    Some((best_sse, _)) => sse < best_sse,
                };
                if better {
                    best = Some((sse, params));
                }
            }
        }
    }

    let (sse, params) = best.expect("grid is never empty");
    Ok(HwFit {
        params,
        rmse: (sse / series.values().len() as f64).sqrt(),
    })
}
