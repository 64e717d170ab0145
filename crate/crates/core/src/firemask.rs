//! Fire-pixel segmentation of aerial imagery and the coverage grid.
//!
//! An RGB frame is converted pixel-by-pixel to OpenCV-convention HSV
//! (hue 0-179, saturation and value 0-255) and thresholded against
//! flame-colored bands: a yellow band and the two red bands that wrap
//! around the hue circle. The resulting bitmask, georeferenced by a
//! sidecar (origin corner plus metres-per-pixel scale), is reduced to a
//! coarse square grid sized so that one hovering relay drone covers a
//! whole cell; the number of touched cells is the per-incident relay
//! count before the spare is added.

use std::io::Cursor;

use serde::Deserialize;
use thiserror::Error;

use crate::geo::GeoPoint;

/// Side of one coverage-grid cell, km: `10 * sqrt(2)`, so the cell
/// diagonal is exactly the 20 km repeater link range.
pub const GRID_CELL_KM: f64 = 14.142135623730951;

/// Errors from image decoding, segmentation, or grid handling.
#[derive(Debug, Error)]
pub enum MaskError {
    /// The byte stream is not a decodable PNG.
    #[error("failed to decode PNG: {0}")]
    Decode(String),
    /// Pixel data does not match the stated dimensions.
    #[error("invalid image: {0}")]
    InvalidImage(String),
    /// A threshold range is inverted or outside its channel's bounds.
    #[error("invalid HSV thresholds: {0}")]
    InvalidThresholds(String),
    /// The georeference sidecar is malformed or out of range.
    #[error("invalid georeference sidecar: {0}")]
    InvalidSidecar(String),
    /// A coverage-grid document failed to parse.
    #[error("grid line {line}: {message}")]
    GridParse { line: u64, message: String },
    /// PNG encoding failed.
    #[error("failed to encode PNG: {0}")]
    Encode(String),
}

/// An owned 8-bit RGB raster.
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage {
    width: u32,
    height: u32,
    pixels: Vec<[u8; 3]>,
}

impl RgbImage {
    /// Wraps row-major pixel data; the length must be `width * height`.
    pub fn new(width: u32, height: u32, pixels: Vec<[u8; 3]>) -> Result<Self, MaskError> {
        let expected = width as usize * height as usize;
        if pixels.len() != expected {
            return Err(MaskError::InvalidImage(format!(
                "{width}x{height} needs {expected} pixels, got {}",
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    /// Image width in pixels.
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Image height in pixels.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// The pixel at column `x`, row `y`.
    ///
    /// # Panics
    ///
    /// Panics when the coordinates are outside the image.
    pub fn pixel(&self, x: u32, y: u32) -> [u8; 3] {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.pixels[y as usize * self.width as usize + x as usize]
    }
}

/// Converts one RGB pixel to OpenCV-convention HSV: hue in 0-179 (half
/// degrees), saturation and value in 0-255.
///
/// Hue and saturation round half away from zero; a hue that rounds to
/// the full circle wraps back to 0. Gray pixels (zero delta) report hue
/// 0, and black reports saturation 0.
pub fn rgb_to_hsv(rgb: [u8; 3]) -> [u8; 3] {
    let r = rgb[0] as f64 / 255.0;
    let g = rgb[1] as f64 / 255.0;
    let b = rgb[2] as f64 / 255.0;
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;

    let hue_degrees = if delta == 0.0 {
        0.0
    } else if max == r {
        60.0 * ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    let hue = ((hue_degrees / 2.0).round() as i64).rem_euclid(180) as u8;

    let saturation = if max == 0.0 {
        0
    } else {
        (255.0 * delta / max).round() as u8
    };

    let value = rgb[0].max(rgb[1]).max(rgb[2]);
    [hue, saturation, value]
}

/// An inclusive band on one HSV channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelRange {
    lo: u8,
    hi: u8,
}

impl ChannelRange {
    /// Builds the inclusive band `[lo, hi]`.
    pub fn new(lo: u8, hi: u8) -> Self {
        Self { lo, hi }
    }

    /// Lower bound, inclusive.
    pub fn lo(&self) -> u8 {
        self.lo
    }

    /// Upper bound, inclusive.
    pub fn hi(&self) -> u8 {
        self.hi
    }

    /// Whether `value` lies inside the band.
    pub fn contains(&self, value: u8) -> bool {
        self.lo <= value && value <= self.hi
    }
}

/// HSV bands that classify a pixel as flame-colored.
///
/// A pixel is fire when it falls in the yellow band, or in either red
/// hue band combined with the red saturation and value bands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HsvThresholds {
    /// Yellow hue band.
    pub yellow_hue: ChannelRange,
    /// Yellow saturation band.
    pub yellow_sat: ChannelRange,
    /// Yellow value band.
    pub yellow_val: ChannelRange,
    /// Red hue band near 0.
    pub red_hue_low: ChannelRange,
    /// Red hue band near the top of the circle.
    pub red_hue_high: ChannelRange,
    /// Red saturation band.
    pub red_sat: ChannelRange,
    /// Red value band.
    pub red_val: ChannelRange,
}

impl Default for HsvThresholds {
    fn default() -> Self {
        Self {
            yellow_hue: ChannelRange::new(26, 34),
            yellow_sat: ChannelRange::new(43, 255),
            yellow_val: ChannelRange::new(46, 255),
            red_hue_low: ChannelRange::new(0, 10),
            red_hue_high: ChannelRange::new(156, 179),
            red_sat: ChannelRange::new(43, 255),
            red_val: ChannelRange::new(46, 255),
        }
    }
}

impl HsvThresholds {
    /// Checks that every band is ordered and hue bands stay below 180.
    pub fn validate(&self) -> Result<(), MaskError> {
        let check = |range: ChannelRange, name: &str, max: u8| {
            if range.lo > range.hi {
                return Err(MaskError::InvalidThresholds(format!(
                    "{name} band is inverted: {} > {}",
                    range.lo, range.hi
                )));
            }
            if range.hi > max {
                return Err(MaskError::InvalidThresholds(format!(
                    "{name} band exceeds the channel maximum {max}: {}",
                    range.hi
                )));
            }
            Ok(())
        };
        check(self.yellow_hue, "yellow hue", 179)?;
        check(self.yellow_sat, "yellow saturation", 255)?;
        check(self.yellow_val, "yellow value", 255)?;
        check(self.red_hue_low, "low red hue", 179)?;
        check(self.red_hue_high, "high red hue", 179)?;
        check(self.red_sat, "red saturation", 255)?;
        check(self.red_val, "red value", 255)?;
        Ok(())
    }

    /// Whether an HSV pixel is flame-colored under these bands.
    pub fn is_fire(&self, hsv: [u8; 3]) -> bool {
        let [h, s, v] = hsv;
        let yellow = self.yellow_hue.contains(h)
            && self.yellow_sat.contains(s)
            && self.yellow_val.contains(v);
        let red = (self.red_hue_low.contains(h) || self.red_hue_high.contains(h))
            && self.red_sat.contains(s)
            && self.red_val.contains(v);
        yellow || red
    }
}

/// Maps pixel coordinates to ground coordinates: the image's top-left
/// corner sits at `origin` and each pixel is `km_per_pixel` on a side,
/// with rows running south and columns running east.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoTransform {
    /// Ground position of the top-left image corner.
    pub origin: GeoPoint,
    /// Ground size of one pixel, km.
    pub km_per_pixel: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SidecarDoc {
    origin_lat: f64,
    origin_lon: f64,
    km_per_pixel: f64,
}

/// Parses a georeference sidecar document:
/// `{"origin_lat": .., "origin_lon": .., "km_per_pixel": ..}`.
pub fn parse_geo_sidecar(text: &str) -> Result<GeoTransform, MaskError> {
    let doc: SidecarDoc =
        serde_json::from_str(text).map_err(|err| MaskError::InvalidSidecar(err.to_string()))?;
    if !(doc.origin_lat.is_finite() && (-90.0..=90.0).contains(&doc.origin_lat)) {
        return Err(MaskError::InvalidSidecar(format!(
            "origin_lat must lie in [-90, 90], got {}",
            doc.origin_lat
        )));
    }
    if !(doc.origin_lon.is_finite() && (-180.0..=180.0).contains(&doc.origin_lon)) {
        return Err(MaskError::InvalidSidecar(format!(
            "origin_lon must lie in [-180, 180], got {}",
            doc.origin_lon
        )));
    }
    if !(doc.km_per_pixel.is_finite() && doc.km_per_pixel > 0.0) {
        return Err(MaskError::InvalidSidecar(format!(
            "km_per_pixel must be positive, got {}",
            doc.km_per_pixel
        )));
    }
    Ok(GeoTransform {
        origin: GeoPoint {
            latitude: doc.origin_lat,
            longitude: doc.origin_lon,
        },
        km_per_pixel: doc.km_per_pixel,
    })
}

/// A georeferenced fire bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct FireMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
    geo: GeoTransform,
}

impl FireMask {
    /// Mask width in pixels.
    pub fn width(&self) -> u32 {
        self.width
    }

    /// Mask height in pixels.
    pub fn height(&self) -> u32 {
        self.height
    }

    /// The mask's georeference.
    pub fn geo(&self) -> GeoTransform {
        self.geo
    }

    /// Whether the pixel at column `x`, row `y` is fire.
    ///
    /// # Panics
    ///
    /// Panics when the coordinates are outside the mask.
    pub fn is_fire(&self, x: u32, y: u32) -> bool {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.bits[y as usize * self.width as usize + x as usize]
    }

    /// Number of fire pixels.
    pub fn fire_pixel_count(&self) -> u64 {
        self.bits.iter().filter(|&&bit| bit).count() as u64
    }

    /// Ground area of the fire pixels, km^2.
    pub fn area_km2(&self) -> f64 {
        self.fire_pixel_count() as f64 * self.geo.km_per_pixel * self.geo.km_per_pixel
    }

    /// Renders the mask as white fire pixels on black.
    pub fn to_rgb_image(&self) -> RgbImage {
        let pixels = self
            .bits
            .iter()
            .map(|&bit| if bit { [255, 255, 255] } else { [0, 0, 0] })
            .collect();
        RgbImage::new(self.width, self.height, pixels).expect("mask dimensions are consistent")
    }
}

/// Thresholds an image into a georeferenced fire mask.
pub fn in_range_mask(image: &RgbImage, thresholds: &HsvThresholds, geo: GeoTransform) -> FireMask {
    let bits = image
        .pixels
        .iter()
        .map(|&rgb| thresholds.is_fire(rgb_to_hsv(rgb)))
        .collect();
    FireMask {
        width: image.width,
        height: image.height,
        bits,
        geo,
    }
}

/// The coverage grid: which relay-sized cells touch fire.
#[derive(Debug, Clone, PartialEq)]
pub struct GridCover {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
    cell_side_km: f64,
}

impl GridCover {
    /// Number of grid rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of grid columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Ground side of one cell, km.
    pub fn cell_side_km(&self) -> f64 {
        self.cell_side_km
    }

    /// Whether the cell at `row`, `col` touches fire.
    ///
    /// # Panics
    ///
    /// Panics when the coordinates are outside the grid.
    pub fn is_covered(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "cell out of bounds");
        self.cells[row * self.cols + col]
    }

    /// Number of cells touching fire: the per-incident relay count
    /// before the spare is added.
    pub fn covered_cell_count(&self) -> u64 {
        self.cells.iter().filter(|&&cell| cell).count() as u64
    }

    /// Covered cells as `(row, col)` in row-major order.
    pub fn covered_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |row| {
            (0..self.cols).filter_map(move |col| {
                if self.cells[row * self.cols + col] {
                    Some((row, col))
                } else {
                    None
                }
            })
        })
    }

    /// Serializes the grid as comma-separated 0/1 rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in 0..self.rows {
            for col in 0..self.cols {
                if col > 0 {
                    out.push(',');
                }
                out.push(if self.cells[row * self.cols + col] {
                    '1'
                } else {
                    '0'
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Buckets fire pixels into [`GRID_CELL_KM`]-sized cells anchored at the
/// mask's origin corner.
///
/// A pixel belongs to the cell containing its top-left corner. The grid
/// spans the whole image, so every fire pixel lands in a valid cell.
pub fn grid_cover(mask: &FireMask) -> GridCover {
    let km_per_pixel = mask.geo.km_per_pixel;
    let span = |pixels: u32| (pixels as f64 * km_per_pixel / GRID_CELL_KM).ceil() as usize;
    let rows = span(mask.height);
    let cols = span(mask.width);

    let mut cells = vec![false; rows * cols];
    for y in 0..mask.height {
        for x in 0..mask.width {
            if !mask.is_fire(x, y) {
                continue;
            }
            let row = (y as f64 * km_per_pixel / GRID_CELL_KM).floor() as usize;
            let col = (x as f64 * km_per_pixel / GRID_CELL_KM).floor() as usize;
            debug_assert!(row < rows && col < cols);
            cells[row * cols + col] = true;
        }
    }

    GridCover {
        rows,
        cols,
        cells,
        cell_side_km: GRID_CELL_KM,
    }
}

/// Parses a comma-separated 0/1 grid document. Rows must be rectangular;
/// a blank document is the empty grid.
pub fn parse_grid_csv(text: &str) -> Result<GridCover, MaskError> {
    if text.trim().is_empty() {
        return Ok(GridCover {
            rows: 0,
            cols: 0,
            cells: Vec::new(),
            cell_side_km: GRID_CELL_KM,
        });
    }

    let mut cells = Vec::new();
    let mut cols: Option<usize> = None;
    let mut rows = 0usize;
    for (index, line) in text.lines().enumerate() {
        let line_no = index as u64 + 1;
        let mut row_cells = Vec::new();
        for token in line.split(',') {
            match token.trim() {
                "0" => row_cells.push(false),
                "1" => row_cells.push(true),
                other => {
                    return Err(MaskError::GridParse {
                        line: line_no,
                        message: format!("expected 0 or 1, got {other:?}"),
                    });
                }
            }
        }
        match cols {
            None => cols = Some(row_cells.len()),
            Some(cols) if cols != row_cells.len() => {
                return Err(MaskError::GridParse {
                    line: line_no,
                    message: format!(
                        "row has {} cells but earlier rows have {cols}",
                        row_cells.len()
                    ),
                });
            }
            Some(_) => {}
        }
        cells.extend(row_cells);
        rows += 1;
    }

    Ok(GridCover {
        rows,
        cols: cols.unwrap_or(0),
        cells,
        cell_side_km: GRID_CELL_KM,
    })
}

/// Largest PNG dimension the decoder accepts, pixels per side.
const MAX_PNG_DIMENSION: u32 = 1 << 14;

/// Decodes PNG bytes into an RGB raster, converting other color types.
///
/// Dimensions are capped at [`MAX_PNG_DIMENSION`] per side so a
/// malformed header cannot force a huge allocation.
pub fn load_rgb_png(bytes: &[u8]) -> Result<RgbImage, MaskError> {
    let mut reader = image::ImageReader::new(Cursor::new(bytes));
    reader.set_format(image::ImageFormat::Png);
    let mut limits = image::Limits::default();
    limits.max_image_width = Some(MAX_PNG_DIMENSION);
    limits.max_image_height = Some(MAX_PNG_DIMENSION);
    reader.limits(limits);
    let decoded = reader
        .decode()
        .map_err(|err| MaskError::Decode(err.to_string()))?;
    let rgb = decoded.to_rgb8();
    let (width, height) = rgb.dimensions();
    let pixels = rgb.pixels().map(|p| p.0).collect();
    RgbImage::new(width, height, pixels)
}

/// Encodes a mask as a grayscale PNG: fire pixels white, the rest black.
pub fn encode_mask_png(mask: &FireMask) -> Result<Vec<u8>, MaskError> {
    if mask.width == 0 || mask.height == 0 {
        return Err(MaskError::Encode("mask has no pixels".to_string()));
    }
    let gray = image::GrayImage::from_fn(mask.width, mask.height, |x, y| {
        image::Luma([if mask.is_fire(x, y) { 255 } else { 0 }])
    });
    let mut bytes = Vec::new();
    gray.write_to(&mut Cursor::new(&mut bytes), image::ImageFormat::Png)
        .map_err(|err| MaskError::Encode(err.to_string()))?;
    Ok(bytes)
}

/// Encodes an RGB raster as a PNG.
pub fn encode_rgb_png(image: &RgbImage) -> Result<Vec<u8>, MaskError> {
    if image.width == 0 || image.height == 0 {
        return Err(MaskError::Encode("image has no pixels".to_string()));
    }
    let buffer = image::RgbImage::from_fn(image.width, image.height, |x, y| {
        image::Rgb(image.pixel(x, y))
    });
    let mut bytes = Vec::new();
    buffer
        .write_to(&mut Cursor::new(&mut bytes), image::ImageFormat::Png)
        .map_err(|err| MaskError::Encode(err.to_string()))?;
    Ok(bytes)
}
