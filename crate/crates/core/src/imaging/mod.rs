//! Image ingestion and true-center extraction.
//!
//! Images are 8-bit grayscale rasters; binary PGM (P5) is read and written
//! natively, PNG (8-bit gray or RGB) is read through the `image` crate.

mod matching;
mod pgm;
mod region;
pub mod synth;

use std::path::Path;

use crate::error::{Error, Result};

pub use matching::{match_grids, MatchReport, MatchedPair};
pub use pgm::{read_pgm, write_pgm};
pub use region::{
    default_max_region, read_seeds_csv, region_grow, write_centers_csv, CenterSet, Connectivity,
    RegionGrowParams, SeedFailure,
};

/// Row-major 8-bit single-channel raster.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    /// Micrometers per pixel, when known.
    pub pitch_um: Option<f64>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Format(format!("image dimensions {width}x{height} must be positive")));
        }
        if pixels.len() != width * height {
            return Err(Error::Format(format!(
                "expected {} pixels for {width}x{height}, got {}",
                width * height,
                pixels.len()
            )));
        }
        Ok(Self {
            width,
            height,
            pixels,
            pitch_um: None,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, v: u8) {
        self.pixels[y * self.width + x] = v;
    }
}

/// Luminance `round(0.299 R + 0.587 G + 0.114 B)` of an interleaved 8-bit RGB buffer.
pub fn to_grayscale(width: usize, height: usize, rgb: &[u8]) -> Result<GrayImage> {
    if rgb.len() != width * height * 3 {
        return Err(Error::Format(format!(
            "expected {} RGB bytes for {width}x{height}, got {}",
            width * height * 3,
            rgb.len()
        )));
    }
    let pixels = rgb
        .chunks_exact(3)
        .map(|c| {
            let weighted = 299 * c[0] as u32 + 587 * c[1] as u32 + 114 * c[2] as u32;
            ((weighted + 500) / 1000).min(255) as u8
        })
        .collect();
    GrayImage::new(width, height, pixels)
}

/// Load a PGM (P5) or PNG file as grayscale. RGB(A) PNGs are converted with
/// [`to_grayscale`] (alpha ignored); 16-bit images are rejected.
pub fn load_image(path: &Path) -> Result<GrayImage> {
    let bytes = std::fs::read(path)?;
    if bytes.starts_with(b"P5") {
        return read_pgm(bytes.as_slice());
    }
    let img = image::load_from_memory(&bytes).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    let (w, h) = (img.width() as usize, img.height() as usize);
    match img {
        image::DynamicImage::ImageLuma8(buf) => GrayImage::new(w, h, buf.into_raw()),
        image::DynamicImage::ImageRgb8(buf) => to_grayscale(w, h, buf.as_raw()),
        image::DynamicImage::ImageRgba8(buf) => {
            let rgb: Vec<u8> = buf.as_raw().chunks_exact(4).flat_map(|p| [p[0], p[1], p[2]]).collect();
            to_grayscale(w, h, &rgb)
        }
        other => Err(Error::Format(format!(
            "{}: unsupported pixel format {:?} (need 8-bit gray or RGB)",
            path.display(),
            other.color()
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CropSpec {
    pub out_width: usize,
    pub out_height: usize,
}

impl CropSpec {
    pub fn square(side: usize) -> Self {
        Self {
            out_width: side,
            out_height: side,
        }
    }
}

/// Crop anchored at `floor((in - out) / 2)` on each axis.
pub fn center_crop(img: &GrayImage, spec: &CropSpec) -> Result<GrayImage> {
    if spec.out_width == 0 || spec.out_height == 0 {
        return Err(Error::Bounds("crop dimensions must be positive".into()));
    }
    if spec.out_width > img.width || spec.out_height > img.height {
        return Err(Error::Bounds(format!(
            "crop {}x{} exceeds image {}x{}",
            spec.out_width, spec.out_height, img.width, img.height
        )));
    }
    let x0 = (img.width - spec.out_width) / 2;
    let y0 = (img.height - spec.out_height) / 2;
    let mut pixels = Vec::with_capacity(spec.out_width * spec.out_height);
    for y in y0..y0 + spec.out_height {
        let row = y * img.width;
        pixels.extend_from_slice(&img.pixels[row + x0..row + x0 + spec.out_width]);
    }
    let mut out = GrayImage::new(spec.out_width, spec.out_height, pixels)?;
    out.pitch_um = img.pitch_um;
    Ok(out)
}

/// Pixels between neighboring strikes: strike offset `v_s / f` (µm) over the
/// image resolution `pitch_um` (µm/pixel).
pub fn pixels_per_pitch(pitch_um: f64, v_s: f64, f: f64) -> Result<f64> {
    for (name, v) in [("pitch_um", pitch_um), ("v_s", v_s), ("f", f)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
        }
    }
    Ok(v_s / f / pitch_um)
}

/// Square crop that nominally holds a `grid_n × grid_n` field of strikes.
pub fn derive_crop(pitch_um: f64, v_s: f64, f: f64, grid_n: usize) -> Result<CropSpec> {
    if grid_n == 0 {
        return Err(Error::InvalidParameter("grid_n must be positive".into()));
    }
    let ppp = pixels_per_pitch(pitch_um, v_s, f)?;
    let side = (grid_n as f64 * ppp).round();
    if side < 1.0 {
        return Err(Error::InvalidParameter(format!("derived crop side {side} is below one pixel")));
    }
    Ok(CropSpec::square(side as usize))
}
