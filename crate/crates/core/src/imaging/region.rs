//! Seeded region growing and region centroids.

use std::collections::VecDeque;
use std::io::{Read, Write};

use super::GrayImage;
use crate::cloud::{csv_err, read_xy_csv, Point2, PointCloud, Unit};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Four,
    Eight,
}

impl TryFrom<u8> for Connectivity {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            4 => Ok(Connectivity::Four),
            8 => Ok(Connectivity::Eight),
            other => Err(Error::InvalidParameter(format!("connectivity must be 4 or 8, got {other}"))),
        }
    }
}

const FOUR: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const EIGHT: [(isize, isize); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];

impl Connectivity {
    fn offsets(&self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &FOUR,
            Connectivity::Eight => &EIGHT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionGrowParams {
    /// Pixel coordinates; pixel `(col, row)` has its center at `(col, row)`.
    pub seeds: Vec<Point2>,
    /// Largest admitted `|intensity - seed intensity|`.
    pub tolerance: u8,
    pub connectivity: Connectivity,
    /// Regions growing beyond this many pixels are reported as failures.
    pub max_region_px: usize,
}

/// Cap on region size: four times the expected indentation area when the
/// strike pitch in pixels is known, a quarter of the image otherwise.
pub fn default_max_region(img: &GrayImage, pixels_per_pitch: Option<f64>) -> usize {
    match pixels_per_pitch {
        Some(p) if p > 0.0 => (4.0 * std::f64::consts::PI * (p / 2.0).powi(2)).ceil() as usize,
        _ => (img.width() * img.height() / 4).max(1),
    }
}

pub const MIN_REGION_PX: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub enum SeedFailure {
    /// The fill exceeded `max_region_px`.
    TooLarge { seed: usize },
    /// Fewer than [`MIN_REGION_PX`] pixels.
    TooSmall { seed: usize, size: usize },
}

/// Region centroids, one per successful seed, in seed order.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterSet {
    pub centers: PointCloud,
    pub region_sizes: Vec<usize>,
    pub seed_indices: Vec<usize>,
    pub failures: Vec<SeedFailure>,
}

pub fn region_grow(img: &GrayImage, params: &RegionGrowParams) -> Result<CenterSet> {
    let (w, h) = (img.width(), img.height());
    let mut seeds_px = Vec::with_capacity(params.seeds.len());
    for (i, s) in params.seeds.iter().enumerate() {
        let (x, y) = (s.x.round(), s.y.round());
        if !(x >= 0.0 && y >= 0.0 && (x as usize) < w && (y as usize) < h) {
            return Err(Error::Bounds(format!(
                "seed {i} at ({}, {}) outside {w}x{h} image",
                s.x, s.y
            )));
        }
        seeds_px.push((x as usize, y as usize));
    }

    // visit stamps: pixel belongs to the current fill iff stamp == seed index + 1
    let mut stamp = vec![0u32; w * h];
    let mut queue = VecDeque::new();
    let mut centers = Vec::new();
    let mut region_sizes = Vec::new();
    let mut seed_indices = Vec::new();
    let mut failures = Vec::new();

    for (seed_idx, &(sx, sy)) in seeds_px.iter().enumerate() {
        let mark = seed_idx as u32 + 1;
        let base = img.get(sx, sy) as i16;
        let tol = params.tolerance as i16;
        queue.clear();
        queue.push_back((sx, sy));
        stamp[sy * w + sx] = mark;
        let (mut size, mut sum_x, mut sum_y) = (0usize, 0u64, 0u64);
        let mut overflow = false;
        while let Some((x, y)) = queue.pop_front() {
            size += 1;
            if size > params.max_region_px {
                overflow = true;
                break;
            }
            sum_x += x as u64;
            sum_y += y as u64;
            for &(dx, dy) in params.connectivity.offsets() {
                let (nx, ny) = (x as isize + dx, y as isize + dy);
                if nx < 0 || ny < 0 || nx as usize >= w || ny as usize >= h {
                    continue;
                }
                let (nx, ny) = (nx as usize, ny as usize);
                let idx = ny * w + nx;
                if stamp[idx] != mark && (img.get(nx, ny) as i16 - base).abs() <= tol {
                    stamp[idx] = mark;
                    queue.push_back((nx, ny));
                }
            }
        }
        if overflow {
            failures.push(SeedFailure::TooLarge { seed: seed_idx });
        } else if size < MIN_REGION_PX {
            failures.push(SeedFailure::TooSmall { seed: seed_idx, size });
        } else {
            centers.push(Point2::new(sum_x as f64 / size as f64, sum_y as f64 / size as f64));
            region_sizes.push(size);
            seed_indices.push(seed_idx);
        }
    }

    if centers.is_empty() {
        return Err(Error::EmptyResult);
    }
    Ok(CenterSet {
        centers: PointCloud::new(centers, Unit::Pixels)?,
        region_sizes,
        seed_indices,
        failures,
    })
}

pub fn read_seeds_csv<R: Read>(reader: R) -> Result<Vec<Point2>> {
    let seeds = read_xy_csv(reader)?;
    if let Some(i) = seeds.iter().position(|p| !p.is_finite()) {
        return Err(Error::Parse {
            line: i as u64 + 2,
            message: "non-finite seed coordinate".into(),
        });
    }
    Ok(seeds)
}

/// CSV with header `x,y,region_px`.
pub fn write_centers_csv<W: Write>(set: &CenterSet, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["x", "y", "region_px"]).map_err(csv_err)?;
    for (p, size) in set.centers.points().iter().zip(&set.region_sizes) {
        w.write_record([p.x.to_string(), p.y.to_string(), size.to_string()])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
