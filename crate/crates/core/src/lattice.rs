//! Generators for perfect, nominal and perturbed lattices, plus normalization
//! of arbitrary clouds onto the comparison box `[-1, 1]²`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::cloud::{Point2, PointCloud, Unit};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LatticeKind {
    Square,
    Hexagonal,
}

/// A perfect lattice filling the comparison box.
///
/// `n` is the number of points per side for square lattices and the number of
/// rows (each of `n` points) for hexagonal ones, so both kinds hold `n²` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub n: usize,
}

impl LatticeSpec {
    pub fn square(n: usize) -> Self {
        Self { kind: LatticeKind::Square, n }
    }

    pub fn hexagonal(n: usize) -> Self {
        Self { kind: LatticeKind::Hexagonal, n }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidSpec(format!("n = {} (need n >= 2)", self.n)));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<PointCloud> {
        match self.kind {
            LatticeKind::Square => gen_square(self),
            LatticeKind::Hexagonal => gen_hexagonal(self),
        }
    }
}

/// `n × n` grid with spacing `2/(n-1)` spanning `[-1, 1]²`, row-major in y.
pub fn gen_square(spec: &LatticeSpec) -> Result<PointCloud> {
    spec.validate()?;
    if spec.kind != LatticeKind::Square {
        return Err(Error::InvalidSpec("gen_square needs kind = square".into()));
    }
    let n = spec.n;
    let m = (n - 1) as f64;
    // (2i - (n-1)) / (n-1) rounds once and keeps the grid exactly symmetric.
    let coord = |i: usize| (2.0 * i as f64 - m) / m;
    let points = (0..n)
        .flat_map(|j| (0..n).map(move |i| Point2::new(coord(i), coord(j))))
        .collect();
    PointCloud::new(points, Unit::Normalized)
}

/// Triangular close-packed lattice: `n` rows of `n` points, odd rows shifted
/// by half a pitch, rows `s·√3/2` apart. The pitch `s = 4/(2n-1)` makes the
/// bounding box exactly `[-1, 1]` in x; the rows are centered on `y = 0`.
pub fn gen_hexagonal(spec: &LatticeSpec) -> Result<PointCloud> {
    spec.validate()?;
    if spec.kind != LatticeKind::Hexagonal {
        return Err(Error::InvalidSpec("gen_hexagonal needs kind = hexagonal".into()));
    }
    let n = spec.n;
    let denom = (2 * n - 1) as f64;
    let row_step = 3f64.sqrt() / denom; // half of s·√3/2 per unit of (2r - (n-1))
    let mut points = Vec::with_capacity(n * n);
    for r in 0..n {
        let parity = r % 2;
        let y = (2.0 * r as f64 - (n - 1) as f64) * row_step;
        for k in 0..n {
            let half_steps = (2 * (2 * k + parity)) as f64;
            points.push(Point2::new((half_steps - denom) / denom, y));
        }
    }
    PointCloud::new(points, Unit::Normalized)
}

/// Pitch of a hexagonal lattice of side `n` as produced by [`gen_hexagonal`].
pub fn hexagonal_pitch(n: usize) -> f64 {
    4.0 / (2 * n - 1) as f64
}

/// The commanded strike-center grid, anchored at the upper-left center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NominalGridSpec {
    pub rows: usize,
    pub cols: usize,
    pub pitch_x: f64,
    pub pitch_y: f64,
    pub datum: Point2,
    #[serde(default = "default_unit")]
    pub unit: Unit,
}

fn default_unit() -> Unit {
    Unit::Pixels
}

impl NominalGridSpec {
    /// Grid whose pitch (in pixels) follows from scan speed `v_s` (µm/s),
    /// strike frequency `f` (Hz) and image resolution `pitch_um` (µm/pixel).
    pub fn from_process(
        rows: usize,
        cols: usize,
        v_s: f64,
        f: f64,
        pitch_um: f64,
        datum: Point2,
    ) -> Result<Self> {
        for (name, v) in [("v_s", v_s), ("f", f), ("pitch_um", pitch_um)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} = {v} must be positive")));
            }
        }
        let pitch = v_s / f / pitch_um;
        Ok(Self {
            rows,
            cols,
            pitch_x: pitch,
            pitch_y: pitch,
            datum,
            unit: Unit::Pixels,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 || self.rows * self.cols < 4 {
            return Err(Error::InvalidSpec(format!(
                "grid {}x{} needs at least 4 points",
                self.rows, self.cols
            )));
        }
        if !(self.pitch_x > 0.0 && self.pitch_y > 0.0) {
            return Err(Error::InvalidSpec("pitch must be positive".into()));
        }
        if !self.datum.is_finite() {
            return Err(Error::InvalidSpec("datum must be finite".into()));
        }
        Ok(())
    }
}

pub fn gen_nominal_grid(spec: &NominalGridSpec) -> Result<PointCloud> {
    spec.validate()?;
    let mut points = Vec::with_capacity(spec.rows * spec.cols);
    for r in 0..spec.rows {
        for c in 0..spec.cols {
            points.push(Point2::new(
                spec.datum.x + c as f64 * spec.pitch_x,
                spec.datum.y + r as f64 * spec.pitch_y,
            ));
        }
    }
    PointCloud::new(points, spec.unit)
}

/// Isotropic Gaussian jitter for synthetic degradation of a lattice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PerturbationSpec {
    pub sigma: f64,
    pub rng_seed: u64,
}

pub fn perturb(cloud: &PointCloud, p: &PerturbationSpec) -> Result<PointCloud> {
    if !(p.sigma >= 0.0 && p.sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!("sigma = {} must be >= 0", p.sigma)));
    }
    if p.sigma == 0.0 {
        return Ok(cloud.clone());
    }
    let normal = Normal::new(0.0, p.sigma)
        .map_err(|e| Error::InvalidParameter(format!("sigma: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.rng_seed);
    let points = cloud
        .points()
        .iter()
        .map(|pt| {
            let dx = normal.sample(&mut rng);
            let dy = normal.sample(&mut rng);
            Point2::new(pt.x + dx, pt.y + dy)
        })
        .collect();
    PointCloud::new(points, cloud.unit())
}

/// Per-axis affine map applied by [`scale_to_unit_box`]: `x' = scale_x·x + offset_x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxTransform {
    pub scale_x: f64,
    pub offset_x: f64,
    pub scale_y: f64,
    pub offset_y: f64,
}

impl BoxTransform {
    pub const IDENTITY: BoxTransform = BoxTransform {
        scale_x: 1.0,
        offset_x: 0.0,
        scale_y: 1.0,
        offset_y: 0.0,
    };

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// Per-axis min–max normalization onto `[-1, 1]²`.
pub fn scale_to_unit_box(cloud: &PointCloud) -> Result<(PointCloud, BoxTransform)> {
    let pts = cloud.points();
    let (min_x, max_x) = extent(pts.iter().map(|p| p.x));
    let (min_y, max_y) = extent(pts.iter().map(|p| p.y));
    if max_x <= min_x {
        return Err(Error::DegenerateExtent { axis: 'x' });
    }
    if max_y <= min_y {
        return Err(Error::DegenerateExtent { axis: 'y' });
    }
    let axis = |lo: f64, hi: f64| -> (Box<dyn Fn(f64) -> f64>, f64, f64) {
        if lo == -1.0 && hi == 1.0 {
            (Box::new(|v| v), 1.0, 0.0)
        } else {
            let span = hi - lo;
            (
                Box::new(move |v| 2.0 * (v - lo) / span - 1.0),
                2.0 / span,
                -1.0 - 2.0 * lo / span,
            )
        }
    };
    let (fx, scale_x, offset_x) = axis(min_x, max_x);
    let (fy, scale_y, offset_y) = axis(min_y, max_y);
    let points = pts.iter().map(|p| Point2::new(fx(p.x), fy(p.y))).collect();
    let out = PointCloud::new(points, Unit::Normalized)?;
    Ok((
        out,
        BoxTransform {
            scale_x,
            offset_x,
            scale_y,
            offset_y,
        },
    ))
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    })
}
