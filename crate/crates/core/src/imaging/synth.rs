//! Synthetic indentation images: disks with a Gaussian-blurred rim.

use statrs::function::erf::erf;

use super::GrayImage;
use crate::cloud::Point2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disk {
    pub center: Point2,
    pub radius: f64,
}

/// Render disks of intensity `fg` on a `bg` background. A positive
/// `blur_sigma` convolves each rim with a Gaussian of that width (in pixels);
/// zero gives hard edges. Overlapping disks take the strongest coverage.
pub fn render_disks(width: usize, height: usize, disks: &[Disk], fg: u8, bg: u8, blur_sigma: f64) -> GrayImage {
    let mut coverage = vec![0f64; width * height];
    let reach = if blur_sigma > 0.0 { 6.0 * blur_sigma + 1.0 } else { 1.0 };
    for disk in disks {
        let r = disk.radius + reach;
        let x0 = (disk.center.x - r).floor().max(0.0) as usize;
        let y0 = (disk.center.y - r).floor().max(0.0) as usize;
        let x1 = ((disk.center.x + r).ceil().max(0.0) as usize).min(width.saturating_sub(1));
        let y1 = ((disk.center.y + r).ceil().max(0.0) as usize).min(height.saturating_sub(1));
        for y in y0..=y1 {
            for x in x0..=x1 {
                let dist = Point2::new(x as f64, y as f64).dist(&disk.center);
                let c = if blur_sigma > 0.0 {
                    0.5 * (1.0 + erf((disk.radius - dist) / (blur_sigma * std::f64::consts::SQRT_2)))
                } else if dist <= disk.radius {
                    1.0
                } else {
                    0.0
                };
                let slot = &mut coverage[y * width + x];
                *slot = slot.max(c);
            }
        }
    }
    let (fg, bg) = (fg as f64, bg as f64);
    let pixels = coverage
        .into_iter()
        .map(|c| (bg + (fg - bg) * c).round().clamp(0.0, 255.0) as u8)
        .collect();
    GrayImage::new(width, height, pixels).expect("dimensions match buffer")
}

/// Disks on a `rows × cols` grid with the given pitch, first center at `origin`.
pub fn disk_grid(rows: usize, cols: usize, origin: Point2, pitch: f64, radius: f64) -> Vec<Disk> {
    (0..rows)
        .flat_map(|r| {
            (0..cols).map(move |c| Disk {
                center: Point2::new(origin.x + c as f64 * pitch, origin.y + r as f64 * pitch),
                radius,
            })
        })
        .collect()
}
