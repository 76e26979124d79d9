//! Point clouds: the common currency between lattice generation, image
//! extraction and persistence.
//!
//! Clouds serialize as CSV (header `x,y`) and as JSON
//! `{"unit": "...", "points": [[x, y], ...]}`.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum separation between points of a normalized cloud.
pub const DUPLICATE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: &Point2) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Pixels,
    Micrometers,
    Normalized,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Pixels => "pixels",
            Unit::Micrometers => "micrometers",
            Unit::Normalized => "normalized",
        })
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pixels" | "px" => Ok(Unit::Pixels),
            "micrometers" | "um" => Ok(Unit::Micrometers),
            "normalized" => Ok(Unit::Normalized),
            other => Err(Error::Format(format!("unknown unit '{other}'"))),
        }
    }
}

/// An ordered, non-empty list of finite 2D points tagged with a unit.
///
/// Normalized clouds additionally reject pairs of points closer than
/// [`DUPLICATE_EPS`], since duplicates produce zero-length 0D bars that skew
/// the variance score.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    points: Vec<Point2>,
    unit: Unit,
}

impl PointCloud {
    pub fn new(points: Vec<Point2>, unit: Unit) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        if unit == Unit::Normalized {
            check_duplicates(&points)?;
        }
        Ok(Self { points, unit })
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    /// Read a cloud from CSV with header `x,y`. Extra columns are ignored.
    pub fn read_csv<R: Read>(reader: R, unit: Unit) -> Result<Self> {
        let points = read_xy_csv(reader)?;
        PointCloud::new(points, unit)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["x", "y"]).map_err(csv_err)?;
        for p in &self.points {
            w.write_record([p.x.to_string(), p.y.to_string()])
                .map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> CloudJson {
        CloudJson {
            unit: self.unit,
            points: self.points.iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn from_json(json: CloudJson) -> Result<Self> {
        let points = json
            .points
            .into_iter()
            .map(|[x, y]| Point2::new(x, y))
            .collect();
        PointCloud::new(points, json.unit)
    }
}

/// Serialized form of a [`PointCloud`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudJson {
    pub unit: Unit,
    pub points: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct XyRow {
    x: f64,
    y: f64,
}

/// Parse the `x,y` columns of a CSV file, reporting the offending line on error.
pub(crate) fn read_xy_csv<R: Read>(reader: R) -> Result<Vec<Point2>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(reader);
    {
        let headers = rdr.headers().map_err(csv_err)?;
        if !headers.iter().any(|h| h == "x") || !headers.iter().any(|h| h == "y") {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected header with columns x,y; got '{}'", headers.iter().collect::<Vec<_>>().join(",")),
            });
        }
    }
    let mut points = Vec::new();
    for row in rdr.deserialize::<XyRow>() {
        let row = row.map_err(csv_err)?;
        points.push(Point2::new(row.x, row.y));
    }
    Ok(points)
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.kind() {
        csv::ErrorKind::Io(_) => match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            _ => unreachable!(),
        },
        _ => Error::Parse {
            line,
            message: e.to_string(),
        },
    }
}

fn check_duplicates(points: &[Point2]) -> Result<()> {
    // Sort by x so only a thin window of candidates needs a distance check.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].x.total_cmp(&points[b].x));
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if points[j].x - points[i].x >= DUPLICATE_EPS {
                break;
            }
            if points[i].dist(&points[j]) < DUPLICATE_EPS {
                return Err(Error::DuplicatePoint {
                    first: i.min(j),
                    second: i.max(j),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(
            PointCloud::new(vec![], Unit::Pixels),
            Err(Error::EmptyCloud)
        ));
        let err = PointCloud::new(vec![Point2::new(0.0, f64::NAN)], Unit::Pixels).unwrap_err();
        assert!(matches!(err, Error::NonFinite { index: 0 }));
    }

    #[test]
    fn duplicate_guard_only_for_normalized() {
        let pts = vec![Point2::new(0.5, 0.5), Point2::new(0.0, 0.0), Point2::new(0.5, 0.5)];
        assert!(PointCloud::new(pts.clone(), Unit::Pixels).is_ok());
        let err = PointCloud::new(pts, Unit::Normalized).unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint { first: 0, second: 2 }));
    }

    #[test]
    fn csv_parse_reports_line() {
        let text = "x,y\n1,2\n3,oops\n";
        match PointCloud::read_csv(text.as_bytes(), Unit::Pixels) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn csv_requires_header() {
        let err = PointCloud::read_csv("a,b\n1,2\n".as_bytes(), Unit::Pixels).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let cloud = PointCloud::new(
            vec![Point2::new(0.1, -0.7), Point2::new(1.0 / 3.0, 2.0)],
            Unit::Normalized,
        )
        .unwrap();
        let mut buf = Vec::new();
        cloud.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"x,y\n"));
        let back = PointCloud::read_csv(buf.as_slice(), Unit::Normalized).unwrap();
        assert_eq!(back, cloud);

        let json = serde_json::to_string(&cloud.to_json()).unwrap();
        assert!(json.starts_with(r#"{"unit":"normalized","points":[["#));
        let back = PointCloud::from_json(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, cloud);
    }
}
