//! Planar points, distances, and angle bookkeeping.
//!
//! Everything downstream measures angles in degrees: convex angles at a
//! vertex live in [0, 180], radial gaps between consecutive incident edges
//! live in [0, 360) and sum to 360 around a vertex.

use serde::Serialize;
use thiserror::Error;

/// Angular comparisons tolerate this much slack, in degrees.
pub const EPS_ANG: f64 = 1e-7;
/// Length comparisons tolerate this much relative slack.
pub const EPS_LEN: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("point set must be non-empty")]
    Empty,
    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("angle at a zero-length ray (vertex {0})")]
    DegenerateAngle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Validated collection of distinct finite points; all tree and oracle code
/// addresses points by index into this set.
#[derive(Debug, Clone)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if points.is_empty() {
            return Err(GeomError::Empty);
        }
        for (i, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(GeomError::NonFinite(i));
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(GeomError::DuplicatePoints(i, j));
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        dist(self.points[i], self.points[j])
    }

    pub fn dist_sq(&self, i: usize, j: usize) -> f64 {
        dist_sq(self.points[i], self.points[j])
    }
}

pub fn dist(a: Point, b: Point) -> f64 {
    dist_sq(a, b).sqrt()
}

pub fn dist_sq(a: Point, b: Point) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Twice the signed area of triangle (a, b, c); positive when c lies to the
/// left of the directed line a -> b.
pub fn cross(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

pub fn signed_area(a: Point, b: Point, c: Point) -> f64 {
    0.5 * cross(a, b, c)
}

/// Convex angle at `u` between rays u->a and u->b, in degrees within [0, 180].
pub fn angle_at(ps: &PointSet, u: usize, a: usize, b: usize) -> Result<f64, GeomError> {
    let pu = ps.point(u);
    let pa = ps.point(a);
    let pb = ps.point(b);
    if pa == pu || pb == pu {
        return Err(GeomError::DegenerateAngle(u));
    }
    let (ax, ay) = (pa.x - pu.x, pa.y - pu.y);
    let (bx, by) = (pb.x - pu.x, pb.y - pu.y);
    let dot = ax * bx + ay * by;
    let crs = ax * by - ay * bx;
    Ok(crs.abs().atan2(dot).to_degrees())
}

/// Polar angle of the ray center -> p, in degrees within [0, 360).
pub fn polar_angle(center: Point, p: Point) -> f64 {
    let a = (p.y - center.y).atan2(p.x - center.x).to_degrees();
    let a = if a < 0.0 { a + 360.0 } else { a };
    if a >= 360.0 {
        0.0
    } else {
        a
    }
}

/// Counterclockwise sweep from polar angle `from` to `to`, in [0, 360).
pub fn ccw_gap(from: f64, to: f64) -> f64 {
    let g = (to - from) % 360.0;
    if g < 0.0 {
        g + 360.0
    } else {
        g
    }
}

/// Sorts `neighbors` of `center` counterclockwise by polar angle; ties fall
/// back to index order.
pub fn radial_order(
    ps: &PointSet,
    center: usize,
    neighbors: &[usize],
) -> Result<Vec<usize>, GeomError> {
    let c = ps.point(center);
    for &v in neighbors {
        if ps.point(v) == c {
            return Err(GeomError::DegenerateAngle(center));
        }
    }
    let mut order: Vec<usize> = neighbors.to_vec();
    order.sort_by(|&a, &b| {
        let pa = polar_angle(c, ps.point(a));
        let pb = polar_angle(c, ps.point(b));
        pa.partial_cmp(&pb).unwrap().then(a.cmp(&b))
    });
    Ok(order)
}

/// Gaps between consecutive rays of `order` around `center`, including the
/// wraparound slot, measured counterclockwise when `ccw` is true.
pub fn cycle_gaps(ps: &PointSet, center: usize, order: &[usize], ccw: bool) -> Vec<f64> {
    let c = ps.point(center);
    let polar: Vec<f64> = order.iter().map(|&v| polar_angle(c, ps.point(v))).collect();
    let d = order.len();
    (0..d)
        .map(|i| {
            let from = polar[i];
            let to = polar[(i + 1) % d];
            if ccw {
                ccw_gap(from, to)
            } else {
                ccw_gap(to, from)
            }
        })
        .collect()
}
