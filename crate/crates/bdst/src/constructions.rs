//! Benchmark point sets.
//!
//! The named sets are the small configurations whose exact degree-K
//! bottleneck ratios are known in closed form; each generator's layout is
//! pinned by unit tests (edge lengths, key distances, the shape of the
//! minimum spanning tree). `random` draws seeded uniform points from the
//! unit square and is the workhorse for property suites.
//!
//! Index 0 is always the hub/center for the star-like sets; arms and
//! rings follow in counterclockwise generation order.

use crate::geom::{Point, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConstructionError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionName {
    SquareCenter,
    PentagonCenter,
    TriangleCenter,
    SpiderBeta2,
    HexStar,
    Lower19,
    Random,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 7] = [
        ConstructionName::SquareCenter,
        ConstructionName::PentagonCenter,
        ConstructionName::TriangleCenter,
        ConstructionName::SpiderBeta2,
        ConstructionName::HexStar,
        ConstructionName::Lower19,
        ConstructionName::Random,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionName::SquareCenter => "square_center",
            ConstructionName::PentagonCenter => "pentagon_center",
            ConstructionName::TriangleCenter => "triangle_center",
            ConstructionName::SpiderBeta2 => "spider_beta2",
            ConstructionName::HexStar => "hex_star",
            ConstructionName::Lower19 => "lower19",
            ConstructionName::Random => "random",
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConstructionName {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConstructionName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| ConstructionError::BadParams(format!("unknown construction {s:?}")))
    }
}

/// A generator invocation: which set, at what scale, and (for `random`)
/// how many points from which seed.
#[derive(Debug, Clone)]
pub struct NamedConstruction {
    pub name: ConstructionName,
    /// Uniform scale: circumradius for the polygon-plus-center sets, edge
    /// length for the spider, hex and 19-point sets. Ignored by `random`.
    pub radius: f64,
    pub n: usize,
    pub seed: u64,
}

impl NamedConstruction {
    pub fn new(name: ConstructionName) -> Self {
        NamedConstruction { name, radius: 1.0, n: 20, seed: 0 }
    }

    /// Known exact degree-K ratios at any scale, one headline value per
    /// set, each frozen by an exact-solver test.
    pub fn expected_ratios(&self) -> Vec<(u8, f64)> {
        match self.name {
            ConstructionName::SquareCenter => vec![(3, std::f64::consts::SQRT_2)],
            ConstructionName::PentagonCenter => vec![(4, 2.0 * 36f64.to_radians().sin())],
            ConstructionName::TriangleCenter => vec![(2, 3f64.sqrt())],
            ConstructionName::SpiderBeta2 => vec![(2, 2.0)],
            ConstructionName::HexStar => vec![(5, 1.0)],
            ConstructionName::Lower19 => vec![(2, 7f64.sqrt())],
            ConstructionName::Random => vec![],
        }
    }

    pub fn generate(&self) -> Result<PointSet, ConstructionError> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(ConstructionError::BadParams(format!(
                "radius must be finite and positive, got {}",
                self.radius
            )));
        }
        match self.name {
            ConstructionName::SquareCenter => Ok(square_center(self.radius)),
            ConstructionName::PentagonCenter => Ok(pentagon_center(self.radius)),
            ConstructionName::TriangleCenter => Ok(triangle_center(self.radius)),
            ConstructionName::SpiderBeta2 => Ok(spider_beta2(self.radius)),
            ConstructionName::HexStar => Ok(hex_star(self.radius)),
            ConstructionName::Lower19 => Ok(lower19(self.radius)),
            ConstructionName::Random => {
                if self.n == 0 {
                    return Err(ConstructionError::BadParams("random needs n >= 1".into()));
                }
                if self.n > 100_000 {
                    return Err(ConstructionError::BadParams(format!(
                        "random n caps at 100000, got {}",
                        self.n
                    )));
                }
                Ok(random_point_set(self.n, self.seed))
            }
        }
    }
}

fn dir_deg(bearing: f64) -> Point {
    let r = bearing.to_radians();
    Point::new(r.cos(), r.sin())
}

fn add(a: Point, b: Point, k: f64) -> Point {
    Point::new(a.x + k * b.x, a.y + k * b.y)
}

fn scaled(pts: Vec<Point>, s: f64) -> PointSet {
    let pts = pts
        .into_iter()
        .map(|p| Point::new(s * p.x, s * p.y))
        .collect();
    PointSet::new(pts).expect("generator layouts have distinct finite points")
}

fn center_plus_ring(sides: usize, first_bearing: f64, r: f64) -> PointSet {
    let mut pts = vec![Point::new(0.0, 0.0)];
    for i in 0..sides {
        pts.push(dir_deg(first_bearing + 360.0 * i as f64 / sides as f64));
    }
    scaled(pts, r)
}

/// Center plus the 4 corners of a square, circumradius `r`. With degree
/// capped at 3 the center drops a spoke and some corner pays a side,
/// ratio sqrt(2).
pub fn square_center(r: f64) -> PointSet {
    center_plus_ring(4, 45.0, r)
}

/// Center plus a regular pentagon, circumradius `r`. With degree capped
/// at 4 one corner pays a side, ratio 2 sin 36 (about 1.1756).
pub fn pentagon_center(r: f64) -> PointSet {
    center_plus_ring(5, 90.0, r)
}

/// Center plus an equilateral triangle, circumradius `r`. A Hamiltonian
/// path must pay a triangle side, ratio sqrt(3).
pub fn triangle_center(r: f64) -> PointSet {
    center_plus_ring(3, 90.0, r)
}

/// Three arms of two collinear unit edges each, 120 degrees apart: the
/// tree S(2,2,2). Any Hamiltonian path leaves one arm stranded behind a
/// length-2 hop, ratio 2. Layout per arm: mid, tip.
pub fn spider_beta2(scale: f64) -> PointSet {
    let mut pts = vec![Point::new(0.0, 0.0)];
    for arm in 0..3 {
        let d = dir_deg(90.0 + 120.0 * arm as f64);
        pts.push(d);
        pts.push(Point::new(2.0 * d.x, 2.0 * d.y));
    }
    scaled(pts, scale)
}

/// Center plus a regular hexagon with unit circumradius. Spokes and ring
/// sides all tie at length `scale`, so the minimum spanning tree takes a
/// degree-6 star and normalization must swap a spoke for a ring side.
/// Coordinates are written so the symmetry survives floating point to
/// within one unit in the last place.
pub fn hex_star(scale: f64) -> PointSet {
    let h = 3f64.sqrt() / 2.0;
    let pts = vec![
        Point::new(0.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.5, h),
        Point::new(-0.5, h),
        Point::new(-1.0, 0.0),
        Point::new(-0.5, -h),
        Point::new(0.5, -h),
    ];
    scaled(pts, scale)
}

/// The 19-point set whose bottleneck Hamiltonian path costs sqrt(7) times
/// the spanning bottleneck. Center p, three arms 120 degrees apart; each
/// arm runs two collinear unit edges p-a1-a2, then forks at a2 into two
/// straight 2-edge branches making 120-degree angles with the incoming
/// edge. All 18 tree edges have length 1; every degree-3 angle is 120 and
/// every degree-2 angle is 180. Layout per arm: a1, a2, then the two
/// branches (counterclockwise fork first) as b1, b2 each.
pub fn lower19(scale: f64) -> PointSet {
    let mut pts = vec![Point::new(0.0, 0.0)];
    for arm in 0..3 {
        let bearing = 90.0 + 120.0 * arm as f64;
        let d = dir_deg(bearing);
        let a2 = Point::new(2.0 * d.x, 2.0 * d.y);
        pts.push(d);
        pts.push(a2);
        for fork in [60.0, -60.0] {
            let e = dir_deg(bearing + fork);
            pts.push(add(a2, e, 1.0));
            pts.push(add(a2, e, 2.0));
        }
    }
    scaled(pts, scale)
}

/// Seeded uniform points in the unit square; pairs closer than 1e-6 are
/// rejected so downstream angle math never sees near-duplicates. The same
/// (n, seed) always yields the same bits.
pub fn random_point_set(n: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        attempts += 1;
        assert!(attempts < 1000 * n + 1000, "rejection sampling stalled");
        let p = Point::new(rng.gen::<f64>(), rng.gen::<f64>());
        if pts
            .iter()
            .all(|q| (p.x - q.x).powi(2) + (p.y - q.y).powi(2) >= 1e-12)
        {
            pts.push(p);
        }
    }
    PointSet::new(pts).expect("sampled points are distinct and finite")
}
