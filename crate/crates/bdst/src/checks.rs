//! Numeric audits of the geometric facts the constructions rely on.
//!
//! Every checker walks a tree against its point set and returns a report
//! instead of panicking: an empty violation list is a pass. The angle and
//! chord checkers expect a minimum spanning tree (their claims are false
//! for arbitrary trees); `verify_result` audits a degree-bounded output
//! against its advertised contract and is meaningful for any tree.

use crate::bounded::DegreeBoundedTree;
use crate::emst::{BottleneckValue, Dsu, Tree};
use crate::geom::{self, PointSet, EPS_ANG, EPS_LEN};
use serde::Serialize;

/// One failed assertion: which vertices, what was measured, and by how far
/// the measurement breaks the claimed bound.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub vertices: Vec<usize>,
    pub measured: Vec<f64>,
    pub margin: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub trials: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(check: &str) -> Self {
        CheckReport { check: check.to_string(), trials: 0, violations: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Angle structure at spanning-tree vertices of degree 3, 4 and 5: degree 3
/// has an angle at most 120, degree 4 has two nonadjacent angles at most 90
/// and 120, degree 5 has all angles at most 120 and two nonadjacent ones at
/// most 90. Input must be a minimum spanning tree.
pub fn check_angle_structure(t: &Tree, ps: &PointSet) -> CheckReport {
    let mut rep = CheckReport::new("angle-structure");
    let adj = t.adjacency();
    for (v, nbrs) in adj.iter().enumerate() {
        let d = nbrs.len();
        if !(3..=5).contains(&d) {
            continue;
        }
        rep.trials += 1;
        let order = geom::radial_order(ps, v, nbrs).expect("tree vertices are distinct");
        let gaps = geom::cycle_gaps(ps, v, &order, true);
        let ok = match d {
            3 => gaps.iter().any(|&g| g <= 120.0 + EPS_ANG),
            4 => [(0usize, 2usize), (1, 3)].iter().any(|&(i, j)| {
                let (a, b) = (gaps[i].min(gaps[j]), gaps[i].max(gaps[j]));
                a <= 90.0 + EPS_ANG && b <= 120.0 + EPS_ANG
            }),
            5 => {
                gaps.iter().all(|&g| g <= 120.0 + EPS_ANG)
                    && [(0usize, 2usize), (0, 3), (1, 3), (1, 4), (2, 4)]
                        .iter()
                        .any(|&(i, j)| gaps[i] <= 90.0 + EPS_ANG && gaps[j] <= 90.0 + EPS_ANG)
            }
            _ => unreachable!(),
        };
        if !ok {
            let worst = gaps.iter().cloned().fold(0.0f64, f64::max);
            rep.violations.push(Violation {
                vertices: vec![v],
                measured: gaps.clone(),
                margin: worst - 120.0,
                detail: format!("degree-{d} vertex lacks the required small angles"),
            });
        }
    }
    rep
}

/// Chord bound for adjacent spanning-tree edges pu, uv with convex angle
/// alpha: |pv| <= 2 sin(alpha/2) * max(|pu|, |uv|). Input must be a minimum
/// spanning tree.
pub fn check_chord_bound(t: &Tree, ps: &PointSet) -> CheckReport {
    let mut rep = CheckReport::new("chord-bound");
    let adj = t.adjacency();
    for (u, nbrs) in adj.iter().enumerate() {
        for (i, &p) in nbrs.iter().enumerate() {
            for &v in nbrs.iter().skip(i + 1) {
                rep.trials += 1;
                let alpha = geom::angle_at(ps, u, p, v).expect("tree vertices are distinct");
                let longest = ps.dist(u, p).max(ps.dist(u, v));
                let bound = 2.0 * (alpha / 2.0).to_radians().sin() * longest;
                let chord = ps.dist(p, v);
                if chord > bound + EPS_LEN * longest {
                    rep.violations.push(Violation {
                        vertices: vec![p, u, v],
                        measured: vec![alpha, chord, bound],
                        margin: chord - bound,
                        detail: "chord exceeds 2 sin(alpha/2) times the longer edge".into(),
                    });
                }
            }
        }
    }
    rep
}

/// Three-edge chains p-u-v-q of a minimum spanning tree with p and q
/// strictly on the same side of line uv, alpha and gamma the convex angles
/// at u and v:
///   - alpha + gamma >= 150;
///   - if one of them is at most 80, the other is at least 120 minus half
///     of it;
///   - if alpha + gamma <= 210 then |pq| <= sqrt(3) * max edge length.
pub fn check_two_angle(t: &Tree, ps: &PointSet) -> CheckReport {
    let mut rep = CheckReport::new("two-angle-chain");
    let adj = t.adjacency();
    for &(u, v) in t.edges() {
        for &p in &adj[u] {
            if p == v {
                continue;
            }
            for &q in &adj[v] {
                if q == u || q == p {
                    continue;
                }
                let (pu, pv, pp, pq_pt) = (ps.point(u), ps.point(v), ps.point(p), ps.point(q));
                let side_p = geom::cross(pu, pv, pp);
                let side_q = geom::cross(pu, pv, pq_pt);
                // cross = |uv| * |u x| * sin(angle to the line), so this
                // rejects anything within EPS_LEN of the line
                let strict_p = side_p.abs() > EPS_LEN * ps.dist(u, v) * ps.dist(u, p);
                let strict_q = side_q.abs() > EPS_LEN * ps.dist(u, v) * ps.dist(v, q);
                if !(strict_p && strict_q && side_p * side_q > 0.0) {
                    continue;
                }
                rep.trials += 1;
                let alpha = geom::angle_at(ps, u, p, v).expect("distinct");
                let gamma = geom::angle_at(ps, v, u, q).expect("distinct");
                if alpha + gamma < 150.0 - EPS_ANG {
                    rep.violations.push(Violation {
                        vertices: vec![p, u, v, q],
                        measured: vec![alpha, gamma],
                        margin: 150.0 - alpha - gamma,
                        detail: "same-side chain with angle sum below 150".into(),
                    });
                }
                for (a, g, av, gv) in [(alpha, gamma, u, v), (gamma, alpha, v, u)] {
                    if a <= 80.0 && g < 120.0 - a / 2.0 - EPS_ANG {
                        rep.violations.push(Violation {
                            vertices: vec![p, av, gv, q],
                            measured: vec![a, g],
                            margin: 120.0 - a / 2.0 - g,
                            detail: "opposite angle below 120 minus half the small angle".into(),
                        });
                    }
                }
                if alpha + gamma <= 210.0 {
                    let longest = ps.dist(p, u).max(ps.dist(u, v)).max(ps.dist(v, q));
                    let bound = 3f64.sqrt() * longest;
                    let span = ps.dist(p, q);
                    if span > bound + EPS_LEN * longest {
                        rep.violations.push(Violation {
                            vertices: vec![p, u, v, q],
                            measured: vec![alpha, gamma, span, bound],
                            margin: span - bound,
                            detail: "chain endpoints exceed sqrt(3) despite angle sum <= 210"
                                .into(),
                        });
                    }
                }
            }
        }
    }
    rep
}

/// Empty-triangle property: for adjacent spanning-tree edges pu, uv, the
/// triangle puv contains no other vertex, interior or boundary. Input must
/// be a minimum spanning tree.
pub fn check_empty_triangle(t: &Tree, ps: &PointSet) -> CheckReport {
    let mut rep = CheckReport::new("empty-triangle");
    let adj = t.adjacency();
    for (u, nbrs) in adj.iter().enumerate() {
        for (i, &p) in nbrs.iter().enumerate() {
            for &v in nbrs.iter().skip(i + 1) {
                rep.trials += 1;
                for w in 0..t.n() {
                    if w == u || w == p || w == v {
                        continue;
                    }
                    if let Some(depth) = containment_depth(ps, p, u, v, w) {
                        rep.violations.push(Violation {
                            vertices: vec![p, u, v, w],
                            measured: vec![depth],
                            margin: depth,
                            detail: "vertex inside or on the triangle of an adjacent edge pair"
                                .into(),
                        });
                    }
                }
            }
        }
    }
    rep
}

/// Distance by which `w` sits inside triangle (a, b, c), None when clearly
/// outside. Collinear triangles degenerate to segments: containment then
/// means lying on one of them.
fn containment_depth(ps: &PointSet, a: usize, b: usize, c: usize, w: usize) -> Option<f64> {
    let (pa, pb, pc, pw) = (ps.point(a), ps.point(b), ps.point(c), ps.point(w));
    let scale = ps
        .dist(a, b)
        .max(ps.dist(b, c))
        .max(ps.dist(a, c));
    let tol = EPS_LEN * scale;
    let orient = geom::cross(pa, pb, pc);
    if orient.abs() <= tol * scale {
        let d = seg_dist(pa, pb, pw).min(seg_dist(pb, pc, pw)).min(seg_dist(pa, pc, pw));
        return if d <= tol { Some(-d) } else { None };
    }
    let sides = [(pa, pb), (pb, pc), (pc, pa)];
    let mut depth = f64::INFINITY;
    for (s, e) in sides {
        let signed = geom::cross(s, e, pw) * orient.signum();
        let d = signed / geom::dist(s, e);
        if d < -tol {
            return None;
        }
        depth = depth.min(d);
    }
    Some(depth)
}

fn seg_dist(a: geom::Point, b: geom::Point, p: geom::Point) -> f64 {
    let (ex, ey) = (b.x - a.x, b.y - a.y);
    let len_sq = ex * ex + ey * ey;
    let t = if len_sq == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * ex + (p.y - a.y) * ey) / len_sq).clamp(0.0, 1.0)
    };
    let proj = geom::Point::new(a.x + t * ex, a.y + t * ey);
    geom::dist(p, proj)
}

/// Contract audit for a degree-bounded result, independent of the
/// transform's own bookkeeping: spanning, acyclic, within the degree cap,
/// bottleneck within the advertised factor of the base bottleneck.
pub fn verify_result(ps: &PointSet, dbt: &DegreeBoundedTree, base: BottleneckValue) -> CheckReport {
    let mut rep = CheckReport::new("result-contract");
    let t = &dbt.tree;
    rep.trials = 1;
    if t.n() != ps.len() {
        rep.violations.push(Violation {
            vertices: vec![],
            measured: vec![t.n() as f64, ps.len() as f64],
            margin: (t.n() as f64 - ps.len() as f64).abs(),
            detail: "tree does not span the point set".into(),
        });
        return rep;
    }
    if t.edges().len() + 1 != t.n() {
        rep.violations.push(Violation {
            vertices: vec![],
            measured: vec![t.edges().len() as f64],
            margin: 0.0,
            detail: "edge count is not n - 1".into(),
        });
    }
    let mut dsu = Dsu::new(t.n());
    for &(a, b) in t.edges() {
        if !dsu.union(a, b) {
            rep.violations.push(Violation {
                vertices: vec![a, b],
                measured: vec![],
                margin: 0.0,
                detail: "edge closes a cycle".into(),
            });
        }
    }
    for (v, d) in t.degrees().into_iter().enumerate() {
        if d > dbt.k as usize {
            rep.violations.push(Violation {
                vertices: vec![v],
                measured: vec![d as f64],
                margin: d as f64 - dbt.k as f64,
                detail: format!("degree exceeds the cap {}", dbt.k),
            });
        }
    }
    let limit = dbt.guarantee * base.0 * (1.0 + EPS_LEN) + EPS_LEN;
    for &(a, b) in t.edges() {
        let d = ps.dist(a, b);
        if d > limit {
            rep.violations.push(Violation {
                vertices: vec![a, b],
                measured: vec![d, limit],
                margin: d - limit,
                detail: format!(
                    "edge exceeds {} times the base bottleneck {}",
                    dbt.guarantee, base.0
                ),
            });
        }
    }
    rep
}
