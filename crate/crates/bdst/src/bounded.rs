//! Degree-bounded spanning tree transforms.
//!
//! Starting from a rooted max-degree-5 MST, `degree4_transform` and
//! `degree3_transform` rewire high-degree vertices into trees of max degree
//! 4 (resp. 3) without stretching the bottleneck beyond sqrt(2) (resp.
//! sqrt(3)) times the input bottleneck. `degree2_path` walks the cube of the
//! tree for a Hamiltonian path within factor 3.
//!
//! The recursive structure is processed on an explicit stack. Every task
//! transforms one subtree plus the edge to its parent; its result records
//! which subtree vertex ended up attached to the parent ("natural" when it
//! is still the original child). Every edge the transforms add is length-
//! checked against the mode's factor times the input bottleneck, so a
//! violated geometric precondition surfaces as an error instead of a bad
//! tree.

use crate::emst::{bottleneck, root_at_leaf, RootedTree, Tree};
use crate::geom::{self, PointSet, EPS_ANG, EPS_LEN};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TransformError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no qualifying angle slot at vertex {vertex} (degree {degree})")]
    AngleSlotMissing { vertex: usize, degree: usize },
    #[error("internal guarantee check failed: {0}")]
    GuaranteeViolated(String),
}

/// Degree cap the transforms aim for, selecting which angle thresholds and
/// rewiring cases apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    Deg3,
    Deg4,
}

/// Consecutive pair of incident rays at a vertex, in radial-cycle order
/// (slot 0 starts at the parent ray).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSlot {
    pub slot: usize,
    pub first: usize,
    pub second: usize,
    pub degrees: f64,
    pub involves_parent: bool,
}

/// Outcome of transforming one rooted tree: the rewired tree plus which
/// vertex carries the edge to the root.
#[derive(Debug, Clone)]
pub struct TransformResult {
    pub tree: Tree,
    pub attach_vertex: usize,
    pub natural: bool,
}

#[derive(Debug, Clone)]
pub struct DegreeBoundedTree {
    pub tree: Tree,
    pub k: u8,
    pub bottleneck: f64,
    /// Stretch factor promised for this k: bottleneck stays within
    /// `guarantee` times the input tree's bottleneck.
    pub guarantee: f64,
}

/// Worst-case bottleneck stretch of the degree-K construction.
pub fn guarantee_factor(k: u8) -> f64 {
    match k {
        2 => 3.0,
        3 => 3f64.sqrt(),
        4 => std::f64::consts::SQRT_2,
        _ => 1.0,
    }
}

/// Picks the angle slot(s) the rewiring cases consume at `v`: degree 3 needs
/// one slot <= 120, degree 4 a nonadjacent pair <= 90 / <= 120, degree 5 a
/// nonadjacent pair both <= 90. Deterministic: smallest sum pair, then
/// smaller angle, then smaller slot index.
pub fn choose_angles(
    v: usize,
    rt: &RootedTree,
    ps: &PointSet,
    mode: TransformMode,
) -> Result<Vec<AngleSlot>, TransformError> {
    let Some(p) = rt.parent[v] else {
        return Err(TransformError::PreconditionViolated(format!(
            "choose_angles needs a non-root vertex, got root {v}"
        )));
    };
    let mut cycle = vec![p];
    cycle.extend(rt.children[v].iter().copied());
    let d = cycle.len();
    if !(3..=5).contains(&d) {
        return Err(TransformError::PreconditionViolated(format!(
            "choose_angles needs degree 3..=5 at vertex {v}, got {d}"
        )));
    }
    let gaps = geom::cycle_gaps(ps, v, &cycle, true);
    let slot_at = |i: usize| AngleSlot {
        slot: i,
        first: cycle[i],
        second: cycle[(i + 1) % d],
        degrees: gaps[i],
        involves_parent: i == 0 || i == d - 1,
    };
    let fail = || TransformError::AngleSlotMissing { vertex: v, degree: d };
    let min_slot = |cands: &[usize]| {
        cands
            .iter()
            .copied()
            .min_by(|&a, &b| gaps[a].partial_cmp(&gaps[b]).unwrap().then(a.cmp(&b)))
            .unwrap()
    };
    match d {
        3 => {
            let s = slot_at(min_slot(&[0, 1, 2]));
            if s.degrees > 120.0 + EPS_ANG {
                return Err(fail());
            }
            Ok(vec![s])
        }
        4 => {
            let even = gaps[0] + gaps[2];
            let odd = gaps[1] + gaps[3];
            let pair = if even <= odd { [0, 2] } else { [1, 3] };
            let lead = min_slot(&pair);
            let other = pair[0] + pair[1] - lead;
            let (a, b) = (slot_at(lead), slot_at(other));
            let ok = match mode {
                TransformMode::Deg4 => a.degrees <= 90.0 + EPS_ANG && b.degrees <= 120.0 + EPS_ANG,
                TransformMode::Deg3 => a.degrees <= 120.0 + EPS_ANG && b.degrees <= 120.0 + EPS_ANG,
            };
            if !ok {
                return Err(fail());
            }
            Ok(vec![a, b])
        }
        5 => {
            let s1 = min_slot(&[0, 1, 2, 3, 4]);
            let s2 = min_slot(&[(s1 + 2) % 5, (s1 + 3) % 5]);
            let (a, b) = (slot_at(s1), slot_at(s2));
            if a.degrees > 90.0 + EPS_ANG || b.degrees > 90.0 + EPS_ANG {
                return Err(fail());
            }
            Ok(vec![a, b])
        }
        _ => unreachable!(),
    }
}

/// Completed subtask: subtree originally rooted at `head`, now hanging off
/// its parent through `attach` via the pool edge `edge_idx`.
#[derive(Debug, Clone, Copy)]
struct Sub {
    head: usize,
    attach: usize,
    edge_idx: usize,
}

struct WidePlan {
    hub: usize,
    parent: usize,
    lead: usize,
    c2: usize,
    c3: usize,
    c4: usize,
    hub_gap: [f64; 5],
    lead_rays: Vec<usize>,
    lead_gap: Vec<f64>,
    res_base: usize,
}

enum Frame {
    Enter { c: usize, p: usize },
    Std { c: usize, p: usize, res_base: usize },
    Wide(Box<WidePlan>),
}

struct Builder<'a> {
    ps: &'a PointSet,
    limit: f64,
    pool: Vec<Option<(usize, usize)>>,
}

impl Builder<'_> {
    fn add(&mut self, a: usize, b: usize) -> Result<usize, TransformError> {
        let d = self.ps.dist(a, b);
        if d > self.limit {
            return Err(TransformError::GuaranteeViolated(format!(
                "edge ({a}, {b}) has length {d}, above the bound {}",
                self.limit
            )));
        }
        self.pool.push(Some((a, b)));
        Ok(self.pool.len() - 1)
    }

    fn remove(&mut self, idx: usize) {
        self.pool[idx] = None;
    }
}

/// Gaps of the radial cycle [parent ray, then children swept in the given
/// orientation]; returns the swept child order alongside.
fn oriented_cycle(
    ps: &PointSet,
    center: usize,
    parent: usize,
    children: &[usize],
    ccw: bool,
) -> (Vec<usize>, Vec<f64>) {
    let cp = ps.point(center);
    let parent_ray = geom::polar_angle(cp, ps.point(parent));
    let mut kids: Vec<(f64, usize)> = children
        .iter()
        .map(|&u| {
            let a = geom::polar_angle(cp, ps.point(u));
            let sweep = if ccw {
                geom::ccw_gap(parent_ray, a)
            } else {
                geom::ccw_gap(a, parent_ray)
            };
            (sweep, u)
        })
        .collect();
    kids.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap().then(x.1.cmp(&y.1)));
    let order: Vec<usize> = kids.into_iter().map(|(_, u)| u).collect();
    let mut cycle = vec![parent];
    cycle.extend(order.iter().copied());
    let gaps = geom::cycle_gaps(ps, center, &cycle, ccw);
    (order, gaps)
}

fn validate(rt: &RootedTree, ps: &PointSet) -> Result<(), TransformError> {
    if rt.tree.n() != ps.len() {
        return Err(TransformError::PreconditionViolated(format!(
            "tree has {} vertices, point set has {}",
            rt.tree.n(),
            ps.len()
        )));
    }
    if rt.tree.n() > 1 && rt.children[rt.root].len() != 1 {
        return Err(TransformError::PreconditionViolated(format!(
            "root {} must be a leaf",
            rt.root
        )));
    }
    let deg = rt.tree.max_degree();
    if deg > 5 {
        return Err(TransformError::PreconditionViolated(format!(
            "input max degree {deg} exceeds 5"
        )));
    }
    Ok(())
}

/// Runs the degree-K rewiring over the whole rooted tree and reports the
/// final attachment at the root. K must be 3 or 4.
pub fn transform_result(
    rt: &RootedTree,
    ps: &PointSet,
    k: u8,
) -> Result<TransformResult, TransformError> {
    let mode = match k {
        3 => TransformMode::Deg3,
        4 => TransformMode::Deg4,
        _ => {
            return Err(TransformError::PreconditionViolated(format!(
                "transform targets degree 3 or 4, got {k}"
            )))
        }
    };
    validate(rt, ps)?;
    let n = rt.tree.n();
    if n == 1 {
        return Ok(TransformResult {
            tree: rt.tree.clone(),
            attach_vertex: rt.root,
            natural: true,
        });
    }
    let b = bottleneck(&rt.tree, ps).0;
    let limit = guarantee_factor(k) * b * (1.0 + EPS_LEN) + 1e-12;
    let mut builder = Builder { ps, limit, pool: Vec::with_capacity(n) };
    let mut results: Vec<Sub> = Vec::new();
    let top = rt.children[rt.root][0];
    let mut stack = vec![Frame::Enter { c: top, p: rt.root }];
    while let Some(frame) = stack.pop() {
        match frame {
            Frame::Enter { c, p } => {
                let kids = &rt.children[c];
                if mode == TransformMode::Deg3 && kids.len() == 4 {
                    let plan = plan_wide(rt, ps, c, p, results.len())?;
                    let mut schedule: Vec<(usize, usize)> =
                        vec![(plan.c2, c), (plan.c3, c), (plan.c4, c)];
                    schedule.extend(plan.lead_rays.iter().map(|&u| (u, plan.lead)));
                    stack.push(Frame::Wide(Box::new(plan)));
                    for &(child, parent) in schedule.iter().rev() {
                        stack.push(Frame::Enter { c: child, p: parent });
                    }
                } else {
                    stack.push(Frame::Std { c, p, res_base: results.len() });
                    for &child in kids.iter().rev() {
                        stack.push(Frame::Enter { c: child, p: c });
                    }
                }
            }
            Frame::Std { c, p, res_base } => {
                let sub = combine_std(rt, ps, mode, &mut builder, &mut results, c, p, res_base)?;
                results.push(sub);
            }
            Frame::Wide(plan) => {
                let sub = combine_wide(&mut builder, &mut results, &plan)?;
                results.push(sub);
            }
        }
    }
    debug_assert_eq!(results.len(), 1);
    let root_sub = results.pop().expect("top-level task result");
    let edges: Vec<(usize, usize)> = builder.pool.into_iter().flatten().collect();
    let tree = Tree::new(n, edges)
        .map_err(|e| TransformError::GuaranteeViolated(format!("assembled graph invalid: {e}")))?;
    Ok(TransformResult { tree, attach_vertex: root_sub.attach, natural: root_sub.attach == top })
}

#[allow(clippy::too_many_arguments)]
fn combine_std(
    rt: &RootedTree,
    ps: &PointSet,
    mode: TransformMode,
    builder: &mut Builder,
    results: &mut Vec<Sub>,
    c: usize,
    p: usize,
    res_base: usize,
) -> Result<Sub, TransformError> {
    let k = rt.children[c].len();
    let keep_all = match mode {
        TransformMode::Deg4 => k <= 2,
        TransformMode::Deg3 => k <= 1,
    };
    let slots: Vec<AngleSlot> = if keep_all {
        Vec::new()
    } else {
        let chosen = choose_angles(c, rt, ps, mode)?;
        match (mode, k) {
            (TransformMode::Deg4, 3) => vec![chosen[0]],
            _ => chosen,
        }
    };
    let subs: Vec<Sub> = results.drain(res_base..).collect();
    debug_assert_eq!(subs.len(), k);
    debug_assert!(subs.iter().zip(rt.children[c].iter()).all(|(s, &ch)| s.head == ch));
    let mut attach = c;
    for slot in &slots {
        if slot.involves_parent {
            // the slot (parent, child) swaps the root edge for the chord
            attach = if slot.first == p { slot.second } else { slot.first };
        } else {
            builder.add(slot.first, slot.second)?;
            // each child occupies cycle position (index + 1)
            builder.remove(subs[slot.slot - 1].edge_idx);
        }
    }
    let edge_idx = builder.add(p, attach)?;
    Ok(Sub { head: c, attach, edge_idx })
}

fn plan_wide(
    rt: &RootedTree,
    ps: &PointSet,
    c: usize,
    p: usize,
    res_base: usize,
) -> Result<WidePlan, TransformError> {
    let kids = &rt.children[c];
    let (order_ccw, gaps_ccw) = oriented_cycle(ps, c, p, kids, true);
    // orient the cycle so the first two slots past the parent are the small
    // side; mirrored inputs are handled by sweeping clockwise instead
    let ccw_sum = gaps_ccw[0] + gaps_ccw[1];
    let cw_sum = gaps_ccw[4] + gaps_ccw[3];
    let (order, hub_gap, hub_ccw) = if ccw_sum <= cw_sum {
        (order_ccw, [gaps_ccw[0], gaps_ccw[1], gaps_ccw[2], gaps_ccw[3], gaps_ccw[4]], true)
    } else {
        let mut rev = order_ccw;
        rev.reverse();
        (rev, [gaps_ccw[4], gaps_ccw[3], gaps_ccw[2], gaps_ccw[1], gaps_ccw[0]], false)
    };
    if hub_gap[0] + hub_gap[1] > 150.0 + EPS_ANG {
        return Err(TransformError::AngleSlotMissing { vertex: c, degree: 5 });
    }
    let (lead, c2, c3, c4) = (order[0], order[1], order[2], order[3]);
    let (lead_rays, lead_gap) = oriented_cycle(ps, lead, c, &rt.children[lead], !hub_ccw);
    Ok(WidePlan {
        hub: c,
        parent: p,
        lead,
        c2,
        c3,
        c4,
        hub_gap,
        lead_rays,
        lead_gap,
        res_base,
    })
}

fn combine_wide(
    builder: &mut Builder,
    results: &mut Vec<Sub>,
    plan: &WidePlan,
) -> Result<Sub, TransformError> {
    let subs: Vec<Sub> = results.drain(plan.res_base..).collect();
    let l = plan.lead_rays.len();
    debug_assert_eq!(subs.len(), 3 + l);
    let (sub_c3, u_subs) = (subs[1], &subs[3..]);
    debug_assert_eq!(sub_c3.head, plan.c3);
    // ray order around the lead child runs [inner children.., outer child];
    // the outer child sits between the hub's parent ray and the lead
    let outer = plan.lead_rays.last().copied();
    let inner = plan.lead_rays.first().copied();
    let gap_outer_back = plan.lead_gap.last().copied().unwrap_or(0.0);
    let gap_hub_inner = plan.lead_gap.first().copied().unwrap_or(0.0);
    let a1 = plan.hub_gap[0];
    let a2 = plan.hub_gap[1];
    let (p, lead, c2, c3, c4) = (plan.parent, plan.lead, plan.c2, plan.c3, plan.c4);
    let fail = || TransformError::AngleSlotMissing { vertex: plan.hub, degree: 5 };
    builder.remove(sub_c3.edge_idx);
    let (attach, edge_idx) = match l {
        0 | 1 => {
            builder.add(lead, c2)?;
            builder.add(c3, c4)?;
            (lead, builder.add(p, lead)?)
        }
        2 => {
            let (u1, u2) = (outer.unwrap(), inner.unwrap());
            let (sub_u1, sub_u2) = (u_subs[1], u_subs[0]);
            debug_assert_eq!((sub_u1.head, sub_u2.head), (u1, u2));
            let between = plan.lead_gap[1];
            if between <= 120.0 + EPS_ANG {
                builder.add(u1, u2)?;
                builder.remove(sub_u1.edge_idx);
                builder.add(lead, c2)?;
                builder.add(c3, c4)?;
                (lead, builder.add(p, lead)?)
            } else if a1 + gap_outer_back <= 195.0 + EPS_ANG {
                builder.add(lead, c2)?;
                builder.add(c3, c4)?;
                (u1, builder.add(p, u1)?)
            } else if a2 + gap_hub_inner <= 195.0 + EPS_ANG {
                builder.add(u2, c2)?;
                builder.add(c3, c4)?;
                (lead, builder.add(p, lead)?)
            } else {
                return Err(fail());
            }
        }
        3 => {
            let (u1, u2, u3) = (outer.unwrap(), plan.lead_rays[0], plan.lead_rays[1]);
            let (sub_u1, sub_u2) = (u_subs[2], u_subs[0]);
            debug_assert_eq!((sub_u1.head, sub_u2.head), (u1, u2));
            let g3 = plan.lead_gap[1];
            let g4 = plan.lead_gap[2];
            if g3 >= 120.0 || g4 >= 120.0 {
                builder.add(u2, c2)?;
                builder.add(c3, c4)?;
                (u1, builder.add(p, u1)?)
            } else if a1 + gap_outer_back <= 195.0 + EPS_ANG {
                builder.add(u2, u3)?;
                builder.remove(sub_u2.edge_idx);
                builder.add(lead, c2)?;
                builder.add(c3, c4)?;
                (u1, builder.add(p, u1)?)
            } else if a2 + gap_hub_inner <= 195.0 + EPS_ANG {
                builder.add(u1, u3)?;
                builder.remove(sub_u1.edge_idx);
                builder.add(u2, c2)?;
                builder.add(c3, c4)?;
                (lead, builder.add(p, lead)?)
            } else {
                return Err(fail());
            }
        }
        4 => {
            let (u1, u2, u3, u4) =
                (outer.unwrap(), plan.lead_rays[0], plan.lead_rays[1], plan.lead_rays[2]);
            let sub_u3 = u_subs[1];
            debug_assert_eq!(sub_u3.head, u3);
            builder.add(u2, c2)?;
            builder.add(u3, u4)?;
            builder.remove(sub_u3.edge_idx);
            builder.add(c3, c4)?;
            (u1, builder.add(p, u1)?)
        }
        _ => {
            return Err(TransformError::PreconditionViolated(format!(
                "vertex {lead} has {l} children, input degree exceeds 5"
            )))
        }
    };
    Ok(Sub { head: plan.hub, attach, edge_idx })
}

fn finish(tr: TransformResult, k: u8, ps: &PointSet, input_bottleneck: f64) -> DegreeBoundedTree {
    let b = bottleneck(&tr.tree, ps).0;
    debug_assert!(b <= guarantee_factor(k) * input_bottleneck * (1.0 + EPS_LEN) + 1e-12);
    DegreeBoundedTree { tree: tr.tree, k, bottleneck: b, guarantee: guarantee_factor(k) }
}

/// Max-degree-4 tree within sqrt(2) of the input bottleneck.
pub fn degree4_transform(
    rt: &RootedTree,
    ps: &PointSet,
) -> Result<DegreeBoundedTree, TransformError> {
    let b = bottleneck(&rt.tree, ps).0;
    Ok(finish(transform_result(rt, ps, 4)?, 4, ps, b))
}

/// Max-degree-3 tree within sqrt(3) of the input bottleneck.
pub fn degree3_transform(
    rt: &RootedTree,
    ps: &PointSet,
) -> Result<DegreeBoundedTree, TransformError> {
    let b = bottleneck(&rt.tree, ps).0;
    Ok(finish(transform_result(rt, ps, 3)?, 3, ps, b))
}

/// Hamiltonian path through the cube of `t`: consecutive path vertices are
/// at most 3 tree edges apart, so the bottleneck stays within 3 times the
/// tree's bottleneck.
pub fn degree2_path(t: &Tree, ps: &PointSet) -> DegreeBoundedTree {
    let n = t.n();
    let b = bottleneck(t, ps).0;
    if n == 1 {
        return DegreeBoundedTree { tree: t.clone(), k: 2, bottleneck: 0.0, guarantee: 3.0 };
    }
    let rt = root_at_leaf(t, ps, None).expect("valid tree roots at a leaf");
    let order = cube_path_order(&rt);
    debug_assert_eq!(order.len(), n);
    let edges: Vec<(usize, usize)> = order.windows(2).map(|w| (w[0], w[1])).collect();
    let tree = Tree::new(n, edges).expect("consecutive path pairs form a tree");
    let pb = bottleneck(&tree, ps).0;
    debug_assert!(pb <= 3.0 * b * (1.0 + EPS_LEN) + 1e-12);
    DegreeBoundedTree { tree, k: 2, bottleneck: pb, guarantee: 3.0 }
}

/// Emits the path order. Anchored segments end at a child of their head
/// vertex, which keeps every junction within 3 hops; the trailing subtree
/// stays un-reversed so chains come out in their natural order.
fn cube_path_order(rt: &RootedTree) -> Vec<usize> {
    enum Op {
        Free(usize),
        Anchored(usize),
        RevAnchored(usize),
        Emit(usize),
    }
    let mut out = Vec::with_capacity(rt.tree.n());
    let mut stack = vec![Op::Free(rt.root)];
    while let Some(op) = stack.pop() {
        match op {
            Op::Free(v) => {
                out.push(v);
                let ch = &rt.children[v];
                if let Some((&last, front)) = ch.split_last() {
                    stack.push(Op::Free(last));
                    for &c in front.iter().rev() {
                        stack.push(Op::RevAnchored(c));
                    }
                }
            }
            Op::Anchored(v) => {
                out.push(v);
                for &c in rt.children[v].iter().rev() {
                    stack.push(Op::RevAnchored(c));
                }
            }
            Op::RevAnchored(v) => {
                stack.push(Op::Emit(v));
                for &c in rt.children[v].iter() {
                    stack.push(Op::Anchored(c));
                }
            }
            Op::Emit(v) => out.push(v),
        }
    }
    out
}
