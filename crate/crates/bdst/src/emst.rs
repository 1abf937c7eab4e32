//! Euclidean minimum spanning trees and the rooted form consumed by the
//! degree-bounding transforms.
//!
//! Prim runs on the full distance matrix in O(n^2). Squared distances within
//! 1e-12 relative of each other count as ties and fall back to lexicographic
//! edge order, so symmetric configurations normalize deterministically.

use crate::geom::{self, GeomError, PointSet, EPS_ANG, EPS_LEN};
use serde::Serialize;
use thiserror::Error;

/// Relative tolerance under which two squared edge lengths tie.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum TreeError {
    #[error("tree on {n} vertices needs {} edges, got {got}", n.saturating_sub(1))]
    WrongEdgeCount { n: usize, got: usize },
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edges do not connect all vertices")]
    Disconnected,
}

#[derive(Debug, Error, PartialEq)]
pub enum EmstError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("vertex {vertex} has degree {degree}, not a leaf")]
    NotALeaf { vertex: usize, degree: usize },
    #[error("could not reduce vertex {vertex} below degree six")]
    NormalizationFailed { vertex: usize },
}

/// Undirected spanning tree on vertices 0..n. Edges are stored normalized
/// (small index first) and sorted; construction verifies connectivity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, TreeError> {
        if n == 0 || edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount { n, got: edges.len() });
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a >= n {
                return Err(TreeError::IndexOutOfRange(a));
            }
            if b >= n {
                return Err(TreeError::IndexOutOfRange(b));
            }
            if a == b {
                return Err(TreeError::SelfLoop(a));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(TreeError::DuplicateEdge(w[0].0, w[0].1));
            }
        }
        let mut dsu = Dsu::new(n);
        for &(a, b) in &norm {
            dsu.union(a, b);
        }
        if (0..n).any(|v| dsu.find(v) != dsu.find(0)) {
            return Err(TreeError::Disconnected);
        }
        Ok(Tree { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }
}

/// Largest edge length of a tree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BottleneckValue(pub f64);

pub fn bottleneck(t: &Tree, ps: &PointSet) -> BottleneckValue {
    let m = t
        .edges()
        .iter()
        .map(|&(a, b)| ps.dist(a, b))
        .fold(0.0f64, f64::max);
    BottleneckValue(m)
}

pub struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

fn tie_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.max(b)
}

/// True when candidate edge (d1, e1) beats (d2, e2) by length, falling back
/// to lexicographic edge order on near-equal lengths.
fn edge_better(d1: f64, e1: (usize, usize), d2: f64, e2: (usize, usize)) -> bool {
    if tie_eq(d1, d2) {
        e1 < e2
    } else {
        d1 < d2
    }
}

/// Euclidean MST by Prim's algorithm over all pairs.
pub fn compute_emst(ps: &PointSet) -> Result<Tree, EmstError> {
    let n = ps.len();
    if n == 1 {
        return Ok(Tree::new(1, vec![])?);
    }
    let mut in_tree = vec![false; n];
    let mut best: Vec<(f64, usize)> = (0..n).map(|j| (ps.dist_sq(0, j), 0)).collect();
    in_tree[0] = true;
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 1..n {
        let mut pick: Option<(f64, (usize, usize), usize)> = None;
        for j in 0..n {
            if in_tree[j] {
                continue;
            }
            let (d, from) = best[j];
            if d == 0.0 {
                return Err(GeomError::DuplicatePoints(from.min(j), from.max(j)).into());
            }
            let e = (from.min(j), from.max(j));
            match pick {
                Some((pd, pe, _)) if !edge_better(d, e, pd, pe) => {}
                _ => pick = Some((d, e, j)),
            }
        }
        let (_, e, j) = pick.expect("non-tree vertex remains");
        edges.push(e);
        in_tree[j] = true;
        for v in 0..n {
            if in_tree[v] {
                continue;
            }
            let d = ps.dist_sq(j, v);
            let cand = (j.min(v), j.max(v));
            let (cur_d, cur_from) = best[v];
            let cur_e = (cur_from.min(v), cur_from.max(v));
            if edge_better(d, cand, cur_d, cur_e) {
                best[v] = (d, j);
            }
        }
    }
    Ok(Tree::new(n, edges)?)
}

/// Reduces every vertex of degree six to degree five by swapping one of a
/// pair of equal-length incident edges 60 degrees apart for the edge between
/// their endpoints. Trees already at degree <= 5 pass through unchanged.
pub fn enforce_degree5(t: &Tree, ps: &PointSet) -> Result<Tree, EmstError> {
    let n = t.n();
    let mut edges: Vec<(usize, usize)> = t.edges().to_vec();
    let mut rounds = 0usize;
    loop {
        let mut deg = vec![0usize; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let Some(v) = (0..n).find(|&v| deg[v] >= 6) else {
            return Ok(Tree::new(n, edges)?);
        };
        rounds += 1;
        if rounds > 6 * n {
            return Err(EmstError::NormalizationFailed { vertex: v });
        }
        let neighbors: Vec<usize> = edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        let order = geom::radial_order(ps, v, &neighbors)?;
        let gaps = geom::cycle_gaps(ps, v, &order, true);
        let d = order.len();
        let mut swapped = false;
        for i in 0..d {
            let (u, w) = (order[i], order[(i + 1) % d]);
            let (du, dw) = (ps.dist(v, u), ps.dist(v, w));
            if gaps[i] <= 60.0 + EPS_ANG && (du - dw).abs() <= EPS_LEN * du.max(dw) {
                // drop the lexicographically larger spoke, keep total weight
                let eu = (v.min(u), v.max(u));
                let ew = (v.min(w), v.max(w));
                let drop = eu.max(ew);
                edges.retain(|&e| e != drop);
                edges.push((u.min(w), u.max(w)));
                swapped = true;
                break;
            }
        }
        if !swapped {
            return Err(EmstError::NormalizationFailed { vertex: v });
        }
    }
}

/// Tree plus a distinguished leaf root; children are stored counterclockwise
/// starting from the parent ray (from the absolute x-axis at the root).
#[derive(Debug, Clone)]
pub struct RootedTree {
    pub tree: Tree,
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
}

/// Roots `t` at `leaf` (default: the leaf whose point is lexicographically
/// smallest by (x, y)).
pub fn root_at_leaf(t: &Tree, ps: &PointSet, leaf: Option<usize>) -> Result<RootedTree, EmstError> {
    let n = t.n();
    let deg = t.degrees();
    let root = match leaf {
        Some(v) => {
            if n > 1 && deg[v] != 1 {
                return Err(EmstError::NotALeaf { vertex: v, degree: deg[v] });
            }
            v
        }
        None => {
            if n == 1 {
                0
            } else {
                (0..n)
                    .filter(|&v| deg[v] == 1)
                    .min_by(|&a, &b| {
                        let pa = ps.point(a);
                        let pb = ps.point(b);
                        pa.x.partial_cmp(&pb.x)
                            .unwrap()
                            .then(pa.y.partial_cmp(&pb.y).unwrap())
                            .then(a.cmp(&b))
                    })
                    .expect("a tree with n >= 2 has a leaf")
            }
        }
    };
    let adj = t.adjacency();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::from([root]);
    seen[root] = true;
    while let Some(v) = queue.pop_front() {
        let kids: Vec<usize> = adj[v].iter().copied().filter(|&u| !seen[u]).collect();
        let ordered = geom::radial_order(ps, v, &kids)?;
        let ordered = match parent[v] {
            // rotate so children follow the parent ray counterclockwise
            Some(p) => {
                let pv = geom::polar_angle(ps.point(v), ps.point(p));
                let mut keyed: Vec<(f64, usize, usize)> = ordered
                    .iter()
                    .map(|&u| {
                        let a = geom::polar_angle(ps.point(v), ps.point(u));
                        (geom::ccw_gap(pv, a), u, u)
                    })
                    .collect();
                keyed.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap().then(x.1.cmp(&y.1)));
                keyed.into_iter().map(|(_, u, _)| u).collect()
            }
            None => ordered,
        };
        for &u in &ordered {
            seen[u] = true;
            parent[u] = Some(v);
            queue.push_back(u);
        }
        children[v] = ordered;
    }
    Ok(RootedTree { tree: t.clone(), root, parent, children })
}

/// Number of edges on the tree path between a and b.
pub fn hop_distance(t: &Tree, a: usize, b: usize) -> usize {
    if a == b {
        return 0;
    }
    let adj = t.adjacency();
    let mut dist = vec![usize::MAX; t.n()];
    let mut queue = std::collections::VecDeque::from([a]);
    dist[a] = 0;
    while let Some(v) = queue.pop_front() {
        if v == b {
            return dist[b];
        }
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    unreachable!("tree is connected");
}
