//! Exact minimum-bottleneck degree-K spanning trees for small inputs.
//!
//! The optimal value is always one of the pairwise distances, so the solver
//! binary-searches the sorted distance list and answers feasibility per
//! threshold: K = 2 via a bitmask Hamiltonian-path sweep, K in {3, 4, 5}
//! via backtracking over the threshold graph with union-find pruning. All
//! comparisons happen on squared distances, which makes "candidate equals
//! some pairwise distance" exact.

use crate::emst::{bottleneck, compute_emst, enforce_degree5, Dsu, Tree};
use crate::geom::PointSet;
use serde::Serialize;
use thiserror::Error;

/// Hard input caps: the K = 2 sweep allocates 2^n table entries, the
/// backtracking search is only tame up to here.
pub const MAX_N_PATH: usize = 22;
pub const MAX_N_TREE: usize = 14;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("exact search for K={k} caps at n={limit}, got n={n}")]
    BudgetExceeded { k: u8, n: usize, limit: usize },
    #[error("degree bound must be 2..=5, got {0}")]
    BadDegree(u8),
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactResult {
    pub k: u8,
    pub value: f64,
    pub witness: Tree,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RatioReport {
    pub k: u8,
    pub exact_value: f64,
    pub bst_value: f64,
    pub ratio: f64,
}

/// Minimum bottleneck over all spanning trees of max degree <= K.
pub fn exact_bottleneck_tree(ps: &PointSet, k: u8) -> Result<ExactResult, OracleError> {
    if !(2..=5).contains(&k) {
        return Err(OracleError::BadDegree(k));
    }
    let n = ps.len();
    let limit = if k == 2 { MAX_N_PATH } else { MAX_N_TREE };
    if n > limit {
        return Err(OracleError::BudgetExceeded { k, n, limit });
    }
    if n == 1 {
        return Ok(ExactResult { k, value: 0.0, witness: Tree::new(1, vec![]).unwrap() });
    }
    let mst = compute_emst(ps).expect("validated point set");
    let floor_sq = mst
        .edges()
        .iter()
        .map(|&(a, b)| ps.dist_sq(a, b))
        .fold(0.0f64, f64::max);
    let mut cands: Vec<f64> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            let d = ps.dist_sq(i, j);
            if d >= floor_sq {
                cands.push(d);
            }
        }
    }
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup();
    let feasible = |lambda_sq: f64| -> Option<Vec<(usize, usize)>> {
        if k == 2 {
            hamiltonian_path_at(ps, lambda_sq)
        } else {
            bounded_tree_at(ps, k as usize, lambda_sq)
        }
    };
    // the largest distance always admits a Hamiltonian path, hence any K >= 2
    let mut lo = 0usize;
    let mut hi = cands.len() - 1;
    let mut best = feasible(cands[hi]).expect("complete graph is feasible");
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match feasible(cands[mid]) {
            Some(w) => {
                best = w;
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    let witness = Tree::new(n, best).expect("feasibility witness is a spanning tree");
    Ok(ExactResult { k, value: cands[hi].sqrt(), witness })
}

/// Minimum bottleneck over all Hamiltonian paths (degree-2 spanning trees).
pub fn bottleneck_hamiltonian_path(ps: &PointSet) -> Result<ExactResult, OracleError> {
    exact_bottleneck_tree(ps, 2)
}

/// Exact degree-K bottleneck divided by the unconstrained (MST) bottleneck.
pub fn ratio(ps: &PointSet, k: u8) -> Result<RatioReport, OracleError> {
    let exact = exact_bottleneck_tree(ps, k)?;
    let mst = compute_emst(ps).expect("validated point set");
    let norm = enforce_degree5(&mst, ps).expect("degree-5 normalization");
    let bst = bottleneck(&norm, ps).0;
    let r = if bst == 0.0 { 1.0 } else { exact.value / bst };
    Ok(RatioReport { k, exact_value: exact.value, bst_value: bst, ratio: r })
}

/// Hamiltonian path in the threshold graph at lambda, as tree edges.
fn hamiltonian_path_at(ps: &PointSet, lambda_sq: f64) -> Option<Vec<(usize, usize)>> {
    let n = ps.len();
    let adj: Vec<u32> = (0..n)
        .map(|i| {
            let mut m = 0u32;
            for j in 0..n {
                if j != i && ps.dist_sq(i, j) <= lambda_sq {
                    m |= 1 << j;
                }
            }
            m
        })
        .collect();
    if adj.contains(&0) {
        return None;
    }
    // a vertex with one neighbor must be a path endpoint
    if adj.iter().filter(|&&m| m.count_ones() == 1).count() > 2 {
        return None;
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    // ends[mask] = the set of vertices some path over exactly `mask` can end at
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1usize << v] = 1 << v;
    }
    for mask in 1..=(full as usize) {
        let cur = ends[mask];
        if cur == 0 {
            continue;
        }
        let mut vs = cur;
        while vs != 0 {
            let v = vs.trailing_zeros() as usize;
            vs &= vs - 1;
            let mut ext = adj[v] & !(mask as u32);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | (1 << w)] |= 1 << w;
            }
        }
    }
    if ends[full as usize] == 0 {
        return None;
    }
    // walk the table backwards to recover one path
    let mut path = Vec::with_capacity(n);
    let mut mask = full as usize;
    let mut v = ends[mask].trailing_zeros() as usize;
    path.push(v);
    while mask != 1 << v {
        let prev_mask = mask & !(1 << v);
        let cand = ends[prev_mask] & adj[v];
        debug_assert!(cand != 0);
        let u = cand.trailing_zeros() as usize;
        path.push(u);
        mask = prev_mask;
        v = u;
    }
    debug_assert_eq!(path.len(), n);
    Some(path.windows(2).map(|w| (w[0], w[1])).collect())
}

/// Spanning tree with max degree <= cap in the threshold graph at lambda.
fn bounded_tree_at(ps: &PointSet, cap: usize, lambda_sq: f64) -> Option<Vec<(usize, usize)>> {
    let n = ps.len();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if ps.dist_sq(i, j) <= lambda_sq {
                edges.push((i, j));
            }
        }
    }
    if edges.len() < n - 1 {
        return None;
    }
    let mut dsu = Dsu::new(n);
    let mut comps = n;
    for &(a, b) in &edges {
        if dsu.union(a, b) {
            comps -= 1;
        }
    }
    if comps != 1 {
        return None;
    }
    let mut deg = vec![0usize; n];
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    if backtrack(n, cap, &edges, 0, &mut UndoDsu::new(n), &mut deg, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

/// Union-find without path compression so unions can be rolled back.
struct UndoDsu {
    parent: Vec<usize>,
    rank: Vec<u32>,
}

impl UndoDsu {
    fn new(n: usize) -> Self {
        UndoDsu { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    /// Returns the child root for rollback, or None when already joined.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        if self.rank[ra] < self.rank[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        if self.rank[ra] == self.rank[rb] {
            self.rank[ra] += 1;
        }
        Some(rb)
    }

    fn undo(&mut self, child_root: usize, bumped: bool, parent_root: usize) {
        self.parent[child_root] = child_root;
        if bumped {
            self.rank[parent_root] -= 1;
        }
    }
}

fn backtrack(
    n: usize,
    cap: usize,
    edges: &[(usize, usize)],
    i: usize,
    dsu: &mut UndoDsu,
    deg: &mut [usize],
    chosen: &mut Vec<(usize, usize)>,
) -> bool {
    if chosen.len() == n - 1 {
        return true;
    }
    if i == edges.len() || edges.len() - i < n - 1 - chosen.len() {
        return false;
    }
    let (a, b) = edges[i];
    if deg[a] < cap && deg[b] < cap {
        let ra = dsu.find(a);
        let rb = dsu.find(b);
        if ra != rb {
            let rank_before = dsu.rank[ra.max(rb)].max(dsu.rank[ra.min(rb)]);
            let child = dsu.union(a, b).expect("distinct roots");
            let parent_root = dsu.find(a);
            let bumped = dsu.rank[parent_root] != rank_before;
            deg[a] += 1;
            deg[b] += 1;
            chosen.push((a, b));
            if backtrack(n, cap, edges, i + 1, dsu, deg, chosen) {
                return true;
            }
            chosen.pop();
            deg[a] -= 1;
            deg[b] -= 1;
            dsu.undo(child, bumped, parent_root);
        }
    }
    backtrack(n, cap, edges, i + 1, dsu, deg, chosen)
}
