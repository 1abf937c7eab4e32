//! Bottleneck spanning trees with bounded degree in the plane.
//!
//! The minimum spanning tree of a planar point set already minimizes the
//! longest edge, but its vertices can have degree up to 6. This crate
//! trades bottleneck for degree: starting from the MST it builds spanning
//! trees of maximum degree 4, 3 or 2 whose longest edge grows by at most
//! sqrt(2), sqrt(3) or 3 respectively. Small instances can be compared
//! against exact solvers, and a set of structural checkers audits the
//! geometric facts the constructions rely on.
//!
//! Pipeline: [`geom::PointSet`] -> [`emst::compute_emst`] ->
//! [`emst::enforce_degree5`] -> [`emst::root_at_leaf`] -> one of the
//! transforms in [`bounded`].

pub mod bounded;
pub mod checks;
pub mod constructions;
pub mod emst;
pub mod exact;
pub mod geom;
pub mod io;

pub use bounded::{
    degree2_path, degree3_transform, degree4_transform, guarantee_factor, DegreeBoundedTree,
};
pub use emst::{bottleneck, compute_emst, enforce_degree5, root_at_leaf, BottleneckValue, Tree};
pub use exact::{bottleneck_hamiltonian_path, exact_bottleneck_tree, ratio, ExactResult};
pub use geom::{Point, PointSet};
