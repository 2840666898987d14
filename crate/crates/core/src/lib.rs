//! Mod-2 cohomology, Sq² structure and connective real K-theory of
//! quasitoric manifolds, computed from a simplicial complex and a
//! characteristic matrix.

pub mod charfun;
pub mod combinatorics;
pub mod face_ring;
pub mod gf2;
pub mod steenrod;
pub mod a1_decomp;
pub mod ext_charts;
pub mod ko_groups;
pub mod problem;
pub mod library;
pub mod render;
pub mod report;
