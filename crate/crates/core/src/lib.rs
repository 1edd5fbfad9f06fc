//! Hamilton quaternions over `Z/2^n` and their non-zero divisor graphs.
//!
//! The crate pairs every fast route with a brute-force oracle: the
//! valuation adjacency test against direct multiplication, the Smith normal
//! form degree formula against neighbour enumeration, and closed-form
//! counts against exhaustive classification. [`verify`] runs all of these
//! as a structured report.

pub mod adjacency;
pub mod error;
pub mod families;
pub mod graph;
pub mod ring;
pub mod snf;
pub mod verify;

pub use adjacency::{adjacent_brute, adjacent_fast, adjacent_left, normalize, nu_min};
pub use error::{Error, Result};
pub use graph::{build_graph, build_graph_with, BuildOptions, GraphSnapshot};
pub use ring::{
    classify, count_elements, is_vertex, left_mul_matrix, nu2, quat_mul, ElementClass, IntMatrix4, Modulus, Quat,
    Residue,
};
pub use snf::{
    annihilator_count, degree_formula, determinantal_divisors, kernel_count_brute, smith_diagonal, smith_normal_form,
    SnfDecomposition, SnfDiagonal,
};
