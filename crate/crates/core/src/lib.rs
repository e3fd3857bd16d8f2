//! Hypernetworks as posets and simplicial complexes.
//!
//! The pipeline runs hypernetwork → inclusion poset → order complex →
//! curvature. Each stage is usable on its own:
//!
//! - [`hypernet`]: the hypernetwork model, its formats, clique expansion and
//!   the geometric simplex model;
//! - [`poset`]: inclusion posets, covers, rank functions and chains;
//! - [`complex`]: simplicial complexes, order complexes, f-vectors and χ;
//! - [`curvature`]: Forman Ricci curvature, the Gauss–Bonnet balance, the
//!   directed variants and the curvature filtration.
//!
//! ```
//! use hyperforman::{complex, curvature, fixtures, poset::DEFAULT_CHAIN_CAP, Poset};
//!
//! let h = fixtures::example_network();
//! let p = Poset::from_hypernetwork(&h, true);
//! let k = complex::order_complex(&p, Some(2), DEFAULT_CHAIN_CAP).unwrap();
//! let report = curvature::gauss_bonnet(&k);
//! assert_eq!(report.chi, 1);
//! assert!(report.holds());
//! ```

pub mod complex;
pub mod curvature;
pub mod fixtures;
pub mod half;
pub mod hypernet;
pub mod poset;

pub use complex::{FVector, Simplex, SimplicialComplex};
pub use curvature::{CurvatureReport, DegreeMode, DirectedComplex, DirectedConfig, TriangleMode};
pub use half::HalfInteger;
pub use hypernet::{Format, Hyperedge, Hypernetwork, Hypervertex, NodeId};
pub use poset::{Element, Poset, RankFunction, Ranking};
