//! Exact discrete moment tensors, Ehrhart tensor polynomials and tensor
//! valuations on lattice polytopes.
//!
//! All arithmetic is exact over [`Rational`]. The main entry points are
//! [`ehrhart::ehrhart_tensors`], [`tri2d::valuation_n`] and the constraint
//! systems in [`classify`].

pub mod arith;
pub mod classify;
pub mod ehrhart;
pub mod error;
pub mod json;
pub mod linalg;
pub mod points;
pub mod polytope;
pub mod sample;
pub mod tensor;
pub mod tri2d;

pub use arith::{
    bernoulli, faulhaber_sum, format_rational, parse_rational, power_sum_polynomial, Rational,
};
pub use classify::{ConstraintSystem, CoordinateFilter, Parity};
pub use ehrhart::{
    discrete_moment, discrete_moment_relint, ehrhart_tensors, moment_tensor, CheckReport,
    EhrhartTensorExpansion,
};
pub use error::{Error, Result};
pub use points::{count, count_relint, lattice_points, relint_lattice_points};
pub use polytope::{LatticePolytope, Point, UnimodularMap};
pub use tensor::{
    apply_linear, coordinate_row, evaluate, sym_power, sym_product, MultiIndex, SymTensor,
};
pub use tri2d::{unimodular_triangulation, valuation_n, Triangulation2D};
