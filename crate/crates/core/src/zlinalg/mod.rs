//! Exact linear algebra over the integers.

mod group;
mod matrix;
mod smith;

pub use group::{cokernel_presentation, determinant, minor_gcd, presented_group_iso, AbGroupPresentation, NormalForm};
pub use matrix::{Int, IntMatrix};
pub(crate) use smith::image_basis_from;
pub use smith::{
    image_basis, is_unimodular, kernel_basis, left_inverse, rank, right_inverse, smith_normal_form, solve_linear,
    solve_matrix, unimodular_inverse, SmithDecomposition,
};
