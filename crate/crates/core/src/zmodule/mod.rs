//! Exact integer linear algebra and finitely presented abelian groups.
//!
//! Conventions: relations are rows, so a group on `n` generators is
//! `Z^n / rowspan(R)`; morphisms act on column vectors of generator
//! coordinates.

pub mod echelon;
pub mod group;
pub mod int;
pub mod matrix;
pub mod snf;

pub use echelon::{kernel_basis, lattice_basis, solve_linear, solve_matrix, ColumnEchelon};
pub use group::{format_divisors, hom_group, FpGroup, GroupMorphism, HomGroup};
pub use int::Int;
pub use matrix::{ints, vec_add, vec_is_zero, vec_neg, vec_sub, IntMatrix};
pub use snf::{smith_diagonal, smith_full, smith_normal_form, SmithDecomposition, SmithFull};

/// Nonunit elementary divisors of `g`, free rank as trailing zeros.
pub fn elementary_divisors(g: &FpGroup) -> Vec<Int> {
    g.elementary_divisors()
}
