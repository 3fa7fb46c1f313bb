//! Exact computations with length-3 complexes of abelian groups: roofs,
//! homotopy fibered products and sums, extensions, Baer sum and Ext.
//!
//! ```
//! use picext::complex::Complex;
//! use picext::derived::ext_group;
//! use picext::extensions::{classify_theta, realize_psi};
//! use picext::zmodule::{FpGroup, Int};
//!
//! let a = Complex::concentrated(FpGroup::cyclic(4), 0);
//! let b = Complex::concentrated(FpGroup::cyclic(6), 0);
//! let g = ext_group(&a, &b, 1);
//! assert_eq!(g.divisors(), vec![Int::from(2)]);
//! let x = g.class(&[Int::from(1)]);
//! let e = realize_psi(&x).unwrap();
//! assert_eq!(classify_theta(&e).unwrap().coords(), x.coords());
//! ```

pub mod error;
pub mod zmodule;

pub use error::{Error, Result};
pub mod cli;
pub mod complex;
pub mod derived;
pub mod extensions;
pub mod fractions;
pub mod gen;
