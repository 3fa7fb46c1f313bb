//! Free resolutions, Hom complexes and `Hom_D(A, B[i])`.

mod ext;
mod hom;
mod resolution;

pub use ext::{
    class_of_roof, compose_classes, ext_group, homotopic, lift_through_qis, push_cocycle,
    roof_of_class, shift_fraction, DerivedClass, ExtGroup,
};
pub use hom::{hom_complex, HomComplex};
pub use resolution::{free_resolution, FreeResolution};

#[cfg(test)]
mod tests;
