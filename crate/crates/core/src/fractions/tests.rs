use super::*;
use crate::complex::direct_sum;
use crate::zmodule::{FpGroup, IntMatrix};

fn z0() -> Complex {
    Complex::concentrated(FpGroup::free(1), 0)
}

fn divs(c: &Complex, n: i32) -> Vec<i64> {
    c.cohomology(n)
        .group
        .elementary_divisors()
        .iter()
        .map(|d| d.to_i64().unwrap())
        .collect()
}

#[test]
fn product_of_identities_is_diagonal() {
    let id = ChainMap::identity(&z0());
    let fp = fibered_product_complexes(&id, &id);
    assert_eq!(divs(&fp.complex, 0), vec![0]);
    assert!(fp.complex.cohomology(-1).group.is_trivial());
    assert!(fp.homotopy.check());
    assert!(fp.pr_a.is_quasi_iso());
}

#[test]
fn product_over_zero_is_sum() {
    let a = Complex::two_term(
        FpGroup::free(1),
        FpGroup::free(1),
        IntMatrix::lit(&[&[2]]),
        -1,
    )
    .unwrap();
    let b = Complex::concentrated(FpGroup::cyclic(3), 0);
    let z = Complex::zero();
    let fp = fibered_product_complexes(&ChainMap::zero(&a, &z), &ChainMap::zero(&b, &z));
    assert_eq!(fp.complex, direct_sum(&a, &b).complex);
}

#[test]
fn sum_of_identities() {
    let id = ChainMap::identity(&z0());
    let fs = fibered_sum_complexes(&id, &id);
    assert_eq!(divs(&fs.complex, 0), vec![0]);
    assert!(fs.complex.cohomology(-1).group.is_trivial());
    assert!(fs.complex.cohomology(-2).group.is_trivial());
    assert!(fs.homotopy.check());
    let seq = mayer_vietoris_sum(&fs, -2, 0);
    assert!(seq.is_exact());
    let fp = fibered_product_complexes(&id, &id);
    assert!(mayer_vietoris_product(&fp, -2, 0).is_exact());
}

#[test]
fn composition_keeps_quasi_iso_leg() {
    let a = Complex::two_term(
        FpGroup::free(1),
        FpGroup::free(1),
        IntMatrix::lit(&[&[2]]),
        -1,
    )
    .unwrap();
    let q = Complex::concentrated(FpGroup::cyclic(2), 0);
    let qm = ChainMap::new(&a, &q, 0, vec![IntMatrix::lit(&[&[1]])]).unwrap();
    let inv = Fraction::new(qm.clone(), ChainMap::identity(&a)).unwrap();
    let there = Fraction::from_map(&qm);
    let c = compose(&there, &inv).unwrap();
    assert!(c.q().is_quasi_iso());
    assert!(c.p().is_quasi_iso());
    assert!(compose(&inv, &inv).is_err());
}

#[test]
fn kernels_and_cokernels() {
    let id = identity_fraction(&z0());
    assert!(homotopy_kernel(&id).0.is_acyclic());
    assert!(homotopy_cokernel(&id).0.is_acyclic());
    let two =
        Fraction::from_map(&ChainMap::new(&z0(), &z0(), 0, vec![IntMatrix::lit(&[&[2]])]).unwrap());
    let (k, _) = homotopy_kernel(&two);
    assert!(k.is_acyclic());
    let (c, _) = homotopy_cokernel(&two);
    assert_eq!(divs(&c, 0), vec![2]);
}

#[test]
fn roof_arrow_identity_validates() {
    let f = zero_fraction(&z0(), &z0());
    let r = RoofArrow::identity(&f).validate();
    assert!(r.valid() && r.strict);
}
