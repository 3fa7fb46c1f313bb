use super::*;
use crate::zmodule::matrix::ints;

fn z() -> FpGroup {
    FpGroup::free(1)
}

fn divs(g: &FpGroup) -> Vec<i64> {
    g.elementary_divisors()
        .iter()
        .map(|d| d.to_i64().unwrap())
        .collect()
}

fn times(m: i64, n: i32) -> Complex {
    Complex::two_term(z(), z(), IntMatrix::lit(&[&[m]]), n).unwrap()
}

#[test]
fn cohomology_of_times_two() {
    let k = times(2, -1);
    assert_eq!(divs(&k.cohomology(0).group), vec![2]);
    assert!(k.cohomology(-1).group.is_trivial());
    let h = k.cohomology(0);
    assert_eq!(h.canonical(&ints(&[3])), Some(ints(&[1])));
    let zero = Complex::zero();
    assert!(zero.cohomology(0).group.is_trivial());
    let zz = Complex::concentrated(z(), 0);
    assert_eq!(divs(&zz.cohomology(0).group), vec![0]);
}

#[test]
fn rejects_bad_complexes() {
    let bad = Complex::new(
        -1,
        vec![z(), z(), z()],
        vec![IntMatrix::lit(&[&[1]]), IntMatrix::lit(&[&[1]])],
    );
    assert!(matches!(bad, Err(crate::Error::NotAComplex(_))));
    let ill = Complex::two_term(
        FpGroup::cyclic(2),
        FpGroup::cyclic(3),
        IntMatrix::lit(&[&[1]]),
        0,
    );
    assert!(ill.is_err());
}

#[test]
fn shift_signs() {
    let k = times(2, -1);
    assert_eq!(shift(&k, 0), k);
    assert_eq!(shift(&shift(&k, 1), -1), k);
    let s = shift(&k, 1);
    assert_eq!((s.lo(), s.hi()), (-2, -1));
    assert_eq!(s.diff_matrix(-2), IntMatrix::lit(&[&[-2]]));
}

#[test]
fn cones() {
    let zc = Complex::concentrated(z(), 0);
    let u0 = ChainMap::zero(&zc, &zc);
    let mc = mapping_cone(&u0);
    assert_eq!(divs(&mc.complex.cohomology(-1).group), vec![0]);
    assert_eq!(divs(&mc.complex.cohomology(0).group), vec![0]);
    assert!(mapping_cone(&ChainMap::identity(&zc)).complex.is_acyclic());
    let two = ChainMap::new(&zc, &zc, 0, vec![IntMatrix::lit(&[&[2]])]).unwrap();
    let mc2 = mapping_cone(&two).complex;
    assert_eq!(divs(&mc2.cohomology(0).group), vec![2]);
    assert!(mc2.cohomology(-1).group.is_trivial());
    assert!(cocone(&ChainMap::identity(&zc)).complex.is_acyclic());
    let (f, g) = cocone_to_shifted_cone(&two);
    assert!(f.compose(&g).equals(&ChainMap::identity(g.src())));
    assert!(g.compose(&f).equals(&ChainMap::identity(f.src())));
}

#[test]
fn quasi_iso_to_quotient() {
    let k = times(2, -1);
    let q = Complex::concentrated(FpGroup::cyclic(2), 0);
    let f = ChainMap::new(&k, &q, 0, vec![IntMatrix::lit(&[&[1]])]).unwrap();
    assert!(f.is_quasi_iso());
    assert!(ChainMap::identity(&k).is_quasi_iso());
    assert!(!ChainMap::zero(&k, &k).is_quasi_iso());
}

#[test]
fn truncations_preserve_cohomology() {
    let k = Complex::new(
        -2,
        vec![z(), FpGroup::free(2), z()],
        vec![IntMatrix::lit(&[&[3], &[0]]), IntMatrix::lit(&[&[0, 2]])],
    )
    .unwrap();
    let (t, i) = truncate_le_good(&k, -1);
    for n in -2..=-1 {
        assert!(i.on_cohomology(n).is_iso());
    }
    assert!(t.cohomology(0).group.is_trivial());
    let (t, p) = truncate_ge_good(&k, -1);
    for n in -1..=0 {
        assert!(p.on_cohomology(n).is_iso());
    }
    assert!(t.cohomology(-2).group.is_trivial());
    let (b, _) = truncate_le_bad(&k, -1);
    assert_eq!(b.hi(), -1);
    let zc = Complex::concentrated(z(), 0);
    let (t, _) = truncate_le_good(
        &shift(&mapping_cone(&ChainMap::identity(&zc)).complex, -1),
        0,
    );
    assert!(t.is_acyclic());
}

#[test]
fn sums_and_diagonals() {
    let k = Complex::concentrated(FpGroup::from_divisors(&[0, 2]), 0);
    assert_eq!(divs(&k.cohomology(0).group), vec![2, 0]);
    let s = direct_sum(&k, &Complex::zero());
    assert_eq!(s.complex, k);
    let (_, d) = diagonal(&k);
    let (_, c) = codiagonal(&k);
    assert!(c
        .compose(&d)
        .equals(&ChainMap::identity(&k).scale(&Int::from(2))));
}

#[test]
fn homotopies() {
    let zc = Complex::concentrated(z(), 0);
    let k = times(2, -1);
    let f = ChainMap::new(&zc, &k, 0, vec![IntMatrix::lit(&[&[2]])]).unwrap();
    let g = ChainMap::zero(&zc, &k);
    // f - g = d∘h with h^0 = [1]
    let h = ChainHomotopy::new(&g, &f, 0, vec![IntMatrix::lit(&[&[1]])]).unwrap();
    assert!(homotopy_check(&h));
    assert!(ChainHomotopy::new(&g, &f, 0, vec![IntMatrix::lit(&[&[0]])]).is_err());
    assert!(ChainHomotopy::zero(&f).check());
}

#[test]
fn cone_sequence_is_exact() {
    let k = times(4, -1);
    let l = Complex::concentrated(FpGroup::cyclic(2), 0);
    let u = ChainMap::new(&k, &l, 0, vec![IntMatrix::lit(&[&[1]])]).unwrap();
    let seq = cone_les(&u, -2, 1);
    assert!(seq.is_exact(), "{:?}", seq.exactness());
    // connecting map agrees with H(u)
    let mc = mapping_cone(&u);
    let delta = connecting_map(&mc.inclusion, &mc.projection, -1);
    assert!(delta.equals(&u.on_cohomology(0)) || delta.equals(&u.on_cohomology(0).neg()));
}
