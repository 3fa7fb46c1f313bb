use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::complex::{ChainMap, Complex};
use crate::fractions::{compose, zero_fraction, Fraction};
use crate::zmodule::{FpGroup, Int, IntMatrix};

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn cyc(m: i64) -> Complex {
    Complex::concentrated(FpGroup::cyclic(m), 0)
}

#[test]
fn resolution_of_z_is_itself() {
    let z = cyc(0);
    let r = free_resolution(&z);
    assert_eq!(r.p, z);
    assert!(r.eps.equals(&ChainMap::identity(&z)));
}

#[test]
fn resolution_of_z2() {
    let r = free_resolution(&cyc(2));
    assert!(r.p.is_free());
    assert_eq!((r.p.lo(), r.p.hi()), (-1, 0));
    assert_eq!(r.p.diff_matrix(-1), IntMatrix::lit(&[&[2]]));
    assert!(r.eps.is_quasi_iso());
}

#[test]
fn resolution_of_acyclic() {
    let a = Complex::two_term(
        FpGroup::cyclic(3),
        FpGroup::cyclic(3),
        IntMatrix::lit(&[&[1]]),
        -1,
    )
    .unwrap();
    let r = free_resolution(&a);
    assert!(r.p.is_acyclic());
    assert!(r.eps.is_quasi_iso());
}

#[test]
fn variant_is_a_resolution() {
    let a = Complex::two_term(
        FpGroup::cyclic(4),
        FpGroup::from_divisors(&[2, 8]),
        IntMatrix::lit(&[&[1], &[2]]),
        -1,
    )
    .unwrap();
    let r = free_resolution(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let v = r.variant(&mut rng);
        assert!(v.p.is_free());
        assert!(v.eps.is_quasi_iso());
    }
}

#[test]
fn hom_complex_examples() {
    let z = cyc(0);
    let b = Complex::two_term(
        FpGroup::cyclic(0),
        FpGroup::cyclic(6),
        IntMatrix::lit(&[&[2]]),
        -1,
    )
    .unwrap();
    let h = hom_complex(&z, &b);
    assert_eq!(h.cohomology_profile(), b.cohomology_profile());

    let p = free_resolution(&cyc(2)).p;
    let h = hom_complex(&p, &cyc(2));
    assert_eq!(h.cohomology(0).group.elementary_divisors(), ints(&[2]));
    assert_eq!(h.cohomology(1).group.elementary_divisors(), ints(&[2]));

    assert!(hom_complex(&p, &Complex::zero()).is_zero_complex());
}

#[test]
fn ext_examples() {
    assert_eq!(ext_group(&cyc(2), &cyc(2), 1).divisors(), ints(&[2]));
    assert_eq!(ext_group(&cyc(0), &cyc(6), 0).divisors(), ints(&[6]));
    assert!(ext_group(&cyc(2), &cyc(2), 4).is_trivial());
    assert_eq!(ext_group(&cyc(4), &cyc(6), 1).divisors(), ints(&[2]));
    assert_eq!(ext_group(&cyc(3), &cyc(0), 1).divisors(), ints(&[3]));
    assert!(ext_group(&cyc(0), &cyc(5), 1).is_trivial());
}

#[test]
fn roof_classes() {
    let a = cyc(4);
    let id = class_of_roof(&Fraction::identity(&a));
    assert_eq!(id.coords().len(), 1);
    assert!(!id.is_zero());
    let twice = id.add(&id);
    let two = class_of_roof(&Fraction::from_map(
        &ChainMap::identity(&a).scale(&Int::from(2)),
    ));
    assert!(twice.same_class(&two));
    assert!(class_of_roof(&zero_fraction(&a, &a)).is_zero());
    let back = class_of_roof(&roof_of_class(&two));
    assert!(back.same_class(&two));
}

#[test]
fn composition_is_functorial() {
    let a = cyc(4);
    let two = Fraction::from_map(&ChainMap::identity(&a).scale(&Int::from(2)));
    let four = compose(&two, &two).unwrap();
    assert!(class_of_roof(&four).is_zero());
    let c = class_of_roof(&two);
    assert!(compose_classes(&c, &c).unwrap().is_zero());
}

#[test]
fn homotopic_on_resolution() {
    let r = free_resolution(&cyc(2));
    let b = cyc(2);
    let zero = ChainMap::zero(&r.p, &b);
    assert!(homotopic(&zero, &zero).is_some());
    let e = ext_group(&cyc(2), &b, 0);
    let g = &e.generators()[0];
    assert!(homotopic(g.cocycle(), &e.zero().cocycle().clone()).is_none());
    let twice = g.cocycle().scale(&Int::from(2));
    let h = homotopic(&twice, &zero).unwrap();
    assert!(h.check());
}

#[test]
fn lift_identity_and_zero() {
    let r = free_resolution(&cyc(6));
    let id = ChainMap::identity(&r.of);
    let (s, h) = lift_through_qis(&r.eps, &id).unwrap();
    assert!(s.equals(&r.eps));
    assert!(h.check());
    let (s, _) = lift_through_qis(&ChainMap::zero(&r.p, &r.of), &r.eps).unwrap();
    assert!(homotopic(&s, &ChainMap::zero(&r.p, &r.p)).is_some());
}

#[test]
fn class_transport_between_resolutions() {
    let a = Complex::two_term(
        FpGroup::cyclic(0),
        FpGroup::cyclic(0),
        IntMatrix::lit(&[&[6]]),
        -1,
    )
    .unwrap();
    let b = cyc(4);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let e1 = ext_group(&a, &b, 1);
    let e2 = ExtGroup::with_resolution(&e1.resolution().variant(&mut rng), &b, 1);
    assert_eq!(e1.divisors(), e2.divisors());
    for x in e1.elements().unwrap() {
        let y = x.transport(&e2);
        assert!(y.transport(&e1).coords() == x.coords());
    }
}
