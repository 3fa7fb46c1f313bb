use super::*;
use crate::complex::{shift, ChainMap, Complex};
use crate::derived::{ext_group, free_resolution, ExtGroup};
use crate::fractions::Fraction;
use crate::zmodule::{FpGroup, Int, IntMatrix};

fn cyc(m: i64) -> Complex {
    Complex::concentrated(FpGroup::cyclic(m), 0)
}

fn map0(src: &Complex, dst: &Complex, m: &[&[i64]]) -> ChainMap {
    ChainMap::new(src, dst, 0, vec![IntMatrix::lit(m)]).unwrap()
}

fn zero_null_of(b: &Complex, a: &Complex, to: &ChainMap) -> ChainHomotopy {
    ChainHomotopy::build(&ChainMap::zero(b, a), to, |n| {
        IntMatrix::zeros(a.rank(n - 1), b.rank(n))
    })
}

/// `Z/2 -2-> Z/4 -> Z/2`.
fn z4() -> Extension {
    let (a, b, e) = (cyc(2), cyc(2), cyc(4));
    let i = map0(&b, &e, &[&[2]]);
    let pi = map0(&e, &a, &[&[1]]);
    let null = zero_null_of(&b, &a, &pi.compose(&i));
    Extension::new(&a, &b, &e, Fraction::from_map(&i), pi, null).unwrap()
}

/// `Z/2 -> Z/2 -0-> Z/2`, which fails exactness.
fn broken() -> Extension {
    let (a, b) = (cyc(2), cyc(2));
    let i = ChainMap::identity(&b);
    let pi = ChainMap::zero(&b, &a);
    let null = zero_null_of(&b, &a, &pi);
    Extension::new(&a, &b, &b, Fraction::from_map(&i), pi, null).unwrap()
}

fn coords(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn neutral_is_valid_and_trivial() {
    let e = neutral(&cyc(2), &cyc(2));
    assert!(e.validate().valid());
    assert!(classify_theta(&e).unwrap().is_zero());
    assert!(is_split(&e).unwrap().is_some());
}

#[test]
fn broken_fails_conditions() {
    let rep = broken().validate();
    assert!(!rep.cond_a);
    assert!(!rep.cond_b);
    assert!(classify_theta(&broken()).is_err());
}

#[test]
fn z4_is_nonsplit() {
    let e = z4();
    assert!(e.validate().valid());
    let (ra, rb) = theta_routes(&e).unwrap();
    assert_eq!(ra.coords(), rb.coords());
    let t = classify_theta(&e).unwrap();
    assert!(!t.is_zero());
    assert!(is_split(&e).unwrap().is_none());
}

#[test]
fn psi_round_trip() {
    let g = ext_group(&cyc(2), &cyc(2), 1);
    for x in g.elements().unwrap() {
        let e = realize_psi(&x).unwrap();
        assert!(e.validate().valid(), "{x}");
        assert_eq!(classify_theta(&e).unwrap().coords(), x.coords(), "{x}");
    }
    let g = ext_group(&cyc(4), &cyc(6), 1);
    for x in g.elements().unwrap() {
        let e = realize_psi(&x).unwrap();
        assert_eq!(classify_theta(&e).unwrap().coords(), x.coords(), "{x}");
    }
}

#[test]
fn psi_on_two_term_complexes() {
    let a = Complex::two_term(
        FpGroup::cyclic(0),
        FpGroup::cyclic(0),
        IntMatrix::lit(&[&[6]]),
        -1,
    )
    .unwrap();
    let b = shift(&cyc(4), 1);
    let g = ExtGroup::new(&a, &b, 1);
    for x in g.elements().unwrap() {
        let e = realize_psi(&x).unwrap();
        assert!(e.validate().valid(), "{x}");
        assert_eq!(classify_theta(&e).unwrap().coords(), x.coords(), "{x}");
    }
}

#[test]
fn baer_sum_adds() {
    let g = ext_group(&cyc(2), &cyc(2), 1);
    let xs = g.elements().unwrap();
    for x in &xs {
        for y in &xs {
            let s = baer_sum(&realize_psi(x).unwrap(), &realize_psi(y).unwrap()).unwrap();
            assert!(s.validate().valid());
            let t = classify_theta(&s).unwrap();
            let want = x.add(y);
            assert_eq!(t.coords(), want.coords());
        }
    }
    let s = baer_sum(&z4(), &z4()).unwrap();
    assert!(classify_theta(&s).unwrap().is_zero());
}

#[test]
fn pushdown_by_minus_one_negates() {
    let g = ext_group(&cyc(3), &cyc(3), 1);
    let x = g.class(&coords(&[1]));
    let e = realize_psi(&x).unwrap();
    let b = e.b().clone();
    let minus = Fraction::from_map(&ChainMap::identity(&b).neg());
    let f = pushdown_extension(&e, &minus).unwrap();
    assert!(f.validate().valid());
    assert_eq!(classify_theta(&f).unwrap().coords(), x.neg().coords());
    let p = pullback_extension(&e, &Fraction::from_map(&ChainMap::identity(e.a()).neg())).unwrap();
    assert_eq!(classify_theta(&p).unwrap().coords(), x.neg().coords());
}

#[test]
fn pullback_along_zero_splits() {
    let e = z4();
    let zero = Fraction::from_map(&ChainMap::zero(&cyc(2), e.a()));
    let p = pullback_extension(&e, &zero).unwrap();
    assert!(p.validate().valid());
    assert!(classify_theta(&p).unwrap().is_zero());
    let two = Fraction::from_map(&map0(&cyc(4), e.a(), &[&[1]]));
    let p = pullback_extension(&e, &two).unwrap();
    let ext = ext_group(&cyc(4), &cyc(2), 1);
    let post = ext_group(&cyc(2), &cyc(2), 1)
        .pre_compose_roof(&two, &ext)
        .unwrap();
    let th = classify_theta(&e).unwrap();
    let want = post.apply(
        &ext_group(&cyc(2), &cyc(2), 1)
            .group()
            .from_coords(th.coords()),
    );
    assert_eq!(
        classify_theta(&p).unwrap().coords(),
        ext.group().coords(&want)
    );
}

#[test]
fn witness_for_equal_classes() {
    let e = z4();
    let w = equivalence_witness(&e, &e).unwrap().expect("same class");
    assert!(w.validate().valid(), "{:?}", w.validate());
    let x = classify_theta(&e).unwrap();
    let f = realize_psi(&x).unwrap();
    let w = equivalence_witness(&e, &f).unwrap().expect("same class");
    assert!(w.validate().valid(), "{:?}", w.validate());
    assert!(equivalence_witness(&e, &neutral(&cyc(2), &cyc(2)))
        .unwrap()
        .is_none());
}

#[test]
fn long_exact_sequences() {
    for e in [z4(), neutral(&cyc(2), &cyc(2))] {
        assert!(les_homotopy(&e).unwrap().ok());
        let r = les_hom(&e, e.a()).unwrap();
        assert!(r.ok(), "{:?}", r.exact);
        assert!(!r.checks.is_empty());
        assert!(les_hom(&e, &cyc(0)).unwrap().ok());
    }
}

#[test]
fn roofs_round_trip() {
    let e = z4();
    let r = e.r();
    assert!(r.validate().valid());
    let f = Extension::from_roofs(e.i(), &e.j(), &r).unwrap();
    assert!(f.validate().valid());
    assert_eq!(
        classify_theta(&f).unwrap().coords(),
        classify_theta(&e).unwrap().coords()
    );
}

#[test]
fn split_section_is_a_section() {
    let e = neutral(&cyc(3), &cyc(0));
    let u = is_split(&e).unwrap().unwrap();
    let res = free_resolution(e.a());
    let to_a = ExtGroup::with_resolution(&res, e.a(), 0);
    let c = to_a
        .class_of_roof(&crate::fractions::compose(&e.j(), &u).unwrap())
        .unwrap();
    let id = to_a.class_of_roof(&Fraction::identity(e.a())).unwrap();
    assert_eq!(c.coords(), id.coords());
}

/// `Z/3 -3-> Z/9 -> Z/3`.
fn z9() -> Extension {
    let (a, b, e) = (cyc(3), cyc(3), cyc(9));
    let i = map0(&b, &e, &[&[3]]);
    let pi = map0(&e, &a, &[&[1]]);
    let null = zero_null_of(&b, &a, &pi.compose(&i));
    Extension::new(&a, &b, &e, Fraction::from_map(&i), pi, null).unwrap()
}

#[test]
fn odd_order_classes() {
    let g = ext_group(&cyc(3), &cyc(3), 1);
    for x in g.elements().unwrap() {
        let e = realize_psi(&x).unwrap();
        let (ra, rb) = theta_routes(&e).unwrap();
        assert_eq!(ra.coords(), x.coords());
        assert_eq!(rb.coords(), x.coords());
    }
    let t = classify_theta(&z9()).unwrap();
    assert!(!t.is_zero());
    let e = realize_psi(&t).unwrap();
    let w = equivalence_witness(&z9(), &e).unwrap().expect("same class");
    assert!(w.validate().valid());
    assert!(equivalence_witness(&z9(), &realize_psi(&t.neg()).unwrap())
        .unwrap()
        .is_none());
}

#[test]
fn baer_sum_on_z3() {
    let g = ext_group(&cyc(3), &cyc(3), 1);
    let xs = g.elements().unwrap();
    for x in &xs {
        for y in &xs {
            let s = baer_sum(&realize_psi(x).unwrap(), &realize_psi(y).unwrap()).unwrap();
            assert_eq!(classify_theta(&s).unwrap().coords(), x.add(y).coords());
        }
    }
    let s = baer_sum(&z9(), &z9()).unwrap();
    assert_eq!(
        classify_theta(&s).unwrap().coords(),
        classify_theta(&z9())
            .unwrap()
            .add(&classify_theta(&z9()).unwrap())
            .coords()
    );
}

#[test]
fn psi_from_another_resolution() {
    use rand::SeedableRng;
    let a = cyc(3);
    let res = free_resolution(&a).variant(&mut rand_chacha::ChaCha8Rng::seed_from_u64(3));
    let g = ExtGroup::with_resolution(&res, &cyc(9), 1);
    for x in g.elements().unwrap() {
        let e = realize_psi(&x).unwrap();
        assert!(e.validate().valid());
        let t = classify_theta(&e).unwrap();
        assert!(t.transport(x.ext()).same_class(&x));
    }
}

#[test]
fn les_on_odd_extension() {
    let e = z9();
    assert!(les_homotopy(&e).unwrap().ok());
    assert!(les_hom(&e, e.a()).unwrap().ok());
}
