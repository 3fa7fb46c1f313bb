//! Seeded random generators for groups, complexes and extension data.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{direct_sum, ChainHomotopy, ChainMap, Complex};
use crate::derived::{DerivedClass, ExtGroup, HomComplex};
use crate::extensions::{realize_psi, Extension};
use crate::fractions::Fraction;
use crate::zmodule::{FpGroup, Int, IntMatrix};

/// A random unimodular `n x n` matrix and its inverse.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n == 0 {
        return (u, inv);
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 if i != j => {
                u.swap_rows(i, j);
                inv.swap_cols(i, j);
            }
            1 => {
                u.negate_row(i);
                inv.negate_col(i);
            }
            _ if i != j => {
                let c = Int::from(rng.gen_range(-2i64..=2));
                u.add_row_multiple(i, j, &c);
                inv.add_col_multiple(j, i, &-&c);
            }
            _ => {}
        }
    }
    (u, inv)
}

/// A random matrix with entries in `[-bound, bound]`.
pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let vals: Vec<i64> = (0..rows * cols)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    IntMatrix::from_i64(rows, cols, &vals)
}

/// A finite group of order at most `max_order`, as a direct sum of cyclics.
pub fn random_finite_group<R: Rng>(rng: &mut R, max_order: u64) -> FpGroup {
    let mut ds = Vec::new();
    let mut left = max_order;
    for _ in 0..rng.gen_range(0..=2) {
        if left < 2 {
            break;
        }
        let m = rng.gen_range(2..=left.min(8));
        ds.push(m as i64);
        left /= m;
    }
    FpGroup::from_divisors(&ds)
}

/// A complex with cohomology `Z/m` in degree `n`, and nothing else.
fn elementary<R: Rng>(rng: &mut R, n: i32, m: i64) -> Complex {
    let g = FpGroup::cyclic(m);
    if n > -2 && rng.gen_bool(0.5) {
        let z = FpGroup::cyclic(0);
        return Complex::two_term(z.clone(), z, IntMatrix::lit(&[&[m]]), n - 1)
            .expect("free two-term");
    }
    Complex::concentrated(g, n)
}

/// An acyclic two-term complex `G -1-> G` in degrees `n - 1, n`.
fn contractible<R: Rng>(rng: &mut R, n: i32) -> Complex {
    let m = *[0i64, 0, 2, 3, 4].choose(rng).expect("nonempty");
    let g = FpGroup::cyclic(m);
    Complex::two_term(g.clone(), g, IntMatrix::lit(&[&[1]]), n - 1).expect("identity differential")
}

/// `K` transported along random degreewise base changes, with the
/// isomorphism `K -> K'` and its inverse.
pub fn base_change<R: Rng>(rng: &mut R, k: &Complex) -> (Complex, ChainMap, ChainMap) {
    if k.is_zero_complex() {
        return (k.clone(), ChainMap::identity(k), ChainMap::identity(k));
    }
    let (lo, hi) = (k.lo(), k.hi());
    let us: Vec<(IntMatrix, IntMatrix)> = (lo..=hi)
        .map(|n| random_unimodular(rng, k.rank(n), 6))
        .collect();
    let u = |n: i32| &us[(n - lo) as usize];
    let terms = (lo..=hi)
        .map(|n| {
            let g = k.term(n);
            FpGroup::new(g.n_gens(), g.relations().mul(&u(n).0.transpose())).expect("same rank")
        })
        .collect();
    let diffs = (lo..hi)
        .map(|n| u(n + 1).0.mul(&k.diff_matrix(n)).mul(&u(n).1))
        .collect();
    let k2 = Complex::new(lo, terms, diffs).expect("base change of a complex");
    let iso = ChainMap::build(k, &k2, |n| u(n).0.clone());
    let inv = ChainMap::build(&k2, k, |n| u(n).1.clone());
    (k2, iso, inv)
}

/// A length-3 complex whose cohomology groups are finite of total order at
/// most `max_order`, presented with contractible noise and a base change.
pub fn random_length3<R: Rng>(rng: &mut R, max_order: u64) -> Complex {
    let mut k = Complex::zero();
    let mut left = max_order;
    for _ in 0..rng.gen_range(1..=3) {
        if left < 2 {
            break;
        }
        let m = rng.gen_range(2..=left.min(6));
        left /= m;
        let n = rng.gen_range(-2..=0);
        let piece = elementary(rng, n, m as i64);
        k = direct_sum(&k, &piece).complex;
    }
    if rng.gen_bool(0.4) {
        let n = rng.gen_range(-1..=0);
        k = direct_sum(&k, &contractible(rng, n)).complex;
    }
    base_change(rng, &k).0
}

/// A quasi-isomorphic replacement `K' -> K` with `K'` again of length 3.
pub fn qis_replacement<R: Rng>(rng: &mut R, k: &Complex) -> (Complex, ChainMap) {
    let n = rng.gen_range(-1..=0);
    let c = contractible(rng, n);
    let s = direct_sum(k, &c);
    let (k2, _, inv) = base_change(rng, &s.complex);
    (k2, s.pr1.compose(&inv))
}

/// A random chain map `src -> dst`: a random degree-0 cocycle of the Hom
/// complex.
pub fn random_chain_map<R: Rng>(rng: &mut R, src: &Complex, dst: &Complex) -> ChainMap {
    let hom = HomComplex::new(src, dst);
    if hom.is_empty(0) {
        return ChainMap::zero(src, dst);
    }
    let (k, inc) = hom.complex().diff(0).kernel();
    let c: Vec<Int> = (0..k.n_gens())
        .map(|_| Int::from(rng.gen_range(-2i64..=2)))
        .collect();
    hom.decode_map(&inc.apply(&c))
}

/// A uniformly random class of `ext`.
pub fn random_class<R: Rng>(rng: &mut R, ext: &ExtGroup) -> DerivedClass {
    let coords: Vec<Int> = ext
        .divisors()
        .iter()
        .map(|d| {
            let m = d.to_i64().filter(|&m| m > 0).unwrap_or(7);
            Int::from(rng.gen_range(0..m))
        })
        .collect();
    ext.class(&coords)
}

/// `Ψ(x)` for a random `x`, with `E` replaced by a random presentation.
pub fn random_extension<R: Rng>(rng: &mut R, a: &Complex, b: &Complex) -> Extension {
    let ext = ExtGroup::new(a, b, 1);
    let x = random_class(rng, &ext);
    let e = realize_psi(&x).expect("degree-1 class");
    represent(rng, &e)
}

fn with_null(e: &Extension, c: &Int, i: &Fraction, pi: &ChainMap) -> ChainHomotopy {
    let null = e.null();
    let h =
        ChainHomotopy::build_unchecked(&ChainMap::zero(e.apex(), e.a()), &pi.compose(i.p()), |n| {
            null.matrix(n).scale(c)
        });
    assert!(h.check(), "rescaled null-homotopy");
    h
}

/// Same extension with `E` transported along a base change.
pub fn represent<R: Rng>(rng: &mut R, e: &Extension) -> Extension {
    let (e2, iso, inv) = base_change(rng, e.e());
    let i = Fraction::new(e.i().q().clone(), iso.compose(e.i().p())).expect("q unchanged");
    let pi = e.pi().compose(&inv);
    let null = with_null(e, &Int::one(), &i, &pi);
    Extension::new(e.a(), e.b(), &e2, i, pi, null).expect("isomorphic extension")
}

/// Candidate extension data, valid or deliberately broken.
pub fn mutate<R: Rng>(rng: &mut R, e: &Extension) -> Extension {
    let (a, b) = (e.a(), e.b());
    let scaled = |c: i64, on_pi: bool| {
        let c = Int::from(c);
        let (p, pi) = if on_pi {
            (e.i().p().clone(), e.pi().scale(&c))
        } else {
            (e.i().p().scale(&c), e.pi().clone())
        };
        let i = Fraction::new(e.i().q().clone(), p).expect("q unchanged");
        let null = with_null(e, &c, &i, &pi);
        Extension::new(a, b, e.e(), i, pi, null).expect("scaled candidate")
    };
    match rng.gen_range(0..5) {
        0 => e.clone(),
        1 => scaled(*[0i64, 2, 3, -1].choose(rng).expect("nonempty"), true),
        2 => scaled(*[0i64, 2, 3, -1].choose(rng).expect("nonempty"), false),
        3 => {
            let x = random_length3(rng, 8);
            let s = direct_sum(e.e(), &x);
            let i =
                Fraction::new(e.i().q().clone(), s.inj1.compose(e.i().p())).expect("q unchanged");
            let pi = e.pi().compose(&s.pr1);
            let null = with_null(e, &Int::one(), &i, &pi);
            Extension::new(a, b, &s.complex, i, pi, null).expect("padded candidate")
        }
        _ => represent(rng, e),
    }
}
