use super::{ChainHomotopy, ChainMap, Complex};
use crate::zmodule::{ColumnEchelon, FpGroup, Int, IntMatrix};

fn sign(i: i32) -> Int {
    if i.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// `(K[i])^n = K^{n+i}` with differential `(-1)^i d`.
pub fn shift(k: &Complex, i: i32) -> Complex {
    if k.is_zero_complex() {
        return k.clone();
    }
    let s = sign(i);
    let terms = (k.lo()..=k.hi()).map(|n| k.term(n)).collect();
    let diffs = (k.lo()..k.hi())
        .map(|n| k.diff_matrix(n).scale(&s))
        .collect();
    Complex::raw(k.lo() - i, terms, diffs)
}

/// `f[i]^n = f^{n+i}`.
pub fn shift_map(f: &ChainMap, i: i32) -> ChainMap {
    let (s, d) = (shift(f.src(), i), shift(f.dst(), i));
    ChainMap::build_unchecked(&s, &d, |n| f.matrix(n + i))
}

/// `h[i]^n = (-1)^i h^{n+i}`, a homotopy between the shifted maps.
pub fn shift_homotopy(h: &ChainHomotopy, i: i32) -> ChainHomotopy {
    let s = sign(i);
    let (from, to) = (shift_map(h.from(), i), shift_map(h.to(), i));
    ChainHomotopy::build_unchecked(&from, &to, |n| h.matrix(n + i).scale(&s))
}

/// Good truncation `τ≤n K` and the inclusion `τ≤n K -> K`.
pub fn truncate_le_good(k: &Complex, n: i32) -> (Complex, ChainMap) {
    if k.is_zero_complex() || n >= k.hi() {
        return (k.clone(), ChainMap::identity(k));
    }
    if n < k.lo() {
        let z = Complex::zero();
        return (z.clone(), ChainMap::zero(&z, k));
    }
    let (z, inc) = k.diff(n).kernel();
    let basis = inc.matrix().clone();
    let e = ColumnEchelon::new(&basis);
    let lo = k.lo();
    let mut terms: Vec<FpGroup> = (lo..n).map(|d| k.term(d)).collect();
    terms.push(z);
    let mut diffs: Vec<IntMatrix> = (lo..n - 1).map(|d| k.diff_matrix(d)).collect();
    if n > lo {
        let prev = k.diff_matrix(n - 1);
        let cols: Vec<Vec<Int>> = prev
            .columns()
            .iter()
            .map(|c| e.coordinates(c).expect("boundaries lie in the kernel"))
            .collect();
        diffs.push(IntMatrix::from_columns(&cols, basis.cols()));
    }
    let t = Complex::build(lo, terms, diffs);
    let map = ChainMap::build(&t, k, |d| {
        if d < n {
            IntMatrix::identity(k.rank(d))
        } else if d == n {
            basis.clone()
        } else {
            IntMatrix::zeros(k.rank(d), 0)
        }
    });
    (t, map)
}

/// Bad truncation `σ≤n K` (terms above `n` dropped) and the projection
/// `K -> σ≤n K`.
pub fn truncate_le_bad(k: &Complex, n: i32) -> (Complex, ChainMap) {
    if k.is_zero_complex() || n >= k.hi() {
        return (k.clone(), ChainMap::identity(k));
    }
    let lo = k.lo();
    let terms = (lo..=n).map(|d| k.term(d)).collect();
    let diffs = (lo..n).map(|d| k.diff_matrix(d)).collect();
    let t = Complex::build(lo, terms, diffs);
    let map = ChainMap::build(k, &t, |d| {
        if d <= n {
            IntMatrix::identity(k.rank(d))
        } else {
            IntMatrix::zeros(0, k.rank(d))
        }
    });
    (t, map)
}

/// Bad truncation `σ≥n K` (terms below `n` dropped) and the inclusion
/// `σ≥n K -> K`.
pub fn truncate_ge_bad(k: &Complex, n: i32) -> (Complex, ChainMap) {
    if k.is_zero_complex() || n <= k.lo() {
        return (k.clone(), ChainMap::identity(k));
    }
    if n > k.hi() {
        let z = Complex::zero();
        return (z.clone(), ChainMap::zero(&z, k));
    }
    let hi = k.hi();
    let terms = (n..=hi).map(|d| k.term(d)).collect();
    let diffs = (n..hi).map(|d| k.diff_matrix(d)).collect();
    let t = Complex::build(n, terms, diffs);
    let map = ChainMap::build(&t, k, |d| {
        if d >= n {
            IntMatrix::identity(k.rank(d))
        } else {
            IntMatrix::zeros(k.rank(d), 0)
        }
    });
    (t, map)
}

/// Good truncation `τ≥n K` (degree `n` replaced by the cokernel of
/// `d^{n-1}`) and the projection `K -> τ≥n K`.
pub fn truncate_ge_good(k: &Complex, n: i32) -> (Complex, ChainMap) {
    if k.is_zero_complex() || n <= k.lo() {
        return (k.clone(), ChainMap::identity(k));
    }
    if n > k.hi() {
        let z = Complex::zero();
        return (z.clone(), ChainMap::zero(k, &z));
    }
    let (c, _) = k.diff(n - 1).cokernel();
    let hi = k.hi();
    let mut terms = vec![c];
    terms.extend((n + 1..=hi).map(|d| k.term(d)));
    let diffs = (n..hi).map(|d| k.diff_matrix(d)).collect();
    let t = Complex::build(n, terms, diffs);
    let map = ChainMap::build(k, &t, |d| {
        if d >= n {
            IntMatrix::identity(k.rank(d))
        } else {
            IntMatrix::zeros(0, k.rank(d))
        }
    });
    (t, map)
}

/// `K ⊕ L` with its injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub complex: Complex,
    pub inj1: ChainMap,
    pub inj2: ChainMap,
    pub pr1: ChainMap,
    pub pr2: ChainMap,
}

pub fn direct_sum(k: &Complex, l: &Complex) -> DirectSum {
    let (a, b) = super::joint_range(k, l);
    let s = Complex::build_fn(
        a,
        b,
        |n| k.term(n).direct_sum(&l.term(n)),
        |n| IntMatrix::block_diag(&k.diff_matrix(n), &l.diff_matrix(n)),
    );
    let inj1 = ChainMap::build_unchecked(k, &s, |n| {
        IntMatrix::identity(k.rank(n)).vstack(&IntMatrix::zeros(l.rank(n), k.rank(n)))
    });
    let inj2 = ChainMap::build_unchecked(l, &s, |n| {
        IntMatrix::zeros(k.rank(n), l.rank(n)).vstack(&IntMatrix::identity(l.rank(n)))
    });
    let pr1 = ChainMap::build_unchecked(&s, k, |n| {
        IntMatrix::identity(k.rank(n)).hstack(&IntMatrix::zeros(k.rank(n), l.rank(n)))
    });
    let pr2 = ChainMap::build_unchecked(&s, l, |n| {
        IntMatrix::zeros(l.rank(n), k.rank(n)).hstack(&IntMatrix::identity(l.rank(n)))
    });
    DirectSum {
        complex: s,
        inj1,
        inj2,
        pr1,
        pr2,
    }
}

/// `f ⊕ g : K ⊕ L -> K' ⊕ L'` between given sums.
pub fn direct_sum_maps(f: &ChainMap, g: &ChainMap, src: &DirectSum, dst: &DirectSum) -> ChainMap {
    ChainMap::build_unchecked(&src.complex, &dst.complex, |n| {
        IntMatrix::block_diag(&f.matrix(n), &g.matrix(n))
    })
}

/// `K -> K ⊕ K`, `x ↦ (x, x)`, together with the sum it lands in.
pub fn diagonal(k: &Complex) -> (DirectSum, ChainMap) {
    let s = direct_sum(k, k);
    let m = ChainMap::build_unchecked(k, &s.complex, |n| {
        let i = IntMatrix::identity(k.rank(n));
        i.vstack(&i)
    });
    (s, m)
}

/// `K ⊕ K -> K`, `(x, y) ↦ x + y`.
pub fn codiagonal(k: &Complex) -> (DirectSum, ChainMap) {
    let s = direct_sum(k, k);
    let m = ChainMap::build_unchecked(&s.complex, k, |n| {
        let i = IntMatrix::identity(k.rank(n));
        i.hstack(&i)
    });
    (s, m)
}
