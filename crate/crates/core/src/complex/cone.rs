use super::{shift, ChainHomotopy, ChainMap, Complex};
use crate::zmodule::{Int, IntMatrix};

pub(crate) fn sign(n: i32) -> Int {
    if n.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// `MC(u)` with the inclusion of the target and the projection to `src[1]`.
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub complex: Complex,
    /// `dst -> MC(u)`, `y ↦ (0, (-1)^{n+1} y)`.
    pub inclusion: ChainMap,
    /// `MC(u) -> src[1]`, `(x, y) ↦ (-1)^n x`.
    pub projection: ChainMap,
}

fn span(lo_a: i32, hi_a: i32, a_zero: bool, lo_b: i32, hi_b: i32, b_zero: bool) -> (i32, i32) {
    match (a_zero, b_zero) {
        (true, true) => (0, -1),
        (true, false) => (lo_b, hi_b),
        (false, true) => (lo_a, hi_a),
        (false, false) => (lo_a.min(lo_b), hi_a.max(hi_b)),
    }
}

/// `MC(u)^n = src^{n+1} ⊕ dst^n`, `d(x, y) = (d x, u(x) - d y)`.
pub fn mapping_cone(u: &ChainMap) -> MappingCone {
    let (s, t) = (u.src(), u.dst());
    let (lo, hi) = span(
        s.lo() - 1,
        s.hi() - 1,
        s.is_zero_complex(),
        t.lo(),
        t.hi(),
        t.is_zero_complex(),
    );
    let mc = Complex::build_fn(
        lo,
        hi,
        |n| s.term(n + 1).direct_sum(&t.term(n)),
        |n| {
            IntMatrix::blocks(
                &[s.rank(n + 2), t.rank(n + 1)],
                &[s.rank(n + 1), t.rank(n)],
                |i, j| match (i, j) {
                    (0, 0) => Some(s.diff_matrix(n + 1)),
                    (1, 0) => Some(u.matrix(n + 1)),
                    (1, 1) => Some(t.diff_matrix(n).neg()),
                    _ => None,
                },
            )
        },
    );
    let inclusion = ChainMap::build(t, &mc, |n| {
        IntMatrix::zeros(s.rank(n + 1), t.rank(n))
            .vstack(&IntMatrix::identity(t.rank(n)).scale(&sign(n + 1)))
    });
    let s1 = shift(s, 1);
    let projection = ChainMap::build(&mc, &s1, |n| {
        IntMatrix::identity(s.rank(n + 1))
            .scale(&sign(n))
            .hstack(&IntMatrix::zeros(s.rank(n + 1), t.rank(n)))
    });
    MappingCone {
        complex: mc,
        inclusion,
        projection,
    }
}

/// The cocone of `u` with its projection to the source and the homotopy
/// `0 => u∘pr`, `h(x, p) = p`.
#[derive(Clone, Debug)]
pub struct Cocone {
    pub complex: Complex,
    pub projection: ChainMap,
    pub homotopy: ChainHomotopy,
}

/// `cocone(u)^n = src^n ⊕ dst^{n-1}`, `d(x, p) = (d x, u(x) - d p)`.
pub fn cocone(u: &ChainMap) -> Cocone {
    let (s, t) = (u.src(), u.dst());
    let (lo, hi) = span(
        s.lo(),
        s.hi(),
        s.is_zero_complex(),
        t.lo() + 1,
        t.hi() + 1,
        t.is_zero_complex(),
    );
    let c = Complex::build_fn(
        lo,
        hi,
        |n| s.term(n).direct_sum(&t.term(n - 1)),
        |n| {
            IntMatrix::blocks(
                &[s.rank(n + 1), t.rank(n)],
                &[s.rank(n), t.rank(n - 1)],
                |i, j| match (i, j) {
                    (0, 0) => Some(s.diff_matrix(n)),
                    (1, 0) => Some(u.matrix(n)),
                    (1, 1) => Some(t.diff_matrix(n - 1).neg()),
                    _ => None,
                },
            )
        },
    );
    let projection = ChainMap::build(&c, s, |n| {
        IntMatrix::identity(s.rank(n)).hstack(&IntMatrix::zeros(s.rank(n), t.rank(n - 1)))
    });
    let up = u.compose(&projection);
    let zero = ChainMap::zero(&c, t);
    let homotopy = ChainHomotopy::build(&zero, &up, |n| {
        IntMatrix::zeros(t.rank(n - 1), s.rank(n)).hstack(&IntMatrix::identity(t.rank(n - 1)))
    });
    Cocone {
        complex: c,
        projection,
        homotopy,
    }
}

/// The isomorphism `cocone(u) -> MC(u)[-1]`, `(-1)^n` in degree `n`, and its
/// inverse.
pub fn cocone_to_shifted_cone(u: &ChainMap) -> (ChainMap, ChainMap) {
    let c = cocone(u).complex;
    let m = shift(&mapping_cone(u).complex, -1);
    let fwd = ChainMap::build(&c, &m, |n| IntMatrix::identity(c.rank(n)).scale(&sign(n)));
    let bwd = ChainMap::build(&m, &c, |n| IntMatrix::identity(c.rank(n)).scale(&sign(n)));
    (fwd, bwd)
}
