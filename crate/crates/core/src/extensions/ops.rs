use super::{checked_map, corestrict, descend, sign, Extension};
use crate::complex::{
    codiagonal, diagonal, direct_sum, direct_sum_maps, truncate_ge_good, truncate_le_good,
    ChainHomotopy, ChainMap, Complex,
};
use crate::error::{bail, Result};
use crate::fractions::{homotopy_fibered_product, homotopy_fibered_sum, Fraction};
use crate::zmodule::IntMatrix;

fn zero_null(m: &Complex, a: &Complex, to: &ChainMap) -> ChainHomotopy {
    ChainHomotopy::build(&ChainMap::zero(m, a), to, |n| {
        IntMatrix::zeros(a.rank(n - 1), m.rank(n))
    })
}

/// Same roof with its apex cut down to degrees `<= 0`.
fn apex_le0(f: &Fraction) -> Fraction {
    let m = f.apex();
    if m.is_zero_complex() || m.hi() <= 0 {
        return f.clone();
    }
    let (_, inc) = truncate_le_good(m, 0);
    Fraction::new_unchecked(f.q().compose(&inc), f.p().compose(&inc))
}

/// `B -> A ⊕ B -> A`.
pub fn neutral(a: &Complex, b: &Complex) -> Extension {
    let s = direct_sum(a, b);
    let i = Fraction::from_map(&s.inj2);
    let pi = s.pr1.clone();
    let null = zero_null(b, a, &pi.compose(i.p()));
    Extension::new_unchecked(a, b, &s.complex, i, pi, null)
}

/// The extension of `A1 ⊕ A2` by `B1 ⊕ B2`.
pub fn direct_sum_extension(e1: &Extension, e2: &Extension) -> Extension {
    let sa = direct_sum(e1.a(), e2.a());
    let sb = direct_sum(e1.b(), e2.b());
    let se = direct_sum(e1.e(), e2.e());
    let sm = direct_sum(e1.apex(), e2.apex());
    let q = direct_sum_maps(e1.i().q(), e2.i().q(), &sm, &sb);
    let p = direct_sum_maps(e1.i().p(), e2.i().p(), &sm, &se);
    let pi = direct_sum_maps(e1.pi(), e2.pi(), &se, &sa);
    let pp = pi.compose(&p);
    let (h1, h2) = (e1.null(), e2.null());
    let null = ChainHomotopy::build(&ChainMap::zero(&sm.complex, &sa.complex), &pp, |n| {
        IntMatrix::block_diag(&h1.matrix(n), &h2.matrix(n))
    });
    Extension::new_unchecked(
        &sa.complex,
        &sb.complex,
        &se.complex,
        Fraction::new_unchecked(q, p),
        pi,
        null,
    )
}

/// `G^* e` for a roof `G: A' -> A`: `E' = τ≥-2 (E ×_A N)`, with `i'` given
/// by `m ↦ ((p m, 0), H m)` and `j'` the projection to `N` followed by `q_G`.
pub fn pullback_extension(e: &Extension, g: &Fraction) -> Result<Extension> {
    if g.dst() != e.a() {
        bail!(Mismatch, "pull-back roof must end at A");
    }
    let g = apex_le0(g);
    let fp = homotopy_fibered_product(e.pi(), g.p(), 0);
    let m = e.apex();
    let (p, h) = (e.i().p(), e.null());
    let n_apex = g.apex();
    let raw = checked_map(m, &fp.cocone.complex, |n| {
        p.matrix(n)
            .vstack(&IntMatrix::zeros(n_apex.rank(n), m.rank(n)))
            .vstack(&h.matrix(n))
    })?;
    let f = corestrict(&raw, &fp.truncation)?;
    let (e2, t) = truncate_ge_good(&fp.complex, -2);
    let i2 = Fraction::new_unchecked(e.i().q().clone(), t.compose(&f));
    let pi2 = descend(&g.q().compose(&fp.pr_b), &e2)?;
    let null = zero_null(m, g.src(), &pi2.compose(i2.p()));
    Extension::new(g.src(), e.b(), &e2, i2, pi2, null)
}

/// `F_* e` for a roof `F: B -> B'`: `E' = τ≥-2 MC(p∘a - p_F∘b)` over
/// `W = M ×_B N`, with `π'(w, x, y) = (-1)^n H(a w) + (-1)^{n+1} π(x)`.
pub fn pushdown_extension(e: &Extension, f: &Fraction) -> Result<Extension> {
    if f.src() != e.b() {
        bail!(Mismatch, "push-down roof must start at B");
    }
    let f = apex_le0(f);
    let a = e.a();
    let base = homotopy_fibered_product(e.i().q(), f.q(), 0);
    let pa = e.i().p().compose(&base.pr_a);
    let fb = f.p().compose(&base.pr_b);
    let fs = homotopy_fibered_sum(&pa, &fb, -2);
    let h = e.null().pre_compose(&base.pr_a);
    let pi = e.pi();
    let b2 = f.dst();
    let raw = checked_map(&fs.cone.complex, a, |n| {
        h.matrix(n + 1)
            .scale(&sign(n))
            .hstack(&pi.matrix(n).scale(&sign(n + 1)))
            .hstack(&IntMatrix::zeros(a.rank(n), b2.rank(n)))
    })?;
    let pi2 = descend(&raw, &fs.complex)?;
    let i2 = Fraction::from_map(&fs.inc_b);
    let null = zero_null(b2, a, &pi2.compose(i2.p()));
    Extension::new(a, b2, &fs.complex, i2, pi2, null)
}

/// `Δ_A^* (∇_B)_* (e1 ⊕ e2)`.
pub fn baer_sum(e1: &Extension, e2: &Extension) -> Result<Extension> {
    if e1.a() != e2.a() || e1.b() != e2.b() {
        bail!(
            Mismatch,
            "Baer sum needs two extensions of the same A by the same B"
        );
    }
    let s = direct_sum_extension(e1, e2);
    let (_, nabla) = codiagonal(e1.b());
    let pushed = pushdown_extension(&s, &Fraction::from_map(&nabla))?;
    let (_, delta) = diagonal(e1.a());
    pullback_extension(&pushed, &Fraction::from_map(&delta))
}
