use super::Fraction;
use crate::complex::{
    cocone, connecting_map, direct_sum, mapping_cone, shift, truncate_ge_good, truncate_le_good,
    ChainHomotopy, ChainMap, Cocone, Complex, DirectSum, LongExactSequence, MappingCone,
};
use crate::zmodule::{ColumnEchelon, Int, IntMatrix};

pub(crate) fn default_top(a: &Complex, b: &Complex) -> i32 {
    0.max(a.hi()).max(b.hi())
}

pub(crate) fn default_bottom(a: &Complex, b: &Complex) -> i32 {
    let lo = |c: &Complex| if c.is_zero_complex() { 0 } else { c.lo() };
    (-2).min(lo(a)).min(lo(b))
}

fn sign(n: i32) -> Int {
    if n.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

/// `τ≤top cocone(f∘pr_A - g∘pr_B)` for `f: A -> P`, `g: B -> P`.
#[derive(Clone, Debug)]
pub struct FiberedProduct {
    pub complex: Complex,
    pub pr_a: ChainMap,
    pub pr_b: ChainMap,
    /// `f∘pr_a => g∘pr_b`.
    pub homotopy: ChainHomotopy,
    pub sum: DirectSum,
    pub u: ChainMap,
    pub cocone: Cocone,
    /// `complex -> cocone.complex`.
    pub truncation: ChainMap,
}

pub fn homotopy_fibered_product(f: &ChainMap, g: &ChainMap, top: i32) -> FiberedProduct {
    let (a, b) = (f.src(), g.src());
    let sum = direct_sum(a, b);
    let u = f.compose(&sum.pr1).sub(&g.compose(&sum.pr2));
    let co = cocone(&u);
    let (x, tinc) = truncate_le_good(&co.complex, top);
    let pr = co.projection.compose(&tinc);
    let pr_a = sum.pr1.compose(&pr);
    let pr_b = sum.pr2.compose(&pr);
    let fa = f.compose(&pr_a);
    let gb = g.compose(&pr_b);
    let h = co.homotopy.pre_compose(&tinc);
    let homotopy = ChainHomotopy::build(&gb, &fa, |n| h.matrix(n)).neg();
    FiberedProduct {
        complex: x,
        pr_a,
        pr_b,
        homotopy,
        sum,
        u,
        cocone: co,
        truncation: tinc,
    }
}

/// `A ×_P B = τ≤0 cocone(f - g)`.
pub fn fibered_product_complexes(f: &ChainMap, g: &ChainMap) -> FiberedProduct {
    homotopy_fibered_product(f, g, default_top(f.src(), g.src()))
}

/// `τ≥bottom MC(inj_A∘f - inj_B∘g)` for `f: P -> A`, `g: P -> B`.
#[derive(Clone, Debug)]
pub struct FiberedSum {
    pub complex: Complex,
    pub inc_a: ChainMap,
    pub inc_b: ChainMap,
    /// `inc_a∘f => inc_b∘g`.
    pub homotopy: ChainHomotopy,
    pub sum: DirectSum,
    pub u: ChainMap,
    pub cone: MappingCone,
    /// `cone.complex -> complex`.
    pub truncation: ChainMap,
}

pub fn homotopy_fibered_sum(f: &ChainMap, g: &ChainMap, bottom: i32) -> FiberedSum {
    let (p, a, b) = (f.src(), f.dst(), g.dst());
    let sum = direct_sum(a, b);
    let u = sum.inj1.compose(f).sub(&sum.inj2.compose(g));
    let mc = mapping_cone(&u);
    let (y, tproj) = truncate_ge_good(&mc.complex, bottom);
    let inc = tproj.compose(&mc.inclusion);
    let inc_a = inc.compose(&sum.inj1);
    let inc_b = inc.compose(&sum.inj2);
    let fa = inc_a.compose(f);
    let gb = inc_b.compose(g);
    // h(x) = ((-1)^{n+1} x, 0) is a homotopy 0 => inclusion∘u on the cone
    let homotopy = ChainHomotopy::build(&gb, &fa, |n| {
        let h = IntMatrix::identity(p.rank(n))
            .scale(&sign(n + 1))
            .vstack(&IntMatrix::zeros(a.rank(n - 1) + b.rank(n - 1), p.rank(n)));
        tproj.matrix(n - 1).mul(&h)
    })
    .neg();
    FiberedSum {
        complex: y,
        inc_a,
        inc_b,
        homotopy,
        sum,
        u,
        cone: mc,
        truncation: tproj,
    }
}

/// `A +^P B = τ≥-2 MC(f - g)`.
pub fn fibered_sum_complexes(f: &ChainMap, g: &ChainMap) -> FiberedSum {
    homotopy_fibered_sum(f, g, default_bottom(f.dst(), g.dst()))
}

/// Fibered product of two fractions over their common target.
#[derive(Clone, Debug)]
pub struct FractionProduct {
    pub product: FiberedProduct,
    /// `f.q∘pr_M`, a chain map to the source of `f`.
    pub leg_a: ChainMap,
    /// `g.q∘pr_N`.
    pub leg_b: ChainMap,
}

pub fn fibered_product_fractions(f: &Fraction, g: &Fraction) -> FractionProduct {
    let product = fibered_product_complexes(f.p(), g.p());
    let leg_a = f.q().compose(&product.pr_a);
    let leg_b = g.q().compose(&product.pr_b);
    FractionProduct {
        product,
        leg_a,
        leg_b,
    }
}

/// Fibered sum of two fractions under their common source.
#[derive(Clone, Debug)]
pub struct FractionSum {
    /// `M ×_P N` over the two left legs.
    pub base: FiberedProduct,
    pub sum: FiberedSum,
}

pub fn fibered_sum_fractions(f: &Fraction, g: &Fraction) -> FractionSum {
    let base = fibered_product_complexes(f.q(), g.q());
    let sum = fibered_sum_complexes(&f.p().compose(&base.pr_a), &g.p().compose(&base.pr_b));
    FractionSum { base, sum }
}

/// `τ≤0 cocone(p_f)` and its projection to the apex.
pub fn homotopy_kernel(f: &Fraction) -> (Complex, ChainMap) {
    let co = cocone(f.p());
    let (k, inc) = truncate_le_good(&co.complex, default_top(f.apex(), f.apex()));
    let pr = co.projection.compose(&inc);
    (k, pr)
}

/// `τ≥-2 MC(p_f)` and the map from the target.
pub fn homotopy_cokernel(f: &Fraction) -> (Complex, ChainMap) {
    let mc = mapping_cone(f.p());
    let (c, proj) = truncate_ge_good(&mc.complex, default_bottom(f.dst(), f.dst()));
    let inc = proj.compose(&mc.inclusion);
    (c, inc)
}

/// Degreewise kernel of a chain map, with its inclusion.
pub fn degreewise_kernel(u: &ChainMap) -> (Complex, ChainMap) {
    let s = u.src();
    if s.is_zero_complex() {
        let z = Complex::zero();
        return (z.clone(), ChainMap::zero(&z, s));
    }
    let (lo, hi) = (s.lo(), s.hi());
    let parts: Vec<_> = (lo..=hi).map(|n| u.component(n).kernel()).collect();
    let bases: Vec<IntMatrix> = parts.iter().map(|(_, inc)| inc.matrix().clone()).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let k = (n - lo) as usize;
            let e = ColumnEchelon::new(&bases[k + 1]);
            let img = s.diff_matrix(n).mul(&bases[k]);
            let cols: Vec<Vec<Int>> = img
                .columns()
                .iter()
                .map(|c| e.coordinates(c).expect("d preserves the kernel"))
                .collect();
            IntMatrix::from_columns(&cols, bases[k + 1].cols())
        })
        .collect();
    let k = Complex::build(lo, parts.into_iter().map(|(g, _)| g).collect(), diffs);
    let inc = ChainMap::build(&k, s, |n| {
        if n < lo || n > hi {
            IntMatrix::zeros(s.rank(n), k.rank(n))
        } else {
            bases[(n - lo) as usize].clone()
        }
    });
    (k, inc)
}

/// The degreewise pullback of `f: A -> P` and `g: B -> P`, with projections.
pub fn naive_fibered_product(f: &ChainMap, g: &ChainMap) -> (Complex, ChainMap, ChainMap) {
    let sum = direct_sum(f.src(), g.src());
    let u = f.compose(&sum.pr1).sub(&g.compose(&sum.pr2));
    let (k, inc) = degreewise_kernel(&u);
    (k.clone(), sum.pr1.compose(&inc), sum.pr2.compose(&inc))
}

/// `... -> H^{n-1}(P) -> H^n(X) -> H^n(A)+H^n(B) -> H^n(P) -> ...` for
/// `n` in `[from, to]`, `to` at most the truncation degree.
pub fn mayer_vietoris_product(fp: &FiberedProduct, from: i32, to: i32) -> LongExactSequence {
    let p = fp.u.dst();
    let pm = shift(p, -1);
    let co = &fp.cocone;
    let ab = fp.sum.complex.clone();
    // P[-1] -> cocone, p ↦ (0, p)
    let i = ChainMap::build(&pm, &co.complex, |n| {
        IntMatrix::zeros(ab.rank(n), pm.rank(n)).vstack(&IntMatrix::identity(pm.rank(n)))
    });
    let mut seq = LongExactSequence::new();
    for n in from..=to {
        let t_inv = fp
            .truncation
            .on_cohomology(n)
            .inverse()
            .expect("truncation is an isomorphism in this range");
        if n == from {
            seq.push_node(format!("H^{}(P)", n - 1), pm.cohomology(n).group);
        }
        seq.push_map(t_inv.compose(&i.on_cohomology(n)));
        seq.push_node(format!("H^{n}(X)"), fp.complex.cohomology(n).group);
        seq.push_map(co.projection.compose(&fp.truncation).on_cohomology(n));
        seq.push_node(format!("H^{n}(A+B)"), ab.cohomology(n).group);
        seq.push_map(connecting_map(&i, &co.projection, n));
        seq.push_node(format!("H^{n}(P)"), pm.cohomology(n + 1).group);
    }
    seq
}

/// `... -> H^n(P) -> H^n(A)+H^n(B) -> H^n(Y) -> H^{n+1}(P) -> ...` for
/// `n` in `[from, to]`, `from` at least the truncation degree.
pub fn mayer_vietoris_sum(fs: &FiberedSum, from: i32, to: i32) -> LongExactSequence {
    let mc = &fs.cone;
    let ab = fs.sum.complex.clone();
    let p1 = mc.projection.dst().clone();
    let mut seq = LongExactSequence::new();
    for n in from..=to {
        let t = fs.truncation.on_cohomology(n);
        let t_inv = t
            .inverse()
            .expect("truncation is an isomorphism in this range");
        if n == from {
            seq.push_node(format!("H^{n}(P)"), p1.cohomology(n - 1).group);
            seq.push_map(connecting_map(&mc.inclusion, &mc.projection, n - 1));
            seq.push_node(format!("H^{n}(A+B)"), ab.cohomology(n).group);
        }
        seq.push_map(t.compose(&mc.inclusion.on_cohomology(n)));
        seq.push_node(format!("H^{n}(Y)"), fs.complex.cohomology(n).group);
        seq.push_map(mc.projection.on_cohomology(n).compose(&t_inv));
        seq.push_node(format!("H^{}(P)", n + 1), p1.cohomology(n).group);
        if n < to {
            seq.push_map(connecting_map(&mc.inclusion, &mc.projection, n));
            seq.push_node(format!("H^{}(A+B)", n + 1), ab.cohomology(n + 1).group);
        }
    }
    seq
}
