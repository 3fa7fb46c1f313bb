//! Extensions `B -> E -> A` of length-3 complexes, their classes in
//! `Ext^1(A, B)`, Baer sum, splitting, equivalences and long exact sequences.
//!
//! An extension is stored with `j` strict: `i = (q, M, p)` is a roof
//! `B -> E`, `π: E -> A` is a chain map and `null` is a homotopy
//! `0 => π∘p` on `M`. The general datum `(i, j, R)` is accepted by
//! [`Extension::from_roofs`] and recovered by [`Extension::j`] and
//! [`Extension::r`].

mod classify;
mod les;
mod ops;
mod witness;

use crate::complex::{
    cocone, mapping_cone, truncate_ge_good, truncate_le_good, ChainHomotopy, ChainMap, Complex,
    MappingCone,
};
use crate::error::{bail, Result};
use crate::fractions::{
    compose, default_top, homotopy_fibered_product, zero_fraction, FiberedProduct, Fraction,
    RoofArrow,
};
use crate::zmodule::{Int, IntMatrix};

pub use classify::{classify_theta, is_split, realize_psi, theta_routes, triangle_of, Triangle};
pub use les::{les_hom, les_homotopy, LesReport};
pub use ops::{baer_sum, direct_sum_extension, neutral, pullback_extension, pushdown_extension};
pub use witness::{equivalence_witness, ExtensionMorphism, Omega, WitnessReport};

pub(crate) fn sign(n: i32) -> Int {
    if n.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

fn span(a: &Complex, b: &Complex) -> (i32, i32) {
    match (a.is_zero_complex(), b.is_zero_complex()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

/// Validated chain map from a component closure.
pub(crate) fn checked_map(
    src: &Complex,
    dst: &Complex,
    f: impl Fn(i32) -> IntMatrix,
) -> Result<ChainMap> {
    let (a, b) = span(src, dst);
    ChainMap::new(src, dst, a, (a..=b).map(f).collect())
}

/// `f: L -> K` factored through a degreewise injective `inc: T -> K`.
pub(crate) fn corestrict(f: &ChainMap, inc: &ChainMap) -> Result<ChainMap> {
    let t = inc.src();
    let (a, b) = span(f.src(), t);
    let mut mats = Vec::new();
    for n in a..=b {
        let c = inc.component(n);
        let mut cols = Vec::new();
        for v in f.matrix(n).columns() {
            match c.preimage(&v) {
                Some(x) => cols.push(x),
                None => bail!(
                    Mismatch,
                    "map does not factor through the subcomplex in degree {n}"
                ),
            }
        }
        mats.push(IntMatrix::from_columns(&cols, t.rank(n)));
    }
    ChainMap::new(f.src(), t, a, mats)
}

/// The fibered product used by `compose(j, i)`.
pub(crate) fn composite_product(i: &Fraction, j: &Fraction) -> FiberedProduct {
    homotopy_fibered_product(i.p(), j.q(), default_top(i.apex(), j.apex()))
}

/// `f: K -> L` through the projection `K -> τ≥n K = t`.
pub(crate) fn descend(f: &ChainMap, t: &Complex) -> Result<ChainMap> {
    checked_map(t, f.dst(), |n| {
        if t.rank(n) == 0 {
            IntMatrix::zeros(f.dst().rank(n), 0)
        } else {
            f.matrix(n)
        }
    })
}

/// An extension of `A` by `B`.
#[derive(Clone, Debug)]
pub struct Extension {
    a: Complex,
    b: Complex,
    e: Complex,
    i: Fraction,
    pi: ChainMap,
    null: ChainHomotopy,
}

/// Outcome of [`Extension::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub cond_a: bool,
    pub cond_b: bool,
    pub roof_coherence: bool,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.cond_a && self.cond_b && self.roof_coherence
    }
}

impl Extension {
    /// `i = (q, M, p): B -> E`, `pi: E -> A`, `null: 0 => pi∘p`. The exactness
    /// conditions are not checked here; see [`Extension::validate`].
    pub fn new(
        a: &Complex,
        b: &Complex,
        e: &Complex,
        i: Fraction,
        pi: ChainMap,
        null: ChainHomotopy,
    ) -> Result<Extension> {
        for (name, c) in [("A", a), ("B", b), ("E", e)] {
            if !c.is_length3() {
                bail!(
                    InvalidExtension,
                    "{name} is not concentrated in degrees -2, -1, 0"
                );
            }
        }
        if i.src() != b || i.dst() != e || pi.src() != e || pi.dst() != a {
            bail!(Mismatch, "i must go from B to E and π from E to A");
        }
        let pp = pi.compose(i.p());
        if null.from().src() != i.apex() || null.from().dst() != a {
            bail!(Mismatch, "the null-homotopy must live on the apex of i");
        }
        if !null.from().is_zero() || !null.to().equals(&pp) || !null.check() {
            bail!(InvalidHomotopy, "null is not a homotopy 0 => π∘p_i");
        }
        let m = i.apex();
        let (i, null) = if !m.is_zero_complex() && m.hi() > 0 {
            let (_, inc) = truncate_le_good(m, 0);
            let i = Fraction::new_unchecked(i.q().compose(&inc), i.p().compose(&inc));
            (i, null.pre_compose(&inc))
        } else {
            (i, null)
        };
        Ok(Extension {
            a: a.clone(),
            b: b.clone(),
            e: e.clone(),
            i,
            pi,
            null,
        })
    }

    pub(crate) fn new_unchecked(
        a: &Complex,
        b: &Complex,
        e: &Complex,
        i: Fraction,
        pi: ChainMap,
        null: ChainHomotopy,
    ) -> Extension {
        Extension::new(a, b, e, i, pi, null)
            .unwrap_or_else(|err| panic!("internal extension: {err}"))
    }

    /// From the general datum: roofs `i: B -> E`, `j: E -> A` and a roof
    /// arrow `r` from `j∘i` (as computed by `fractions::compose`) to zero.
    ///
    /// `E` is replaced by the apex of `j`, truncated to degrees `[-2, 0]`.
    pub fn from_roofs(i: &Fraction, j: &Fraction, r: &RoofArrow) -> Result<Extension> {
        let (a, b) = (j.dst(), i.src());
        if i.dst() != j.src() {
            bail!(Mismatch, "i and j are not composable");
        }
        let fp = composite_product(i, j);
        if r.from.apex() != &fp.complex || r.to.src() != b || r.to.dst() != a {
            bail!(Mismatch, "R must start at j∘i and end at the zero roof");
        }
        if !r.to.p().is_zero() {
            bail!(InvalidExtension, "R must end at the zero roof");
        }
        let rep = r.validate();
        if !rep.valid() {
            bail!(InvalidHomotopy, "R does not validate: {rep:?}");
        }
        // on the mid complex L: r is the new left leg, p_j∘pr_b∘s the new
        // right leg, and R's second homotopy the null-homotopy
        let (_, linc) = truncate_le_good(r.mid(), 0);
        let pb = fp.pr_b.compose(&r.s).compose(&linc);
        let null = r.hp.neg().pre_compose(&linc);
        let (n_le, ninc) = truncate_le_good(j.apex(), 0);
        let (e, t) = truncate_ge_good(&n_le, -2);
        let p = t.compose(&corestrict(&pb, &ninc)?);
        let pi = descend(&j.p().compose(&ninc), &e)?;
        let i = Fraction::new(r.r.compose(&linc), p)?;
        let to = pi.compose(i.p());
        let zero = ChainMap::zero(i.apex(), a);
        let null = ChainHomotopy::build_unchecked(&zero, &to, |k| null.matrix(k));
        if !null.check() {
            bail!(InvalidHomotopy, "R does not give a null-homotopy of π∘p");
        }
        Extension::new(a, b, &e, i, pi, null)
    }

    pub fn a(&self) -> &Complex {
        &self.a
    }

    pub fn b(&self) -> &Complex {
        &self.b
    }

    pub fn e(&self) -> &Complex {
        &self.e
    }

    pub fn i(&self) -> &Fraction {
        &self.i
    }

    /// `π` as a strict roof.
    pub fn j(&self) -> Fraction {
        Fraction::from_map(&self.pi)
    }

    pub fn pi(&self) -> &ChainMap {
        &self.pi
    }

    /// `0 => π∘p_i`.
    pub fn null(&self) -> &ChainHomotopy {
        &self.null
    }

    /// Apex `M` of `i`.
    pub fn apex(&self) -> &Complex {
        self.i.apex()
    }

    /// The roof arrow `j∘i => 0`: `M` maps to the apex of `j∘i` by
    /// `m ↦ (m, p m, 0)`.
    pub fn r(&self) -> RoofArrow {
        let j = self.j();
        let fp = composite_product(&self.i, &j);
        let m = self.apex();
        let raw = checked_map(m, &fp.cocone.complex, |n| {
            let top = IntMatrix::identity(m.rank(n)).vstack(&self.i.p().matrix(n));
            top.vstack(&IntMatrix::zeros(self.e.rank(n - 1), m.rank(n)))
        })
        .expect("section into the cocone");
        let s = corestrict(&raw, &fp.truncation).expect("section lands in the truncation");
        let from = compose(&j, &self.i).expect("i and j are composable");
        let to = zero_fraction(&self.b, &self.a);
        let qs = from.q().compose(&s);
        let ps = from.p().compose(&s);
        let hq = ChainHomotopy::build(&qs, self.i.q(), |n| {
            IntMatrix::zeros(self.b.rank(n - 1), m.rank(n))
        });
        let zero = ChainMap::zero(m, &self.a);
        let hp = ChainHomotopy::build(&ps, &zero, |n| self.null.matrix(n).neg());
        RoofArrow {
            from,
            to,
            s,
            r: self.i.q().clone(),
            hq,
            hp,
        }
    }

    /// `M -> cocone(π)`, `m ↦ (p m, H m)`.
    pub(crate) fn phi_a(&self) -> Result<ChainMap> {
        let co = cocone(&self.pi);
        let (p, h) = (self.i.p(), &self.null);
        checked_map(self.apex(), &co.complex, |n| {
            p.matrix(n).vstack(&h.matrix(n))
        })
    }

    /// `MC(p) -> A`, `(m, e) ↦ (-1)^n H(m) + (-1)^{n+1} π(e)`.
    pub(crate) fn kappa_b(&self) -> Result<(ChainMap, MappingCone)> {
        let mc = mapping_cone(self.i.p());
        let (pi, h) = (&self.pi, &self.null);
        let k = checked_map(&mc.complex, &self.a, |n| {
            h.matrix(n + 1)
                .scale(&sign(n))
                .hstack(&pi.matrix(n).scale(&sign(n + 1)))
        })?;
        Ok((k, mc))
    }

    /// `H^0(π)` surjective and `M -> τ≤0 cocone(π)` a quasi-isomorphism.
    pub fn cond_a(&self) -> bool {
        if !self.pi.on_cohomology(0).is_surjective() {
            return false;
        }
        let Ok(phi) = self.phi_a() else {
            return false;
        };
        let lo = phi.range().0;
        (lo..=0).all(|n| phi.on_cohomology(n).is_iso())
    }

    /// `H^{-2}(p)` injective and `τ≥-2 MC(p) -> A` a quasi-isomorphism.
    pub fn cond_b(&self) -> bool {
        if !self.i.p().on_cohomology(-2).is_injective() {
            return false;
        }
        let Ok((k, _)) = self.kappa_b() else {
            return false;
        };
        let hi = k.range().1.max(0);
        (-2..=hi).all(|n| k.on_cohomology(n).is_iso())
    }

    pub fn roof_coherence(&self) -> bool {
        self.i.q().is_quasi_iso() && self.null.check() && self.r().validate().valid()
    }

    pub fn validate(&self) -> ValidationReport {
        ValidationReport {
            cond_a: self.cond_a(),
            cond_b: self.cond_b(),
            roof_coherence: self.roof_coherence(),
        }
    }
}

#[cfg(test)]
mod tests;
