//! Roofs `K <-q- M -p-> L` with `q` a quasi-isomorphism, their composition,
//! and homotopy fibered products and sums.

mod fibered;

pub(crate) use fibered::default_top;

use crate::complex::{ChainHomotopy, ChainMap, Complex};
use crate::error::{bail, Result};

pub use fibered::{
    degreewise_kernel, fibered_product_complexes, fibered_product_fractions, fibered_sum_complexes,
    fibered_sum_fractions, homotopy_cokernel, homotopy_fibered_product, homotopy_fibered_sum,
    homotopy_kernel, mayer_vietoris_product, mayer_vietoris_sum, naive_fibered_product,
    FiberedProduct, FiberedSum, FractionProduct, FractionSum,
};

/// A roof `src <-q- apex -p-> dst`.
#[derive(Clone, Debug)]
pub struct Fraction {
    q: ChainMap,
    p: ChainMap,
}

impl Fraction {
    pub fn new(q: ChainMap, p: ChainMap) -> Result<Fraction> {
        if q.src() != p.src() {
            bail!(
                Mismatch,
                "the two legs of a fraction must start at the same apex"
            );
        }
        if !q.is_quasi_iso() {
            bail!(NotQuasiIso, "left leg of a fraction");
        }
        Ok(Fraction { q, p })
    }

    /// No quasi-isomorphism check; for legs that are quasi-isomorphisms by
    /// construction.
    pub(crate) fn new_unchecked(q: ChainMap, p: ChainMap) -> Fraction {
        debug_assert!(q.src() == p.src());
        Fraction { q, p }
    }

    /// `(id, src, f)`.
    pub fn from_map(f: &ChainMap) -> Fraction {
        Fraction {
            q: ChainMap::identity(f.src()),
            p: f.clone(),
        }
    }

    pub fn identity(k: &Complex) -> Fraction {
        identity_fraction(k)
    }

    pub fn src(&self) -> &Complex {
        self.q.dst()
    }

    pub fn dst(&self) -> &Complex {
        self.p.dst()
    }

    pub fn apex(&self) -> &Complex {
        self.q.src()
    }

    pub fn q(&self) -> &ChainMap {
        &self.q
    }

    pub fn p(&self) -> &ChainMap {
        &self.p
    }

    /// True when the left leg is an identity, i.e. the roof is a chain map.
    pub fn is_strict(&self) -> bool {
        self.apex() == self.src() && self.q.equals(&ChainMap::identity(self.src()))
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            q: self.q.clone(),
            p: self.p.neg(),
        }
    }

    /// `(q, apex, g∘p)`.
    pub fn then_map(&self, g: &ChainMap) -> Fraction {
        Fraction {
            q: self.q.clone(),
            p: g.compose(&self.p),
        }
    }

    /// Precomposition with a chain map `f: K' -> src`, by roof composition.
    pub fn after_map(&self, f: &ChainMap) -> Fraction {
        compose(self, &Fraction::from_map(f)).expect("boundaries agree")
    }
}

pub fn identity_fraction(k: &Complex) -> Fraction {
    let id = ChainMap::identity(k);
    Fraction {
        q: id.clone(),
        p: id,
    }
}

/// `(id_B, B, 0)`.
pub fn zero_fraction(b: &Complex, a: &Complex) -> Fraction {
    Fraction {
        q: ChainMap::identity(b),
        p: ChainMap::zero(b, a),
    }
}

/// `g ∘ f`; the apex is the homotopy fibered product of `f.p` and `g.q`.
pub fn compose(g: &Fraction, f: &Fraction) -> Result<Fraction> {
    if f.dst() != g.src() {
        bail!(
            Mismatch,
            "target of the first fraction is not the source of the second"
        );
    }
    let fp = homotopy_fibered_product(&f.p, &g.q, default_top(f.apex(), g.apex()));
    let q = f.q.compose(&fp.pr_a);
    let p = g.p.compose(&fp.pr_b);
    debug_assert!(q.is_quasi_iso());
    Ok(Fraction { q, p })
}

/// A 1-arrow between fractions with the same boundary: `s: mid -> from.apex`,
/// `r: mid -> to.apex`, quasi-isomorphisms, with homotopies
/// `q∘s => q'∘r` and `p∘s => p'∘r`.
///
/// Strict arrows are the case of zero homotopies.
#[derive(Clone, Debug)]
pub struct RoofArrow {
    pub from: Fraction,
    pub to: Fraction,
    pub s: ChainMap,
    pub r: ChainMap,
    pub hq: ChainHomotopy,
    pub hp: ChainHomotopy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoofArrowReport {
    pub s_quasi_iso: bool,
    pub r_quasi_iso: bool,
    pub q_coherent: bool,
    pub p_coherent: bool,
    pub strict: bool,
}

impl RoofArrowReport {
    pub fn valid(&self) -> bool {
        self.s_quasi_iso && self.r_quasi_iso && self.q_coherent && self.p_coherent
    }
}

impl RoofArrow {
    pub fn mid(&self) -> &Complex {
        self.s.src()
    }

    pub fn validate(&self) -> RoofArrowReport {
        let qs = self.from.q.compose(&self.s);
        let qr = self.to.q.compose(&self.r);
        let ps = self.from.p.compose(&self.s);
        let pr = self.to.p.compose(&self.r);
        let q_coherent = self.hq.from().equals(&qs) && self.hq.to().equals(&qr) && self.hq.check();
        let p_coherent = self.hp.from().equals(&ps) && self.hp.to().equals(&pr) && self.hp.check();
        let strict = q_coherent && p_coherent && qs.equals(&qr) && ps.equals(&pr);
        RoofArrowReport {
            s_quasi_iso: self.s.is_quasi_iso(),
            r_quasi_iso: self.r.is_quasi_iso(),
            q_coherent,
            p_coherent,
            strict,
        }
    }

    pub fn identity(f: &Fraction) -> RoofArrow {
        let id = ChainMap::identity(f.apex());
        RoofArrow {
            from: f.clone(),
            to: f.clone(),
            s: id.clone(),
            r: id,
            hq: ChainHomotopy::zero(&f.q),
            hp: ChainHomotopy::zero(&f.p),
        }
    }

    pub fn inverse(&self) -> RoofArrow {
        RoofArrow {
            from: self.to.clone(),
            to: self.from.clone(),
            s: self.r.clone(),
            r: self.s.clone(),
            hq: self.hq.neg(),
            hp: self.hp.neg(),
        }
    }
}

#[cfg(test)]
mod tests;
