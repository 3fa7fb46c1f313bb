use super::classify::{classify_theta, triangle_of};
use super::{checked_map, sign, Extension};
use crate::complex::{cocone, ChainHomotopy, ChainMap, Complex};
use crate::derived::{free_resolution, homotopic, lift_through_qis};
use crate::error::{bail, Result};
use crate::fractions::{homotopy_fibered_product, Fraction, RoofArrow};
use crate::zmodule::IntMatrix;

/// The isomorphism `cocone(s1) -> cocone(s2)`, `(x, w) ↦ (x, w + k x)`, of a
/// homotopy `k: s1 => s2`.
#[derive(Clone, Debug)]
pub struct Omega {
    pub iso: ChainMap,
    pub homotopy: ChainHomotopy,
}

/// A morphism of extensions with `g = id_A` and `h = id_B`.
///
/// `f = (Φ1, C, Φ2∘ω)` with `C = cocone(s1)`; `a1, a2` put both `i` on the
/// apex `W = M1 ×_B M2`, and `incl: W -> C` is `w ↦ (0, w)`. `t` compares
/// `f∘i1 = (q1 a1, W, p_f∘incl)` with `i2 = (q2 a2, W, p2 a2)`, `u` compares
/// `j2∘f` with `j1`.
#[derive(Clone, Debug)]
pub struct ExtensionMorphism {
    pub source: Extension,
    pub target: Extension,
    pub f: Fraction,
    pub g: Fraction,
    pub h: Fraction,
    pub a1: ChainMap,
    pub a2: ChainMap,
    pub incl: ChainMap,
    pub t: RoofArrow,
    pub u: RoofArrow,
    pub omega: Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub f_quasi_iso: bool,
    pub identities: bool,
    pub i_coherent: bool,
    pub j_coherent: bool,
    pub omega_valid: bool,
}

impl WitnessReport {
    pub fn valid(&self) -> bool {
        self.f_quasi_iso
            && self.identities
            && self.i_coherent
            && self.j_coherent
            && self.omega_valid
    }
}

fn is_identity(f: &Fraction) -> bool {
    f.is_strict() && f.p().equals(&ChainMap::identity(f.src())) && f.src() == f.dst()
}

fn degreewise_iso(f: &ChainMap) -> bool {
    let (a, b) = f.range();
    (a..=b).all(|n| f.component(n).is_iso())
}

impl ExtensionMorphism {
    /// Structural check of every stored piece, without reference to classes.
    pub fn validate(&self) -> WitnessReport {
        let (e1, e2) = (&self.source, &self.target);
        let f_quasi_iso = self.f.q().is_quasi_iso() && self.f.p().is_quasi_iso();
        let identities = is_identity(&self.g)
            && is_identity(&self.h)
            && self.g.src() == e1.a()
            && self.h.src() == e1.b();
        let (q1, p1) = (e1.i().q(), e1.i().p());
        let (q2, p2) = (e2.i().q(), e2.i().p());
        let t = &self.t;
        let i_coherent = self.a1.is_quasi_iso()
            && self.a2.is_quasi_iso()
            && self.f.q().compose(&self.incl).equals(&p1.compose(&self.a1))
            && t.from.q().equals(&q1.compose(&self.a1))
            && t.from.p().equals(&self.f.p().compose(&self.incl))
            && t.to.q().equals(&q2.compose(&self.a2))
            && t.to.p().equals(&p2.compose(&self.a2))
            && t.validate().valid();
        let u = &self.u;
        let j1 = e1.j();
        let j_coherent = u.from.q().equals(self.f.q())
            && u.from.p().equals(&e2.pi().compose(self.f.p()))
            && u.to.q().equals(j1.q())
            && u.to.p().equals(j1.p())
            && u.validate().valid();
        let om = &self.omega;
        let omega_valid =
            degreewise_iso(&om.iso) && om.iso.src() == self.f.apex() && om.homotopy.check();
        WitnessReport {
            f_quasi_iso,
            identities,
            i_coherent,
            j_coherent,
            omega_valid,
        }
    }
}

/// Lift of `e` on the apex `W`: the model map `Φ: cocone(s) -> E`, the
/// homotopy `eps∘pr => π∘Φ`, and `s`.
struct Model {
    s: ChainMap,
    phi: ChainMap,
    eta: ChainHomotopy,
    cone: Complex,
}

fn model(e: &Extension, eps: &ChainMap) -> Result<Model> {
    let tri = triangle_of(e)?;
    let (s, h) = lift_through_qis(&tri.cone.inclusion.compose(eps), &tri.gamma)?;
    let co = cocone(&s);
    let c = co.complex.clone();
    let pcx = eps.src();
    let (ee, a) = (e.e(), e.a());
    let (p, null) = (e.i().p(), e.null());
    // h^n = (h_E, h_A): P^n -> E^n ⊕ A^{n-1}
    let h_e = |n: i32| h.matrix(n).submatrix(0, ee.rank(n), 0, pcx.rank(n));
    let h_a = |n: i32| {
        h.matrix(n)
            .submatrix(ee.rank(n), a.rank(n - 1), 0, pcx.rank(n))
    };
    let phi = checked_map(&c, ee, |n| h_e(n).scale(&sign(n)).hstack(&p.matrix(n)))?;
    let from = eps.compose(&co.projection);
    let to = e.pi().compose(&phi);
    let eta = ChainHomotopy::build_unchecked(&from, &to, |n| {
        h_a(n).scale(&sign(n)).hstack(&null.matrix(n))
    });
    if !eta.check() {
        bail!(InvalidHomotopy, "model homotopy does not check");
    }
    Ok(Model {
        s,
        phi,
        eta,
        cone: c,
    })
}

/// An equivalence `e1 => e2` inducing identities on `A` and `B`, present
/// exactly when the two classes agree.
pub fn equivalence_witness(e1: &Extension, e2: &Extension) -> Result<Option<ExtensionMorphism>> {
    if e1.a() != e2.a() || e1.b() != e2.b() {
        bail!(Mismatch, "extensions of different complexes");
    }
    if classify_theta(e1)?.coords() != classify_theta(e2)?.coords() {
        return Ok(None);
    }
    let (a, b) = (e1.a(), e1.b());
    let base = homotopy_fibered_product(e1.i().q(), e2.i().q(), 0);
    let w = base.complex.clone();
    let (a1, a2) = (base.pr_a.clone(), base.pr_b.clone());
    let rebase = |e: &Extension, ak: &ChainMap| {
        let i = Fraction::new_unchecked(e.i().q().compose(ak), e.i().p().compose(ak));
        Extension::new(a, b, e.e(), i, e.pi().clone(), e.null().pre_compose(ak))
    };
    let (r1, r2) = (rebase(e1, &a1)?, rebase(e2, &a2)?);
    let res = free_resolution(a);
    let m1 = model(&r1, &res.eps)?;
    let m2 = model(&r2, &res.eps)?;
    let Some(k) = homotopic(&m1.s, &m2.s) else {
        bail!(Precondition, "lifts of equal classes are not homotopic");
    };
    let pr = res.p.clone();
    let iso = checked_map(&m1.cone, &m2.cone, |n| {
        let (np, nw) = (pr.rank(n), w.rank(n));
        IntMatrix::blocks(&[np, nw], &[np, nw], |r, c| match (r, c) {
            (0, 0) | (1, 1) => Some(IntMatrix::identity(if r == 0 { np } else { nw })),
            (1, 0) => Some(k.matrix(n)),
            _ => None,
        })
    })?;
    let f = Fraction::new(m1.phi.clone(), m2.phi.compose(&iso))?;
    let incl = checked_map(&w, &m1.cone, |n| {
        IntMatrix::zeros(pr.rank(n), w.rank(n)).vstack(&IntMatrix::identity(w.rank(n)))
    })?;
    let id_w = ChainMap::identity(&w);
    let t_from = Fraction::new_unchecked(r1.i().q().clone(), f.p().compose(&incl));
    let t_to = Fraction::new_unchecked(r2.i().q().clone(), r2.i().p().clone());
    let hp_t = ChainHomotopy::build(t_from.p(), t_to.p(), |n| {
        IntMatrix::zeros(e2.e().rank(n - 1), w.rank(n))
    });
    let t = RoofArrow {
        from: t_from,
        to: t_to,
        s: id_w.clone(),
        r: id_w,
        hq: base.homotopy.clone(),
        hp: hp_t,
    };
    let u_from = Fraction::new_unchecked(f.q().clone(), e2.pi().compose(f.p()));
    let c = &m1.cone;
    let id_c = ChainMap::identity(c);
    let hq_u = ChainHomotopy::build(f.q(), f.q(), |n| {
        IntMatrix::zeros(e1.e().rank(n - 1), c.rank(n))
    });
    let hp_u = m2.eta.pre_compose(&iso).neg().then(&m1.eta);
    let u = RoofArrow {
        from: u_from,
        to: e1.j(),
        s: id_c,
        r: f.q().clone(),
        hq: hq_u,
        hp: hp_u,
    };
    Ok(Some(ExtensionMorphism {
        source: e1.clone(),
        target: e2.clone(),
        f,
        g: Fraction::identity(a),
        h: Fraction::identity(b),
        a1,
        a2,
        incl,
        t,
        u,
        omega: Omega { iso, homotopy: k },
    }))
}
