use super::classify::{classify_theta, triangle_of};
use super::Extension;
use crate::complex::{induced_on_cohomology, shift, Complex, LongExactSequence};
use crate::derived::{free_resolution, ExtGroup};
use crate::error::Result;
use crate::fractions::Fraction;
use crate::zmodule::IntMatrix;

/// A sequence with its exactness at interior nodes and any extra checks.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub sequence: LongExactSequence,
    pub exact: Vec<(String, bool)>,
    pub checks: Vec<(String, bool)>,
}

impl LesReport {
    pub fn ok(&self) -> bool {
        self.exact.iter().chain(&self.checks).all(|(_, b)| *b)
    }
}

/// `0 -> π2(B) -> π2(E) -> π2(A) -Γ-> π1(B) -> ... -> π0(A) -> 0` with
/// `π_k = H^{-k}`.
pub fn les_homotopy(e: &Extension) -> Result<LesReport> {
    let tri = triangle_of(e)?;
    let (b, ee, a) = (e.b(), e.e(), e.a());
    let b1 = shift(b, 1);
    let (q, p) = (e.i().q(), e.i().p());
    let mut seq = LongExactSequence::new();
    for n in -2..=0 {
        let k = -n;
        if n == -2 {
            seq.push_node(format!("pi{k}(B)"), b.cohomology(n).group);
        }
        let qi = q
            .on_cohomology(n)
            .inverse()
            .expect("q is a quasi-isomorphism");
        seq.push_map(p.on_cohomology(n).compose(&qi));
        seq.push_node(format!("pi{k}(E)"), ee.cohomology(n).group);
        seq.push_map(e.pi().on_cohomology(n));
        seq.push_node(format!("pi{k}(A)"), a.cohomology(n).group);
        if n < 0 {
            let Some(gi) = tri.gamma.on_cohomology(n).inverse() else {
                crate::error::bail!(
                    InvalidExtension,
                    "γ is not a quasi-isomorphism in degree {n}"
                );
            };
            let ident = induced_on_cohomology(
                &IntMatrix::identity(b.rank(n + 1)),
                &b1.cohomology(n),
                &b.cohomology(n + 1),
            );
            let conn = ident
                .compose(&tri.q1.on_cohomology(n))
                .compose(&gi)
                .compose(&tri.cone.inclusion.on_cohomology(n));
            seq.push_map(conn);
            seq.push_node(format!("pi{}(B)", k - 1), b.cohomology(n + 1).group);
        }
    }
    let exact = seq.exactness();
    let checks = vec![
        (
            "injective at pi2(B)".to_string(),
            seq.maps[0].is_injective(),
        ),
        (
            "surjective onto pi0(A)".to_string(),
            seq.maps.last().expect("nonempty").is_surjective(),
        ),
    ];
    Ok(LesReport {
        sequence: seq,
        exact,
        checks,
    })
}

/// `Hom_D(X, B) -> Hom_D(X, E) -> Hom_D(X, A) -∂-> Ext^1(X, B)`; for `X = A`
/// also checks `∂(id_A) = Θ(e)`.
pub fn les_hom(e: &Extension, x: &Complex) -> Result<LesReport> {
    let res = free_resolution(x);
    let g0 = ExtGroup::with_resolution(&res, e.b(), 0);
    let g1 = ExtGroup::with_resolution(&res, e.e(), 0);
    let g2 = ExtGroup::with_resolution(&res, e.a(), 0);
    let g3 = ExtGroup::with_resolution(&res, e.b(), 1);
    let tri = triangle_of(e)?;
    let m0 = g0.post_compose_roof(e.i(), &g1)?;
    let m1 = g1.post_compose_roof(&e.j(), &g2)?;
    let boundary = |c: &crate::derived::DerivedClass| {
        let u = tri
            .connecting(c.cocycle())
            .expect("γ is a quasi-isomorphism");
        g3.class_of_cocycle(&u).expect("cocycle into B[1]")
    };
    let m2 = g2.morphism_to(&g3, boundary);
    let mut seq = LongExactSequence::new();
    seq.push_node("Hom(X,B)", g0.group().clone());
    seq.push_map(m0);
    seq.push_node("Hom(X,E)", g1.group().clone());
    seq.push_map(m1);
    seq.push_node("Hom(X,A)", g2.group().clone());
    seq.push_map(m2);
    seq.push_node("Ext1(X,B)", g3.group().clone());
    let exact = seq.exactness();
    let mut checks = Vec::new();
    if x == e.a() {
        let id = g2.class_of_roof(&Fraction::identity(e.a()))?;
        let theta = classify_theta(e)?;
        let d = boundary(&id);
        checks.push((
            "boundary of identity is the class".to_string(),
            d.coords() == theta.coords(),
        ));
    }
    Ok(LesReport {
        sequence: seq,
        exact,
        checks,
    })
}
