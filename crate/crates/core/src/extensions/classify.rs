use super::{checked_map, descend, sign, Extension};
use crate::complex::{
    cocone, shift, shift_map, truncate_ge_good, ChainHomotopy, ChainMap, MappingCone,
};
use crate::derived::{lift_through_qis, roof_of_class, DerivedClass, ExtGroup};
use crate::error::{bail, Result};
use crate::fractions::Fraction;
use crate::zmodule::IntMatrix;

/// `B -> E -> A -> B[1]`; the connecting morphism is the zig-zag
/// `A -> MC(π) <-γ- M[1] -q[1]-> B[1]` with `γ(m) = (-1)^n (p m, H m)`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub i: Fraction,
    pub j: Fraction,
    pub cone: MappingCone,
    pub gamma: ChainMap,
    pub q1: ChainMap,
}

impl Triangle {
    /// `δ∘u` for a chain map `u: P -> A` from a free complex.
    pub fn connecting(&self, u: &ChainMap) -> Result<ChainMap> {
        let (s, _) = lift_through_qis(&self.cone.inclusion.compose(u), &self.gamma)?;
        Ok(self.q1.compose(&s))
    }

    /// The connecting morphism as a derived class in `Ext^1(A, B)`.
    pub fn connecting_class(&self, ext: &ExtGroup) -> Result<DerivedClass> {
        ext.class_of_cocycle(&self.connecting(&ext.resolution().eps)?)
    }

    /// The connecting morphism as a roof `A <- P -> B[1]`.
    pub fn connecting_roof(&self, ext: &ExtGroup) -> Result<Fraction> {
        Ok(roof_of_class(&self.connecting_class(ext)?))
    }
}

pub fn triangle_of(e: &Extension) -> Result<Triangle> {
    let cone = crate::complex::mapping_cone(e.pi());
    let m1 = shift(e.apex(), 1);
    let (p, h) = (e.i().p(), e.null());
    let gamma = checked_map(&m1, &cone.complex, |n| {
        p.matrix(n + 1).vstack(&h.matrix(n + 1)).scale(&sign(n))
    })?;
    Ok(Triangle {
        i: e.i().clone(),
        j: e.j(),
        cone,
        gamma,
        q1: shift_map(e.i().q(), 1),
    })
}

/// `Θ` computed twice: from the triangle through `cocone(π)` (condition
/// (a)), and from `A ≃ MC(p)` (condition (b)) followed by minus the cone
/// projection, the sign of the rotated triangle `E -> MC(p) -> B[1] -> E[1]`.
pub fn theta_routes(e: &Extension) -> Result<(DerivedClass, DerivedClass)> {
    let ext = ExtGroup::new(e.a(), e.b(), 1);
    let via_a = triangle_of(e)?.connecting_class(&ext)?;
    let (kappa, mc) = e.kappa_b()?;
    let q1 = shift_map(e.i().q(), 1);
    let roof = Fraction::new_unchecked(kappa, q1.compose(&mc.projection).neg());
    let via_b = ext.class_of_roof(&roof)?;
    Ok((via_a, via_b))
}

/// The class of an extension in `Ext^1(A, B)`.
pub fn classify_theta(e: &Extension) -> Result<DerivedClass> {
    let rep = e.validate();
    if !rep.valid() {
        bail!(InvalidExtension, "{rep:?}");
    }
    let (a, b) = theta_routes(e)?;
    assert_eq!(
        a.coords(),
        b.coords(),
        "the two computations of the class disagree"
    );
    Ok(a)
}

/// `B -> τ≥-2 cocone(u) -> A` for a cocycle `u: P -> B[1]` of `x`.
pub fn realize_psi(x: &DerivedClass) -> Result<Extension> {
    if x.degree() != 1 {
        bail!(
            Precondition,
            "extensions are classified by degree-1 classes"
        );
    }
    let (a, b) = (x.src(), x.dst());
    let res = x.ext().resolution();
    let co = cocone(x.cocycle());
    let c = &co.complex;
    if !c.is_zero_complex() {
        for n in c.lo()..-2 {
            assert!(
                c.cohomology(n).group.is_trivial(),
                "cocone has cohomology below -2"
            );
        }
    }
    let (e, t) = truncate_ge_good(c, -2);
    let p_rank = |n: i32| res.p.rank(n);
    let iota = checked_map(b, c, |n| {
        IntMatrix::zeros(p_rank(n), b.rank(n)).vstack(&IntMatrix::identity(b.rank(n)))
    })?;
    let i = Fraction::from_map(&t.compose(&iota));
    let pi = descend(&res.eps.compose(&co.projection), &e)?;
    let pp = pi.compose(i.p());
    let null = ChainHomotopy::build(&ChainMap::zero(b, a), &pp, |n| {
        IntMatrix::zeros(a.rank(n - 1), b.rank(n))
    });
    Extension::new(a, b, &e, i, pi, null)
}

/// A section `U: A -> E` with `j∘U = id_A` in the derived category, when
/// the class vanishes.
pub fn is_split(e: &Extension) -> Result<Option<Fraction>> {
    if !classify_theta(e)?.is_zero() {
        return Ok(None);
    }
    let res = crate::derived::free_resolution(e.a());
    let to_e = ExtGroup::with_resolution(&res, e.e(), 0);
    let to_a = ExtGroup::with_resolution(&res, e.a(), 0);
    let post = to_e.post_compose_roof(&e.j(), &to_a)?;
    let id = to_a.class_of_roof(&Fraction::identity(e.a()))?;
    let Some(y) = post.preimage(&to_a.group().from_coords(id.coords())) else {
        panic!("a vanishing class has a section");
    };
    let u = to_e.class(&to_e.group().coords(&y));
    Ok(Some(roof_of_class(&u)))
}
