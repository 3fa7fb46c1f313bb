use std::fmt;
use std::sync::Arc;

use super::hom::HomComplex;
use super::resolution::{free_resolution, FreeResolution};
use crate::complex::{shift, shift_map, ChainHomotopy, ChainMap, Cohomology, Complex};
use crate::error::{bail, Result};
use crate::fractions::Fraction;
use crate::zmodule::{format_divisors, vec_sub, FpGroup, GroupMorphism, Int, IntMatrix};

struct ExtData {
    res: FreeResolution,
    dst: Complex,
    degree: i32,
    target: Complex,
    hom: HomComplex,
    h0: Cohomology,
}

/// `Hom_D(A, B[i])`, computed as `H^0 Hom(P, B[i])` for a free resolution
/// `P -> A`.
#[derive(Clone)]
pub struct ExtGroup(Arc<ExtData>);

pub fn ext_group(a: &Complex, b: &Complex, i: i32) -> ExtGroup {
    ExtGroup::new(a, b, i)
}

impl ExtGroup {
    pub fn new(a: &Complex, b: &Complex, i: i32) -> ExtGroup {
        Self::with_resolution(&free_resolution(a), b, i)
    }

    pub fn with_resolution(res: &FreeResolution, b: &Complex, i: i32) -> ExtGroup {
        let target = shift(b, i);
        let hom = HomComplex::window(&res.p, &target, -1, 1);
        let h0 = hom.complex().cohomology(0);
        ExtGroup(Arc::new(ExtData {
            res: res.clone(),
            dst: b.clone(),
            degree: i,
            target,
            hom,
            h0,
        }))
    }

    pub fn src(&self) -> &Complex {
        &self.0.res.of
    }

    pub fn dst(&self) -> &Complex {
        &self.0.dst
    }

    pub fn degree(&self) -> i32 {
        self.0.degree
    }

    /// `dst[degree]`.
    pub fn target(&self) -> &Complex {
        &self.0.target
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.0.res
    }

    pub fn hom(&self) -> &HomComplex {
        &self.0.hom
    }

    pub fn group(&self) -> &FpGroup {
        &self.0.h0.group
    }

    pub fn divisors(&self) -> Vec<Int> {
        self.group().elementary_divisors()
    }

    pub fn is_trivial(&self) -> bool {
        self.group().is_trivial()
    }

    pub fn order(&self) -> Option<Int> {
        self.group().order()
    }

    /// Orders of the cyclic factors of the coordinates (`0` for `Z`).
    pub fn factors(&self) -> &[Int] {
        self.group().canonical_factors()
    }

    pub fn same_group(&self, other: &ExtGroup) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    fn reduce(&self, c: &[Int]) -> Vec<Int> {
        self.group().coords(&self.group().from_coords(c))
    }

    /// The class with the given canonical coordinates.
    pub fn class(&self, coords: &[Int]) -> DerivedClass {
        assert_eq!(
            coords.len(),
            self.group().canonical_len(),
            "coordinate length"
        );
        let coords = self.reduce(coords);
        let v = self.0.h0.representative_canonical(&coords);
        DerivedClass {
            ext: self.clone(),
            cocycle: self.0.hom.decode_map(&v),
            coords,
        }
    }

    pub fn zero(&self) -> DerivedClass {
        self.class(&vec![Int::zero(); self.group().canonical_len()])
    }

    pub fn generators(&self) -> Vec<DerivedClass> {
        let n = self.group().canonical_len();
        (0..n)
            .map(|i| {
                let mut c = vec![Int::zero(); n];
                c[i] = Int::one();
                self.class(&c)
            })
            .collect()
    }

    /// Every class, when the group is finite.
    pub fn elements(&self) -> Option<Vec<DerivedClass>> {
        let all = self.group().canonical_elements()?;
        Some(all.iter().map(|c| self.class(c)).collect())
    }

    /// Class of a chain map `P -> dst[degree]`.
    pub fn class_of_cocycle(&self, u: &ChainMap) -> Result<DerivedClass> {
        if u.src() != &self.0.res.p || u.dst() != &self.0.target {
            bail!(
                Mismatch,
                "cocycle must be a chain map from the resolution to the shifted target"
            );
        }
        let v = self.0.hom.encode_map(u);
        let coords = self
            .0
            .h0
            .canonical(&v)
            .expect("chain maps are cocycles of the Hom complex");
        Ok(DerivedClass {
            ext: self.clone(),
            cocycle: self.0.hom.decode_map(&v),
            coords,
        })
    }

    /// Class of a roof `src -> dst[degree]`.
    pub fn class_of_roof(&self, f: &Fraction) -> Result<DerivedClass> {
        if f.src() != self.src() || f.dst() != &self.0.target {
            bail!(
                Mismatch,
                "roof does not go from the source to the shifted target"
            );
        }
        let (s, _) = lift_through_qis(&self.0.res.eps, f.q())?;
        self.class_of_cocycle(&f.p().compose(&s))
    }

    /// Class of the roof `(eps, u)` where `eps` resolves the source.
    fn classify_on(&self, eps: &ChainMap, u: &ChainMap) -> Result<DerivedClass> {
        if eps.src() == &self.0.res.p && eps.equals(&self.0.res.eps) {
            return self.class_of_cocycle(u);
        }
        self.class_of_roof(&Fraction::new_unchecked(eps.clone(), u.clone()))
    }

    /// The homomorphism `group() -> other.group()` induced by a map of
    /// classes.
    pub(crate) fn morphism_to(
        &self,
        other: &ExtGroup,
        f: impl Fn(&DerivedClass) -> DerivedClass,
    ) -> GroupMorphism {
        let g = self.group();
        let cols: Vec<Vec<Int>> = (0..g.n_gens())
            .map(|j| {
                let c = self.class(&g.coords(&g.unit_vector(j)));
                other.group().from_coords(&f(&c).coords)
            })
            .collect();
        GroupMorphism::new_unchecked(
            g.clone(),
            other.group().clone(),
            IntMatrix::from_columns(&cols, other.group().n_gens()),
        )
    }

    /// `Hom_D(X, dst[i]) -> Hom_D(X, dst'[i])` by composition with a roof
    /// `g: dst -> dst'`.
    pub fn post_compose_roof(&self, g: &Fraction, other: &ExtGroup) -> Result<GroupMorphism> {
        let gi = shift_fraction(g, self.degree());
        if gi.src() != self.target() || gi.dst() != other.target() || other.src() != self.src() {
            bail!(Mismatch, "roof does not connect the two groups");
        }
        let eps = &self.0.res.eps;
        Ok(self.morphism_to(other, |c| {
            other
                .classify_on(eps, &push_cocycle(&c.cocycle, &gi))
                .expect("boundaries match")
        }))
    }

    /// `Hom_D(X, B[i]) -> Hom_D(X', B[i])` by precomposition with a roof
    /// `g: X' -> X`.
    pub fn pre_compose_roof(&self, g: &Fraction, other: &ExtGroup) -> Result<GroupMorphism> {
        if g.dst() != self.src() || g.src() != other.src() || other.target() != self.target() {
            bail!(Mismatch, "roof does not connect the two groups");
        }
        let gc = ExtGroup::with_resolution(&other.0.res, g.dst(), 0).class_of_roof(g)?;
        Ok(self.morphism_to(other, |c| {
            let k = compose_classes(c, &gc).expect("boundaries match");
            other.class_of_cocycle(&k.cocycle).expect("same resolution")
        }))
    }
}

impl fmt::Debug for ExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ext^{} {}",
            self.degree(),
            format_divisors(&self.divisors())
        )
    }
}

/// An element of `Hom_D(src, dst[degree])` with a cocycle representative.
#[derive(Clone)]
pub struct DerivedClass {
    ext: ExtGroup,
    coords: Vec<Int>,
    cocycle: ChainMap,
}

impl DerivedClass {
    pub fn ext(&self) -> &ExtGroup {
        &self.ext
    }

    pub fn src(&self) -> &Complex {
        self.ext.src()
    }

    pub fn dst(&self) -> &Complex {
        self.ext.dst()
    }

    pub fn degree(&self) -> i32 {
        self.ext.degree()
    }

    pub fn group(&self) -> &FpGroup {
        self.ext.group()
    }

    /// Canonical coordinates, reduced modulo the cyclic factors.
    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    /// `P -> dst[degree]`.
    pub fn cocycle(&self) -> &ChainMap {
        &self.cocycle
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Int::is_zero)
    }

    pub fn add(&self, o: &DerivedClass) -> DerivedClass {
        let o = o.transport(&self.ext);
        let c: Vec<Int> = self
            .coords
            .iter()
            .zip(&o.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.ext.class(&c)
    }

    pub fn neg(&self) -> DerivedClass {
        let c: Vec<Int> = self.coords.iter().map(|a| -a).collect();
        self.ext.class(&c)
    }

    pub fn sub(&self, o: &DerivedClass) -> DerivedClass {
        self.add(&o.neg())
    }

    /// The same class expressed in another presentation of the same group
    /// (e.g. on a different resolution).
    pub fn transport(&self, to: &ExtGroup) -> DerivedClass {
        if self.ext.same_group(to) {
            return self.clone();
        }
        to.class_of_roof(&roof_of_class(self))
            .expect("source and target agree")
    }

    /// Class equality, across resolutions if needed.
    pub fn same_class(&self, o: &DerivedClass) -> bool {
        o.transport(&self.ext).coords == self.coords
    }
}

impl fmt::Debug for DerivedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `degree divisors coords`, e.g. `1 [2] [1]`.
impl fmt::Display for DerivedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "{} {} [{}]",
            self.degree(),
            format_divisors(self.ext.factors()),
            c.join(",")
        )
    }
}

/// `(q[i], p[i])`.
pub fn shift_fraction(f: &Fraction, i: i32) -> Fraction {
    if i == 0 {
        return f.clone();
    }
    Fraction::new_unchecked(shift_map(f.q(), i), shift_map(f.p(), i))
}

/// `g.p ∘ s` where `s` lifts `u: P -> src(g)` through `g.q`.
pub fn push_cocycle(u: &ChainMap, g: &Fraction) -> ChainMap {
    let (s, _) = lift_through_qis(u, g.q()).expect("left leg of a fraction is a quasi-isomorphism");
    g.p().compose(&s)
}

pub fn class_of_roof(f: &Fraction) -> DerivedClass {
    ExtGroup::new(f.src(), f.dst(), 0)
        .class_of_roof(f)
        .expect("boundaries match")
}

/// `src <-eps- P -u-> dst[degree]`.
pub fn roof_of_class(c: &DerivedClass) -> Fraction {
    Fraction::new_unchecked(c.ext.resolution().eps.clone(), c.cocycle.clone())
}

/// `c2 ∘ c1` for `c1 ∈ Hom_D(A, B[i])`, `c2 ∈ Hom_D(B, C[j])`, in
/// `Hom_D(A, C[i+j])` on the resolution of `c1`.
pub fn compose_classes(c2: &DerivedClass, c1: &DerivedClass) -> Result<DerivedClass> {
    if c1.dst() != c2.src() {
        bail!(Mismatch, "classes are not composable");
    }
    let i = c1.degree();
    let eps_b = shift_map(&c2.ext.resolution().eps, i);
    let (s, _) = lift_through_qis(&c1.cocycle, &eps_b)?;
    let u2 = shift_map(&c2.cocycle, i);
    let ext = ExtGroup::with_resolution(c1.ext.resolution(), c2.dst(), i + c2.degree());
    ext.class_of_cocycle(&u2.compose(&s))
}

/// Solves `a x = b` in `g` (the columns of `a` are free unknowns).
fn solve_in(a: &IntMatrix, g: &FpGroup, b: &[Int]) -> Option<Vec<Int>> {
    if a.cols() == 0 {
        return g.is_zero_elem(b).then(Vec::new);
    }
    GroupMorphism::new_unchecked(FpGroup::free(a.cols()), g.clone(), a.clone()).preimage(b)
}

/// For `target: P -> A` with `P` free and `q: M -> A`, some `s: P -> M` with
/// a homotopy `target => q∘s`. Fails when no lift exists, which cannot
/// happen for a quasi-isomorphism `q`.
pub fn lift_through_qis(target: &ChainMap, q: &ChainMap) -> Result<(ChainMap, ChainHomotopy)> {
    let p = target.src();
    let (m, a) = (q.src(), q.dst());
    if target.dst() != a {
        bail!(
            Mismatch,
            "lift target and quasi-isomorphism have different codomains"
        );
    }
    if !p.is_free() {
        bail!(
            Precondition,
            "lifting needs a complex of free groups as source"
        );
    }
    let pm = HomComplex::window(p, m, 0, 1);
    let pa = HomComplex::window(p, a, -1, 0);
    let (n_s, n_h) = (pm.len(0), pa.len(-1));
    let (r1, r0) = (pm.len(1), pa.len(0));
    // [[D_M, 0], [q_*, -D_A]] (s, h) = (0, target)
    let dm = pm.complex().diff_matrix(0);
    let qs = pm.post_compose_matrix(&pa, q, 0);
    let da = pa.complex().diff_matrix(-1);
    let sys = IntMatrix::blocks(&[r1, r0], &[n_s, n_h], |i, j| match (i, j) {
        (0, 0) => Some(dm.clone()),
        (1, 0) => Some(qs.clone()),
        (1, 1) => Some(da.neg()),
        _ => None,
    });
    let g = pm.term(1).direct_sum(&pa.term(0));
    let mut b = vec![Int::zero(); r1];
    b.extend(pa.encode_map(target));
    let Some(x) = solve_in(&sys, &g, &b) else {
        bail!(NotQuasiIso, "the map does not lift up to homotopy");
    };
    let s = pm.decode_map(&x[..n_s]);
    let qs_map = q.compose(&s);
    let hv = &x[n_s..];
    let h = ChainHomotopy::build(target, &qs_map, |k| pa.component(-1, hv, k));
    Ok((s, h))
}

/// A homotopy `f => g`, if one exists.
pub fn homotopic(f: &ChainMap, g: &ChainMap) -> Option<ChainHomotopy> {
    if f.src() != g.src() || f.dst() != g.dst() {
        return None;
    }
    let hom = HomComplex::window(f.src(), f.dst(), -1, 0);
    let b = vec_sub(&hom.encode_map(g), &hom.encode_map(f));
    let x = solve_in(&hom.complex().diff_matrix(-1), &hom.term(0), &b)?;
    Some(ChainHomotopy::build(f, g, |k| hom.component(-1, &x, k)))
}
