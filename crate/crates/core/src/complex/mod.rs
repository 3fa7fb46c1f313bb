//! Bounded cochain complexes of finitely presented groups, chain maps and
//! homotopies.

mod cone;
mod les;
mod ops;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{bail, Result};
use crate::zmodule::{ColumnEchelon, FpGroup, GroupMorphism, Int, IntMatrix};

pub use cone::{cocone, cocone_to_shifted_cone, mapping_cone, Cocone, MappingCone};
pub use les::{cone_les, connecting_map, exact_at, ses_les, LesNode, LongExactSequence};
pub use ops::{
    codiagonal, diagonal, direct_sum, direct_sum_maps, shift, shift_homotopy, shift_map,
    truncate_ge_bad, truncate_ge_good, truncate_le_bad, truncate_le_good, DirectSum,
};

/// Bounded cochain complex; terms outside `[lo, hi]` are zero.
#[derive(Clone)]
pub struct Complex(Arc<ComplexData>);

struct ComplexData {
    lo: i32,
    terms: Vec<FpGroup>,
    // diffs[k]: terms[k] -> terms[k + 1]
    diffs: Vec<IntMatrix>,
    cohomology: Vec<OnceLock<Cohomology>>,
}

impl Complex {
    /// Validated constructor: shapes, well-definedness and `d∘d = 0`.
    pub fn new(lo: i32, terms: Vec<FpGroup>, diffs: Vec<IntMatrix>) -> Result<Complex> {
        if diffs.len() != terms.len().saturating_sub(1) {
            bail!(
                Dimension,
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            );
        }
        for (k, d) in diffs.iter().enumerate() {
            let n = lo + k as i32;
            let dm = GroupMorphism::new(terms[k].clone(), terms[k + 1].clone(), d.clone())
                .map_err(|e| {
                    crate::Error::NotAComplex(format!("differential in degree {n}: {e}"))
                })?;
            if k + 1 < diffs.len() {
                let next = GroupMorphism::new_unchecked(
                    terms[k + 1].clone(),
                    terms[k + 2].clone(),
                    diffs[k + 1].clone(),
                );
                if !next.compose(&dm).is_zero() {
                    bail!(NotAComplex, "d∘d is nonzero starting in degree {n}");
                }
            }
        }
        Ok(Self::raw(lo, terms, diffs))
    }

    /// Trusted constructor for internal constructions; the invariants are
    /// still re-checked and a violation is a bug.
    pub(crate) fn build(lo: i32, terms: Vec<FpGroup>, diffs: Vec<IntMatrix>) -> Complex {
        match Self::new(lo, terms, diffs) {
            Ok(c) => c,
            Err(e) => panic!("internal construction produced an invalid complex: {e}"),
        }
    }

    /// Builds from degree-indexed closures over `[lo, hi]`.
    pub(crate) fn build_fn(
        lo: i32,
        hi: i32,
        term: impl Fn(i32) -> FpGroup,
        diff: impl Fn(i32) -> IntMatrix,
    ) -> Complex {
        let terms: Vec<FpGroup> = (lo..=hi).map(&term).collect();
        let diffs = (lo..hi).map(&diff).collect();
        Self::build(lo, terms, diffs)
    }

    fn raw(lo: i32, mut terms: Vec<FpGroup>, mut diffs: Vec<IntMatrix>) -> Complex {
        // trim zero terms at both ends so that equality is structural
        let mut lo = lo;
        while !terms.is_empty() && terms[0].n_gens() == 0 {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while !terms.is_empty() && terms[terms.len() - 1].n_gens() == 0 {
            terms.pop();
            diffs.pop();
        }
        if terms.is_empty() {
            lo = 0;
        }
        let cohomology = (0..terms.len()).map(|_| OnceLock::new()).collect();
        Complex(Arc::new(ComplexData {
            lo,
            terms,
            diffs,
            cohomology,
        }))
    }

    pub fn zero() -> Complex {
        Self::raw(0, vec![], vec![])
    }

    /// `g` placed in degree `n`.
    pub fn concentrated(g: FpGroup, n: i32) -> Complex {
        Self::raw(n, vec![g], vec![])
    }

    /// `a --d--> b` in degrees `n, n + 1`.
    pub fn two_term(a: FpGroup, b: FpGroup, d: IntMatrix, n: i32) -> Result<Complex> {
        Self::new(n, vec![a, b], vec![d])
    }

    pub fn lo(&self) -> i32 {
        self.0.lo
    }

    /// Highest possibly nonzero degree (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.0.lo + self.0.terms.len() as i32 - 1
    }

    pub fn is_zero_complex(&self) -> bool {
        self.0.terms.is_empty()
    }

    fn idx(&self, n: i32) -> Option<usize> {
        if n < self.lo() || n > self.hi() {
            None
        } else {
            Some((n - self.lo()) as usize)
        }
    }

    pub fn term(&self, n: i32) -> FpGroup {
        match self.idx(n) {
            Some(k) => self.0.terms[k].clone(),
            None => FpGroup::zero(),
        }
    }

    pub fn rank(&self, n: i32) -> usize {
        self.idx(n).map(|k| self.0.terms[k].n_gens()).unwrap_or(0)
    }

    /// Matrix of `d^n : K^n -> K^{n+1}`.
    pub fn diff_matrix(&self, n: i32) -> IntMatrix {
        match (self.idx(n), self.idx(n + 1)) {
            (Some(k), Some(_)) => self.0.diffs[k].clone(),
            _ => IntMatrix::zeros(self.rank(n + 1), self.rank(n)),
        }
    }

    pub fn diff(&self, n: i32) -> GroupMorphism {
        GroupMorphism::new_unchecked(self.term(n), self.term(n + 1), self.diff_matrix(n))
    }

    /// All terms free (no relations).
    pub fn is_free(&self) -> bool {
        self.0.terms.iter().all(FpGroup::is_free)
    }

    /// Terms vanish outside `[a, b]`.
    pub fn is_within(&self, a: i32, b: i32) -> bool {
        self.is_zero_complex() || (self.lo() >= a && self.hi() <= b)
    }

    pub fn is_length3(&self) -> bool {
        self.is_within(-2, 0)
    }

    pub fn cohomology(&self, n: i32) -> Cohomology {
        match self.idx(n) {
            Some(k) => self.0.cohomology[k]
                .get_or_init(|| Cohomology::compute(self, n))
                .clone(),
            None => Cohomology::compute(self, n),
        }
    }

    /// True iff every cohomology group vanishes.
    pub fn is_acyclic(&self) -> bool {
        (self.lo()..=self.hi()).all(|n| self.cohomology(n).group.is_trivial())
    }

    /// Elementary divisors of `H^n` for `n` in `[lo, hi]`.
    pub fn cohomology_profile(&self) -> Vec<(i32, Vec<Int>)> {
        (self.lo()..=self.hi())
            .map(|n| (n, self.cohomology(n).group.elementary_divisors()))
            .collect()
    }

    pub fn same_as(&self, other: &Complex) -> bool {
        self == other
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.lo == other.0.lo
                && self.0.terms == other.0.terms
                && self.0.diffs == other.0.diffs)
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Complex [{}, {}]", self.lo(), self.hi())?;
        for n in self.lo()..=self.hi() {
            writeln!(f, "  deg {n}: {:?}", self.term(n))?;
            if n < self.hi() {
                writeln!(f, "  d {n}: {}", self.diff_matrix(n))?;
            }
        }
        Ok(())
    }
}

/// `H^n` presented on a basis of the cocycle lattice.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i32,
    pub group: FpGroup,
    /// Columns: a basis of the lattice of cocycle representatives in `K^n`.
    pub cycles: IntMatrix,
    echelon: ColumnEchelon,
}

impl Cohomology {
    fn compute(k: &Complex, n: i32) -> Cohomology {
        let (z, inc) = k.diff(n).kernel();
        let cycles = inc.matrix().clone();
        let echelon = ColumnEchelon::new(&cycles);
        let mut rel = z.relations().clone();
        let prev = k.diff_matrix(n - 1);
        let bnd: Vec<Vec<Int>> = prev
            .columns()
            .iter()
            .map(|c| echelon.coordinates(c).expect("boundaries are cocycles"))
            .collect();
        if !bnd.is_empty() {
            rel = rel.vstack(&IntMatrix::from_rows(&bnd, cycles.cols()));
        }
        let group = FpGroup::new(cycles.cols(), rel).expect("shape");
        Cohomology {
            degree: n,
            group,
            cycles,
            echelon,
        }
    }

    /// Generator coordinates of the class of a cocycle; `None` if `v` is not
    /// a cocycle representative.
    pub fn class_of(&self, v: &[Int]) -> Option<Vec<Int>> {
        self.echelon.coordinates(v)
    }

    /// Canonical coordinates of the class of a cocycle.
    pub fn canonical(&self, v: &[Int]) -> Option<Vec<Int>> {
        Some(self.group.coords(&self.class_of(v)?))
    }

    /// A cocycle representing the given generator coordinates.
    pub fn representative(&self, y: &[Int]) -> Vec<Int> {
        self.cycles.mul_vec(y)
    }

    /// A cocycle representing the given canonical coordinates.
    pub fn representative_canonical(&self, c: &[Int]) -> Vec<Int> {
        self.representative(&self.group.from_coords(c))
    }
}

/// Induced map `H^n(src) -> H^n(dst)` of a degreewise map `m: src^n -> dst^n`
/// that sends cocycles to cocycles and coboundaries to coboundaries.
pub fn induced_on_cohomology(m: &IntMatrix, hs: &Cohomology, hd: &Cohomology) -> GroupMorphism {
    let cols: Vec<Vec<Int>> = hs
        .cycles
        .columns()
        .iter()
        .map(|c| {
            hd.class_of(&m.mul_vec(c))
                .expect("image of a cocycle is a cocycle")
        })
        .collect();
    GroupMorphism::new_unchecked(
        hs.group.clone(),
        hd.group.clone(),
        IntMatrix::from_columns(&cols, hd.group.n_gens()),
    )
}

/// Degreewise maps commuting with the differentials.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    src: Complex,
    dst: Complex,
    lo: i32,
    mats: Vec<IntMatrix>,
}

fn joint_range(a: &Complex, b: &Complex) -> (i32, i32) {
    match (a.is_zero_complex(), b.is_zero_complex()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo(), b.hi()),
        (false, true) => (a.lo(), a.hi()),
        (false, false) => (a.lo().min(b.lo()), a.hi().max(b.hi())),
    }
}

impl ChainMap {
    /// Validated constructor; `mats[k]` is the component in degree `lo + k`,
    /// missing components are zero.
    pub fn new(src: &Complex, dst: &Complex, lo: i32, mats: Vec<IntMatrix>) -> Result<ChainMap> {
        let f = Self::assemble(src, dst, |n| {
            let k = n - lo;
            if k >= 0 && (k as usize) < mats.len() {
                Some(mats[k as usize].clone())
            } else {
                None
            }
        })?;
        f.check()?;
        Ok(f)
    }

    fn assemble(
        src: &Complex,
        dst: &Complex,
        comp: impl Fn(i32) -> Option<IntMatrix>,
    ) -> Result<ChainMap> {
        let (a, b) = joint_range(src, dst);
        let mut mats = Vec::new();
        for n in a..=b {
            let shape = (dst.rank(n), src.rank(n));
            match comp(n) {
                Some(m) if m.shape() != shape => bail!(
                    Dimension,
                    "component in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                ),
                Some(m) => mats.push(m),
                None => mats.push(IntMatrix::zeros(shape.0, shape.1)),
            }
        }
        Ok(ChainMap {
            src: src.clone(),
            dst: dst.clone(),
            lo: a,
            mats,
        })
    }

    fn check(&self) -> Result<()> {
        let (a, b) = joint_range(&self.src, &self.dst);
        for n in a..=b {
            let f = self.component(n);
            GroupMorphism::new(f.src().clone(), f.dst().clone(), f.matrix().clone())
                .map_err(|e| crate::Error::NotAChainMap(format!("component {n}: {e}")))?;
        }
        for n in a - 1..=b {
            let lhs = self.dst.diff(n).compose(&self.component(n));
            let rhs = self.component(n + 1).compose(&self.src.diff(n));
            if !lhs.equals(&rhs) {
                bail!(NotAChainMap, "d∘f != f∘d in degree {n}");
            }
        }
        Ok(())
    }

    /// Trusted constructor from a component closure; validated, panics on bug.
    pub(crate) fn build(src: &Complex, dst: &Complex, comp: impl Fn(i32) -> IntMatrix) -> ChainMap {
        let f = Self::assemble(src, dst, |n| Some(comp(n))).unwrap_or_else(|e| panic!("{e}"));
        if let Err(e) = f.check() {
            panic!("internal construction produced an invalid chain map: {e}");
        }
        f
    }

    /// Same as `build` without rechecking commutation.
    pub(crate) fn build_unchecked(
        src: &Complex,
        dst: &Complex,
        comp: impl Fn(i32) -> IntMatrix,
    ) -> ChainMap {
        Self::assemble(src, dst, |n| Some(comp(n))).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn identity(k: &Complex) -> ChainMap {
        Self::build_unchecked(k, k, |n| IntMatrix::identity(k.rank(n)))
    }

    pub fn zero(src: &Complex, dst: &Complex) -> ChainMap {
        Self::build_unchecked(src, dst, |n| IntMatrix::zeros(dst.rank(n), src.rank(n)))
    }

    pub fn src(&self) -> &Complex {
        &self.src
    }

    pub fn dst(&self) -> &Complex {
        &self.dst
    }

    pub fn matrix(&self, n: i32) -> IntMatrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.mats.len() {
            self.mats[k as usize].clone()
        } else {
            IntMatrix::zeros(self.dst.rank(n), self.src.rank(n))
        }
    }

    pub fn component(&self, n: i32) -> GroupMorphism {
        GroupMorphism::new_unchecked(self.src.term(n), self.dst.term(n), self.matrix(n))
    }

    /// Degree range over which components may be nonzero.
    pub fn range(&self) -> (i32, i32) {
        joint_range(&self.src, &self.dst)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> ChainMap {
        debug_assert!(
            f.dst == self.src,
            "composition of chain maps with mismatched complexes"
        );
        let g = self;
        Self::build_unchecked(&f.src, &g.dst, |n| g.matrix(n).mul(&f.matrix(n)))
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        Self::build_unchecked(&self.src, &self.dst, |n| self.matrix(n).add(&o.matrix(n)))
    }

    pub fn sub(&self, o: &ChainMap) -> ChainMap {
        Self::build_unchecked(&self.src, &self.dst, |n| self.matrix(n).sub(&o.matrix(n)))
    }

    pub fn neg(&self) -> ChainMap {
        Self::build_unchecked(&self.src, &self.dst, |n| self.matrix(n).neg())
    }

    pub fn scale(&self, c: &Int) -> ChainMap {
        Self::build_unchecked(&self.src, &self.dst, |n| self.matrix(n).scale(c))
    }

    /// Same components viewed between structurally equal complexes.
    pub fn retarget(&self, src: &Complex, dst: &Complex) -> Result<ChainMap> {
        let (a, b) = self.range();
        ChainMap::new(src, dst, a, (a..=b).map(|n| self.matrix(n)).collect())
    }

    /// Degreewise equality as homomorphisms.
    pub fn equals(&self, o: &ChainMap) -> bool {
        let (a, b) = self.range();
        (a..=b).all(|n| self.component(n).equals(&o.component(n)))
    }

    pub fn is_zero(&self) -> bool {
        let (a, b) = self.range();
        (a..=b).all(|n| self.component(n).is_zero())
    }

    pub fn on_cohomology(&self, n: i32) -> GroupMorphism {
        induced_on_cohomology(
            &self.matrix(n),
            &self.src.cohomology(n),
            &self.dst.cohomology(n),
        )
    }

    pub fn is_quasi_iso(&self) -> bool {
        let (a, b) = self.range();
        (a..=b).all(|n| self.on_cohomology(n).is_iso())
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap(")?;
        let (a, b) = self.range();
        for n in a..=b {
            write!(f, " {n}: {}", self.matrix(n))?;
        }
        write!(f, " )")
    }
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    f.is_quasi_iso()
}

/// `to - from = d∘h + h∘d`, with `h^n : src^n -> dst^{n-1}`.
#[derive(Clone, Debug)]
pub struct ChainHomotopy {
    from: ChainMap,
    to: ChainMap,
    lo: i32,
    mats: Vec<IntMatrix>,
}

impl ChainHomotopy {
    /// Validated constructor; `mats[k]` is `h^{lo + k}`.
    pub fn new(
        from: &ChainMap,
        to: &ChainMap,
        lo: i32,
        mats: Vec<IntMatrix>,
    ) -> Result<ChainHomotopy> {
        let h = Self::assemble(from, to, |n| {
            let k = n - lo;
            if k >= 0 && (k as usize) < mats.len() {
                Some(mats[k as usize].clone())
            } else {
                None
            }
        })?;
        if !h.check() {
            bail!(InvalidHomotopy, "to - from != d∘h + h∘d");
        }
        Ok(h)
    }

    fn assemble(
        from: &ChainMap,
        to: &ChainMap,
        comp: impl Fn(i32) -> Option<IntMatrix>,
    ) -> Result<ChainHomotopy> {
        let (src, dst) = (&from.src, &from.dst);
        let (a, b) = joint_range(src, dst);
        let mut mats = Vec::new();
        for n in a..=b + 1 {
            let shape = (dst.rank(n - 1), src.rank(n));
            match comp(n) {
                Some(m) if m.shape() != shape => bail!(
                    Dimension,
                    "homotopy component in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    shape.0,
                    shape.1
                ),
                Some(m) => mats.push(m),
                None => mats.push(IntMatrix::zeros(shape.0, shape.1)),
            }
        }
        Ok(ChainHomotopy {
            from: from.clone(),
            to: to.clone(),
            lo: a,
            mats,
        })
    }

    pub(crate) fn build(
        from: &ChainMap,
        to: &ChainMap,
        comp: impl Fn(i32) -> IntMatrix,
    ) -> ChainHomotopy {
        let h = Self::assemble(from, to, |n| Some(comp(n))).unwrap_or_else(|e| panic!("{e}"));
        assert!(
            h.check(),
            "internal construction produced an invalid homotopy"
        );
        h
    }

    pub(crate) fn build_unchecked(
        from: &ChainMap,
        to: &ChainMap,
        comp: impl Fn(i32) -> IntMatrix,
    ) -> ChainHomotopy {
        Self::assemble(from, to, |n| Some(comp(n))).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn zero(f: &ChainMap) -> ChainHomotopy {
        let (s, d) = (f.src.clone(), f.dst.clone());
        Self::build_unchecked(f, f, |n| IntMatrix::zeros(d.rank(n - 1), s.rank(n)))
    }

    /// The homotopy `h` from `f` to `f + d∘h + h∘d`.
    pub fn from_data(f: &ChainMap, comp: impl Fn(i32) -> IntMatrix) -> ChainHomotopy {
        let tmp = Self::build_unchecked(f, f, comp);
        let to = f.add(&tmp.boundary());
        ChainHomotopy { to, ..tmp }
    }

    pub fn from(&self) -> &ChainMap {
        &self.from
    }

    pub fn to(&self) -> &ChainMap {
        &self.to
    }

    pub fn matrix(&self, n: i32) -> IntMatrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.mats.len() {
            self.mats[k as usize].clone()
        } else {
            IntMatrix::zeros(self.from.dst.rank(n - 1), self.from.src.rank(n))
        }
    }

    /// The chain map `d∘h + h∘d`.
    pub fn boundary(&self) -> ChainMap {
        let (src, dst) = (&self.from.src, &self.from.dst);
        ChainMap::build_unchecked(src, dst, |n| {
            dst.diff_matrix(n - 1)
                .mul(&self.matrix(n))
                .add(&self.matrix(n + 1).mul(&src.diff_matrix(n)))
        })
    }

    pub fn check(&self) -> bool {
        let (a, b) = self.from.range();
        let bd = self.boundary();
        let diff = self.to.sub(&self.from);
        (a..=b + 1).all(|n| {
            let h = GroupMorphism::new(
                self.from.src.term(n),
                self.from.dst.term(n - 1),
                self.matrix(n),
            );
            h.is_ok() && diff.component(n).equals(&bd.component(n))
        })
    }

    pub fn neg(&self) -> ChainHomotopy {
        ChainHomotopy {
            from: self.to.clone(),
            to: self.from.clone(),
            lo: self.lo,
            mats: self.mats.iter().map(IntMatrix::neg).collect(),
        }
    }

    /// Concatenation: `self: f => g`, `next: g => k` gives `f => k`.
    pub fn then(&self, next: &ChainHomotopy) -> ChainHomotopy {
        let h = Self::build_unchecked(&self.from, &next.to, |n| {
            self.matrix(n).add(&next.matrix(n))
        });
        debug_assert!(h.check());
        h
    }

    /// `g∘h` as a homotopy `g∘from => g∘to`.
    pub fn post_compose(&self, g: &ChainMap) -> ChainHomotopy {
        ChainHomotopy::build_unchecked(&g.compose(&self.from), &g.compose(&self.to), |n| {
            g.matrix(n - 1).mul(&self.matrix(n))
        })
    }

    /// `h∘f` as a homotopy `from∘f => to∘f`.
    pub fn pre_compose(&self, f: &ChainMap) -> ChainHomotopy {
        ChainHomotopy::build_unchecked(&self.from.compose(f), &self.to.compose(f), |n| {
            self.matrix(n).mul(&f.matrix(n))
        })
    }
}

pub fn homotopy_check(h: &ChainHomotopy) -> bool {
    h.check()
}

#[cfg(test)]
mod tests;
