//! Finitely presented abelian groups and their homomorphisms.

use std::fmt;
use std::sync::Arc;

use super::echelon::{lattice_basis, ColumnEchelon};
use super::int::Int;
use super::matrix::{vec_is_zero, IntMatrix};
use super::snf::{smith_diagonal, smith_full};
use crate::error::{bail, Result};

/// `Z^n_gens / rowspan(relations)`.
///
/// Canonical coordinates are computed once at construction: the group is
/// identified with `Z/c_1 + ... + Z/c_k` (`c_i` nonunit, `0` meaning `Z`), and
/// an element is sent to its residues. Groups built by `new` use the Smith
/// form, so the `c_i` are the elementary divisors; direct sums reuse the
/// coordinates of their summands.
#[derive(Clone)]
pub struct FpGroup(Arc<GroupData>);

struct GroupData {
    n_gens: usize,
    relations: IntMatrix,
    factors: Vec<Int>,
    // k x n and n x k; `None` means identity (free groups)
    proj: Option<IntMatrix>,
    lift: Option<IntMatrix>,
}

impl FpGroup {
    pub fn new(n_gens: usize, relations: IntMatrix) -> Result<FpGroup> {
        if relations.cols() != n_gens {
            bail!(
                Dimension,
                "relation matrix has {} columns, expected {}",
                relations.cols(),
                n_gens
            );
        }
        Ok(Self::build(n_gens, relations))
    }

    fn build(n_gens: usize, relations: IntMatrix) -> FpGroup {
        if relations.is_zero() {
            return FpGroup(Arc::new(GroupData {
                n_gens,
                relations,
                factors: vec![Int::zero(); n_gens],
                proj: None,
                lift: None,
            }));
        }
        let full = smith_full(&relations);
        let diag = full.dec.diagonal();
        let mut factors = Vec::new();
        let mut kept = Vec::new();
        for k in 0..n_gens {
            let d = diag.get(k).cloned().unwrap_or_else(Int::zero);
            if !d.is_one() {
                factors.push(d);
                kept.push(k);
            }
        }
        // w = V^T v, inverse V^{-T}
        let proj = full.dec.v.select_columns(&kept).transpose();
        let lift = full.v_inv.select_rows(&kept).transpose();
        FpGroup(Arc::new(GroupData {
            n_gens,
            relations,
            factors,
            proj: Some(proj),
            lift: Some(lift),
        }))
    }

    pub fn free(n: usize) -> FpGroup {
        Self::build(n, IntMatrix::zeros(0, n))
    }

    pub fn zero() -> FpGroup {
        Self::free(0)
    }

    /// `Z/m`; `m = 0` gives `Z`.
    pub fn cyclic(m: i64) -> FpGroup {
        if m == 0 {
            Self::free(1)
        } else {
            Self::build(1, IntMatrix::lit(&[&[m]]))
        }
    }

    /// `Z/d_1 + ... + Z/d_k`, one generator each (0 gives a free summand).
    pub fn from_divisors(ds: &[i64]) -> FpGroup {
        let rows: Vec<Vec<Int>> = ds
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let mut r = vec![Int::zero(); ds.len()];
                r[i] = Int::from(d);
                r
            })
            .collect();
        Self::build(ds.len(), IntMatrix::from_rows(&rows, ds.len()))
    }

    pub fn n_gens(&self) -> usize {
        self.0.n_gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.0.relations
    }

    pub fn is_free(&self) -> bool {
        self.0.relations.is_zero()
    }

    /// Nonunit elementary divisors in divisibility order, zeros (free rank) last.
    pub fn elementary_divisors(&self) -> Vec<Int> {
        let f = &self.0.factors;
        let chain = f
            .windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].div_exact(&w[0]).is_some()));
        if chain {
            return f.clone();
        }
        let k = f.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, d) in f.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        let mut d: Vec<Int> = smith_diagonal(&m)
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        // the Smith diagonal lists zeros last already; keep that order
        d.sort_by_key(|x| x.is_zero());
        d
    }

    pub fn is_trivial(&self) -> bool {
        self.0.factors.is_empty()
    }

    pub fn free_rank(&self) -> usize {
        self.0.factors.iter().filter(|d| d.is_zero()).count()
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        let mut n = Int::one();
        for d in &self.0.factors {
            if d.is_zero() {
                return None;
            }
            n = &n * d;
        }
        Some(n)
    }

    /// Orders of the cyclic factors behind the canonical coordinates.
    pub fn canonical_factors(&self) -> &[Int] {
        &self.0.factors
    }

    /// Number of canonical coordinates.
    pub fn canonical_len(&self) -> usize {
        self.0.factors.len()
    }

    /// Canonical coordinates of an element given on the generators, reduced
    /// into `[0, c)` (unreduced when `c = 0`).
    pub fn coords(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.n_gens(), "element length");
        let d = &*self.0;
        let w = match &d.proj {
            None => v.to_vec(),
            Some(p) => p.mul_vec(v),
        };
        w.into_iter()
            .zip(&d.factors)
            .map(|(x, m)| if m.is_zero() { x } else { x.rem_euclid(m) })
            .collect()
    }

    /// Element on the generators with the given canonical coordinates.
    pub fn from_coords(&self, c: &[Int]) -> Vec<Int> {
        assert_eq!(c.len(), self.canonical_len(), "coordinate length");
        match &self.0.lift {
            None => c.to_vec(),
            Some(l) => l.mul_vec(c),
        }
    }

    pub fn is_zero_elem(&self, v: &[Int]) -> bool {
        vec_is_zero(&self.coords(v))
    }

    pub fn elems_equal(&self, a: &[Int], b: &[Int]) -> bool {
        self.coords(a) == self.coords(b)
    }

    /// Canonical representative of the class of `v`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        self.from_coords(&self.coords(v))
    }

    /// All canonical coordinate vectors of a finite group.
    pub fn canonical_elements(&self) -> Option<Vec<Vec<Int>>> {
        let mut out = vec![vec![]];
        for d in &self.0.factors {
            let m = d.to_i64().filter(|&m| m > 0)?;
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for prefix in &out {
                for a in 0..m {
                    let mut p = prefix.clone();
                    p.push(Int::from(a));
                    next.push(p);
                }
            }
            out = next;
        }
        Some(out)
    }

    pub fn is_isomorphic(&self, other: &FpGroup) -> bool {
        self.elementary_divisors() == other.elementary_divisors()
    }

    /// Direct sum; canonical coordinates are the concatenation.
    pub fn direct_sum(&self, other: &FpGroup) -> FpGroup {
        let (a, b) = (&*self.0, &*other.0);
        let relations = IntMatrix::block_diag(&a.relations, &b.relations);
        let n_gens = a.n_gens + b.n_gens;
        if a.proj.is_none() && b.proj.is_none() {
            return Self::build(n_gens, relations);
        }
        let id = |g: &GroupData| IntMatrix::identity(g.n_gens);
        let proj = IntMatrix::block_diag(
            a.proj.as_ref().unwrap_or(&id(a)),
            b.proj.as_ref().unwrap_or(&id(b)),
        );
        let lift = IntMatrix::block_diag(
            a.lift.as_ref().unwrap_or(&id(a)),
            b.lift.as_ref().unwrap_or(&id(b)),
        );
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().cloned());
        FpGroup(Arc::new(GroupData {
            n_gens,
            relations,
            factors,
            proj: Some(proj),
            lift: Some(lift),
        }))
    }

    /// Direct sum of several groups.
    pub fn direct_sum_all(gs: &[FpGroup]) -> FpGroup {
        gs.iter().fold(FpGroup::zero(), |acc, g| acc.direct_sum(g))
    }

    /// Same group with the relation rows replaced by a basis of their span.
    pub fn with_independent_relations(&self) -> FpGroup {
        let b = lattice_basis(&self.relations().transpose());
        if b.cols() == self.relations().rows() {
            return self.clone();
        }
        Self::build(self.n_gens(), b.transpose())
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); self.n_gens()];
        v[i] = Int::one();
        v
    }
}

impl PartialEq for FpGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n_gens == other.0.n_gens && self.0.relations == other.0.relations)
    }
}

impl Eq for FpGroup {}

impl fmt::Debug for FpGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FpGroup(gens={}, rel={})",
            self.n_gens(),
            self.relations()
        )
    }
}

/// Prints elementary divisors, e.g. `[2,0]`.
pub fn format_divisors(ds: &[Int]) -> String {
    let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// A homomorphism given on generators: column `j` is the image of generator `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMorphism {
    src: FpGroup,
    dst: FpGroup,
    matrix: IntMatrix,
}

impl GroupMorphism {
    pub fn new(src: FpGroup, dst: FpGroup, matrix: IntMatrix) -> Result<GroupMorphism> {
        if matrix.shape() != (dst.n_gens(), src.n_gens()) {
            bail!(
                Dimension,
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.n_gens(),
                src.n_gens()
            );
        }
        for (k, r) in src.relations().row_vectors().iter().enumerate() {
            if !dst.is_zero_elem(&matrix.mul_vec(r)) {
                bail!(
                    IllDefined,
                    "relation {} of the source is not sent to zero",
                    k
                );
            }
        }
        Ok(GroupMorphism { src, dst, matrix })
    }

    /// Caller guarantees shape and well-definedness.
    pub(crate) fn new_unchecked(src: FpGroup, dst: FpGroup, matrix: IntMatrix) -> GroupMorphism {
        debug_assert_eq!(matrix.shape(), (dst.n_gens(), src.n_gens()));
        GroupMorphism { src, dst, matrix }
    }

    pub fn identity(g: &FpGroup) -> GroupMorphism {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.n_gens()))
    }

    pub fn zero(src: &FpGroup, dst: &FpGroup) -> GroupMorphism {
        Self::new_unchecked(
            src.clone(),
            dst.clone(),
            IntMatrix::zeros(dst.n_gens(), src.n_gens()),
        )
    }

    pub fn src(&self) -> &FpGroup {
        &self.src
    }

    pub fn dst(&self) -> &FpGroup {
        &self.dst
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[Int]) -> Vec<Int> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GroupMorphism) -> GroupMorphism {
        assert_eq!(f.dst.n_gens(), self.src.n_gens(), "composition shape");
        Self::new_unchecked(f.src.clone(), self.dst.clone(), self.matrix.mul(&f.matrix))
    }

    pub fn add(&self, other: &GroupMorphism) -> GroupMorphism {
        Self::new_unchecked(
            self.src.clone(),
            self.dst.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn sub(&self, other: &GroupMorphism) -> GroupMorphism {
        Self::new_unchecked(
            self.src.clone(),
            self.dst.clone(),
            self.matrix.sub(&other.matrix),
        )
    }

    pub fn neg(&self) -> GroupMorphism {
        Self::new_unchecked(self.src.clone(), self.dst.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: &Int) -> GroupMorphism {
        Self::new_unchecked(self.src.clone(), self.dst.clone(), self.matrix.scale(c))
    }

    /// Zero as a homomorphism (every generator lands in the relations).
    pub fn is_zero(&self) -> bool {
        (0..self.src.n_gens()).all(|j| self.dst.is_zero_elem(&self.matrix.column(j)))
    }

    /// Equality as homomorphisms, not as matrices.
    pub fn equals(&self, other: &GroupMorphism) -> bool {
        self.sub(other).is_zero()
    }

    /// Integer lattice of generator vectors of the source sent into the
    /// relations of the target, as a column basis.
    fn kernel_lattice(&self) -> IntMatrix {
        let n = self.src.n_gens();
        let a = self.matrix.hstack(&self.dst.relations().transpose());
        let k = ColumnEchelon::new(&a).kernel();
        lattice_basis(&k.submatrix(0, n, 0, k.cols()))
    }

    pub fn kernel(&self) -> (FpGroup, GroupMorphism) {
        let basis = self.kernel_lattice();
        let e = ColumnEchelon::new(&basis);
        let rows: Vec<Vec<Int>> = self
            .src
            .relations()
            .row_vectors()
            .iter()
            .map(|r| e.coordinates(r).expect("relations lie in the kernel"))
            .collect();
        let k = FpGroup::build(basis.cols(), IntMatrix::from_rows(&rows, basis.cols()));
        let inc = Self::new_unchecked(k.clone(), self.src.clone(), basis);
        (k, inc)
    }

    pub fn cokernel(&self) -> (FpGroup, GroupMorphism) {
        let rel = self.dst.relations().vstack(&self.matrix.transpose());
        let c = FpGroup::build(self.dst.n_gens(), rel);
        let proj =
            Self::new_unchecked(self.dst.clone(), c.clone(), IntMatrix::identity(c.n_gens()));
        (c, proj)
    }

    /// Image presented on the source generators.
    pub fn image(&self) -> (FpGroup, GroupMorphism) {
        let basis = self.kernel_lattice();
        let im = FpGroup::build(self.src.n_gens(), basis.transpose());
        let inc = Self::new_unchecked(im.clone(), self.dst.clone(), self.matrix.clone());
        (im, inc)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `self(x) = y` in the target group.
    pub fn preimage(&self, y: &[Int]) -> Option<Vec<Int>> {
        let a = self.matrix.hstack(&self.dst.relations().transpose());
        let x = ColumnEchelon::new(&a).solve(y)?;
        Some(x[..self.src.n_gens()].to_vec())
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupMorphism> {
        if !self.is_injective() {
            return None;
        }
        let a = self.matrix.hstack(&self.dst.relations().transpose());
        let e = ColumnEchelon::new(&a);
        let n = self.src.n_gens();
        let mut cols = Vec::with_capacity(self.dst.n_gens());
        for i in 0..self.dst.n_gens() {
            let x = e.solve(&self.dst.unit_vector(i))?;
            cols.push(x[..n].to_vec());
        }
        Some(Self::new_unchecked(
            self.dst.clone(),
            self.src.clone(),
            IntMatrix::from_columns(&cols, n),
        ))
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupMorphism({:?} -> {:?}, {})",
            self.src, self.dst, self.matrix
        )
    }
}

/// `Hom(A, B)` as a group, with a basis of morphisms.
///
/// Matrices `m x n` (`m = B.n_gens`, `n = A.n_gens`) are encoded column-major,
/// entry `(i, j)` at position `j * m + i`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub group: FpGroup,
    pub basis: Vec<GroupMorphism>,
    src: FpGroup,
    dst: FpGroup,
    // group generators -> encoded matrices in B^n
    inclusion: GroupMorphism,
}

impl HomGroup {
    pub fn src(&self) -> &FpGroup {
        &self.src
    }

    pub fn dst(&self) -> &FpGroup {
        &self.dst
    }

    /// Morphism with the given coefficients on the basis.
    pub fn morphism(&self, coeffs: &[Int]) -> GroupMorphism {
        let enc = self.inclusion.apply(coeffs);
        GroupMorphism::new_unchecked(
            self.src.clone(),
            self.dst.clone(),
            decode(&enc, self.dst.n_gens(), self.src.n_gens()),
        )
    }

    /// Coefficients on the basis of a well-defined morphism `A -> B`.
    pub fn coefficients(&self, f: &GroupMorphism) -> Vec<Int> {
        let enc = encode(f.matrix());
        if self.src.is_free() {
            return enc;
        }
        self.inclusion
            .preimage(&enc)
            .expect("morphism is well-defined")
    }

    /// The encoding group `B^n` and the inclusion of `Hom(A, B)` into it.
    pub fn inclusion(&self) -> &GroupMorphism {
        &self.inclusion
    }
}

pub(crate) fn encode(m: &IntMatrix) -> Vec<Int> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            v.push(m[(i, j)].clone());
        }
    }
    v
}

pub(crate) fn decode(v: &[Int], rows: usize, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = v[j * rows + i].clone();
        }
    }
    m
}

/// `B^n` with block relations.
fn power(b: &FpGroup, n: usize) -> FpGroup {
    FpGroup::direct_sum_all(&vec![b.clone(); n])
}

pub fn hom_group(a: &FpGroup, b: &FpGroup) -> HomGroup {
    let m = b.n_gens();
    let n = a.n_gens();
    let bn = power(b, n);
    let (group, inclusion) = if a.is_free() {
        (bn.clone(), GroupMorphism::identity(&bn))
    } else {
        // M is well-defined iff M * R_A^T vanishes in B^{r_A}
        let ra = a.relations();
        let r = ra.rows();
        let target = power(b, r);
        let mut phi = IntMatrix::zeros(m * r, m * n);
        for j in 0..n {
            for i in 0..m {
                for t in 0..r {
                    phi[(t * m + i, j * m + i)] = ra[(t, j)].clone();
                }
            }
        }
        GroupMorphism::new_unchecked(bn, target, phi).kernel()
    };
    let basis = (0..group.n_gens())
        .map(|g| {
            let enc = inclusion.matrix().column(g);
            GroupMorphism::new_unchecked(a.clone(), b.clone(), decode(&enc, m, n))
        })
        .collect();
    HomGroup {
        group,
        basis,
        src: a.clone(),
        dst: b.clone(),
        inclusion,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmodule::matrix::ints;

    fn divs(g: &FpGroup) -> Vec<i64> {
        g.elementary_divisors()
            .iter()
            .map(|d| d.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divs(&FpGroup::free(1)), vec![0]);
        assert_eq!(divs(&FpGroup::from_divisors(&[2, 3])), vec![6]);
        assert_eq!(divs(&FpGroup::cyclic(1)), Vec::<i64>::new());
        assert_eq!(divs(&FpGroup::from_divisors(&[0, 2])), vec![2, 0]);
    }

    #[test]
    fn coords_round_trip() {
        let g = FpGroup::new(2, IntMatrix::lit(&[&[2, 4], &[6, 8]])).unwrap();
        for a in -5..5 {
            for b in -5..5 {
                let v = ints(&[a, b]);
                let c = g.coords(&v);
                let w = g.from_coords(&c);
                assert!(g.is_zero_elem(&crate::zmodule::matrix::vec_sub(&v, &w)));
            }
        }
    }

    #[test]
    fn times_two_on_z4() {
        let z4 = FpGroup::cyclic(4);
        let f = GroupMorphism::new(z4.clone(), z4.clone(), IntMatrix::lit(&[&[2]])).unwrap();
        assert_eq!(divs(&f.kernel().0), vec![2]);
        assert_eq!(divs(&f.image().0), vec![2]);
        assert_eq!(divs(&f.cokernel().0), vec![2]);
    }

    #[test]
    fn ill_defined_rejected() {
        let z2 = FpGroup::cyclic(2);
        let z3 = FpGroup::cyclic(3);
        assert!(GroupMorphism::new(z2, z3, IntMatrix::lit(&[&[1]])).is_err());
    }

    #[test]
    fn hom_examples() {
        let h = hom_group(&FpGroup::free(1), &FpGroup::cyclic(4));
        assert_eq!(divs(&h.group), vec![4]);
        let h = hom_group(&FpGroup::cyclic(2), &FpGroup::cyclic(3));
        assert!(h.group.is_trivial());
        let h = hom_group(&FpGroup::cyclic(4), &FpGroup::cyclic(6));
        assert_eq!(divs(&h.group), vec![2]);
        for b in &h.basis {
            GroupMorphism::new(b.src().clone(), b.dst().clone(), b.matrix().clone()).unwrap();
        }
    }

    #[test]
    fn inverse_of_iso() {
        let g = FpGroup::from_divisors(&[2, 3]);
        let z6 = FpGroup::cyclic(6);
        let f = GroupMorphism::new(g, z6, IntMatrix::lit(&[&[3, 2]])).unwrap();
        assert!(f.is_iso());
        let inv = f.inverse().unwrap();
        assert!(f.compose(&inv).equals(&GroupMorphism::identity(f.dst())));
        assert!(inv.compose(&f).equals(&GroupMorphism::identity(f.src())));
    }
}
