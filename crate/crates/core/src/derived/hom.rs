use crate::complex::{ChainHomotopy, ChainMap, Complex};
use crate::zmodule::{hom_group, FpGroup, GroupMorphism, HomGroup, Int, IntMatrix};

#[derive(Clone, Debug)]
struct Block {
    k: i32,
    hom: HomGroup,
    offset: usize,
}

/// `Hom^n(P, L) = ⊕_k Hom(P^k, L^{k+n})` with
/// `(D f) = d_L∘f - (-1)^n f∘d_P`, restricted to a window of degrees.
///
/// Elements of `Hom^n` are coefficient vectors: the concatenation over `k`
/// of coefficients on the basis of each `Hom(P^k, L^{k+n})`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    p: Complex,
    l: Complex,
    lo: i32,
    blocks: Vec<Vec<Block>>,
    complex: Complex,
}

fn sign(n: i32) -> Int {
    if n.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

impl HomComplex {
    /// All degrees where `Hom^n` can be nonzero.
    pub fn new(p: &Complex, l: &Complex) -> HomComplex {
        if p.is_zero_complex() || l.is_zero_complex() {
            return Self::window(p, l, 0, -1);
        }
        Self::window(p, l, l.lo() - p.hi(), l.hi() - p.lo())
    }

    /// Degrees `[a, b]` only; cohomology is correct strictly inside.
    pub fn window(p: &Complex, l: &Complex, a: i32, b: i32) -> HomComplex {
        let mut blocks = Vec::new();
        for n in a..=b {
            let mut bl = Vec::new();
            let mut offset = 0;
            if !p.is_zero_complex() {
                for k in p.lo()..=p.hi() {
                    if p.rank(k) == 0 || l.rank(k + n) == 0 {
                        continue;
                    }
                    let hom = hom_group(&p.term(k), &l.term(k + n));
                    let len = hom.group.n_gens();
                    bl.push(Block { k, hom, offset });
                    offset += len;
                }
            }
            blocks.push(bl);
        }
        let mut h = HomComplex {
            p: p.clone(),
            l: l.clone(),
            lo: a,
            blocks,
            complex: Complex::zero(),
        };
        let terms: Vec<FpGroup> = (a..=b).map(|n| h.group(n)).collect();
        let diffs: Vec<IntMatrix> = (a..b).map(|n| h.diff_matrix(n)).collect();
        h.complex = Complex::build(a, terms, diffs);
        h
    }

    fn blocks(&self, n: i32) -> &[Block] {
        let i = n - self.lo;
        if i < 0 || i as usize >= self.blocks.len() {
            &[]
        } else {
            &self.blocks[i as usize]
        }
    }

    pub fn source(&self) -> &Complex {
        &self.p
    }

    pub fn target(&self) -> &Complex {
        &self.l
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn len(&self, n: i32) -> usize {
        self.blocks(n).iter().map(|b| b.hom.group.n_gens()).sum()
    }

    pub fn is_empty(&self, n: i32) -> bool {
        self.len(n) == 0
    }

    fn group(&self, n: i32) -> FpGroup {
        let gs: Vec<FpGroup> = self.blocks(n).iter().map(|b| b.hom.group.clone()).collect();
        FpGroup::direct_sum_all(&gs)
    }

    /// Coefficients of the degree-`n` element with components
    /// `comp(k): P^k -> L^{k+n}`.
    pub fn encode(&self, n: i32, comp: impl Fn(i32) -> IntMatrix) -> Vec<Int> {
        let mut v = Vec::with_capacity(self.len(n));
        for b in self.blocks(n) {
            let m = comp(b.k);
            let f = GroupMorphism::new_unchecked(b.hom.src().clone(), b.hom.dst().clone(), m);
            v.extend(b.hom.coefficients(&f));
        }
        v
    }

    /// Component `P^k -> L^{k+n}` of a coefficient vector.
    pub fn component(&self, n: i32, v: &[Int], k: i32) -> IntMatrix {
        for b in self.blocks(n) {
            if b.k == k {
                let len = b.hom.group.n_gens();
                return b
                    .hom
                    .morphism(&v[b.offset..b.offset + len])
                    .matrix()
                    .clone();
            }
        }
        IntMatrix::zeros(self.l.rank(k + n), self.p.rank(k))
    }

    /// Coefficients of `(D f)` for the basis element `j` of `Hom^n`.
    fn diff_matrix(&self, n: i32) -> IntMatrix {
        let s = sign(n);
        let len = self.len(n);
        let mut cols = Vec::with_capacity(len);
        for j in 0..len {
            let mut e = vec![Int::zero(); len];
            e[j] = Int::one();
            let dv = self.encode(n + 1, |k| {
                let f_k = self.component(n, &e, k);
                let f_k1 = self.component(n, &e, k + 1);
                self.l
                    .diff_matrix(k + n)
                    .mul(&f_k)
                    .sub(&f_k1.mul(&self.p.diff_matrix(k)).scale(&s))
            });
            cols.push(dv);
        }
        IntMatrix::from_columns(&cols, self.len(n + 1))
    }

    /// The degree-0 element of a chain map `P -> L`.
    pub fn encode_map(&self, f: &ChainMap) -> Vec<Int> {
        self.encode(0, |k| f.matrix(k))
    }

    /// The chain map `P -> L` of a degree-0 cocycle.
    pub fn decode_map(&self, v: &[Int]) -> ChainMap {
        ChainMap::build(&self.p, &self.l, |k| self.component(0, v, k))
    }

    /// The degree-(-1) element of a homotopy.
    pub fn encode_homotopy(&self, h: &ChainHomotopy) -> Vec<Int> {
        self.encode(-1, |k| h.matrix(k))
    }

    /// The homotopy `from => from + D h` of a degree-(-1) element.
    pub fn decode_homotopy(&self, from: &ChainMap, v: &[Int]) -> ChainHomotopy {
        ChainHomotopy::from_data(from, |k| self.component(-1, v, k))
    }

    /// Matrix, on coefficients, of post-composition with `g: L -> L'` from
    /// `Hom^n(P, L)` to `Hom^n(P, L')`.
    pub fn post_compose_matrix(&self, other: &HomComplex, g: &ChainMap, n: i32) -> IntMatrix {
        let len = self.len(n);
        let cols: Vec<Vec<Int>> = (0..len)
            .map(|j| {
                let mut e = vec![Int::zero(); len];
                e[j] = Int::one();
                other.encode(n, |k| g.matrix(k + n).mul(&self.component(n, &e, k)))
            })
            .collect();
        IntMatrix::from_columns(&cols, other.len(n))
    }

    /// Matrix, on coefficients, of pre-composition with `c: P' -> P` from
    /// `Hom^n(P, L)` to `Hom^n(P', L)`.
    pub fn pre_compose_matrix(&self, other: &HomComplex, c: &ChainMap, n: i32) -> IntMatrix {
        let len = self.len(n);
        let cols: Vec<Vec<Int>> = (0..len)
            .map(|j| {
                let mut e = vec![Int::zero(); len];
                e[j] = Int::one();
                other.encode(n, |k| self.component(n, &e, k).mul(&c.matrix(k)))
            })
            .collect();
        IntMatrix::from_columns(&cols, other.len(n))
    }

    /// Group structure of `Hom^n` (inside the window).
    pub fn term(&self, n: i32) -> FpGroup {
        self.group(n)
    }
}

/// The full Hom complex `Hom^•(P, L)` as a complex.
pub fn hom_complex(p: &Complex, l: &Complex) -> Complex {
    HomComplex::new(p, l).complex
}
