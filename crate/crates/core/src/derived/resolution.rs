use std::collections::BTreeMap;

use rand::Rng;

use crate::complex::{ChainMap, Complex};
use crate::gen::random_unimodular;
use crate::zmodule::{solve_matrix, FpGroup, IntMatrix};

/// A bounded complex of free groups with a quasi-isomorphism onto `of`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub of: Complex,
    pub p: Complex,
    pub eps: ChainMap,
}

/// Resolves each term `Z^{r_k} -R_k^T-> Z^{n_k}` and totalizes:
/// `P^k = Z^{n_k} ⊕ Z^{r_{k+1}}` with `d(x, y) = (D x + ρ y, -H x - C y)`,
/// where `D` is the given differential, `D ρ_k = ρ_{k+1} C_k` and
/// `D D = ρ H`. Lives in `[lo - 1, hi]`.
pub fn free_resolution(a: &Complex) -> FreeResolution {
    if a.is_zero_complex() {
        let z = Complex::zero();
        return FreeResolution {
            of: a.clone(),
            p: z.clone(),
            eps: ChainMap::zero(&z, a),
        };
    }
    let (lo, hi) = (a.lo(), a.hi());
    let mut rho: BTreeMap<i32, IntMatrix> = BTreeMap::new();
    for k in lo..=hi {
        let r = a
            .term(k)
            .with_independent_relations()
            .relations()
            .transpose();
        rho.insert(k, r);
    }
    let n = |k: i32| a.rank(k);
    let rho_of = |k: i32| {
        rho.get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(n(k), 0))
    };
    let r = |k: i32| rho.get(&k).map(|m| m.cols()).unwrap_or(0);
    let c: BTreeMap<i32, IntMatrix> = (lo..hi)
        .map(|k| {
            let rhs = a.diff_matrix(k).mul(&rho_of(k));
            let ck = solve_matrix(&rho_of(k + 1), &rhs).expect("differential is well-defined");
            (k, ck)
        })
        .collect();
    let h: BTreeMap<i32, IntMatrix> = (lo..hi - 1)
        .map(|k| {
            let dd = a.diff_matrix(k + 1).mul(&a.diff_matrix(k));
            let hk = solve_matrix(&rho_of(k + 2), &dd).expect("d∘d vanishes in the group");
            (k, hk)
        })
        .collect();
    let c_of = |k: i32| {
        c.get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(r(k + 1), r(k)))
    };
    let h_of = |k: i32| {
        h.get(&k)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(r(k + 2), n(k)))
    };
    let p = Complex::build_fn(
        lo - 1,
        hi,
        |k| FpGroup::free(n(k) + r(k + 1)),
        |k| {
            IntMatrix::blocks(&[n(k + 1), r(k + 2)], &[n(k), r(k + 1)], |i, j| {
                match (i, j) {
                    (0, 0) => Some(a.diff_matrix(k)),
                    (0, 1) => Some(rho_of(k + 1)),
                    (1, 0) => Some(h_of(k).neg()),
                    (1, 1) => Some(c_of(k + 1).neg()),
                    _ => None,
                }
            })
        },
    );
    let eps = ChainMap::build(&p, a, |k| {
        IntMatrix::identity(n(k)).hstack(&IntMatrix::zeros(n(k), r(k + 1)))
    });
    FreeResolution {
        of: a.clone(),
        p,
        eps,
    }
}

impl FreeResolution {
    /// Another resolution of the same complex: contractible free summands
    /// `Z -id-> Z` inside the current degree range, then a random unimodular
    /// change of basis in every degree.
    pub fn variant<R: Rng>(&self, rng: &mut R) -> FreeResolution {
        let p = &self.p;
        if p.is_zero_complex() {
            return self.clone();
        }
        let (lo, hi) = (p.lo(), p.hi());
        // extra[k]: number of contractible pairs starting in degree k
        let extra: BTreeMap<i32, usize> =
            (lo..hi).map(|k| (k, rng.gen_range(0..=1usize))).collect();
        let e = |k: i32| extra.get(&k).copied().unwrap_or(0);
        let size = |k: i32| p.rank(k) + e(k) + e(k - 1);
        let bases: BTreeMap<i32, (IntMatrix, IntMatrix)> = (lo..=hi)
            .map(|k| (k, random_unimodular(rng, size(k), 3 * size(k) + 2)))
            .collect();
        // layout of degree k: [P^k | pairs starting at k | pairs ending at k]
        let raw_d = |k: i32| {
            IntMatrix::blocks(
                &[p.rank(k + 1), e(k + 1), e(k)],
                &[p.rank(k), e(k), e(k - 1)],
                |i, j| match (i, j) {
                    (0, 0) => Some(p.diff_matrix(k)),
                    (2, 1) => Some(IntMatrix::identity(e(k))),
                    _ => None,
                },
            )
        };
        let q = Complex::build_fn(
            lo,
            hi,
            |k| FpGroup::free(size(k)),
            |k| {
                let (u1, _) = &bases[&(k + 1)];
                let (_, ui) = &bases[&k];
                u1.mul(&raw_d(k)).mul(ui)
            },
        );
        let a = &self.of;
        let eps = ChainMap::build(&q, a, |k| {
            if k < lo || k > hi {
                return IntMatrix::zeros(a.rank(k), 0);
            }
            let raw = self
                .eps
                .matrix(k)
                .hstack(&IntMatrix::zeros(a.rank(k), e(k) + e(k - 1)));
            raw.mul(&bases[&k].1)
        });
        FreeResolution {
            of: a.clone(),
            p: q,
            eps,
        }
    }
}
