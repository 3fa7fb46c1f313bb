//! Column echelon form over Z: kernels, lattice bases and exact solves.

use super::int::Int;
use super::matrix::IntMatrix;

/// `a * v == [h | 0]` with `v` unimodular; column `c` of `h` has its first
/// nonzero entry (positive) in row `pivots[c]`, pivot rows strictly increase,
/// and entries left of a pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub pivots: Vec<usize>,
}

impl ColumnEchelon {
    pub fn new(a: &IntMatrix) -> Self {
        Self::build(a, true)
    }

    /// Same form without tracking `v`; cheaper when only the lattice spanned
    /// by the columns is needed.
    pub fn lattice_only(a: &IntMatrix) -> Self {
        Self::build(a, false)
    }

    fn build(a: &IntMatrix, track: bool) -> Self {
        let (m, n) = a.shape();
        let mut w = a.clone();
        let mut v = if track {
            IntMatrix::identity(n)
        } else {
            IntMatrix::zeros(0, 0)
        };
        let mut pivots = Vec::new();
        let mut c = 0;
        for i in 0..m {
            if c == n {
                break;
            }
            let Some(j0) = (c..n)
                .filter(|&j| !w[(i, j)].is_zero())
                .min_by(|&x, &y| w[(i, x)].cmp_abs(&w[(i, y)]))
            else {
                continue;
            };
            if j0 != c {
                w.swap_cols(c, j0);
                if track {
                    v.swap_cols(c, j0);
                }
            }
            for j in c + 1..n {
                if w[(i, j)].is_zero() {
                    continue;
                }
                let t = gcd_transform(&w[(i, c)], &w[(i, j)]);
                let r = [&t[0], &t[1], &t[2], &t[3]];
                w.cols_transform(c, j, r);
                if track {
                    v.cols_transform(c, j, r);
                }
            }
            if w[(i, c)].is_negative() {
                w.negate_col(c);
                if track {
                    v.negate_col(c);
                }
            }
            let p = w[(i, c)].clone();
            for k in 0..c {
                let q = w[(i, k)].div_mod_floor(&p).0;
                if q.is_zero() {
                    continue;
                }
                let nq = -q;
                w.add_col_multiple(k, c, &nq);
                if track {
                    v.add_col_multiple(k, c, &nq);
                }
            }
            pivots.push(i);
            c += 1;
        }
        ColumnEchelon {
            h: w.select_columns(&(0..c).collect::<Vec<_>>()),
            v,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the integer kernel of `a`, as columns.
    pub fn kernel(&self) -> IntMatrix {
        let n = self.v.cols();
        self.v.select_columns(&(self.rank()..n).collect::<Vec<_>>())
    }

    /// Coordinates `y` with `h * y == b`, if `b` lies in the column lattice.
    pub fn coordinates(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.h.rows());
        let mut rest = b.to_vec();
        let mut y = Vec::with_capacity(self.rank());
        let mut next_pivot = 0;
        for (c, &pr) in self.pivots.iter().enumerate() {
            // rows strictly between pivots must already vanish
            if rest[next_pivot..pr].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let q = rest[pr].div_exact(&self.h[(pr, c)])?;
            if !q.is_zero() {
                for r in pr..rest.len() {
                    let hv = &self.h[(r, c)];
                    if !hv.is_zero() {
                        rest[r] -= &(&q * hv);
                    }
                }
            }
            y.push(q);
            next_pivot = pr + 1;
        }
        if rest[next_pivot..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(y)
    }

    /// Some `x` with `a * x == b`.
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        let y = self.coordinates(b)?;
        let n = self.v.rows();
        let mut x = vec![Int::zero(); n];
        for (c, yc) in y.iter().enumerate() {
            if yc.is_zero() {
                continue;
            }
            for (r, xr) in x.iter_mut().enumerate() {
                let vv = &self.v[(r, c)];
                if !vv.is_zero() {
                    *xr += &(yc * vv);
                }
            }
        }
        Some(x)
    }

    pub fn contains(&self, b: &[Int]) -> bool {
        self.coordinates(b).is_some()
    }
}

/// Transform sending `(a, b)` to `(gcd(a, b), 0)`, determinant one.
pub(crate) fn gcd_transform(a: &Int, b: &Int) -> [Int; 4] {
    if let Some(q) = b.div_exact(a) {
        if !a.is_zero() {
            return [Int::one(), Int::zero(), -q, Int::one()];
        }
    }
    let (g, x, y) = Int::ext_gcd(a, b);
    let bg = b.div_exact(&g).unwrap();
    let ag = a.div_exact(&g).unwrap();
    [x, y, -bg, ag]
}

/// Integer kernel of `a` as columns.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    ColumnEchelon::new(a).kernel()
}

/// A basis (as columns) of the lattice spanned by the columns of `a`.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    ColumnEchelon::lattice_only(a).h
}

/// Some `x` with `a * x == b`.
pub fn solve_linear(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    ColumnEchelon::new(a).solve(b)
}

/// Some `X` with `a * X == b`, column by column.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let e = ColumnEchelon::new(a);
    let cols: Option<Vec<Vec<Int>>> = b.columns().iter().map(|c| e.solve(c)).collect();
    Some(IntMatrix::from_columns(&cols?, a.cols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmodule::matrix::ints;

    #[test]
    fn echelon_identity() {
        let a = IntMatrix::lit(&[&[2, 4, 6], &[1, 1, 1]]);
        let e = ColumnEchelon::new(&a);
        assert_eq!(e.rank(), 2);
        let av = a.mul(&e.v);
        assert_eq!(av.select_columns(&[0, 1]), e.h);
        assert!(av.select_columns(&[2]).is_zero());
        assert_eq!(e.v.det().abs(), Int::one());
        let k = e.kernel();
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn solve_and_membership() {
        let a = IntMatrix::lit(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve_linear(&a, &ints(&[4, 9])), Some(ints(&[2, 3])));
        assert_eq!(solve_linear(&a, &ints(&[1, 0])), None);
        let b = IntMatrix::lit(&[&[0, 0], &[1, 2]]);
        assert!(ColumnEchelon::new(&b).contains(&ints(&[0, 5])));
        assert!(!ColumnEchelon::new(&b).contains(&ints(&[1, 5])));
    }

    #[test]
    fn empty_shapes() {
        let a = IntMatrix::zeros(3, 0);
        let e = ColumnEchelon::new(&a);
        assert_eq!(e.solve(&ints(&[0, 0, 0])), Some(vec![]));
        assert_eq!(e.solve(&ints(&[0, 1, 0])), None);
        let z = IntMatrix::zeros(0, 2);
        assert_eq!(kernel_basis(&z), IntMatrix::identity(2));
    }
}
