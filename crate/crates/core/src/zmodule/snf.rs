//! Smith normal form with unimodular transforms.

use super::echelon::gcd_transform;
use super::int::Int;
use super::matrix::IntMatrix;

/// `u * m * v == s`, with `s` diagonal, nonnegative, `s[i][i] | s[i+1][i+1]`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Smith decomposition together with the inverses of both transforms.
#[derive(Clone, Debug)]
pub struct SmithFull {
    pub dec: SmithDecomposition,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut calc = SnfCalc::new(m.clone(), [true, false, true, false]);
    calc.run();
    SmithDecomposition {
        u: calc.u.unwrap(),
        s: calc.s,
        v: calc.v.unwrap(),
    }
}

pub fn smith_full(m: &IntMatrix) -> SmithFull {
    let mut calc = SnfCalc::new(m.clone(), [true, true, true, true]);
    calc.run();
    SmithFull {
        dec: SmithDecomposition {
            u: calc.u.unwrap(),
            s: calc.s,
            v: calc.v.unwrap(),
        },
        u_inv: calc.u_inv.unwrap(),
        v_inv: calc.v_inv.unwrap(),
    }
}

/// Diagonal of the Smith form only (no transforms tracked).
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    let mut calc = SnfCalc::new(m.clone(), [false; 4]);
    calc.run();
    let n = m.rows().min(m.cols());
    (0..n).map(|i| calc.s[(i, i)].clone()).collect()
}

/// Transform `[a b; c d]` with `ad - bc = 1`, inverse `[d -b; -c a]`.
fn inverse_of(t: &[Int; 4]) -> [Int; 4] {
    let [a, b, c, d] = t;
    [d.clone(), -c, -b, a.clone()]
}

struct SnfCalc {
    s: IntMatrix,
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl SnfCalc {
    fn new(s: IntMatrix, flags: [bool; 4]) -> Self {
        let (m, n) = s.shape();
        let id = |k, f: bool| {
            if f {
                Some(IntMatrix::identity(k))
            } else {
                None
            }
        };
        SnfCalc {
            u: id(m, flags[0]),
            u_inv: id(m, flags[1]),
            v: id(n, flags[2]),
            v_inv: id(n, flags[3]),
            s,
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        self.s.swap_rows(i, k);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, k);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        self.s.swap_cols(j, k);
        if let Some(v) = &mut self.v {
            v.swap_cols(j, k);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(j, k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    /// `(row_i, row_k) <- (a row_i + b row_k, c row_i + d row_k)`
    fn row_op(&mut self, i: usize, k: usize, t: [Int; 4]) {
        let r = [&t[0], &t[1], &t[2], &t[3]];
        self.s.rows_transform(i, k, r);
        if let Some(u) = &mut self.u {
            u.rows_transform(i, k, r);
        }
        if let Some(ui) = &mut self.u_inv {
            let inv = inverse_of(&t);
            ui.cols_transform(i, k, [&inv[0], &inv[1], &inv[2], &inv[3]]);
        }
    }

    /// `(col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)`
    fn col_op(&mut self, j: usize, k: usize, t: [Int; 4]) {
        let r = [&t[0], &t[1], &t[2], &t[3]];
        self.s.cols_transform(j, k, r);
        if let Some(v) = &mut self.v {
            v.cols_transform(j, k, r);
        }
        if let Some(vi) = &mut self.v_inv {
            let inv = inverse_of(&t);
            vi.rows_transform(j, k, [&inv[0], &inv[1], &inv[2], &inv[3]]);
        }
    }

    fn run(&mut self) {
        let (m, n) = self.s.shape();
        let r = m.min(n);
        for t in 0..r {
            // smallest-magnitude pivot in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = &self.s[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if self.s[(bi, bj)].cmp_abs(v).is_le() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_pivot(t);
                // divisibility chain: fold an offending row into the pivot row
                let p = self.s[(t, t)].clone();
                let mut offending = None;
                'scan: for i in t + 1..m {
                    for j in t + 1..n {
                        if self.s[(i, j)].div_exact(&p).is_none() {
                            offending = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offending {
                    Some(i) => self.row_op(t, i, [Int::one(), Int::one(), Int::zero(), Int::one()]),
                    None => break,
                }
            }
            if self.s[(t, t)].is_negative() {
                self.negate_row(t);
            }
        }
    }

    fn clear_pivot(&mut self, t: usize) {
        let (m, n) = self.s.shape();
        loop {
            let mut changed = false;
            for i in t + 1..m {
                if self.s[(i, t)].is_zero() {
                    continue;
                }
                let tr = gcd_transform(&self.s[(t, t)], &self.s[(i, t)]);
                self.row_op(t, i, tr);
                changed = true;
            }
            for j in t + 1..n {
                if self.s[(t, j)].is_zero() {
                    continue;
                }
                let tr = gcd_transform(&self.s[(t, t)], &self.s[(t, j)]);
                self.col_op(t, j, tr);
                changed = true;
            }
            let col_clear = (t + 1..m).all(|i| self.s[(i, t)].is_zero());
            let row_clear = (t + 1..n).all(|j| self.s[(t, j)].is_zero());
            if col_clear && row_clear {
                break;
            }
            if !changed {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let full = smith_full(m);
        let d = &full.dec;
        assert_eq!(d.u.mul(m).mul(&d.v), d.s);
        assert_eq!(d.u.mul(&full.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(d.v.mul(&full.v_inv), IntMatrix::identity(m.cols()));
        for i in 0..d.s.rows() {
            for j in 0..d.s.cols() {
                if i != j {
                    assert!(d.s[(i, j)].is_zero());
                }
            }
        }
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].div_exact(&w[0]).is_some());
            }
        }
        full.dec
    }

    #[test]
    fn zero_one_by_one() {
        let d = check(&IntMatrix::lit(&[&[0]]));
        assert_eq!(d.s, IntMatrix::lit(&[&[0]]));
        assert_eq!(d.u, IntMatrix::identity(1));
        assert_eq!(d.v, IntMatrix::identity(1));
    }

    #[test]
    fn identity_is_fixed() {
        let d = check(&IntMatrix::identity(3));
        assert_eq!(d.s, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two_example() {
        let d = check(&IntMatrix::lit(&[&[2, 4], &[6, 8]]));
        assert_eq!(d.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        check(&IntMatrix::lit(&[&[1, 2, 3], &[2, 4, 6]]));
        check(&IntMatrix::lit(&[&[0, 0], &[0, 6], &[4, 0]]));
        let d = check(&IntMatrix::lit(&[&[2, 0], &[0, 3]]));
        assert_eq!(d.diagonal(), vec![Int::from(1), Int::from(6)]);
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(2, 0));
    }
}
