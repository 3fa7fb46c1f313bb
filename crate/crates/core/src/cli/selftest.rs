//! Seeded property suites behind `selftest SEED COUNT`.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::ChainMap;
use crate::derived::ExtGroup;
use crate::extensions::{
    baer_sum, classify_theta, les_homotopy, neutral, pushdown_extension, realize_psi,
};
use crate::fractions::Fraction;
use crate::gen::{mutate, random_class, random_extension, random_length3, random_matrix};
use crate::zmodule::{smith_full, IntMatrix};

pub const SUITES: [&str; 5] = ["snf", "theta-psi", "baer", "conditions", "les"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    /// `(suite, cases, failures)` in the order of [`SUITES`].
    pub suites: Vec<(&'static str, usize, usize)>,
    /// Indices of failed cases.
    pub failed: Vec<usize>,
}

impl SelftestReport {
    pub fn ok(&self) -> bool {
        self.failed.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, n, bad) in &self.suites {
            let _ = writeln!(out, "{name}: {} of {n} passed", n - bad);
        }
        if !self.failed.is_empty() {
            let ids: Vec<String> = self.failed.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "failed cases: {}", ids.join(", "));
        }
        let _ = writeln!(out, "selftest: {}", if self.ok() { "ok" } else { "FAILED" });
        out
    }
}

fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ case as u64)
}

fn snf_case(r: &mut ChaCha8Rng) -> bool {
    let (m, n) = (r.gen_range(1..=6), r.gen_range(1..=6));
    let a = random_matrix(r, m, n, 50);
    let full = smith_full(&a);
    let d = &full.dec;
    let diag = d.diagonal();
    let diagonal = (0..m).all(|i| (0..n).all(|j| i == j || d.s[(i, j)].is_zero()));
    let chain = diag
        .windows(2)
        .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].div_exact(&w[0]).is_some()));
    diagonal
        && chain
        && d.u.mul(&a).mul(&d.v) == d.s
        && d.u.mul(&full.u_inv) == IntMatrix::identity(m)
        && d.v.mul(&full.v_inv) == IntMatrix::identity(n)
}

fn theta_psi_case(r: &mut ChaCha8Rng) -> bool {
    let a = random_length3(r, 16);
    let b = random_length3(r, 16);
    let x = random_class(r, &ExtGroup::new(&a, &b, 1));
    realize_psi(&x)
        .and_then(|e| classify_theta(&e))
        .map(|t| t.coords() == x.coords())
        .unwrap_or(false)
}

fn baer_case(r: &mut ChaCha8Rng) -> bool {
    let a = random_length3(r, 12);
    let b = random_length3(r, 12);
    let e1 = random_extension(r, &a, &b);
    let e2 = random_extension(r, &a, &b);
    (|| {
        let t1 = classify_theta(&e1).ok()?;
        let t2 = classify_theta(&e2).ok()?;
        let s = classify_theta(&baer_sum(&e1, &e2).ok()?).ok()?;
        let z = classify_theta(&neutral(&a, &b)).ok()?;
        let minus = Fraction::from_map(&ChainMap::identity(&b).neg());
        let m = classify_theta(&pushdown_extension(&e1, &minus).ok()?).ok()?;
        Some(s.coords() == t1.add(&t2).coords() && z.is_zero() && m.coords() == t1.neg().coords())
    })()
    .unwrap_or(false)
}

fn conditions_case(r: &mut ChaCha8Rng) -> bool {
    let a = random_length3(r, 16);
    let b = random_length3(r, 16);
    let base = random_extension(r, &a, &b);
    let rep = mutate(r, &base).validate();
    rep.cond_a == rep.cond_b
}

fn les_case(r: &mut ChaCha8Rng) -> bool {
    let a = random_length3(r, 16);
    let b = random_length3(r, 16);
    let e = random_extension(r, &a, &b);
    les_homotopy(&e).map(|rep| rep.ok()).unwrap_or(false)
}

/// Case `k` runs suite `k mod 5` on its own generator, so the report only
/// depends on `seed` and `count`.
pub fn selftest(seed: u64, count: usize) -> SelftestReport {
    let mut suites: Vec<(&'static str, usize, usize)> = SUITES.iter().map(|s| (*s, 0, 0)).collect();
    let mut failed = Vec::new();
    for case in 0..count {
        let mut r = case_rng(seed, case);
        let k = case % SUITES.len();
        let ok = match k {
            0 => snf_case(&mut r),
            1 => theta_psi_case(&mut r),
            2 => baer_case(&mut r),
            3 => conditions_case(&mut r),
            _ => les_case(&mut r),
        };
        suites[k].1 += 1;
        if !ok {
            suites[k].2 += 1;
            failed.push(case);
        }
    }
    SelftestReport { suites, failed }
}
