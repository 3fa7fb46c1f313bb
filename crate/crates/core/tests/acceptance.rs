//! One line per acceptance criterion. Case counts and time budgets are
//! pinned below; a criterion fails if any case fails or the budget is
//! exceeded.

use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use picext::complex::{shift, ChainMap, Complex};
use picext::derived::{ext_group, free_resolution, hom_complex, ExtGroup};
use picext::extensions::{
    baer_sum, classify_theta, equivalence_witness, les_homotopy, neutral, pushdown_extension,
    realize_psi, Extension,
};
use picext::fractions::{
    fibered_product_complexes, fibered_sum_complexes, homotopy_fibered_product,
    mayer_vietoris_product, mayer_vietoris_sum, naive_fibered_product, Fraction,
};
use picext::gen::{
    mutate, qis_replacement, random_chain_map, random_class, random_extension, random_length3,
    random_matrix,
};
use picext::zmodule::{smith_full, FpGroup, Int, IntMatrix};

const SNF_CASES: usize = 1000;
const SNF_BUDGET: u64 = 10;
const EXT_TABLE_BUDGET: u64 = 5;
const PSI_PAIRS: usize = 50;
const PSI_BUDGET: u64 = 300;
const WITNESS_CASES: usize = 50;
const WITNESS_BUDGET: u64 = 300;
const BAER_CASES: usize = 100;
const BAER_BUDGET: u64 = 300;
const LES_CASES: usize = 100;
const LES_BUDGET: u64 = 120;
const COND_CASES: usize = 200;
const COND_BUDGET: u64 = 120;
const FIBERED_CASES: usize = 100;
const FIBERED_BUDGET: u64 = 120;
const INVARIANCE_CASES: usize = 100;
const INVARIANCE_BUDGET: u64 = 180;
const MAX_H_ORDER: u64 = 64;
const ENUMERATE_UP_TO: u64 = 16;

fn rng(criterion: u64, case: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(criterion * 1_000_003 + case as u64)
}

fn cyc(m: i64) -> Complex {
    Complex::concentrated(FpGroup::cyclic(m), 0)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(id: u32, name: &str, budget: u64, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    let in_time = dt <= Duration::from_secs(budget);
    let ok = out.ok && in_time;
    println!(
        "criterion {id:2} {name}: {} ({}; {:.2}s of {budget}s)",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        dt.as_secs_f64()
    );
    ok
}

fn snf() -> Outcome {
    let mut bad = 0;
    for case in 0..SNF_CASES {
        let mut r = rng(1, case);
        let (m, n) = (r.gen_range(1..=8), r.gen_range(1..=8));
        let a = random_matrix(&mut r, m, n, 100);
        let full = smith_full(&a);
        let d = &full.dec;
        let diag = d.diagonal();
        let diagonal_ok = (0..m).all(|i| (0..n).all(|j| i == j || d.s[(i, j)].is_zero()));
        let chain_ok = diag
            .windows(2)
            .all(|w| w[1].is_zero() || (!w[0].is_zero() && w[1].div_exact(&w[0]).is_some()))
            && diag.iter().all(|x| !x.is_negative());
        let product_ok = d.u.mul(&a).mul(&d.v) == d.s;
        let unimodular = d.u.det().abs().is_one()
            && d.v.det().abs().is_one()
            && d.u.mul(&full.u_inv) == IntMatrix::identity(m)
            && d.v.mul(&full.v_inv) == IntMatrix::identity(n);
        if !(diagonal_ok && chain_ok && product_ok && unimodular) {
            bad += 1;
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!("{SNF_CASES} matrices up to 8x8, {bad} failures"),
    }
}

fn ext_table() -> Outcome {
    let mut bad = Vec::new();
    for m in 2..=12i64 {
        for n in 2..=12i64 {
            let g = ext_group(&cyc(m), &cyc(n), 1);
            let d = m.gcd(&n);
            let want: Vec<Int> = if d == 1 { vec![] } else { vec![Int::from(d)] };
            if g.divisors() != want {
                bad.push((m, n));
            }
        }
    }
    Outcome {
        ok: bad.is_empty(),
        detail: format!("121 pairs, mismatches {bad:?}"),
    }
}

fn small_order(g: &ExtGroup) -> Option<u64> {
    g.order().and_then(|o| o.to_i64()).map(|o| o as u64)
}

fn psi_round_trip() -> Outcome {
    let (mut classes, mut bad, mut enumerated) = (0, 0, 0);
    for case in 0..PSI_PAIRS {
        let mut r = rng(3, case);
        let a = random_length3(&mut r, MAX_H_ORDER);
        let b = random_length3(&mut r, MAX_H_ORDER);
        let g = ExtGroup::new(&a, &b, 1);
        let xs = match small_order(&g) {
            Some(o) if o <= ENUMERATE_UP_TO => {
                enumerated += 1;
                g.elements().expect("finite")
            }
            _ => (0..ENUMERATE_UP_TO)
                .map(|_| random_class(&mut r, &g))
                .collect(),
        };
        for x in xs {
            classes += 1;
            let ok = realize_psi(&x)
                .and_then(|e| classify_theta(&e))
                .map(|t| t.coords() == x.coords())
                .unwrap_or(false);
            if !ok {
                bad += 1;
            }
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!(
            "{PSI_PAIRS} pairs ({enumerated} fully enumerated), {classes} classes, {bad} failures"
        ),
    }
}

fn witnesses() -> Outcome {
    let (mut bad, mut nontrivial) = (0, 0);
    for case in 0..WITNESS_CASES {
        let mut r = rng(4, case);
        let a = random_length3(&mut r, MAX_H_ORDER);
        let b = random_length3(&mut r, MAX_H_ORDER);
        let g = ExtGroup::new(&a, &b, 1);
        let x = random_class(&mut r, &g);
        if !x.is_zero() {
            nontrivial += 1;
        }
        let other = free_resolution(&a).variant(&mut r);
        let g2 = ExtGroup::with_resolution(&other, &b, 1);
        let x2 = x.transport(&g2);
        let ok = (|| {
            let e1 = realize_psi(&x).ok()?;
            let e2 = realize_psi(&x2).ok()?;
            let same = classify_theta(&e1).ok()?.coords() == classify_theta(&e2).ok()?.coords();
            let w = equivalence_witness(&e1, &e2).ok()??;
            Some(same && w.validate().valid())
        })()
        .unwrap_or(false);
        if !ok {
            bad += 1;
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!("{WITNESS_CASES} classes ({nontrivial} nonzero), {bad} failures"),
    }
}

fn additivity() -> Outcome {
    let mut bad = 0;
    for case in 0..BAER_CASES {
        let mut r = rng(5, case);
        let a = random_length3(&mut r, 16);
        let b = random_length3(&mut r, 16);
        let e1 = random_extension(&mut r, &a, &b);
        let e2 = random_extension(&mut r, &a, &b);
        let ok = (|| {
            let t1 = classify_theta(&e1).ok()?;
            let t2 = classify_theta(&e2).ok()?;
            let s = classify_theta(&baer_sum(&e1, &e2).ok()?).ok()?;
            let z = classify_theta(&neutral(&a, &b)).ok()?;
            let minus = Fraction::from_map(&ChainMap::identity(&b).neg());
            let m = classify_theta(&pushdown_extension(&e1, &minus).ok()?).ok()?;
            Some(
                s.coords() == t1.add(&t2).coords()
                    && z.is_zero()
                    && m.coords() == t1.neg().coords(),
            )
        })()
        .unwrap_or(false);
        if !ok {
            bad += 1;
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!("{BAER_CASES} pairs, {bad} failures"),
    }
}

fn les() -> Outcome {
    let mut bad = 0;
    for case in 0..LES_CASES {
        let mut r = rng(6, case);
        let a = random_length3(&mut r, MAX_H_ORDER);
        let b = random_length3(&mut r, MAX_H_ORDER);
        let e = random_extension(&mut r, &a, &b);
        let ok = les_homotopy(&e)
            .map(|rep| rep.ok() && rep.sequence.nodes.len() == 9)
            .unwrap_or(false);
        if !ok {
            bad += 1;
        }
    }
    Outcome {
        ok: bad == 0,
        detail: format!("{LES_CASES} extensions, 9 nodes each, {bad} failures"),
    }
}

fn conditions() -> Outcome {
    let (mut bad, mut valid, mut invalid) = (0, 0, 0);
    for case in 0..COND_CASES {
        let mut r = rng(7, case);
        let a = random_length3(&mut r, 32);
        let b = random_length3(&mut r, 32);
        let base = random_extension(&mut r, &a, &b);
        let e: Extension = mutate(&mut r, &base);
        let rep = e.validate();
        if rep.cond_a != rep.cond_b {
            bad += 1;
        }
        if rep.cond_a && rep.cond_b {
            valid += 1;
        } else {
            invalid += 1;
        }
    }
    Outcome {
        ok: bad == 0 && valid > 0 && invalid > 0,
        detail: format!(
            "{COND_CASES} candidates ({valid} valid, {invalid} invalid), {bad} disagreements"
        ),
    }
}

/// `τ≥-2 MC(f - g)` written out term by term: degree -2 is
/// `coker(P^-2 -> P^-1 ⊕ A^-2 ⊕ B^-2, x ↦ (δx, f x, -g x))`.
fn fibered_sum_oracle(f: &ChainMap, g: &ChainMap) -> (Vec<(usize, IntMatrix)>, Vec<IntMatrix>) {
    let (p, a, b) = (f.src(), f.dst(), g.dst());
    let gens = |n: i32| p.rank(n + 1) + a.rank(n) + b.rank(n);
    let rels = |n: i32| {
        let (rp, ra, rb) = (
            p.term(n + 1).relations().clone(),
            a.term(n).relations().clone(),
            b.term(n).relations().clone(),
        );
        let mut m = IntMatrix::zeros(rp.rows() + ra.rows() + rb.rows(), gens(n));
        m.set_block(0, 0, &rp);
        m.set_block(rp.rows(), p.rank(n + 1), &ra);
        m.set_block(rp.rows() + ra.rows(), p.rank(n + 1) + a.rank(n), &rb);
        m
    };
    let d = |n: i32| {
        // (x, y, z) ↦ (δx, f x - δy, -g x - δz)
        let mut m = IntMatrix::zeros(gens(n + 1), gens(n));
        let (p1, a0) = (p.rank(n + 1), a.rank(n));
        let (p2, a1) = (p.rank(n + 2), a.rank(n + 1));
        m.set_block(0, 0, &p.diff_matrix(n + 1));
        m.set_block(p2, 0, &f.matrix(n + 1));
        m.set_block(p2 + a1, 0, &g.matrix(n + 1).neg());
        m.set_block(p2, p1, &a.diff_matrix(n).neg());
        m.set_block(p2 + a1, p1 + a0, &b.diff_matrix(n).neg());
        m
    };
    let mut terms = Vec::new();
    for n in -2..=0 {
        let mut r = rels(n);
        if n == -2 {
            r = r.vstack(&d(-3).transpose());
        }
        terms.push((gens(n), r));
    }
    (terms, vec![d(-2), d(-1)])
}

fn same_quotient(n: usize, r: &IntMatrix, g: &FpGroup) -> bool {
    let h = FpGroup::new(n, r.clone()).expect("oracle presentation");
    g.n_gens() == n
        && r.row_vectors().iter().all(|v| g.is_zero_elem(v))
        && g.relations()
            .row_vectors()
            .iter()
            .all(|v| h.is_zero_elem(v))
}

fn fibered() -> Outcome {
    let (mut bad_eq, mut bad_mv) = (0, 0);
    for case in 0..FIBERED_CASES {
        let mut r = rng(8, case);
        let p = random_length3(&mut r, 16);
        let a = random_length3(&mut r, 16);
        let b = random_length3(&mut r, 16);
        let f = random_chain_map(&mut r, &p, &a);
        let g = random_chain_map(&mut r, &p, &b);
        let fs = fibered_sum_complexes(&f, &g);
        let (terms, diffs) = fibered_sum_oracle(&f, &g);
        let y = &fs.complex;
        let eq = (-2..=0).all(|n| {
            let (k, rel) = &terms[(n + 2) as usize];
            same_quotient(*k, rel, &y.term(n))
        }) && (-2..0).all(|n| y.diff_matrix(n) == diffs[(n + 2) as usize])
            && (y.is_zero_complex() || (y.lo() >= -2 && y.hi() <= 0));
        if !eq {
            bad_eq += 1;
        }
        if !mayer_vietoris_sum(&fs, -2, 0).is_exact() {
            bad_mv += 1;
        }
        let fa = random_chain_map(&mut r, &a, &p);
        let gb = random_chain_map(&mut r, &b, &p);
        let fp = fibered_product_complexes(&fa, &gb);
        if !mayer_vietoris_product(&fp, -2, 0).is_exact() {
            bad_mv += 1;
        }
    }
    let z = cyc(0);
    let id = ChainMap::identity(&z);
    let zz = fibered_product_complexes(&id, &id).complex;
    let sanity = zz.cohomology_profile() == z.cohomology_profile();
    Outcome {
        ok: bad_eq == 0 && bad_mv == 0 && sanity,
        detail: format!(
            "{FIBERED_CASES} instances, {bad_eq} term mismatches, {bad_mv} inexact Mayer-Vietoris, Z x_Z Z = Z {sanity}"
        ),
    }
}

/// `0 ×_P 0` for `P = Z/2[1]`: the naive pullback is zero, the homotopy
/// pullback is `Z/2` in degree 0.
fn naive_contrast() -> Outcome {
    let p = Complex::concentrated(FpGroup::cyclic(2), -1);
    let z = Complex::zero();
    let f = ChainMap::zero(&z, &p);
    let (naive, _, _) = naive_fibered_product(&f, &f);
    let good = homotopy_fibered_product(&f, &f, 0).complex;
    let naive_h = naive.cohomology_profile();
    let good_h = good.cohomology_profile();
    let pinned = naive_h.is_empty() && good_h == vec![(0, vec![Int::from(2)])];
    Outcome {
        ok: pinned && naive_h != good_h,
        detail: format!("naive {naive_h:?}, good {good_h:?}"),
    }
}

fn invariance() -> Outcome {
    let (mut bad, mut vanishing_bad) = (0, 0);
    for case in 0..INVARIANCE_CASES {
        let mut r = rng(10, case);
        let a = random_length3(&mut r, MAX_H_ORDER);
        let b = random_length3(&mut r, MAX_H_ORDER);
        let (a2, _) = qis_replacement(&mut r, &a);
        let (b2, _) = qis_replacement(&mut r, &b);
        let i = r.gen_range(-2..=3);
        let g = ext_group(&a, &b, i);
        if g.divisors() != ext_group(&a2, &b2, i).divisors() {
            bad += 1;
        }
        // Hom_D(A, B[i]) from the full Hom complex of a resolution
        let full = hom_complex(&free_resolution(&a).p, &shift(&b, i));
        if g.divisors() != full.cohomology(0).group.elementary_divisors() {
            bad += 1;
        }
        let out = *[-4, -3, 4, 5].get(r.gen_range(0..4)).expect("index");
        if !ext_group(&a, &b, out).is_trivial() {
            vanishing_bad += 1;
        }
    }
    Outcome {
        ok: bad == 0 && vanishing_bad == 0,
        detail: format!("{INVARIANCE_CASES} trials, {bad} mismatches, {vanishing_bad} nonvanishing outside [-2, 3]"),
    }
}

fn main() {
    let results = [
        run(1, "Smith normal form", SNF_BUDGET, snf),
        run(2, "Ext^1(Z/m, Z/n) = Z/gcd", EXT_TABLE_BUDGET, ext_table),
        run(
            3,
            "round trip of Psi then Theta",
            PSI_BUDGET,
            psi_round_trip,
        ),
        run(4, "equivalence witnesses", WITNESS_BUDGET, witnesses),
        run(5, "additivity of Theta", BAER_BUDGET, additivity),
        run(6, "nine-term homotopy sequence", LES_BUDGET, les),
        run(7, "conditions (a) and (b) agree", COND_BUDGET, conditions),
        run(8, "fibered product and sum", FIBERED_BUDGET, fibered),
        run(9, "naive versus homotopy pullback", 10, naive_contrast),
        run(
            10,
            "derived invariance of Ext",
            INVARIANCE_BUDGET,
            invariance,
        ),
    ];
    if results.iter().any(|ok| !ok) {
        std::process::exit(1);
    }
}
