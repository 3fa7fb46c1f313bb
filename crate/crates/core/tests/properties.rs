use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use picext::cli::{parse, Document, Entity};
use picext::complex::ChainMap;
use picext::derived::ExtGroup;
use picext::extensions::{baer_sum, classify_theta, neutral, realize_psi};
use picext::gen::{base_change, qis_replacement, random_class, random_extension, random_length3};
use picext::zmodule::{smith_full, IntMatrix};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(m, n)| {
        proptest::collection::vec(-60i64..=60, m * n)
            .prop_map(move |v| IntMatrix::from_i64(m, n, &v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_factorisation(a in matrix()) {
        let full = smith_full(&a);
        let d = &full.dec;
        prop_assert_eq!(d.u.mul(&a).mul(&d.v), d.s.clone());
        prop_assert_eq!(d.u.mul(&full.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(d.v.mul(&full.v_inv), IntMatrix::identity(a.cols()));
        let diag = d.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].div_exact(&w[0]).is_some()));
        }
        for (i, x) in diag.iter().enumerate() {
            prop_assert!(!x.is_negative(), "s[{}] = {}", i, x);
        }
    }

    #[test]
    fn cohomology_survives_base_change(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random_length3(&mut r, 32);
        let (k2, iso, inv) = base_change(&mut r, &k);
        prop_assert_eq!(k.cohomology_profile(), k2.cohomology_profile());
        prop_assert!(iso.is_quasi_iso() && inv.is_quasi_iso());
        prop_assert!(inv.compose(&iso).equals(&ChainMap::identity(&k)));
    }

    #[test]
    fn ext_is_invariant_under_replacement(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_length3(&mut r, 16);
        let b = random_length3(&mut r, 16);
        let (a2, q) = qis_replacement(&mut r, &a);
        prop_assert!(q.is_quasi_iso());
        for i in -2..=3 {
            prop_assert_eq!(ExtGroup::new(&a, &b, i).divisors(), ExtGroup::new(&a2, &b, i).divisors());
        }
    }

    #[test]
    fn theta_inverts_psi(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_length3(&mut r, 16);
        let b = random_length3(&mut r, 16);
        let x = random_class(&mut r, &ExtGroup::new(&a, &b, 1));
        let e = realize_psi(&x).unwrap();
        prop_assert!(e.validate().valid());
        prop_assert_eq!(classify_theta(&e).unwrap().coords().to_vec(), x.coords().to_vec());
    }

    #[test]
    fn baer_sum_is_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_length3(&mut r, 12);
        let b = random_length3(&mut r, 12);
        let e1 = random_extension(&mut r, &a, &b);
        let e2 = random_extension(&mut r, &a, &b);
        let s = classify_theta(&baer_sum(&e1, &e2).unwrap()).unwrap();
        let want = classify_theta(&e1).unwrap().add(&classify_theta(&e2).unwrap());
        prop_assert_eq!(s.coords(), want.coords());
        let z = classify_theta(&baer_sum(&e1, &neutral(&a, &b)).unwrap()).unwrap();
        prop_assert_eq!(z.coords().to_vec(), classify_theta(&e1).unwrap().coords().to_vec());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_length3(&mut r, 16);
        let b = random_length3(&mut r, 16);
        let e = random_extension(&mut r, &a, &b);
        let mut doc = Document::new();
        doc.intern_extension(&e, "X");
        let text = doc.emit();
        let back = parse(&text).unwrap();
        prop_assert_eq!(back.emit(), text);
        let Some(Entity::Extension(f)) = back.get("X") else {
            return Err(TestCaseError::fail("X is not an extension"));
        };
        prop_assert_eq!(classify_theta(f).unwrap().coords().to_vec(), classify_theta(&e).unwrap().coords().to_vec());
    }
}
