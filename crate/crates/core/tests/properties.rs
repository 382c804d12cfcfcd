use std::collections::BTreeMap;

use complicial::axioms::{pasting_check, Gen, SampleSpec};
use complicial::complex_core::{
    associator, pushout_along_inflation, tensor, tensor_maps, unit_conflation, ChainMap, Complex,
};
use complicial::frobenius::cone;
use complicial::homotopy::{find_homotopy, find_homotopy_direct, homology, is_quasi_iso, QisMode};
use complicial::qw::euler_char;
use complicial::zlinalg::{minor_gcd, smith_normal_form, Int, IntMatrix};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn gen(seed: u64) -> Gen {
    SampleSpec::new(seed, 1).generator("properties", 0)
}

fn small_matrix(max: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max, 0..=max).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-entry..=entry, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(Int::from).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn invariant_factors_match_minor_gcds(a in small_matrix(4, 4)) {
        let snf = smith_normal_form(&a);
        prop_assert!(snf.verify(&a));
        let factors = snf.invariant_factors();
        let mut product = Int::one();
        for k in 1..=a.rows().min(a.cols()) {
            product = factors.get(k - 1).map_or_else(Int::zero, |t| &product * t);
            prop_assert_eq!(minor_gcd(&a, k).unwrap(), product.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quasi_iso_deciders_agree(seed in any::<u64>()) {
        let (_, _, f) = gen(seed).chain_map();
        prop_assert_eq!(is_quasi_iso(&f, QisMode::Homological), is_quasi_iso(&f, QisMode::Cone));
    }

    #[test]
    fn direct_and_decomposed_homotopy_agree(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, y, f) = g.chain_map();
        let h = if g.chance(0.5) { g.perturb(&f) } else { g.lattice_map(&x, &y) };
        let fast = find_homotopy(&f, &h).unwrap();
        let slow = find_homotopy_direct(&f, &h).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(s) = fast {
            prop_assert!(s.verify(&f, &h));
        }
        if let Some(s) = slow {
            prop_assert!(s.verify(&f, &h));
        }
    }

    /// A homotopy `s` from `f` to `h` is the same thing as a chain map
    /// `Cx -> y` restricting to `f - h` along `x ↣ Cx`.
    #[test]
    fn homotopies_factor_through_cx(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (_, _, f) = g.chain_map();
        let h = g.perturb(&f);
        let s = find_homotopy(&f, &h).unwrap();
        prop_assert!(s.is_some());
        let s = s.unwrap();
        let (x, y) = (f.source(), f.target());
        let cx = tensor(&Complex::c(), x);
        let j = tensor_maps(unit_conflation().inflation(), &ChainMap::identity(x));
        let diff = f.sub(&h).unwrap();
        let comps: BTreeMap<i64, _> = cx
            .degrees()
            .map(|n| (n, IntMatrix::hstack(y.rank(n), &[&*diff.get(n), &s.get(n + 1)])))
            .collect();
        let through = ChainMap::new(cx.clone(), y.clone(), comps);
        prop_assert!(through.is_ok());
        prop_assert_eq!(through.unwrap().after(&j).unwrap(), diff);
    }

    #[test]
    fn tensor_is_associative_up_to_signed_permutation(seed in any::<u64>()) {
        let mut g = gen(seed);
        let mut s = g.scaled(2, 2);
        let (a, b, c) = (s.complex(), s.complex(), s.complex());
        let (a, b, c) = (&*a.complex, &*b.complex, &*c.complex);
        let left = tensor(&tensor(a, b), c);
        let right = tensor(a, &tensor(b, c));
        prop_assert_eq!(left.ranks(), right.ranks());
        let phi = associator(a, b, c);
        prop_assert!(phi.validate().is_ok());
        prop_assert!(phi.is_iso());
    }

    #[test]
    fn tensor_unit_is_strict(seed in any::<u64>()) {
        let x = gen(seed).complex();
        prop_assert_eq!(&tensor(&Complex::unit(), &x.complex), &*x.complex);
        prop_assert_eq!(&tensor(&x.complex, &Complex::unit()), &*x.complex);
    }

    #[test]
    fn euler_characteristic_is_multiplicative_and_additive(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (a, b) = (g.complex(), g.complex());
        prop_assert_eq!(
            euler_char(&tensor(&a.complex, &b.complex)),
            euler_char(&a.complex) * euler_char(&b.complex)
        );
        let c = g.conflation();
        prop_assert_eq!(
            euler_char(c.middle()).value,
            euler_char(c.left()).value + euler_char(c.right()).value
        );
        let (_, _, f) = g.chain_map();
        let k = cone(&f);
        prop_assert_eq!(
            euler_char(k.cone()).value,
            euler_char(f.target()).value - euler_char(f.source()).value
        );
    }

    #[test]
    fn homology_of_sums(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, y) = (g.complex(), g.complex());
        let s = x.complex.direct_sum(&y.complex);
        let (hx, hy, hs) = (homology(&x.complex), homology(&y.complex), homology(&s));
        for n in s.degrees() {
            let (a, b, c) = (hx.normal_form(n), hy.normal_form(n), hs.normal_form(n));
            prop_assert_eq!(c.free_rank, a.free_rank + b.free_rank);
            let order = |v: &[Int]| v.iter().fold(Int::one(), |p, t| p * t);
            prop_assert_eq!(order(&c.torsion), order(&a.torsion) * order(&b.torsion));
        }
    }

    #[test]
    fn pushout_along_identity_is_the_target(seed in any::<u64>()) {
        let mut g = gen(seed);
        let (x, _, f) = g.chain_map();
        let id = ChainMap::identity_arc(x.complex.clone());
        let po = pushout_along_inflation(&id, &f).unwrap();
        prop_assert!(po.from_z().is_iso());
        prop_assert_eq!(po.object().ranks(), f.target().ranks());
    }

    #[test]
    fn pasting_holds(seed in any::<u64>()) {
        let r = pasting_check(&SampleSpec::new(seed, 2)).unwrap();
        prop_assert!(r.is_pass());
    }
}
