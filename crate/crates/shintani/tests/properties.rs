//! Property suites over randomly sampled data: exact cyclotomic ring laws,
//! finite-field automorphisms and embeddings, and group-level norm laws.

use proptest::prelude::*;

use shintani::cyclo::Cyclotomic;
use shintani::fq::FqElem;
use shintani::group::matrix::EnumeratedGroup;
use shintani::group::{perm_pow, power_norm_idx, twisted_classes, Group};

fn small_cyclo() -> impl Strategy<Value = Cyclotomic> {
    // sums of up to 3 scaled roots of unity of conductor <= 12
    prop::collection::vec((1u64..=12, 0i64..12, -5i64..=5), 0..=3).prop_map(|terms| {
        Cyclotomic::sum(terms.into_iter().map(|(n, e, c)| {
            Cyclotomic::root_of_unity(n, e).scale(&num_rational::BigRational::from_integer(c.into()))
        }))
    })
}

fn tiny_cyclo() -> impl Strategy<Value = Cyclotomic> {
    // inversion works in the full field of the conductor, so keep it small
    prop::collection::vec((1u64..=6, 0i64..6, -5i64..=5), 0..=2).prop_map(|terms| {
        Cyclotomic::sum(terms.into_iter().map(|(n, e, c)| {
            Cyclotomic::root_of_unity(n, e).scale(&num_rational::BigRational::from_integer(c.into()))
        }))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(a in small_cyclo(), b in small_cyclo(), c in small_cyclo()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), Cyclotomic::zero());
        prop_assert_eq!(a.mul(&Cyclotomic::one()), a.clone());
    }

    #[test]
    fn conjugation_is_a_ring_involution(a in small_cyclo(), b in small_cyclo()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(a.add(&b).conj(), a.conj().add(&b.conj()));
        prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
        // the norm a * conj(a) of a nonzero element is a positive rational
        // exactly when a is rational
        if let Some(r) = a.as_rational() {
            prop_assert_eq!(a.mul(&a.conj()).as_rational(), Some(r.clone() * r));
        }
    }

    #[test]
    fn galois_action_is_multiplicative(a in small_cyclo(), b in small_cyclo(), j in 1u64..12) {
        // galois maps are defined for exponents prime to the conductor;
        // j = 1 always works, otherwise skip incompatible samples
        let n = a.mul(&b).conductor().max(a.conductor()).max(b.conductor());
        prop_assume!(num_integer::gcd(j, n) == 1);
        prop_assert_eq!(a.mul(&b).galois(j), a.galois(j).mul(&b.galois(j)));
        prop_assert_eq!(a.add(&b).galois(j), a.galois(j).add(&b.galois(j)));
    }

    #[test]
    fn inverse_law(a in tiny_cyclo()) {
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a.mul(&inv), Cyclotomic::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn roots_of_unity_have_exact_order(n in 1u64..=16) {
        let z = Cyclotomic::root_of_unity(n, 1);
        prop_assert_eq!(z.pow(n as u32), Cyclotomic::one());
        for k in 1..n {
            prop_assert!(z.pow(k as u32) != Cyclotomic::one() || n == 1);
        }
    }
}

fn field_elem(p: u64, level: u32) -> impl Strategy<Value = FqElem> {
    let q = p.pow(level);
    (0..q).prop_map(move |k| {
        let elems = FqElem::enumerate(p, level);
        elems[k as usize].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_is_a_field_automorphism(
        (p, level) in prop_oneof![Just((2u64, 4u32)), Just((3, 2)), Just((5, 2))],
        seed in any::<prop::sample::Index>(),
        seed2 in any::<prop::sample::Index>(),
        d in 1u32..4,
    ) {
        let elems = FqElem::enumerate(p, level);
        let a = &elems[seed.index(elems.len())];
        let b = &elems[seed2.index(elems.len())];
        prop_assert_eq!(a.add(b).frobenius(d), a.frobenius(d).add(&b.frobenius(d)));
        prop_assert_eq!(a.mul(b).frobenius(d), a.frobenius(d).mul(&b.frobenius(d)));
        // x -> x^{p^d} pointwise
        prop_assert_eq!(a.frobenius(d), a.pow(p.pow(d)));
        // level-many applications are the identity
        prop_assert_eq!(a.frobenius(level), a.clone());
    }

    #[test]
    fn embedding_is_a_ring_homomorphism(
        a in field_elem(2, 2),
        b in field_elem(2, 2),
    ) {
        prop_assert_eq!(a.add(&b).embed(4), a.embed(4).add(&b.embed(4)));
        prop_assert_eq!(a.mul(&b).embed(4), a.embed(4).mul(&b.embed(4)));
        prop_assert_eq!(a.embed(4).descend(2), Some(a.clone()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norm_composition_law(x in any::<prop::sample::Index>(), r in 1u32..5, s in 1u32..5) {
        // N_{r+s}(x) = N_r(x) * F^r(N_s(x))
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 1000).unwrap();
        let frob = g.frob_perm(1);
        let x = x.index(g.order());
        let lhs = power_norm_idx(&g, &frob, x, r + s);
        let mut ns = power_norm_idx(&g, &frob, x, s);
        for _ in 0..r {
            ns = frob[ns];
        }
        let rhs = g.mul(power_norm_idx(&g, &frob, x, r), ns);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisted_classes_are_invariant(
        x in any::<prop::sample::Index>(),
        z in any::<prop::sample::Index>(),
    ) {
        // y = z^{-1} x F(z) stays in the twisted class of x
        let g = EnumeratedGroup::enumerate(2, 2, 2, true, 1000).unwrap();
        let frob = g.frob_perm(1);
        let part = twisted_classes(&g, &frob).unwrap();
        let x = x.index(g.order());
        let z = z.index(g.order());
        let y = g.mul(g.mul(g.inv(z), x), frob[z]);
        prop_assert_eq!(part.block_of[x], part.block_of[y]);
    }

    #[test]
    fn frobenius_powers_compose(r in 1usize..6, s in 1usize..6) {
        let g = EnumeratedGroup::enumerate(1, 2, 4, false, 1000).unwrap();
        let frob = g.frob_perm(1);
        let a = perm_pow(&frob, r + s);
        let b: Vec<usize> = perm_pow(&frob, r).iter().map(|&i| perm_pow(&frob, s)[i]).collect();
        prop_assert_eq!(a, b);
    }
}
