use proptest::prelude::*;

use goodpoly::constructions::{
    annihilator, dickson, dickson_product_form, normalize, AdditiveSubgroup, DicksonParams,
};
use goodpoly::goodness::{fibers, gamma};
use goodpoly::lrc::{Codeword, LrcCode};
use goodpoly::numtheory::gcd;
use goodpoly::{FieldSpec, Poly, QuadraticExtension};

/// A small field: p in {2, 3, 5, 7, 11, 13}, q <= 729.
fn small_field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just((2u64, 1u32)),
        Just((2, 3)),
        Just((2, 4)),
        Just((2, 6)),
        Just((3, 1)),
        Just((3, 2)),
        Just((3, 4)),
        Just((5, 1)),
        Just((5, 2)),
        Just((7, 1)),
        Just((11, 1)),
        Just((13, 1)),
    ]
    .prop_map(|(p, m)| FieldSpec::new(p, m, None).unwrap())
}

fn field_and_elements(count: usize) -> impl Strategy<Value = (FieldSpec, Vec<u32>)> {
    small_field().prop_flat_map(move |f| {
        let q = f.q();
        (Just(f), proptest::collection::vec(0..q, count))
    })
}

fn field_and_poly(max_degree: usize) -> impl Strategy<Value = (FieldSpec, Poly)> {
    small_field().prop_flat_map(move |f| {
        let q = f.q();
        (Just(f.clone()), proptest::collection::vec(0..q, 1..=max_degree + 1))
            .prop_map(|(f, c)| {
                let p = Poly::new(&f, c).unwrap();
                (f, p)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn coords_round_trip((f, xs) in field_and_elements(1)) {
        let a = xs[0];
        prop_assert_eq!(f.from_coords(&f.coords(a)), a);
    }

    #[test]
    fn frobenius_fixes_field((f, xs) in field_and_elements(1)) {
        prop_assert_eq!(f.pow(xs[0], f.q() as u64), xs[0]);
    }

    #[test]
    fn field_axioms((f, xs) in field_and_elements(3)) {
        let (a, b, c) = (xs[0], xs[1], xs[2]);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.mul_reference(a, b));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn quadratic_character_multiplicative((f, xs) in field_and_elements(2)) {
        prop_assume!(f.is_odd() && xs[0] != 0 && xs[1] != 0);
        let e = |x| f.quadratic_character(x).unwrap();
        prop_assert_eq!(e(f.mul(xs[0], xs[1])), e(xs[0]) * e(xs[1]));
    }

    #[test]
    fn trace_is_linear((f, xs) in field_and_elements(2)) {
        let t = |x| f.absolute_trace(x);
        prop_assert_eq!(t(f.add(xs[0], xs[1])), (t(xs[0]) + t(xs[1])) % f.p());
    }

    #[test]
    fn factorization_recomposes((_f, g) in field_and_poly(10), seed in any::<u64>()) {
        prop_assume!(g.deg() >= 1);
        let fact = g.factor(seed).unwrap();
        prop_assert_eq!(fact.recompose(), g.clone());
        for (h, _) in &fact.factors {
            prop_assert!(h.is_monic());
        }
        // same multiset of factors under any seed
        prop_assert_eq!(fact.factors, g.factor(seed ^ 0x5555).unwrap().factors);
    }

    #[test]
    fn gamma_within_bound((f, g) in field_and_poly(6)) {
        prop_assume!(g.deg() >= 1 && (g.deg() as u32) < f.q());
        let n = g.deg() as u64;
        let count = gamma(&g).unwrap();
        prop_assert!(count <= f.q() as u64 / n);
        let fs = fibers(&g).unwrap();
        prop_assert_eq!(fs.len() as u64, count);
        for fiber in fs {
            prop_assert_eq!(fiber.members.len() as u64, n);
        }
    }

    #[test]
    fn gamma_affine_invariant((f, xs) in field_and_elements(3), raw in proptest::collection::vec(0u32..1000, 2..6)) {
        let g = Poly::new(&f, raw.iter().map(|&c| c % f.q()).collect()).unwrap();
        prop_assume!(g.deg() >= 1 && (g.deg() as u32) < f.q());
        let (scale, shift, inner) = (xs[0], xs[1], xs[2]);
        prop_assume!(scale != 0);
        let base = gamma(&g).unwrap();
        prop_assert_eq!(gamma(&g.scale(scale).add_constant(shift)).unwrap(), base);
        let (normal, _) = normalize(&g).unwrap();
        prop_assert_eq!(gamma(&normal).unwrap(), base);
        // composing with T + inner permutes the fibers
        let moved = g.compose(&Poly::new(&f, vec![inner, 1]).unwrap()).unwrap();
        prop_assert_eq!(gamma(&moved).unwrap(), base);
    }

    #[test]
    fn annihilator_is_additive((f, xs) in field_and_elements(4)) {
        let b = AdditiveSubgroup::span(&f, &xs[..1]).unwrap_or_else(|_| AdditiveSubgroup::span(&f, &[]).unwrap());
        let h = annihilator(&b);
        let (x, y) = (xs[2], xs[3]);
        prop_assert_eq!(h.eval(f.add(x, y)), f.add(h.eval(x), h.eval(y)));
        let lambda = xs[1] % f.p();
        prop_assert_eq!(h.eval(f.mul(lambda, x)), f.mul(lambda, h.eval(x)));
        for &m in b.members() {
            prop_assert_eq!(h.eval(m), 0);
        }
    }

    #[test]
    fn dickson_functional_equation((f, xs) in field_and_elements(1), n in 1u32..13, u_code in any::<u64>()) {
        prop_assume!(f.q() <= 64 && xs[0] != 0);
        let ext = QuadraticExtension::new(&f);
        let u = ext.from_code(u_code % ext.order());
        prop_assume!(u != ext.zero());
        let a = ext.embed(xs[0]);
        let d = dickson(&DicksonParams::new(n, f.element(xs[0] as u64).unwrap()).unwrap());
        let u_inv = ext.inv(u).unwrap();
        let arg = ext.add(u, ext.mul(a, u_inv));
        let lhs = ext.eval_base(d.coeffs(), arg);
        let an = ext.pow(a, n as u64);
        let rhs = ext.add(ext.pow(u, n as u64), ext.mul(an, ext.pow(u_inv, n as u64)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dickson_frobenius_power(p_idx in 0usize..2, k in 1u32..6, l in 0u32..3, a_raw in any::<u32>()) {
        let p = [2u64, 3][p_idx];
        let f = FieldSpec::new(p, 2, None).unwrap();
        let a = f.element((a_raw % f.q()) as u64).unwrap();
        let pl = (p as u32).pow(l);
        let big = dickson(&DicksonParams::new(k * pl, a.clone()).unwrap());
        let small = dickson(&DicksonParams::new(k, a).unwrap()).pow(pl as u64);
        prop_assert_eq!(big, small);
    }

    #[test]
    fn dickson_product_identity((f, xs) in field_and_elements(1), n in 1u32..13) {
        prop_assume!(gcd(n as u64, f.q() as u64) == 1);
        let params = DicksonParams::new(n, f.element(xs[0] as u64).unwrap()).unwrap();
        if let Ok(product) = dickson_product_form(&params) {
            let d = dickson(&params);
            let expected = d.add_constant(f.neg(if n % 2 == 0 { d.coeff(0) } else { 0 }));
            prop_assert_eq!(product, expected);
        }
    }
}

fn reference_code() -> LrcCode {
    let f13 = FieldSpec::new(13, 1, None).unwrap();
    LrcCode::build(&Poly::monomial(&f13, 1, 3), 6, None).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encode_is_linear(u in proptest::collection::vec(0u32..13, 6), v in proptest::collection::vec(0u32..13, 6), alpha in 0u32..13, beta in 0u32..13) {
        let code = reference_code();
        let f = code.field().clone();
        let mix: Vec<u32> = u.iter().zip(&v).map(|(&a, &b)| f.add(f.mul(alpha, a), f.mul(beta, b))).collect();
        let (cu, cv) = (code.encode(&u).unwrap(), code.encode(&v).unwrap());
        let expected: Vec<u32> = cu.iter().zip(&cv).map(|(&a, &b)| f.add(f.mul(alpha, a), f.mul(beta, b))).collect();
        prop_assert_eq!(code.encode(&mix).unwrap(), expected);
    }

    #[test]
    fn single_erasure_round_trip(msg in proptest::collection::vec(0u32..13, 6), pos in 0usize..12) {
        let code = reference_code();
        let word = code.encode(&msg).unwrap();
        let mut received: Codeword = word.iter().copied().map(Some).collect();
        received[pos] = None;
        let fix = code.local_repair(&received).unwrap();
        prop_assert_eq!(fix.value, word[pos]);
        prop_assert_eq!(fix.reads, code.locality());
        prop_assert_eq!(code.erasure_decode(&received).unwrap(), msg);
    }

    #[test]
    fn groups_collapse_to_low_degree(msg in proptest::collection::vec(0u32..13, 6)) {
        // on a group, any r symbols predict the remaining one
        let code = reference_code();
        let word = code.encode(&msg).unwrap();
        let r = code.locality();
        for g in 0..code.groups().len() {
            let last = g * (r + 1) + r;
            let mut received: Codeword = word.iter().copied().map(Some).collect();
            received[last] = None;
            prop_assert_eq!(code.repair_at(&received, last).unwrap().value, word[last]);
        }
    }
}
