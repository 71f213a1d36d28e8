use proptest::prelude::*;

use revbch::bch::{BchCode, Variant};
use revbch::cosets::{coset_leader, cyclotomic_coset, run_count_l, run_count_oracle, DEFAULT_ENUMERATION_BUDGET};
use revbch::distance::{designed_floor, exact_min_distance, lift_reversible};
use revbch::ffield::{Elem, Extension, Field};
use revbch::qpoly::{minimal_polynomial, Poly};
use revbch::theory::sphere_packing;

fn small_field() -> impl Strategy<Value = (u32, u32)> {
    prop_oneof![Just((2, 4)), Just((2, 5)), Just((3, 3)), Just((5, 2)), Just((2, 8)), Just((7, 2))]
}

fn field_and_pair() -> impl Strategy<Value = (Field, u32, u32)> {
    small_field().prop_flat_map(|(p, k)| {
        let order = p.pow(k);
        (Just(Field::new(p, k, None).unwrap()), 0..order, 0..order)
    })
}

fn poly(field: &Field, coeffs: &[u32]) -> Poly {
    Poly::new(field, coeffs.iter().map(|&c| Elem(c % field.order() as u32)).collect())
}

proptest! {
    #[test]
    fn frobenius_is_a_ring_map((f, a, b) in field_and_pair()) {
        let (a, b) = (Elem(a), Elem(b));
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn exp_inverts_log((f, a, _) in field_and_pair()) {
        let a = Elem(a);
        if !a.is_zero() {
            prop_assert_eq!(f.exp(f.log(a).unwrap() as i64), a);
        }
    }

    #[test]
    fn division_inverts_multiplication((f, a, b) in field_and_pair()) {
        let (a, b) = (Elem(a), Elem(b));
        if !b.is_zero() {
            prop_assert_eq!(f.div(f.mul(a, b), b).unwrap(), a);
        }
    }

    #[test]
    fn reciprocal_is_an_involution(coeffs in prop::collection::vec(0u32..3, 1..12), lead in 1u32..3, tail in 1u32..3) {
        let f = Field::new(3, 1, None).unwrap();
        let mut c = vec![tail];
        c.extend(coeffs);
        c.push(lead);
        let p = poly(&f, &c);
        prop_assert_eq!(p.reciprocal().unwrap().reciprocal().unwrap(), p);
    }

    #[test]
    fn lcm_is_associative(a in prop::collection::vec(0u32..2, 1..8), b in prop::collection::vec(0u32..2, 1..8), c in prop::collection::vec(0u32..2, 1..8)) {
        let f = Field::new(2, 1, None).unwrap();
        let (a, b, c) = (poly(&f, &a), poly(&f, &b), poly(&f, &c));
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let left = a.lcm(&b).unwrap().lcm(&c).unwrap();
        let right = a.lcm(&b.lcm(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coset_leader_is_the_minimum(i in 0u64..4096, qm in prop_oneof![Just((2u64, 6u32)), Just((3, 4)), Just((4, 3)), Just((2, 12))]) {
        let (q, m) = qm;
        let n = q.pow(m) - 1;
        let i = i % n;
        let coset = cyclotomic_coset(i, q, m).unwrap();
        prop_assert_eq!(coset_leader(i, q, n), coset.leader());
        prop_assert!(coset.leader() <= i);
        prop_assert!(coset.contains(i));
        prop_assert_eq!(m as usize % coset.len(), 0);
    }

    #[test]
    fn run_recursion_matches_enumeration(q in 2u64..5, s in 1u32..9, r in 1u32..9) {
        prop_assume!(r <= s);
        prop_assert_eq!(run_count_l(r, s, q), run_count_oracle(r, s, q, DEFAULT_ENUMERATION_BUDGET).unwrap());
    }

    #[test]
    fn sphere_packing_tightens_with_k(m in 4u32..9, delta in 2u64..6, k in 1u64..10) {
        let n = (1u64 << m) - 1;
        prop_assume!(k < n);
        let smaller = sphere_packing(2, m, delta, k - 1).unwrap();
        let larger = sphere_packing(2, m, delta, k).unwrap();
        prop_assert_eq!(&smaller.volume, &larger.volume);
        prop_assert!(larger.bound < smaller.bound);
        prop_assert!(!smaller.triggered() || larger.triggered());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn minimal_polynomial_divides_x_n_minus_one(i in 0u64..255, qm in prop_oneof![Just((2u64, 8u32)), Just((3, 4)), Just((4, 3)), Just((5, 3))]) {
        let (q, m) = qm;
        let ext = Extension::canonical(q, m).unwrap();
        let n = ext.n();
        let i = i % n;
        let mp = minimal_polynomial(&ext, i).unwrap();
        let x_n = Poly::x_n_minus_one(ext.field(), n as usize);
        prop_assert!(x_n.is_divisible_by(&mp).unwrap());
        prop_assert_eq!(mp.degree(), Some(cyclotomic_coset(i, q, m).unwrap().len()));
        prop_assert!(mp.eval(ext.field().exp(i as i64)).is_zero());
    }

    #[test]
    fn subfield_has_q_elements(qm in prop_oneof![Just((2u64, 4u32)), Just((4, 2)), Just((3, 2)), Just((2, 6)), Just((4, 3)), Just((8, 2))]) {
        let (q, m) = qm;
        let ext = Extension::canonical(q, m).unwrap();
        let sub = ext.field().subfield_elements(q).unwrap();
        prop_assert_eq!(sub.len() as u64, q);
        for &a in &sub {
            prop_assert_eq!(ext.field().pow(a, q as i64).unwrap(), a);
        }
    }

    #[test]
    fn encoded_words_are_members(msg in prop::collection::vec(0u32..3, 1..13), variant in prop::sample::select(Variant::ALL.to_vec())) {
        let ext = Extension::canonical(3, 3).unwrap();
        let code = BchCode::new(&ext, 4, variant).unwrap();
        let k = code.dimension();
        let msg: Vec<u32> = msg.into_iter().take(k).collect();
        let word = code.encode(&poly(ext.field(), &msg)).unwrap();
        prop_assert!(code.membership(&word).unwrap());
        if variant == Variant::Overline {
            prop_assert!(word.eval(Elem::ONE).is_zero());
        }
        if !word.is_zero() {
            prop_assert!(word.weight() as u64 >= designed_floor(&code));
        }
    }
}

#[test]
fn certificates_verify_against_their_codes() {
    for (q, m, delta) in [(2u64, 4u32, 3u64), (2, 5, 5), (3, 2, 3), (4, 2, 3)] {
        let ext = Extension::canonical(q, m).unwrap();
        let code = BchCode::new(&ext, delta, Variant::Overline).unwrap();
        let cert = exact_min_distance(&code, 1 << 22).unwrap();
        assert!(cert.is_exact());
        assert!(cert.verify(&code).unwrap(), "({q},{m},{delta})");
        assert!(cert.d_lower >= 2 * delta);
    }
}

#[test]
fn palindromic_plus_codewords_lift() {
    let ext = Extension::canonical(2, 4).unwrap();
    let plus = BchCode::new(&ext, 3, Variant::Plus).unwrap();
    let f = ext.field();
    // (1 + x^5 + x^10) vanishes at every alpha^i with 3 not dividing i
    let c = Poly::from_ints(f, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1]);
    assert!(plus.membership(&c).unwrap());
    let cert = lift_reversible(&c, &plus).unwrap();
    assert_eq!(cert.exact(), Some(6));
    let bar = BchCode::new(&ext, 3, Variant::Overline).unwrap();
    assert!(cert.verify(&bar).unwrap());
}
