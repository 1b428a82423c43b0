use std::sync::OnceLock;

use denniston::gf::{parse_hex, Elem, FieldContext, FieldSpec, SubfieldEmbedding};
use proptest::prelude::*;

/// Shift-and-add product reduced by the modulus.
fn slow_mul(a: u32, b: u32, spec: FieldSpec) -> u32 {
    let m = spec.m;
    let mut acc: u64 = 0;
    for i in 0..m {
        if b >> i & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    for bit in (m..2 * m).rev() {
        if acc >> bit & 1 == 1 {
            acc ^= (spec.modulus as u64) << (bit - m);
        }
    }
    acc as u32
}

fn fields() -> &'static Vec<FieldContext> {
    static F: OnceLock<Vec<FieldContext>> = OnceLock::new();
    F.get_or_init(|| {
        (1..=20)
            .map(|m| FieldContext::with_degree(m).unwrap())
            .collect()
    })
}

#[test]
fn default_moduli_for_small_degrees() {
    let want = [(4, 0x13), (5, 0x25), (6, 0x43)];
    for (m, modulus) in want {
        assert_eq!(FieldSpec::default_for(m).unwrap().modulus, modulus);
    }
}

#[test]
fn exhaustive_axioms_up_to_degree_six() {
    for f in &fields()[..6] {
        let spec = f.spec();
        let els: Vec<Elem> = f.elements().collect();
        assert_eq!(els.len() as u32, f.q());
        for &a in &els {
            for &b in &els {
                let ab = f.mul(a, b);
                assert_eq!(ab.0, slow_mul(a.0, b.0, spec));
                assert_eq!(ab, f.mul(b, a));
                if !b.is_zero() {
                    assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                }
                for &c in &els {
                    assert_eq!(f.mul(ab, c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, b + c), ab + f.mul(a, c));
                }
            }
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                assert_eq!(f.exp(f.log(a).unwrap() as u64), a);
            }
            assert_eq!(f.square(f.sqrt(a)), a);
            assert_eq!(f.pow(a, f.q() as u64), a);
        }
        assert!(f.inv(Elem::ZERO).is_err());
    }
}

#[test]
fn generator_has_full_order() {
    for f in &fields()[..12] {
        let g = f.generator();
        let n = f.q() as u64 - 1;
        let mut seen = std::collections::HashSet::new();
        let mut x = Elem::ONE;
        for _ in 0..n {
            seen.insert(x);
            x = f.mul(x, g);
        }
        assert_eq!(x, Elem::ONE);
        assert_eq!(seen.len() as u64, n);
    }
}

#[test]
fn xi_choice() {
    for f in fields() {
        match f.xi_roots() {
            Some([a, b]) => {
                assert_eq!(f.m() % 2, 0);
                for r in [a, b] {
                    assert_eq!(f.square(r) + r, Elem::ONE);
                }
                assert!(a.0 < b.0);
                assert_eq!(f.xi(), Some(a));
            }
            None => assert_eq!(f.m() % 2, 1),
        }
    }
}

#[test]
fn subfield_embeddings_are_homomorphisms() {
    let big = &fields()[11];
    for sub_m in [1, 2, 3, 4, 6] {
        let e = SubfieldEmbedding::new(big, sub_m).unwrap();
        let s = e.subfield();
        assert_eq!(e.image().len() as u32, 1 << sub_m);
        for a in s.elements() {
            for b in s.elements().take(16) {
                assert_eq!(e.embed(s.mul(a, b)), big.mul(e.embed(a), e.embed(b)));
                assert_eq!(e.embed(a + b), e.embed(a) + e.embed(b));
            }
            assert_eq!(e.restrict(e.embed(a)).unwrap(), a);
        }
    }
    assert!(SubfieldEmbedding::new(big, 5).is_err());
}

proptest! {
    #[test]
    fn axioms_sampled(m in 1u32..=20, a: u32, b: u32, c: u32) {
        let f = &fields()[m as usize - 1];
        let mask = f.q() - 1;
        let (a, b, c) = (Elem(a & mask), Elem(b & mask), Elem(c & mask));
        prop_assert_eq!(f.mul(a, b).0, slow_mul(a.0, b.0, f.spec()));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        prop_assert_eq!(f.frobenius(f.frobenius(a, 1), m - 1), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }

    #[test]
    fn hex_round_trip(v in 0u32..(1 << 20)) {
        let f = &fields()[19];
        let e = Elem(v);
        prop_assert_eq!(f.parse_elem(&e.to_string()).unwrap(), e);
        prop_assert_eq!(f.parse_elem(&format!("0x{v:X}")).unwrap(), e);
    }

    #[test]
    fn parsers_never_panic(s in "\\PC{0,24}") {
        let _ = parse_hex(&s);
        let _ = fields()[3].parse_elem(&s);
        let _ = serde_json::from_str::<FieldSpec>(&s);
    }

    #[test]
    fn field_specs_never_panic(m in 0u32..40, modulus: u32) {
        let spec = FieldSpec::new(m, modulus);
        if spec.validate().is_ok() {
            let f = FieldContext::new(spec).unwrap();
            prop_assert_eq!(f.q(), 1 << m);
        } else {
            prop_assert!(FieldContext::new(spec).is_err());
        }
    }
}
