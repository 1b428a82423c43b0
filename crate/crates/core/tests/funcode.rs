use std::collections::BTreeMap;

use denniston::arcs::*;
use denniston::funcode::*;
use denniston::gf::{Elem, FieldContext};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arc(m: u32, h: AdditiveSubgroup, origin: bool) -> Arc {
    let f = FieldContext::with_degree(m).unwrap();
    let opts = if origin {
        ArcOptions::with_origin()
    } else {
        ArcOptions::without_origin()
    };
    denniston_arc(&f, QuadraticForm::standard(&f), h, opts).unwrap()
}

fn weight(w: &[Elem]) -> usize {
    w.iter().filter(|e| !e.is_zero()).count()
}

/// Histogram over all `q^k` messages, encoding each one directly.
fn brute_distribution(g: &GeneratorMatrix) -> BTreeMap<usize, u64> {
    let q = g.field().q();
    let k = g.k();
    let mut out = BTreeMap::new();
    let mut msg = vec![Elem::ZERO; k];
    loop {
        *out.entry(weight(&g.encode(&msg).unwrap())).or_insert(0) += 1;
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            msg[i] = Elem(msg[i].0 + 1);
            if msg[i].0 < q {
                break;
            }
            msg[i] = Elem::ZERO;
            i += 1;
        }
    }
}

fn random_generator(f: &FieldContext, k: usize, n: usize, rng: &mut ChaCha8Rng) -> GeneratorMatrix {
    let rows = (0..k)
        .map(|_| (0..n).map(|_| Elem(rng.gen_range(0..f.q()))).collect())
        .collect();
    GeneratorMatrix::new(f, rows).unwrap()
}

#[test]
fn gray_enumeration_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (m, k, n) in [(1, 6, 9), (2, 4, 7), (3, 3, 10), (4, 3, 12), (2, 6, 5)] {
        let f = FieldContext::with_degree(m).unwrap();
        let g = random_generator(&f, k, n, &mut rng);
        let d = weight_distribution(&g, 2, Budget::default()).unwrap();
        assert_eq!(d.counts, brute_distribution(&g), "m={m} k={k}");
    }
}

#[test]
fn macwilliams_matches_brute_dual() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = FieldContext::with_degree(2).unwrap();
    for _ in 0..5 {
        let g = random_generator(&f, 2, 5, &mut rng);
        if g.rank() < 2 {
            continue;
        }
        let d = weight_distribution(&g, 1, Budget::default()).unwrap();
        let dual = macwilliams_dual(&d, 2).unwrap();
        // brute dual: all v with G v^T = 0
        let mut want = vec![0u64; 6];
        for code in 0..(4u32.pow(5)) {
            let v: Vec<Elem> = (0..5).map(|i| Elem(code >> (2 * i) & 3)).collect();
            let orth = g.rows().iter().all(|r| {
                r.iter()
                    .zip(&v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| acc + f.mul(a, b))
                    .is_zero()
            });
            if orth {
                want[weight(&v)] += 1;
            }
        }
        let got: Vec<u64> = dual.iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(got, want);
    }
}

#[test]
fn linear_code_has_two_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [3, 4, 5] {
        let f = FieldContext::with_degree(m).unwrap();
        for dim in 1..m {
            let all = AdditiveSubgroup::enumerate(&f, dim);
            let h = all[rng.gen_range(0..all.len())].clone();
            let deg = h.len();
            let a = arc(m, h, true);
            let n = a.len();
            let code = build_code(&a, &MonomialSpace::linear3()).unwrap();
            let w = two_weight_check(code.generator(), 0, Budget::default()).unwrap();
            let want: std::collections::BTreeSet<usize> = [n - deg, n].into();
            assert_eq!(w, want, "q={} |H|={deg}", f.q());
        }
    }
}

#[test]
fn two_weight_examples_at_16() {
    let f = FieldContext::with_degree(4).unwrap();
    let a = arc(4, AdditiveSubgroup::trace_kernel(&f), true);
    let code = build_code(&a, &MonomialSpace::linear3()).unwrap();
    let w = two_weight_check(code.generator(), 0, Budget::default()).unwrap();
    assert_eq!(w, [112, 120].into());

    let eta = f.generator();
    let xi = f.xi().unwrap();
    let h = AdditiveSubgroup::from_elements(
        &f,
        &[Elem::ZERO, eta, f.mul(eta, xi), f.mul(eta, f.square(xi))],
    )
    .unwrap();
    let form = QuadraticForm::new(Elem::ONE, f.pow(eta, 10), f.pow(eta, 8));
    let a = denniston_arc(&f, form, h, ArcOptions::with_origin()).unwrap();
    let code = build_code(&a, &MonomialSpace::linear3()).unwrap();
    let w = two_weight_check(code.generator(), 0, Budget::default()).unwrap();
    assert_eq!(w, [48, 52].into());
}

#[test]
fn distribution_invariants_and_worker_determinism() {
    let f = FieldContext::with_degree(4).unwrap();
    for origin in [true, false] {
        let a = arc(4, AdditiveSubgroup::trace_kernel(&f), origin);
        let code = build_code(&a, &MonomialSpace::conic5()).unwrap();
        let base = weight_distribution(code.generator(), 1, Budget::default()).unwrap();
        assert_eq!(base.total(), 16u128.pow(5));
        base.check_invariants(5).unwrap();
        assert!(base.counts.iter().all(|(&w, &c)| w == 0 || c % 15 == 0));
        assert_eq!(base.counts[&0], 1);
        let dual = macwilliams_dual(&base, 5).unwrap();
        assert_eq!(dual[0], 1u32.into());
        for workers in [2, 3, 8, 0] {
            let d = weight_distribution(code.generator(), workers, Budget::default()).unwrap();
            assert_eq!(d, base, "workers={workers}");
            let (_, w1) = min_weight_codeword(code.generator(), 1, Budget::default()).unwrap();
            let (_, w2) =
                min_weight_codeword(code.generator(), workers, Budget::default()).unwrap();
            assert_eq!(w1, w2);
        }
    }
}

#[test]
fn random_messages_respect_distribution() {
    let f = FieldContext::with_degree(4).unwrap();
    let a = arc(4, AdditiveSubgroup::trace_kernel(&f), false);
    let code = build_code(&a, &MonomialSpace::conic5()).unwrap();
    let g = code.generator();
    let (d, witness) = min_weight_codeword(g, 0, Budget::default()).unwrap();
    let dmin = d.min_distance().unwrap();
    let witness = witness.unwrap();
    assert_eq!(weight(&g.encode(&witness.message).unwrap()), dmin);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let msg: Vec<Elem> = (0..5).map(|_| Elem(rng.gen_range(0..16))).collect();
        let w = weight(&g.encode(&msg).unwrap());
        if msg.iter().any(|e| !e.is_zero()) {
            assert!(w >= dmin);
        }
        assert!(d.counts.contains_key(&w));
        // a codeword's weight is the arc size minus the points on its curve
        let on_curve = a
            .points()
            .iter()
            .filter(|&&(x, y)| {
                let vals = code.space().eval_all(&f, x, y);
                vals.iter()
                    .zip(&msg)
                    .fold(Elem::ZERO, |acc, (&v, &u)| acc + f.mul(v, u))
                    .is_zero()
            })
            .count();
        assert_eq!(w, a.len() - on_curve);
    }
}

#[test]
fn xi_root_choice_does_not_change_distribution() {
    let f = FieldContext::with_degree(6).unwrap();
    let h = AdditiveSubgroup::subfield(&f, 3).unwrap();
    let mut dists = Vec::new();
    for xi in f.xi_roots().unwrap() {
        let form = QuadraticForm::new(Elem::ONE, Elem::ONE, xi);
        let a = denniston_arc(&f, form, h.clone(), ArcOptions::without_origin()).unwrap();
        let code = build_code(&a, &MonomialSpace::conic5()).unwrap();
        dists.push(weight_distribution(code.generator(), 0, Budget::default()).unwrap());
    }
    assert_eq!(dists[0].min_distance(), Some(435));
    assert_eq!(dists[0], dists[1]);
}

#[test]
fn rank_deficient_space_is_reported() {
    let f = FieldContext::with_degree(2).unwrap();
    let a = arc(2, AdditiveSubgroup::trace_kernel(&f), true);
    // on GF(4), x^4 = x at every point
    let space: MonomialSpace = "1:0,4:0".parse().unwrap();
    assert!(matches!(
        build_code(&a, &space),
        Err(CodeError::RankDeficient { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn generator_text_never_panics(s in "[0-9a-fA-Fx \\n]{0,80}|\\PC{0,40}") {
        let f = FieldContext::with_degree(4).unwrap();
        if let Ok(g) = GeneratorMatrix::from_text(&f, &s) {
            let back = GeneratorMatrix::from_text(&f, &g.to_text()).unwrap();
            prop_assert_eq!(back.rows(), g.rows());
        }
    }

    #[test]
    fn monomial_specs_never_panic(s in "[0-9:, ]{0,30}|\\PC{0,20}") {
        if let Ok(sp) = s.parse::<MonomialSpace>() {
            let again: MonomialSpace = sp.to_string().parse().unwrap();
            prop_assert_eq!(again, sp);
        }
    }
}
