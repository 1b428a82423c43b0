use std::collections::BTreeSet;

use denniston::arcs::*;
use denniston::gf::{Elem, FieldContext};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Subgroups to test at one size: the first in enumeration order and one at random.
fn sample_subgroups(f: &FieldContext, dim: u32, rng: &mut ChaCha8Rng) -> Vec<AdditiveSubgroup> {
    let all = AdditiveSubgroup::enumerate(f, dim);
    let pick = rng.gen_range(0..all.len());
    let mut out = vec![all[0].clone()];
    if pick != 0 {
        out.push(all[pick].clone());
    }
    out
}

fn brute_points(
    f: &FieldContext,
    form: QuadraticForm,
    h: &AdditiveSubgroup,
) -> BTreeSet<(Elem, Elem)> {
    let mut s = BTreeSet::new();
    for x in f.elements() {
        for y in f.elements() {
            let v = f.mul(form.a, f.square(x))
                + f.mul(form.b, f.mul(x, y))
                + f.mul(form.c, f.square(y));
            if h.elements().contains(&v) {
                s.insert((x, y));
            }
        }
    }
    s
}

/// Points of `ax + by = c` (or the line at infinity) counted one by one.
fn incidences(f: &FieldContext, pts: &[(Elem, Elem)], l: &Line) -> usize {
    if l.is_at_infinity() {
        return 0;
    }
    pts.iter().filter(|&&(x, y)| l.contains(f, x, y)).count()
}

#[test]
fn sizes_and_line_incidence() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for m in [3, 4, 5, 6] {
        let f = FieldContext::with_degree(m).unwrap();
        let q = f.q() as usize;
        let form = QuadraticForm::standard(&f);
        let lines = projective_lines(&f);
        assert_eq!(lines.len(), q * q + q + 1);
        for dim in 1..m {
            for h in sample_subgroups(&f, dim, &mut rng) {
                let deg = h.len();
                let arc = denniston_arc(&f, form, h.clone(), ArcOptions::with_origin()).unwrap();
                assert_eq!(arc.len(), deg * q + deg - q, "q={q} |H|={deg}");
                assert_eq!(arc.len(), arc.expected_len());
                let brute = brute_points(&f, form, &h);
                assert_eq!(arc.points().iter().copied().collect::<BTreeSet<_>>(), brute);
                for l in &lines {
                    let n = incidences(&f, arc.points(), l);
                    assert!(n == 0 || n == deg, "q={q} |H|={deg} {l:?} meets {n}");
                }
                assert_eq!(arc.verify_maximal().unwrap(), deg);
                let star = arc.without_origin();
                assert_eq!(star.len(), arc.len() - 1);
                assert!(!star.points().contains(&(Elem::ZERO, Elem::ZERO)));
            }
        }
    }
}

#[test]
fn subspace_polynomial_vanishes_exactly_on_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for m in [3, 4, 5, 6] {
        let f = FieldContext::with_degree(m).unwrap();
        for dim in 1..m {
            for h in sample_subgroups(&f, dim, &mut rng) {
                let l = h.subspace_polynomial(&f);
                assert_eq!(l.degree(), h.len() as u64);
                let roots: BTreeSet<Elem> =
                    f.elements().filter(|&x| l.eval(&f, x).is_zero()).collect();
                assert_eq!(roots, h.elements().iter().copied().collect());
                // additive: L(x + y) = L(x) + L(y)
                let (x, y) = (Elem(rng.gen_range(0..f.q())), Elem(rng.gen_range(0..f.q())));
                assert_eq!(l.eval(&f, x + y), l.eval(&f, x) + l.eval(&f, y));
                // dense form evaluates the same
                let dense = l.dense();
                let horner = dense
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| f.mul(acc, x) + c);
                assert_eq!(horner, l.eval(&f, x));
                let arc = denniston_arc(
                    &f,
                    QuadraticForm::standard(&f),
                    h,
                    ArcOptions::with_origin(),
                )
                .unwrap();
                assert!(arc.curve_identity(&l));
            }
        }
    }
}

#[test]
fn trace_kernel_is_index_two() {
    for m in 2..=8 {
        let f = FieldContext::with_degree(m).unwrap();
        let h = AdditiveSubgroup::trace_kernel(&f);
        assert_eq!(h.len() as u32, f.q() / 2);
        assert!(h.elements().iter().all(|&x| f.trace(x) == 0));
    }
}

#[test]
fn forms_with_either_xi_root_are_irreducible() {
    for m in [2, 4, 6, 8] {
        let f = FieldContext::with_degree(m).unwrap();
        for xi in f.xi_roots().unwrap() {
            let form = QuadraticForm::new(Elem::ONE, Elem::ONE, xi);
            // irreducible exactly when only the origin is a zero
            let zeros = f
                .elements()
                .flat_map(|x| f.elements().map(move |y| (x, y)))
                .filter(|&(x, y)| form.eval(&f, x, y).is_zero())
                .count();
            assert_eq!(form.is_irreducible(&f), zeros == 1);
            assert_eq!(form.is_irreducible(&f), m % 4 == 2);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn arc_documents_never_panic(s in "\\PC{0,200}") {
        if let Ok(doc) = ArcDocument::from_json(&s) {
            let _ = doc.into_arc();
        }
    }

    #[test]
    fn mutated_documents_are_rejected_or_equal(idx in 0usize..119, v in 0u32..16) {
        let f = FieldContext::with_degree(4).unwrap();
        let arc = denniston_arc(&f, QuadraticForm::standard(&f), AdditiveSubgroup::trace_kernel(&f), ArcOptions::without_origin()).unwrap();
        let mut doc = arc.to_document();
        let old = doc.points[idx][1];
        doc.points[idx][1] = Elem(v);
        let back = ArcDocument::from_json(&doc.to_json()).unwrap().into_arc();
        prop_assert_eq!(back.is_ok(), old == Elem(v));
    }
}
