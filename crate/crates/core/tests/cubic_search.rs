use denniston::arcs::*;
use denniston::cubic_search::*;
use denniston::gf::*;

fn omega16() -> Arc {
    let f = FieldContext::with_degree(4).unwrap();
    denniston_arc(
        &f,
        QuadraticForm::standard(&f),
        AdditiveSubgroup::trace_kernel(&f),
        ArcOptions::with_origin(),
    )
    .unwrap()
}

fn line_points(arc: &Arc, l: &Line) -> usize {
    let f = arc.field();
    arc.points()
        .iter()
        .filter(|&&(x, y)| !l.is_at_infinity() && l.contains(f, x, y))
        .count()
}

fn union_count(arc: &Arc, on: impl Fn(Elem, Elem) -> bool) -> usize {
    arc.points().iter().filter(|&&(x, y)| on(x, y)).count()
}

#[test]
fn masks_match_direct_counts() {
    let arc = omega16();
    for (l, m) in line_profiles(&arc).iter().step_by(7) {
        assert_eq!(m.count(), line_points(&arc, l));
    }
}

#[test]
fn three_lines_repeated_line() {
    let arc = omega16();
    let p = line_profiles(&arc);
    let (_, secant) = p.iter().find(|(_, m)| m.count() == 8).unwrap();
    assert_eq!(secant.union(secant).union(secant).count(), 8);
}

#[test]
fn reducible_maxima_on_both_arcs() {
    let f = FieldContext::with_degree(4).unwrap();
    for arc in [omega16(), omega16().without_origin()] {
        let p = line_profiles(&arc);
        let three = max_three_lines(&p);
        assert!(three.max_union <= 24);
        assert!(three.max_union <= 3 * 8);
        let [a, b, c] = three.witness;
        let direct = union_count(&arc, |x, y| {
            a.contains(&f, x, y) || b.contains(&f, x, y) || c.contains(&f, x, y)
        });
        assert_eq!(direct, three.max_union);

        let lc = max_line_plus_conic(&arc, &p, 0).unwrap();
        assert_eq!(lc.conics_scanned, 1_118_481);
        assert!(lc.max_union <= 25);
        assert!(lc.max_union <= 8 + 17);
        // pairs of lines are conics, so this search covers three lines
        assert!(lc.max_union >= three.max_union);
        assert!(lc.max_union_smooth <= lc.max_union);
        let direct = union_count(&arc, |x, y| {
            lc.line.contains(&f, x, y) || lc.conic.eval(&f, x, y).is_zero()
        });
        assert_eq!(direct, lc.max_union);
        assert!(!lc.smooth_conic.is_degenerate(&f));
    }
}

#[test]
fn line_plus_conic_is_worker_invariant() {
    let arc = omega16();
    let p = line_profiles(&arc);
    assert_eq!(
        max_line_plus_conic(&arc, &p, 1).unwrap(),
        max_line_plus_conic(&arc, &p, 3).unwrap()
    );
}

#[test]
fn stochastic_search_is_reproducible() {
    let arc = omega16();
    let a = stochastic_cubic_search(&arc, 200_000, 9);
    let b = stochastic_cubic_search(&arc, 200_000, 9);
    assert_eq!(a, b);
    assert_eq!(a.count, a.recount(&arc));
    assert!(a.count <= 25);
    assert!(a.evaluated <= 200_000);
}

#[test]
fn dim10_statement() {
    let arc = omega16();
    let r = dim10_distance_report(&arc, &arc.without_origin(), 100_000, 1, 0).unwrap();
    assert!(r.omega.d_lower >= 95);
    assert!(r.omega_star.d_lower >= 94);
    assert!(r.omega.d_lower <= r.omega.d_upper);
    assert_eq!(r.omega.irreducible_cap, 25);
}
