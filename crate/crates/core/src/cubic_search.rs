//! Largest intersections of plane cubics with an arc, by bit-mask incidence.
//!
//! Reducible cubics are covered exhaustively: three lines, and one line with
//! any projective conic (degenerate conics included). Irreducible cubics are
//! only sampled, by a seeded hill-climb; their Hasse-Weil cap is an external
//! input, not something computed here.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arcs::{projective_lines, Arc, Line};
use crate::funcode::{
    enumerate_projective, Budget, CodeError, EvalCode, MonomialSpace, Symbol, WordVisitor,
};
use crate::gf::{Elem, FieldContext};

/// Bit `p` set iff arc point `p` lies on the variety.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMask {
    words: Vec<u64>,
}

impl IncidenceMask {
    pub fn empty(n: usize) -> Self {
        IncidenceMask {
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn from_fn(n: usize, mut on: impl FnMut(usize) -> bool) -> Self {
        let mut m = Self::empty(n);
        for p in 0..n {
            if on(p) {
                m.set(p);
            }
        }
        m
    }

    pub fn set(&mut self, p: usize) {
        self.words[p / 64] |= 1 << (p % 64);
    }

    pub fn get(&self, p: usize) -> bool {
        self.words[p / 64] >> (p % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union(&self, other: &IncidenceMask) -> IncidenceMask {
        IncidenceMask {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// One mask per projective line, line at infinity last.
pub fn line_profiles(arc: &Arc) -> Vec<(Line, IncidenceMask)> {
    let f = arc.field();
    let pts = arc.points();
    projective_lines(f)
        .into_iter()
        .map(|l| {
            let mask = IncidenceMask::from_fn(pts.len(), |p| {
                !l.is_at_infinity() && l.contains(f, pts[p].0, pts[p].1)
            });
            (l, mask)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeLines {
    pub max_union: usize,
    pub witness: [Line; 3],
}

/// Exact maximum over all multisets of three lines.
pub fn max_three_lines(profiles: &[(Line, IncidenceMask)]) -> ThreeLines {
    let mut best = (0usize, [0usize; 3]);
    let mut first = true;
    for i in 0..profiles.len() {
        for j in i..profiles.len() {
            let ij = profiles[i].1.union(&profiles[j].1);
            for (k, (_, mk)) in profiles.iter().enumerate().skip(j) {
                let n: usize = ij
                    .words
                    .iter()
                    .zip(&mk.words)
                    .map(|(a, b)| (a | b).count_ones() as usize)
                    .sum();
                if first || n > best.0 {
                    best = (n, [i, j, k]);
                    first = false;
                }
            }
        }
    }
    ThreeLines {
        max_union: best.0,
        witness: best.1.map(|i| profiles[i].0),
    }
}

/// Projective conic `a X^2 + b XY + c Y^2 + d XZ + e YZ + f Z^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ProjConic(pub [Elem; 6]);

impl ProjConic {
    /// Exponents of the affine monomials in coefficient order.
    pub const EXPONENTS: [(u32, u32); 6] = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)];

    pub fn eval(&self, field: &FieldContext, x: Elem, y: Elem) -> Elem {
        eval_monomials(field, &Self::EXPONENTS, &self.0, x, y)
    }

    /// `a e^2 + c d^2 + f b^2 + b d e`: zero iff the conic is singular.
    pub fn discriminant(&self, field: &FieldContext) -> Elem {
        let [a, b, c, d, e, f] = self.0;
        field.mul(a, field.square(e))
            + field.mul(c, field.square(d))
            + field.mul(f, field.square(b))
            + field.mul(b, field.mul(d, e))
    }

    pub fn is_degenerate(&self, field: &FieldContext) -> bool {
        self.discriminant(field).is_zero()
    }
}

fn eval_monomials(
    field: &FieldContext,
    exps: &[(u32, u32)],
    coeffs: &[Elem],
    x: Elem,
    y: Elem,
) -> Elem {
    let mut acc = Elem::ZERO;
    for (&(i, j), &c) in exps.iter().zip(coeffs) {
        if !c.is_zero() {
            acc += field.mul(c, field.mul(field.pow(x, i as u64), field.pow(y, j as u64)));
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinePlusConic {
    pub max_union: usize,
    pub line: Line,
    pub conic: ProjConic,
    /// Best union when the conic is nonsingular.
    pub max_union_smooth: usize,
    pub smooth_line: Line,
    pub smooth_conic: ProjConic,
    pub conics_scanned: u64,
}

/// Best `(count, message, line index)`; ties go to the smallest message,
/// then the smallest line index.
type Best = Option<(usize, Vec<u32>, usize)>;

fn better(best: &Best, count: usize, msg: &[u32], line: usize) -> bool {
    match best {
        None => true,
        Some((c, m, l)) => {
            count > *c
                || (count == *c && (msg < m.as_slice() || (msg == m.as_slice() && line < *l)))
        }
    }
}

struct ConicScan<'a> {
    field: &'a FieldContext,
    lines: &'a [u64],
    words: usize,
    any: Best,
    smooth: Best,
    scanned: u64,
    mask: Vec<u64>,
}

impl<'a> ConicScan<'a> {
    fn offer(slot: &mut Best, count: usize, msg: &[u32], line: usize) {
        if better(slot, count, msg, line) {
            *slot = Some((count, msg.to_vec(), line));
        }
    }
}

impl WordVisitor for ConicScan<'_> {
    fn visit<S: Symbol>(&mut self, message: &[u32], word: &[S], _weight: usize) {
        self.scanned += 1;
        self.mask.iter_mut().for_each(|w| *w = 0);
        for (p, &v) in word.iter().enumerate() {
            if v == S::default() {
                self.mask[p / 64] |= 1 << (p % 64);
            }
        }
        let mut top = 0usize;
        let mut top_line = 0usize;
        for (l, lm) in self.lines.chunks_exact(self.words).enumerate() {
            let n: usize = lm
                .iter()
                .zip(&self.mask)
                .map(|(a, b)| (a | b).count_ones() as usize)
                .sum();
            if n > top {
                top = n;
                top_line = l;
            }
        }
        Self::offer(&mut self.any, top, message, top_line);
        let msg: [Elem; 6] = std::array::from_fn(|i| Elem(message[i]));
        if !ProjConic(msg).is_degenerate(self.field) {
            Self::offer(&mut self.smooth, top, message, top_line);
        }
    }

    fn merge(&mut self, other: Self) {
        self.scanned += other.scanned;
        if let Some((c, m, l)) = other.any {
            Self::offer(&mut self.any, c, &m, l);
        }
        if let Some((c, m, l)) = other.smooth {
            Self::offer(&mut self.smooth, c, &m, l);
        }
    }
}

/// Exact maximum of `|(line ∪ conic) ∩ arc|` over every line and every
/// projective conic class. Conic values on the arc come from the Gray walk
/// of the six-monomial evaluation code.
pub fn max_line_plus_conic(
    arc: &Arc,
    profiles: &[(Line, IncidenceMask)],
    workers: usize,
) -> Result<LinePlusConic, CodeError> {
    let f = arc.field();
    let n = arc.len();
    let words = n.div_ceil(64);
    let lines: Vec<u64> = profiles
        .iter()
        .flat_map(|(_, m)| m.words.iter().copied())
        .collect();
    let space = MonomialSpace::new(ProjConic::EXPONENTS.to_vec())?;
    let code = EvalCode::from_points(f, arc.points(), &space)?;
    let budget = Budget::messages(u128::from(u32::MAX));
    let scan = enumerate_projective(code.generator(), workers, budget, || ConicScan {
        field: f,
        lines: &lines,
        words,
        any: None,
        smooth: None,
        scanned: 0,
        mask: vec![0; words],
    })?;
    let unpack = |b: Best| {
        let (c, m, l) = b.expect("at least one conic");
        (
            c,
            profiles[l].0,
            ProjConic(std::array::from_fn(|i| Elem(m[i]))),
        )
    };
    let (max_union, line, conic) = unpack(scan.any);
    let (max_union_smooth, smooth_line, smooth_conic) = unpack(scan.smooth);
    Ok(LinePlusConic {
        max_union,
        line,
        conic,
        max_union_smooth,
        smooth_line,
        smooth_conic,
        conics_scanned: scan.scanned,
    })
}

/// A cubic in the basis of [`MonomialSpace::cubic10`] with its counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicWitness {
    pub coeffs: Vec<Elem>,
    pub count: usize,
    /// Candidates scored, at most the budget.
    pub evaluated: u64,
    pub restarts: u64,
}

impl CubicWitness {
    /// Arc points on the curve by direct evaluation.
    pub fn recount(&self, arc: &Arc) -> usize {
        cubic_count(arc, &self.coeffs)
    }
}

pub fn cubic_count(arc: &Arc, coeffs: &[Elem]) -> usize {
    let f = arc.field();
    let space = MonomialSpace::cubic10();
    arc.points()
        .iter()
        .filter(|&&(x, y)| eval_monomials(f, space.exponents(), coeffs, x, y).is_zero())
        .count()
}

struct Climb<'a> {
    field: &'a FieldContext,
    /// `rows[j][p]`: monomial `j` at point `p`.
    rows: Vec<Vec<Elem>>,
    msg: Vec<Elem>,
    /// Current value at every point.
    values: Vec<Elem>,
    hist: Vec<u32>,
}

impl<'a> Climb<'a> {
    fn new(field: &'a FieldContext, arc: &Arc) -> Self {
        let space = MonomialSpace::cubic10();
        let mut rows = vec![Vec::with_capacity(arc.len()); space.len()];
        for &(x, y) in arc.points() {
            for (row, v) in rows.iter_mut().zip(space.eval_all(field, x, y)) {
                row.push(v);
            }
        }
        Climb {
            field,
            values: vec![Elem::ZERO; arc.len()],
            msg: vec![Elem::ZERO; rows.len()],
            hist: vec![0; field.q() as usize],
            rows,
        }
    }

    fn load(&mut self, msg: Vec<Elem>) {
        let f = self.field;
        self.values.iter_mut().for_each(|v| *v = Elem::ZERO);
        for (row, &u) in self.rows.iter().zip(&msg) {
            if u.is_zero() {
                continue;
            }
            for (v, &r) in self.values.iter_mut().zip(row) {
                *v += f.mul(u, r);
            }
        }
        self.msg = msg;
    }

    fn zeros(&self) -> usize {
        self.values.iter().filter(|v| v.is_zero()).count()
    }

    /// Best replacement for coordinate `j`: `(count, value)`, excluding the
    /// zero polynomial, ties to the smallest encoding.
    fn best_for(&mut self, j: usize) -> (usize, Elem) {
        let f = self.field;
        let u = self.msg[j];
        self.hist.iter_mut().for_each(|h| *h = 0);
        let mut fixed = 0usize;
        for (&v, &r) in self.values.iter().zip(&self.rows[j]) {
            if r.is_zero() {
                fixed += v.is_zero() as usize;
            } else {
                // v + (t - u) r = 0  <=>  t = u + v / r
                let t = u + f.div(v, r).expect("nonzero");
                self.hist[t.0 as usize] += 1;
            }
        }
        let others_zero = self
            .msg
            .iter()
            .enumerate()
            .all(|(i, c)| i == j || c.is_zero());
        let mut best = (0usize, Elem::ZERO);
        let mut found = false;
        for (t, &h) in self.hist.iter().enumerate() {
            if t == 0 && others_zero {
                continue;
            }
            let c = fixed + h as usize;
            if !found || c > best.0 {
                best = (c, Elem(t as u32));
                found = true;
            }
        }
        best
    }

    fn set(&mut self, j: usize, t: Elem) {
        let f = self.field;
        let delta = self.msg[j] + t;
        if delta.is_zero() {
            return;
        }
        for (v, &r) in self.values.iter_mut().zip(&self.rows[j]) {
            *v += f.mul(delta, r);
        }
        self.msg[j] = t;
    }
}

fn random_message(q: u32, k: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    loop {
        let m: Vec<Elem> = (0..k).map(|_| Elem(rng.gen_range(0..q))).collect();
        if m.iter().any(|e| !e.is_zero()) {
            return m;
        }
    }
}

/// Seeded hill-climb with random restarts. A move replaces one coefficient
/// by the value scoring best among all `q`; it is taken when it does not
/// lower the count. A full pass without a strict gain triggers a restart.
/// The budget counts scored candidates. Never claims optimality.
pub fn stochastic_cubic_search(arc: &Arc, budget: u64, seed: u64) -> CubicWitness {
    let f = arc.field();
    let q = f.q();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut climb = Climb::new(f, arc);
    let k = climb.rows.len();
    climb.load(random_message(q, k, &mut rng));
    let mut best = CubicWitness {
        coeffs: climb.msg.clone(),
        count: climb.zeros(),
        evaluated: 0,
        restarts: 0,
    };
    let mut evaluated = 0u64;
    let mut restarts = 0u64;
    let mut current = climb.zeros();
    'outer: while evaluated + q as u64 <= budget {
        let mut gained = false;
        for j in 0..k {
            if evaluated + q as u64 > budget {
                break 'outer;
            }
            evaluated += q as u64;
            let (c, t) = climb.best_for(j);
            if c >= current {
                gained |= c > current;
                climb.set(j, t);
                current = c;
                if c > best.count {
                    best.count = c;
                    best.coeffs = climb.msg.clone();
                }
            }
        }
        if !gained {
            restarts += 1;
            climb.load(random_message(q, k, &mut rng));
            current = climb.zeros();
        }
    }
    best.evaluated = evaluated;
    best.restarts = restarts;
    best
}

/// `floor(q + 1 + 2 sqrt(q))`: the Hasse-Weil cap for plane cubics.
pub fn hasse_weil_cubic_cap(q: u64) -> u64 {
    let mut s = (q as f64).sqrt() as u64;
    while (s + 1) * (s + 1) <= 4 * q {
        s += 1;
    }
    while s * s > 4 * q {
        s -= 1;
    }
    q + 1 + s
}

/// Distance statement for the cubic-space code on one arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDistance {
    pub length: usize,
    pub three_lines: ThreeLines,
    pub line_plus_conic: LinePlusConic,
    pub stochastic: CubicWitness,
    /// Trusted, not computed.
    pub irreducible_cap: u64,
    /// Largest intersection actually exhibited by a witness.
    pub best_found: usize,
    /// `length - max(reducible maximum, cap)`.
    pub d_lower: usize,
    /// `length - best_found`.
    pub d_upper: usize,
}

impl ArcDistance {
    pub fn exact(&self) -> Option<usize> {
        (self.d_lower == self.d_upper).then_some(self.d_lower)
    }
}

pub fn arc_distance(
    arc: &Arc,
    budget: u64,
    seed: u64,
    workers: usize,
) -> Result<ArcDistance, CodeError> {
    let profiles = line_profiles(arc);
    let three_lines = max_three_lines(&profiles);
    let line_plus_conic = max_line_plus_conic(arc, &profiles, workers)?;
    let stochastic = stochastic_cubic_search(arc, budget, seed);
    let cap = hasse_weil_cubic_cap(arc.field().q() as u64);
    let reducible = three_lines.max_union.max(line_plus_conic.max_union);
    let best_found = reducible.max(stochastic.count);
    let n = arc.len();
    let upper_intersection = (reducible as u64).max(cap).min(n as u64) as usize;
    Ok(ArcDistance {
        length: n,
        three_lines,
        line_plus_conic,
        stochastic,
        irreducible_cap: cap,
        best_found,
        d_lower: n - upper_intersection,
        d_upper: n - best_found,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dim10Report {
    pub q: u64,
    pub budget: u64,
    pub seed: u64,
    pub omega: ArcDistance,
    pub omega_star: ArcDistance,
    pub cap_note: String,
}

/// Runs every search on `Omega` and on `Omega*`.
pub fn dim10_distance_report(
    arc: &Arc,
    arc_star: &Arc,
    budget: u64,
    seed: u64,
    workers: usize,
) -> Result<Dim10Report, CodeError> {
    let q = arc.field().q() as u64;
    Ok(Dim10Report {
        q,
        budget,
        seed,
        omega: arc_distance(arc, budget, seed, workers)?,
        omega_star: arc_distance(arc_star, budget, seed, workers)?,
        cap_note: format!(
            "irreducible cubic cap {} = q + 1 + 2 sqrt(q) is a trusted external bound, not computed",
            hasse_weil_cubic_cap(q)
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::{denniston_arc, AdditiveSubgroup, ArcOptions, QuadraticForm};

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

    #[test]
    fn cap_values() {
        assert_eq!(hasse_weil_cubic_cap(16), 25);
        assert_eq!(hasse_weil_cubic_cap(8), 14);
        assert_eq!(hasse_weil_cubic_cap(2), 5);
    }

    #[test]
    fn profiles_are_zero_or_degree() {
        let arc = omega16();
        let p = line_profiles(&arc);
        assert_eq!(p.len(), 273);
        assert_eq!(p.last().unwrap().1.count(), 0);
        let secants = p.iter().filter(|(_, m)| m.count() == 8).count();
        assert!(p.iter().all(|(_, m)| m.count() == 0 || m.count() == 8));
        assert_eq!(secants * 8, 120 * 17);
    }

    #[test]
    fn discriminant() {
        let f = FieldContext::with_degree(4).unwrap();
        let xy = ProjConic([
            Elem::ZERO,
            Elem::ONE,
            Elem::ZERO,
            Elem::ZERO,
            Elem::ZERO,
            Elem::ZERO,
        ]);
        assert!(xy.is_degenerate(&f));
        let smooth = ProjConic([
            Elem::ONE,
            Elem::ZERO,
            Elem::ZERO,
            Elem::ZERO,
            Elem::ONE,
            Elem::ZERO,
        ]);
        assert!(!smooth.is_degenerate(&f));
    }

    #[test]
    fn zero_budget_keeps_start() {
        let arc = omega16();
        let w = stochastic_cubic_search(&arc, 0, 3);
        assert_eq!(w.evaluated, 0);
        assert_eq!(w.count, w.recount(&arc));
        assert!(w.coeffs.iter().any(|c| !c.is_zero()));
    }
}
