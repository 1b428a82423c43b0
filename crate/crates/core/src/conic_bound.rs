//! Conics through the origin against the arc of degree `sqrt(q)`.
//!
//! Setting: `q = 2^(4n+2)`, `H = F_sqrt(q)`, `f = x^2 + xy + xi y^2` with
//! `xi^2 + xi + 1 = 0`. A conic `A X^2 + B XY + C Y^2 + E X + D Y = 0` meets
//! the line `Y = mX` outside the origin at `X = (E + Dm)/(A + Bm + Cm^2)`.
//! Writing every quantity in the basis `{1, xi}` over `F_sqrt(q)` turns the
//! membership condition into two equations `f = g = 0` linear in `z`; the
//! curve `h(m1, m2)` is what remains after eliminating `z`.
//!
//! Subfield values are kept as big-field elements lying in `F_sqrt(q)`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arcs::{denniston_arc, AdditiveSubgroup, Arc, ArcError, ArcOptions, QuadraticForm};
use crate::funcode::{build_code, min_weight_codeword, Budget, CodeError, MonomialSpace};
use crate::gf::{Elem, FieldContext, FieldError, SubfieldEmbedding};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Arc(#[from] ArcError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("q = 2^{0} is not of the form 2^(4n+2)")]
    BadShape(u32),
    #[error("(A,B,C) = (0,0,0): the conic has no parametrization by slope")]
    ZeroQuadraticPart,
    #[error("split of {value} does not recompose")]
    BadSplit { value: Elem },
}

/// The field, its subfield `F_sqrt(q)`, `xi`, and `Omega*`.
#[derive(Debug, Clone)]
pub struct BoundContext {
    field: FieldContext,
    sub: SubfieldEmbedding,
    xi: Elem,
    arc: Arc,
}

impl BoundContext {
    /// Requires `m = 4n + 2`.
    pub fn new(m: u32) -> Result<Self, BoundError> {
        if m % 4 != 2 {
            return Err(BoundError::BadShape(m));
        }
        let field = FieldContext::with_degree(m)?;
        let sub = SubfieldEmbedding::new(&field, m / 2)?;
        let xi = field.xi().ok_or(BoundError::BadShape(m))?;
        let form = QuadraticForm::new(Elem::ONE, Elem::ONE, xi);
        let h = AdditiveSubgroup::from_elements(&field, sub.image())?;
        let arc = denniston_arc(&field, form, h, ArcOptions::without_origin())?;
        Ok(BoundContext {
            field,
            sub,
            xi,
            arc,
        })
    }

    pub fn for_q(q: u64) -> Result<Self, BoundError> {
        if !q.is_power_of_two() || q < 2 {
            return Err(BoundError::BadShape(0));
        }
        Self::new(q.trailing_zeros())
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn sqrt_q(&self) -> u64 {
        1 << (self.field.m() / 2)
    }

    pub fn xi(&self) -> Elem {
        self.xi
    }

    /// Elements of `F_sqrt(q)` in big-field encoding.
    pub fn subfield_elements(&self) -> &[Elem] {
        self.sub.image()
    }

    pub fn in_subfield(&self, x: Elem) -> bool {
        self.sub.contains(x)
    }

    /// `Omega*`.
    pub fn arc(&self) -> &Arc {
        &self.arc
    }

    /// `(u, v)` in `F_sqrt(q)` with `x = u + xi v`.
    pub fn split(&self, x: Elem) -> Result<(Elem, Elem), BoundError> {
        let f = &self.field;
        let conj = f.frobenius(x, f.m() / 2);
        let v = x + conj;
        let u = x + f.mul(self.xi, v);
        if !self.in_subfield(u) || !self.in_subfield(v) || u + f.mul(self.xi, v) != x {
            return Err(BoundError::BadSplit { value: x });
        }
        Ok((u, v))
    }

    pub fn join(&self, u: Elem, v: Elem) -> Elem {
        u + self.field.mul(self.xi, v)
    }
}

/// `A X^2 + B XY + C Y^2 + E X + D Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ConicCoeffs {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub d: Elem,
    pub e: Elem,
}

impl fmt::Display for ConicCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}X^2 + {}XY + {}Y^2 + {}X + {}Y",
            self.a, self.b, self.c, self.e, self.d
        )
    }
}

/// Result of evaluating the slope parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicPoint {
    Affine(Elem, Elem),
    Ideal,
}

/// Line through the origin contained in a conic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OriginLine {
    /// `Y = m X`.
    Slope(Elem),
    /// `X = 0`.
    Vertical,
}

impl ConicCoeffs {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem, e: Elem) -> Self {
        ConicCoeffs { a, b, c, d, e }
    }

    /// From a message in the `x, y, x^2, xy, y^2` basis.
    pub fn from_conic5_message(msg: &[Elem]) -> Option<Self> {
        match *msg {
            [e, d, a, b, c] => Some(ConicCoeffs { a, b, c, d, e }),
            _ => None,
        }
    }

    pub fn to_conic5_message(&self) -> [Elem; 5] {
        [self.e, self.d, self.a, self.b, self.c]
    }

    pub fn scale(&self, field: &FieldContext, l: Elem) -> Self {
        ConicCoeffs {
            a: field.mul(l, self.a),
            b: field.mul(l, self.b),
            c: field.mul(l, self.c),
            d: field.mul(l, self.d),
            e: field.mul(l, self.e),
        }
    }

    pub fn eval(&self, field: &FieldContext, x: Elem, y: Elem) -> Elem {
        let quad = field.mul(self.a, field.square(x))
            + field.mul(self.b, field.mul(x, y))
            + field.mul(self.c, field.square(y));
        quad + field.mul(self.e, x) + field.mul(self.d, y)
    }

    pub fn contains(&self, field: &FieldContext, x: Elem, y: Elem) -> bool {
        self.eval(field, x, y).is_zero()
    }

    fn denominator(&self, field: &FieldContext, m: Elem) -> Elem {
        self.a + field.mul(self.b, m) + field.mul(self.c, field.square(m))
    }

    /// Second intersection with `Y = mX`.
    pub fn point(&self, field: &FieldContext, m: Elem) -> ConicPoint {
        let den = self.denominator(field, m);
        if den.is_zero() {
            return ConicPoint::Ideal;
        }
        let num = self.e + field.mul(self.d, m);
        let x = field.mul(num, field.inv(den).expect("nonzero"));
        ConicPoint::Affine(x, field.mul(m, x))
    }

    /// Lines through the origin lying on the conic.
    pub fn origin_lines(&self, field: &FieldContext) -> Vec<OriginLine> {
        let mut out = Vec::new();
        if self.c.is_zero() && self.d.is_zero() {
            out.push(OriginLine::Vertical);
        }
        for m in field.elements() {
            if self.denominator(field, m).is_zero() && (self.e + field.mul(self.d, m)).is_zero() {
                out.push(OriginLine::Slope(m));
            }
        }
        out
    }

    /// Nonzero quadratic and linear parts and no line through the origin, so
    /// every slope meets the conic in at most one point besides the origin.
    pub fn is_parametrizable(&self, field: &FieldContext) -> bool {
        let quad = !(self.a.is_zero() && self.b.is_zero() && self.c.is_zero());
        let lin = !(self.d.is_zero() && self.e.is_zero());
        quad && lin && self.origin_lines(field).is_empty()
    }
}

/// The ten coordinates of a conic over `F_sqrt(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCoeffs {
    pub a1: Elem,
    pub a2: Elem,
    pub b1: Elem,
    pub b2: Elem,
    pub c1: Elem,
    pub c2: Elem,
    pub d1: Elem,
    pub d2: Elem,
    pub e1: Elem,
    pub e2: Elem,
}

impl SplitCoeffs {
    pub fn split(ctx: &BoundContext, k: &ConicCoeffs) -> Result<Self, BoundError> {
        let (a1, a2) = ctx.split(k.a)?;
        let (b1, b2) = ctx.split(k.b)?;
        let (c1, c2) = ctx.split(k.c)?;
        let (d1, d2) = ctx.split(k.d)?;
        let (e1, e2) = ctx.split(k.e)?;
        let s = SplitCoeffs {
            a1,
            a2,
            b1,
            b2,
            c1,
            c2,
            d1,
            d2,
            e1,
            e2,
        };
        debug_assert_eq!(s.join(ctx), *k);
        Ok(s)
    }

    pub fn join(&self, ctx: &BoundContext) -> ConicCoeffs {
        ConicCoeffs {
            a: ctx.join(self.a1, self.a2),
            b: ctx.join(self.b1, self.b2),
            c: ctx.join(self.c1, self.c2),
            d: ctx.join(self.d1, self.d2),
            e: ctx.join(self.e1, self.e2),
        }
    }

    /// Splits the multiple of `k` with `D = xi`; `None` when `D = 0`.
    pub fn normalized(ctx: &BoundContext, k: &ConicCoeffs) -> Result<Option<Self>, BoundError> {
        if k.d.is_zero() {
            return Ok(None);
        }
        let l = ctx.field.div(ctx.xi, k.d)?;
        Self::split(ctx, &k.scale(&ctx.field, l)).map(Some)
    }

    fn named(&self, name: &str) -> Elem {
        match name {
            "a1" => self.a1,
            "a2" => self.a2,
            "b1" => self.b1,
            "b2" => self.b2,
            "c1" => self.c1,
            "c2" => self.c2,
            "d1" => self.d1,
            "d2" => self.d2,
            "e1" => self.e1,
            "e2" => self.e2,
            _ => unreachable!("unknown coefficient {name}"),
        }
    }

    pub fn as_array(&self) -> [Elem; 10] {
        [
            self.a1, self.a2, self.b1, self.b2, self.c1, self.c2, self.d1, self.d2, self.e1,
            self.e2,
        ]
    }

    pub fn from_array(v: [Elem; 10]) -> Self {
        SplitCoeffs {
            a1: v[0],
            a2: v[1],
            b1: v[2],
            b2: v[3],
            c1: v[4],
            c2: v[5],
            d1: v[6],
            d2: v[7],
            e1: v[8],
            e2: v[9],
        }
    }
}

/// Sparse polynomial in `m1, m2`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Elem>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn constant(c: Elem) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Elem, i: u32, j: u32) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn add_term(&mut self, c: Elem, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert(Elem::ZERO);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).copied().unwrap_or(Elem::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Elem)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn homogeneous_part(&self, deg: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == deg)
                .map(|(&k, &v)| (k, v))
                .collect(),
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_term(c, i, j);
        }
        out
    }

    pub fn mul(&self, field: &FieldContext, other: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), &c) in &self.terms {
            for (&(k, l), &d) in &other.terms {
                out.add_term(field.mul(c, d), i + k, j + l);
            }
        }
        out
    }

    pub fn scale(&self, field: &FieldContext, c: Elem) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), &d) in &self.terms {
            out.add_term(field.mul(c, d), i, j);
        }
        out
    }

    pub fn eval(&self, field: &FieldContext, m1: Elem, m2: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        for (&(i, j), &c) in &self.terms {
            acc += field.mul(
                c,
                field.mul(field.pow(m1, i as u64), field.pow(m2, j as u64)),
            );
        }
        acc
    }
}

/// `p(m1, m2) z + s(m1, m2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivariatePoly {
    pub p: BiPoly,
    pub s: BiPoly,
}

impl TrivariatePoly {
    pub fn eval(&self, field: &FieldContext, m1: Elem, m2: Elem, z: Elem) -> Elem {
        field.mul(self.p.eval(field, m1, m2), z) + self.s.eval(field, m1, m2)
    }

    /// Substitutes `z + 1` for `z`.
    pub fn shift_z(&self) -> TrivariatePoly {
        TrivariatePoly {
            p: self.p.clone(),
            s: self.s.add(&self.p),
        }
    }

    /// Coefficients keyed by `(i, j, l)` for `m1^i m2^j z^l`.
    pub fn terms(&self) -> BTreeMap<(u32, u32, u32), Elem> {
        let mut out = BTreeMap::new();
        for ((i, j), c) in self.s.terms() {
            out.insert((i, j, 0), c);
        }
        for ((i, j), c) in self.p.terms() {
            out.insert((i, j, 1), c);
        }
        out
    }
}

/// An element of `F_q[m1, m2]` as `u + xi v` with `u, v` over `F_sqrt(q)`.
#[derive(Debug, Clone)]
struct XiPair(BiPoly, BiPoly);

impl XiPair {
    fn constant(ctx: &BoundContext, x: Elem) -> Result<Self, BoundError> {
        let (u, v) = ctx.split(x)?;
        Ok(XiPair(BiPoly::constant(u), BiPoly::constant(v)))
    }

    fn add(&self, o: &XiPair) -> XiPair {
        XiPair(self.0.add(&o.0), self.1.add(&o.1))
    }

    /// `xi^2 = xi + 1`.
    fn mul(&self, f: &FieldContext, o: &XiPair) -> XiPair {
        let uu = self.0.mul(f, &o.0);
        let vv = self.1.mul(f, &o.1);
        let uv = self.0.mul(f, &o.1).add(&self.1.mul(f, &o.0));
        XiPair(uu.add(&vv), uv.add(&vv))
    }
}

/// `r1`, `r2`: the `{1, xi}` coordinates of `A + Bm + Cm^2`, up to the change
/// `r1 = u + v`, `r2 = v` that makes `(A + Bm + Cm^2)^2 = r1^2 + xi r2^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RFilter {
    pub r1: BiPoly,
    pub r2: BiPoly,
}

/// Both equations, the filter and the eliminated curve for one conic.
#[derive(Debug, Clone)]
pub struct ConicSystem {
    pub coeffs: ConicCoeffs,
    pub split: SplitCoeffs,
    pub f: TrivariatePoly,
    pub g: TrivariatePoly,
    pub rfilter: RFilter,
}

/// Builds `f`, `g` from `z (A + Bm + Cm^2)^2 = (E + Dm)^2 (1 + m + xi m^2)`
/// with `m = m1 + xi m2`, read off in the basis `{1, xi}`.
pub fn split_and_build_fg(ctx: &BoundContext, k: &ConicCoeffs) -> Result<ConicSystem, BoundError> {
    let f = &ctx.field;
    let split = SplitCoeffs::split(ctx, k)?;
    let m = XiPair(
        BiPoly::monomial(Elem::ONE, 1, 0),
        BiPoly::monomial(Elem::ONE, 0, 1),
    );
    let m_sq = m.mul(f, &m);
    let a = XiPair::constant(ctx, k.a)?;
    let b = XiPair::constant(ctx, k.b)?;
    let c = XiPair::constant(ctx, k.c)?;
    let d = XiPair::constant(ctx, k.d)?;
    let e = XiPair::constant(ctx, k.e)?;
    let den = a.add(&b.mul(f, &m)).add(&c.mul(f, &m_sq));
    let num = e.add(&d.mul(f, &m));
    let form = XiPair::constant(ctx, Elem::ONE)?
        .add(&m)
        .add(&XiPair::constant(ctx, ctx.xi)?.mul(f, &m_sq));
    let lhs = den.mul(f, &den);
    let rhs = num.mul(f, &num).mul(f, &form);
    let rfilter = RFilter {
        r1: den.0.add(&den.1),
        r2: den.1.clone(),
    };
    Ok(ConicSystem {
        coeffs: *k,
        split,
        f: TrivariatePoly { p: lhs.0, s: rhs.0 },
        g: TrivariatePoly { p: lhs.1, s: rhs.1 },
        rfilter,
    })
}

/// Coefficients `alpha[i][j]` of `m1^i m2^j`, `0 <= i, j <= 8`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCurve {
    pub alpha: [[Elem; 9]; 9],
}

impl HCurve {
    pub fn from_poly(p: &BiPoly) -> Option<Self> {
        let mut alpha = [[Elem::ZERO; 9]; 9];
        for ((i, j), c) in p.terms() {
            if i > 8 || j > 8 {
                return None;
            }
            alpha[i as usize][j as usize] = c;
        }
        Some(HCurve { alpha })
    }

    pub fn to_poly(&self) -> BiPoly {
        let mut p = BiPoly::zero();
        for (i, row) in self.alpha.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                p.add_term(c, i as u32, j as u32);
            }
        }
        p
    }

    pub fn eval(&self, field: &FieldContext, m1: Elem, m2: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut p1 = Elem::ONE;
        for row in &self.alpha {
            let mut p2 = p1;
            for &c in row {
                acc += field.mul(c, p2);
                p2 = field.mul(p2, m2);
            }
            p1 = field.mul(p1, m1);
        }
        acc
    }

    /// Entries where the two tables differ.
    pub fn diff(&self, other: &HCurve) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..9 {
            for j in 0..9 {
                if self.alpha[i][j] != other.alpha[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `h = p1 s2' + p2 s1'` for `f' = p1 z + s1'`, `g' = p2 z + s2'`, the shifted
/// equations. The shift cancels: this equals `p1 s2 + p2 s1`.
pub fn eliminate_h(ctx: &BoundContext, sys: &ConicSystem) -> Result<HCurve, BoundError> {
    let f = &ctx.field;
    if sys.f.p.is_zero() && sys.g.p.is_zero() {
        return Err(BoundError::ZeroQuadraticPart);
    }
    let fs = sys.f.shift_z();
    let gs = sys.g.shift_z();
    let h = fs.p.mul(f, &gs.s).add(&gs.p.mul(f, &fs.s));
    Ok(HCurve::from_poly(&h).expect("degree at most 8 in each variable"))
}

/// Closed form of `h` for conics normalized to `D = xi`. Each entry is a sum
/// of products of squared coefficients; `""` is the constant 1.
/// Exponent pairs `(i, j)` sharing one coefficient, and that coefficient's terms.
type AlphaRow = (&'static [(usize, usize)], &'static [&'static str]);

const ALPHA_TABLE: &[AlphaRow] = &[
    (&[(8, 0), (0, 8), (4, 4)], &["c2"]),
    (&[(7, 0)], &["c1"]),
    (&[(6, 1), (1, 6)], &["c2"]),
    (&[(5, 2), (3, 4)], &["c1", "c2"]),
    (&[(2, 5), (4, 3)], &["c1"]),
    (&[(0, 7)], &["c1", "c2"]),
    (&[(6, 0)], &["b2", "c1.e1", "c1", "c2.e1", "c2.e2"]),
    (
        &[(4, 2), (2, 4)],
        &["b1", "b2", "c1.e2", "c1", "c2.e1", "c2"],
    ),
    (&[(0, 6)], &["b1", "c1.e1", "c1.e2", "c2.e2", "c2"]),
    (&[(5, 0)], &["b1", "c1.e2", "c2.e1"]),
    (&[(4, 1)], &["b2", "c1.e1", "c2.e1", "c2.e2"]),
    (&[(3, 2)], &["b1"]),
    (&[(2, 3)], &["b2"]),
    (&[(1, 4)], &["b1", "c1.e1", "c1.e2", "c2.e2"]),
    (&[(0, 5)], &["b2", "c1.e2", "c2.e1"]),
    (
        &[(4, 0)],
        &["a2", "b1.e1", "b1", "b2.e1", "b2.e2", "c1.e2", "c2.e1"],
    ),
    (&[(2, 2)], &["b1.e1", "b1", "b2.e1", "b2.e2"]),
    (
        &[(0, 4)],
        &[
            "a1", "a2", "b1.e1", "b1", "b2.e1", "b2.e2", "c1.e1", "c1.e2", "c2.e2",
        ],
    ),
    (&[(3, 0)], &["a1", "b1.e2", "b2.e1"]),
    (&[(2, 1)], &["a2", "b1.e1", "b2.e1", "b2.e2"]),
    (&[(1, 2)], &["a1", "a2", "b1.e1", "b2.e1", "b2.e2"]),
    (&[(0, 3)], &["a1", "b1.e1", "b1.e2", "b2.e2"]),
    (
        &[(2, 0)],
        &["a1.e1", "a1", "a2.e1", "a2.e2", "b1.e2", "b2.e1"],
    ),
    (
        &[(0, 2)],
        &["a1.e2", "a1", "a2.e1", "a2", "b1.e1", "b2.e1", "b2.e2"],
    ),
    (&[(1, 0)], &["a1.e2", "a2.e1"]),
    (&[(0, 1)], &["a1.e1", "a2.e1", "a2.e2"]),
    (&[(0, 0)], &["a1.e2", "a2.e1"]),
];

/// The closed-form table evaluated at `s`; meaningful when `(d1, d2) = (0, 1)`.
pub fn alpha_table(field: &FieldContext, s: &SplitCoeffs) -> HCurve {
    let mut alpha = [[Elem::ZERO; 9]; 9];
    for (slots, terms) in ALPHA_TABLE {
        let mut v = Elem::ZERO;
        for term in *terms {
            let mut t = Elem::ONE;
            for name in term.split('.').filter(|n| !n.is_empty()) {
                t = field.mul(t, field.square(s.named(name)));
            }
            v += t;
        }
        for &(i, j) in *slots {
            alpha[i][j] = v;
        }
    }
    HCurve { alpha }
}

/// One counted root of `h` with the recovered `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HRoot {
    pub m1: Elem,
    pub m2: Elem,
    pub z: Elem,
    /// `f(m1, m2, z) = g(m1, m2, z) = 0`.
    pub satisfies_system: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HCount {
    pub count: usize,
    pub roots: Vec<HRoot>,
    /// Roots of `h` dropped because `r1 = r2 = 0` there.
    pub ideal_excluded: usize,
}

/// Counts `(M1, M2)` over `F_sqrt(q)` with `h = 0` and `(r1, r2) != (0, 0)`,
/// recovering `Z` from whichever of `f`, `g` has a nonzero `z` coefficient.
pub fn h_solution_count(ctx: &BoundContext, sys: &ConicSystem, h: &HCurve) -> HCount {
    let f = &ctx.field;
    let mut roots = Vec::new();
    let mut ideal_excluded = 0;
    for &m1 in ctx.subfield_elements() {
        for &m2 in ctx.subfield_elements() {
            if !h.eval(f, m1, m2).is_zero() {
                continue;
            }
            let r1 = sys.rfilter.r1.eval(f, m1, m2);
            let r2 = sys.rfilter.r2.eval(f, m1, m2);
            let z = if !r1.is_zero() {
                f.div(sys.f.s.eval(f, m1, m2), f.square(r1))
            } else if !r2.is_zero() {
                f.div(sys.g.s.eval(f, m1, m2), f.square(r2))
            } else {
                ideal_excluded += 1;
                continue;
            }
            .expect("nonzero divisor");
            let satisfies_system = ctx.in_subfield(z)
                && sys.f.eval(f, m1, m2, z).is_zero()
                && sys.g.eval(f, m1, m2, z).is_zero();
            roots.push(HRoot {
                m1,
                m2,
                z,
                satisfies_system,
            });
        }
    }
    HCount {
        count: roots.len(),
        roots,
        ideal_excluded,
    }
}

/// Points of `Omega*` on the conic.
pub fn conic_arc_intersection_direct(ctx: &BoundContext, k: &ConicCoeffs) -> usize {
    let f = &ctx.field;
    ctx.arc
        .points()
        .iter()
        .filter(|&&(x, y)| k.contains(f, x, y))
        .count()
}

/// Arc points on the conic that no slope reaches: those on `X = 0` and those
/// on a contained line through the origin.
fn unparametrized_points(ctx: &BoundContext, k: &ConicCoeffs, lines: &[OriginLine]) -> usize {
    let f = &ctx.field;
    ctx.arc
        .points()
        .iter()
        .filter(|&&(x, y)| {
            k.contains(f, x, y)
                && (x.is_zero()
                    || lines.iter().any(|&l| match l {
                        OriginLine::Vertical => false,
                        OriginLine::Slope(m) => y == f.mul(m, x),
                    }))
        })
        .count()
}

/// Outcome of the direct-versus-`h` comparison for one conic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub coeffs: ConicCoeffs,
    pub direct: usize,
    pub h_roots: usize,
    pub ideal_excluded: usize,
    pub bad_z: usize,
    pub origin_lines: Vec<OriginLine>,
    /// Arc points on the conic that the slope parametrization misses.
    pub unparametrized: usize,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.direct <= self.h_roots
    }

    /// Every point reached by a slope is a distinct counted root.
    pub fn explained(&self) -> bool {
        self.direct <= self.h_roots + self.unparametrized
    }
}

pub fn chain_check(ctx: &BoundContext, k: &ConicCoeffs) -> Result<ChainCheck, BoundError> {
    let sys = split_and_build_fg(ctx, k)?;
    let h = eliminate_h(ctx, &sys)?;
    let count = h_solution_count(ctx, &sys, &h);
    let origin_lines = k.origin_lines(&ctx.field);
    let unparametrized = unparametrized_points(ctx, k, &origin_lines);
    Ok(ChainCheck {
        coeffs: *k,
        direct: conic_arc_intersection_direct(ctx, k),
        h_roots: count.count,
        ideal_excluded: count.ideal_excluded,
        bad_z: count.roots.iter().filter(|r| !r.satisfies_system).count(),
        origin_lines,
        unparametrized,
    })
}

/// Uniform conic with `(A,B,C) != 0` and `(D,E) != 0`.
pub fn random_conic(field: &FieldContext, rng: &mut impl Rng) -> ConicCoeffs {
    let q = field.q();
    loop {
        let mut v = [Elem::ZERO; 5];
        for x in &mut v {
            *x = Elem(rng.gen_range(0..q));
        }
        let k = ConicCoeffs::new(v[0], v[1], v[2], v[3], v[4]);
        let quad = !(k.a.is_zero() && k.b.is_zero() && k.c.is_zero());
        let lin = !(k.d.is_zero() && k.e.is_zero());
        if quad && lin {
            return k;
        }
    }
}

/// Sampled comparison of direct intersection counts with `h`-root counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofChainReport {
    pub q: u64,
    pub seed: u64,
    pub draws: usize,
    pub parametrizable: usize,
    /// Parametrizable conics with `direct > h_roots`.
    pub violations: Vec<ChainCheck>,
    /// Counted roots whose `Z` fails the system.
    pub bad_z: usize,
    /// Conics containing a line through the origin.
    pub with_origin_line: usize,
    /// Of those, conics with `direct > h_roots`.
    pub origin_line_exceed: usize,
    /// Of those, conics where the excess is not covered by the points no
    /// slope reaches.
    pub unexplained: Vec<ChainCheck>,
    pub max_direct: usize,
    pub max_h_roots: usize,
}

impl ProofChainReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.bad_z == 0 && self.unexplained.is_empty()
    }
}

pub fn proof_chain_sample(
    ctx: &BoundContext,
    draws: usize,
    seed: u64,
) -> Result<ProofChainReport, BoundError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = ProofChainReport {
        q: ctx.q(),
        seed,
        draws,
        parametrizable: 0,
        violations: Vec::new(),
        bad_z: 0,
        with_origin_line: 0,
        origin_line_exceed: 0,
        unexplained: Vec::new(),
        max_direct: 0,
        max_h_roots: 0,
    };
    for _ in 0..draws {
        let k = random_conic(&ctx.field, &mut rng);
        let c = chain_check(ctx, &k)?;
        rep.bad_z += c.bad_z;
        rep.max_direct = rep.max_direct.max(c.direct);
        rep.max_h_roots = rep.max_h_roots.max(c.h_roots);
        if c.origin_lines.is_empty() {
            rep.parametrizable += 1;
            if !c.holds() {
                rep.violations.push(c);
            }
        } else {
            rep.with_origin_line += 1;
            if !c.holds() {
                rep.origin_line_exceed += 1;
            }
            if !c.explained() {
                rep.unexplained.push(c);
            }
        }
    }
    Ok(rep)
}

/// Agreement of generic elimination with the closed-form table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaCheck {
    pub random_draws: usize,
    pub random_mismatches: usize,
    /// Binary tuples with `D != 0`, compared after normalizing to `D = xi`.
    pub binary_tuples: usize,
    pub binary_mismatches: usize,
    /// Binary tuples with `D = 0`, outside the table's scope.
    pub binary_skipped: usize,
    /// Tables whose degree-8 part is not `c2^2 (m1^2 + m1 m2 + m2^2)^4`.
    pub top_degree_mismatches: usize,
    pub first_mismatch: Option<(SplitCoeffs, Vec<(usize, usize)>)>,
}

impl AlphaCheck {
    pub fn passed(&self) -> bool {
        self.random_mismatches == 0
            && self.binary_mismatches == 0
            && self.top_degree_mismatches == 0
    }
}

/// `c2^2 (m1^2 + m1 m2 + m2^2)^4 = c2^2 (m1^8 + m1^4 m2^4 + m2^8)`.
fn top_degree_matches(h: &HCurve, c2: Elem, field: &FieldContext) -> bool {
    let top = h.to_poly().homogeneous_part(8);
    let c = field.square(c2);
    let mut want = BiPoly::zero();
    want.add_term(c, 8, 0);
    want.add_term(c, 4, 4);
    want.add_term(c, 0, 8);
    top == want
}

fn compare_one(
    ctx: &BoundContext,
    k: &ConicCoeffs,
    out: &mut AlphaCheck,
) -> Result<bool, BoundError> {
    let Some(s) = SplitCoeffs::normalized(ctx, k)? else {
        return Ok(true);
    };
    let sys = split_and_build_fg(ctx, &s.join(ctx))?;
    let h = eliminate_h(ctx, &sys)?;
    let table = alpha_table(&ctx.field, &s);
    if !top_degree_matches(&h, s.c2, &ctx.field) {
        out.top_degree_mismatches += 1;
    }
    let diff = h.diff(&table);
    if diff.is_empty() {
        return Ok(true);
    }
    if out.first_mismatch.is_none() {
        out.first_mismatch = Some((s, diff));
    }
    Ok(false)
}

/// Random draws of all ten coordinates, then every binary tuple.
pub fn alpha_table_check(
    ctx: &BoundContext,
    draws: usize,
    seed: u64,
) -> Result<AlphaCheck, BoundError> {
    let mut out = AlphaCheck {
        random_draws: 0,
        random_mismatches: 0,
        binary_tuples: 0,
        binary_mismatches: 0,
        binary_skipped: 0,
        top_degree_mismatches: 0,
        first_mismatch: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sub = ctx.subfield_elements();
    while out.random_draws < draws {
        let v: [Elem; 10] = std::array::from_fn(|_| sub[rng.gen_range(0..sub.len())]);
        let k = SplitCoeffs::from_array(v).join(ctx);
        if k.d.is_zero() || (k.a.is_zero() && k.b.is_zero() && k.c.is_zero()) {
            continue;
        }
        out.random_draws += 1;
        if !compare_one(ctx, &k, &mut out)? {
            out.random_mismatches += 1;
        }
    }
    for bits in 0u32..1 << 10 {
        let v: [Elem; 10] = std::array::from_fn(|i| Elem(bits >> i & 1));
        let k = SplitCoeffs::from_array(v).join(ctx);
        if k.d.is_zero() {
            out.binary_skipped += 1;
            continue;
        }
        if k.a.is_zero() && k.b.is_zero() && k.c.is_zero() {
            out.binary_skipped += 1;
            continue;
        }
        out.binary_tuples += 1;
        if !compare_one(ctx, &k, &mut out)? {
            out.binary_mismatches += 1;
        }
    }
    Ok(out)
}

/// Largest intersection of a nonzero conic-space polynomial with `Omega*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicMaximum {
    pub q: u64,
    pub length: usize,
    pub dimension: usize,
    pub min_distance: usize,
    pub max_intersection: usize,
    pub witness: ConicCoeffs,
    /// Direct recount of the witness.
    pub witness_count: usize,
}

/// Exact maximum as `n - d` of the conic-space code on `Omega*`.
pub fn max_conic_intersection_exhaustive(
    ctx: &BoundContext,
    workers: usize,
    budget: Budget,
) -> Result<ConicMaximum, BoundError> {
    let code = build_code(&ctx.arc, &MonomialSpace::conic5())?;
    let (dist, witness) = min_weight_codeword(code.generator(), workers, budget)?;
    let d = dist.min_distance().unwrap_or(code.n());
    let w = witness.expect("code of dimension 5 has nonzero words");
    let k = ConicCoeffs::from_conic5_message(&w.message).expect("five coordinates");
    Ok(ConicMaximum {
        q: ctx.q(),
        length: code.n(),
        dimension: code.k(),
        min_distance: d,
        max_intersection: code.n() - d,
        witness: k,
        witness_count: conic_arc_intersection_direct(ctx, &k),
    })
}

/// The theorem's bound, the trivial bound and the derived distance bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem31Report {
    pub q: u64,
    pub max_intersection: usize,
    pub witness: ConicCoeffs,
    pub witness_count: usize,
    pub theorem_bound: u64,
    pub trivial_bound: u64,
    pub corollary_bound: i64,
    pub length: usize,
    pub expected_length: u64,
    pub dimension: usize,
    pub d_computed: usize,
    pub satisfied: bool,
}

pub fn theorem_bound(q: u64) -> u64 {
    let s = 1u64 << (q.trailing_zeros() / 2);
    2 * q + 2 + 20 * s
}

/// `(sqrt q - 3) q - 19 sqrt q - 3`.
pub fn corollary_bound(q: u64) -> i64 {
    let s = 1i64 << (q.trailing_zeros() / 2);
    let q = q as i64;
    (s - 3) * q - 19 * s - 3
}

pub fn corollary_check(
    ctx: &BoundContext,
    workers: usize,
    budget: Budget,
) -> Result<Theorem31Report, BoundError> {
    let max = max_conic_intersection_exhaustive(ctx, workers, budget)?;
    let q = ctx.q();
    let expected_length = (ctx.sqrt_q() - 1) * (q + 1);
    let theorem = theorem_bound(q);
    let corollary = corollary_bound(q);
    let satisfied = max.witness_count == max.max_intersection
        && max.max_intersection as u64 <= theorem
        && max.length as u64 == expected_length
        && max.dimension == 5
        && max.min_distance as i64 >= corollary;
    Ok(Theorem31Report {
        q,
        max_intersection: max.max_intersection,
        witness: max.witness,
        witness_count: max.witness_count,
        theorem_bound: theorem,
        trivial_bound: q + 1,
        corollary_bound: corollary,
        length: max.length,
        expected_length,
        dimension: max.dimension,
        d_computed: max.min_distance,
        satisfied,
    })
}
