//! Denniston maximal arcs `{(x,y) : f(x,y) in H}` in AG(2,q).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{
    check_additive_closure, Elem, FieldContext, FieldError, FieldSpec, SubfieldEmbedding,
    SubspacePolynomial,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArcError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("quadratic form {0} is reducible")]
    ReducibleForm(QuadraticForm),
    #[error("subgroup is the whole field; pass allow_trivial to build the full plane")]
    TrivialSubgroup,
    #[error("basis element {0} is dependent on the previous ones")]
    DependentBasis(Elem),
    #[error("maximal-arc check needs the origin")]
    OriginRequired,
    #[error("line {line} meets the set in {size} points (expected 0 or {degree})")]
    NotMaximal {
        line: Line,
        size: usize,
        degree: usize,
    },
    #[error("malformed arc document: {0}")]
    Document(String),
}

/// `f(x,y) = a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

impl QuadraticForm {
    pub fn new(a: Elem, b: Elem, c: Elem) -> Self {
        QuadraticForm { a, b, c }
    }

    #[inline]
    pub fn eval(&self, field: &FieldContext, x: Elem, y: Elem) -> Elem {
        field.mul(self.a, field.square(x))
            + field.mul(self.b, field.mul(x, y))
            + field.mul(self.c, field.square(y))
    }

    /// Char-2 criterion: `b != 0` and `Tr(ac/b^2) = 1`.
    pub fn trace_criterion(&self, field: &FieldContext) -> bool {
        if self.b.is_zero() {
            return false;
        }
        let b2 = field.square(self.b);
        let t = field
            .div(field.mul(self.a, self.c), b2)
            .expect("b is nonzero");
        field.trace(t) == 1
    }

    /// Searches every direction `(x:1)` and `(1:0)`; since `f` is homogeneous
    /// this covers all nonzero points of AG(2,q).
    pub fn nonzero_root(&self, field: &FieldContext) -> Option<(Elem, Elem)> {
        if self.a.is_zero() {
            return Some((Elem::ONE, Elem::ZERO));
        }
        field
            .elements()
            .find(|&x| self.eval(field, x, Elem::ONE).is_zero())
            .map(|x| (x, Elem::ONE))
    }

    /// Irreducibility, decided by the trace criterion and cross-checked by root search.
    pub fn is_irreducible(&self, field: &FieldContext) -> bool {
        let by_trace = self.trace_criterion(field);
        let by_search = self.nonzero_root(field).is_none();
        assert_eq!(
            by_trace,
            by_search,
            "irreducibility tests disagree for {self} over GF(2^{})",
            field.m()
        );
        by_trace
    }

    /// `x^2 + xy + xi y^2` when irreducible, else `x^2 + xy + c y^2` with the
    /// smallest-encoded `c` of absolute trace 1.
    pub fn standard(field: &FieldContext) -> QuadraticForm {
        if let Some(xi) = field.xi() {
            let f = QuadraticForm::new(Elem::ONE, Elem::ONE, xi);
            if f.trace_criterion(field) {
                return f;
            }
        }
        let c = field
            .elements()
            .find(|&c| field.trace(c) == 1)
            .expect("trace is surjective");
        QuadraticForm::new(Elem::ONE, Elem::ONE, c)
    }
}

/// An additive subgroup of GF(q) with a reduced echelon GF(2)-basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveSubgroup {
    basis: Vec<Elem>,
    elements: Vec<Elem>,
    member: Vec<bool>,
}

impl AdditiveSubgroup {
    /// Builds the subgroup from its full element list.
    pub fn from_elements(field: &FieldContext, elements: &[Elem]) -> Result<Self, ArcError> {
        for &e in elements {
            field.elem(e.0)?;
        }
        let basis = check_additive_closure(elements)?;
        Self::from_basis(field, &basis)
    }

    /// Span of `basis`, which must be linearly independent over GF(2).
    pub fn from_basis(field: &FieldContext, basis: &[Elem]) -> Result<Self, ArcError> {
        let mut rows: Vec<u32> = Vec::new();
        for &b in basis {
            field.elem(b.0)?;
            let mut r = b.0;
            for &p in &rows {
                r = r.min(r ^ p);
            }
            if r == 0 {
                return Err(ArcError::DependentBasis(b));
            }
            rows.push(r);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
        // back-substitute so each leading bit appears in one row only
        let n = rows.len();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let lead = 1u32 << (31 - rows[i].leading_zeros());
                    if rows[j] & lead != 0 {
                        rows[j] ^= rows[i];
                    }
                }
            }
        }
        rows.sort_unstable_by(|a, b| b.cmp(a));

        let mut elements = vec![Elem::ZERO];
        for &r in &rows {
            let shifted: Vec<Elem> = elements.iter().map(|&e| e + Elem(r)).collect();
            elements.extend(shifted);
        }
        elements.sort_unstable();
        let mut member = vec![false; field.q() as usize];
        for e in &elements {
            member[e.0 as usize] = true;
        }
        Ok(AdditiveSubgroup {
            basis: rows.into_iter().map(Elem).collect(),
            elements,
            member,
        })
    }

    /// Kernel of the absolute trace, an index-2 subgroup.
    pub fn trace_kernel(field: &FieldContext) -> Self {
        let elems: Vec<Elem> = field.elements().filter(|&x| field.trace(x) == 0).collect();
        Self::from_elements(field, &elems).expect("trace is additive")
    }

    /// The subfield of size `2^sub_m` as an additive group.
    pub fn subfield(field: &FieldContext, sub_m: u32) -> Result<Self, ArcError> {
        let emb = SubfieldEmbedding::new(field, sub_m)?;
        Self::from_elements(field, emb.image())
    }

    /// All subgroups of size `2^dim`, ordered by their echelon bases.
    pub fn enumerate(field: &FieldContext, dim: u32) -> Vec<Self> {
        let m = field.m();
        let mut out = Vec::new();
        if dim > m {
            return out;
        }
        // choose pivot bits p_1 > ... > p_dim, then fill the non-pivot bits below each pivot
        let mut pivots = Vec::new();
        enumerate_pivots(dim, m, &mut pivots, &mut |pivots: &[u32]| {
            let free: Vec<Vec<u32>> = pivots
                .iter()
                .map(|&p| (0..p).filter(|b| !pivots.contains(b)).collect())
                .collect();
            let total: u32 = free.iter().map(|f| f.len() as u32).sum();
            for fill in 0..(1u64 << total) {
                let mut bit = 0;
                let mut basis = Vec::with_capacity(pivots.len());
                for (p, fr) in pivots.iter().zip(&free) {
                    let mut v = 1u32 << p;
                    for &b in fr {
                        if fill >> bit & 1 == 1 {
                            v |= 1 << b;
                        }
                        bit += 1;
                    }
                    basis.push(Elem(v));
                }
                out.push(Self::from_basis(field, &basis).expect("echelon rows are independent"));
            }
        });
        out.sort_by(|a, b| a.basis.cmp(&b.basis));
        out
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.member.get(x.0 as usize).copied().unwrap_or(false)
    }

    pub fn subspace_polynomial(&self, field: &FieldContext) -> SubspacePolynomial {
        SubspacePolynomial::from_subgroup(field, &self.elements).expect("subgroup is closed")
    }
}

fn enumerate_pivots(
    remaining: u32,
    below: u32,
    acc: &mut Vec<u32>,
    visit: &mut impl FnMut(&[u32]),
) {
    if remaining == 0 {
        visit(acc);
        return;
    }
    for p in (remaining - 1..below).rev() {
        acc.push(p);
        enumerate_pivots(remaining - 1, p, acc, visit);
        acc.pop();
    }
}

/// Projective line `aX + bY + cZ = 0`, normalized so its first nonzero
/// coordinate is 1. Affine points sit at `Z = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Line {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.a, self.b, self.c)
    }
}

impl Line {
    pub const AT_INFINITY: Line = Line {
        a: Elem::ZERO,
        b: Elem::ZERO,
        c: Elem::ONE,
    };

    #[inline]
    pub fn contains(&self, field: &FieldContext, x: Elem, y: Elem) -> bool {
        (field.mul(self.a, x) + field.mul(self.b, y) + self.c).is_zero()
    }

    pub fn is_at_infinity(&self) -> bool {
        *self == Self::AT_INFINITY
    }
}

/// All `q^2 + q + 1` lines of PG(2,q); the line at infinity comes last.
pub fn projective_lines(field: &FieldContext) -> Vec<Line> {
    let q = field.q();
    let mut out = Vec::with_capacity((q * q + q + 1) as usize);
    for b in 0..q {
        for c in 0..q {
            out.push(Line {
                a: Elem::ONE,
                b: Elem(b),
                c: Elem(c),
            });
        }
    }
    for c in 0..q {
        out.push(Line {
            a: Elem::ZERO,
            b: Elem::ONE,
            c: Elem(c),
        });
    }
    out.push(Line::AT_INFINITY);
    out
}

/// Dense `q x q` membership grid for affine points.
pub(crate) struct PointGrid {
    q: usize,
    cells: Vec<bool>,
}

impl PointGrid {
    pub(crate) fn new(q: u32, points: &[(Elem, Elem)]) -> Self {
        let q = q as usize;
        let mut cells = vec![false; q * q];
        for &(x, y) in points {
            cells[x.0 as usize * q + y.0 as usize] = true;
        }
        PointGrid { q, cells }
    }

    #[inline]
    pub(crate) fn contains(&self, x: Elem, y: Elem) -> bool {
        self.cells[x.0 as usize * self.q + y.0 as usize]
    }

    pub(crate) fn insert(&mut self, x: Elem, y: Elem) {
        self.cells[x.0 as usize * self.q + y.0 as usize] = true;
    }
}

/// Number of points of the affine set on `line`, walking the line's `q` points.
pub(crate) fn line_count(field: &FieldContext, grid: &PointGrid, line: &Line) -> usize {
    if line.is_at_infinity() {
        return 0;
    }
    let mut n = 0;
    if line.a == Elem::ONE {
        // x = b y + c
        for y in field.elements() {
            let x = field.mul(line.b, y) + line.c;
            n += grid.contains(x, y) as usize;
        }
    } else {
        // y = c
        for x in field.elements() {
            n += grid.contains(x, line.c) as usize;
        }
    }
    n
}

/// Checks that every line meets `points` in 0 or `degree` points.
pub fn check_line_intersections(
    field: &FieldContext,
    points: &[(Elem, Elem)],
    degree: usize,
) -> Result<usize, ArcError> {
    let grid = PointGrid::new(field.q(), points);
    for line in projective_lines(field) {
        let size = line_count(field, &grid, &line);
        if size != 0 && size != degree {
            return Err(ArcError::NotMaximal { line, size, degree });
        }
    }
    Ok(degree)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ArcOptions {
    pub includes_origin: bool,
    pub allow_trivial: bool,
}

impl ArcOptions {
    pub fn with_origin() -> Self {
        ArcOptions {
            includes_origin: true,
            allow_trivial: false,
        }
    }

    pub fn without_origin() -> Self {
        ArcOptions {
            includes_origin: false,
            allow_trivial: false,
        }
    }
}

/// A Denniston arc, with or without the origin, points in lexicographic order.
#[derive(Debug, Clone)]
pub struct Arc {
    field: FieldContext,
    form: QuadraticForm,
    subgroup: AdditiveSubgroup,
    includes_origin: bool,
    points: Vec<(Elem, Elem)>,
}

/// Builds `Omega` (or `Omega*` without the origin).
pub fn denniston_arc(
    field: &FieldContext,
    form: QuadraticForm,
    subgroup: AdditiveSubgroup,
    opts: ArcOptions,
) -> Result<Arc, ArcError> {
    if !form.is_irreducible(field) {
        return Err(ArcError::ReducibleForm(form));
    }
    if subgroup.len() == field.q() as usize && !opts.allow_trivial {
        return Err(ArcError::TrivialSubgroup);
    }
    let mut points = Vec::new();
    for x in field.elements() {
        for y in field.elements() {
            if !opts.includes_origin && x.is_zero() && y.is_zero() {
                continue;
            }
            if subgroup.contains(form.eval(field, x, y)) {
                points.push((x, y));
            }
        }
    }
    Ok(Arc {
        field: field.clone(),
        form,
        subgroup,
        includes_origin: opts.includes_origin,
        points,
    })
}

impl Arc {
    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn form(&self) -> QuadraticForm {
        self.form
    }

    pub fn subgroup(&self) -> &AdditiveSubgroup {
        &self.subgroup
    }

    pub fn includes_origin(&self) -> bool {
        self.includes_origin
    }

    pub fn points(&self) -> &[(Elem, Elem)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `|H|`.
    pub fn degree(&self) -> usize {
        self.subgroup.len()
    }

    /// `(q+1)(|H|-1) + 1`, less one without the origin.
    pub fn expected_len(&self) -> usize {
        let q = self.field.q() as usize;
        (q + 1) * (self.degree() - 1) + self.includes_origin as usize
    }

    /// The same arc with the origin removed.
    pub fn without_origin(&self) -> Arc {
        let mut out = self.clone();
        out.includes_origin = false;
        out.points.retain(|&(x, y)| !(x.is_zero() && y.is_zero()));
        out
    }

    pub fn with_origin(&self) -> Arc {
        let mut out = self.clone();
        if !out.includes_origin {
            out.includes_origin = true;
            out.points.insert(0, (Elem::ZERO, Elem::ZERO));
        }
        out
    }

    /// Every line meets the arc in 0 or `|H|` points; returns the degree.
    pub fn verify_maximal(&self) -> Result<usize, ArcError> {
        if !self.includes_origin {
            return Err(ArcError::OriginRequired);
        }
        check_line_intersections(&self.field, &self.points, self.degree())
    }

    /// Whether `L(f(x,y)) = 0` exactly on `Omega`, over all of AG(2,q).
    pub fn curve_identity(&self, l: &SubspacePolynomial) -> bool {
        let f = &self.field;
        let mut grid = PointGrid::new(f.q(), &self.points);
        grid.insert(Elem::ZERO, Elem::ZERO);
        f.elements().all(|x| {
            f.elements().all(|y| {
                let on_curve = l.eval(f, self.form.eval(f, x, y)).is_zero();
                on_curve == grid.contains(x, y)
            })
        })
    }

    pub fn to_document(&self) -> ArcDocument {
        ArcDocument {
            format: ArcDocument::FORMAT.to_string(),
            version: ArcDocument::VERSION,
            field: self.field.spec(),
            form: [self.form.a, self.form.b, self.form.c],
            subgroup_basis: self.subgroup.basis.clone(),
            includes_origin: self.includes_origin,
            points: self.points.iter().map(|&(x, y)| [x, y]).collect(),
        }
    }
}

/// Versioned JSON form of an [`Arc`]; all elements are lowercase hex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDocument {
    pub format: String,
    pub version: u32,
    pub field: FieldSpec,
    pub form: [Elem; 3],
    pub subgroup_basis: Vec<Elem>,
    pub includes_origin: bool,
    pub points: Vec<[Elem; 2]>,
}

impl ArcDocument {
    pub const FORMAT: &'static str = "denniston-arc";
    pub const VERSION: u32 = 1;

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ArcError> {
        serde_json::from_str(text).map_err(|e| ArcError::Document(e.to_string()))
    }

    /// Rebuilds the arc and checks the stored points against it.
    pub fn into_arc(self) -> Result<Arc, ArcError> {
        if self.format != Self::FORMAT {
            return Err(ArcError::Document(format!(
                "unknown format {:?}",
                self.format
            )));
        }
        if self.version != Self::VERSION {
            return Err(ArcError::Document(format!(
                "unsupported version {}",
                self.version
            )));
        }
        let field = FieldContext::new(self.field)?;
        let [a, b, c] = self.form;
        for e in [a, b, c] {
            field.elem(e.0)?;
        }
        let subgroup = AdditiveSubgroup::from_basis(&field, &self.subgroup_basis)?;
        let allow_trivial = subgroup.len() == field.q() as usize;
        let arc = denniston_arc(
            &field,
            QuadraticForm::new(a, b, c),
            subgroup,
            ArcOptions {
                includes_origin: self.includes_origin,
                allow_trivial,
            },
        )?;
        let matches = arc.points.len() == self.points.len()
            && arc
                .points
                .iter()
                .zip(&self.points)
                .all(|(&(x, y), p)| [x, y] == *p);
        if !matches {
            return Err(ArcError::Document(
                "stored points differ from the reconstructed arc".into(),
            ));
        }
        Ok(arc)
    }
}
