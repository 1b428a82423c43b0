//! Functional codes `C_V(X) = {(f(P_1), ..., f(P_n)) : f in V}` over a point
//! set `X`, with `V` spanned by monomials `x^i y^j`.

mod enumerate;
mod weights;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arcs::Arc;
use crate::gf::{Elem, FieldContext, FieldError};

pub use enumerate::{enumerate_projective, Budget, Symbol, WordVisitor};
pub use weights::{
    macwilliams_dual, min_distance, min_weight_codeword, two_weight_check, weight_distribution,
    MinWeightWitness, WeightDistribution, WeightStats,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("empty point set")]
    NoPoints,
    #[error("empty monomial space")]
    EmptySpace,
    #[error("monomial x^{0}y^{1} appears twice")]
    RepeatedMonomial(u32, u32),
    #[error("cannot parse monomial space {0:?}")]
    BadSpace(String),
    #[error("monomial x^{}y^{} (row {row}) depends on the earlier rows; rank is {rank}", .monomial.0, .monomial.1)]
    RankDeficient {
        row: usize,
        monomial: (u32, u32),
        rank: usize,
    },
    #[error(
        "enumeration refused: {messages} projective messages x {length} columns \
         (~{column_ops} column updates) exceeds the budget of {limit} messages"
    )]
    BudgetExceeded {
        messages: u128,
        length: usize,
        column_ops: u128,
        limit: u128,
    },
    #[error("generator matrix text: {0}")]
    BadMatrix(String),
    #[error("message has {got} coordinates, expected {expected}")]
    MessageLength { got: usize, expected: usize },
    #[error("dual distribution entry A'_{index} is {reason}")]
    MacWilliams { index: usize, reason: String },
}

/// Ordered list of exponent pairs `(i, j)` for `x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialSpace {
    exponents: Vec<(u32, u32)>,
}

impl MonomialSpace {
    pub fn new(exponents: Vec<(u32, u32)>) -> Result<Self, CodeError> {
        if exponents.is_empty() {
            return Err(CodeError::EmptySpace);
        }
        for (idx, e) in exponents.iter().enumerate() {
            if exponents[..idx].contains(e) {
                return Err(CodeError::RepeatedMonomial(e.0, e.1));
            }
        }
        Ok(MonomialSpace { exponents })
    }

    /// `x, y, x^2, xy, y^2`.
    pub fn conic5() -> Self {
        MonomialSpace {
            exponents: vec![(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)],
        }
    }

    /// Every `x^i y^j` with `i + j <= 3`, by total degree then decreasing `i`.
    pub fn cubic10() -> Self {
        let mut exponents = Vec::new();
        for d in 0..=3u32 {
            for i in (0..=d).rev() {
                exponents.push((i, d - i));
            }
        }
        MonomialSpace { exponents }
    }

    /// `1, x, y`.
    pub fn linear3() -> Self {
        MonomialSpace {
            exponents: vec![(0, 0), (1, 0), (0, 1)],
        }
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Value of every monomial at `(x, y)`, in space order.
    pub fn eval_all(&self, field: &FieldContext, x: Elem, y: Elem) -> Vec<Elem> {
        self.exponents
            .iter()
            .map(|&(i, j)| field.mul(field.pow(x, i as u64), field.pow(y, j as u64)))
            .collect()
    }
}

impl fmt::Display for MonomialSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(i, j)| format!("{i}:{j}"))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MonomialSpace {
    type Err = CodeError;

    /// A preset name (`conic5`, `cubic10`, `linear3`) or `i:j,i:j,...`.
    fn from_str(s: &str) -> Result<Self, CodeError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "conic5" => return Ok(Self::conic5()),
            "cubic10" => return Ok(Self::cubic10()),
            "linear3" => return Ok(Self::linear3()),
            _ => {}
        }
        let bad = || CodeError::BadSpace(s.to_string());
        let mut exps = Vec::new();
        for part in s.split(',') {
            let (i, j) = part.trim().split_once(':').ok_or_else(bad)?;
            let i: u32 = i.trim().parse().map_err(|_| bad())?;
            let j: u32 = j.trim().parse().map_err(|_| bad())?;
            if i > 64 || j > 64 {
                return Err(bad());
            }
            exps.push((i, j));
        }
        Self::new(exps)
    }
}

/// A `k x n` generator matrix over GF(q).
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    field: FieldContext,
    rows: Vec<Vec<Elem>>,
}

impl GeneratorMatrix {
    pub fn new(field: &FieldContext, rows: Vec<Vec<Elem>>) -> Result<Self, CodeError> {
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 {
            return Err(CodeError::BadMatrix("empty matrix".into()));
        }
        for row in &rows {
            if row.len() != n {
                return Err(CodeError::BadMatrix("ragged rows".into()));
            }
            for &e in row {
                field.elem(e.0)?;
            }
        }
        Ok(GeneratorMatrix {
            field: field.clone(),
            rows,
        })
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// Rank together with the first row that is dependent on its predecessors.
    pub fn rank_profile(&self) -> (usize, Option<usize>) {
        let f = &self.field;
        let mut reduced: Vec<(usize, Vec<Elem>)> = Vec::new();
        let mut first_dependent = None;
        for (r, row) in self.rows.iter().enumerate() {
            let mut v = row.clone();
            for (pivot, prow) in &reduced {
                let c = v[*pivot];
                if !c.is_zero() {
                    for (a, &b) in v.iter_mut().zip(prow) {
                        *a += f.mul(c, b);
                    }
                }
            }
            match v.iter().position(|e| !e.is_zero()) {
                Some(p) => {
                    let inv = f.inv(v[p]).expect("pivot is nonzero");
                    for a in v.iter_mut() {
                        *a = f.mul(*a, inv);
                    }
                    reduced.push((p, v));
                }
                None => {
                    first_dependent.get_or_insert(r);
                }
            }
        }
        (reduced.len(), first_dependent)
    }

    pub fn rank(&self) -> usize {
        self.rank_profile().0
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>, CodeError> {
        if message.len() != self.k() {
            return Err(CodeError::MessageLength {
                got: message.len(),
                expected: self.k(),
            });
        }
        let mut word = vec![Elem::ZERO; self.n()];
        for (&u, row) in message.iter().zip(&self.rows) {
            if u.is_zero() {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w += self.field.mul(u, g);
            }
        }
        Ok(word)
    }

    /// One row per line, lowercase hex elements separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`to_text`](Self::to_text); blank lines are skipped.
    pub fn from_text(field: &FieldContext, text: &str) -> Result<Self, CodeError> {
        let mut rows = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| field.parse_elem(tok))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CodeError::BadMatrix(format!("line {}: {e}", lineno + 1)))?;
            rows.push(row);
        }
        Self::new(field, rows)
    }
}

/// The code of a monomial space evaluated on an ordered point set.
#[derive(Debug, Clone)]
pub struct EvalCode {
    points: Vec<(Elem, Elem)>,
    space: MonomialSpace,
    generator: GeneratorMatrix,
}

impl EvalCode {
    /// Rows follow the space order, columns the point order. Fails unless the
    /// evaluation map is injective.
    pub fn from_points(
        field: &FieldContext,
        points: &[(Elem, Elem)],
        space: &MonomialSpace,
    ) -> Result<Self, CodeError> {
        if points.is_empty() {
            return Err(CodeError::NoPoints);
        }
        let mut rows = vec![Vec::with_capacity(points.len()); space.len()];
        for &(x, y) in points {
            for (row, v) in rows.iter_mut().zip(space.eval_all(field, x, y)) {
                row.push(v);
            }
        }
        let generator = GeneratorMatrix::new(field, rows)?;
        let (rank, dependent) = generator.rank_profile();
        if let Some(row) = dependent {
            return Err(CodeError::RankDeficient {
                row,
                monomial: space.exponents[row],
                rank,
            });
        }
        Ok(EvalCode {
            points: points.to_vec(),
            space: space.clone(),
            generator,
        })
    }

    pub fn points(&self) -> &[(Elem, Elem)] {
        &self.points
    }

    pub fn space(&self) -> &MonomialSpace {
        &self.space
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn field(&self) -> &FieldContext {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.n()
    }

    pub fn k(&self) -> usize {
        self.generator.k()
    }
}

/// `C_V(arc)`.
pub fn build_code(arc: &Arc, space: &MonomialSpace) -> Result<EvalCode, CodeError> {
    EvalCode::from_points(arc.field(), arc.points(), space)
}
