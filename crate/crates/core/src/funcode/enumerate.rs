//! Exhaustive enumeration of projective message classes.
//!
//! A class is represented by the message whose first nonzero coordinate is 1.
//! For a leading position `p` the free coordinates `p+1..k` form a GF(2)-space
//! of `(k-1-p)·m` bits, walked in binary reflected Gray order: each step flips
//! one bit `b` of one coordinate `j`, i.e. adds `T^b · row_j` to the codeword.
//! The Gray walk is cut into aligned blocks that workers process independently.

use std::ops::BitXorAssign;

use rayon::prelude::*;

use super::{CodeError, GeneratorMatrix};
use crate::gf::Elem;

/// Hard cap on `k·m`, independent of any budget flag.
pub const MAX_MESSAGE_BITS: u32 = 48;

/// Storage type for codeword symbols; the narrowest that fits the field.
pub trait Symbol: Copy + Default + Eq + BitXorAssign + Send + Sync + 'static {
    fn from_u32(v: u32) -> Self;
    fn to_u32(self) -> u32;
}

impl Symbol for u8 {
    #[inline]
    fn from_u32(v: u32) -> Self {
        v as u8
    }
    #[inline]
    fn to_u32(self) -> u32 {
        self as u32
    }
}

impl Symbol for u16 {
    #[inline]
    fn from_u32(v: u32) -> Self {
        v as u16
    }
    #[inline]
    fn to_u32(self) -> u32 {
        self as u32
    }
}

impl Symbol for u32 {
    #[inline]
    fn from_u32(v: u32) -> Self {
        v
    }
    #[inline]
    fn to_u32(self) -> u32 {
        self
    }
}

/// Receives every projective class exactly once.
///
/// `merge` must be associative and commutative so the result does not depend
/// on how the work was split.
pub trait WordVisitor: Send + Sized {
    fn visit<S: Symbol>(&mut self, message: &[u32], word: &[S], weight: usize);
    fn merge(&mut self, other: Self);
}

/// Upper limit on the number of projective messages an enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_messages: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_messages: 1 << 32,
        }
    }
}

impl Budget {
    pub fn messages(max_messages: u128) -> Self {
        Budget { max_messages }
    }

    /// Refuses when `(q^k - 1)/(q - 1)` exceeds the budget or `k·m` the hard cap.
    pub fn check(&self, gen: &GeneratorMatrix) -> Result<u128, CodeError> {
        let m = gen.field().m();
        let k = gen.k() as u32;
        let q = gen.field().q() as u128;
        let bits = k * m;
        let messages = if bits <= 126 {
            ((1u128 << bits) - 1) / (q - 1)
        } else {
            u128::MAX
        };
        let limit = if bits > MAX_MESSAGE_BITS {
            0
        } else {
            self.max_messages
        };
        if messages > limit {
            return Err(CodeError::BudgetExceeded {
                messages,
                length: gen.n(),
                column_ops: messages.saturating_mul(gen.n() as u128),
                limit,
            });
        }
        Ok(messages)
    }
}

#[derive(Debug, Clone, Copy)]
struct Block {
    lead: usize,
    index: u64,
}

struct Plan<S> {
    k: usize,
    m: usize,
    n: usize,
    block_bits: u32,
    /// `rows[j*n..]` is row `j`.
    rows: Vec<S>,
    /// `steps[(j*m + b)*n..]` is `T^b · row_j`.
    steps: Vec<S>,
}

impl<S: Symbol> Plan<S> {
    fn new(gen: &GeneratorMatrix) -> Self {
        let f = gen.field();
        let k = gen.k();
        let m = f.m() as usize;
        let n = gen.n();
        let mut rows = Vec::with_capacity(k * n);
        let mut steps = Vec::with_capacity(k * m * n);
        for row in gen.rows() {
            rows.extend(row.iter().map(|e| S::from_u32(e.0)));
            for b in 0..m {
                let t = Elem(1 << b);
                steps.extend(row.iter().map(|&e| S::from_u32(f.mul(t, e).0)));
            }
        }
        Plan {
            k,
            m,
            n,
            block_bits: 14,
            rows,
            steps,
        }
    }

    fn free_bits(&self, lead: usize) -> u32 {
        ((self.k - 1 - lead) * self.m) as u32
    }

    fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        for lead in 0..self.k {
            let bits = self.free_bits(lead);
            let count = 1u64 << bits.saturating_sub(self.block_bits);
            out.extend((0..count).map(|index| Block { lead, index }));
        }
        out
    }

    fn run<V: WordVisitor>(&self, gen: &GeneratorMatrix, block: Block, visitor: &mut V) {
        let f = gen.field();
        let (k, m, n) = (self.k, self.m, self.n);
        let bits = self.free_bits(block.lead);
        let span = bits.min(self.block_bits);
        let start = block.index << span;
        let gray = start ^ (start >> 1);

        let mut message = vec![0u32; k];
        message[block.lead] = 1;
        for t in 0..bits as usize {
            if gray >> t & 1 == 1 {
                message[block.lead + 1 + t / m] |= 1 << (t % m);
            }
        }
        let mut word = vec![S::default(); n];
        for (j, &u) in message.iter().enumerate() {
            if u == 0 {
                continue;
            }
            let row = &self.rows[j * n..(j + 1) * n];
            for (w, &g) in word.iter_mut().zip(row) {
                let prod = f.mul(Elem(u), Elem(g.to_u32()));
                *w ^= S::from_u32(prod.0);
            }
        }
        let mut weight = word.iter().filter(|&&c| c != S::default()).count();
        visitor.visit(&message, &word, weight);

        for i in 1..(1u64 << span) {
            let t = (start + i).trailing_zeros() as usize;
            let j = block.lead + 1 + t / m;
            let b = t % m;
            message[j] ^= 1 << b;
            let step = &self.steps[(j * m + b) * n..(j * m + b + 1) * n];
            weight = xor_and_weigh(&mut word, step);
            visitor.visit(&message, &word, weight);
        }
    }
}

#[inline]
fn xor_and_weigh<S: Symbol>(word: &mut [S], step: &[S]) -> usize {
    let mut w = 0usize;
    for (c, &s) in word.iter_mut().zip(step) {
        *c ^= s;
        w += (*c != S::default()) as usize;
    }
    w
}

fn run_all<S: Symbol, V, F>(gen: &GeneratorMatrix, workers: usize, make: &F) -> V
where
    V: WordVisitor,
    F: Fn() -> V + Sync,
{
    let plan = Plan::<S>::new(gen);
    let blocks = plan.blocks();
    let job = || {
        blocks
            .par_iter()
            .fold(make, |mut v, &b| {
                plan.run(gen, b, &mut v);
                v
            })
            .reduce(make, |mut a, b| {
                a.merge(b);
                a
            })
    };
    if workers == 1 {
        let mut v = make();
        for &b in &blocks {
            plan.run(gen, b, &mut v);
        }
        return v;
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}

/// Visits one representative of every nonzero projective message class.
///
/// `workers == 0` uses every available core.
pub fn enumerate_projective<V, F>(
    gen: &GeneratorMatrix,
    workers: usize,
    budget: Budget,
    make: F,
) -> Result<V, CodeError>
where
    V: WordVisitor,
    F: Fn() -> V + Sync,
{
    budget.check(gen)?;
    let q = gen.field().q();
    Ok(if q <= 1 << 8 {
        run_all::<u8, V, F>(gen, workers, &make)
    } else if q <= 1 << 16 {
        run_all::<u16, V, F>(gen, workers, &make)
    } else {
        run_all::<u32, V, F>(gen, workers, &make)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldContext;
    use std::collections::BTreeSet;

    #[derive(Default)]
    struct Collect(BTreeSet<Vec<u32>>, usize);

    impl WordVisitor for Collect {
        fn visit<S: Symbol>(&mut self, message: &[u32], _: &[S], _: usize) {
            self.0.insert(message.to_vec());
            self.1 += 1;
        }
        fn merge(&mut self, other: Self) {
            self.0.extend(other.0);
            self.1 += other.1;
        }
    }

    fn random_matrix(f: &FieldContext, k: usize, n: usize, seed: u32) -> GeneratorMatrix {
        let mut s = seed;
        let rows = (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        s = s.wrapping_mul(1103515245).wrapping_add(12345);
                        Elem((s >> 8) % f.q())
                    })
                    .collect()
            })
            .collect();
        GeneratorMatrix::new(f, rows).unwrap()
    }

    #[test]
    fn visits_each_class_once() {
        for (m, k) in [(2, 3), (3, 3), (4, 2), (1, 4)] {
            let f = FieldContext::with_degree(m).unwrap();
            let gen = random_matrix(&f, k, 5, 7);
            let c = enumerate_projective(&gen, 1, Budget::default(), Collect::default).unwrap();
            let q = f.q() as usize;
            let expect = (q.pow(k as u32) - 1) / (q - 1);
            assert_eq!(c.1, expect);
            assert_eq!(c.0.len(), expect);
            for msg in &c.0 {
                let lead = msg.iter().position(|&u| u != 0).unwrap();
                assert_eq!(msg[lead], 1);
            }
        }
    }

    #[test]
    fn words_match_direct_encoding() {
        struct Check<'a>(&'a GeneratorMatrix, usize);
        impl WordVisitor for Check<'_> {
            fn visit<S: Symbol>(&mut self, message: &[u32], word: &[S], weight: usize) {
                let msg: Vec<Elem> = message.iter().map(|&u| Elem(u)).collect();
                let direct = self.0.encode(&msg).unwrap();
                assert!(direct.iter().zip(word).all(|(a, b)| a.0 == b.to_u32()));
                assert_eq!(weight, direct.iter().filter(|e| !e.is_zero()).count());
                self.1 += 1;
            }
            fn merge(&mut self, other: Self) {
                self.1 += other.1;
            }
        }
        // 2^16 free bits at the first lead position spans several blocks
        let f = FieldContext::with_degree(4).unwrap();
        let gen = random_matrix(&f, 5, 9, 3);
        let c = enumerate_projective(&gen, 1, Budget::default(), || Check(&gen, 0)).unwrap();
        assert_eq!(c.1, (16usize.pow(5) - 1) / 15);
    }

    #[test]
    fn budget_refusal() {
        let f = FieldContext::with_degree(4).unwrap();
        let gen = random_matrix(&f, 10, 4, 1);
        let err = Budget::default().check(&gen).unwrap_err();
        assert!(matches!(err, CodeError::BudgetExceeded { .. }));
        assert!(Budget::messages(1 << 40).check(&gen).is_ok());

        let f = FieldContext::with_degree(10).unwrap();
        let gen = random_matrix(&f, 5, 4, 1);
        // k·m = 50 is over the hard cap whatever the budget
        assert!(Budget::messages(u128::MAX).check(&gen).is_err());
    }
}
