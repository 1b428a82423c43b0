use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_projective, Budget, Symbol, WordVisitor};
use super::{CodeError, GeneratorMatrix};
use crate::gf::Elem;

/// Histogram of codeword weights, zero word included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub n: usize,
    pub q: u64,
    pub counts: BTreeMap<usize, u64>,
}

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// Smallest nonzero weight.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn nonzero_weights(&self) -> BTreeSet<usize> {
        self.counts.keys().copied().filter(|&w| w > 0).collect()
    }

    /// Sum equals `q^k` and scalar multiples share weights.
    pub fn check_invariants(&self, k: usize) -> Result<(), String> {
        let expect = (self.q as u128).pow(k as u32);
        if self.total() != expect {
            return Err(format!("counts sum to {}, expected {expect}", self.total()));
        }
        for (&w, &c) in &self.counts {
            if w > 0 && c % (self.q - 1) != 0 {
                return Err(format!("A_{w} = {c} is not a multiple of q-1"));
            }
        }
        Ok(())
    }

    /// Per-weight `computed - expected` for every weight present in either.
    pub fn delta(&self, expected: &BTreeMap<usize, u64>) -> BTreeMap<usize, i128> {
        let mut out = BTreeMap::new();
        let keys: BTreeSet<usize> = self.counts.keys().chain(expected.keys()).copied().collect();
        for w in keys {
            let a = self.counts.get(&w).copied().unwrap_or(0) as i128;
            let b = expected.get(&w).copied().unwrap_or(0) as i128;
            if a != b {
                out.insert(w, a - b);
            }
        }
        out
    }

    pub fn as_pairs(&self) -> Vec<[u64; 2]> {
        self.counts.iter().map(|(&w, &c)| [w as u64, c]).collect()
    }
}

/// A nonzero message of least weight; ties go to the lexicographically
/// smallest normalized message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinWeightWitness {
    pub weight: usize,
    pub message: Vec<Elem>,
}

/// Per-class weight histogram plus the minimum-weight witness.
#[derive(Debug, Clone, Default)]
pub struct WeightStats {
    pub class_hist: Vec<u64>,
    pub witness: Option<(usize, Vec<u32>)>,
}

impl WeightStats {
    pub fn new(n: usize) -> Self {
        WeightStats {
            class_hist: vec![0; n + 1],
            witness: None,
        }
    }

    fn offer(&mut self, weight: usize, message: &[u32]) {
        let better = match &self.witness {
            None => true,
            Some((w, msg)) => weight < *w || (weight == *w && message < msg.as_slice()),
        };
        if better {
            self.witness = Some((weight, message.to_vec()));
        }
    }
}

impl WordVisitor for WeightStats {
    #[inline]
    fn visit<S: Symbol>(&mut self, message: &[u32], _word: &[S], weight: usize) {
        self.class_hist[weight] += 1;
        if weight > 0 {
            match &self.witness {
                Some((w, _)) if weight > *w => {}
                _ => self.offer(weight, message),
            }
        }
    }

    fn merge(&mut self, other: Self) {
        for (a, b) in self.class_hist.iter_mut().zip(other.class_hist) {
            *a += b;
        }
        if let Some((w, msg)) = other.witness {
            self.offer(w, &msg);
        }
    }
}

fn collect_stats(
    gen: &GeneratorMatrix,
    workers: usize,
    budget: Budget,
) -> Result<WeightStats, CodeError> {
    let n = gen.n();
    enumerate_projective(gen, workers, budget, || WeightStats::new(n))
}

fn distribution_from(gen: &GeneratorMatrix, stats: &WeightStats) -> WeightDistribution {
    let q = gen.field().q() as u64;
    let mut counts = BTreeMap::new();
    counts.insert(0, 1 + (q - 1) * stats.class_hist[0]);
    for (w, &c) in stats.class_hist.iter().enumerate().skip(1) {
        if c > 0 {
            counts.insert(w, (q - 1) * c);
        }
    }
    WeightDistribution {
        n: gen.n(),
        q,
        counts,
    }
}

/// Exact weight distribution by projective Gray enumeration.
pub fn weight_distribution(
    gen: &GeneratorMatrix,
    workers: usize,
    budget: Budget,
) -> Result<WeightDistribution, CodeError> {
    let stats = collect_stats(gen, workers, budget)?;
    Ok(distribution_from(gen, &stats))
}

/// Distribution together with a minimum-weight codeword.
pub fn min_weight_codeword(
    gen: &GeneratorMatrix,
    workers: usize,
    budget: Budget,
) -> Result<(WeightDistribution, Option<MinWeightWitness>), CodeError> {
    let stats = collect_stats(gen, workers, budget)?;
    let witness = stats.witness.as_ref().map(|(w, msg)| MinWeightWitness {
        weight: *w,
        message: msg.iter().map(|&u| Elem(u)).collect(),
    });
    Ok((distribution_from(gen, &stats), witness))
}

pub fn min_distance(
    gen: &GeneratorMatrix,
    workers: usize,
    budget: Budget,
) -> Result<Option<usize>, CodeError> {
    Ok(weight_distribution(gen, workers, budget)?.min_distance())
}

/// Distinct nonzero weights; for a linear-form code on a maximal arc of
/// degree `h` and size `N` these are `{N - h, N}`.
pub fn two_weight_check(
    gen: &GeneratorMatrix,
    workers: usize,
    budget: Budget,
) -> Result<BTreeSet<usize>, CodeError> {
    Ok(weight_distribution(gen, workers, budget)?.nonzero_weights())
}

/// Krawtchouk values `K_j(x)` for `j = 0..=n` by the three-term recurrence.
fn krawtchouk_column(n: usize, q: u64, x: usize) -> Vec<BigInt> {
    let q = BigInt::from(q);
    let qm1 = &q - 1;
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    if n == 0 {
        return out;
    }
    out.push(BigInt::from(n) * &qm1 - &q * BigInt::from(x));
    for j in 1..n {
        let a = BigInt::from(n - j) * &qm1 + BigInt::from(j) - &q * BigInt::from(x);
        let next =
            (a * &out[j] - &qm1 * BigInt::from(n - j + 1) * &out[j - 1]) / BigInt::from(j + 1);
        out.push(next);
    }
    out
}

/// MacWilliams transform: the dual code's weight distribution.
///
/// Fails if any entry is negative or not an integer, which means `dist`
/// cannot be the distribution of a linear code of dimension `k`.
pub fn macwilliams_dual(dist: &WeightDistribution, k: usize) -> Result<Vec<BigUint>, CodeError> {
    let n = dist.n;
    let q = dist.q;
    let size = BigInt::from(q).pow(k as u32);
    if BigInt::from(dist.total()) != size {
        return Err(CodeError::MacWilliams {
            index: 0,
            reason: format!(
                "undefined: input sums to {}, not q^k = {size}",
                dist.total()
            ),
        });
    }
    let mut acc = vec![BigInt::zero(); n + 1];
    for (&w, &count) in &dist.counts {
        let col = krawtchouk_column(n, q, w);
        let c = BigInt::from(count);
        for (a, kv) in acc.iter_mut().zip(col) {
            *a += &c * kv;
        }
    }
    let mut out = Vec::with_capacity(n + 1);
    for (j, a) in acc.into_iter().enumerate() {
        if a.is_negative() {
            return Err(CodeError::MacWilliams {
                index: j,
                reason: "negative".into(),
            });
        }
        if !(&a % &size).is_zero() {
            return Err(CodeError::MacWilliams {
                index: j,
                reason: "not an integer".into(),
            });
        }
        let v = a / &size;
        out.push(v.to_biguint().unwrap_or_default());
    }
    let total: BigUint = out.iter().sum();
    let expect = BigUint::from(q).pow((n - k) as u32);
    if total != expect {
        return Err(CodeError::MacWilliams {
            index: n,
            reason: format!("sum {total} differs from q^(n-k)"),
        });
    }
    debug_assert!(out
        .iter()
        .all(|v| BigInt::from_biguint(Sign::Plus, v.clone()) >= BigInt::zero()));
    Ok(out)
}
