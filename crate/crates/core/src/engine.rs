//! Exhaustive (or opt-in sampled) evaluation of identities over basis
//! tuples, parallel over the outer index with a deterministic merge.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exact::{Shape, Space, SparseMatrix, SparseVec};
use crate::report::{Check, Witness};

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// When an identity has more input tuples than this, evaluate this
    /// many pseudo-random tuples instead. `None` means always exhaustive.
    pub sample_budget: Option<u64>,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Witnesses kept per failing check (the lexicographically smallest).
    pub max_witnesses: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { sample_budget: None, seed: 0, threads: None, max_witnesses: 3 }
    }
}

impl CheckOptions {
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    /// Runs `f` inside a pool with the configured thread count.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.threads {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("thread pool")
                .install(f),
            None => f(),
        }
    }
}

pub enum Outcome {
    Equal,
    Differ(SparseVec, SparseVec),
    OutOfTruncation,
}

impl Outcome {
    pub fn compare(lhs: SparseVec, rhs: SparseVec) -> Outcome {
        if lhs == rhs {
            Outcome::Equal
        } else {
            Outcome::Differ(lhs, rhs)
        }
    }
}

/// Partial result for a block of tuples.
#[derive(Default)]
pub struct Block {
    pub verified: u64,
    pub skipped: u64,
    pub failures: u64,
    pub witnesses: Vec<(Vec<usize>, SparseVec, SparseVec)>,
}

impl Block {
    pub fn record(&mut self, idx: &[usize], outcome: Outcome, keep: usize) {
        match outcome {
            Outcome::Equal => self.verified += 1,
            Outcome::OutOfTruncation => self.skipped += 1,
            Outcome::Differ(l, r) => {
                self.verified += 1;
                self.failures += 1;
                if self.witnesses.len() < keep {
                    self.witnesses.push((idx.to_vec(), l, r));
                }
            }
        }
    }
}

fn merge(name: &str, args: &[Space], value: &Shape, total: u64, sampled: bool, blocks: Vec<Block>, keep: usize) -> Check {
    let mut verified = 0;
    let mut skipped = 0;
    let mut failures = 0;
    let mut wit = Vec::new();
    for b in blocks {
        verified += b.verified;
        skipped += b.skipped;
        failures += b.failures;
        wit.extend(b.witnesses);
    }
    wit.sort_by(|a, b| a.0.cmp(&b.0));
    wit.truncate(keep);
    let witnesses = wit
        .into_iter()
        .map(|(idx, l, r)| {
            let labels = idx.iter().zip(args).map(|(&i, s)| s.label(i).to_string()).collect();
            Witness::new(idx, labels, value, &l, &r)
        })
        .collect();
    Check::from_counts(name, total, verified, skipped, failures, sampled, witnesses)
}

fn seed_for(name: &str, seed: u64) -> u64 {
    // FNV-1a over the check name keeps samples stable per check.
    name.bytes()
        .fold(0xcbf29ce484222325u64 ^ seed, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

fn total_of(args: &[Space]) -> u64 {
    args.iter().map(|s| s.dim() as u64).product()
}

fn decode(mut i: u64, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = (i % dims[k] as u64) as usize;
        i /= dims[k] as u64;
    }
    out
}

/// Evaluates `f` on every tuple of basis indices of `args` (or a sample).
pub fn check_tuples<F>(name: &str, args: &[Space], value: &Shape, opts: &CheckOptions, f: F) -> Check
where
    F: Fn(&[usize]) -> Outcome + Sync,
{
    let dims: Vec<usize> = args.iter().map(Space::dim).collect();
    let total = total_of(args);
    let keep = opts.max_witnesses;
    if let Some(budget) = opts.sample_budget {
        if total > budget {
            let mut rng = ChaCha8Rng::seed_from_u64(seed_for(name, opts.seed));
            let mut picks: Vec<u64> = (0..budget).map(|_| rng.random_range(0..total)).collect();
            picks.sort_unstable();
            picks.dedup();
            let blocks: Vec<Block> = picks
                .par_chunks(256)
                .map(|chunk| {
                    let mut b = Block::default();
                    for &p in chunk {
                        let idx = decode(p, &dims);
                        b.record(&idx, f(&idx), keep);
                    }
                    b
                })
                .collect();
            return merge(name, args, value, total, true, blocks, keep);
        }
    }
    if dims.is_empty() {
        let mut b = Block::default();
        b.record(&[], f(&[]), keep);
        return merge(name, args, value, total, false, vec![b], keep);
    }
    let inner: u64 = dims[1..].iter().map(|&d| d as u64).product();
    let blocks: Vec<Block> = (0..dims[0])
        .into_par_iter()
        .map(|first| {
            let mut b = Block::default();
            let mut idx = vec![0usize; dims.len()];
            idx[0] = first;
            for j in 0..inner {
                let rest = decode(j, &dims[1..]);
                idx[1..].copy_from_slice(&rest);
                b.record(&idx, f(&idx), keep);
            }
            b
        })
        .collect();
    merge(name, args, value, total, false, blocks, keep)
}

/// Like `check_tuples`, but the caller evaluates whole blocks at once
/// (block `k` of `nblocks`), e.g. with a vectorized formula. Witness order is
/// still lexicographic on the full tuple.
pub fn check_blocks<F>(name: &str, args: &[Space], value: &Shape, opts: &CheckOptions, nblocks: usize, f: F) -> Check
where
    F: Fn(usize, usize) -> Block + Sync,
{
    let keep = opts.max_witnesses;
    let blocks: Vec<Block> = (0..nblocks).into_par_iter().map(|k| f(k, keep)).collect();
    merge(name, args, value, total_of(args), false, blocks, keep)
}

/// One identity between two fixed values.
pub fn check_equal(name: &str, value: &Shape, lhs: &SparseVec, rhs: &SparseVec) -> Check {
    let w = (lhs != rhs).then(|| Witness::new(vec![], vec![], value, lhs, rhs));
    Check::boolean(name, lhs == rhs, w)
}

/// Two linear maps agree column by column; differing columns become
/// witnesses labeled by the domain basis.
pub fn check_matrices(name: &str, lhs: &SparseMatrix, rhs: &SparseMatrix, opts: &CheckOptions) -> Check {
    assert_eq!(lhs.ncols(), rhs.ncols(), "{name}: domains differ");
    assert_eq!(lhs.nrows(), rhs.nrows(), "{name}: codomains differ");
    let bad = lhs.differing_columns(rhs);
    let n = lhs.ncols() as u64;
    let witnesses = bad
        .iter()
        .take(opts.max_witnesses)
        .map(|&j| Witness::new(vec![j], vec![lhs.domain().label(j)], lhs.codomain(), lhs.col(j), rhs.col(j)))
        .collect();
    Check::from_counts(name, n, n, 0, bad.len() as u64, false, witnesses)
}

pub fn sample_requested(opts: &CheckOptions, total: u64) -> bool {
    opts.sample_budget.is_some_and(|b| total > b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Q;
    use crate::report::Status;

    #[test]
    fn witnesses_are_smallest_tuples_regardless_of_threads() {
        let s = Space::numbered("v", 7);
        let value = Shape::of(&Space::numbered("w", 1));
        let f = |idx: &[usize]| {
            if (idx[0] + 2 * idx[1]) % 5 == 3 {
                Outcome::Differ(SparseVec::zero(1), SparseVec::basis(1, 0))
            } else {
                Outcome::Equal
            }
        };
        let run = |t: usize| {
            CheckOptions::default()
                .with_threads(t)
                .install(|| check_tuples("t", &[s.clone(), s.clone()], &value, &CheckOptions::default(), f))
        };
        let a = run(1);
        let b = run(4);
        assert_eq!(a.status, Status::Fail);
        assert_eq!(a.witnesses, b.witnesses);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.witnesses[0].indices, vec![0, 4]);
        assert_eq!(a.witnesses[0].rhs.terms(), vec![("w0".to_string(), Q::one())]);
    }

    #[test]
    fn sampling_is_deterministic_and_flagged() {
        let s = Space::numbered("v", 50);
        let value = Shape::scalar();
        let opts = CheckOptions { sample_budget: Some(100), ..Default::default() };
        let c = check_tuples("s", &[s.clone(), s.clone()], &value, &opts, |_| Outcome::Equal);
        assert!(c.sampled);
        assert!(c.verified <= 100);
        let d = check_tuples("s", &[s.clone(), s], &value, &opts, |_| Outcome::Equal);
        assert_eq!(c.verified, d.verified);
    }

    #[test]
    fn out_of_truncation_is_skip() {
        let s = Space::numbered("v", 3);
        let c = check_tuples("k", &[s], &Shape::scalar(), &CheckOptions::default(), |i| {
            if i[0] == 2 {
                Outcome::OutOfTruncation
            } else {
                Outcome::Equal
            }
        });
        assert_eq!(c.status, Status::Skip);
        assert_eq!(c.skipped, 1);
    }
}
