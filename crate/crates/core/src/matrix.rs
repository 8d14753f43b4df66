use std::sync::Arc;

use crate::error::Result;
use crate::limits::Limits;
use crate::semiring::Semiring;
use crate::subset::Subset;

/// The semiring of `n × n` matrices over a base semiring.
///
/// A matrix is encoded as a mixed-radix number in base `|A|`: entry `(i, j)`
/// (0-based, row-major position `p = i·n + j`) is the digit of weight
/// `|A|^p`, so entry `(0, 0)` is the least significant digit.
#[derive(Debug, Clone)]
pub struct MatrixSemiring {
    semiring: Arc<Semiring>,
    base: Arc<Semiring>,
    n: usize,
}

impl MatrixSemiring {
    pub fn new(base: Arc<Semiring>, n: usize) -> Result<Self> {
        Self::with_limits(base, n, &Limits::default())
    }

    pub fn with_limits(base: Arc<Semiring>, n: usize, limits: &Limits) -> Result<Self> {
        if n == 0 {
            return Err(crate::Error::Precondition(
                "matrix size must be at least 1".into(),
            ));
        }
        let q = base.size();
        let entries = n * n;
        let requested = (q as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
        let size = limits.check_carrier(requested)?;

        let digits: Vec<Vec<usize>> = (0..size).map(|x| decode(x, q, entries)).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        let mut scratch = vec![0; entries];
        for x in &digits {
            for y in &digits {
                for p in 0..entries {
                    scratch[p] = base.add(x[p], y[p]);
                }
                add.push(encode(&scratch, q));
                for i in 0..n {
                    for j in 0..n {
                        scratch[i * n + j] =
                            base.sum((0..n).map(|k| base.mul(x[i * n + k], y[k * n + j])));
                    }
                }
                mul.push(encode(&scratch, q));
            }
        }
        let identity = {
            let mut d = vec![base.zero(); entries];
            for i in 0..n {
                d[i * n + i] = base.one();
            }
            encode(&d, q)
        };
        let zero = encode(&vec![base.zero(); entries], q);
        let semiring = Semiring::from_flat(
            format!("M{n}({})", base.name()),
            size,
            zero,
            identity,
            add,
            mul,
            limits,
        )?;
        Ok(Self {
            semiring: Arc::new(semiring),
            base,
            n,
        })
    }

    pub fn semiring(&self) -> &Arc<Semiring> {
        &self.semiring
    }

    pub fn base(&self) -> &Arc<Semiring> {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Encodes row-major entries (base-semiring indices) as a carrier index.
    pub fn encode(&self, entries: &[usize]) -> usize {
        assert_eq!(entries.len(), self.n * self.n);
        encode(entries, self.base.size())
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        decode(x, self.base.size(), self.n * self.n)
    }

    /// `a` placed at `(i, j)`, zero elsewhere.
    pub fn entry(&self, a: usize, i: usize, j: usize) -> usize {
        let mut d = vec![self.base.zero(); self.n * self.n];
        d[i * self.n + j] = a;
        self.encode(&d)
    }

    /// The matrix unit `e_ij` (0-based).
    pub fn unit(&self, i: usize, j: usize) -> usize {
        self.entry(self.base.one(), i, j)
    }

    /// `a·I`.
    pub fn scalar(&self, a: usize) -> usize {
        let mut d = vec![self.base.zero(); self.n * self.n];
        for i in 0..self.n {
            d[i * self.n + i] = a;
        }
        self.encode(&d)
    }

    pub fn identity(&self) -> usize {
        self.semiring.one()
    }

    /// Matrices whose entries all lie in `entries` (a subset of the base).
    pub fn with_entries_in(&self, entries: &Subset) -> Subset {
        let mut out = Subset::empty(self.semiring.size());
        for x in self.semiring.elements() {
            if self.decode(x).iter().all(|&d| entries.contains(d)) {
                out.insert(x);
            }
        }
        out
    }

    /// `{a·I : a ∈ A}`.
    pub fn scalars(&self) -> Subset {
        let mut out = Subset::empty(self.semiring.size());
        for a in self.base.elements() {
            out.insert(self.scalar(a));
        }
        out
    }
}

pub(crate) fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d)
}

pub(crate) fn decode(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % base);
        x /= base;
    }
    out
}
