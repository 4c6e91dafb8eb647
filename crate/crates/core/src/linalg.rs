//! Exact linear algebra over a [`Field`]: a sparse incremental echelon basis
//! (used for graded ideal membership), Gauss-Jordan solving and inversion,
//! and fraction-free (Bareiss) rank and determinant.

use std::collections::BTreeMap;

use crate::ring::Field;

/// Sparse vector: `(column, value)` pairs, strictly ascending, no zeros.
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_map<F: Field>(m: BTreeMap<usize, F>) -> SparseVec<F> {
    m.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a - c·b` for sparse vectors.
fn axpy<F: Field>(a: &SparseVec<F>, c: &F, b: &SparseVec<F>) -> SparseVec<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.mul_ref(&b[j].1).neg_ref()));
            j += 1;
        } else {
            let v = a[i].1.sub_ref(&c.mul_ref(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row-echelon basis of a growing set of sparse vectors, keyed by leading
/// (largest) column. Pivot rows are normalized to a leading 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        Self {
            pivots: BTreeMap::new(),
        }
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` until its leading column is not a pivot (or it vanishes).
    pub fn reduce(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((lead, c)) = v.last() {
            match self.pivots.get(lead) {
                Some(p) => {
                    let c = c.clone();
                    v = axpy(&v, &c, p);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce(v);
        let Some((lead, c)) = v.last() else {
            return false;
        };
        let lead = *lead;
        let inv = c.inv_ref().expect("nonzero pivot");
        let v = v.into_iter().map(|(k, x)| (k, x.mul_ref(&inv))).collect();
        self.pivots.insert(lead, v);
        true
    }

    pub fn contains(&self, v: SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<F>> {
        self.pivots.values()
    }

    /// Fully reduced basis: each pivot column appears in exactly one row.
    pub fn reduced_rows(&self) -> Vec<SparseVec<F>> {
        let mut done: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (&lead, row) in &self.pivots {
            let mut r = row.clone();
            loop {
                let hit = r
                    .iter()
                    .rev()
                    .find(|(k, _)| *k != lead && done.contains_key(k))
                    .map(|(k, c)| (*k, c.clone()));
                match hit {
                    Some((k, c)) => r = axpy(&r, &c, &done[&k]),
                    None => break,
                }
            }
            done.insert(lead, r);
        }
        done.into_values().collect()
    }
}

/// Why a square system has no unique solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveFailure {
    /// Consistent, but the solution space has this dimension.
    Underdetermined {
        nullity: usize,
    },
    Inconsistent,
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref<F: Field>(m: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by_key(|&i| m[i][c].weight())
        else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv_ref().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..m[i].len() {
                    if !m[r][j].is_zero() {
                        let v = m[i][j].sub_ref(&f.mul_ref(&m[r][j]));
                        m[i][j] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Solves `a·x = b` for square or rectangular `a`, requiring uniqueness.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Result<Vec<F>, SolveFailure> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, cols + 1);
    if pivots.last() == Some(&cols) {
        return Err(SolveFailure::Inconsistent);
    }
    if pivots.len() < cols {
        return Err(SolveFailure::Underdetermined {
            nullity: cols - pivots.len(),
        });
    }
    Ok(pivots
        .iter()
        .enumerate()
        .map(|(r, _)| m[r][cols].clone())
        .collect())
}

pub fn inverse<F: Field>(a: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = a.len();
    let mut m: Vec<Vec<F>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank by Gauss-Jordan elimination.
pub fn rank<F: Field>(a: &[Vec<F>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    rref(&mut m, cols).len()
}

/// Fraction-free elimination: returns `(rank, last pivot)`. For a square
/// nonsingular matrix the last pivot is the determinant up to the sign of
/// the row swaps, which is tracked separately by [`bareiss_det`].
fn bareiss<F: Field>(mut m: Vec<Vec<F>>) -> (usize, F, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = F::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            odd_swaps = !odd_swaps;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = m[r][c]
                    .mul_ref(&m[i][j])
                    .sub_ref(&m[i][c].mul_ref(&m[r][j]));
                m[i][j] = v.div_ref(&prev).expect("nonzero previous pivot");
            }
            m[i][c] = F::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    (r, prev, odd_swaps)
}

pub fn bareiss_rank<F: Field>(a: &[Vec<F>]) -> usize {
    bareiss(a.to_vec()).0
}

pub fn bareiss_det<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    if n == 0 {
        return F::one();
    }
    let (r, last, odd) = bareiss(a.to_vec());
    if r < n {
        return F::zero();
    }
    if odd {
        last.neg_ref()
    } else {
        last
    }
}
