//! Sparse exact operators on tensor powers `V^{⊗k}`.
//!
//! Basis vectors of `V^{⊗k}` are flattened row-major: the multi-index
//! `(i₁,…,i_k)` (1-based) maps to `Σ (i_j − 1)·n^{k−j}`, so factor 1 is the
//! most significant digit. Operators are generic over the coefficient ring;
//! [`TensorOp`] has [`Scalar`] entries and the noncommutative matrices of the
//! algebra layer reuse the same container with polynomial entries.

mod json;

use std::collections::{BTreeMap, HashMap};

pub use json::{operator_from_json, operator_to_json, OperatorJson};

use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::{Field, Ring};
use crate::scalar::{GaussRational, Point, Scalar, Var};

/// Sparse operator on `V^{⊗arity}` with `dim V = n`.
#[derive(Clone, PartialEq, Debug)]
pub struct Tensor<C> {
    n: usize,
    arity: usize,
    entries: BTreeMap<(usize, usize), C>,
}

/// Operator with exact rational-function entries.
pub type TensorOp = Tensor<Scalar>;

fn pow(n: usize, k: usize) -> usize {
    n.checked_pow(k as u32).expect("tensor dimension overflow")
}

impl<C: Ring> Tensor<C> {
    pub fn zero(n: usize, arity: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        Self {
            n,
            arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut t = Self::zero(n, arity);
        for i in 0..t.dim() {
            t.entries.insert((i, i), C::one());
        }
        t
    }

    /// Builds from flat 0-based `(row, col, value)` triples, summing repeats.
    pub fn from_flat(
        n: usize,
        arity: usize,
        items: impl IntoIterator<Item = (usize, usize, C)>,
    ) -> Self {
        let mut t = Self::zero(n, arity);
        let dim = t.dim();
        for (r, c, v) in items {
            assert!(r < dim && c < dim, "flat index out of range");
            t.add_at(r, c, &v);
        }
        t
    }

    /// Arity-0 operator holding one value.
    pub fn scalar(n: usize, value: C) -> Self {
        Self::from_flat(n, 0, [(0, 0, value)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Side length `n^arity` of the matrix.
    pub fn dim(&self) -> usize {
        pow(self.n, self.arity)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero entries keyed by flat `(row, col)`.
    pub fn entries(&self) -> &BTreeMap<(usize, usize), C> {
        &self.entries
    }

    pub fn get_flat(&self, r: usize, c: usize) -> Option<&C> {
        self.entries.get(&(r, c))
    }

    pub fn value_flat(&self, r: usize, c: usize) -> C {
        self.get_flat(r, c).cloned().unwrap_or_else(C::zero)
    }

    /// Entry at 1-based multi-indices.
    pub fn get(&self, row: &[usize], col: &[usize]) -> Result<C> {
        Ok(self.value_flat(self.flat_index(row)?, self.flat_index(col)?))
    }

    pub fn set(&mut self, row: &[usize], col: &[usize], value: C) -> Result<()> {
        let key = (self.flat_index(row)?, self.flat_index(col)?);
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    fn add_at(&mut self, r: usize, c: usize, v: &C) {
        if v.is_zero() {
            return;
        }
        match self.entries.entry((r, c)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(v.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(v);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// 1-based multi-index to flat 0-based index.
    pub fn flat_index(&self, multi: &[usize]) -> Result<usize> {
        if multi.len() != self.arity {
            return Err(Error::Shape(format!(
                "multi-index of length {} for arity {}",
                multi.len(),
                self.arity
            )));
        }
        multi.iter().try_fold(0usize, |acc, &i| {
            if i == 0 || i > self.n {
                Err(Error::Shape(format!("index {i} outside 1..={}", self.n)))
            } else {
                Ok(acc * self.n + (i - 1))
            }
        })
    }

    /// Flat 0-based index to 1-based multi-index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.arity];
        for slot in out.iter_mut().rev() {
            *slot = flat % self.n + 1;
            flat /= self.n;
        }
        out
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.n != o.n || self.arity != o.arity {
            return Err(Error::Shape(format!(
                "operators on (n={}, arity={}) and (n={}, arity={})",
                self.n, self.arity, o.n, o.arity
            )));
        }
        Ok(())
    }

    fn debug_check(&self) {
        debug_assert!(
            self.entries.values().all(|v| !v.is_zero()),
            "explicit zero stored"
        );
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (&(r, c), v) in &o.entries {
            out.add_at(r, c, v);
        }
        out.debug_check();
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg_ref())
    }

    /// Multiplies every entry on the left: `c·X`.
    pub fn scale_left(&self, c: &C) -> Self {
        self.map(|v| c.mul_ref(v))
    }

    /// Multiplies every entry on the right: `X·c`.
    pub fn scale_right(&self, c: &C) -> Self {
        self.map(|v| v.mul_ref(c))
    }

    /// Applies `f` entrywise, dropping results that vanish.
    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Tensor<D> {
        let entries = self
            .entries
            .iter()
            .filter_map(|(k, v)| {
                let w = f(v);
                (!w.is_zero()).then_some((*k, w))
            })
            .collect();
        Tensor {
            n: self.n,
            arity: self.arity,
            entries,
        }
    }

    pub fn try_map<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Tensor<D>> {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let w = f(v)?;
            if !w.is_zero() {
                entries.insert(*k, w);
            }
        }
        Ok(Tensor {
            n: self.n,
            arity: self.arity,
            entries,
        })
    }

    /// Operator product `self ∘ o` (apply `o` first).
    pub fn compose(&self, o: &Self) -> Result<Self> {
        self.compose_with(o, |a, b| a.mul_ref(b))
    }

    /// Product of operators over different coefficient rings, with `mul`
    /// combining an entry of `self` (left) with one of `o` (right).
    pub fn compose_with<D: Ring, E: Ring>(
        &self,
        o: &Tensor<D>,
        mul: impl Fn(&C, &D) -> E,
    ) -> Result<Tensor<E>> {
        if self.n != o.n || self.arity != o.arity {
            return Err(Error::Shape(format!(
                "operators on (n={}, arity={}) and (n={}, arity={})",
                self.n, self.arity, o.n, o.arity
            )));
        }
        let mut rows: HashMap<usize, Vec<(usize, &D)>> = HashMap::new();
        for (&(r, c), v) in &o.entries {
            rows.entry(r).or_default().push((c, v));
        }
        let mut out = Tensor::<E>::zero(self.n, self.arity);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = rows.get(&k) {
                for &(j, b) in row {
                    out.add_at(i, j, &mul(a, b));
                }
            }
        }
        out.debug_check();
        Ok(out)
    }

    /// Composes a sequence left to right: `ops[0] ∘ ops[1] ∘ …`.
    pub fn product<'a>(ops: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        C: 'a,
    {
        let mut it = ops.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Shape("empty product".into()))?
            .clone();
        it.try_fold(first, |acc, x| acc.compose(x))
    }

    /// Embeds `self` (arity m) into arity `total`, acting on factors
    /// `p..p+m−1` (1-based) and as the identity elsewhere.
    pub fn place(&self, p: usize, total: usize) -> Result<Self> {
        let m = self.arity;
        if p == 0 || p + m > total + 1 {
            return Err(Error::Position(format!(
                "cannot place an arity-{m} operator at position {p} of {total}"
            )));
        }
        let n = self.n;
        let lo = pow(n, total + 1 - p - m);
        let hi = pow(n, p - 1);
        let block = pow(n, m);
        let mut out = Self::zero(n, total);
        for h in 0..hi {
            for (&(a, b), v) in &self.entries {
                for l in 0..lo {
                    let r = (h * block + a) * lo + l;
                    let c = (h * block + b) * lo + l;
                    out.entries.insert((r, c), v.clone());
                }
            }
        }
        Ok(out)
    }

    fn check_factors(&self, factors: &[usize]) -> Result<Vec<bool>> {
        let mut traced = vec![false; self.arity];
        for &f in factors {
            if f == 0 || f > self.arity {
                return Err(Error::Position(format!(
                    "factor {f} outside 1..={}",
                    self.arity
                )));
            }
            traced[f - 1] = true;
        }
        Ok(traced)
    }

    /// Traces out the listed factors (1-based). Tracing every factor
    /// leaves an arity-0 operator holding one value.
    pub fn partial_trace(&self, factors: &[usize]) -> Result<Self> {
        let traced = self.check_factors(factors)?;
        let n = self.n;
        let kept = traced.iter().filter(|t| !**t).count();
        let mut out = Self::zero(n, kept);
        let mut rd = vec![0; self.arity];
        let mut cd = vec![0; self.arity];
        for (&(r, c), v) in &self.entries {
            digits(r, n, &mut rd);
            digits(c, n, &mut cd);
            if traced.iter().enumerate().any(|(f, &t)| t && rd[f] != cd[f]) {
                continue;
            }
            let (mut nr, mut nc) = (0, 0);
            for f in 0..self.arity {
                if !traced[f] {
                    nr = nr * n + rd[f];
                    nc = nc * n + cd[f];
                }
            }
            out.add_at(nr, nc, v);
        }
        out.debug_check();
        Ok(out)
    }

    /// Trace twisted by `d`: inserts `d` on the left in every traced factor,
    /// then traces.
    pub fn quantum_partial_trace(&self, factors: &[usize], d: &Self) -> Result<Self> {
        if d.arity != 1 || d.n != self.n {
            return Err(Error::Shape(format!(
                "twisting matrix must have arity 1 and n={}",
                self.n
            )));
        }
        self.check_factors(factors)?;
        let mut a = self.clone();
        for &p in factors {
            a = d.place(p, self.arity)?.compose(&a)?;
        }
        a.partial_trace(factors)
    }

    /// The single value of an arity-0 operator.
    pub fn scalar_value(&self) -> Option<C> {
        (self.arity == 0).then(|| self.value_flat(0, 0))
    }

    /// Dense row-major copy (for small operators).
    pub fn to_dense(&self) -> Vec<Vec<C>> {
        let d = self.dim();
        let mut m = vec![vec![C::zero(); d]; d];
        for (&(r, c), v) in &self.entries {
            m[r][c] = v.clone();
        }
        m
    }

    pub fn from_dense(n: usize, arity: usize, m: Vec<Vec<C>>) -> Self {
        let items = m
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| row.into_iter().enumerate().map(move |(c, v)| (r, c, v)));
        Self::from_flat(n, arity, items)
    }

    /// Entries paired with their 1-based multi-indices, in flat order.
    pub fn multi_entries(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>, &C)> + '_ {
        self.entries
            .iter()
            .map(|(&(r, c), v)| (self.multi_index(r), self.multi_index(c), v))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|(r, c)| r == c)
    }
}

fn digits(mut x: usize, n: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = x % n;
        x /= n;
    }
}

impl<F: Field> Tensor<F> {
    pub fn inverse(&self) -> Result<Self> {
        let inv = linalg::inverse(&self.to_dense()).ok_or(Error::Singular)?;
        Ok(Self::from_dense(self.n, self.arity, inv))
    }

    pub fn rank(&self) -> usize {
        linalg::bareiss_rank(&self.to_dense())
    }
}

impl TensorOp {
    /// Evaluates every entry at `point`.
    pub fn evaluate(&self, point: &Point) -> Result<Tensor<GaussRational>> {
        self.try_map(|v| v.evaluate(point))
    }

    /// Substitutes a value for one indeterminate, keeping the others symbolic.
    pub fn specialize(&self, v: Var, value: &GaussRational) -> Result<Self> {
        self.try_map(|s| s.specialize(v, value))
    }

    /// Union of the variable supports of all entries, as a bitmask.
    pub fn support(&self) -> u32 {
        self.entries.values().fold(0, |acc, s| acc | s.support())
    }

    /// Operator `P` swapping the two factors of `V ⊗ V`.
    pub fn permutation(n: usize) -> Self {
        let items = (0..n).flat_map(|i| (0..n).map(move |j| (i * n + j, j * n + i, Scalar::one())));
        Self::from_flat(n, 2, items)
    }

    /// Diagonal arity-1 operator.
    pub fn diagonal(values: Vec<Scalar>) -> Self {
        let n = values.len();
        Self::from_flat(n, 1, values.into_iter().enumerate().map(|(i, v)| (i, i, v)))
    }
}
