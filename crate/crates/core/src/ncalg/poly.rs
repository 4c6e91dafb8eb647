use std::collections::BTreeMap;
use std::fmt::Write;

use smallvec::SmallVec;

use crate::error::Result;
use crate::ring::Ring;
use crate::scalar::{GaussRational, Point, Scalar};
use crate::tensor::{Tensor, TensorOp};

/// A word in the generators; generator `(i, j)` of an `n×n` matrix has
/// label `(i−1)·n + (j−1)`.
pub type Word = SmallVec<[u8; 8]>;

/// Label of generator `(i, j)` (1-based).
pub fn generator_label(n: usize, i: usize, j: usize) -> u8 {
    assert!(n * n <= 256, "too many generators");
    ((i - 1) * n + (j - 1)) as u8
}

/// Noncommutative polynomial in the matrix generators with [`Scalar`]
/// coefficients. Scalars commute with generators; words do not.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

/// Matrix on `V^{⊗k}` with noncommutative polynomial entries.
pub type NCMatrix = Tensor<NCPoly>;

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(Word::new(), c)
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { terms }
    }

    /// The generator with the given label.
    pub fn generator(label: u8) -> Self {
        Self::monomial(smallvec::smallvec![label], Scalar::one())
    }

    /// The generator `(i, j)` of an `n×n` matrix (1-based).
    pub fn gen(n: usize, i: usize, j: usize) -> Self {
        Self::generator(generator_label(n, i, j))
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms, i.e. the zero polynomial.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty word if that is the only term.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Word::new()).cloned(),
            _ => None,
        }
    }

    /// Common length of all words, if there is one (`None` for zero too).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|w| w.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.mul(c)))
                .collect(),
        }
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_in_place(o);
        out
    }

    fn add_in_place(&mut self, o: &Self) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(w, v)| (w.clone(), v.neg()))
                .collect(),
        }
    }

    /// Product `self · o` (concatenation of words).
    pub fn mul(&self, o: &Self) -> Self {
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a.mul(b));
            }
        }
        out
    }

    /// Evaluates every coefficient at `point`.
    pub fn evaluate(&self, point: &Point) -> Result<BTreeMap<Word, GaussRational>> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.terms {
            let v = c.evaluate(point)?;
            if !v.is_zero() {
                out.insert(w.clone(), v);
            }
        }
        Ok(out)
    }

    /// Union of the coefficient variable supports, as a bitmask.
    pub fn support(&self) -> u32 {
        self.terms.values().fold(0, |acc, c| acc | c.support())
    }

    /// Renders with generators written `{symbol}{i}{j}` (or `{symbol}[i,j]`
    /// when `n > 9`), e.g. `q*T11*T22 - T22*T11`.
    pub fn display(&self, n: usize, symbol: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let word: Vec<String> = w
                .iter()
                .map(|&g| {
                    let (i, j) = (g as usize / n + 1, g as usize % n + 1);
                    if n > 9 {
                        format!("{symbol}[{i},{j}]")
                    } else {
                        format!("{symbol}{i}{j}")
                    }
                })
                .collect();
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '+']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let needs_paren = body.contains([' ', '+']);
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if word.is_empty() {
                out.push_str(&if needs_paren {
                    format!("({body})")
                } else {
                    body
                });
                continue;
            }
            if body != "1" {
                let _ = write!(
                    out,
                    "{}*",
                    if needs_paren {
                        format!("({body})")
                    } else {
                        body
                    }
                );
            }
            out.push_str(&word.join("*"));
        }
        out
    }
}

impl Ring for NCPoly {
    fn zero() -> Self {
        NCPoly::zero()
    }
    fn one() -> Self {
        NCPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn add_assign_ref(&mut self, o: &Self) {
        self.add_in_place(o);
    }
}

/// The generator matrix placed in factor `p` of `V^{⊗total}` (1-based):
/// entry `(I, J)` is the generator `(I_p, J_p)` when `I` and `J` agree
/// outside factor `p`.
pub fn generator_matrix(n: usize, p: usize, total: usize) -> Result<NCMatrix> {
    let mut gens = NCMatrix::zero(n, 1);
    for i in 1..=n {
        for j in 1..=n {
            gens.set(&[i], &[j], NCPoly::gen(n, i, j))?;
        }
    }
    gens.place(p, total)
}

/// Constant matrix with the entries of `op`.
pub fn lift(op: &TensorOp) -> NCMatrix {
    op.map(|s| NCPoly::constant(s.clone()))
}

/// `op ∘ m`.
pub fn op_mul(op: &TensorOp, m: &NCMatrix) -> Result<NCMatrix> {
    op.compose_with(m, |s, p| p.scale(s))
}

/// `m ∘ op`.
pub fn mul_op(m: &NCMatrix, op: &TensorOp) -> Result<NCMatrix> {
    m.compose_with(op, |p, s| p.scale(s))
}

/// Multiplies every entry on the left by the algebra element `c`.
pub fn poly_left(c: &NCPoly, m: &NCMatrix) -> NCMatrix {
    m.scale_left(c)
}

/// Multiplies every entry on the right by the algebra element `c`.
pub fn poly_right(m: &NCMatrix, c: &NCPoly) -> NCMatrix {
    m.scale_right(c)
}

/// Scalar multiple of a matrix.
pub fn scale(m: &NCMatrix, c: &Scalar) -> NCMatrix {
    m.map(|p| p.scale(c))
}

/// JSON form: `{"n", "arity", "entries": {"i|j": "poly"}}`.
pub fn matrix_to_json(m: &NCMatrix, symbol: &str) -> serde_json::Value {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let entries: BTreeMap<String, String> = m
        .multi_entries()
        .map(|(r, c, p)| {
            (
                format!("{}|{}", join(&r), join(&c)),
                p.display(m.n(), symbol),
            )
        })
        .collect();
    serde_json::json!({ "n": m.n(), "arity": m.arity(), "entries": entries })
}
