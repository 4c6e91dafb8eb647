//! Classical invariants, Newton identities and the CHN identities for
//! wedge and symmetric powers of an ordinary matrix.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::report::VerificationReport;
use crate::ring::Ring;

/// A square matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalMatrix {
    rows: Vec<Vec<BigRational>>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl ClassicalMatrix {
    pub fn new(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(
                "classical matrix must be square and nonempty".into(),
            ));
        }
        Ok(Self { rows })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn diagonal(values: &[i64]) -> Self {
        let n = values.len();
        let mut m = Self::zero(n);
        for (i, &v) in values.iter().enumerate() {
            m.rows[i][i] = rat(v);
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        Self {
            rows: vec![vec![rat(0); n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = rat(1);
        }
        m
    }

    /// Integer entries drawn uniformly from `[-bound, bound]`.
    pub fn random(n: usize, seed: u64, bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rows = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| rat(rng.random_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(rat(0), |acc, k| acc + &self.rows[i][k] * &o.rows[k][j]))
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn add(&self, o: &Self) -> Self {
        let rows = self
            .rows
            .iter()
            .zip(&o.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self { rows }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(self.n()), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n()).fold(rat(0), |acc, i| acc + &self.rows[i][i])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Ring::is_zero)
    }
}

/// `(s_k, σ_k, τ_k)`: power sum, elementary and complete symmetric
/// functions of the spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalInvariants {
    pub s: BigRational,
    pub sigma: BigRational,
    pub tau: BigRational,
}

/// Cycle data of all permutations of `k` letters, aggregated: key is
/// `(length of the cycle through the last letter, sorted lengths of the
/// other cycles)`, value is `(Σ sgn, count)`.
type CycleTable = BTreeMap<(usize, Vec<usize>), (i64, i64)>;

fn cycle_table(k: usize) -> CycleTable {
    let mut table = CycleTable::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let mut seen = vec![false; k];
        let mut last = 0;
        let mut others = Vec::new();
        let mut transpositions = 0;
        for start in 0..k {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            let mut has_last = false;
            while !seen[x] {
                seen[x] = true;
                has_last |= x == k - 1;
                x = perm[x];
                len += 1;
            }
            transpositions += len - 1;
            if has_last {
                last = len;
            } else {
                others.push(len);
            }
        }
        others.sort_unstable();
        let sign = if transpositions % 2 == 0 { 1 } else { -1 };
        let e = table.entry((last, others)).or_insert((0, 0));
        e.0 += sign;
        e.1 += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    table
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// `Tr_{1..k−1}(Π X₁⋯X_k)` for `Π` the classical antisymmetrizer
/// (`signed`) or symmetrizer. `Tr(P_π X^{⊗k})` on the untraced factor
/// is `X^{ℓ}` times `s_c` for every other cycle `c`, where `ℓ` is the
/// length of the cycle through `k`.
fn projected_power(x: &ClassicalMatrix, k: usize, signed: bool) -> ClassicalMatrix {
    let n = x.n();
    if k == 0 {
        return ClassicalMatrix::identity(n);
    }
    let s: Vec<BigRational> = (0..=k).map(|j| x.pow(j).trace()).collect();
    let powers: Vec<ClassicalMatrix> = (0..=k).map(|j| x.pow(j)).collect();
    let mut out = ClassicalMatrix::zero(n);
    for ((last, others), (sgn, count)) in cycle_table(k) {
        let weight = if signed { sgn } else { count };
        if weight == 0 {
            continue;
        }
        let c = others.iter().fold(rat(weight), |acc, &l| acc * &s[l]);
        out = out.add(&powers[last].scale(&c));
    }
    out.scale(&BigRational::new(1.into(), factorial(k).into()))
}

/// Classical wedge power `X^{[k]}`.
pub fn wedge_power(x: &ClassicalMatrix, k: usize) -> ClassicalMatrix {
    projected_power(x, k, true)
}

/// Classical symmetric power `X^{(k)}`.
pub fn symmetric_power(x: &ClassicalMatrix, k: usize) -> ClassicalMatrix {
    projected_power(x, k, false)
}

/// `s_k = Tr X^k`, `σ_k = Tr(A_k X^{⊗k})`, `τ_k = Tr(S_k X^{⊗k})`.
pub fn classical_invariants(x: &ClassicalMatrix, k: usize) -> ClassicalInvariants {
    let s = if k == 0 {
        rat(x.n() as i64)
    } else {
        x.pow(k).trace()
    };
    if k == 0 {
        return ClassicalInvariants {
            s,
            sigma: rat(1),
            tau: rat(1),
        };
    }
    ClassicalInvariants {
        s,
        sigma: wedge_power(x, k).trace(),
        tau: symmetric_power(x, k).trace(),
    }
}

/// Sum of the principal `k×k` minors, by fraction-free determinants.
pub fn principal_minor_sum(x: &ClassicalMatrix, k: usize) -> BigRational {
    let n = x.n();
    if k == 0 {
        return rat(1);
    }
    let mut total = rat(0);
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let sub: Vec<Vec<BigRational>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| x.rows[i][j].clone()).collect())
            .collect();
        total += linalg::bareiss_det(&sub);
    }
    total
}

fn sign(e: usize) -> BigRational {
    rat(if e.is_multiple_of(2) { 1 } else { -1 })
}

/// `k σ_k − Σ_{j=0}^{k−1} (−1)^{k−j−1} s_{k−j} σ_j`.
fn newton_sigma_residual(s: &[BigRational], sigma: &[BigRational], k: usize) -> BigRational {
    let rhs = (0..k).fold(rat(0), |acc, j| {
        acc + sign(k - j - 1) * &s[k - j] * &sigma[j]
    });
    rat(k as i64) * &sigma[k] - rhs
}

/// `k τ_k − Σ_{j=0}^{k−1} s_{k−j} τ_j`.
fn newton_tau_residual(s: &[BigRational], tau: &[BigRational], k: usize) -> BigRational {
    let rhs = (0..k).fold(rat(0), |acc, j| acc + &s[k - j] * &tau[j]);
    rat(k as i64) * &tau[k] - rhs
}

struct Tables {
    s: Vec<BigRational>,
    sigma: Vec<BigRational>,
    tau: Vec<BigRational>,
}

fn tables(x: &ClassicalMatrix, k_max: usize) -> Tables {
    let inv: Vec<ClassicalInvariants> = (0..=k_max).map(|k| classical_invariants(x, k)).collect();
    Tables {
        s: inv.iter().map(|i| i.s.clone()).collect(),
        sigma: inv.iter().map(|i| i.sigma.clone()).collect(),
        tau: inv.iter().map(|i| i.tau.clone()).collect(),
    }
}

/// Both Newton identities for `k = 1..=k_max`, plus the cross-check of
/// `σ_k` against principal minors.
pub fn classical_newton_check(x: &ClassicalMatrix, k_max: usize) -> VerificationReport {
    let start = Instant::now();
    let t = tables(x, k_max);
    let mut parts = Vec::new();
    for k in 1..=k_max {
        let rs = newton_sigma_residual(&t.s, &t.sigma, k);
        let rt = newton_tau_residual(&t.s, &t.tau, k);
        let minors = principal_minor_sum(x, k);
        let mut p = VerificationReport::exact(
            format!("newton k={k}"),
            rs.is_zero() && rt.is_zero() && minors == t.sigma[k],
        );
        p.degree = k;
        if !rs.is_zero() {
            p = p.with_diagnostic(format!("sigma identity residual {rs}"));
        }
        if !rt.is_zero() {
            p = p.with_diagnostic(format!("tau identity residual {rt}"));
        }
        if minors != t.sigma[k] {
            p = p.with_diagnostic(format!(
                "sigma_{k} = {} but principal minors sum to {minors}",
                t.sigma[k]
            ));
        }
        parts.push(p);
    }
    VerificationReport::all("classical newton", parts).timed(start)
}

/// Which classical CHN identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassicalFlavor {
    Wedge,
    Symmetric,
}

/// Wedge: `k X^{[k]} + Σ_{j=0}^{k−1} (−X)^{k−j} σ_j`.
pub fn wedge_residual(x: &ClassicalMatrix, t_sigma: &[BigRational], k: usize) -> ClassicalMatrix {
    let neg_x = x.scale(&rat(-1));
    (0..k).fold(wedge_power(x, k).scale(&rat(k as i64)), |acc, j| {
        acc.add(&neg_x.pow(k - j).scale(&t_sigma[j]))
    })
}

/// Symmetric: `k X^{(k)} − Σ_{j=0}^{k−1} X^{k−j} τ_j`.
pub fn symmetric_residual(x: &ClassicalMatrix, t_tau: &[BigRational], k: usize) -> ClassicalMatrix {
    (0..k).fold(symmetric_power(x, k).scale(&rat(k as i64)), |acc, j| {
        acc.add(&x.pow(k - j).scale(&(-&t_tau[j])))
    })
}

/// CHN residuals for `k = 1..=k_max`. The wedge flavor additionally checks
/// that `X^{[n+1]}` vanishes, the Cayley-Hamilton identity
/// `Σ_{j=0}^{n} (−X)^{n−j} σ_j = 0`, and that the trace of each residual is
/// the corresponding Newton residual; the symmetric flavor checks traces
/// against the `τ` Newton identity.
pub fn classical_chn_check(
    x: &ClassicalMatrix,
    k_max: usize,
    flavor: ClassicalFlavor,
) -> VerificationReport {
    let start = Instant::now();
    let n = x.n();
    let top = k_max.max(n + 1);
    let t = tables(x, top);
    let mut parts = Vec::new();
    for k in 1..=k_max {
        let (res, newton) = match flavor {
            ClassicalFlavor::Wedge => (
                wedge_residual(x, &t.sigma, k),
                newton_sigma_residual(&t.s, &t.sigma, k),
            ),
            ClassicalFlavor::Symmetric => (
                symmetric_residual(x, &t.tau, k),
                newton_tau_residual(&t.s, &t.tau, k),
            ),
        };
        let traced = res.trace();
        let ok = res.is_zero() && traced == newton;
        let mut p = VerificationReport::exact(format!("chn k={k}"), ok);
        p.degree = k;
        if !res.is_zero() {
            p = p.with_diagnostic("matrix residual is nonzero");
        }
        if traced != newton {
            p = p.with_diagnostic(format!(
                "trace of residual {traced} differs from newton residual {newton}"
            ));
        }
        parts.push(p);
    }
    if flavor == ClassicalFlavor::Wedge {
        let vanish = wedge_power(x, n + 1).is_zero();
        parts.push(VerificationReport::exact(
            format!("wedge power {} vanishes", n + 1),
            vanish,
        ));
        let neg_x = x.scale(&rat(-1));
        let ch = (0..=n).fold(ClassicalMatrix::zero(n), |acc, j| {
            acc.add(&neg_x.pow(n - j).scale(&t.sigma[j]))
        });
        parts.push(VerificationReport::exact("cayley-hamilton", ch.is_zero()));
    }
    let name = match flavor {
        ClassicalFlavor::Wedge => "classical chn wedge",
        ClassicalFlavor::Symmetric => "classical chn symmetric",
    };
    VerificationReport::all(name, parts).timed(start)
}
