//! CHN data and residuals for the quantum matrix algebras.

use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ncalg::{
    matrix_membership, mbar_product, op_mul, scale, AlgebraSpec, Flavor, MembershipMode, NCMatrix,
    NCPoly,
};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tensor::TensorOp;
use crate::ybkit::{antisymmetrizer_tower, q_number_at, HeckeData};

/// Normalization of the elementary symmetric functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaNorm {
    /// `σ_j = Tr_F(A_j M̄₁⋯M̄_j)`.
    Trace,
    /// `σ_j = q^j Tr_F(A_j M̄₁⋯M̄_j)`.
    QScaled,
}

/// Which factors a wedge or power keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Trace factors `2..k`, keep factor 1.
    Overline,
    /// Trace factors `1..k−1`, keep factor `k`.
    Underline,
}

/// The CHN identity families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `k_q T^{[k]} = −Σ (−1)^{k−j} σ_j(T) T^{k−j}` (underline, σ on the left).
    RttUnderline,
    /// `k_q T^{[k]} = −Σ (−1)^{k−j} T^{k−j} σ_j(T)` (overline, σ on the right).
    RttOverline,
    /// `k_q L^{[k]} = −Σ σ_j(L) (−L)^{k−j}` with ordinary powers.
    Rlrl,
    /// `(−1)^{k−1} k_q M^{[k]} = Σ (−q)^j M^{k−j} σ_j(M)` (overline).
    General,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::RttUnderline => "rtt_underline",
            Family::RttOverline => "rtt_overline",
            Family::Rlrl => "rlrl",
            Family::General => "general",
        }
    }
}

/// A quantum matrix algebra with cached CHN building blocks up to `k_max`.
pub struct ChnInstance {
    spec: AlgebraSpec,
    hecke: HeckeData,
    k_max: usize,
    /// Flavor implied by the pair itself (families are validated against it).
    detected: Flavor,
    antisym: OnceLock<Vec<TensorOp>>,
    products: Vec<OnceLock<NCMatrix>>,
    sigmas: Vec<OnceLock<NCPoly>>,
}

fn trace_set(k: usize, variant: Variant) -> Vec<usize> {
    match variant {
        Variant::Overline => (2..=k).collect(),
        Variant::Underline => (1..k).collect(),
    }
}

/// Ordinary trace of an arity-1 polynomial matrix.
pub fn matrix_trace(m: &NCMatrix) -> NCPoly {
    (0..m.dim()).fold(NCPoly::zero(), |acc, i| acc.add(&m.value_flat(i, i)))
}

/// Ordinary matrix power of an arity-1 polynomial matrix.
pub fn matrix_power(m: &NCMatrix, k: usize) -> NCMatrix {
    (0..k).fold(NCMatrix::identity(m.n(), 1), |acc, _| {
        acc.compose(m).expect("same shape")
    })
}

impl ChnInstance {
    /// `hecke` must describe the pair's `R̂` (its `q` fixes the deformation
    /// value used by the antisymmetrizers and the `q`-numbers).
    pub fn new(spec: AlgebraSpec, hecke: HeckeData, k_max: usize) -> Result<Self> {
        if hecke.rhat != spec.pair.rhat {
            return Err(Error::Input(
                "Hecke data does not belong to the pair's R".into(),
            ));
        }
        if k_max == 0 {
            return Err(Error::Input("k_max must be at least 1".into()));
        }
        let detected = Flavor::detect(&spec.pair);
        Ok(Self {
            spec,
            hecke,
            k_max,
            detected,
            antisym: OnceLock::new(),
            products: (0..k_max).map(|_| OnceLock::new()).collect(),
            sigmas: (0..=k_max).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn hecke(&self) -> &HeckeData {
        &self.hecke
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Flavor implied by the pair (`F̂ = P`, `F̂ = R̂`, or neither).
    pub fn detected_flavor(&self) -> Flavor {
        self.detected
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.k_max {
            return Err(Error::Input(format!(
                "degree {k} outside 1..={}",
                self.k_max
            )));
        }
        Ok(())
    }

    /// `D` used by traces: the identity for the RTT flavor (where it is
    /// `D(P) = I` anyway), `D(F)` otherwise.
    pub fn trace_twist(&self) -> TensorOp {
        match self.detected {
            Flavor::Rtt => TensorOp::identity(self.n(), 1),
            _ => self.spec.pair.d_of_f.clone(),
        }
    }

    fn traced(&self, m: &NCMatrix, factors: &[usize]) -> Result<NCMatrix> {
        if factors.is_empty() {
            return Ok(m.clone());
        }
        let d = self.trace_twist();
        let mut a = m.clone();
        for &p in factors {
            a = op_mul(&d.place(p, m.arity())?, &a)?;
        }
        a.partial_trace(factors)
    }

    /// `A_k`.
    pub fn antisymmetrizer(&self, k: usize) -> Result<&TensorOp> {
        self.check_k(k)?;
        let tower = match self.antisym.get() {
            Some(t) => t,
            None => {
                let t = antisymmetrizer_tower(&self.hecke, self.k_max)?;
                self.antisym.get_or_init(|| t)
            }
        };
        Ok(&tower[k - 1])
    }

    /// `M̄₁⋯M̄_k` on `V^{⊗k}`.
    pub fn product(&self, k: usize) -> Result<&NCMatrix> {
        self.check_k(k)?;
        if let Some(p) = self.products[k - 1].get() {
            return Ok(p);
        }
        let p = mbar_product(&self.spec.pair, k)?;
        Ok(self.products[k - 1].get_or_init(|| p))
    }

    fn projected(&self, k: usize) -> Result<NCMatrix> {
        op_mul(self.antisymmetrizer(k)?, self.product(k)?)
    }

    /// `σ_j`: the twisted full trace of `A_j M̄₁⋯M̄_j`, optionally times
    /// `q^j`. `σ₀ = 1`.
    pub fn sigma(&self, j: usize, norm: SigmaNorm) -> Result<NCPoly> {
        if j > self.k_max {
            return Err(Error::Input(format!(
                "degree {j} exceeds k_max = {}",
                self.k_max
            )));
        }
        let base = match self.sigmas[j].get() {
            Some(s) => s.clone(),
            None => {
                let s = if j == 0 {
                    NCPoly::one()
                } else {
                    let all: Vec<usize> = (1..=j).collect();
                    self.traced(&self.projected(j)?, &all)?.value_flat(0, 0)
                };
                self.sigmas[j].get_or_init(|| s).clone()
            }
        };
        Ok(match norm {
            SigmaNorm::Trace => base,
            SigmaNorm::QScaled => base.scale(&self.hecke.q.pow(j as i32)?),
        })
    }

    fn require_rtt(&self, variant: Variant) -> Result<()> {
        if variant == Variant::Underline && self.detected != Flavor::Rtt {
            return Err(Error::Unsupported(
                "the underline variant is only defined for the RTT flavor".into(),
            ));
        }
        Ok(())
    }

    /// Wedge power: twisted partial trace of `A_k M̄₁⋯M̄_k`.
    pub fn wedge_power(&self, k: usize, variant: Variant) -> Result<NCMatrix> {
        self.require_rtt(variant)?;
        self.traced(&self.projected(k)?, &trace_set(k, variant))
    }

    /// Quantum power: twisted partial trace of `R̂₁⋯R̂_{k−1} M̄₁⋯M̄_k`,
    /// except for the RLRL flavor where it is the ordinary power.
    pub fn quantum_power(&self, k: usize, variant: Variant) -> Result<NCMatrix> {
        self.require_rtt(variant)?;
        self.check_k(k)?;
        let mut chain = TensorOp::identity(self.n(), k);
        for p in 1..k {
            chain = chain.compose(&self.spec.pair.rhat.place(p, k)?)?;
        }
        self.traced(&op_mul(&chain, self.product(k)?)?, &trace_set(k, variant))
    }

    /// The generator matrix.
    pub fn generators(&self) -> Result<NCMatrix> {
        Ok(self.product(1)?.clone())
    }

    /// Ordinary power of the generator matrix.
    pub fn ordinary_power(&self, k: usize) -> Result<NCMatrix> {
        Ok(matrix_power(&self.generators()?, k))
    }

    fn require_family(&self, family: Family) -> Result<()> {
        let ok = match family {
            Family::RttUnderline | Family::RttOverline => self.detected == Flavor::Rtt,
            Family::Rlrl => self.detected == Flavor::Rlrl,
            Family::General => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Input(format!(
                "identity family {} does not apply to a {} pair",
                family.name(),
                self.detected.name()
            )))
        }
    }

    /// Residual `LHS − RHS` of a CHN identity at degree `k`, with
    /// `σ_j` in the RLRL family taken `q`-scaled (see [`SigmaNorm`]).
    pub fn chn_residual(&self, k: usize, family: Family) -> Result<NCMatrix> {
        self.chn_residual_with(k, family, SigmaNorm::QScaled)
    }

    /// As [`chn_residual`](Self::chn_residual) with an explicit σ
    /// normalization for the RLRL family. The RTT families always use the
    /// `q`-scaled σ and the general family the unscaled one.
    pub fn chn_residual_with(
        &self,
        k: usize,
        family: Family,
        rlrl_norm: SigmaNorm,
    ) -> Result<NCMatrix> {
        self.require_family(family)?;
        self.check_k(k)?;
        let q = &self.hecke.q;
        let kq = q_number_at(q, k);
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            }
        };
        let res = match family {
            Family::RttUnderline | Family::RttOverline => {
                let variant = if family == Family::RttUnderline {
                    Variant::Underline
                } else {
                    Variant::Overline
                };
                let mut acc = scale(&self.wedge_power(k, variant)?, &kq);
                for j in 0..k {
                    let s = self.sigma(j, SigmaNorm::QScaled)?;
                    let pw = self.quantum_power(k - j, variant)?;
                    let term = if variant == Variant::Underline {
                        pw.scale_left(&s)
                    } else {
                        pw.scale_right(&s)
                    };
                    acc = acc.add(&scale(&term, &sign(k - j)))?;
                }
                acc
            }
            Family::Rlrl => {
                let mut acc = scale(&self.wedge_power(k, Variant::Overline)?, &kq);
                let neg_l = self.generators()?.neg();
                for j in 0..k {
                    let s = self.sigma(j, rlrl_norm)?;
                    acc = acc.add(&matrix_power(&neg_l, k - j).scale_left(&s))?;
                }
                acc
            }
            Family::General => {
                let mut acc = scale(
                    &self.wedge_power(k, Variant::Overline)?,
                    &kq.mul(&sign(k - 1)),
                );
                let neg_q = q.neg();
                for j in 0..k {
                    let s = self.sigma(j, SigmaNorm::Trace)?;
                    let term = self
                        .quantum_power(k - j, Variant::Overline)?
                        .scale_right(&s);
                    acc = acc.sub(&scale(&term, &neg_q.pow(j as i32)?))?;
                }
                acc
            }
        };
        Ok(res)
    }

    /// Certifies one residual by ideal membership.
    pub fn verify(
        &self,
        k: usize,
        family: Family,
        mode: MembershipMode,
    ) -> Result<VerificationReport> {
        let res = self.chn_residual(k, family)?;
        matrix_membership(
            &res,
            &self.spec,
            mode,
            k,
            &format!("chn {} k={k}", family.name()),
        )
    }

    /// Checks that the general identity reduces to the flavor-specific one:
    /// for `F̂ = P` the general residual equals `(−1)^{k−1}` times the RTT
    /// overline residual exactly; for `F̂ = R̂` their difference lies in the
    /// relation ideal.
    pub fn consistency_bridge(&self, k: usize, mode: MembershipMode) -> Result<VerificationReport> {
        let start = Instant::now();
        let special = match self.detected {
            Flavor::Rtt => Family::RttOverline,
            Flavor::Rlrl => Family::Rlrl,
            Flavor::General => {
                return Err(Error::Input("the bridge needs F = P or F = R".into()));
            }
        };
        let general = self.chn_residual(k, Family::General)?;
        let flavored = self.chn_residual(k, special)?;
        let sign = if (k - 1).is_multiple_of(2) {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        let diff = general.sub(&scale(&flavored, &sign))?;
        let name = format!("bridge general~{} k={k}", special.name());
        let rep = if special == Family::RttOverline {
            let mut r = VerificationReport::exact(name, diff.is_zero());
            r.degree = k;
            if !diff.is_zero() {
                r = r.with_diagnostic(format!("residuals differ in {} entries", diff.nnz()));
            }
            r
        } else {
            matrix_membership(&diff, &self.spec, mode, k, &name)?
        };
        Ok(rep.timed(start))
    }

    /// `σ_iσ_j − σ_jσ_i` lies in the ideal.
    pub fn sigma_commutator(
        &self,
        i: usize,
        j: usize,
        mode: MembershipMode,
    ) -> Result<VerificationReport> {
        let (a, b) = (
            self.sigma(i, SigmaNorm::QScaled)?,
            self.sigma(j, SigmaNorm::QScaled)?,
        );
        let c = a.mul(&b).sub(&b.mul(&a));
        let mut m = NCMatrix::zero(self.n(), 0);
        m.set(&[], &[], c)?;
        matrix_membership(
            &m,
            &self.spec,
            mode,
            i + j,
            &format!("sigma_{i} sigma_{j} commute"),
        )
    }

    /// `σ₁·M^i_j − M^i_j·σ₁` lies in the ideal for every generator.
    pub fn sigma1_centrality(&self, mode: MembershipMode) -> Result<VerificationReport> {
        let s = self.sigma(1, SigmaNorm::Trace)?;
        let m = self.generators()?;
        let comm = m.scale_left(&s).sub(&m.scale_right(&s))?;
        matrix_membership(&comm, &self.spec, mode, 2, "sigma_1 central")
    }

    /// Traces of the two RTT residuals agree modulo the ideal.
    pub fn newton_collapse(&self, k: usize, mode: MembershipMode) -> Result<VerificationReport> {
        let a = matrix_trace(&self.chn_residual(k, Family::RttUnderline)?);
        let b = matrix_trace(&self.chn_residual(k, Family::RttOverline)?);
        let mut m = NCMatrix::zero(self.n(), 0);
        m.set(&[], &[], a.sub(&b))?;
        matrix_membership(&m, &self.spec, mode, k, &format!("newton collapse k={k}"))
    }
}
