use num_bigint::BigInt;
use num_rational::BigRational;

use super::classical::{symmetric_power, wedge_power};
use super::*;
use crate::ncalg::{relations_from, Flavor, MembershipMode, NCMatrix, NCPoly, Word};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::tensor::Tensor;
use crate::ybkit::{check_compatible, check_hecke, check_hecke_at, permutation, standard_r};

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Elementary and complete symmetric functions of `xs` by enumeration.
fn e_h(xs: &[i64], k: usize) -> (i64, i64) {
    fn rec(xs: &[i64], k: usize, start: usize, repeat: bool) -> i64 {
        if k == 0 {
            return 1;
        }
        (start..xs.len())
            .map(|i| xs[i] * rec(xs, k - 1, if repeat { i } else { i + 1 }, repeat))
            .sum()
    }
    (rec(xs, k, 0, false), rec(xs, k, 0, true))
}

#[test]
fn diagonal_invariants_are_symmetric_functions() {
    let x = ClassicalMatrix::diagonal(&[1, 2, 3]);
    let inv = classical_invariants(&x, 2);
    assert_eq!((inv.sigma, inv.tau, inv.s), (rat(11), rat(25), rat(14)));
    let xs = [2, -1, 3, 5];
    let x = ClassicalMatrix::diagonal(&xs);
    for k in 0..=5 {
        let inv = classical_invariants(&x, k);
        let (e, h) = e_h(&xs, k);
        assert_eq!(inv.sigma, rat(e), "sigma_{k}");
        assert_eq!(inv.tau, rat(h), "tau_{k}");
    }
    let zero = classical_invariants(&x, 0);
    assert_eq!((zero.sigma, zero.tau), (rat(1), rat(1)));
}

#[test]
fn newton_identities() {
    let c = ClassicalMatrix::from_ints(&[vec![7]]).unwrap();
    assert!(classical_newton_check(&c, 1).pass);
    assert_eq!(classical_invariants(&c, 1).sigma, rat(7));
    assert!(classical_newton_check(&ClassicalMatrix::diagonal(&[3, -2, 5]), 3).pass);
    for seed in 0..5 {
        let x = ClassicalMatrix::random(4, seed, 9);
        let rep = classical_newton_check(&x, 6);
        assert!(rep.pass, "{}", rep.summary());
    }
}

/// `Tr_{1..k−1}(Π X^{⊗k})` by explicit Kronecker products, with the
/// (anti)symmetrizer summed over permutation operators.
fn kronecker_projected(x: &ClassicalMatrix, k: usize, signed: bool) -> ClassicalMatrix {
    let n = x.n();
    let mut x1 = Tensor::<BigRational>::zero(n, 1);
    for i in 0..n {
        for j in 0..n {
            x1 = x1
                .add(&Tensor::from_flat(n, 1, [(i, j, x.get(i, j).clone())]))
                .unwrap();
        }
    }
    let mut prod = Tensor::<BigRational>::identity(n, k);
    for p in 1..=k {
        prod = prod.compose(&x1.place(p, k).unwrap()).unwrap();
    }
    let dim = n.pow(k as u32);
    let mut proj = Tensor::<BigRational>::zero(n, k);
    let mut perm: Vec<usize> = (0..k).collect();
    let mut count = 0i64;
    loop {
        let inversions = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .filter(|&(a, b)| perm[a] > perm[b])
            .count();
        let sign = if signed && inversions % 2 == 1 { -1 } else { 1 };
        let items = (0..dim).map(|col| {
            let digits: Vec<usize> = (0..k)
                .map(|f| col / n.pow((k - 1 - f) as u32) % n)
                .collect();
            let row = (0..k).fold(0, |acc, f| acc * n + digits[perm[f]]);
            (row, col, rat(sign))
        });
        proj = proj.add(&Tensor::from_flat(n, k, items)).unwrap();
        count += 1;
        // next permutation
        let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    let proj = proj.map(|v| v / rat(count));
    let traced: Vec<usize> = (1..k).collect();
    let t = proj.compose(&prod).unwrap().partial_trace(&traced).unwrap();
    ClassicalMatrix::new(t.to_dense()).unwrap()
}

#[test]
fn wedge_and_symmetric_powers_match_kronecker_oracle() {
    for (n, kmax, seed) in [(2, 3, 1), (3, 3, 2), (3, 4, 3)] {
        let x = ClassicalMatrix::random(n, seed, 5);
        for k in 1..=kmax {
            assert_eq!(
                wedge_power(&x, k),
                kronecker_projected(&x, k, true),
                "wedge n={n} k={k}"
            );
            assert_eq!(
                symmetric_power(&x, k),
                kronecker_projected(&x, k, false),
                "sym n={n} k={k}"
            );
        }
    }
}

#[test]
fn classical_chn_identities() {
    let x = ClassicalMatrix::random(3, 11, 4);
    assert_eq!(wedge_power(&x, 1), x);
    for seed in 0..3 {
        let x = ClassicalMatrix::random(5, seed, 9);
        for flavor in [ClassicalFlavor::Wedge, ClassicalFlavor::Symmetric] {
            let rep = classical_chn_check(&x, 6, flavor);
            assert!(rep.pass, "{}", rep.summary());
        }
        assert!(wedge_power(&x, 6).is_zero());
    }
    for k in 1..=4 {
        assert_eq!(
            principal_minor_sum(&ClassicalMatrix::diagonal(&[1, 2, 3, 4]), k),
            rat(e_h(&[1, 2, 3, 4], k).0)
        );
    }
}

fn instance(r: &crate::TensorOp, f: &crate::TensorOp, k_max: usize) -> ChnInstance {
    let pair = check_compatible(r, f).unwrap();
    let flavor = Flavor::detect(&pair);
    let spec = relations_from(&pair, flavor).unwrap();
    let h = check_hecke(r).unwrap();
    ChnInstance::new(spec, h, k_max).unwrap()
}

fn classical_instance(n: usize, k_max: usize) -> ChnInstance {
    let p = permutation(n);
    let pair = check_compatible(&p, &p).unwrap();
    let spec = relations_from(&pair, Flavor::General).unwrap();
    ChnInstance::new(spec, check_hecke_at(&p, &Scalar::one()).unwrap(), k_max).unwrap()
}

/// Image in the commutative polynomial ring: sort every word.
fn abelianize(p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in p.terms() {
        let mut v: Vec<u8> = w.to_vec();
        v.sort_unstable();
        out = out.add(&NCPoly::monomial(Word::from_vec(v), c.clone()));
    }
    out
}

/// Sum of principal `k`-minors of the generic matrix, by the Leibniz
/// formula over commuting generators.
fn generic_minor_sum(n: usize, k: usize) -> NCPoly {
    let mut total = NCPoly::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let inv = (0..k)
                .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
                .filter(|&(a, b)| perm[a] > perm[b])
                .count();
            let mut term = NCPoly::constant(Scalar::from_int(if inv % 2 == 0 { 1 } else { -1 }));
            for t in 0..k {
                term = term.mul(&NCPoly::gen(n, idx[t] + 1, idx[perm[t]] + 1));
            }
            total = total.add(&abelianize(&term));
            let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
                break;
            };
            let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    }
    total
}

#[test]
fn sigma_examples() {
    let inst = instance(&standard_r(2), &permutation(2), 3);
    assert_eq!(inst.sigma(0, SigmaNorm::QScaled).unwrap(), NCPoly::one());
    let expect = NCPoly::gen(2, 1, 1)
        .add(&NCPoly::gen(2, 2, 2))
        .scale(&Scalar::q());
    assert_eq!(inst.sigma(1, SigmaNorm::QScaled).unwrap(), expect);
    let s2 = inst.sigma(2, SigmaNorm::Trace).unwrap();
    assert_eq!(
        inst.sigma(2, SigmaNorm::QScaled).unwrap(),
        s2.scale(&Scalar::q().pow(2).unwrap())
    );

    let cl = classical_instance(3, 3);
    for k in 1..=3 {
        let s = abelianize(&cl.sigma(k, SigmaNorm::Trace).unwrap());
        assert_eq!(s, generic_minor_sum(3, k), "k={k}");
    }
}

#[test]
fn power_examples() {
    let inst = instance(&standard_r(2), &permutation(2), 3);
    let t = inst.generators().unwrap();
    assert_eq!(inst.quantum_power(1, Variant::Overline).unwrap(), t);
    assert_eq!(inst.quantum_power(1, Variant::Underline).unwrap(), t);
    // (T^2)^i_j = Σ_{a,k,l} R^{ia}_{kl} T^k_j T^l_a
    let r = standard_r(2);
    let p2 = inst.quantum_power(2, Variant::Overline).unwrap();
    for i in 1..=2 {
        for j in 1..=2 {
            let mut acc = NCPoly::zero();
            for a in 1..=2 {
                for k in 1..=2 {
                    for l in 1..=2 {
                        let c = r.get(&[i, a], &[k, l]).unwrap();
                        acc = acc.add(&NCPoly::gen(2, k, j).mul(&NCPoly::gen(2, l, a)).scale(&c));
                    }
                }
            }
            assert_eq!(p2.get(&[i], &[j]).unwrap(), acc);
        }
    }
    // At q = 1 with F = P the power is the ordinary square up to the order
    // of the two (commuting) factors.
    let cl = classical_instance(2, 2);
    let m = cl.generators().unwrap();
    let sq = m.compose(&m).unwrap();
    let p2 = cl.quantum_power(2, Variant::Overline).unwrap();
    assert_ne!(p2, sq);
    assert_eq!(p2.map(abelianize), sq.map(abelianize));
    // (P, P) is an RTT pair, so both variants exist and agree abelianized.
    let u2 = cl.quantum_power(2, Variant::Underline).unwrap();
    assert_eq!(u2.map(abelianize), sq.map(abelianize));
    // Underline is RTT-only.
    let gen = instance(&standard_r(2), &standard_r(2), 2);
    assert_eq!(gen.detected_flavor(), Flavor::Rlrl);
    assert!(gen.quantum_power(2, Variant::Underline).is_err());
}

#[test]
fn wedge_examples() {
    let inst = instance(&standard_r(2), &permutation(2), 2);
    assert_eq!(
        inst.wedge_power(1, Variant::Overline).unwrap(),
        inst.generators().unwrap()
    );
    let over = inst.wedge_power(2, Variant::Overline).unwrap();
    let under = inst.wedge_power(2, Variant::Underline).unwrap();
    assert_ne!(over, under);
    assert_eq!(matrix_trace(&over), matrix_trace(&under));
    assert_eq!(
        matrix_trace(&over),
        inst.sigma(2, SigmaNorm::Trace).unwrap()
    );
}

#[test]
fn degree_one_residuals_vanish() {
    let rtt = instance(&standard_r(2), &permutation(2), 1);
    let rlrl = instance(&standard_r(2), &standard_r(2), 1);
    for (inst, fams) in [
        (
            &rtt,
            vec![Family::RttUnderline, Family::RttOverline, Family::General],
        ),
        (&rlrl, vec![Family::Rlrl, Family::General]),
    ] {
        for f in fams {
            assert!(inst.chn_residual(1, f).unwrap().is_zero(), "{f:?}");
        }
    }
    assert!(rtt.chn_residual(1, Family::Rlrl).is_err());
}

#[test]
fn classical_quantum_residual_is_commutatively_zero() {
    let cl = classical_instance(2, 3);
    for k in 1..=3 {
        let res = cl.chn_residual(k, Family::General).unwrap();
        let mut comm = NCMatrix::zero(2, 1);
        for (r, c, p) in res.multi_entries() {
            comm.set(&r, &c, abelianize(p)).unwrap();
        }
        assert!(comm.is_zero(), "k={k}");
    }
}

#[test]
fn rtt_identities_n2() {
    let inst = instance(&standard_r(2), &permutation(2), 3);
    for k in 2..=3 {
        for f in [Family::RttUnderline, Family::RttOverline] {
            let rep = inst.verify(k, f, MembershipMode::Exact).unwrap();
            assert!(rep.pass, "{}", rep.summary());
        }
    }
    // The residuals are genuinely nonzero at k = 3: membership is doing work.
    assert!(!inst.chn_residual(3, Family::RttOverline).unwrap().is_zero());
}

#[test]
fn rlrl_identity_needs_scaled_sigma() {
    let inst = instance(&standard_r(2), &standard_r(2), 3);
    for k in 2..=3 {
        let rep = inst.verify(k, Family::Rlrl, MembershipMode::Exact).unwrap();
        assert!(rep.pass, "{}", rep.summary());
    }
    let unscaled = inst
        .chn_residual_with(3, Family::Rlrl, SigmaNorm::Trace)
        .unwrap();
    let rep = crate::ncalg::matrix_membership(
        &unscaled,
        inst.spec(),
        MembershipMode::Exact,
        3,
        "unscaled",
    )
    .unwrap();
    assert!(!rep.pass);
}

#[test]
fn bridges_n2() {
    for f in [permutation(2), standard_r(2)] {
        let inst = instance(&standard_r(2), &f, 3);
        for k in 1..=3 {
            let rep = inst.consistency_bridge(k, MembershipMode::Exact).unwrap();
            assert!(rep.pass, "{}", rep.summary());
        }
    }
}

#[test]
fn rtt_sigma_invariants() {
    let inst = instance(&standard_r(2), &permutation(2), 3);
    for (i, j) in [(1, 1), (1, 2), (2, 1)] {
        assert!(
            inst.sigma_commutator(i, j, MembershipMode::Exact)
                .unwrap()
                .pass
        );
    }
    for k in 2..=3 {
        assert!(inst.newton_collapse(k, MembershipMode::Exact).unwrap().pass);
    }
    // σ₁(T) is not central in the RTT algebra.
    assert!(!inst.sigma1_centrality(MembershipMode::Exact).unwrap().pass);
    let rlrl = instance(&standard_r(2), &standard_r(2), 2);
    assert!(rlrl.sigma1_centrality(MembershipMode::Exact).unwrap().pass);
}

#[test]
fn instance_validates_inputs() {
    let pair = check_compatible(&standard_r(2), &permutation(2)).unwrap();
    let spec = relations_from(&pair, Flavor::Rtt).unwrap();
    let wrong = check_hecke(&crate::ybkit::standard_r(3)).unwrap();
    assert!(ChnInstance::new(spec.clone(), wrong, 2).is_err());
    let inst = ChnInstance::new(spec, check_hecke(&standard_r(2)).unwrap(), 2).unwrap();
    assert!(inst.chn_residual(3, Family::RttOverline).is_err());
    assert!(inst.consistency_bridge(2, MembershipMode::Exact).is_ok());
    let _ = Ring::is_zero(&rat(0));
}
