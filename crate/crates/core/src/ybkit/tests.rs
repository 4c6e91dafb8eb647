use super::*;
use crate::scalar::{parse_scalar, GaussRational, Var};

fn params(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn hecke(r: &TensorOp) -> HeckeData {
    check_hecke(r).unwrap_or_else(|rep| panic!("{}", rep.summary()))
}

#[test]
fn braid_relation_holds_for_builtins() {
    for n in 1..=4 {
        assert!(check_yang_baxter(&permutation(n)).pass);
    }
    for n in 2..=3 {
        assert!(check_yang_baxter(&standard_r(n)).pass);
    }
    assert!(check_yang_baxter(&cremmer_gervais_r()).pass);
    assert!(check_yang_baxter(&cremmer_gervais_f()).pass);
}

#[test]
fn braid_relation_detects_failure() {
    // A generic upper-triangular perturbation of P is not a braid matrix.
    let mut r = permutation(2);
    r.set(&[1, 1], &[1, 2], Scalar::from_int(1)).unwrap();
    let rep = check_yang_baxter(&r);
    assert!(!rep.pass);
    assert!(!rep.diagnostics.is_empty());
    assert!(!check_yang_baxter(&TensorOp::identity(2, 1)).pass);
}

#[test]
fn standard_matrix_is_hecke_with_two_eigenvalues() {
    for n in 2..=3 {
        let h = hecke(&standard_r(n));
        assert!(h.projector_report().pass);
        assert_eq!(h.eigenvalues().1, parse_scalar("-q^-1", &[]).unwrap());
        // Both eigenspaces are present: dim S = n(n+1)/2, dim A = n(n-1)/2.
        assert_eq!(h.s.rank(), n * (n + 1) / 2);
        assert_eq!(h.a.rank(), n * (n - 1) / 2);
    }
}

#[test]
fn permutation_is_hecke_only_at_q_one() {
    let p = permutation(3);
    assert!(check_hecke(&p).is_err());
    let h = check_hecke_at(&p, &Scalar::one()).unwrap();
    assert!(h.projector_report().pass);
    assert_eq!(h.a.rank(), 3);
}

#[test]
fn cremmer_gervais_projector_rank() {
    let h = hecke(&cremmer_gervais_r());
    assert!(h.projector_report().pass);
    let dense = h.a.to_dense();
    assert_eq!(crate::linalg::rank(&dense), 3);
    assert_eq!(crate::linalg::bareiss_rank(&dense), 3);
}

#[test]
fn antisymmetrizer_low_degrees() {
    let h = hecke(&standard_r(2));
    assert_eq!(antisymmetrizer(&h, 1).unwrap(), TensorOp::identity(2, 1));
    assert_eq!(antisymmetrizer(&h, 2).unwrap(), h.a);
    assert!(antisymmetrizer(&h, 0).is_err());
}

#[test]
fn antisymmetrizer_ranks_and_vanishing() {
    for n in 2..=3 {
        let h = hecke(&standard_r(n));
        let tower = antisymmetrizer_tower(&h, n + 1).unwrap();
        for (k, a) in tower.iter().enumerate().skip(1) {
            let k = k + 1;
            let expect = binomial(n, k);
            assert_eq!(a.rank(), expect, "n={n} k={k}");
            assert_eq!(a.compose(a).unwrap(), *a);
        }
        assert!(tower[n].is_zero(), "A_(n+1) must vanish");
    }
}

#[test]
fn antisymmetrizer_absorbs_previous() {
    let h = hecke(&standard_r(3));
    for k in 2..=3 {
        let (_, rep) = antisymmetrizer_report(&h, k).unwrap();
        assert!(rep.pass, "{}", rep.summary());
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

/// `(1/k!) Σ_π sgn(π) P_π` on `V^{⊗k}`, with `P_π` permuting factors.
fn classical_antisymmetrizer(n: usize, k: usize) -> TensorOp {
    let perms = permutations(k);
    let fact = perms.len() as i64;
    let mut out = TensorOp::zero(n, k);
    let dim = n.pow(k as u32);
    for (perm, sign) in perms {
        let mut items = Vec::new();
        for col in 0..dim {
            let digits: Vec<usize> = (0..k)
                .map(|f| col / n.pow((k - 1 - f) as u32) % n)
                .collect();
            let row = (0..k).fold(0, |acc, f| acc * n + digits[perm[f]]);
            items.push((row, col, Scalar::from_ratio(sign, fact)));
        }
        out = out.add(&TensorOp::from_flat(n, k, items)).unwrap();
    }
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    if k == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting at pos moves k-1 past (k-1-pos) elements
            let sign = if (k - 1 - pos).is_multiple_of(2) {
                s
            } else {
                -s
            };
            out.push((q, sign));
        }
    }
    out
}

#[test]
fn classical_limit_matches_permutation_sum() {
    for n in 2..=3 {
        let h = check_hecke_at(&permutation(n), &Scalar::one()).unwrap();
        for k in 1..=n + 1 {
            assert_eq!(
                antisymmetrizer(&h, k).unwrap(),
                classical_antisymmetrizer(n, k),
                "n={n} k={k}"
            );
        }
        // q → 1 specialization of the symbolic tower agrees too.
        let hq = hecke(&standard_r(n));
        let a2 = antisymmetrizer(&hq, 2).unwrap();
        let at1 = a2.specialize(Var::Q, &GaussRational::one()).unwrap();
        assert_eq!(at1.rank(), binomial(n, 2));
    }
}

#[test]
fn d_matrix_examples() {
    assert_eq!(d_matrix(&permutation(3)).unwrap(), TensorOp::identity(3, 1));
    let d = d_matrix(&cremmer_gervais_f()).unwrap();
    let expect = TensorOp::diagonal(vec![Scalar::one(), Scalar::i().neg(), Scalar::one()]);
    assert_eq!(d, expect);
    assert!(check_d_matrix(&cremmer_gervais_f(), &d).unwrap());
    for n in 2..=3 {
        let r = standard_r(n);
        let d = d_matrix(&r).unwrap();
        assert!(d.is_diagonal());
        // Tr₂(R̂·D₂) = I by explicit composition and plain trace.
        let t = r
            .compose(&d.place(2, 2).unwrap())
            .unwrap()
            .partial_trace(&[2])
            .unwrap();
        assert_eq!(t, TensorOp::identity(n, 1));
    }
}

#[test]
fn d_matrix_failures() {
    assert_eq!(
        d_matrix(&TensorOp::zero(2, 2)),
        Err(Error::DMatrixInconsistent)
    );
    let f = TensorOp::from_flat(1, 2, [(0, 0, Scalar::one())]);
    assert_eq!(d_matrix(&f).unwrap(), TensorOp::identity(1, 1));
    let mut g = TensorOp::zero(2, 2);
    g.set(&[1, 1], &[1, 1], Scalar::one()).unwrap();
    g.set(&[2, 1], &[2, 1], Scalar::one()).unwrap();
    g.set(&[1, 2], &[1, 1], Scalar::one()).unwrap();
    g.set(&[2, 2], &[2, 1], Scalar::one()).unwrap();
    // Only D₁₁ + D₁₂ = 1 survives: three free directions.
    assert_eq!(d_matrix(&g), Err(Error::DMatrixSingular { nullity: 3 }));
}

#[test]
fn twist_examples() {
    let r = standard_r(2);
    let p = permutation(2);
    assert_eq!(twist(&twist(&r, &p).unwrap(), &p).unwrap(), r);
    assert_eq!(twist(&r, &r).unwrap(), r);
    assert!(twist(&r, &TensorOp::zero(2, 2)).is_err());
    for n in 2..=3 {
        let r = standard_r(n);
        let f = diagonal_twist_generic(n).unwrap();
        let rff = twist(&twist(&r, &f).unwrap(), &f).unwrap();
        assert_eq!(rff, r, "n={n}");
    }
}

#[test]
fn compatible_pairs() {
    let r = standard_r(2);
    let pair = check_compatible(&r, &permutation(2)).unwrap();
    assert_eq!(pair.d_of_f, TensorOp::identity(2, 1));
    assert_eq!(pair.rhat_ff, r);
    assert!(check_compatible(&r, &r).is_ok());
    let cg = check_compatible(&cremmer_gervais_r(), &cremmer_gervais_f()).unwrap();
    assert_ne!(cg.rhat_ff, cg.rhat);
    // A non-braid partner is rejected as incompatible, not as a D failure.
    let mut bad = permutation(2);
    bad.set(&[1, 1], &[1, 2], Scalar::one()).unwrap();
    assert!(matches!(
        check_compatible(&r, &bad),
        Err(CompatibilityFailure::Incompatible(_))
    ));
}

#[test]
fn conjugation_by_d() {
    let r = standard_r(2);
    let trivial = check_compatible(&r, &permutation(2)).unwrap();
    assert!(check_dd_conjugation(&trivial).pass);
    let selfpair = check_compatible(&r, &r).unwrap();
    assert!(check_dd_conjugation(&selfpair).pass);

    let cg = check_compatible(&cremmer_gervais_r(), &cremmer_gervais_f()).unwrap();
    assert!(check_dd_conjugation(&cg).pass);
    let b = Scalar::param("b").unwrap();
    let y = Scalar::param("y").unwrap();
    let conj = conjugate(&cg.rhat, &d1d2(&cg.d_of_f).unwrap()).unwrap();
    assert_eq!(conj, cremmer_gervais_r_with(&b, &y.neg()));
}

#[test]
fn d_commutes_with_standard_matrix() {
    for n in 2..=3 {
        let r = standard_r(n);
        let d = d_matrix(&r).unwrap();
        assert!(check_rd_commutation(&r, &d).pass);
    }
    let r = standard_r(2);
    let not_central = TensorOp::from_flat(
        2,
        1,
        [
            (0, 1, Scalar::one()),
            (0, 0, Scalar::one()),
            (1, 1, Scalar::one()),
        ],
    );
    assert!(!check_rd_commutation(&r, &not_central).pass);
}

#[test]
fn builtin_entries() {
    let r = builtin("standard:2").unwrap();
    assert_eq!(r.get(&[1, 1], &[1, 1]).unwrap(), Scalar::q());
    let cg = builtin("cremmer_gervais_r").unwrap();
    let expect = parse_scalar("-b^2*y/q^2", &params(&["b", "y"])).unwrap();
    // row 5 = (2,2), column 7 = (3,1)
    assert_eq!(cg.get(&[2, 2], &[3, 1]).unwrap(), expect);
    let p = builtin("permutation:3").unwrap();
    assert_eq!(p.dim(), 9);
    assert_eq!(p.compose(&p).unwrap(), TensorOp::identity(3, 2));
    assert!(builtin("standard").is_err());
    assert!(builtin("nonsense:2").is_err());
    assert!(builtin("diagonal_twist:2").is_ok());
}

#[test]
fn twisting_preserves_structure() {
    for (r, f) in [
        (standard_r(2), permutation(2)),
        (cremmer_gervais_r(), cremmer_gervais_f()),
    ] {
        let pair = check_compatible(&r, &f).unwrap();
        assert!(check_yang_baxter(&pair.rhat_ff).pass);
        assert!(check_compatible(&pair.rhat_f, &f).is_ok());
    }
}
