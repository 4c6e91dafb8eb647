//! Multivariate polynomial gcd over `Q(i)` by recursive primitive PRS.
//!
//! Inputs must be ordinary polynomials (nonnegative exponents). The result is
//! monic with respect to the lexicographic order.

use super::gauss::GaussRational;
use super::poly::{Monomial, Poly};
use super::var::Var;

pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    debug_assert!(a.is_polynomial() && b.is_polynomial());
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let m = ma.meet(&mb);
    let g = gcd_no_monomial(&a.div_mono(&ma), &b.div_mono(&mb));
    if m.is_one() {
        g
    } else {
        g.mul_mono(&m)
    }
}

fn vars_of(mask: u32) -> impl Iterator<Item = Var> {
    (0..32)
        .filter(move |i| mask & (1 << i) != 0)
        .map(|i| Var::from_index(i as usize))
}

/// Main variable for the remainder sequence: the shared one of least degree.
fn main_var(a: &Poly, b: &Poly, shared: u32) -> Var {
    vars_of(shared)
        .min_by_key(|&v| {
            (
                a.degree_in(v).min(b.degree_in(v)),
                a.degree_in(v).max(b.degree_in(v)),
            )
        })
        .expect("shared variable")
}

/// Evaluates every variable except `x` at fixed small integers and checks
/// whether the univariate images are coprime. A `true` answer proves that
/// the gcd has degree 0 in `x`; `false` is inconclusive.
fn coprime_image_in(a: &Poly, b: &Poly, x: Var) -> bool {
    const VALUES: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];
    let mask = (a.support() | b.support()) & !(1 << x.index());
    let substitute = |p: &Poly| -> Option<Poly> {
        let mut out = p.clone();
        for v in vars_of(mask) {
            out = out
                .substitute(v, &GaussRational::from_int(VALUES[v.index()]))
                .ok()?;
        }
        Some(out)
    };
    let (Some(ia), Some(ib)) = (substitute(a), substitute(b)) else {
        return false;
    };
    if ia.degree_in(x) != a.degree_in(x) || ib.degree_in(x) != b.degree_in(x) {
        return false;
    }
    univariate_gcd(ia, ib, x).degree_in(x) == 0
}

fn univariate_gcd(a: Poly, b: Poly, x: Var) -> Poly {
    let (mut f, mut g) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    g = g.monic();
    while !g.is_zero() {
        let r = pseudo_rem(&f, &g, x).monic();
        f = g;
        g = r;
    }
    f.monic()
}

fn gcd_no_monomial(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.monic();
    }
    let sa = a.support();
    let sb = b.support();
    if sa & !sb != 0 {
        let x = vars_of(sa & !sb).next().expect("nonempty");
        return gcd(&content(a, x), b);
    }
    if sb & !sa != 0 {
        let x = vars_of(sb & !sa).next().expect("nonempty");
        return gcd(a, &content(b, x));
    }
    let x = main_var(a, b, sa);
    let ca = content(a, x);
    let cb = content(b, x);
    let gc = gcd(&ca, &cb);
    if sa.count_ones() == 1 {
        return gc.mul(&univariate_gcd(a.clone(), b.clone(), x)).monic();
    }
    if coprime_image_in(a, b, x) {
        return gc;
    }
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let (mut f, mut g) = if pa.degree_in(x) >= pb.degree_in(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    g = g.monic();
    loop {
        let r = pseudo_rem(&f, &g, x);
        if r.is_zero() {
            break;
        }
        if r.degree_in(x) == 0 {
            g = Poly::one();
            break;
        }
        f = g;
        g = primitive_part(&r, x);
    }
    gc.mul(&primitive_part(&g, x)).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
pub fn content(p: &Poly, x: Var) -> Poly {
    let mut acc = Poly::zero();
    for c in p.coeffs_in(x).into_values() {
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part(p: &Poly, x: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content(p, x);
    p.div_exact(&c).expect("content divides").monic()
}

/// Sparse pseudo-remainder of `f` by `g` in `x`.
fn pseudo_rem(f: &Poly, g: &Poly, x: Var) -> Poly {
    let dg = g.degree_in(x);
    let lg = g.top_coeff_in(x);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(x) >= dg {
        let dr = r.degree_in(x);
        let lr = r.top_coeff_in(x);
        let shift = Monomial::var(x, dr - dg);
        r = r.mul(&lg).sub(&g.mul(&lr).mul_mono(&shift));
    }
    r
}
