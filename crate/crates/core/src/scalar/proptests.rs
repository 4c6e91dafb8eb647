use proptest::prelude::*;

use super::*;

fn small_scalar() -> impl Strategy<Value = Scalar> {
    // Ratio of two small Laurent polynomials in q and one parameter.
    let coeff = -3i64..=3;
    let term = (coeff, -2i16..=2, 0i16..=2);
    let poly = prop::collection::vec(term, 1..4).prop_map(|ts| {
        let b = Var::named("pb").unwrap();
        Poly::from_terms(ts.into_iter().map(|(c, eq, eb)| {
            (
                Monomial::var(Var::Q, eq).mul(&Monomial::var(b, eb)),
                GaussRational::from_int(c),
            )
        }))
    });
    (poly.clone(), poly).prop_filter_map("nonzero denominator", |(n, d)| Scalar::ratio(n, d).ok())
}

fn point() -> impl Strategy<Value = Point> {
    (2i64..50, 2i64..50, 2i64..50).prop_map(|(a, b, c)| {
        Point::new()
            .with("q", GaussRational::from_ratio(a, b))
            .unwrap()
            .with("pb", GaussRational::from_int(c))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn multiplication_distributes(a in small_scalar(), b in small_scalar(), c in small_scalar()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn evaluation_is_multiplicative(a in small_scalar(), b in small_scalar(), pt in point()) {
        let (ea, eb, eab) = (a.evaluate(&pt), b.evaluate(&pt), a.mul(&b).evaluate(&pt));
        if let (Ok(ea), Ok(eb)) = (ea, eb) {
            prop_assert_eq!(eab.unwrap(), &ea * &eb);
        }
    }

    #[test]
    fn division_inverts_multiplication(a in small_scalar(), b in small_scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a);
    }
}
