mod common;

use common::*;
use genuslab::arith::Rational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cyclotomic_ring(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        cyclotomic_axioms(&a, &b, &c)?;
    }

    #[test]
    fn series_ring(a in series(), b in series(), c in series()) {
        series_axioms(&a, &b, &c)?;
    }

    #[test]
    fn cohomology_ring(a in class_coeffs(), b in class_coeffs(), c in class_coeffs()) {
        class_axioms(&product_ring(), &a, &b, &c)?;
    }

    #[test]
    fn theta_symmetries(a in -4i64..=4, b in -2i64..=2, c in -2i64..=2) {
        theta_identities(&Rational::new(a, 4), &Rational::new(b, 2), &Rational::from_integer(c))?;
    }

    #[test]
    fn genus_class_multiplicative(f in class_coeffs(), e in class_coeffs(), g in class_coeffs()) {
        multiplicativity(&f, &e, &g)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn theta_product_matches_series((a, b, c, z, tau) in theta_point()) {
        let err = theta_float_error(&a, &b, &c, z, tau);
        prop_assert!(err < 1e-8, "relative error {err}");
    }
}
