//! Cross-module invariants under random inputs.

use hermitian_lfun::characters::unit_group;
use hermitian_lfun::gaussian::factor;
use hermitian_lfun::hecke::Eigenvalues;
use hermitian_lfun::series::{dedekind_lattice, TruncatedSeries};
use hermitian_lfun::verify::{
    verify_local_proposition, verify_theta_factorization_with, Corruption,
};
use hermitian_lfun::{Cyclo, GaussianInt, MultiPoly, PrimeKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_multiplies_back(re in -50_000i64..50_000, im in -50_000i64..50_000) {
        prop_assume!(re != 0 || im != 0);
        let alpha = GaussianInt::new(re, im);
        let f = factor(&alpha).unwrap();
        prop_assert_eq!(f.product(), alpha);
        prop_assert!(f.unit.is_unit());
        for (p, _) in &f.primes {
            prop_assert!(p.is_canonical());
        }
    }

    #[test]
    fn characters_are_multiplicative(n in 1u64..8, a in (0i64..40, 0i64..40), b in (0i64..40, 0i64..40)) {
        let x = GaussianInt::new(a.0, a.1);
        let y = GaussianInt::new(b.0, b.1);
        let xy = &x * &y;
        for chi in unit_group(n).unwrap().characters() {
            let lhs: Cyclo = hermitian_lfun::characters::value_to_scalar(&chi.eval(&xy));
            let rhs = hermitian_lfun::characters::value_to_scalar::<Cyclo>(&chi.eval(&x))
                .mul(&hermitian_lfun::characters::value_to_scalar(&chi.eval(&y)));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lattice_series_is_multiplicative(n in 1u64..6, index in 0usize..64, bound in 50usize..400) {
        let chars = unit_group(n).unwrap().characters();
        let chi = &chars[index % chars.len()];
        let omega = chi.mul(&chi.bar_twist()).unwrap();
        let s: TruncatedSeries<Cyclo> = dedekind_lattice(&omega, bound).unwrap();
        prop_assert_eq!(s.multiplicativity_failure(), None);
    }

    #[test]
    fn any_corruption_is_detected(n in 1u64..6, index in 0usize..64, p_idx in 0usize..6, degree in 1usize..3) {
        let p = [2u64, 3, 5, 7, 11, 13][p_idx];
        let chars = unit_group(n).unwrap().characters();
        let chi = &chars[index % chars.len()];
        let r = verify_theta_factorization_with(chi, 200, Some(Corruption { prime: p, degree })).unwrap();
        // a corrupted p-power coefficient only shows when it lies inside the bound
        prop_assert_eq!(r.passed(), p.pow(degree as u32) > 200);
    }

    #[test]
    fn local_identity_for_any_root_of_unity(order in 1u32..13, e in 0i64..12, k in 3i64..20, which in 0usize..5) {
        let (p, kind) = [(2, PrimeKind::Ramified), (3, PrimeKind::Inert), (5, PrimeKind::Split),
                         (7, PrimeKind::Inert), (13, PrimeKind::Split)][which];
        let c = Cyclo::root_of_unity(order, e);
        let r = verify_local_proposition(p, &c, k, &Eigenvalues::<MultiPoly>::symbolic(kind)).unwrap();
        prop_assert!(r.passed());
    }
}
