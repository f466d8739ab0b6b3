use hahnium::angular::{clebsch_gordan, HalfInt};
use hahnium::hydrogen_nr::{expect_r_power_nr, expect_r_power_nr_exact, recurrence_values, NrState};
use hahnium::hydrogen_rel::{expect_r_power_rel, expect_special_rel, RelState, SpecialCase};
use hahnium::laguerre_integrals::{linearization_coeffs, triple_product_integral};
use hahnium::orthopoly::{laguerre, LaguerreSpec};
use hahnium::specfun::rational;
use hahnium::units::{Expectation, LengthUnit};
use hahnium::BigRational;
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nr_moments_follow_the_recurrence(zn in 1i64..40, zd in 1i64..5, n in 1u64..9, l_off in 0u64..8) {
        let l = l_off % n;
        let z = rational(zn, zd);
        let rec = recurrence_values(&z, n, l, 5);
        for (i, v) in rec.iter().enumerate() {
            prop_assert_eq!(v, &expect_r_power_nr_exact(&z, n, l, i as i64 - 1).unwrap());
        }
    }

    #[test]
    fn nr_moments_scale_with_charge(z in 0.5f64..60.0, n in 1u64..8, l_off in 0u64..7, p in -2i32..6) {
        let l = l_off % n;
        let a = expect_r_power_nr(&NrState::new(z, n, l, 0).unwrap(), p).unwrap().value;
        let b = expect_r_power_nr(&NrState::new(1.0, n, l, 0).unwrap(), p).unwrap().value;
        prop_assert!(rel(a, b * z.powi(-p)) < 1e-12);
    }

    #[test]
    fn dirac_normalization_and_positivity(z in 1.0f64..100.0, nr in 0u64..7, k in prop::sample::select(vec![-4i64, -3, -2, -1, 1, 2, 3, 4])) {
        let Ok(s) = RelState::new(z, nr, k) else { return Ok(()) };
        prop_assert!((expect_r_power_rel(&s, 0).unwrap().value - 1.0).abs() < 1e-12);
        for p in [-1, 1, 2, 3] {
            prop_assert!(expect_r_power_rel(&s, p).unwrap().value > 0.0);
        }
        let r1 = expect_r_power_rel(&s, 1).unwrap().value;
        let r2 = expect_r_power_rel(&s, 2).unwrap().value;
        prop_assert!(r2 >= r1 * r1);
        let sp = expect_special_rel(&s, SpecialCase::R1).unwrap().value;
        prop_assert!(rel(sp, r1) < 1e-11);
    }

    #[test]
    fn linearization_reconstructs(n in 0u64..6, m in 0u64..6, an in 0i64..8, xn in 0i64..20, xd in 1i64..4) {
        let a = rational(an, 2);
        let x = rational(xn, xd);
        let t = linearization_coeffs(n, m, a.clone());
        let l = |k| laguerre(&LaguerreSpec::new(k, a.clone()), &x);
        let lhs = (0..=n + m).fold(rational(0, 1), |s: BigRational, p| s + t.coefficient(p) * l(p));
        prop_assert_eq!(lhs, l(n) * l(m));
    }

    #[test]
    fn triple_products_alternate_in_sign(n in 0u64..7, m in 0u64..7, p in 0u64..7, a in 0.0f64..4.0) {
        let v = triple_product_integral(n, m, p, a).unwrap();
        let sign = if (n + m + p) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(sign * v >= 0.0);
    }

    #[test]
    fn clebsch_gordan_exchange_symmetry(tj1 in 0i64..5, tj2 in 0i64..5, k in 0i64..5, a in 0i64..5, b in 0i64..5) {
        let tj = (tj1 - tj2).abs() + 2 * (k % (tj1.min(tj2) + 1));
        let tm1 = -tj1 + 2 * (a % (tj1 + 1));
        let tm2 = -tj2 + 2 * (b % (tj2 + 1));
        let tm = tm1 + tm2;
        prop_assume!(tm.abs() <= tj);
        let h = HalfInt::from_twice;
        let c12 = clebsch_gordan(h(tj1), h(tm1), h(tj2), h(tm2), h(tj), h(tm)).unwrap();
        let c21 = clebsch_gordan(h(tj2), h(tm2), h(tj1), h(tm1), h(tj), h(tm)).unwrap();
        let sign = if ((tj1 + tj2 - tj) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((c12 - sign * c21).abs() < 1e-13);
    }

    #[test]
    fn unit_conversion_round_trips(v in 1e-3f64..1e3, p in -4i32..5) {
        let e = Expectation::closed_form(v, p, LengthUnit::ComptonReduced);
        for u in [LengthUnit::BohrRadius, LengthUnit::Centimetre] {
            let back = e.convert(u).convert(LengthUnit::ComptonReduced);
            prop_assert!(rel(back.value, v) < 1e-13);
        }
    }
}
