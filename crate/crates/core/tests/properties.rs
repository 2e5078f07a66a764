use proptest::prelude::*;
use superfock::graded_symbolic::{lie_bracket, parse_function, SuperDimension, SuperFunction, SuperVectorField};
use superfock::mode_algebra::{verify_super_jacobi, xsc, XscParameters};
use superfock::scalar::Gq;

fn rational() -> impl Strategy<Value = Gq> {
    (-6i128..=6, 1i128..=5).prop_map(|(n, d)| Gq::frac(n, d))
}

fn gaussian() -> impl Strategy<Value = Gq> {
    (rational(), rational()).prop_map(|(re, im)| re + im * Gq::I)
}

/// Sum of up to four monomials `c * exp(imt) * x1^a * th1^b * th2^e` in `(1|2)`.
fn function() -> impl Strategy<Value = SuperFunction> {
    let d = SuperDimension::new(1, 2);
    let term = (gaussian(), -2i64..=2, 0u32..=2, any::<bool>(), any::<bool>());
    prop::collection::vec(term, 0..4).prop_map(move |terms| {
        let mut f = SuperFunction::zero(d);
        for (c, m, a, b, e) in terms {
            let mut t = SuperFunction::fourier(d, m).scale(c);
            for _ in 0..a {
                t = &t * &SuperFunction::coord(d, 1);
            }
            if b {
                t = &t * &SuperFunction::coord(d, 2);
            }
            if e {
                t = &t * &SuperFunction::coord(d, 3);
            }
            f += &t;
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gaussian_rationals_form_a_field(a in gaussian(), b in gaussian(), c in gaussian()) {
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        if !a.is_zero() {
            prop_assert_eq!(a * a.recip(), Gq::ONE);
        }
    }

    #[test]
    fn printed_functions_parse_back(f in function()) {
        let g = parse_function(&f.to_string(), f.dim()).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn products_are_graded_commutative(f in function(), g in function()) {
        let (fe, fo) = f.split_parity();
        let (ge, go) = g.split_parity();
        prop_assert_eq!(&fe * &g, &g * &fe);
        prop_assert_eq!(&fo * &go, (&go * &fo).scale(-Gq::ONE));
        prop_assert_eq!(&fo * &ge, &ge * &fo);
    }

    #[test]
    fn bracket_of_a_field_with_itself_vanishes_when_even(f in function(), g in function()) {
        let d = f.dim();
        let (fe, _) = f.split_parity();
        let (ge, _) = g.split_parity();
        let xi = SuperVectorField::new(d, vec![SuperFunction::zero(d), fe, SuperFunction::zero(d), SuperFunction::zero(d)]).unwrap();
        let eta = SuperVectorField::new(d, vec![ge, SuperFunction::zero(d), SuperFunction::zero(d), SuperFunction::zero(d)]).unwrap();
        let sum = &xi + &eta;
        prop_assert!(lie_bracket(&sum, &sum).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn xsc_jacobi_fails_exactly_off_the_constraint(
        a in rational(), a_prime in rational(), alpha in rational(), beta in rational(),
        gamma in rational(), gamma_prime in rational(), e in rational(), b in rational(), on in any::<bool>(),
    ) {
        let mut p = XscParameters { a, a_prime, alpha, beta, gamma, gamma_prime, e, b };
        if on {
            p.b = Gq::int(2) * (Gq::int(2) * a - Gq::int(2) * alpha + beta);
        }
        let holds = verify_super_jacobi(&xsc(&p)).holds();
        prop_assert_eq!(holds, p.constraint_defect().is_zero());
    }
}
