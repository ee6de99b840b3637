mod common;

use common::{random_expr, rel_err};
use elzaki_qm::elzaki::prefix::{read_expr, write_expr};
use elzaki_qm::elzaki::{
    convolve, elzaki_adaptive, elzaki_numeric, elzaki_transform, inverse_elzaki, laplace_dual, shifted_transform, Expr,
};
use elzaki_qm::mde::{closed_form_chi, default_step, mde_residual, residual_tolerance, transform_space_solution, MdeParams};
use elzaki_qm::special::{beta, factorial, gamma, kummer_1f1, kummer_polynomial};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn expr_from_seed(seed: u64) -> Expr {
    random_expr(&mut ChaCha8Rng::seed_from_u64(seed))
}

#[test]
fn gamma_at_integers_is_factorial() {
    for n in 1..=20u32 {
        let g = gamma(n as f64).unwrap();
        assert!(rel_err(g, factorial(n - 1)) <= 1e-13, "gamma({n}) = {g}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gamma_recurrence(x in 0.5f64..30.0) {
        prop_assert!(rel_err(gamma(x + 1.0).unwrap(), x * gamma(x).unwrap()) <= 1e-11);
    }

    #[test]
    fn terminating_kummer_at_origin(n in 0u32..12, b in 0.1f64..20.0) {
        prop_assert_eq!(kummer_1f1(-(n as f64), b, 0.0).unwrap(), 1.0);
        prop_assert_eq!(kummer_polynomial(n, b).unwrap().len(), n as usize + 1);
    }

    #[test]
    fn kummer_transformation(a in 0.05f64..5.0, b in 0.3f64..6.0, x in -5.0f64..5.0) {
        prop_assume!((a - a.round()).abs() > 1e-3);
        let lhs = kummer_1f1(a, b, x).unwrap();
        let rhs = x.exp() * kummer_1f1(b - a, b, -x).unwrap();
        prop_assert!(rel_err(lhs, rhs) <= 1e-9, "{lhs} vs {rhs}");
    }

    #[test]
    fn beta_symmetry(s in 0.1f64..10.0, r in 0.1f64..10.0) {
        prop_assert!(rel_err(beta(s, r).unwrap(), beta(r, s).unwrap()) <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linearity(s1 in any::<u64>(), s2 in any::<u64>(), alpha in -3.0f64..3.0, beta_ in -3.0f64..3.0, u in 0.05f64..0.3) {
        let (f, g) = (expr_from_seed(s1), expr_from_seed(s2));
        let combined = elzaki_transform(&(f.scale(alpha) + g.scale(beta_))).unwrap();
        let split = elzaki_transform(&f).unwrap().scale(alpha).add(&elzaki_transform(&g).unwrap().scale(beta_));
        let (a, b) = (combined.eval(u).unwrap(), split.eval(u).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        let num = elzaki_numeric(|t| alpha * f.eval(t) + beta_ * g.eval(t), u, 64).unwrap();
        prop_assert!((a - num).abs() <= 1e-8 * (1.0 + a.abs()), "{a} vs quadrature {num}");
    }

    #[test]
    fn duality_of_exponential_polynomials(k in 0u32..5, r in -2.0f64..2.0, c in -3.0f64..3.0, x in 0.02f64..0.9) {
        let f = Expr::term(elzaki_qm::elzaki::Term::new(c, k as f64, r, elzaki_qm::elzaki::Special::None));
        let img = elzaki_transform(&f).unwrap();
        let u = x * img.radius().min(2.0);
        let laplace = |s: f64| c * factorial(k) / (s - r).powi(k as i32 + 1);
        prop_assert!(rel_err(img.eval(u).unwrap(), laplace_dual(laplace, u).unwrap()) <= 1e-10);
    }

    #[test]
    fn convolution_theorem(s1 in any::<u64>(), s2 in any::<u64>(), x in 0.1f64..0.8) {
        let (g, h) = (expr_from_seed(s1), expr_from_seed(s2));
        let (tg, th) = (elzaki_transform(&g).unwrap(), elzaki_transform(&h).unwrap());
        let tc = elzaki_transform(&convolve(&g, &h).unwrap()).unwrap();
        let u = x * tg.radius().min(th.radius()).min(1.0);
        let (lhs, rhs) = (tc.eval(u).unwrap() * u, tg.eval(u).unwrap() * th.eval(u).unwrap());
        prop_assert!((lhs - rhs).abs() <= 1e-8 * lhs.abs().max(rhs.abs()).max(1e-300) || (lhs - rhs).abs() <= 1e-14);
    }

    #[test]
    fn inverse_undoes_transform(seed in any::<u64>()) {
        let f = expr_from_seed(seed);
        let back = inverse_elzaki(&elzaki_transform(&f).unwrap()).unwrap();
        prop_assert!(back.approx_eq_at(&f, &[0.0, 0.3, 1.1, 2.7], 1e-9), "{f} came back as {back}");
    }

    #[test]
    fn display_and_prefix_round_trip(seed in any::<u64>()) {
        let f = expr_from_seed(seed);
        let reparsed: Expr = f.to_string().parse().unwrap();
        // display keeps 12 significant digits; the prefix form is the exact one
        prop_assert!(reparsed.approx_eq_at(&f, &[0.0, 0.5, 2.0], 1e-10));
        prop_assert_eq!(read_expr(&write_expr(&f)).unwrap(), f);
    }

    #[test]
    fn shifting(seed in any::<u64>(), a in 0.1f64..2.0, x in 0.1f64..0.8) {
        let f = expr_from_seed(seed);
        let img = shifted_transform(&elzaki_transform(&f).unwrap(), a).unwrap();
        let u = x * img.radius().min(1.0);
        let sym = img.eval(u).unwrap();
        let num = elzaki_numeric(|t| (-a * t).exp() * f.eval(t), u, 64).unwrap();
        prop_assert!((sym - num).abs() <= 1e-6 * sym.abs().max(1e-3), "{sym} vs {num}");
    }
}

fn quantized(a: f64, b: f64, n: u32) -> MdeParams {
    MdeParams::new(a, b, b * (2.0 - a + 2.0 * n as f64)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chi_solves_model_equation(a in -3.0f64..1.9, b in 0.2f64..2.0, n in 0u32..=3) {
        let params = quantized(a, b, n);
        let chi = closed_form_chi(&params, n).unwrap();
        for y in [0.5, 1.0, 2.0, 5.0] {
            prop_assert!(mde_residual(&chi, &params, y, default_step(y)) <= residual_tolerance(&chi, y));
        }
    }

    #[test]
    fn p_identity(a in -5.0f64..5.0, b in 0.01f64..5.0, c in -5.0f64..5.0) {
        let f = transform_space_solution(&MdeParams::new(a, b, c).unwrap()).unwrap();
        prop_assert!((f.p + (a - 2.0 + c / b) / 2.0).abs() <= 4.0 * f64::EPSILON * (1.0 + (c / b).abs() + a.abs()));
    }

    #[test]
    fn chi_vanishes_at_origin(a in -3.0f64..0.9, b in 0.2f64..2.0, n in 0u32..=3) {
        // 2p + C/B − 1 = 1 − A > 0
        let chi = closed_form_chi(&quantized(a, b, n), n).unwrap();
        prop_assert!(chi.eval(1e-200).abs() < 1e-12 * chi.eval(1.0).abs().max(1e-3));
    }

    #[test]
    fn chi_image_matches_quadrature(a in -2.0f64..1.5, b in 0.3f64..1.5, n in 0u32..=1, x in 0.1f64..0.6) {
        let params = quantized(a, b, n);
        let chi = closed_form_chi(&params, n).unwrap();
        let image = transform_space_solution(&params).unwrap().image(1.0);
        let u = x / b;
        let num = elzaki_adaptive(|y| chi.eval(y), u, &[]).unwrap();
        let sym = image.eval(u).unwrap();
        prop_assert!(rel_err(sym, num) <= 1e-6, "{sym} vs {num}");
    }
}
