use std::f64::consts::TAU;

use bisym_core::dwt::{analyze, synthesize, ImagePlane};
use bisym_core::lawton::{axis_cycle_check, lawton_spectrum, Axis};
use bisym_core::masks::{
    case1_mask, case2a_mask, derive_wavelet_bank, modulation_unitarity_residual, polyphase_split, transpose_mask,
    Case1Params, Case2aParams, Case2aPart, Sign,
};
use bisym_core::shell::{generate, parse_mask, render_mask, MaskRecipe};
use bisym_core::verify::{
    check_orthogonality_equations, linear_moment_residuals, qmf_residual_on_grid, sum_residual, verify_mask,
};
use proptest::prelude::*;

fn angle() -> impl Strategy<Value = f64> {
    0.0..TAU
}

fn algebraic_residual(beta: f64, gamma: f64) -> (f64, f64) {
    let mask = case1_mask(Case1Params::new(beta, gamma)).unwrap();
    let p = polyphase_split(&mask).unwrap();
    let alg = check_orthogonality_equations(&p)
        .into_iter()
        .chain(linear_moment_residuals(&p))
        .fold(sum_residual(&p), f64::max);
    (alg, qmf_residual_on_grid(&mask, 32))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn algebraic_and_frequency_checks_agree(beta in angle(), gamma in angle()) {
        let (alg, grid) = algebraic_residual(beta, gamma);
        prop_assert!(alg < 1e-10 && grid < 1e-10);
    }

    #[test]
    fn perturbations_break_both_checks(beta in angle(), gamma in angle(), j in 0usize..6, k in 0usize..6, eps in 1e-4f64..1e-2) {
        let mut mask = case1_mask(Case1Params::new(beta, gamma)).unwrap();
        mask.set(j, k, mask.get(j, k) + eps);
        mask.set(5 - j, 5 - k, mask.get(5 - j, 5 - k) + eps);
        let r = verify_mask(&mask, 1e-10, 32);
        prop_assert!(!r.pass());
        prop_assert!(qmf_residual_on_grid(&mask, 32) > 1e-8);
    }

    #[test]
    fn banks_are_unitary(beta in angle(), gamma in angle(), w1 in -3.2f64..3.2, w2 in -3.2f64..3.2) {
        let bank = derive_wavelet_bank(&case1_mask(Case1Params::new(beta, gamma)).unwrap()).unwrap();
        prop_assert!(modulation_unitarity_residual(&bank, w1, w2) < 1e-12);
    }

    #[test]
    fn transpose_keeps_orthonormality(beta in angle(), gamma in angle()) {
        let mask = case1_mask(Case1Params::new(beta, gamma)).unwrap();
        let t = transpose_mask(&mask);
        prop_assert!(verify_mask(&t, 1e-10, 32).pass());
        let a = lawton_spectrum(&mask, 1e-8).unwrap();
        let b = lawton_spectrum(&t, 1e-8).unwrap();
        prop_assert_eq!(a.unit_multiplicity, b.unit_multiplicity);
    }

    #[test]
    fn transpose_moves_cycles_to_other_axis(gamma in angle()) {
        let mask = case2a_mask(Case2aParams { part: Case2aPart::P1 { gamma }, sign: Sign::Plus }).unwrap();
        let x: Vec<_> = axis_cycle_check(&mask, 15).into_iter().map(|c| (c.axis, c.numerators)).collect();
        let y: Vec<_> = axis_cycle_check(&transpose_mask(&mask), 15).into_iter().map(|c| (c.axis, c.numerators)).collect();
        prop_assert!(x.iter().any(|(a, _)| *a == Axis::X));
        let swapped: Vec<_> = x.into_iter().map(|(a, n)| (if a == Axis::X { Axis::Y } else { Axis::X }, n)).collect();
        prop_assert_eq!(swapped, y);
    }

    #[test]
    fn transform_is_linear(beta in angle(), gamma in angle(), s in -3.0f64..3.0, seed in 0u64..1000) {
        let bank = derive_wavelet_bank(&case1_mask(Case1Params::new(beta, gamma)).unwrap()).unwrap();
        let f = |r: usize, c: usize| (((r * 31 + c * 17) as u64 ^ seed) % 97) as f64 / 97.0;
        let g = |r: usize, c: usize| ((r as f64 + 1.0) * (c as f64 + 2.0)).sin();
        let x = ImagePlane::from_fn(16, 16, f);
        let y = ImagePlane::from_fn(16, 16, g);
        let xy = ImagePlane::from_fn(16, 16, |r, c| f(r, c) + s * g(r, c));
        let (ax, ay, axy) = (analyze(&x, &bank).unwrap(), analyze(&y, &bank).unwrap(), analyze(&xy, &bank).unwrap());
        for b in 0..4 {
            for i in 0..axy.bands[b].pixels.len() {
                let want = ax.bands[b].pixels[i] + s * ay.bands[b].pixels[i];
                prop_assert!((axy.bands[b].pixels[i] - want).abs() < 1e-12);
            }
        }
        prop_assert!(synthesize(&axy, &bank).unwrap().max_abs_diff(&xy) < 1e-12);
    }

    #[test]
    fn generated_files_reparse(beta in angle(), gamma in angle()) {
        let f = generate(MaskRecipe::Case1 { beta, gamma }).unwrap();
        let back = parse_mask(&render_mask(&f)).unwrap();
        prop_assert_eq!(back.param("beta"), Some(beta));
        prop_assert_eq!(back.mask, f.mask);
    }
}
