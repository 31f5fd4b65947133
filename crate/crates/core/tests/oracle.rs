//! Values frozen from `oracles/mp_oracle.py` (400-digit closed forms).

use vtmap::maps::gamma;
use vtmap::params::{params_for, phi_s_parabola_cap, ParameterRegime};
use vtmap::resolution::{b_alpha, predict_ppw, xi_r};
use vtmap::{MapFamily, MapInstance};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn gamma_values() {
    assert_eq!(gamma(0.005).unwrap(), 1.0);
    assert_eq!(gamma(0.05).unwrap(), 1.0);
    assert!(rel(gamma(0.5).unwrap(), 0.999_702_509_398_441_708) < 1e-15);
    assert!(rel(gamma(1.0).unwrap(), 0.985_938_519_902_807_924) < 1e-15);
    assert!(rel(gamma(4.0).unwrap(), 0.224_988_889_410_843_894) < 1e-14);
}

#[test]
fn phi_s_forward() {
    let m = MapInstance::phi_s(1.0).unwrap();
    assert!(rel(m.forward(0.5).unwrap(), -0.560_118_044_227_099_876) < 1e-14);
    let m = MapInstance::phi_s(0.05).unwrap();
    assert!(rel(m.forward(1e-3).unwrap(), -1.043_540_219_988_760_04) < 1e-14);
}

#[test]
fn phi_s_inverse() {
    let cases = [
        (0.05, -10.0, 4.112_220_938_778_581_95e-248),
        (0.1, -3.0, 1.641_810_581_855_341_01e-29),
        (1.0, -0.5, 0.548_521_267_353_930_591),
        (4.0, -40.0, 3.450_555_048_814_752_33e-14),
    ];
    for (a, s, x) in cases {
        let got = MapInstance::phi_s(a).unwrap().inverse(s).unwrap();
        assert!(rel(got, x) < 1e-12, "alpha {a}, s {s}: {got:e} vs {x:e}");
    }
}

#[test]
fn psi_s_values() {
    let m = MapInstance::psi_s(0.5).unwrap();
    assert!(rel(m.forward(0.25).unwrap(), -0.285_653_566_406_693_874) < 1e-14);
    let m = MapInstance::psi_s(0.05).unwrap();
    assert!(rel(m.forward(1e-4).unwrap(), -0.580_639_591_660_556_102) < 1e-14);
    let m = MapInstance::psi_s(0.3).unwrap();
    assert!(rel(m.inverse(-2.0).unwrap(), 1.439_054_629_951_816_27e-8) < 1e-12);
    let m = MapInstance::psi_s(1.0).unwrap();
    assert!(rel(m.inverse(0.7).unwrap(), 0.871_163_259_031_469_643) < 1e-14);
}

#[test]
fn resolution_constants() {
    assert!(rel(xi_r(1.0).unwrap(), 1.595_483_063_117_015_60) < 1e-12);
    assert!(rel(xi_r(0.05).unwrap(), 1.922_975_225_296_705_04) < 1e-12);
    assert!((b_alpha(0.5).unwrap() - 0.917_152_335_667_274_346).abs() < 1e-10);
    assert!(rel(phi_s_parabola_cap(1.0).unwrap(), 0.418_367_274_797_242_289) < 1e-14);

    let grow = |alpha, c| ParameterRegime::FixedAlphaGrowingL {
        alpha,
        c,
        exponent: None,
    };
    let cases = [
        (MapFamily::PhiE, grow(None, 0.15), 1.066_215_246_900_291_54),
        (MapFamily::PsiE, grow(None, 0.3), 0.222_066_099_024_510_569),
        (MapFamily::PhiS, grow(Some(1.0), 0.5), 4.333_159_021_079_108_35),
        (MapFamily::PsiS, grow(Some(0.5), 0.3), 2.988_719_787_602_653_59),
    ];
    for (fam, regime, want) in cases {
        let got = predict_ppw(fam, &regime).unwrap().coefficient;
        assert!(rel(got, want) < 1e-12, "{fam}: {got} vs {want}");
    }
}

#[test]
fn tolerance_schedule() {
    let r = ParameterRegime::ToleranceDriven {
        sigma: 3.5,
        p: 2.0 / 3.0,
        epsilon: 2f64.powi(-52),
    };
    let s = params_for(&r, MapFamily::PhiS, 100).unwrap();
    assert!(rel(s.alpha.unwrap(), 0.271_787_940_259_497_464) < 1e-14);
    assert!(rel(s.length, 1.568_594_632_117_565_41) < 1e-14);
    let s = params_for(&r, MapFamily::PsiS, 100).unwrap();
    assert!(rel(s.length, 0.904_762_196_445_875_724) < 1e-14);
}
