//! Parameter schedules `(alpha, L)` as functions of the degree `n`, and the
//! convergence envelopes they are predicted to achieve.

use std::f64::consts::PI;

use crate::approximant::TransplantSpec;
use crate::error::{domain, Error, Result, ALPHA_FLOOR};
use crate::maps::{gamma, DomainKind, MapFamily, MapInstance};

/// How `alpha` and `L` move with `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParameterRegime {
    /// `alpha` fixed, `L = c n^(2/3)` on the semi-infinite maps and
    /// `L = c n^(1/2)` on the infinite ones. `exponent`, when given, must be
    /// the one matching the family.
    FixedAlphaGrowingL {
        alpha: Option<f64>,
        c: f64,
        exponent: Option<f64>,
    },
    /// `alpha = alpha0 / sqrt(n)`, `L = 1 + L0` (`PhiS`) or `1/2 + L0` (`PsiS`).
    FixedLShrinkingAlpha { alpha0: f64, l0: f64 },
    /// `alpha = sigma |log eps| n^(p-2)` with `L -> 1` (`PhiS`) or
    /// `L -> 1/2` (`PsiS`); converges down to an accuracy of order `eps`.
    ToleranceDriven { sigma: f64, p: f64, epsilon: f64 },
}

impl ParameterRegime {
    pub fn tag(&self) -> &'static str {
        match self {
            ParameterRegime::FixedAlphaGrowingL { .. } => "grow-l",
            ParameterRegime::FixedLShrinkingAlpha { .. } => "fixed-l",
            ParameterRegime::ToleranceDriven { .. } => "tolerance",
        }
    }

    /// Checks parameter ranges and compatibility with `family`.
    pub fn validate(&self, family: MapFamily) -> Result<()> {
        let incompatible = |reason: &str| Error::IncompatibleRegime {
            regime: self.tag(),
            map: family.tag(),
            reason: reason.to_string(),
        };
        match *self {
            ParameterRegime::FixedAlphaGrowingL { alpha, c, exponent } => {
                positive("c", c)?;
                let natural = growth_exponent(family);
                if let Some(e) = exponent {
                    if (e - natural).abs() > 1e-12 {
                        return Err(incompatible(&format!(
                            "L must grow like n^{natural:.4} for this map, not n^{e}"
                        )));
                    }
                }
                if family.is_parameterised() {
                    let a = alpha.ok_or_else(|| incompatible("alpha is required"))?;
                    check_alpha(a)?;
                }
                Ok(())
            }
            ParameterRegime::FixedLShrinkingAlpha { alpha0, l0 } => {
                if !family.is_parameterised() {
                    return Err(incompatible("needs a slit-strip map"));
                }
                positive("alpha0", alpha0)?;
                positive("L0", l0)
            }
            ParameterRegime::ToleranceDriven { sigma, p, epsilon } => {
                if !family.is_parameterised() {
                    return Err(incompatible("needs a slit-strip map"));
                }
                positive("sigma", sigma)?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err(domain("p", p, "(0, 1]"));
                }
                if !(epsilon > 0.0 && epsilon < 1.0) {
                    return Err(domain("epsilon", epsilon, "(0, 1)"));
                }
                Ok(())
            }
        }
    }
}

fn positive(what: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(what, v, "(0, inf)"))
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    positive("alpha", alpha)?;
    if alpha < ALPHA_FLOOR {
        return Err(Error::AlphaFloorViolation { alpha });
    }
    Ok(())
}

/// Growth exponent of `L` in the fixed-alpha regime.
pub fn growth_exponent(family: MapFamily) -> f64 {
    match family.domain() {
        DomainKind::SemiInfinite => 2.0 / 3.0,
        DomainKind::Infinite => 0.5,
    }
}

fn pow_growth(family: MapFamily, n: f64) -> f64 {
    match family.domain() {
        DomainKind::SemiInfinite => (n * n).cbrt(),
        DomainKind::Infinite => n.sqrt(),
    }
}

/// The schedule evaluated at one `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub alpha: Option<f64>,
    pub length: f64,
}

/// `(alpha, L)` for degree `n`.
pub fn params_for(regime: &ParameterRegime, family: MapFamily, n: usize) -> Result<Schedule> {
    regime.validate(family)?;
    if n == 0 {
        return Err(domain("n", 0.0, "positive integers"));
    }
    let schedule = raw_schedule(regime, family, n as f64);
    if let Some(a) = schedule.alpha {
        check_alpha(a)?;
    }
    Ok(schedule)
}

/// `L` at degree `n` without the alpha floor check, for studying where a
/// schedule is heading beyond the degrees it can actually be used at.
pub fn length_at(regime: &ParameterRegime, family: MapFamily, n: f64) -> Result<f64> {
    regime.validate(family)?;
    if !(n > 0.0) {
        return Err(domain("n", n, "(0, inf)"));
    }
    Ok(raw_schedule(regime, family, n).length)
}

fn raw_schedule(regime: &ParameterRegime, family: MapFamily, nf: f64) -> Schedule {
    match *regime {
        ParameterRegime::FixedAlphaGrowingL { alpha, c, .. } => Schedule {
            alpha: if family.is_parameterised() { alpha } else { None },
            length: c * pow_growth(family, nf),
        },
        ParameterRegime::FixedLShrinkingAlpha { alpha0, l0 } => Schedule {
            alpha: Some(alpha0 / nf.sqrt()),
            length: limit_length(family) + l0,
        },
        ParameterRegime::ToleranceDriven { sigma, p, epsilon } => {
            let log_eps = -epsilon.ln();
            let alpha = sigma * log_eps * nf.powf(p - 2.0);
            let excess = sigma * sigma * nf.powf(2.0 * p - 2.0);
            let length = match family {
                MapFamily::PhiS => 1.0 + excess,
                _ => (0.25 + excess).sqrt(),
            };
            Schedule {
                alpha: Some(alpha),
                length,
            }
        }
    }
}

/// Limit of `L` under the tolerance-driven schedule, and the offset that
/// `L0` is added to under the shrinking-alpha one.
pub fn limit_length(family: MapFamily) -> f64 {
    match family.domain() {
        DomainKind::SemiInfinite => 1.0,
        DomainKind::Infinite => 0.5,
    }
}

/// A map family paired with a parameter schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scheme {
    pub family: MapFamily,
    pub regime: ParameterRegime,
}

impl Scheme {
    pub fn new(family: MapFamily, regime: ParameterRegime) -> Result<Self> {
        regime.validate(family)?;
        Ok(Scheme { family, regime })
    }

    pub fn schedule(&self, n: usize) -> Result<Schedule> {
        params_for(&self.regime, self.family, n)
    }

    pub fn spec(&self, n: usize) -> Result<TransplantSpec> {
        let s = self.schedule(n)?;
        let map = MapInstance::new(self.family, s.alpha)?;
        TransplantSpec::new(map, s.length, n)
    }

    /// Largest `n` (up to `cap`) for which the schedule keeps `alpha` above
    /// the floor. The schedules only ever shrink `alpha` as `n` grows.
    pub fn max_degree(&self, cap: usize) -> usize {
        if self.schedule(cap).is_ok() {
            return cap;
        }
        let (mut lo, mut hi) = (0usize, cap);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.schedule(mid).is_ok() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// Analyticity data of the function being approximated. Fields are optional
/// because each prediction needs only some of them; `f64::INFINITY` means
/// "no restriction".
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AnalyticityProfile {
    /// Parameter of the parabolic region `Re z < d/2 - (Im z)^2 / (2d)`.
    pub d: Option<f64>,
    /// Hölder exponent at the singular endpoint(s).
    pub tau: Option<f64>,
    /// Half-width of the strip of analyticity.
    pub beta: Option<f64>,
}

impl AnalyticityProfile {
    pub fn new(d: Option<f64>, tau: Option<f64>, beta: Option<f64>) -> Result<Self> {
        for (name, v) in [("d", d), ("tau", tau), ("beta", beta)] {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return Err(domain(name, v, "(0, inf]"));
                }
            }
        }
        Ok(AnalyticityProfile { d, tau, beta })
    }

    fn need(v: Option<f64>, name: &'static str) -> Result<f64> {
        v.ok_or(Error::MissingProfileField(name))
    }
}

/// Predicted error envelope `C^(-n^index)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergencePrediction {
    pub base: f64,
    pub index: f64,
    /// Set when an analyticity parameter exceeded what the map allows and was
    /// reduced to the cap.
    pub clamped: bool,
}

impl ConvergencePrediction {
    /// `-log C`, the slope of `log error` against `n^index`.
    pub fn log_slope(&self) -> f64 {
        -self.base.ln()
    }

    pub fn envelope(&self, n: usize) -> f64 {
        (-self.base.ln() * (n as f64).powf(self.index)).exp()
    }
}

/// Largest admissible `d` for `PhiS` with fixed `alpha`,
/// `-gamma + sqrt(gamma^2 + alpha^2)`.
pub fn phi_s_parabola_cap(alpha: f64) -> Result<f64> {
    let g = gamma(alpha)?;
    let r = (g * g + alpha * alpha).sqrt();
    Ok(if g > 0.0 { alpha * alpha / (g + r) } else { r - g })
}

fn min_exp(a: f64, b: f64) -> f64 {
    a.min(b).exp()
}

/// Convergence base `C` and index for `regime` applied to `family` and a
/// function with the given analyticity profile.
pub fn predicted_c(
    regime: &ParameterRegime,
    family: MapFamily,
    profile: &AnalyticityProfile,
) -> Result<ConvergencePrediction> {
    regime.validate(family)?;
    let need = AnalyticityProfile::need;
    let mut clamped = false;
    let (base, index) = match (*regime, family) {
        (ParameterRegime::FixedAlphaGrowingL { c, .. }, MapFamily::PhiE) => {
            let d = need(profile.d, "d")?;
            let tau = need(profile.tau, "tau")?;
            (min_exp((2.0 * d / c).sqrt(), tau * c), 2.0 / 3.0)
        }
        (ParameterRegime::FixedAlphaGrowingL { alpha, c, .. }, MapFamily::PhiS) => {
            let alpha = alpha.expect("validated");
            let mut d = need(profile.d, "d")?;
            let tau = need(profile.tau, "tau")?;
            let cap = phi_s_parabola_cap(alpha)?;
            if d > cap {
                d = cap;
                clamped = true;
            }
            (min_exp((2.0 * d / c).sqrt(), PI * tau * c / alpha), 2.0 / 3.0)
        }
        (ParameterRegime::FixedAlphaGrowingL { c, .. }, MapFamily::PsiE) => {
            let mut beta = need(profile.beta, "beta")?;
            let tau = need(profile.tau, "tau")?;
            // The logistic inverse has poles at Im s = ±pi.
            if beta > PI {
                beta = PI;
                clamped = true;
            }
            (min_exp(beta / c, tau * c), 0.5)
        }
        (ParameterRegime::FixedAlphaGrowingL { alpha, c, .. }, MapFamily::PsiS) => {
            let alpha = alpha.expect("validated");
            let mut beta = need(profile.beta, "beta")?;
            let tau = need(profile.tau, "tau")?;
            if beta > alpha {
                beta = alpha;
                clamped = true;
            }
            (min_exp(beta / c, PI * tau * c / alpha), 0.5)
        }
        (ParameterRegime::FixedLShrinkingAlpha { alpha0, l0 }, MapFamily::PhiS) => {
            let tau = need(profile.tau, "tau")?;
            (min_exp(alpha0 / l0.sqrt(), PI * tau * l0 / alpha0), 0.5)
        }
        (ParameterRegime::FixedLShrinkingAlpha { alpha0, l0 }, MapFamily::PsiS) => {
            let tau = need(profile.tau, "tau")?;
            (
                min_exp(alpha0 / (l0 * (1.0 + l0)).sqrt(), PI * tau * l0 / alpha0),
                0.5,
            )
        }
        (ParameterRegime::ToleranceDriven { sigma, p, epsilon }, fam) => {
            let tau = need(profile.tau, "tau")?;
            let log_eps = -epsilon.ln();
            let rate = if fam == MapFamily::PsiS && p == 1.0 {
                PI * tau * ((0.25 + sigma * sigma).sqrt() - 0.5) / (sigma * log_eps)
            } else {
                PI * tau * sigma / log_eps
            };
            (rate.exp(), p)
        }
        _ => unreachable!("validate rejects the remaining combinations"),
    };
    Ok(ConvergencePrediction {
        base,
        index,
        clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grow(alpha: Option<f64>, c: f64) -> ParameterRegime {
        ParameterRegime::FixedAlphaGrowingL {
            alpha,
            c,
            exponent: None,
        }
    }

    #[test]
    fn growing_l_schedule() {
        let s = params_for(&grow(None, 0.15), MapFamily::PhiE, 1000).unwrap();
        assert!((s.length - 15.0).abs() < 1e-12);
        assert_eq!(s.alpha, None);
        let s = params_for(&grow(Some(1.0), 0.3), MapFamily::PsiS, 400).unwrap();
        assert!((s.length - 6.0).abs() < 1e-12);
        assert_eq!(s.alpha, Some(1.0));
    }

    #[test]
    fn exponent_must_match_family() {
        let r = ParameterRegime::FixedAlphaGrowingL {
            alpha: None,
            c: 0.3,
            exponent: Some(0.5),
        };
        assert!(matches!(
            params_for(&r, MapFamily::PhiE, 10),
            Err(Error::IncompatibleRegime { .. })
        ));
        assert!(params_for(&r, MapFamily::PsiE, 10).is_ok());
    }

    #[test]
    fn fixed_l_schedule() {
        let r = ParameterRegime::FixedLShrinkingAlpha {
            alpha0: 0.7,
            l0: 0.2,
        };
        let s = params_for(&r, MapFamily::PhiS, 49).unwrap();
        assert!((s.alpha.unwrap() - 0.1).abs() < 1e-15);
        assert!((s.length - 1.2).abs() < 1e-15);
        let s = params_for(&r, MapFamily::PsiS, 49).unwrap();
        assert!((s.length - 0.7).abs() < 1e-15);
        assert!(params_for(&r, MapFamily::PhiE, 49).is_err());
        for n in [1, 7, 100, 5000] {
            let s = params_for(&r, MapFamily::PhiS, n).unwrap();
            assert!((s.alpha.unwrap() * (n as f64).sqrt() - 0.7).abs() < 1e-14);
            assert_eq!(s.length, 1.0 + 0.2);
        }
    }

    #[test]
    fn floor_violation() {
        let r = ParameterRegime::FixedLShrinkingAlpha {
            alpha0: 0.5,
            l0: 0.2,
        };
        assert!(params_for(&r, MapFamily::PhiS, 10_000).is_ok());
        assert!(matches!(
            params_for(&r, MapFamily::PhiS, 10_001),
            Err(Error::AlphaFloorViolation { .. })
        ));
        let scheme = Scheme::new(MapFamily::PhiS, r).unwrap();
        assert_eq!(scheme.max_degree(1_000_000), 10_000);
        assert_eq!(scheme.max_degree(500), 500);
    }

    #[test]
    fn missing_profile_fields() {
        let p = AnalyticityProfile::new(None, Some(0.5), None).unwrap();
        assert_eq!(
            predicted_c(&grow(None, 0.15), MapFamily::PhiE, &p),
            Err(Error::MissingProfileField("d"))
        );
        assert!(AnalyticityProfile::new(Some(-1.0), None, None).is_err());
    }

    #[test]
    fn phi_e_prediction() {
        let p = AnalyticityProfile::new(Some(0.5), Some(0.5), None).unwrap();
        let c = predicted_c(&grow(None, 0.15), MapFamily::PhiE, &p).unwrap();
        assert!((c.base - 0.075f64.exp()).abs() < 1e-15);
        assert!((c.base - 1.077_884).abs() < 1e-6);
        assert_eq!(c.index, 2.0 / 3.0);
        assert!(!c.clamped);
    }

    #[test]
    fn phi_s_clamps_d() {
        let p = AnalyticityProfile::new(Some(f64::INFINITY), Some(0.5), None).unwrap();
        let c = predicted_c(&grow(Some(1.0), 2.7), MapFamily::PhiS, &p).unwrap();
        assert!(c.clamped);
        let cap = phi_s_parabola_cap(1.0).unwrap();
        assert!((c.base - (2.0 * cap / 2.7).sqrt().exp()).abs() < 1e-15);
    }

    #[test]
    fn infinite_tau_drops_endpoint_branch() {
        let p = AnalyticityProfile::new(Some(0.5), Some(f64::INFINITY), None).unwrap();
        let c = predicted_c(&grow(None, 0.15), MapFamily::PhiE, &p).unwrap();
        assert!((c.base - (2.0 * 0.5 / 0.15f64).sqrt().exp()).abs() < 1e-12);
    }
}
