//! Closed-form conformal maps from `[0, 1]` onto a semi-infinite or infinite
//! interval, and their inverses.
//!
//! * `PhiE`: `log x`, taking `(0, 1]` onto `(-inf, 0]`.
//! * `PhiS`: the slit-strip map, `(alpha/pi) log(exp(pi x/alpha) - 1) - gamma`.
//! * `PsiE`: `log(x / (1 - x))`, taking `(0, 1)` onto the real line.
//! * `PsiS`: the two-slit-strip map.
//!
//! Every expression of the form `exp(pi * t / alpha)` is rearranged so that
//! the exponentiated argument is never large and positive, and `exp(u) - 1`,
//! `log(1 + u)` go through `exp_m1` / `ln_1p`. This keeps the slit-strip maps
//! accurate down to [`ALPHA_FLOOR`].

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result, ALPHA_FLOOR};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapFamily {
    PhiE,
    PhiS,
    PsiE,
    PsiS,
}

/// Shape of the transformed domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainKind {
    /// `(0, 1]` onto `(-inf, 0]`.
    SemiInfinite,
    /// `(0, 1)` onto `(-inf, inf)`.
    Infinite,
}

impl MapFamily {
    pub const ALL: [MapFamily; 4] = [
        MapFamily::PhiE,
        MapFamily::PhiS,
        MapFamily::PsiE,
        MapFamily::PsiS,
    ];

    pub fn domain(self) -> DomainKind {
        match self {
            MapFamily::PhiE | MapFamily::PhiS => DomainKind::SemiInfinite,
            MapFamily::PsiE | MapFamily::PsiS => DomainKind::Infinite,
        }
    }

    /// Whether the family carries a strip half-width parameter.
    pub fn is_parameterised(self) -> bool {
        matches!(self, MapFamily::PhiS | MapFamily::PsiS)
    }

    pub fn tag(self) -> &'static str {
        match self {
            MapFamily::PhiE => "phi-e",
            MapFamily::PhiS => "phi-s",
            MapFamily::PsiE => "psi-e",
            MapFamily::PsiS => "psi-s",
        }
    }
}

impl fmt::Display for MapFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for MapFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapFamily::ALL
            .into_iter()
            .find(|m| m.tag() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown map `{s}` (phi-e|phi-s|psi-e|psi-s)")))
    }
}

/// A fully specified map: family plus strip half-width where applicable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapInstance {
    family: MapFamily,
    alpha: Option<f64>,
    gamma: f64,
}

impl MapInstance {
    /// Builds a map instance. `alpha` is required for the slit-strip families
    /// and ignored otherwise.
    pub fn new(family: MapFamily, alpha: Option<f64>) -> Result<Self> {
        if !family.is_parameterised() {
            return Ok(MapInstance {
                family,
                alpha: None,
                gamma: 0.0,
            });
        }
        let alpha = alpha.ok_or_else(|| {
            Error::Invalid(format!("map {family} requires a strip half-width alpha"))
        })?;
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(domain("alpha", alpha, "(0, inf)"));
        }
        if alpha < ALPHA_FLOOR {
            return Err(Error::AlphaFloorViolation { alpha });
        }
        let gamma = if family == MapFamily::PhiS {
            gamma(alpha)?
        } else {
            0.0
        };
        Ok(MapInstance {
            family,
            alpha: Some(alpha),
            gamma,
        })
    }

    pub fn phi_e() -> Self {
        MapInstance {
            family: MapFamily::PhiE,
            alpha: None,
            gamma: 0.0,
        }
    }

    pub fn phi_s(alpha: f64) -> Result<Self> {
        Self::new(MapFamily::PhiS, Some(alpha))
    }

    pub fn psi_e() -> Self {
        MapInstance {
            family: MapFamily::PsiE,
            alpha: None,
            gamma: 0.0,
        }
    }

    pub fn psi_s(alpha: f64) -> Result<Self> {
        Self::new(MapFamily::PsiS, Some(alpha))
    }

    pub fn family(&self) -> MapFamily {
        self.family
    }

    pub fn domain(&self) -> DomainKind {
        self.family.domain()
    }

    pub fn alpha(&self) -> Option<f64> {
        self.alpha
    }

    /// Shift constant of `PhiS`; zero for the other families.
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Evaluates the map at `x`.
    pub fn forward(&self, x: f64) -> Result<f64> {
        match self.domain() {
            DomainKind::SemiInfinite if !(x > 0.0 && x <= 1.0) => {
                return Err(domain("x", x, "(0, 1]"))
            }
            DomainKind::Infinite if !(x > 0.0 && x < 1.0) => {
                return Err(domain("x", x, "(0, 1)"))
            }
            _ => {}
        }
        Ok(match self.family {
            MapFamily::PhiE => x.ln(),
            MapFamily::PhiS => {
                let a = self.alpha_unchecked();
                // (a/pi) log(e^u - 1) - gamma with u = pi x / a, after
                // factoring e^u out of both logarithms.
                x - 1.0 + a / PI * (log1mexp(PI * x / a) - log1mexp(PI / a))
            }
            MapFamily::PsiE => (x / (1.0 - x)).ln(),
            MapFamily::PsiS => {
                let a = self.alpha_unchecked();
                x - 0.5 + a / PI * (log1mexp(PI * x / a) - log1mexp(PI * (1.0 - x) / a))
            }
        })
    }

    /// Evaluates the inverse map at `s`.
    pub fn inverse(&self, s: f64) -> Result<f64> {
        if s.is_nan() {
            return Err(domain("s", s, "the real line"));
        }
        if self.domain() == DomainKind::SemiInfinite && s > 0.0 {
            return Err(domain("s", s, "(-inf, 0]"));
        }
        Ok(match self.family {
            MapFamily::PhiE => s.exp(),
            MapFamily::PhiS => {
                if s == 0.0 {
                    return Ok(1.0);
                }
                let a = self.alpha_unchecked();
                let shifted = s + self.gamma;
                let v = PI * shifted / a;
                let x = if v <= 0.0 {
                    a / PI * v.exp().ln_1p()
                } else {
                    shifted + a / PI * (-v).exp().ln_1p()
                };
                x.min(1.0)
            }
            MapFamily::PsiE => {
                if s <= 0.0 {
                    let e = s.exp();
                    e / (1.0 + e)
                } else {
                    1.0 / (1.0 + (-s).exp())
                }
            }
            MapFamily::PsiS => {
                if s > 0.0 {
                    1.0 - psi_s_inverse_nonpositive(self.alpha_unchecked(), -s)
                } else {
                    psi_s_inverse_nonpositive(self.alpha_unchecked(), s)
                }
            }
        })
    }

    /// Left truncation point `x_L = inverse(-L)`. For the infinite families
    /// the right point is `inverse(L) = 1 - x_L`.
    pub fn truncation_point(&self, length: f64) -> Result<f64> {
        if !(length >= 0.0) || !length.is_finite() {
            return Err(domain("L", length, "[0, inf)"));
        }
        self.inverse(-length)
    }

    fn alpha_unchecked(&self) -> f64 {
        self.alpha.expect("parameterised map without alpha")
    }
}

impl fmt::Display for MapInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alpha {
            Some(a) => write!(f, "{}(alpha={a})", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

/// `(alpha/pi) log((1 + e^a) / (1 + e^b))` for `s <= 0`, where
/// `a = pi(s + 1/2)/alpha` and `b = pi(s - 1/2)/alpha`. The ratio is written
/// as `1 + e^a (1 - e^(b - a)) / (1 + e^b)` so tiny results keep full
/// relative accuracy.
fn psi_s_inverse_nonpositive(alpha: f64, s: f64) -> f64 {
    let a = PI * (s + 0.5) / alpha;
    let b = PI * (s - 0.5) / alpha;
    let gap = -(-PI / alpha).exp_m1();
    alpha / PI * (a.exp() * gap / (1.0 + b.exp())).ln_1p()
}

/// Shift constant `gamma = (alpha/pi) log(exp(pi/alpha) - 1)` of the
/// slit-strip map, evaluated as `1 + (alpha/pi) log(1 - exp(-pi/alpha))`.
pub fn gamma(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || alpha.is_infinite() {
        return Err(domain("alpha", alpha, "(0, inf)"));
    }
    Ok(1.0 + alpha / PI * log1mexp(PI / alpha))
}

/// `log(1 - exp(-u))` for `u > 0`.
pub(crate) fn log1mexp(u: f64) -> f64 {
    if u <= LN_2 {
        (-(-u).exp_m1()).ln()
    } else {
        (-(-u).exp()).ln_1p()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_values() {
        assert_eq!(MapInstance::phi_e().forward(1.0).unwrap(), 0.0);
        for a in [0.005, 0.1, 1.0, 4.0, 10.0] {
            assert_eq!(MapInstance::phi_s(a).unwrap().forward(1.0).unwrap(), 0.0);
            assert_eq!(MapInstance::phi_s(a).unwrap().inverse(0.0).unwrap(), 1.0);
            assert_eq!(MapInstance::psi_s(a).unwrap().forward(0.5).unwrap(), 0.0);
        }
        assert_eq!(MapInstance::psi_e().forward(0.5).unwrap(), 0.0);
        assert_eq!(MapInstance::psi_e().inverse(0.0).unwrap(), 0.5);
        assert_eq!(MapInstance::psi_e().truncation_point(0.0).unwrap(), 0.5);
    }

    #[test]
    fn phi_e_inverse_is_exp() {
        let x = MapInstance::phi_e().inverse(-5.0).unwrap();
        assert!((x - 6.737_946_999_085_467e-3).abs() < 1e-18);
        assert_eq!(MapInstance::phi_e().truncation_point(5.0).unwrap(), x);
    }

    #[test]
    fn gamma_limits() {
        assert!((gamma(1e-3).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma(1e-6).unwrap() - 1.0).abs() < 1e-15);
        // e^{pi/alpha} = 2 makes the logarithm vanish.
        assert!(gamma(PI / LN_2).unwrap().abs() < 1e-15);
        assert!(gamma(0.0).is_err());
        assert!(gamma(-1.0).is_err());
        assert!(gamma(f64::NAN).is_err());
    }

    #[test]
    fn domain_errors() {
        let phi = MapInstance::phi_s(1.0).unwrap();
        let psi = MapInstance::psi_s(1.0).unwrap();
        assert!(phi.forward(0.0).is_err());
        assert!(phi.forward(1.0 + 1e-15).is_err());
        assert!(phi.forward(f64::NAN).is_err());
        assert!(phi.inverse(1e-300).is_err());
        assert!(psi.forward(1.0).is_err());
        assert!(psi.forward(0.0).is_err());
        assert!(psi.inverse(f64::NAN).is_err());
        assert!(phi.truncation_point(-1.0).is_err());
    }

    #[test]
    fn alpha_floor_enforced() {
        assert!(matches!(
            MapInstance::psi_s(0.004),
            Err(Error::AlphaFloorViolation { .. })
        ));
        assert!(MapInstance::phi_s(ALPHA_FLOOR).is_ok());
        assert!(MapInstance::new(MapFamily::PhiS, None).is_err());
        assert!(MapInstance::new(MapFamily::PhiE, Some(0.001)).is_ok());
    }

    #[test]
    fn tags_round_trip() {
        for m in MapFamily::ALL {
            assert_eq!(m.tag().parse::<MapFamily>().unwrap(), m);
        }
        assert!("phi".parse::<MapFamily>().is_err());
    }

    #[test]
    fn psi_s_symmetry() {
        let m = MapInstance::psi_s(0.3).unwrap();
        for i in 0..=200 {
            let s = -10.0 + 0.1 * i as f64;
            let sum = m.inverse(-s).unwrap() + m.inverse(s).unwrap();
            assert!((sum - 1.0).abs() <= 1e-13, "s = {s}");
        }
    }

    #[test]
    fn phi_s_truncation_point_matches_asymptotic() {
        let a = 0.5;
        let m = MapInstance::phi_s(a).unwrap();
        for l in [2.0, 4.0, 8.0] {
            let x = m.truncation_point(l).unwrap();
            let approx = a / PI * (PI * (-l + m.gamma()) / a).exp();
            assert!(x > 0.0);
            assert!(((x - approx) / x).abs() < 0.01, "L = {l}: {x} vs {approx}");
        }
    }
}
