//! Closed-form uncertainties for the noise-mixed GHZ/W families and the
//! Kay states, together with the correlation-matrix spectra they come from.
//! These serve as oracles for the numerical pipeline.

use thiserror::Error;

use crate::states::Family;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parameter {value} outside the {family} domain [{lo}, {hi}]")]
pub struct ParamOutOfRange {
    pub family: AnalyticFamily,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
}

/// Families with a closed form. `Ghz4Class` covers GHZ₄, D₂,₄, Ψ_S,₄, the
/// cluster state and χ₄, which share one expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalyticFamily {
    Ghz3,
    W3,
    Kay,
    Ghz4Class,
    W4,
}

impl AnalyticFamily {
    pub fn for_family(f: Family) -> Option<Self> {
        match f {
            Family::Ghz3 => Some(Self::Ghz3),
            Family::W3 => Some(Self::W3),
            Family::Kay => Some(Self::Kay),
            Family::W4 => Some(Self::W4),
            Family::Ghz4 | Family::Dicke24 | Family::Singlet4 | Family::Cluster4 | Family::Chi4 => {
                Some(Self::Ghz4Class)
            }
            Family::Random => None,
        }
    }

    pub fn domain(self) -> (f64, f64) {
        match self {
            Self::Kay => (2.0, f64::INFINITY),
            _ => (0.0, 1.0),
        }
    }

    pub fn lqu(self, p: f64) -> Result<f64, ParamOutOfRange> {
        match self {
            Self::Ghz3 => lqu_ghz3(p),
            Self::W3 => lqu_w3(p),
            Self::Kay => lqu_kay(p),
            Self::Ghz4Class => lqu_ghz4_class(p),
            Self::W4 => lqu_w4(p),
        }
    }

    fn check(self, value: f64) -> Result<(), ParamOutOfRange> {
        let (lo, hi) = self.domain();
        if value.is_finite() && value >= lo && value <= hi {
            Ok(())
        } else {
            Err(ParamOutOfRange {
                family: self,
                value,
                lo,
                hi,
            })
        }
    }
}

impl std::fmt::Display for AnalyticFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Ghz3 => "ghz3",
            Self::W3 => "w3",
            Self::Kay => "kay",
            Self::Ghz4Class => "ghz4-class",
            Self::W4 => "w4",
        })
    }
}

/// Triply degenerate eigenvalue of the GHZ₃ correlation matrix.
pub fn ghz3_eigenvalue(alpha: f64) -> Result<f64, ParamOutOfRange> {
    AnalyticFamily::Ghz3.check(alpha)?;
    Ok((3.0 * alpha + (alpha * (8.0 - 7.0 * alpha)).sqrt()) / 4.0)
}

pub fn lqu_ghz3(alpha: f64) -> Result<f64, ParamOutOfRange> {
    Ok(1.0 - ghz3_eigenvalue(alpha)?)
}

/// Spectrum of the W₃ correlation matrix: `(w₁ = w₂, w₃)`.
pub fn w3_eigenvalues(beta: f64) -> Result<(f64, f64), ParamOutOfRange> {
    AnalyticFamily::W3.check(beta)?;
    let r = (beta * (8.0 - 7.0 * beta)).sqrt();
    Ok(((3.0 * beta + r) / 4.0, (1.0 + 6.0 * beta + 2.0 * r) / 9.0))
}

/// `(8 - 6β - 2√(β(8-7β))) / 9`, evaluated as `1 - max(w₁, w₃)` so that the
/// ordering of the spectrum is not assumed.
pub fn lqu_w3(beta: f64) -> Result<f64, ParamOutOfRange> {
    let (w1, w3) = w3_eigenvalues(beta)?;
    Ok(1.0 - w1.max(w3))
}

/// Spectrum of the Kay-state correlation matrix: `(k₁ = k₂, k₃)`.
pub fn kay_eigenvalues(gamma: f64) -> Result<(f64, f64), ParamOutOfRange> {
    AnalyticFamily::Kay.check(gamma)?;
    let g1 = gamma + 1.0;
    let k1 = 0.25
        * ((gamma + 2.0) / g1).sqrt()
        * (3.0 * ((gamma - 2.0) / g1).sqrt() + ((6.0 + gamma) / g1).sqrt());
    let k3 = (3.0 * gamma + 2.0 + ((gamma - 2.0) * (6.0 + gamma)).sqrt()) / (4.0 * g1);
    Ok((k1, k3))
}

/// `(2 + γ - √((γ-2)(6+γ))) / (4(1+γ))`.
///
/// Rationalized to `4 / ((1+γ)(2 + γ + √((γ-2)(6+γ))))`: the numerator of the
/// textbook form cancels catastrophically for large γ, where the value
/// decays like 2/γ².
pub fn lqu_kay(gamma: f64) -> Result<f64, ParamOutOfRange> {
    AnalyticFamily::Kay.check(gamma)?;
    let r = ((gamma - 2.0) * (6.0 + gamma)).sqrt();
    Ok(4.0 / ((1.0 + gamma) * (2.0 + gamma + r)))
}

/// Shared closed form for noisy GHZ₄, D₂,₄, Ψ_S,₄, cluster and χ₄ states.
pub fn lqu_ghz4_class(eta: f64) -> Result<f64, ParamOutOfRange> {
    AnalyticFamily::Ghz4Class.check(eta)?;
    Ok(1.0 - (7.0 * eta + (eta * (16.0 - 15.0 * eta)).sqrt()) / 8.0)
}

pub fn lqu_w4(eta: f64) -> Result<f64, ParamOutOfRange> {
    AnalyticFamily::W4.check(eta)?;
    Ok(1.0 - (8.0 + 21.0 * eta + 3.0 * (eta * (16.0 - 15.0 * eta)).sqrt()) / 32.0)
}
