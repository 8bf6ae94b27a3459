//! Power-law model and its densities and tail functions.
//!
//! Discrete tail convention: `ccdf_discrete(x) = Pr(X >= x) = ζ(α, x) / ζ(α, xmin)`,
//! so that `cdf_discrete(x) = Pr(X <= x) = 1 - ccdf_discrete(x + 1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zeta::hurwitz_zeta_scaled;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Discrete,
    Continuous,
}

/// A power law with scaling parameter `alpha` above the lower bound `xmin`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawModel {
    alpha: f64,
    xmin: f64,
    kind: ModelKind,
}

impl PowerLawModel {
    pub fn discrete(alpha: f64, xmin: u64) -> Result<Self> {
        check_alpha(alpha)?;
        if xmin == 0 {
            return Err(Error::Domain("discrete xmin must be >= 1".into()));
        }
        Ok(PowerLawModel {
            alpha,
            xmin: xmin as f64,
            kind: ModelKind::Discrete,
        })
    }

    pub fn continuous(alpha: f64, xmin: f64) -> Result<Self> {
        check_alpha(alpha)?;
        if !(xmin.is_finite() && xmin > 0.0) {
            return Err(Error::Domain(format!("xmin must be > 0, got {xmin}")));
        }
        Ok(PowerLawModel {
            alpha,
            xmin,
            kind: ModelKind::Continuous,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn xmin(&self) -> f64 {
        self.xmin
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// Integer lower bound of a discrete model.
    pub fn discrete_xmin(&self) -> Result<u64> {
        match self.kind {
            ModelKind::Discrete => Ok(self.xmin as u64),
            ModelKind::Continuous => {
                Err(Error::Domain("operation requires a discrete model".into()))
            }
        }
    }

    fn continuous_only(&self) -> Result<()> {
        match self.kind {
            ModelKind::Continuous => Ok(()),
            ModelKind::Discrete => Err(Error::Domain(
                "operation requires a continuous model".into(),
            )),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must be > 1, got {alpha}")))
    }
}

fn check_support(x: u64, xmin: u64) -> Result<()> {
    if x < xmin {
        Err(Error::Domain(format!("x = {x} lies below xmin = {xmin}")))
    } else {
        Ok(())
    }
}

/// Probability mass `x^{-α} / ζ(α, xmin)`.
pub fn pmf(model: &PowerLawModel, x: u64) -> Result<f64> {
    let xmin = model.discrete_xmin()?;
    check_support(x, xmin)?;
    let scale = xmin as f64;
    let norm = hurwitz_zeta_scaled(model.alpha, scale, scale)?.value;
    Ok((x as f64 / scale).powf(-model.alpha) / norm)
}

/// `Pr(X >= x) = ζ(α, x) / ζ(α, xmin)`.
pub fn ccdf_discrete(model: &PowerLawModel, x: u64) -> Result<f64> {
    let xmin = model.discrete_xmin()?;
    check_support(x, xmin)?;
    if x == xmin {
        return Ok(1.0);
    }
    let scale = xmin as f64;
    let norm = hurwitz_zeta_scaled(model.alpha, scale, scale)?.value;
    Ok(hurwitz_zeta_scaled(model.alpha, x as f64, scale)?.value / norm)
}

/// `Pr(X <= x) = 1 - ccdf_discrete(x + 1)`.
pub fn cdf_discrete(model: &PowerLawModel, x: u64) -> Result<f64> {
    Ok(1.0 - ccdf_discrete(model, x + 1)?)
}

/// Density `((α - 1) / xmin) (x / xmin)^{-α}` on `x >= xmin`.
pub fn pdf_continuous(model: &PowerLawModel, x: f64) -> Result<f64> {
    model.continuous_only()?;
    if x.is_nan() || x < model.xmin {
        return Err(Error::Domain(format!(
            "x = {x} lies below xmin = {}",
            model.xmin
        )));
    }
    Ok((model.alpha - 1.0) / model.xmin * (x / model.xmin).powf(-model.alpha))
}

/// Tail `(x / xmin)^{1 - α}` on `x >= xmin`.
pub fn ccdf_continuous(model: &PowerLawModel, x: f64) -> Result<f64> {
    model.continuous_only()?;
    if x.is_nan() || x < model.xmin {
        return Err(Error::Domain(format!(
            "x = {x} lies below xmin = {}",
            model.xmin
        )));
    }
    Ok((x / model.xmin).powf(1.0 - model.alpha))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn disc(alpha: f64, xmin: u64) -> PowerLawModel {
        PowerLawModel::discrete(alpha, xmin).unwrap()
    }

    fn cont(alpha: f64, xmin: f64) -> PowerLawModel {
        PowerLawModel::continuous(alpha, xmin).unwrap()
    }

    // ζ(s, q) by brute force: 10^6 terms plus the midpoint integral tail.
    fn zeta_oracle(s: f64, q: u64) -> f64 {
        let terms = 1_000_000u64;
        let mut sum = 0.0;
        for n in (0..terms).rev() {
            sum += ((q + n) as f64).powf(-s);
        }
        sum + ((q + terms) as f64 - 0.5).powf(1.0 - s) / (s - 1.0)
    }

    #[test]
    fn model_construction() {
        assert!(PowerLawModel::discrete(1.0, 3).is_err());
        assert!(PowerLawModel::discrete(2.0, 0).is_err());
        assert!(PowerLawModel::continuous(2.0, 0.0).is_err());
        assert!(PowerLawModel::continuous(f64::NAN, 1.0).is_err());
        let m = disc(2.5, 7);
        assert_eq!(m.discrete_xmin().unwrap(), 7);
        assert!(cont(2.5, 7.0).discrete_xmin().is_err());
    }

    #[test]
    fn pmf_values() {
        let base = 6.0 / (PI * PI);
        assert!((pmf(&disc(2.0, 1), 1).unwrap() - base).abs() < 1e-12);
        assert!((pmf(&disc(2.0, 1), 2).unwrap() - base / 4.0).abs() < 1e-12);

        let oracle = 2f64.powf(-3.0) / zeta_oracle(3.0, 2);
        let got = pmf(&disc(3.0, 2), 2).unwrap();
        assert!((got - oracle).abs() < 1e-10);
        assert!((got - 0.61864).abs() < 1e-5);

        assert!(matches!(pmf(&disc(2.0, 5), 4), Err(Error::Domain(_))));
        assert!(pmf(&cont(2.0, 5.0), 5).is_err());
    }

    #[test]
    fn ccdf_discrete_values() {
        assert_eq!(ccdf_discrete(&disc(3.7, 12), 12).unwrap(), 1.0);
        let expected = (PI * PI / 6.0 - 1.0) / (PI * PI / 6.0);
        assert!((ccdf_discrete(&disc(2.0, 1), 2).unwrap() - expected).abs() < 1e-12);

        let oracle = zeta_oracle(3.0, 5) / zeta_oracle(3.0, 2);
        let got = ccdf_discrete(&disc(3.0, 2), 5).unwrap();
        assert!(got > 0.0 && got < 1.0);
        assert!((got - oracle).abs() < 1e-10);

        assert!(ccdf_discrete(&disc(2.0, 3), 2).is_err());
    }

    #[test]
    fn cdf_complements_ccdf() {
        let m = disc(2.2, 4);
        assert!((cdf_discrete(&m, 4).unwrap() - pmf(&m, 4).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn continuous_values() {
        assert_eq!(pdf_continuous(&cont(2.0, 1.0), 1.0).unwrap(), 1.0);
        assert!((pdf_continuous(&cont(3.0, 2.0), 4.0).unwrap() - 0.125).abs() < 1e-15);
        assert_eq!(ccdf_continuous(&cont(2.4, 3.0), 3.0).unwrap(), 1.0);
        assert!((ccdf_continuous(&cont(2.0, 1.0), 10.0).unwrap() - 0.1).abs() < 1e-15);
        assert!((ccdf_continuous(&cont(3.0, 100.0), 200.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(pdf_continuous(&cont(2.0, 1.0), 0.5).is_err());
        assert!(ccdf_continuous(&cont(2.0, 1.0), 0.5).is_err());
        assert!(pdf_continuous(&disc(2.0, 1), 1.0).is_err());
    }

    // Composite Simpson after x = xmin / u², mapping [xmin, ∞) onto (0, 1].
    #[test]
    fn continuous_pdf_normalizes() {
        for &(alpha, xmin) in &[(2.0, 1.0), (3.0, 2.0), (2.5, 10.0)] {
            let m = cont(alpha, xmin);
            let f = |u: f64| {
                if u == 0.0 {
                    return 0.0;
                }
                let x = xmin / (u * u);
                pdf_continuous(&m, x).unwrap() * 2.0 * xmin / (u * u * u)
            };
            let steps = 2000;
            let h = 1.0 / steps as f64;
            let mut total = f(0.0) + f(1.0);
            for i in 1..steps {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                total += w * f(i as f64 * h);
            }
            total *= h / 3.0;
            assert!((total - 1.0).abs() < 1e-9, "alpha={alpha}: {total}");
        }
    }

    #[test]
    fn strictly_decreasing() {
        let m = disc(2.5, 3);
        let mut last_p = f64::INFINITY;
        let mut last_c = f64::INFINITY;
        for x in 3..200 {
            let p = pmf(&m, x).unwrap();
            let c = ccdf_discrete(&m, x).unwrap();
            assert!(p < last_p && c < last_c);
            last_p = p;
            last_c = c;
        }
        let mc = cont(2.5, 3.0);
        let mut last = f64::INFINITY;
        for i in 0..200 {
            let c = ccdf_continuous(&mc, 3.0 + i as f64 * 0.7).unwrap();
            assert!(c < last);
            last = c;
        }
    }
}
