//! Least-squares scaling fits of convergence time against graph size.

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, GgmError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalingModel {
    /// ln T = a + b ln n
    Power,
    /// T = a + b ln n
    Log,
    /// T = a + b ln ln n
    LogLog,
    /// ln T = a + b n/2
    ExpHalfN,
}

impl ScalingModel {
    pub fn name(self) -> &'static str {
        match self {
            ScalingModel::Power => "power",
            ScalingModel::Log => "log",
            ScalingModel::LogLog => "loglog",
            ScalingModel::ExpHalfN => "exp_half_n",
        }
    }

    fn transform(self, n: f64, t: f64) -> Result<(f64, f64)> {
        let log_t = || {
            if t > 0.0 {
                Ok(t.ln())
            } else {
                invalid(format!("{} fit needs T > 0, got {t}", self.name()))
            }
        };
        match self {
            ScalingModel::Power => {
                if n <= 0.0 {
                    return invalid("power fit needs n > 0");
                }
                Ok((n.ln(), log_t()?))
            }
            ScalingModel::Log => {
                if n <= 0.0 {
                    return invalid("log fit needs n > 0");
                }
                Ok((n.ln(), t))
            }
            ScalingModel::LogLog => {
                if n <= 1.0 {
                    return invalid("loglog fit needs n > 1");
                }
                Ok((n.ln().ln(), t))
            }
            ScalingModel::ExpHalfN => Ok((n / 2.0, log_t()?)),
        }
    }
}

impl fmt::Display for ScalingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalingModel {
    type Err = GgmError;

    fn from_str(s: &str) -> Result<Self> {
        [ScalingModel::Power, ScalingModel::Log, ScalingModel::LogLog, ScalingModel::ExpHalfN]
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| GgmError::InvalidArgument(format!("unknown scaling model '{s}'")))
    }
}

/// Straight-line fit `y = intercept + slope * x` in the model's transformed
/// coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingFit {
    pub model: ScalingModel,
    pub intercept: f64,
    /// The exponent for power fits.
    pub slope: f64,
    pub r_squared: f64,
    /// Root-mean-square residual in transformed coordinates. Log and loglog
    /// both leave T untransformed, so their residuals compare directly.
    pub residual: f64,
}

pub fn fit_scaling(points: &[(f64, f64)], model: ScalingModel) -> Result<ScalingFit> {
    if points.len() < 3 {
        return invalid(format!("a scaling fit needs at least 3 points, got {}", points.len()));
    }
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|&(n, t)| model.transform(n, t))
        .collect::<Result<_>>()?;
    let len = xy.len() as f64;
    let mean_x = xy.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = xy.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx <= f64::EPSILON * len * mean_x.abs().max(1.0) {
        return invalid("degenerate design: all sizes are equal");
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = xy
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(ScalingFit {
        model,
        intercept,
        slope,
        r_squared,
        residual: (ss_res / len).sqrt(),
    })
}
