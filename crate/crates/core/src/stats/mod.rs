//! Two-sample comparison statistics: group summaries, pooled and Welch
//! t-tests, and mean-centered Levene's test.
//!
//! Inputs are sorted before summation so results do not depend on the
//! order observations arrive in.

pub mod dist;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use dist::{f_sf, t_quantile, t_two_tailed};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub sd: f64,
    pub se_mean: f64,
}

impl GroupSummary {
    /// Build from published summary statistics.
    pub fn from_moments(n: usize, mean: f64, sd: f64) -> Result<GroupSummary> {
        if n < 2 {
            return Err(Error::TooFewObservations { needed: 2, got: n });
        }
        if !(sd >= 0.0) || !mean.is_finite() || !sd.is_finite() {
            return Err(Error::Invalid(format!("mean {mean}, sd {sd}")));
        }
        Ok(GroupSummary {
            n,
            mean,
            sd,
            se_mean: sd / (n as f64).sqrt(),
        })
    }

    pub fn variance(&self) -> f64 {
        self.sd * self.sd
    }
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

fn mean_of(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

pub fn summarize(values: &[f64]) -> Result<GroupSummary> {
    if values.len() < 2 {
        return Err(Error::TooFewObservations {
            needed: 2,
            got: values.len(),
        });
    }
    let values = sorted(values);
    let mean = mean_of(&values);
    let ss: f64 = values.iter().map(|x| (x - mean) * (x - mean)).sum();
    let sd = (ss / (values.len() - 1) as f64).sqrt();
    GroupSummary::from_moments(values.len(), mean, sd)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub t: f64,
    pub df: f64,
    #[serde(rename = "sig_2_tailed")]
    pub p_two_tailed: f64,
    #[serde(rename = "mean_difference")]
    pub mean_diff: f64,
    #[serde(rename = "std_error_difference")]
    pub se_diff: f64,
    pub ci95_lower: f64,
    pub ci95_upper: f64,
}

impl TTestResult {
    pub fn ci95(&self) -> (f64, f64) {
        (self.ci95_lower, self.ci95_upper)
    }

    fn from_parts(mean_diff: f64, se: f64, df: f64) -> TTestResult {
        let (t, p) = if se > 0.0 {
            let t = mean_diff / se;
            (t, t_two_tailed(t, df))
        } else if mean_diff == 0.0 {
            (0.0, 1.0)
        } else {
            (mean_diff.signum() * f64::INFINITY, 0.0)
        };
        let half_width = if se > 0.0 { t_quantile(0.975, df) * se } else { 0.0 };
        TTestResult {
            t,
            df,
            p_two_tailed: p,
            mean_diff,
            se_diff: se,
            ci95_lower: mean_diff - half_width,
            ci95_upper: mean_diff + half_width,
        }
    }
}

fn check_groups(g1: &GroupSummary, g2: &GroupSummary) -> Result<()> {
    for g in [g1, g2] {
        if g.n < 2 {
            return Err(Error::TooFewObservations { needed: 2, got: g.n });
        }
    }
    Ok(())
}

/// Student's t-test assuming equal variances.
///
/// With zero pooled variance the statistic degenerates: `t = 0, p = 1`
/// for equal means, otherwise `t = ±inf, p = 0`.
pub fn pooled_t_test(g1: &GroupSummary, g2: &GroupSummary) -> Result<TTestResult> {
    check_groups(g1, g2)?;
    let (n1, n2) = (g1.n as f64, g2.n as f64);
    let df = n1 + n2 - 2.0;
    let pooled_var = ((n1 - 1.0) * g1.variance() + (n2 - 1.0) * g2.variance()) / df;
    let se = pooled_var.sqrt() * (1.0 / n1 + 1.0 / n2).sqrt();
    Ok(TTestResult::from_parts(g1.mean - g2.mean, se, df))
}

/// Welch's t-test with Welch–Satterthwaite degrees of freedom.
///
/// When both variances are zero the df falls back to `n1 + n2 - 2`.
pub fn welch_t_test(g1: &GroupSummary, g2: &GroupSummary) -> Result<TTestResult> {
    check_groups(g1, g2)?;
    let (n1, n2) = (g1.n as f64, g2.n as f64);
    let v1 = g1.variance() / n1;
    let v2 = g2.variance() / n2;
    let se_sq = v1 + v2;
    let df = if se_sq > 0.0 {
        se_sq * se_sq / (v1 * v1 / (n1 - 1.0) + v2 * v2 / (n2 - 1.0))
    } else {
        n1 + n2 - 2.0
    };
    Ok(TTestResult::from_parts(g1.mean - g2.mean, se_sq.sqrt(), df))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeveneResult {
    #[serde(rename = "F")]
    pub f: f64,
    pub df1: f64,
    pub df2: f64,
    #[serde(rename = "sig")]
    pub p: f64,
}

/// Levene's test for equal variances, centered on group means.
///
/// One-way ANOVA on absolute deviations from each group's mean. If the
/// deviations have no within-group spread, `F` is 0 (no between-group
/// spread either) or infinite.
pub fn levene_test(raw1: &[f64], raw2: &[f64]) -> Result<LeveneResult> {
    for g in [raw1, raw2] {
        if g.len() < 2 {
            return Err(Error::TooFewObservations { needed: 2, got: g.len() });
        }
    }
    let deviations = |raw: &[f64]| -> Vec<f64> {
        let raw = sorted(raw);
        let m = mean_of(&raw);
        sorted(&raw.iter().map(|x| (x - m).abs()).collect::<Vec<_>>())
    };
    let groups = [deviations(raw1), deviations(raw2)];
    let total_n = (raw1.len() + raw2.len()) as f64;
    let k = groups.len() as f64;
    let group_means: Vec<f64> = groups.iter().map(|g| mean_of(g)).collect();
    let grand_mean = groups
        .iter()
        .zip(&group_means)
        .map(|(g, m)| g.len() as f64 * m)
        .sum::<f64>()
        / total_n;
    let between: f64 = groups
        .iter()
        .zip(&group_means)
        .map(|(g, m)| g.len() as f64 * (m - grand_mean).powi(2))
        .sum();
    let within: f64 = groups
        .iter()
        .zip(&group_means)
        .flat_map(|(g, m)| g.iter().map(move |z| (z - m).powi(2)))
        .sum();
    // deviations carry rounding error relative to the raw magnitudes;
    // sums of squares below that level are treated as exactly zero
    let scale = raw1.iter().chain(raw2).fold(0.0f64, |m, x| m.max(x.abs()));
    let noise = total_n * (64.0 * f64::EPSILON * scale).powi(2);
    let between = if between <= noise { 0.0 } else { between };
    let within = if within <= noise { 0.0 } else { within };
    let df1 = k - 1.0;
    let df2 = total_n - k;
    let f = if within > 0.0 {
        (between / df1) / (within / df2)
    } else if between > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(LeveneResult {
        f,
        df1,
        df2,
        p: f_sf(f, df1, df2),
    })
}
