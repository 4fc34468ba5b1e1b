//! Summary statistics over timing samples.

use statrs::distribution::{ContinuousCDF, StudentsT};

/// Summary of per-operation times, all in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub min: f64,
    pub avg: f64,
    pub max: f64,
    /// Half-width of the 95% confidence interval of the mean.
    pub error: f64,
    /// Sample standard deviation.
    pub stdev: f64,
}

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Sample standard deviation, two-pass.
pub fn stdev(samples: &[f64]) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(samples);
    let ss: f64 = samples.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (n - 1) as f64).sqrt()
}

/// Sample standard deviation, single pass (Welford).
pub fn stdev_online(samples: &[f64]) -> f64 {
    let (mut count, mut m, mut m2) = (0usize, 0.0f64, 0.0f64);
    for &x in samples {
        count += 1;
        let delta = x - m;
        m += delta / count as f64;
        m2 += delta * (x - m);
    }
    if count < 2 {
        0.0
    } else {
        (m2 / (count - 1) as f64).sqrt()
    }
}

/// Two-sided 95% Student t quantile for `n` samples.
pub fn t_quantile(n: usize) -> f64 {
    if n < 2 {
        return 0.0;
    }
    StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .map(|t| t.inverse_cdf(0.975))
        .unwrap_or(f64::NAN)
}

pub fn summarize(samples: &[f64]) -> Summary {
    assert!(!samples.is_empty(), "no samples to summarize");
    let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // clamp rounding so min <= avg <= max holds exactly
    let avg = mean(samples).clamp(min, max);
    let stdev = stdev(samples);
    let error = t_quantile(samples.len()) * stdev / (samples.len() as f64).sqrt();
    Summary {
        min,
        avg,
        max,
        error,
        stdev,
    }
}
