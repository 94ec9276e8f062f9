use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
    /// Arbitrary strictly increasing values.
    Custom,
}

/// Non-negative, strictly increasing analysis frequencies (GHz).
///
/// Spectra are even in the frequency, so negative values are never needed.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    values: Vec<f64>,
    spacing: Spacing,
}

impl FrequencyGrid {
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        Self::checked(values, Spacing::Custom)
    }

    pub fn linear(min: f64, max: f64, points: usize) -> Result<Self> {
        if points < 2 || !(max > min) {
            return Err(Error::InvalidGrid(format!(
                "linear grid needs max > min and at least 2 points (got {min}..{max}, {points})"
            )));
        }
        let step = (max - min) / (points - 1) as f64;
        let mut v: Vec<f64> = (0..points).map(|i| min + step * i as f64).collect();
        v[points - 1] = max;
        Self::checked(v, Spacing::Linear)
    }

    pub fn log(min: f64, max: f64, points: usize) -> Result<Self> {
        if points < 2 || !(min > 0.0) || !(max > min) {
            return Err(Error::InvalidGrid(format!(
                "log grid needs 0 < min < max and at least 2 points (got {min}..{max}, {points})"
            )));
        }
        let (lo, hi) = (min.log10(), max.log10());
        let step = (hi - lo) / (points - 1) as f64;
        let mut v: Vec<f64> = (0..points)
            .map(|i| 10f64.powf(lo + step * i as f64))
            .collect();
        v[0] = min;
        v[points - 1] = max;
        Self::checked(v, Spacing::Log)
    }

    /// 2000 log-spaced points over 0.01..1000 GHz with zero prepended.
    pub fn standard() -> Self {
        let log = Self::log(0.01, 1000.0, 2000).expect("static grid");
        let mut v = Vec::with_capacity(2001);
        v.push(0.0);
        v.extend_from_slice(&log.values);
        FrequencyGrid { values: v, spacing: Spacing::Log }
    }

    fn checked(values: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidGrid("empty".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidGrid("values must be finite and >= 0".into()));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid("values must be strictly increasing".into()));
        }
        Ok(FrequencyGrid { values, spacing })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_grid_shape() {
        let g = FrequencyGrid::standard();
        assert_eq!(g.len(), 2001);
        assert_eq!(g.values()[0], 0.0);
        assert_eq!(g.values()[1], 0.01);
        assert_eq!(*g.values().last().unwrap(), 1000.0);
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(FrequencyGrid::from_values(vec![1.0, 1.0]).is_err());
        assert!(FrequencyGrid::from_values(vec![-1.0, 1.0]).is_err());
        assert!(FrequencyGrid::from_values(vec![]).is_err());
        assert!(FrequencyGrid::log(0.0, 1.0, 10).is_err());
        assert!(FrequencyGrid::linear(1.0, 1.0, 10).is_err());
    }

    #[test]
    fn linear_endpoints() {
        let g = FrequencyGrid::linear(0.0, 10.0, 11).unwrap();
        assert_eq!(g.values()[3], 3.0);
        assert_eq!(g.spacing(), Spacing::Linear);
    }
}
