use std::fmt;
use std::str::FromStr;

use crate::exactmath::{log_shift_series, PiRatio, Rational, Ring, TruncSeries};

use super::{brouncker_series_auto, lebesgue_w_difference, SeriesGenError};

/// Shape of each continued-fraction level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Template {
    /// `num_j / ((n+shift)² + den_j + …)`
    QuadraticCF,
    /// `num_j / (n + den_j + …)`
    LinearCF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Landau,
    Lebesgue,
    Euler,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Landau, Family::Lebesgue, Family::Euler];

    pub fn name(self) -> &'static str {
        match self {
            Family::Landau => "landau",
            Family::Lebesgue => "lebesgue",
            Family::Euler => "euler",
        }
    }

    pub fn shift(self) -> Rational {
        match self {
            Family::Landau => Rational::new(3, 4),
            Family::Lebesgue => Rational::from(1),
            Family::Euler => Rational::from(0),
        }
    }

    pub fn template(self) -> Template {
        match self {
            Family::Euler => Template::LinearCF,
            _ => Template::QuadraticCF,
        }
    }

    /// Factor multiplying the continued fraction: `1/π` for Landau.
    pub fn outer_scale(self) -> PiRatio {
        match self {
            Family::Landau => PiRatio::rational_times_pi_pow(&Rational::from(1), -1),
            _ => PiRatio::one(),
        }
    }

    /// Largest depth derived without the uncertified flag.
    pub fn certified_depth(self) -> usize {
        match self {
            Family::Landau => 5,
            Family::Lebesgue => 3,
            Family::Euler => 10,
        }
    }

    /// Exponent `s` in `E_k(n) ~ C_k n^{−s}`.
    pub fn limit_exponent(self, depth: usize) -> i64 {
        let k = depth as i64;
        match self.template() {
            Template::QuadraticCF => 4 * k + 2,
            Template::LinearCF => 2 * k + 1,
        }
    }

    /// Number of Lebesgue expansion terms used at a given depth.
    pub fn lebesgue_terms(depth: usize) -> usize {
        2 * depth + 1
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown family {0:?} (expected landau, lebesgue or euler)")]
pub struct ParseFamilyError(pub String);

impl FromStr for Family {
    type Err = ParseFamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "landau" => Ok(Family::Landau),
            "lebesgue" => Ok(Family::Lebesgue),
            "euler" | "euler-mascheroni" | "gamma" => Ok(Family::Euler),
            _ => Err(ParseFamilyError(s.to_string())),
        }
    }
}

/// `π·[E₀(n) − E₀(n+1)]` for the Landau family,
/// `−q(n+1) + ln(n+7/4) − ln(n+3/4)`, with `q` replaced by a certified truncation.
pub fn landau_difference(order: i64) -> TruncSeries<Rational> {
    let (_, q) = brouncker_series_auto(order);
    log_shift_series(&Rational::new(3, 4), &Rational::new(7, 4), order).sub(&q)
}

/// `E₀(n) − E₀(n+1) = ln(1+x) − x/(1+x)` for the Euler family.
pub fn euler_difference(order: i64) -> TruncSeries<Rational> {
    TruncSeries::from_fn(0, order, |m| {
        if m < 2 {
            return Rational::default();
        }
        let c = Rational::new(1, m) - Rational::from(1);
        if m % 2 == 0 {
            -c
        } else {
            c
        }
    })
}

/// Exact series of `v(n) − v(n+1) − [MC₀(n) − MC₀(n+1)]` through `x^order`.
///
/// The Landau series is returned π-scaled; the `1/π` lives in
/// [`Family::outer_scale`].
pub fn difference_series(family: Family, order: i64) -> Result<TruncSeries<PiRatio>, SeriesGenError> {
    Ok(match family {
        Family::Landau => landau_difference(order).map(|c| PiRatio::from(c)),
        Family::Euler => euler_difference(order).map(|c| PiRatio::from(c)),
        Family::Lebesgue => {
            let m = ((order - 1).max(2) / 2) as usize;
            lebesgue_w_difference(m).truncate(order)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_leading_terms() {
        let d = euler_difference(3);
        assert_eq!(d.coeff(2).unwrap(), Rational::new(1, 2));
        assert_eq!(d.coeff(3).unwrap(), Rational::new(-2, 3));
    }

    #[test]
    fn family_roundtrip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("fourier".parse::<Family>().is_err());
    }
}
