//! Wall weights.
//!
//! Every geometric quantity is a finite sum of wall weights, so the only
//! arithmetic needed is addition, subtraction, halving and comparison.
//! Exact rationals make equality decidable; floats are accepted for
//! quick experiments but give no exactness guarantee.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// Scalar type usable as a wall weight.
pub trait Weight: Clone + Debug + PartialOrd + Num + Send + Sync + 'static {
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Parses `"p/q"`, `"p"`, or (for floats) a decimal literal.
    fn parse_weight(text: &str) -> Option<Self>;

    /// Canonical text form, round-trips through [`Weight::parse_weight`].
    fn render(&self) -> String;

    /// True when arithmetic on this type is exact.
    const EXACT: bool;

    fn half(&self) -> Self {
        self.clone() / (Self::one() + Self::one())
    }

    fn is_positive_weight(&self) -> bool {
        *self > Self::zero()
    }
}

fn split_ratio(text: &str) -> Option<(&str, &str)> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => Some((n.trim(), d.trim())),
        None => Some((t, "1")),
    }
}

impl<T> Weight for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + FromStr + From<i64> + Send + Sync + 'static,
{
    const EXACT: bool = true;

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(T::from(num), T::from(den))
    }

    fn parse_weight(text: &str) -> Option<Self> {
        let (n, d) = split_ratio(text)?;
        let n: T = n.parse().ok()?;
        let d: T = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Ratio::new(n, d))
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

macro_rules! float_weight {
    ($t:ty) => {
        impl Weight for $t {
            const EXACT: bool = false;

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn parse_weight(text: &str) -> Option<Self> {
                let (n, d) = split_ratio(text)?;
                let n: $t = n.parse().ok()?;
                let d: $t = d.parse().ok()?;
                if d == 0.0 {
                    return None;
                }
                let v = n / d;
                v.is_finite().then_some(v)
            }

            fn render(&self) -> String {
                format!("{}", self)
            }
        }
    };
}

float_weight!(f32);
float_weight!(f64);

/// Default exact scalar.
pub type Rational = Ratio<BigInt>;

/// Sum of an iterator of weights.
pub fn total<'a, W: Weight + 'a>(items: impl IntoIterator<Item = &'a W>) -> W {
    items.into_iter().fold(W::zero(), |acc, w| acc + w.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn parse_and_render_round_trip() {
        let q = Rational::parse_weight("6/4").unwrap();
        assert_eq!(q.render(), "3/2");
        assert_eq!(Rational::parse_weight(" 2 ").unwrap().render(), "2");
        assert!(Rational::parse_weight("1/0").is_none());
        assert!(Rational::parse_weight("x").is_none());
        let r = Rational64::parse_weight("-3/9").unwrap();
        assert_eq!(r.render(), "-1/3");
    }

    #[test]
    fn floats_parse_fractions() {
        assert_eq!(f64::parse_weight("3/2"), Some(1.5));
        assert_eq!(f32::parse_weight("0.25"), Some(0.25));
        assert!(f64::parse_weight("1/0").is_none());
    }

    #[test]
    fn halving() {
        assert_eq!(
            Rational::from_ratio(3, 2).half(),
            Rational::from_ratio(3, 4)
        );
        assert_eq!(1.0f64.half(), 0.5);
    }
}
