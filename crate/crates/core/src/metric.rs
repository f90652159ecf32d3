//! The ultrametric `d(u, v) = λ^|lcp(u, v)|` on ω-words.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::word::EventuallyPeriodicWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricParams {
    lambda: BigRational,
}

impl MetricParams {
    /// `λ = numer / denom`, which must lie strictly between 0 and 1.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::InvalidParameter("λ has a zero denominator".into()));
        }
        let lambda = BigRational::new(BigInt::from(numer), BigInt::from(denom));
        if lambda <= BigRational::zero() || lambda >= BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "λ = {lambda} must lie in (0, 1)"
            )));
        }
        Ok(MetricParams { lambda })
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams::new(1, 2).expect("1/2 is in range")
    }
}

pub fn distance(
    u: &EventuallyPeriodicWord,
    v: &EventuallyPeriodicWord,
    params: &MetricParams,
) -> BigRational {
    match u.common_prefix_len(v) {
        None => BigRational::zero(),
        Some(n) => (0..n).fold(BigRational::one(), |acc, _| acc * params.lambda()),
    }
}
