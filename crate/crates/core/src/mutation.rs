//! Deliberate single-constant corruptions of the formula layer.
//!
//! An engine built with a [`Mutation`] computes one formula with one constant
//! altered. The identity suite must notice every one of them; the CLI exposes
//! this through the hidden `--inject-fault` flag for mutation smoke tests.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mutation {
    /// `2(2r+1)` in the central binomial step becomes `2(2r+1) + 2`.
    CentralStepFactor,
    /// The Catalan divisor `n+1` becomes `n+2`.
    CatalanDivisor,
    /// The closed-form denominator `2(n+r)` becomes `n+r`.
    ClosedDenominator,
    /// `Q(0, r) = C_{r-1}` becomes `C_r`.
    QBaseIndex,
    /// `C_{n+r-k-1}` in the Catalan sum for `P` becomes `C_{n+r-k}`.
    CatalanSumOffset,
    /// `C_{r+k-1}` in the Catalan sum for `Q` becomes `C_{r+k}`.
    QSumOffset,
    /// The recurrence seed `C(2s, s)/2` loses its halving.
    RecurrenceSeed,
    /// `C(2(r+k-1), r+k-1)` in the tail-touch sum becomes `C(2(r+k), r+k)`.
    TailTouchOffset,
    /// `C_{l-1}` in the range-touch sum becomes `C_l`.
    RangeTouchOffset,
    /// The convolution factor `C(2(n-k), n-k)` becomes `C(2(n-k+1), n-k+1)`.
    ConvolutionOffset,
    /// The `Q`-convolution weight `C(2k, k)` becomes `C(2k+2, k+1)`.
    QConvolutionWeight,
    /// Forward substitution starts from `C(2(n+r), n+r)` instead of half of it.
    InverseSeed,
    /// `K_r = r C(2r, r) / 2` loses its halving.
    KrDivisor,
}

impl Mutation {
    pub const ALL: [Mutation; 13] = [
        Mutation::CentralStepFactor,
        Mutation::CatalanDivisor,
        Mutation::ClosedDenominator,
        Mutation::QBaseIndex,
        Mutation::CatalanSumOffset,
        Mutation::QSumOffset,
        Mutation::RecurrenceSeed,
        Mutation::TailTouchOffset,
        Mutation::RangeTouchOffset,
        Mutation::ConvolutionOffset,
        Mutation::QConvolutionWeight,
        Mutation::InverseSeed,
        Mutation::KrDivisor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::CentralStepFactor => "central-step-factor",
            Mutation::CatalanDivisor => "catalan-divisor",
            Mutation::ClosedDenominator => "closed-denominator",
            Mutation::QBaseIndex => "q-base-index",
            Mutation::CatalanSumOffset => "catalan-sum-offset",
            Mutation::QSumOffset => "q-sum-offset",
            Mutation::RecurrenceSeed => "recurrence-seed",
            Mutation::TailTouchOffset => "tail-touch-offset",
            Mutation::RangeTouchOffset => "range-touch-offset",
            Mutation::ConvolutionOffset => "convolution-offset",
            Mutation::QConvolutionWeight => "q-convolution-weight",
            Mutation::InverseSeed => "inverse-seed",
            Mutation::KrDivisor => "kr-divisor",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown fault site `{s}`"))
    }
}
