//! Exact lower bounds on the length `n_q(a, T)` of a `q`-ary code of size `a`
//! with minimum asymmetric distance `T`.
//!
//! All values are ceilings of exact rationals computed in `u128`.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `a <= q`: the answer is exactly `2T`.
    TrivialQGeA,
    Gbt,
}

/// Generalized Böinck–van Tilborg bound with its exact rational value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub a: u64,
    #[serde(rename = "T")]
    pub t: u64,
    pub alpha: u64,
    pub value: u64,
    pub numerator: u128,
    pub denominator: u128,
    pub regime: Regime,
}

impl std::fmt::Display for BoundReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GBT_{}({},{}) = {} [{}/{}]",
            self.q, self.a, self.t, self.value, self.numerator, self.denominator
        )
    }
}

fn ceil_div(num: u128, den: u128) -> u128 {
    num.div_ceil(den)
}

fn mul(a: u128, b: u128) -> u128 {
    a.checked_mul(b).expect("bound arithmetic overflowed u128")
}

/// `GBT_q(a, T) = ceil(2a(a-1)T / (a(a-alpha) - (a - alpha q)(alpha + 1)))`,
/// `alpha = floor(a/q)`, with `a <= q` routed to the value `2T`.
pub fn gbt(q: u64, a: u64, t: u64) -> Result<BoundReport> {
    if q < 2 || a < 2 || t < 1 {
        return Err(Error::param(format!(
            "gbt needs q >= 2, a >= 2, T >= 1 (got q={q}, a={a}, T={t})"
        )));
    }
    let alpha = a / q;
    if a <= q {
        return Ok(BoundReport {
            q,
            a,
            t,
            alpha,
            value: 2 * t,
            numerator: 2 * t as u128,
            denominator: 1,
            regime: Regime::TrivialQGeA,
        });
    }
    let (qa, aa, ta, al) = (q as u128, a as u128, t as u128, alpha as u128);
    let numerator = mul(mul(mul(2, aa), aa - 1), ta);
    // a - alpha*q is the remainder a mod q, so both terms are nonnegative
    let denominator = mul(aa, aa - al) - mul(aa - al * qa, al + 1);
    assert!(denominator > 0, "GBT denominator must be positive for a > q");
    let value = ceil_div(numerator, denominator);
    Ok(BoundReport {
        q,
        a,
        t,
        alpha,
        value: u64::try_from(value).expect("GBT value exceeds u64"),
        numerator,
        denominator,
        regime: Regime::Gbt,
    })
}

/// Convenience wrapper returning only the bound's value.
pub fn gbt_value(q: u64, a: u64, t: u64) -> Result<u64> {
    gbt(q, a, t).map(|r| r.value)
}

/// Binary bound `ceil((4 - 2/ceil(a/2)) T)`.
pub fn bvt_binary(a: u64, t: u64) -> Result<u64> {
    if a < 2 || t < 1 {
        return Err(Error::param(format!(
            "bvt_binary needs a >= 2, T >= 1 (got a={a}, T={t})"
        )));
    }
    let half = a.div_ceil(2) as u128;
    let value = ceil_div(mul(4 * half - 2, t as u128), half);
    Ok(u64::try_from(value).expect("bound exceeds u64"))
}

/// Smallest `a' <= a` with `GBT_q(a', T) = GBT_q(a, T)`. Deleting words from
/// an optimal code of size `a` gives optimal codes for every size in
/// `a'..=a`.
pub fn gbt_plateau(q: u64, a: u64, t: u64) -> Result<u64> {
    let target = gbt_value(q, a, t)?;
    let mut lo = a;
    while lo > 2 && gbt_value(q, lo - 1, t)? == target {
        lo -= 1;
    }
    Ok(lo)
}

/// True when `GBT(T1) + GBT(T2) = GBT(T1 + T2)`, i.e. concatenating optimal
/// codes for `T1` and `T2` gives an optimal code for `T1 + T2`.
pub fn gbt_additive(q: u64, a: u64, t1: u64, t2: u64) -> Result<bool> {
    Ok(gbt_value(q, a, t1)? + gbt_value(q, a, t2)? == gbt_value(q, a, t1 + t2)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gbt_reference_values() {
        let r = gbt(3, 7, 8).unwrap();
        assert_eq!((r.value, r.numerator, r.denominator), (21, 672, 32));
        assert_eq!(r.regime, Regime::Gbt);
        assert_eq!(r.alpha, 2);

        let r = gbt(3, 10, 11).unwrap();
        assert_eq!((r.value, r.numerator, r.denominator), (30, 1980, 66));

        for t in 1..=8u64 {
            assert_eq!(gbt_value(3, 12, t).unwrap(), (11 * t).div_ceil(4));
        }

        let r = gbt(5, 4, 3).unwrap();
        assert_eq!(r.value, 6);
        assert_eq!(r.regime, Regime::TrivialQGeA);
    }

    #[test]
    fn display_format() {
        assert_eq!(gbt(3, 7, 8).unwrap().to_string(), "GBT_3(7,8) = 21 [672/32]");
    }

    #[test]
    fn bad_parameters() {
        assert!(gbt(1, 5, 1).is_err());
        assert!(gbt(3, 1, 1).is_err());
        assert!(gbt(3, 5, 0).is_err());
        assert!(bvt_binary(1, 1).is_err());
    }

    #[test]
    fn bvt_values() {
        assert_eq!(bvt_binary(4, 2).unwrap(), 6);
        assert_eq!(bvt_binary(3, 1).unwrap(), 3);
        assert_eq!(bvt_binary(7, 2).unwrap(), 7);
        for t in 1..10 {
            assert_eq!(bvt_binary(2, t).unwrap(), 2 * t);
        }
    }

    #[test]
    fn plateaus() {
        // GBT_3(7,4) = ceil(336/32) = 11 = GBT_3(12,4), GBT_3(6,4) = 10
        assert_eq!(gbt_plateau(3, 12, 4).unwrap(), 7);
        assert_eq!(gbt_plateau(3, 25, 3).unwrap(), 10);
        assert_eq!(gbt_plateau(3, 16, 2).unwrap(), 7);
        assert_eq!(gbt_plateau(3, 2, 1).unwrap(), 2);
    }

    #[test]
    fn additivity() {
        assert!(gbt_additive(3, 7, 8, 8).unwrap());
        // 3 + 6 != 8
        assert!(!gbt_additive(3, 7, 1, 2).unwrap());
    }
}
