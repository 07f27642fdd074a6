use serde::Serialize;

use crate::rational::Rational;
use crate::real::Real;

/// Outcome of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Na,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Na => "na",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    /// Combines verdicts: any failure wins, then inconclusive, then holds.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (Holds, _) | (_, Holds) => Holds,
            (Na, Na) => Na,
        }
    }
}

/// Sign of an enclosed slack that should be nonnegative.
///
/// `Holds` when the enclosure is certainly `>= 0`, `Fails` when certainly
/// `< 0`. An enclosure straddling zero whose width is below `tol` is an
/// equality case at the working precision and reported as a tight hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignCheck {
    pub verdict: Verdict,
    pub tight: bool,
}

pub fn check_nonnegative(slack: &Real, tol: &Rational) -> SignCheck {
    if slack.is_nonnegative() {
        return SignCheck { verdict: Verdict::Holds, tight: false };
    }
    if slack.is_negative() {
        return SignCheck { verdict: Verdict::Fails, tight: false };
    }
    if slack.width().to_rational() <= *tol {
        SignCheck { verdict: Verdict::Holds, tight: true }
    } else {
        SignCheck { verdict: Verdict::Inconclusive, tight: false }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::real::Dyadic;

    #[test]
    fn combination_order() {
        assert_eq!(Verdict::Holds.and(Verdict::Fails), Verdict::Fails);
        assert_eq!(Verdict::Holds.and(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Na.and(Verdict::Holds), Verdict::Holds);
        assert_eq!(Verdict::Na.and(Verdict::Na), Verdict::Na);
    }

    #[test]
    fn straddling_slack() {
        let tiny = Real::ball(&Dyadic::pow2(-100), 128);
        let c = check_nonnegative(&tiny, &ratio(1, 1_000_000));
        assert_eq!(c, SignCheck { verdict: Verdict::Holds, tight: true });
        let wide = Real::ball(&Dyadic::one(), 128);
        assert_eq!(check_nonnegative(&wide, &ratio(1, 1_000_000)).verdict, Verdict::Inconclusive);
    }
}
