//! Exact rational numbers used on every verdict path.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Rational = Ratio<i64>;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(value)
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().ok()?;
            let q: i64 = q.trim().parse().ok()?;
            if q == 0 {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => text.parse::<i64>().ok().map(Rational::from_integer),
    }
}

/// Always emits the reduced `p/q` form, `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

/// All reduced fractions `p/q` with `1 <= q <= max` and `lo <= p/q <= hi`, sorted ascending.
pub fn farey_candidates(lo: Rational, hi: Rational, max: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=max.max(1) {
        for p in 0..=(max * max + 2 * max) {
            let r = Rational::new(p, q);
            if r < lo {
                continue;
            }
            if r > hi {
                break;
            }
            out.push(r);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("9/2"), Some(rat(9, 2)));
        assert_eq!(parse_rational(" 4 "), Some(int(4)));
        assert_eq!(parse_rational("6/4"), Some(rat(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&rat(10, 4)), "5/2");
        assert_eq!(format_rational(&int(-3)), "-3");
    }

    #[test]
    fn farey_window() {
        let c = farey_candidates(int(2), int(3), 3);
        assert_eq!(c, vec![int(2), rat(7, 3), rat(5, 2), rat(8, 3), int(3)]);
    }
}
