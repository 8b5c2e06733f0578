//! Exact rational helpers: parsing, canonical formatting, and matrix rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

/// Parses `"p/q"`, `"p"`, or an integer string into a rational.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Q::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// `p/q` in lowest terms with the sign on the numerator; integers keep the `/1`.
pub fn format_rational(x: &Q) -> String {
    // BigRational is always reduced with a positive denominator
    format!("{}/{}", x.numer(), x.denom())
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rank by Gaussian elimination over the rationals.
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let d = &f * &rows[r][j];
                rows[i][j] -= d;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Sign of a rational as -1, 0, 1.
pub fn signum(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn one() -> Q {
    Q::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3"), Some(q(3)));
        assert_eq!(parse_rational("-2/4"), Some(Q::new(BigInt::from(-1), BigInt::from(2))));
        assert_eq!(parse_rational("1/-2"), Some(Q::new(BigInt::from(-1), BigInt::from(2))));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&parse_rational("6/-4").unwrap()), "-3/2");
        assert_eq!(format_rational(&q(0)), "0/1");
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(vec![vec![q(1), q(2)], vec![q(2), q(4)]]), 1);
        assert_eq!(rank(vec![vec![q(1), q(0)], vec![q(0), q(1)], vec![q(1), q(1)]]), 2);
        assert_eq!(rank(vec![vec![q(0), q(0)]]), 0);
        assert_eq!(rank(vec![]), 0);
    }
}
