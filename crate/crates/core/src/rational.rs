//! Exact rational scalars and small dense linear algebra over them.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn qv(ns: &[i64]) -> Vec<Rational> {
    ns.iter().map(|&n| q(n)).collect()
}

/// Canonical `"p/q"` rendering. Integers keep the explicit `/1` so every value
/// has the same shape on the wire.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(q(s.parse().map_err(|_| bad())?)),
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
}

/// Row-reduce `rows` in place, returning the pivot columns.
fn row_reduce(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows = vectors.to_vec();
    row_reduce(&mut rows).len()
}

pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    rank(&with) == rank(basis)
}

/// Coefficients `c` with `sum c_i basis_i = v`, when `basis` is linearly
/// independent and `v` lies in its span.
pub fn coordinates(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let m = basis.len();
    let n = v.len();
    // Columns are basis vectors; augmented with v.
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i]).collect();
            row.push(v[i]);
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows);
    if pivots.contains(&m) || pivots.len() != m {
        return None;
    }
    Some((0..m).map(|k| rows[k][m]).collect())
}

pub(crate) fn serialize_rationals<S: Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub(crate) fn deserialize_rationals<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<Rational>, D::Error> {
    let raw: Vec<String> = Vec::deserialize(d)?;
    raw.iter()
        .map(|s| parse_rational(s).map_err(D::Error::custom))
        .collect()
}

pub(crate) fn serialize_rational<S: Serializer>(
    v: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

pub(crate) fn deserialize_rational<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Rational, D::Error> {
    let raw = String::deserialize(d)?;
    parse_rational(&raw).map_err(D::Error::custom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_and_parse() {
        assert_eq!(format_rational(&Rational::new(3, 2)), "3/2");
        assert_eq!(format_rational(&q(-2)), "-2/1");
        assert_eq!(parse_rational("6/4").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn span_and_coordinates() {
        let basis = vec![qv(&[1, -1]), qv(&[0, 2])];
        assert_eq!(rank(&basis), 2);
        assert_eq!(coordinates(&basis, &qv(&[2, 0])).unwrap(), qv(&[2, 1]));
        let line = vec![qv(&[1, 1, 0])];
        assert!(in_span(&line, &qv(&[-2, -2, 0])));
        assert!(!in_span(&line, &qv(&[1, 0, 0])));
        assert!(coordinates(&line, &qv(&[1, 0, 0])).is_none());
    }

    #[test]
    fn dot_dimension_mismatch() {
        assert!(matches!(
            dot(&qv(&[1]), &qv(&[1, 2])),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
    }
}
