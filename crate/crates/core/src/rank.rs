//! Rank of real coordinate rows.
//!
//! Exact rows are cleared of denominators and reduced by fraction-free
//! (Bareiss) elimination, so every intermediate entry is an integer minor of
//! the scaled input. Float rows are equilibrated and reduced with complete
//! pivoting; a pivot is accepted while it exceeds `tol` times the largest
//! initial entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub rows: usize,
    /// Column of each accepted pivot, in elimination order.
    pub pivot_columns: Vec<usize>,
    /// Absolute pivot sizes (Bareiss leading minors on the exact path).
    pub pivot_magnitudes: Vec<f64>,
    /// Smallest accepted pivot relative to the largest initial entry (float only).
    pub min_relative_pivot: Option<f64>,
    /// Final Bareiss pivot: a nonzero `rank x rank` minor of the integer-scaled rows.
    pub certificate: Option<String>,
}

pub fn exact_rank(rows: &[Vec<Rational>]) -> RankReport {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);

    let mut prev = BigInt::from(1);
    let mut k = 0;
    let mut pivot_columns = Vec::new();
    let mut pivots: Vec<BigInt> = Vec::new();

    for col in 0..n_cols {
        if k == n_rows {
            break;
        }
        let Some(p) = (k..n_rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(k, p);
        for r in k + 1..n_rows {
            for c in col + 1..n_cols {
                let num = &m[k][col] * &m[r][c] - &m[r][col] * &m[k][c];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                m[r][c] = q;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[k][col].clone();
        pivots.push(prev.clone());
        pivot_columns.push(col);
        k += 1;
    }

    RankReport {
        rank: k,
        rows: n_rows,
        pivot_columns,
        pivot_magnitudes: pivots.iter().map(|p| p.abs().to_f64().unwrap_or(f64::INFINITY)).collect(),
        min_relative_pivot: None,
        certificate: pivots.last().map(|p| p.to_string()),
    }
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

pub fn float_rank(rows: &[Vec<f64>], tol: f64) -> RankReport {
    let mut m: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            let s = r.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
            if s > 0.0 {
                r.iter().map(|x| x / s).collect()
            } else {
                r.clone()
            }
        })
        .collect();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut cols: Vec<usize> = (0..n_cols).collect();

    let largest = m
        .iter()
        .flatten()
        .fold(0.0_f64, |a, x| a.max(x.abs()));
    let mut report = RankReport {
        rank: 0,
        rows: n_rows,
        pivot_columns: Vec::new(),
        pivot_magnitudes: Vec::new(),
        min_relative_pivot: None,
        certificate: None,
    };
    if largest == 0.0 {
        return report;
    }
    let threshold = tol * largest;

    for k in 0..n_rows.min(n_cols) {
        let mut best = (k, k, 0.0_f64);
        for (r, row) in m.iter().enumerate().skip(k) {
            for (ci, &c) in cols.iter().enumerate().skip(k) {
                let a = row[c].abs();
                if a > best.2 {
                    best = (r, ci, a);
                }
            }
        }
        let (pr, pc, mag) = best;
        if mag <= threshold {
            break;
        }
        m.swap(k, pr);
        cols.swap(k, pc);
        let col = cols[k];
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let f = row[col] / pivot_row[col];
            if f != 0.0 {
                for &c in &cols[k..] {
                    row[c] -= f * pivot_row[c];
                }
            }
        }
        report.rank += 1;
        report.pivot_columns.push(col);
        report.pivot_magnitudes.push(mag);
    }
    report.min_relative_pivot = report
        .pivot_magnitudes
        .iter()
        .copied()
        .reduce(f64::min)
        .map(|p| p / largest);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn rat_rows(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| <Rational as Scalar>::from_i64(x)).collect())
            .collect()
    }

    /// Plain rational Gauss-Jordan, kept independent of the Bareiss path.
    fn naive_rank(mut m: Vec<Vec<Rational>>) -> usize {
        let cols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let piv = m[rank][c].clone();
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_zero() {
                    let f = m[r][c].clone() / piv.clone();
                    for cc in 0..cols {
                        let d = f.clone() * m[rank][cc].clone();
                        m[r][cc] = m[r][cc].clone() - d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn simple_ranks() {
        assert_eq!(exact_rank(&rat_rows(&[&[1, 2, 3], &[2, 4, 6]])).rank, 1);
        assert_eq!(exact_rank(&rat_rows(&[&[0, 0, 0]])).rank, 0);
        assert_eq!(exact_rank(&rat_rows(&[&[0, 1], &[1, 0], &[1, 1]])).rank, 2);
        let r = exact_rank(&rat_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(r.certificate.as_deref(), Some("6"));
        assert_eq!(float_rank(&[vec![1.0, 2.0], vec![2.0, 4.0]], 1e-9).rank, 1);
        assert_eq!(float_rank(&[vec![0.0, 0.0]], 1e-9).rank, 0);
    }

    #[test]
    fn bareiss_matches_naive_on_pseudorandom_matrices() {
        let mut seed = 0x9e3779b97f4a7c15_u64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed % 7) as i64 - 3
        };
        for trial in 0..200 {
            let rows = 1 + trial % 7;
            let cols = 1 + (trial / 7) % 6;
            let m: Vec<Vec<Rational>> = (0..rows)
                .map(|_| (0..cols).map(|_| <Rational as Scalar>::from_ratio(next(), 1 + next().abs())).collect())
                .collect();
            let expected = naive_rank(m.clone());
            assert_eq!(exact_rank(&m).rank, expected);
            let f: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(Scalar::to_f64).collect()).collect();
            assert_eq!(float_rank(&f, 1e-9).rank, expected);
        }
    }
}
