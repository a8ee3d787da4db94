//! Smith normal form over `Z` with both transforms and the inverse of the column transform.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMatrix = Vec<Vec<BigInt>>;

/// `u * a * v = diag(invariants) (padded with zeros)`, with `v * v_inv = I`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IMatrix,
    pub v: IMatrix,
    pub v_inv: IMatrix,
    pub invariants: Vec<BigInt>,
    pub diag: IMatrix,
}

pub fn identity(n: usize) -> IMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

struct Work {
    a: IMatrix,
    u: IMatrix,
    v: IMatrix,
    v_inv: IMatrix,
    rows: usize,
    cols: usize,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        for k in 0..self.cols {
            let t = &self.a[src][k] * c;
            self.a[dst][k] += t;
        }
        for k in 0..self.rows {
            let t = &self.u[src][k] * c;
            self.u[dst][k] += t;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
        self.v_inv.swap(i, j);
    }

    // col dst += c * col src
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let t = &row[src] * c;
            row[dst] += t;
        }
        for k in 0..self.cols {
            let t = &self.v_inv[dst][k] * c;
            self.v_inv[src][k] -= t;
        }
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>], cols: usize) -> Snf {
    let rows = a.len();
    let mut w = Work {
        a: a.to_vec(),
        u: identity(rows),
        v: identity(cols),
        v_inv: identity(cols),
        rows,
        cols,
    };
    let mut invariants = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !w.a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| w.a[i][j].abs() < w.a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !w.a[i][t].is_zero() {
                    let qt = w.a[i][t].div_floor(&w.a[t][t]);
                    w.add_row(i, t, &-qt);
                    if !w.a[i][t].is_zero() {
                        w.swap_rows(t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[t][j].is_zero() {
                    let qt = w.a[t][j].div_floor(&w.a[t][t]);
                    w.add_col(j, t, &-qt);
                    if !w.a[t][j].is_zero() {
                        w.swap_cols(t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            let pivot = w.a[t][t].clone();
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !(&w.a[i][j] % &pivot).is_zero()));
            match bad {
                Some(i) => w.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        invariants.push(w.a[t][t].clone());
        t += 1;
    }
    Snf {
        u: w.u,
        v: w.v,
        v_inv: w.v_inv,
        invariants,
        diag: w.a,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[&[i64]]) -> IMatrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn mul(a: &IMatrix, b: &IMatrix) -> IMatrix {
        a.iter()
            .map(|row| {
                (0..b[0].len())
                    .map(|j| row.iter().zip(b).map(|(x, r)| x * &r[j]).sum())
                    .collect()
            })
            .collect()
    }

    fn check(a: IMatrix, cols: usize, want: &[i64]) {
        let s = smith_normal_form(&a, cols);
        let want: Vec<BigInt> = want.iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.invariants, want);
        assert_eq!(mul(&mul(&s.u, &a), &s.v), s.diag);
        assert_eq!(mul(&s.v, &s.v_inv), identity(cols));
        for w in s.invariants.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn small_cases() {
        check(im(&[&[2, 0], &[0, 3]]), 2, &[1, 6]);
        check(im(&[&[3, 15]]), 2, &[3]);
        check(im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3, &[2, 6, 12]);
        check(im(&[&[0, 0], &[0, 0]]), 2, &[]);
        check(im(&[&[1, 3], &[2, -3], &[3, 0]]), 2, &[1, 9]);
    }
}
