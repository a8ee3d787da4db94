//! Bounded breadth-first midpoint closure.
//!
//! Everything is scaled by `2^(exp_cap + slack)` so kept points are integer vectors
//! and the midpoint of `a` and `b` is kept exactly when `a = b (mod 2)`. Points are
//! stored in a dense bitmap over the bounding box of the generators, and each parity
//! class also in a half-resolution bitmap: writing `a = p + 2q`, the midpoints of a
//! new point `c = p + 2r` with its class are `p + r + Q_p`, a shifted copy of `Q_p`,
//! so one new point is handled with word operations per row.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::point::{exp_lex_cmp, DyadicPoint};

pub const POINT_LIMIT_ENV: &str = "DYCONVEX_POINT_LIMIT";
pub const DEFAULT_POINT_LIMIT: usize = 1_000_000;
const DENSE_CELL_LIMIT: u64 = 1 << 31;
const COORD_LIMIT: i64 = 1 << 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureOptions {
    pub exp_cap: u32,
    pub slack: u32,
    pub point_limit: usize,
    pub max_rounds: Option<usize>,
}

impl ClosureOptions {
    /// Uses the point limit from the environment when set, else the default.
    pub fn new(exp_cap: u32, slack: u32) -> Result<Self> {
        let point_limit = match std::env::var(POINT_LIMIT_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{POINT_LIMIT_ENV}={v:?} is not a count")))?,
            Err(_) => DEFAULT_POINT_LIMIT,
        };
        Ok(ClosureOptions {
            exp_cap,
            slack,
            point_limit,
            max_rounds: None,
        })
    }

    pub fn with_limit(exp_cap: u32, slack: u32, point_limit: usize) -> Self {
        ClosureOptions {
            exp_cap,
            slack,
            point_limit,
            max_rounds: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    /// Points with denominator exponent at most `exp_cap`, by exponent then lexicographically.
    pub found: Vec<DyadicPoint>,
    /// Points discovered in the last round but not yet combined.
    pub frontier_size: usize,
    pub saturated: bool,
    /// Every point kept, including those only allowed by the slack.
    pub total_points: usize,
    pub rounds: usize,
}

pub fn closure_bfs(generators: &[DyadicPoint], opts: &ClosureOptions) -> Result<ClosureReport> {
    let first = generators.first().ok_or(Error::Empty)?;
    let n = first.dim();
    let bound = u64::from(opts.exp_cap) + u64::from(opts.slack);
    let mut scaled: Vec<Vec<i64>> = Vec::with_capacity(generators.len());
    for g in generators {
        g.check_dim(n)?;
        let ints = g.scaled_ints(bound).ok_or_else(|| {
            Error::InvalidArgument(format!("generator {g} has exponent above exp_cap + slack"))
        })?;
        let v = ints
            .iter()
            .map(|x| x.to_i64().filter(|v| v.abs() < COORD_LIMIT))
            .collect::<Option<Vec<i64>>>()
            .ok_or_else(|| Error::InvalidArgument(format!("generator {g} is too large")))?;
        if !scaled.contains(&v) {
            scaled.push(v);
        }
    }
    scaled.sort();
    let lo: Vec<i64> = (0..n).map(|i| scaled.iter().map(|v| v[i]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..n).map(|i| scaled.iter().map(|v| v[i]).max().unwrap()).collect();
    let widths: Vec<u64> = (0..n).map(|i| (hi[i] - lo[i]) as u64 + 1).collect();
    let cells = widths.iter().try_fold(1u64, |acc, &w| acc.checked_mul(w));
    let rel: Vec<Vec<i64>> = scaled
        .iter()
        .map(|v| v.iter().zip(&lo).map(|(a, b)| a - b).collect())
        .collect();
    let run = match cells {
        Some(c) if c <= DENSE_CELL_LIMIT => {
            let w: Vec<usize> = widths.iter().map(|&x| x as usize).collect();
            dense(&w, &rel, opts)?
        }
        _ => sparse(&rel, opts)?,
    };
    let step = 1i64 << opts.slack.min(62);
    let mut found: Vec<DyadicPoint> = run
        .points
        .iter()
        .map(|v| v.iter().zip(&lo).map(|(a, b)| a + b).collect::<Vec<i64>>())
        .filter(|v| v.iter().all(|x| x % step == 0))
        .map(|v| {
            DyadicPoint::new(
                v.iter()
                    .map(|&x| Dyadic::new(BigInt::from(x), -(bound as i64)).expect("bounded exponent"))
                    .collect(),
            )
            .expect("non-empty")
        })
        .collect();
    found.sort_by(exp_lex_cmp);
    Ok(ClosureReport {
        found,
        frontier_size: run.frontier,
        saturated: run.frontier == 0,
        total_points: run.points.len(),
        rounds: run.rounds,
    })
}

struct Run {
    points: Vec<Vec<i64>>,
    frontier: usize,
    rounds: usize,
}

struct Bits {
    dims: Vec<usize>,
    words: usize,
    data: Vec<u64>,
}

impl Bits {
    fn new(dims: Vec<usize>) -> Self {
        let last = *dims.last().unwrap();
        let words = last.div_ceil(64);
        let rows: usize = dims[..dims.len() - 1].iter().product();
        Bits {
            data: vec![0; rows * words],
            dims,
            words,
        }
    }

    fn rows(&self) -> usize {
        self.dims[..self.dims.len() - 1].iter().product()
    }

    fn row_of(&self, prefix: &[usize]) -> usize {
        prefix
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&c, &d)| acc * d + c)
    }

    fn prefix_of(&self, mut row: usize, out: &mut [usize]) {
        for i in (0..out.len()).rev() {
            out[i] = row % self.dims[i];
            row /= self.dims[i];
        }
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    fn set(&mut self, c: &[usize]) {
        let n = c.len();
        let r = self.row_of(&c[..n - 1]);
        self.data[r * self.words + c[n - 1] / 64] |= 1u64 << (c[n - 1] % 64);
    }

    fn get(&self, c: &[usize]) -> bool {
        let n = c.len();
        let r = self.row_of(&c[..n - 1]);
        self.data[r * self.words + c[n - 1] / 64] >> (c[n - 1] % 64) & 1 == 1
    }
}

fn class_of(c: &[usize]) -> usize {
    c.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x & 1) << i))
}

fn dense(widths: &[usize], gens: &[Vec<i64>], opts: &ClosureOptions) -> Result<Run> {
    let n = widths.len();
    let mut all = Bits::new(widths.to_vec());
    let mut classes: Vec<Bits> = (0..1usize << n)
        .map(|p| {
            Bits::new(
                (0..n)
                    .map(|i| (widths[i] + 1 - ((p >> i) & 1)) / 2)
                    .collect(),
            )
        })
        .collect();
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = Vec::new();
    for g in gens {
        let c: Vec<usize> = g.iter().map(|&x| x as usize).collect();
        if !all.get(&c) {
            all.set(&c);
            let half: Vec<usize> = c.iter().map(|x| x >> 1).collect();
            classes[class_of(&c)].set(&half);
            points.push(g.clone());
            frontier.push(c);
        }
    }
    if points.len() > opts.point_limit {
        return Err(Error::PointLimit(opts.point_limit));
    }
    let mut rounds = 0;
    let mut prefix = vec![0usize; n - 1];
    let mut target = vec![0usize; n - 1];
    let mut shifted = vec![0u64; all.words + 1];
    while !frontier.is_empty() {
        if opts.max_rounds.is_some_and(|m| rounds >= m) {
            break;
        }
        rounds += 1;
        let mut next = Vec::new();
        for c in &frontier {
            let p = class_of(c);
            let cls = &classes[p];
            let mut fresh: Vec<Vec<usize>> = Vec::new();
            for r in 0..cls.rows() {
                let src = cls.row(r);
                if src.iter().all(|&w| w == 0) {
                    continue;
                }
                cls.prefix_of(r, &mut prefix);
                for i in 0..n - 1 {
                    target[i] = (c[i] & 1) + (c[i] >> 1) + prefix[i];
                }
                let shift = (c[n - 1] & 1) + (c[n - 1] >> 1);
                let (ws, bs) = (shift / 64, shift % 64);
                shifted.iter_mut().for_each(|w| *w = 0);
                for (k, &w) in src.iter().enumerate() {
                    if w == 0 {
                        continue;
                    }
                    if ws + k < shifted.len() {
                        shifted[ws + k] |= w << bs;
                    }
                    if bs > 0 && ws + k + 1 < shifted.len() {
                        shifted[ws + k + 1] |= w >> (64 - bs);
                    }
                }
                let tr = all.row_of(&target);
                for k in 0..all.words {
                    let mut new = shifted[k] & !all.data[tr * all.words + k];
                    if new == 0 {
                        continue;
                    }
                    all.data[tr * all.words + k] |= new;
                    while new != 0 {
                        let b = new.trailing_zeros() as usize;
                        new &= new - 1;
                        let mut m = target.clone();
                        m.push(k * 64 + b);
                        fresh.push(m);
                    }
                }
            }
            for m in fresh {
                let half: Vec<usize> = m.iter().map(|x| x >> 1).collect();
                classes[class_of(&m)].set(&half);
                points.push(m.iter().map(|&x| x as i64).collect());
                if points.len() > opts.point_limit {
                    return Err(Error::PointLimit(opts.point_limit));
                }
                next.push(m);
            }
        }
        next.sort();
        frontier = next;
    }
    Ok(Run {
        points,
        frontier: frontier.len(),
        rounds,
    })
}

fn sparse(gens: &[Vec<i64>], opts: &ClosureOptions) -> Result<Run> {
    let parity = |v: &[i64]| v.iter().map(|x| (x & 1) as u8).collect::<Vec<u8>>();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut classes: HashMap<Vec<u8>, Vec<Vec<i64>>> = HashMap::new();
    let mut points = Vec::new();
    let mut frontier = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            classes.entry(parity(g)).or_default().push(g.clone());
            points.push(g.clone());
            frontier.push(g.clone());
        }
    }
    let mut rounds = 0;
    while !frontier.is_empty() {
        if opts.max_rounds.is_some_and(|m| rounds >= m) {
            break;
        }
        rounds += 1;
        let mut next = Vec::new();
        for c in &frontier {
            let mut fresh = Vec::new();
            for b in &classes[&parity(c)] {
                let m: Vec<i64> = b.iter().zip(c).map(|(x, y)| (x + y) / 2).collect();
                if seen.insert(m.clone()) {
                    fresh.push(m);
                }
            }
            for m in fresh {
                classes.entry(parity(&m)).or_default().push(m.clone());
                points.push(m.clone());
                if points.len() > opts.point_limit {
                    return Err(Error::PointLimit(opts.point_limit));
                }
                next.push(m);
            }
        }
        next.sort();
        frontier = next;
    }
    Ok(Run {
        points,
        frontier: frontier.len(),
        rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(s: &[&str]) -> Vec<DyadicPoint> {
        s.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn unit_interval() {
        let r = closure_bfs(&pts(&["0", "1"]), &ClosureOptions::with_limit(3, 2, 1000)).unwrap();
        assert!(r.saturated);
        assert_eq!(r.found.len(), 9);
        assert_eq!(r.total_points, 33);
        assert_eq!(r.found[0], "0".parse().unwrap());
        assert_eq!(r.found[8], "7/8".parse().unwrap());
    }

    #[test]
    fn skips_the_gap() {
        let r = closure_bfs(&pts(&["0", "3"]), &ClosureOptions::with_limit(2, 4, 10_000)).unwrap();
        let one: DyadicPoint = "1".parse().unwrap();
        assert!(!r.found.contains(&one));
        assert!(r.found.contains(&"3/2".parse().unwrap()));
        assert!(r.found.contains(&"3/4".parse().unwrap()));
    }

    #[test]
    fn notdpol_bottom_edge() {
        let r = closure_bfs(&pts(&["0,0", "1,3", "3,0", "1,1"]), &ClosureOptions::with_limit(2, 3, 1_000_000)).unwrap();
        assert!(r.found.contains(&"3/2,0".parse().unwrap()));
        assert!(!r.found.contains(&"1,0".parse().unwrap()));
        assert!(r.found.contains(&"1,1".parse().unwrap()));
    }

    #[test]
    fn point_limit_is_an_error() {
        let e = closure_bfs(&pts(&["0,0", "1,0", "0,1"]), &ClosureOptions::with_limit(4, 2, 50));
        assert_eq!(e, Err(Error::PointLimit(50)));
    }

    #[test]
    fn dense_and_sparse_agree() {
        let g = pts(&["0,0", "3/4,1/4", "1/8,5/8", "1/2,1/2"]);
        let opts = ClosureOptions::with_limit(3, 2, 1_000_000);
        let r = closure_bfs(&g, &opts).unwrap();
        let bound = 5;
        let ints: Vec<Vec<i64>> = g
            .iter()
            .map(|p| p.scaled_ints(bound).unwrap().iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        let s = sparse(&ints, &opts).unwrap();
        assert_eq!(s.points.len(), r.total_points);
    }

    #[test]
    fn round_cap_reports_unsaturated() {
        let mut opts = ClosureOptions::with_limit(4, 2, 1_000_000);
        opts.max_rounds = Some(1);
        let r = closure_bfs(&pts(&["0", "1"]), &opts).unwrap();
        assert!(!r.saturated);
        assert!(r.frontier_size > 0);
    }

    #[test]
    fn over_cap_generator_is_rejected() {
        let e = closure_bfs(&pts(&["1/64"]), &ClosureOptions::with_limit(2, 1, 10));
        assert!(matches!(e, Err(Error::InvalidArgument(_))));
    }
}
