use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::point::DyadicPoint;

/// A list of points of one dimension.
///
/// ```text
/// # comments run to the end of the line
/// dim 2
/// 0,0
/// 3*2^-1, 1/4
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointFile {
    pub dim: usize,
    pub points: Vec<DyadicPoint>,
}

impl PointFile {
    pub fn new(dim: usize, points: Vec<DyadicPoint>) -> Result<Self> {
        for p in &points {
            p.check_dim(dim)?;
        }
        Ok(PointFile { dim, points })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        text.parse()
    }
}

impl FromStr for PointFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut dim: Option<usize> = None;
        let mut points = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Error::Parse(format!("line {}: {msg}", no + 1));
            match dim {
                None => {
                    let n = line
                        .strip_prefix("dim")
                        .filter(|rest| rest.starts_with(char::is_whitespace))
                        .ok_or_else(|| at(format!("expected `dim N` header, found {line:?}")))?;
                    let n: usize = n
                        .trim()
                        .parse()
                        .map_err(|_| at(format!("bad dimension {:?}", n.trim())))?;
                    if n == 0 {
                        return Err(at("dimension must be positive".into()));
                    }
                    dim = Some(n);
                }
                Some(d) => {
                    let p: DyadicPoint = line.parse().map_err(|e| at(format!("{e}")))?;
                    if p.dim() != d {
                        return Err(at(format!("point has {} coordinates, expected {d}", p.dim())));
                    }
                    points.push(p);
                }
            }
        }
        let dim = dim.ok_or_else(|| Error::Parse("missing `dim N` header".into()))?;
        Ok(PointFile { dim, points })
    }
}

impl fmt::Display for PointFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim {}", self.dim)?;
        for p in &self.points {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}
