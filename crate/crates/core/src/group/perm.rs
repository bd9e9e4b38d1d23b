use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}`, stored as its image sequence.
///
/// Products follow the left-to-right convention: `p.then(q)` (also `&p * &q`)
/// applies `p` first, so `i^(pq) = (i^p)^q`. Words such as `xa^2` are read the
/// same way. The derived `Ord` is lexicographic on the image sequence and is
/// the canonical element order used throughout the crate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotBijective {
                    degree: n,
                    detail: format!("image sequence {images:?}"),
                });
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// Builds a permutation from disjoint (or not) cycles over 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeZero);
        }
        let mut p = Perm::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            let mut seen = vec![false; degree];
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree || std::mem::replace(&mut seen[pt - 1], true) {
                    return Err(Error::NotBijective {
                        degree,
                        detail: format!("bad cycle {cycle:?}"),
                    });
                }
                images[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
            p = p.then(&Perm::from_images(images)?);
        }
        Ok(p)
    }

    /// Parses disjoint-cycle notation such as `(1,2,3)(4,5)` or `()`.
    pub fn parse_cycles(input: &str, degree: usize) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(input, "empty permutation"));
        }
        let mut cycles = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::parse(input, "expected `(`"))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::parse(input, "unbalanced parenthesis"))?;
            let inner = &body[..close];
            if !inner.is_empty() {
                let pts = inner
                    .split(',')
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|e| Error::parse(input, e.to_string()))?;
                cycles.push(pts);
            }
            rest = &body[close + 1..];
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Applies `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Perm { images }
    }

    /// Disjoint cycles (0-based), each starting at its least point, fixed
    /// points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.image(start);
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.image(j);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.image(j);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }
}

impl std::ops::Mul for &Perm {
    type Output = Perm;

    fn mul(self, rhs: &Perm) -> Perm {
        self.then(rhs)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}
