use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, …, degree-1}` in one-line image notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::Input(format!("{images:?} is not a permutation of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from disjoint or overlapping cycles, composed right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut result = Permutation::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a as usize >= degree || b as usize >= degree {
                    return Err(Error::Input(format!("cycle {cycle:?} exceeds degree {degree}")));
                }
                images[a as usize] = b;
            }
            let c = Permutation::new(images)?;
            result = result.compose(&c);
        }
        Ok(result)
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let text = text.trim();
        let mut cycles = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::Input(format!("expected '(' in {text:?}")))?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Input(format!("unexpected text in {text:?}")));
            }
            let close = rest.find(')').ok_or_else(|| Error::Input(format!("unbalanced parentheses in {text:?}")))?;
            let body = &rest[open + 1..close];
            let points = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| Error::Input(format!("bad point {s:?}"))))
                .collect::<Result<Vec<u32>>>()?;
            if !points.is_empty() {
                cycles.push(points);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&i| self.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Extends to a larger degree by fixing the new points.
    pub fn padded(&self, degree: usize) -> Permutation {
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut cur = self.images[start] as usize;
            while cur != start {
                seen[cur] = true;
                cycle.push(cur as u32);
                cur = self.images[cur] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(u32::to_string).collect();
                format!("({})", inner.join(" "))
            })
            .collect()
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<u32>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}
