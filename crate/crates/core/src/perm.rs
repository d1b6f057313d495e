//! Permutations of `0..degree`, stored as image sequences.
//!
//! Composition is left-to-right: `a.compose(&b)` first applies `a`, then `b`,
//! so `x^(ab) = (x^a)^b`. Text forms use 1-based cycle notation, e.g.
//! `(1,2,3)(4,5)`, with `()` for the identity.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image sequence, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijection(n));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    /// Builds a permutation from 0-based cycles. Points not mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                let p_us = p as usize;
                if p_us >= degree {
                    return Err(Error::PointOutOfRange {
                        point: p_us + 1,
                        degree,
                    });
                }
                if used[p_us] {
                    return Err(Error::RepeatedPoint(p_us + 1));
                }
                used[p_us] = true;
                images[p_us] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    /// Parses 1-based cycle notation: `()` or a product of disjoint cycles.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        let syntax = |offset: usize, msg: &str| Error::CycleSyntax {
            offset,
            msg: msg.to_string(),
        };
        if chars.is_empty() {
            return Err(syntax(0, "empty permutation"));
        }
        if chars.len() == 2 && chars[0].1 == '(' && chars[1].1 == ')' {
            return Ok(Perm { images });
        }
        let mut pos = 0;
        while pos < chars.len() {
            let (off, c) = chars[pos];
            if c != '(' {
                return Err(syntax(off, "expected '('"));
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                let start = pos;
                let mut value: usize = 0;
                while pos < chars.len() && chars[pos].1.is_ascii_digit() {
                    value = value
                        .saturating_mul(10)
                        .saturating_add(chars[pos].1.to_digit(10).unwrap() as usize);
                    pos += 1;
                }
                if pos == start {
                    let off = chars.get(pos).map_or(text.len(), |c| c.0);
                    return Err(syntax(off, "expected a point"));
                }
                if value == 0 || value > degree {
                    return Err(Error::PointOutOfRange { point: value, degree });
                }
                if used[value - 1] {
                    return Err(Error::RepeatedPoint(value));
                }
                used[value - 1] = true;
                cycle.push(value as u32 - 1);
                match chars.get(pos) {
                    Some((_, ',')) => pos += 1,
                    Some((_, ')')) => {
                        pos += 1;
                        break;
                    }
                    Some(&(off, _)) => return Err(syntax(off, "expected ',' or ')'")),
                    None => return Err(syntax(text.len(), "unterminated cycle")),
                }
            }
            if cycle.len() < 2 {
                return Err(syntax(chars[pos - 1].0, "cycle needs at least two points"));
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Perm { images }
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[other.images[i] as usize] = other.images[x as usize];
        }
        Perm { images }
    }

    pub fn pow(&self, exp: u64) -> Perm {
        let mut result = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        result
    }

    /// Smallest point moved by the permutation.
    pub fn first_moved(&self) -> Option<u32> {
        self.images
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.cycles()
            .iter()
            .fold(1, |acc, c| acc / gcd(acc, c.len() as u64) * c.len() as u64)
    }

    /// Whether the permutation maps the point set `points` onto itself.
    pub fn stabilizes_set(&self, points: &[u32]) -> bool {
        let mut mark = vec![false; self.degree()];
        for &p in points {
            mark[p as usize] = true;
        }
        points.iter().all(|&p| mark[self.apply(p) as usize])
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}
