use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A total 2-coloring; each vertex holds 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(Vec<u8>);

impl Coloring {
    pub fn zeros(n: usize) -> Self {
        Coloring(vec![0; n])
    }

    pub fn new(colors: Vec<u8>) -> Result<Self> {
        if let Some(vertex) = colors.iter().position(|&c| c > 1) {
            return Err(Error::InvalidColor {
                vertex,
                value: colors[vertex],
            });
        }
        Ok(Coloring(colors))
    }

    /// Bit `x` of `mask` is the color of vertex `x`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Coloring((0..n).map(|x| ((mask >> x) & 1) as u8).collect())
    }

    pub fn to_mask(&self) -> u64 {
        assert!(self.len() <= 64, "mask encoding needs at most 64 vertices");
        self.0
            .iter()
            .enumerate()
            .fold(0, |m, (x, &c)| m | (u64::from(c) << x))
    }

    #[inline]
    pub fn get(&self, x: Vertex) -> u8 {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// Copy of `self` with every vertex of `set` flipped.
    pub fn with_flipped(&self, set: &[Vertex]) -> Self {
        let mut colors = self.0.clone();
        for &x in set {
            colors[x] ^= 1;
        }
        Coloring(colors)
    }

    pub(crate) fn into_inner(self) -> Vec<u8> {
        self.0
    }

    pub(crate) fn from_raw(colors: Vec<u8>) -> Self {
        debug_assert!(colors.iter().all(|&c| c <= 1));
        Coloring(colors)
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    /// One color per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(2 * self.len());
        for &c in &self.0 {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// Accepts whitespace-separated 0/1 tokens (one per line, or all on one line).
    pub fn parse_text(text: &str) -> Result<Self> {
        Self::read_text(text.as_bytes())
    }

    pub fn read_text<R: BufRead>(r: R) -> Result<Self> {
        let mut colors = Vec::new();
        for (i, line) in r.lines().enumerate() {
            for tok in line?.split_whitespace() {
                match tok {
                    "0" => colors.push(0),
                    "1" => colors.push(1),
                    _ => return Err(Error::parse(i + 1, format!("color `{tok}` is not 0 or 1"))),
                }
            }
        }
        Ok(Coloring(colors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_encoding() {
        let c = Coloring::from_mask(4, 0b0101);
        assert_eq!(c.as_slice(), &[1, 0, 1, 0]);
        assert_eq!(c.to_mask(), 0b0101);
    }

    #[test]
    fn flipping_copies() {
        let c = Coloring::zeros(3);
        let d = c.with_flipped(&[1]);
        assert_eq!(c.as_slice(), &[0, 0, 0]);
        assert_eq!(d.as_slice(), &[0, 1, 0]);
    }

    #[test]
    fn text_formats() {
        let c = Coloring::new(vec![1, 0, 1]).unwrap();
        assert_eq!(c.to_text(), "1\n0\n1\n");
        assert_eq!(Coloring::parse_text("1 0\n1").unwrap(), c);
        assert!(Coloring::parse_text("2").is_err());
        assert!(Coloring::new(vec![0, 3]).is_err());
    }
}
