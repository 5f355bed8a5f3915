//! Digit sources: finite words and lazily generated infinite streams.

use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Anything that yields negative continued fraction digits `c_1, c_2, ...`.
///
/// Indices are zero-based: `digit(0)` is `c_1`.
pub trait DigitSource {
    /// The digit at `index`, or `None` past the end of a finite source.
    fn digit(&self, index: usize) -> Option<u32>;

    /// Whether running out of digits means the expansion terminates (a
    /// rational number) rather than that data is missing.
    fn is_complete(&self) -> bool;

    fn label(&self) -> String;
}

/// A finite negative continued fraction `[[c_1, ..., c_N]]`.
///
/// All digits are at least 2, except for the one-digit word `[1]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct CFWord(Vec<u32>);

impl CFWord {
    pub fn new(digits: Vec<u32>) -> Result<Self> {
        match digits.as_slice() {
            [] => Err(Error::domain("empty continued fraction word")),
            [1] => Ok(CFWord(digits)),
            ds if ds.iter().all(|&c| c >= 2) => Ok(CFWord(digits)),
            _ => Err(Error::domain("continued fraction digits must be >= 2")),
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `C_N = sum (c_i - 1)`, the degree of the top continuant.
    pub fn weight(&self) -> u64 {
        weight(&self.0)
    }

    pub fn last(&self) -> u32 {
        *self.0.last().unwrap()
    }
}

pub(crate) fn weight(digits: &[u32]) -> u64 {
    digits.iter().map(|&c| c as u64 - 1).sum()
}

impl TryFrom<Vec<u32>> for CFWord {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        CFWord::new(v)
    }
}

impl From<CFWord> for Vec<u32> {
    fn from(w: CFWord) -> Vec<u32> {
        w.0
    }
}

impl fmt::Debug for CFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]]")
    }
}

impl fmt::Display for CFWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl DigitSource for CFWord {
    fn digit(&self, index: usize) -> Option<u32> {
        self.0.get(index).copied()
    }
    fn is_complete(&self) -> bool {
        true
    }
    fn label(&self) -> String {
        self.to_string()
    }
}

/// A finite prefix of an unknown expansion (for example the digits certified
/// from a decimal). Running past its end is an error, not termination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPrefix(pub Vec<u32>);

impl DigitSource for WordPrefix {
    fn digit(&self, index: usize) -> Option<u32> {
        self.0.get(index).copied()
    }
    fn is_complete(&self) -> bool {
        false
    }
    fn label(&self) -> String {
        format!("prefix{:?}", self.0)
    }
}

type Generator = dyn Fn(usize) -> u32 + Send + Sync;

/// An infinite digit stream with a memoised prefix.
///
/// The generator receives one-based positions and must return digits >= 2.
#[derive(Clone)]
pub struct CFStream {
    label: String,
    gen: Arc<Generator>,
    cache: Arc<Mutex<Vec<u32>>>,
}

impl CFStream {
    pub fn new(label: impl Into<String>, gen: impl Fn(usize) -> u32 + Send + Sync + 'static) -> Self {
        CFStream { label: label.into(), gen: Arc::new(gen), cache: Arc::new(Mutex::new(Vec::new())) }
    }

    /// `prefix` followed by `period` repeated forever.
    pub fn periodic(prefix: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::domain("empty period"));
        }
        if prefix.iter().chain(&period).any(|&c| c < 2) {
            return Err(Error::domain("stream digits must be >= 2"));
        }
        let label = format!("periodic:{prefix:?}{period:?}");
        Ok(CFStream::new(label, move |i| {
            let k = i - 1;
            if k < prefix.len() {
                prefix[k]
            } else {
                period[(k - prefix.len()) % period.len()]
            }
        }))
    }

    /// The golden ratio `phi = [[2, 3, 3, ...]]`.
    pub fn golden() -> Self {
        let mut s = CFStream::periodic(vec![2], vec![3]).unwrap();
        s.label = "phi".into();
        s
    }

    /// `(s, s + r, s + 2r, ...)`.
    pub fn arithmetic(s: u32, r: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::domain("arithmetic stream must start at a digit >= 2"));
        }
        Ok(CFStream::new(format!("arith:{s},{r}"), move |i| s + r * (i as u32 - 1)))
    }

    /// The first `n` digits.
    pub fn prefix(&self, n: usize) -> Vec<u32> {
        let mut cache = self.cache.lock().unwrap();
        while cache.len() < n {
            let i = cache.len() + 1;
            let c = (self.gen)(i);
            assert!(c >= 2, "stream {} produced digit {c} < 2 at position {i}", self.label);
            cache.push(c);
        }
        cache[..n].to_vec()
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for CFStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CFStream({})", self.label)
    }
}

impl DigitSource for CFStream {
    fn digit(&self, index: usize) -> Option<u32> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some(&c) = cache.get(index) {
                return Some(c);
            }
        }
        Some(self.prefix(index + 1)[index])
    }
    fn is_complete(&self) -> bool {
        false
    }
    fn label(&self) -> String {
        self.label.clone()
    }
}

impl<T: DigitSource + ?Sized> DigitSource for &T {
    fn digit(&self, index: usize) -> Option<u32> {
        (**self).digit(index)
    }
    fn is_complete(&self) -> bool {
        (**self).is_complete()
    }
    fn label(&self) -> String {
        (**self).label()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_validation() {
        assert!(CFWord::new(vec![1]).is_ok());
        assert!(CFWord::new(vec![]).is_err());
        assert!(CFWord::new(vec![2, 1]).is_err());
        assert!(CFWord::new(vec![1, 3]).is_err());
        assert_eq!(CFWord::new(vec![3, 2, 5]).unwrap().weight(), 2 + 1 + 4);
    }

    #[test]
    fn golden_stream_digits() {
        let s = CFStream::golden();
        assert_eq!(s.prefix(5), vec![2, 3, 3, 3, 3]);
        assert_eq!(s.digit(10), Some(3));
    }

    #[test]
    fn arithmetic_stream_digits() {
        let s = CFStream::arithmetic(2, 4).unwrap();
        assert_eq!(s.prefix(4), vec![2, 6, 10, 14]);
        assert!(CFStream::arithmetic(1, 2).is_err());
    }

    #[test]
    fn word_serialises_as_plain_array() {
        let w = CFWord::new(vec![2, 2, 3]).unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "[2,2,3]");
        assert!(serde_json::from_str::<CFWord>("[2,1]").is_err());
    }
}
