//! Words in a free group over indexed generators.

use crate::error::{Error, Result};

/// A freely reducible word: a sequence of (generator index, exponent ±1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    pub letters: Vec<(usize, i32)>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    pub fn generator(index: usize) -> Word {
        Word {
            letters: vec![(index, 1)],
        }
    }

    pub fn from_letters(letters: Vec<(usize, i32)>) -> Word {
        Word { letters }.reduced()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Free reduction: cancel adjacent inverse pairs until none remain.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<(usize, i32)> = Vec::with_capacity(self.letters.len());
        for &(g, e) in &self.letters {
            debug_assert!(e == 1 || e == -1);
            if let Some(&(h, f)) = out.last() {
                if h == g && f == -e {
                    out.pop();
                    continue;
                }
            }
            out.push((g, e));
        }
        Word { letters: out }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// Reduced concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }.reduced()
    }

    /// Reduced conjugate `by · self · by⁻¹`.
    pub fn conjugated(&self, by: &Word) -> Word {
        by.concat(self).concat(&by.inverse())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Exponent-sum vector over `n` generators (abelianized image).
    pub fn exponent_vector(&self, n: usize) -> Vec<i128> {
        let mut v = vec![0i128; n];
        for &(g, e) in &self.letters {
            v[g] += e as i128;
        }
        v
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|&(g, _)| g).max()
    }

    /// Renders over generator names, `^-1` marking inverse letters;
    /// the identity renders as `1`.
    pub fn to_text(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    names[g].clone()
                } else {
                    format!("{}^-1", names[g])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses the `to_text` format; also accepts positive integer powers
    /// like `a^3` and `a^-2` for convenience.
    pub fn parse(text: &str, names: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::MalformedWord(format!("bad exponent in `{token}`")))?;
                    (n, exp)
                }
                None => (token, 1),
            };
            let idx = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::MalformedWord(format!("unknown generator `{name}`")))?;
            let sign = if exp >= 0 { 1 } else { -1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push((idx, sign));
            }
        }
        Ok(Word::from_letters(letters))
    }
}
