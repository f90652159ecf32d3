//! Alphabets, finite words and eventually periodic infinite words.
//!
//! Letters of an alphabet of size `k` are the integers `0..k`. Infinite words
//! are kept in a canonical `u·v^ω` form (primitive period, shortest
//! preperiod), so structural equality coincides with equality of the
//! denoted ω-words.

use std::borrow::Borrow;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Alphabet(u32);

impl Alphabet {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet(size))
    }

    /// The alphabet `{0, 1, ..., max}`.
    pub fn up_to(max: u32) -> Self {
        Alphabet(max + 1)
    }

    pub fn size(self) -> u32 {
        self.0
    }

    /// Alphabets are never empty, so there is no `is_empty`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, letter: Letter) -> bool {
        letter < self.0
    }

    pub fn letters(self) -> impl DoubleEndedIterator<Item = Letter> + Clone {
        0..self.0
    }

    pub(crate) fn check(self, letters: &[Letter], context: impl FnOnce() -> String) -> Result<()> {
        match letters.iter().find(|&&l| !self.contains(l)) {
            Some(&letter) => Err(Error::LetterOutOfRange {
                letter,
                size: self.0,
                context: context(),
            }),
            None => Ok(()),
        }
    }

    /// Renders a word as a digit string for alphabets of at most ten letters,
    /// and as comma-separated integers otherwise.
    pub fn format(self, word: &[Letter]) -> String {
        if self.0 <= 10 {
            word.iter().map(|l| char::from(b'0' + *l as u8)).collect()
        } else {
            word.iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Inverse of [`Alphabet::format`]. The empty string and `ε` both denote
    /// the empty word.
    pub fn parse(self, text: &str) -> Result<FiniteWord> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(FiniteWord::empty());
        }
        let letters: Vec<Letter> = if self.0 <= 10 && !text.contains(',') {
            text.chars()
                .map(|c| {
                    c.to_digit(10).ok_or_else(|| {
                        Error::InvalidParameter(format!("{c:?} is not a letter in {text:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            text.split(',')
                .map(|part| {
                    part.trim().parse::<Letter>().map_err(|_| {
                        Error::InvalidParameter(format!("{part:?} is not a letter in {text:?}"))
                    })
                })
                .collect::<Result<_>>()?
        };
        self.check(&letters, || format!("word {text:?}"))?;
        Ok(FiniteWord(letters))
    }
}

impl TryFrom<u32> for Alphabet {
    type Error = Error;

    fn try_from(size: u32) -> Result<Self> {
        Alphabet::new(size)
    }
}

impl From<Alphabet> for u32 {
    fn from(a: Alphabet) -> u32 {
        a.0
    }
}

/// A finite word; may be empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord(letters)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    pub fn repeat(letter: Letter, count: usize) -> Self {
        FiniteWord(vec![letter; count])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn extend_from(&mut self, other: &[Letter]) {
        self.0.extend_from_slice(other);
    }

    pub fn concat(&self, other: &[Letter]) -> FiniteWord {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        FiniteWord(v)
    }

    pub fn truncate(&mut self, len: usize) {
        self.0.truncate(len);
    }

    pub fn is_prefix_of(&self, other: &[Letter]) -> bool {
        other.starts_with(&self.0)
    }
}

impl Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl Borrow<[Letter]> for FiniteWord {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for FiniteWord {
    fn from(v: Vec<Letter>) -> Self {
        FiniteWord(v)
    }
}

impl From<&[Letter]> for FiniteWord {
    fn from(v: &[Letter]) -> Self {
        FiniteWord(v.to_vec())
    }
}

impl FromIterator<Letter> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FiniteWord(iter.into_iter().collect())
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|&l| l < 10) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

/// The ω-word `preperiod · period · period · …`, stored canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPeriodic")]
pub struct EventuallyPeriodicWord {
    preperiod: FiniteWord,
    period: FiniteWord,
}

#[derive(Deserialize)]
struct RawPeriodic {
    preperiod: FiniteWord,
    period: FiniteWord,
}

impl TryFrom<RawPeriodic> for EventuallyPeriodicWord {
    type Error = Error;

    fn try_from(raw: RawPeriodic) -> Result<Self> {
        EventuallyPeriodicWord::new(raw.preperiod, raw.period)
    }
}

impl EventuallyPeriodicWord {
    pub fn new(preperiod: impl Into<FiniteWord>, period: impl Into<FiniteWord>) -> Result<Self> {
        let mut preperiod = preperiod.into().into_letters();
        let mut period = period.into().into_letters();
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let p = primitive_root_len(&period);
        period.truncate(p);
        // Fold trailing preperiod letters into the period by rotation.
        while let (Some(&a), Some(&b)) = (preperiod.last(), period.last()) {
            if a != b {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(EventuallyPeriodicWord {
            preperiod: FiniteWord(preperiod),
            period: FiniteWord(period),
        })
    }

    /// `letter^ω`.
    pub fn constant(letter: Letter) -> Self {
        EventuallyPeriodicWord {
            preperiod: FiniteWord::empty(),
            period: FiniteWord(vec![letter]),
        }
    }

    pub fn preperiod(&self) -> &FiniteWord {
        &self.preperiod
    }

    pub fn period(&self) -> &FiniteWord {
        &self.period
    }

    pub fn letter_at(&self, index: usize) -> Letter {
        let pre = self.preperiod.len();
        if index < pre {
            self.preperiod[index]
        } else {
            self.period[(index - pre) % self.period.len()]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Letter> + '_ {
        self.preperiod
            .iter()
            .copied()
            .chain(self.period.iter().copied().cycle())
    }

    pub fn prefix(&self, len: usize) -> FiniteWord {
        self.iter().take(len).collect()
    }

    /// Number of leading letters two words share; `None` when they are equal.
    pub fn common_prefix_len(&self, other: &Self) -> Option<usize> {
        if self == other {
            return None;
        }
        // Distinct words differ within this many letters.
        let bound = self.preperiod.len().max(other.preperiod.len())
            + self.period.len()
            + other.period.len();
        let n = self
            .iter()
            .zip(other.iter())
            .take(bound)
            .take_while(|(a, b)| a == b)
            .count();
        debug_assert!(n < bound);
        Some(n)
    }

    pub fn max_letter(&self) -> Letter {
        self.preperiod
            .iter()
            .chain(self.period.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for EventuallyPeriodicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.preperiod.is_empty() {
            write!(f, "{}", self.preperiod)?;
        }
        write!(f, "({})^ω", self.period)
    }
}

fn primitive_root_len(word: &[Letter]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&p| n.is_multiple_of(p) && (p..n).all(|i| word[i] == word[i - p]))
        .unwrap_or(n)
}

/// Either kind of word, for operations that mix finite and infinite words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyWord {
    Finite(FiniteWord),
    Omega(EventuallyPeriodicWord),
}

impl AnyWord {
    fn letter_at(&self, index: usize) -> Option<Letter> {
        match self {
            AnyWord::Finite(w) => w.get(index).copied(),
            AnyWord::Omega(w) => Some(w.letter_at(index)),
        }
    }
}

/// Longest common prefix of a set of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CommonPrefix {
    Finite(FiniteWord),
    /// The set consists of a single ω-word.
    Infinite,
}

/// Longest common prefix of a non-empty set of finite and/or infinite words.
pub fn lcp(words: &[AnyWord]) -> Result<CommonPrefix> {
    let (first, rest) = words.split_first().ok_or(Error::EmptySet)?;
    let mut omegas = words.iter().filter_map(|w| match w {
        AnyWord::Omega(o) => Some(o),
        AnyWord::Finite(_) => None,
    });
    let all_omega = words.iter().all(|w| matches!(w, AnyWord::Omega(_)));
    if all_omega {
        let head = omegas.next().expect("non-empty");
        if omegas.all(|o| o == head) {
            return Ok(CommonPrefix::Infinite);
        }
    }
    // Some pair differs at a finite position, so the scan terminates.
    let mut prefix = FiniteWord::empty();
    for i in 0.. {
        let Some(letter) = first.letter_at(i) else {
            break;
        };
        if rest.iter().any(|w| w.letter_at(i) != Some(letter)) {
            break;
        }
        prefix.push(letter);
    }
    Ok(CommonPrefix::Finite(prefix))
}

/// Length of the longest common prefix of two finite words.
pub fn common_prefix_len(a: &[Letter], b: &[Letter]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
