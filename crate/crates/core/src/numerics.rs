//! Digit-series encoding, the relation metric and relevance scoring.
//!
//! A word is encoded by concatenating the decimal digits of each letter's
//! value. Two encodings are zero-padded to a common length `n`, multiplied
//! elementwise and summed; the relation value is `dot_sum / (10 n)`. All of
//! this stays in integers: a [`RelationValue`] carries `(dot_sum, n)` and the
//! score is computed as an exact fraction before rounding.

use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

use crate::alphabet::LetterValueTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("cannot encode an empty word")]
    EmptyWord,
    #[error("unencodable character {ch:?} at position {position} in {word:?}")]
    Unencodable {
        word: String,
        ch: char,
        position: usize,
    },
}

/// Decimal digits encoding a word. Every element is in `0..=9`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSeries(Vec<u8>);

impl DigitSeries {
    /// Wraps raw digits. Returns `None` if any element exceeds 9.
    pub fn from_digits(digits: Vec<u8>) -> Option<Self> {
        digits
            .iter()
            .all(|&d| d <= 9)
            .then_some(DigitSeries(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of elementwise products over the shared prefix. Equal to the dot
    /// product after zero padding, since the padding contributes nothing.
    pub fn dot(&self, other: &DigitSeries) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| u64::from(a) * u64::from(b))
            .sum()
    }
}

/// Formats as `[2, 0, 0]`.
impl fmt::Display for DigitSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

/// Exact relation value `dot_sum / (10 * padded_len)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RelationValue {
    pub dot_sum: u64,
    pub padded_len: u64,
}

impl RelationValue {
    /// The relation as an unreduced fraction `(dot_sum, 10 * padded_len)`.
    pub fn fraction(&self) -> (u64, u64) {
        (self.dot_sum, 10 * self.padded_len)
    }

    /// Floating-point approximation, for display only.
    pub fn approx(&self) -> f64 {
        self.dot_sum as f64 / (10.0 * self.padded_len as f64)
    }
}

/// Formats as the unreduced fraction, e.g. `118/90`.
impl fmt::Display for RelationValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.fraction();
        write!(f, "{num}/{den}")
    }
}

/// A reference word pair and the relation between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedPair {
    pub word_x: String,
    pub word_y: String,
    pub seed: RelationValue,
}

/// Encodes `word` as the concatenated decimal digits of its letter values.
pub fn encode(table: &LetterValueTable, word: &str) -> Result<DigitSeries, EncodeError> {
    if word.is_empty() {
        return Err(EncodeError::EmptyWord);
    }
    let mut digits = Vec::with_capacity(word.len() * 2);
    for (position, ch) in word.chars().enumerate() {
        let value = table
            .letter_value(ch)
            .ok_or_else(|| EncodeError::Unencodable {
                word: word.to_string(),
                ch,
                position,
            })?;
        push_decimal_digits(&mut digits, value);
    }
    Ok(DigitSeries(digits))
}

fn push_decimal_digits(out: &mut Vec<u8>, mut value: u64) {
    let start = out.len();
    loop {
        out.push((value % 10) as u8);
        value /= 10;
        if value == 0 {
            break;
        }
    }
    out[start..].reverse();
}

/// Appends trailing zeros to the shorter series so both have the same length.
pub fn pad_to_common_length(a: &DigitSeries, b: &DigitSeries) -> (DigitSeries, DigitSeries) {
    let n = a.len().max(b.len());
    let pad = |s: &DigitSeries| {
        let mut digits = s.0.clone();
        digits.resize(n, 0);
        DigitSeries(digits)
    };
    (pad(a), pad(b))
}

/// Relation between two already-encoded series.
pub fn relation_of_series(a: &DigitSeries, b: &DigitSeries) -> RelationValue {
    RelationValue {
        dot_sum: a.dot(b),
        padded_len: a.len().max(b.len()) as u64,
    }
}

/// Relation between two words under `table`.
pub fn relation(table: &LetterValueTable, x: &str, y: &str) -> Result<RelationValue, EncodeError> {
    let a = encode(table, x)?;
    let b = encode(table, y)?;
    Ok(relation_of_series(&a, &b))
}

pub fn seed_of(table: &LetterValueTable, x: &str, y: &str) -> Result<SeedPair, EncodeError> {
    Ok(SeedPair {
        word_x: x.to_string(),
        word_y: y.to_string(),
        seed: relation(table, x, y)?,
    })
}

/// Exact percentage `seed * rel * 100` as a reduced fraction.
///
/// The two factors of ten in the relation denominators cancel the `* 100`, so
/// this is `(seed.dot_sum * rel.dot_sum) / (seed.padded_len * rel.padded_len)`.
/// Products are widened to `u128` and cannot overflow.
pub fn score_exact(seed: &SeedPair, rel: &RelationValue) -> Ratio<u128> {
    let num = u128::from(seed.seed.dot_sum) * u128::from(rel.dot_sum);
    let den = u128::from(seed.seed.padded_len) * u128::from(rel.padded_len);
    Ratio::new(num, den)
}

/// Integer percentage: [`score_exact`] rounded half away from zero.
pub fn score(seed: &SeedPair, rel: &RelationValue) -> u128 {
    score_exact(seed, rel).round().to_integer()
}

/// Whether a candidate relation counts as related to the seed at all.
pub fn has_relation(seed: &SeedPair, rel: &RelationValue) -> bool {
    seed.seed.dot_sum > 0 && rel.dot_sum > 0
}
