//! Letter-value tables.
//!
//! A [`LetterValueTable`] maps single letters to positive Abjad values. Letters
//! are stored case-folded, and every lookup folds its input the same way, so
//! `'B'` and `'b'` resolve to the same value.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// English letter values, `a` through `z`.
const ENGLISH: [(char, u64); 26] = [
    ('a', 1),
    ('b', 2),
    ('c', 3),
    ('d', 4),
    ('e', 5),
    ('f', 6),
    ('g', 7),
    ('h', 8),
    ('i', 9),
    ('j', 10),
    ('k', 20),
    ('l', 30),
    ('m', 40),
    ('n', 50),
    ('o', 60),
    ('p', 70),
    ('q', 80),
    ('r', 90),
    ('s', 100),
    ('t', 200),
    ('u', 300),
    ('v', 400),
    ('w', 500),
    ('x', 600),
    ('y', 700),
    ('z', 800),
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("malformed alphabet document: {0}")]
    Malformed(String),
    #[error("key {key:?}: expected exactly one character")]
    NotSingleChar { key: String },
    #[error("key {key:?}: duplicate letter after case fold")]
    DuplicateLetter { key: String },
    #[error("key {key:?}: non-positive value {value}")]
    NonPositive { key: String, value: String },
    #[error("alphabet {name:?} is empty")]
    Empty { name: String },
}

/// Simple case fold: the lowercase mapping when it is a single scalar,
/// otherwise the character itself.
pub fn fold_char(ch: char) -> char {
    let mut lower = ch.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(c), None) => c,
        _ => ch,
    }
}

/// Folds every character of `word` with [`fold_char`].
pub fn fold_word(word: &str) -> String {
    word.chars().map(fold_char).collect()
}

/// An immutable letter → value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterValueTable {
    name: String,
    entries: BTreeMap<char, u64>,
}

impl LetterValueTable {
    /// Builds a table from `(letter, value)` pairs, enforcing the table
    /// invariants.
    pub fn new<I>(name: impl Into<String>, entries: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = (char, u64)>,
    {
        let name = name.into();
        let mut map = BTreeMap::new();
        for (ch, value) in entries {
            let key = ch.to_string();
            if value == 0 {
                return Err(AlphabetError::NonPositive {
                    key,
                    value: value.to_string(),
                });
            }
            if map.insert(fold_char(ch), value).is_some() {
                return Err(AlphabetError::DuplicateLetter { key });
            }
        }
        if map.is_empty() {
            return Err(AlphabetError::Empty { name });
        }
        Ok(LetterValueTable { name, entries: map })
    }

    /// The 26-letter English table.
    pub fn builtin_english() -> Self {
        LetterValueTable {
            name: "english".to_string(),
            entries: ENGLISH.iter().copied().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Looks up `ch` after case folding. Absent letters are not an error here.
    pub fn letter_value(&self, ch: char) -> Option<u64> {
        self.entries.get(&fold_char(ch)).copied()
    }

    pub fn contains(&self, ch: char) -> bool {
        self.letter_value(ch).is_some()
    }

    /// Entries in letter order.
    pub fn iter(&self) -> impl Iterator<Item = (char, u64)> + '_ {
        self.entries.iter().map(|(&c, &v)| (c, v))
    }

    /// Serializes the table as an alphabet config document.
    pub fn to_json(&self) -> String {
        let doc = AlphabetDocOut {
            name: &self.name,
            values: self
                .entries
                .iter()
                .map(|(c, v)| (c.to_string(), *v))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("alphabet document serializes")
    }
}

#[derive(Serialize)]
struct AlphabetDocOut<'a> {
    name: &'a str,
    values: BTreeMap<String, u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphabetDoc {
    name: String,
    values: RawEntries,
}

/// Object entries in document order, keeping repeated keys so they can be
/// reported instead of silently overwritten.
struct RawEntries(Vec<(String, serde_json::Value)>);

impl<'de> Deserialize<'de> for RawEntries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = RawEntries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping letters to positive integers")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<RawEntries, A::Error> {
                let mut out = Vec::with_capacity(map.size_hint().unwrap_or(0));
                while let Some(entry) = map.next_entry::<String, serde_json::Value>()? {
                    out.push(entry);
                }
                Ok(RawEntries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

/// Parses and validates an alphabet config document
/// (`{"name": "...", "values": {"a": 1, ...}}`).
pub fn load_alphabet(source: &str) -> Result<LetterValueTable, AlphabetError> {
    let doc: AlphabetDoc =
        serde_json::from_str(source).map_err(|e| AlphabetError::Malformed(e.to_string()))?;

    let mut entries = Vec::with_capacity(doc.values.0.len());
    for (key, value) in doc.values.0 {
        let mut chars = key.chars();
        let ch = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(AlphabetError::NotSingleChar { key }),
        };
        let value = match value.as_u64() {
            Some(v) if v > 0 => v,
            Some(_) => {
                return Err(AlphabetError::NonPositive {
                    key,
                    value: value.to_string(),
                })
            }
            None if value.as_i64().is_some() => {
                return Err(AlphabetError::NonPositive {
                    key,
                    value: value.to_string(),
                })
            }
            None => {
                return Err(AlphabetError::Malformed(format!(
                    "key {key:?}: value {value} is not a positive integer"
                )))
            }
        };
        entries.push((ch, value));
    }
    LetterValueTable::new(doc.name, entries)
}
