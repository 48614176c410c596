//! Abjad-numeral word relations.
//!
//! Words are encoded as decimal digit series from a letter-value table
//! ([`alphabet`]), related to each other by a padded dot product
//! ([`numerics`]), and a corpus ([`corpus`]) is scanned for words whose
//! relation to a seed pair yields a percentage relevance score ([`scan`]).

pub mod alphabet;
pub mod cli;
pub mod corpus;
pub mod numerics;
pub mod scan;

pub use alphabet::{load_alphabet, AlphabetError, LetterValueTable};
pub use corpus::{sanitize, tokenize, CorpusError, Policy, Token, Tokenizer};
pub use numerics::{
    encode, has_relation, pad_to_common_length, relation, score, score_exact, seed_of, DigitSeries,
    EncodeError, RelationValue, SeedPair,
};
pub use scan::{scan_corpus, RelationRecord, ScanConfig, ScanError, ScanReport, Scanner};
