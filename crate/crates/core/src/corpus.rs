//! Corpus tokenization and token sanitizing.
//!
//! [`Tokenizer`] streams whitespace-separated tokens out of any reader,
//! decoding with a configurable text encoding. Token boundaries never depend
//! on how the underlying reader chunks its bytes.

use std::io::{self, Read};
use std::str::FromStr;

use encoding_rs::{DecoderResult, Encoding, UTF_8};
use thiserror::Error;

use crate::alphabet::LetterValueTable;

const CHUNK: usize = 8 * 1024;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error reading corpus: {0}")]
    Io(#[from] io::Error),
    #[error("invalid {encoding} input at byte offset {offset}")]
    Decode { encoding: &'static str, offset: u64 },
    #[error("unknown text encoding {0:?}")]
    UnknownEncoding(String),
    #[error("unencodable token {surface:?} at position {position}")]
    Unencodable { surface: String, position: usize },
}

/// One whitespace-separated token and its index in the stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub position: usize,
}

impl Token {
    pub fn new(surface: impl Into<String>, position: usize) -> Self {
        Token {
            surface: surface.into(),
            position,
        }
    }
}

/// What to do with a token that has no encodable core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    #[default]
    Skip,
    Error,
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "skip" => Ok(Policy::Skip),
            "error" => Ok(Policy::Error),
            other => Err(format!("unknown policy {other:?} (expected skip|error)")),
        }
    }
}

/// Resolves an encoding label such as `utf-8` or `windows-1256`.
pub fn encoding_for_label(label: &str) -> Result<&'static Encoding, CorpusError> {
    Encoding::for_label(label.as_bytes()).ok_or_else(|| CorpusError::UnknownEncoding(label.into()))
}

/// Streaming whitespace tokenizer over a byte reader.
pub struct Tokenizer<R> {
    reader: R,
    decoder: encoding_rs::Decoder,
    encoding: &'static Encoding,
    buf: Vec<u8>,
    text: String,
    cursor: usize,
    bytes_consumed: u64,
    next_position: usize,
    eof: bool,
    failed: bool,
}

impl<R: Read> Tokenizer<R> {
    pub fn new(reader: R) -> Self {
        Self::with_encoding(reader, UTF_8)
    }

    pub fn with_encoding(reader: R, encoding: &'static Encoding) -> Self {
        Tokenizer {
            reader,
            decoder: encoding.new_decoder_without_bom_handling(),
            encoding,
            buf: vec![0; CHUNK],
            text: String::new(),
            cursor: 0,
            bytes_consumed: 0,
            next_position: 0,
            eof: false,
            failed: false,
        }
    }

    /// Reads one chunk and appends its decoded text. Returns false at EOF.
    fn fill(&mut self) -> Result<bool, CorpusError> {
        if self.eof {
            return Ok(false);
        }
        let n = loop {
            match self.reader.read(&mut self.buf) {
                Ok(n) => break n,
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(e.into()),
            }
        };
        let last = n == 0;
        if last {
            self.eof = true;
        }

        // Drop consumed text so the buffer only holds the pending tail.
        self.text.drain(..self.cursor);
        self.cursor = 0;

        let mut input = &self.buf[..n];
        loop {
            let cap = self
                .decoder
                .max_utf8_buffer_length_without_replacement(input.len())
                .unwrap_or(input.len() * 3 + 16);
            self.text.reserve(cap);
            let (result, read) =
                self.decoder
                    .decode_to_string_without_replacement(input, &mut self.text, last);
            self.bytes_consumed += read as u64;
            input = &input[read..];
            match result {
                DecoderResult::InputEmpty => break,
                DecoderResult::OutputFull => continue,
                DecoderResult::Malformed(bad, pending) => {
                    let offset = self.bytes_consumed - u64::from(bad) - u64::from(pending);
                    return Err(CorpusError::Decode {
                        encoding: self.encoding.name(),
                        offset,
                    });
                }
            }
        }
        Ok(!last)
    }

    fn next_token(&mut self) -> Result<Option<Token>, CorpusError> {
        loop {
            let pending = &self.text[self.cursor..];
            let trimmed = pending.trim_start();
            self.cursor += pending.len() - trimmed.len();

            if let Some(end) = trimmed.find(char::is_whitespace) {
                let surface = trimmed[..end].to_string();
                self.cursor += end;
                return Ok(Some(self.emit(surface)));
            }
            if !self.fill()? {
                let rest = &self.text[self.cursor..];
                if rest.is_empty() {
                    return Ok(None);
                }
                let surface = rest.to_string();
                self.cursor = self.text.len();
                return Ok(Some(self.emit(surface)));
            }
        }
    }

    fn emit(&mut self, surface: String) -> Token {
        let token = Token::new(surface, self.next_position);
        self.next_position += 1;
        token
    }
}

impl<R: Read> Iterator for Tokenizer<R> {
    type Item = Result<Token, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        match self.next_token() {
            Ok(t) => t.map(Ok),
            Err(e) => {
                self.failed = true;
                Some(Err(e))
            }
        }
    }
}

/// Splits a string on runs of whitespace.
pub fn tokenize(input: &str) -> Vec<Token> {
    input
        .split_whitespace()
        .enumerate()
        .map(|(i, s)| Token::new(s, i))
        .collect()
}

/// Reads and tokenizes a whole stream.
pub fn tokenize_reader<R: Read>(
    reader: R,
    encoding: &'static Encoding,
) -> Result<Vec<Token>, CorpusError> {
    Tokenizer::with_encoding(reader, encoding).collect()
}

/// Trims characters outside `table` from both ends of the token.
///
/// Returns the trimmed surface if it is non-empty and every remaining
/// character is in the table. Otherwise returns `Ok(None)` under
/// [`Policy::Skip`] or an error under [`Policy::Error`]. Case is preserved.
pub fn sanitize(
    token: &Token,
    table: &LetterValueTable,
    policy: Policy,
) -> Result<Option<String>, CorpusError> {
    let core = token.surface.trim_matches(|c: char| !table.contains(c));
    if !core.is_empty() && core.chars().all(|c| table.contains(c)) {
        return Ok(Some(core.to_string()));
    }
    match policy {
        Policy::Skip => Ok(None),
        Policy::Error => Err(CorpusError::Unencodable {
            surface: token.surface.clone(),
            position: token.position,
        }),
    }
}
