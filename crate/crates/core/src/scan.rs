//! Corpus scanning against a seed pair.
//!
//! Every token is sanitized, related to the first seed word and scored
//! against the seed. Survivors of the gate and the threshold become
//! [`RelationRecord`]s, emitted in corpus order.

use std::collections::HashSet;
use std::num::NonZeroUsize;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::alphabet::{fold_word, LetterValueTable};
use crate::corpus::{sanitize, CorpusError, Policy, Token};
use crate::numerics::{
    encode, has_relation, relation_of_series, score, seed_of, DigitSeries, EncodeError,
    RelationValue, SeedPair,
};

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("seed word: {0}")]
    Seed(#[from] EncodeError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("failed to start scan workers: {0}")]
    Workers(String),
}

/// One scan hit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationRecord {
    pub word: String,
    pub percent: u128,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub seed_x: String,
    pub seed_y: String,
    /// Records scoring below this are dropped.
    pub min_percent: u128,
    /// Keep only the best `k` records (percent desc, position asc).
    pub top_k: Option<NonZeroUsize>,
    /// Emit only the first occurrence of each case-folded word.
    pub dedup: bool,
    pub policy: Policy,
}

impl ScanConfig {
    pub fn new(seed_x: impl Into<String>, seed_y: impl Into<String>) -> Self {
        ScanConfig {
            seed_x: seed_x.into(),
            seed_y: seed_y.into(),
            min_percent: 1,
            top_k: None,
            dedup: false,
            policy: Policy::Skip,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProgressEvent {
    /// 1-based index of the token just processed.
    pub current: usize,
    pub total: usize,
    pub percent_done: f64,
}

pub trait ProgressSink {
    fn progress(&mut self, event: ProgressEvent);
}

impl<F: FnMut(ProgressEvent)> ProgressSink for F {
    fn progress(&mut self, event: ProgressEvent) {
        self(event)
    }
}

/// Sink that discards every event.
pub struct NoProgress;

impl ProgressSink for NoProgress {
    fn progress(&mut self, _: ProgressEvent) {}
}

pub fn emit_progress(sink: &mut dyn ProgressSink, current: usize, total: usize) {
    debug_assert!(total >= 1 && current <= total);
    sink.progress(ProgressEvent {
        current,
        total,
        percent_done: current as f64 / total as f64 * 100.0,
    });
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub seed: SeedPair,
    pub records: Vec<RelationRecord>,
    pub tokens: usize,
    /// Tokens dropped by the skip policy.
    pub skipped: usize,
}

/// Per-token result before gating: `None` means the token was skipped.
type Evaluated = Result<Option<(String, RelationValue)>, CorpusError>;

/// A scan bound to one table and seed pair.
pub struct Scanner<'t> {
    table: &'t LetterValueTable,
    config: ScanConfig,
    seed: SeedPair,
    anchor: DigitSeries,
}

impl<'t> Scanner<'t> {
    pub fn new(table: &'t LetterValueTable, config: ScanConfig) -> Result<Self, ScanError> {
        let seed = seed_of(table, &config.seed_x, &config.seed_y)?;
        let anchor = encode(table, &config.seed_x)?;
        Ok(Scanner {
            table,
            config,
            seed,
            anchor,
        })
    }

    pub fn seed(&self) -> &SeedPair {
        &self.seed
    }

    fn evaluate(&self, token: &Token) -> Evaluated {
        let Some(word) = sanitize(token, self.table, self.config.policy)? else {
            return Ok(None);
        };
        let series = encode(self.table, &word).expect("sanitized words are encodable");
        Ok(Some((word, relation_of_series(&self.anchor, &series))))
    }

    /// Scans tokens in order on the calling thread.
    pub fn scan(
        &self,
        tokens: &[Token],
        progress: &mut dyn ProgressSink,
    ) -> Result<ScanReport, ScanError> {
        self.collect(tokens, tokens.iter().map(|t| self.evaluate(t)), progress)
    }

    /// Scans tokens on `workers` threads. Output is identical to [`Self::scan`].
    pub fn scan_parallel(
        &self,
        tokens: &[Token],
        workers: NonZeroUsize,
        progress: &mut dyn ProgressSink,
    ) -> Result<ScanReport, ScanError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.get())
            .build()
            .map_err(|e| ScanError::Workers(e.to_string()))?;
        let evaluated: Vec<Evaluated> =
            pool.install(|| tokens.par_iter().map(|t| self.evaluate(t)).collect());
        self.collect(tokens, evaluated.into_iter(), progress)
    }

    fn collect(
        &self,
        tokens: &[Token],
        evaluated: impl Iterator<Item = Evaluated>,
        progress: &mut dyn ProgressSink,
    ) -> Result<ScanReport, ScanError> {
        let total = tokens.len();
        let mut seen = HashSet::new();
        let mut records = Vec::new();
        let mut skipped = 0;

        for (i, (token, result)) in tokens.iter().zip(evaluated).enumerate() {
            emit_progress(progress, i + 1, total);
            let Some((word, rel)) = result? else {
                skipped += 1;
                continue;
            };
            if !has_relation(&self.seed, &rel) {
                continue;
            }
            let percent = score(&self.seed, &rel);
            if percent < self.config.min_percent {
                continue;
            }
            if self.config.dedup && !seen.insert(fold_word(&word)) {
                continue;
            }
            records.push(RelationRecord {
                word,
                percent,
                position: token.position,
            });
        }

        if let Some(k) = self.config.top_k {
            records = top_k(records, k);
        }

        Ok(ScanReport {
            seed: self.seed.clone(),
            records,
            tokens: total,
            skipped,
        })
    }
}

/// Keeps the `k` highest-percent records, earlier position winning ties,
/// and returns them in position order.
pub fn top_k(mut records: Vec<RelationRecord>, k: NonZeroUsize) -> Vec<RelationRecord> {
    records.sort_by(|a, b| {
        b.percent
            .cmp(&a.percent)
            .then_with(|| a.position.cmp(&b.position))
    });
    records.truncate(k.get());
    records.sort_by_key(|r| r.position);
    records
}

/// Convenience wrapper: build a [`Scanner`] and scan sequentially.
pub fn scan_corpus(
    table: &LetterValueTable,
    config: ScanConfig,
    tokens: &[Token],
) -> Result<ScanReport, ScanError> {
    Scanner::new(table, config)?.scan(tokens, &mut NoProgress)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;

    fn english() -> LetterValueTable {
        LetterValueTable::builtin_english()
    }

    fn rec(word: &str, percent: u128, position: usize) -> RelationRecord {
        RelationRecord {
            word: word.into(),
            percent,
            position,
        }
    }

    #[test]
    fn three_word_corpus() {
        let report = scan_corpus(
            &english(),
            ScanConfig::new("brain", "think"),
            &tokenize("university book imaging"),
        )
        .unwrap();
        assert_eq!(
            report.records,
            vec![
                rec("university", 33, 0),
                rec("book", 139, 1),
                rec("imaging", 237, 2)
            ]
        );
    }

    #[test]
    fn duplicates_kept_unless_dedup() {
        let t = english();
        let tokens = tokenize("Brain Brain brain");
        let report = scan_corpus(&t, ScanConfig::new("brain", "think"), &tokens).unwrap();
        assert_eq!(
            report.records,
            vec![
                rec("Brain", 360, 0),
                rec("Brain", 360, 1),
                rec("brain", 360, 2)
            ]
        );

        let mut cfg = ScanConfig::new("brain", "think");
        cfg.dedup = true;
        let report = scan_corpus(&t, cfg, &tokens).unwrap();
        assert_eq!(report.records, vec![rec("Brain", 360, 0)]);
    }

    #[test]
    fn empty_corpus() {
        let report = scan_corpus(&english(), ScanConfig::new("brain", "think"), &[]).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.tokens, 0);
    }

    #[test]
    fn bad_seed() {
        let err = scan_corpus(&english(), ScanConfig::new("brain", "42x"), &[]).unwrap_err();
        assert!(matches!(err, ScanError::Seed(_)));
    }

    #[test]
    fn skip_and_error_policies() {
        let t = english();
        let tokens = tokenize("book, 3.14 imaging");
        let report = scan_corpus(&t, ScanConfig::new("brain", "think"), &tokens).unwrap();
        assert_eq!(report.skipped, 1);
        assert_eq!(
            report.records,
            vec![rec("book", 139, 0), rec("imaging", 237, 2)]
        );

        let mut cfg = ScanConfig::new("brain", "think");
        cfg.policy = Policy::Error;
        let err = scan_corpus(&t, cfg, &tokens).unwrap_err();
        assert!(matches!(
            err,
            ScanError::Corpus(CorpusError::Unencodable { position: 1, .. })
        ));
    }

    #[test]
    fn threshold() {
        let t = english();
        let tokens = tokenize("structure university imaging");
        let mut cfg = ScanConfig::new("brain", "think");
        cfg.min_percent = 33;
        let report = scan_corpus(&t, cfg.clone(), &tokens).unwrap();
        assert_eq!(
            report.records,
            vec![rec("university", 33, 1), rec("imaging", 237, 2)]
        );
        cfg.min_percent = 0;
        assert_eq!(scan_corpus(&t, cfg, &tokens).unwrap().records.len(), 3);
    }

    #[test]
    fn top_k_breaks_ties_by_position() {
        let t = english();
        let tokens = tokenize("book Brain imaging Brain");
        let mut cfg = ScanConfig::new("brain", "think");
        cfg.top_k = NonZeroUsize::new(1);
        let report = scan_corpus(&t, cfg.clone(), &tokens).unwrap();
        assert_eq!(report.records, vec![rec("Brain", 360, 1)]);

        cfg.top_k = NonZeroUsize::new(3);
        let report = scan_corpus(&t, cfg, &tokens).unwrap();
        assert_eq!(
            report.records,
            vec![
                rec("Brain", 360, 1),
                rec("imaging", 237, 2),
                rec("Brain", 360, 3)
            ]
        );
    }

    #[test]
    fn progress_events() {
        let mut events = Vec::new();
        let mut sink = |e: ProgressEvent| events.push(e);
        emit_progress(&mut sink, 1, 4);
        emit_progress(&mut sink, 3, 4);
        emit_progress(&mut sink, 4, 4);
        let pct: Vec<f64> = events.iter().map(|e| e.percent_done).collect();
        assert_eq!(pct, vec![25.0, 75.0, 100.0]);
    }

    #[test]
    fn scan_reports_monotonic_progress() {
        let t = english();
        let tokens = tokenize("book 3.14 imaging wave");
        let scanner = Scanner::new(&t, ScanConfig::new("brain", "think")).unwrap();
        let mut seen = Vec::new();
        let mut sink = |e: ProgressEvent| seen.push((e.current, e.total));
        let seq = scanner.scan(&tokens, &mut sink).unwrap();
        assert_eq!(seen, vec![(1, 4), (2, 4), (3, 4), (4, 4)]);

        let par = scanner
            .scan_parallel(&tokens, NonZeroUsize::new(3).unwrap(), &mut NoProgress)
            .unwrap();
        assert_eq!(seq, par);
    }
}
