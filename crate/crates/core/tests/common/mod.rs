//! Brute-force reference used by the integration tests. Shares no code with
//! the library: its own letter table, string-based digit expansion and
//! big-integer rounding.

#![allow(dead_code)]

use num_bigint::BigUint;

pub const LETTERS: &str = "abcdefghijklmnopqrstuvwxyz";

pub const VALUES: [u32; 26] = [
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 200, 300, 400, 500, 600,
    700, 800,
];

pub fn value_of(c: char) -> Option<u32> {
    let lower = c.to_ascii_lowercase();
    LETTERS.find(lower).map(|i| VALUES[i])
}

/// Digits via `to_string` on each letter value.
pub fn digits(word: &str) -> Option<Vec<u32>> {
    let mut out = Vec::new();
    for c in word.chars() {
        for d in value_of(c)?.to_string().chars() {
            out.push(d.to_digit(10).unwrap());
        }
    }
    Some(out)
}

/// `(dot_sum, n)` with explicit zero padding.
pub fn relation(x: &str, y: &str) -> (u64, u64) {
    let mut a = digits(x).unwrap();
    let mut b = digits(y).unwrap();
    let n = a.len().max(b.len());
    a.resize(n, 0);
    b.resize(n, 0);
    let dot = a.iter().zip(&b).map(|(p, q)| u64::from(p * q)).sum();
    (dot, n as u64)
}

/// `round_half_away(s_dot * r_dot / (s_n * r_n))` in big integers.
pub fn score(seed: (u64, u64), rel: (u64, u64)) -> BigUint {
    let num = BigUint::from(seed.0) * BigUint::from(rel.0);
    let den = BigUint::from(seed.1) * BigUint::from(rel.1);
    let two = BigUint::from(2u32);
    (num * &two + &den) / (den * two)
}

/// Double-precision rendition of the same score.
pub fn score_f64(seed: (u64, u64), rel: (u64, u64)) -> u64 {
    let s = seed.0 as f64 / (10.0 * seed.1 as f64);
    let r = rel.0 as f64 / (10.0 * rel.1 as f64);
    (s * r * 100.0).round() as u64
}

/// Whole-pipeline reference: `(word, percent, position)` for each clean token.
pub fn scan(x: &str, y: &str, corpus: &[&str], min_percent: u64) -> Vec<(String, u64, usize)> {
    let seed = relation(x, y);
    let mut out = Vec::new();
    for (pos, word) in corpus.iter().enumerate() {
        if digits(word).is_none() || word.is_empty() {
            continue;
        }
        let rel = relation(x, word);
        if seed.0 == 0 || rel.0 == 0 {
            continue;
        }
        let pct: u64 = score(seed, rel).try_into().unwrap();
        if pct >= min_percent {
            out.push((word.to_string(), pct, pos));
        }
    }
    out
}

pub const RESULTS_WORDS: [&str; 52] = [
    "university",
    "book",
    "wave",
    "ai",
    "technology",
    "lesson",
    "succuss",
    "tree",
    "head",
    "black",
    "food",
    "sleep",
    "learn",
    "study",
    "class",
    "sport",
    "happy",
    "prepare",
    "romantic",
    "people",
    "Cognition",
    "Neurology",
    "Intelligence",
    "Memory",
    "Cognitive",
    "functions",
    "Neuroplasticity",
    "Synapse",
    "Neural",
    "networks",
    "Neurotransmitters",
    "Cognitive",
    "development",
    "Brain",
    "structure",
    "Brain",
    "activity",
    "Neural",
    "pathways",
    "Cognitive",
    "processes",
    "Mental",
    "processes",
    "Brain",
    "health",
    "Brain",
    "functions",
    "Neurological",
    "disorders",
    "Brain",
    "imaging",
    "Neurodegeneration",
];

pub const RESULTS_PERCENTS: [u128; 52] = [
    33, 139, 77, 155, 55, 7, 4, 71, 122, 129, 172, 44, 144, 4, 56, 43, 128, 112, 51, 72, 98, 9, 47,
    46, 98, 61, 6, 8, 15, 9, 5, 98, 51, 360, 2, 360, 61, 15, 12, 98, 50, 27, 50, 360, 108, 360, 61,
    9, 98, 360, 237, 6,
];

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}
