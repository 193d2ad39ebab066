//! Automatic bilingual dictionary construction.
//!
//! After the first, length-only alignment pass, every substitution bead is
//! treated as a bag of co-occurring words. Word pairs that keep showing up
//! together across beads get a Dice association score; pairs above the
//! count and association thresholds form the dictionary used by the second
//! pass.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use super::{Bead, BeadKind};
use crate::error::{Error, Result};
use crate::segment::Sentence;

/// Words shorter than this (in characters) never enter the dictionary.
pub const MIN_DICT_WORD_CHARS: usize = 3;
/// Default minimum number of co-occurring beads for a pair.
pub const DEFAULT_MIN_COUNT: u32 = 2;
/// Default minimum Dice association.
pub const DEFAULT_MIN_ASSOC: f64 = 0.3;

/// Word-pair association table.
#[derive(Debug, Clone, Default)]
pub struct BilingualDictionary {
    entries: BTreeMap<(String, String), f64>,
    by_src: HashMap<String, Vec<String>>,
    pub min_count: u32,
    pub min_assoc: f64,
}

impl BilingualDictionary {
    pub fn new(min_count: u32, min_assoc: f64) -> BilingualDictionary {
        BilingualDictionary {
            entries: BTreeMap::new(),
            by_src: HashMap::new(),
            min_count,
            min_assoc,
        }
    }

    pub fn insert(&mut self, src: &str, tgt: &str, score: f64) {
        self.entries
            .insert((src.to_string(), tgt.to_string()), score);
        self.by_src
            .entry(src.to_string())
            .or_default()
            .push(tgt.to_string());
    }

    pub fn score(&self, src: &str, tgt: &str) -> Option<f64> {
        self.entries
            .get(&(src.to_string(), tgt.to_string()))
            .copied()
    }

    /// Known translations of a source word.
    pub fn translations(&self, src: &str) -> &[String] {
        self.by_src.get(src).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in deterministic (source, target) order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.entries
            .iter()
            .map(|((s, t), &score)| (s.as_str(), t.as_str(), score))
    }

    /// Parse the tab-separated `src<TAB>tgt<TAB>score` format.
    pub fn from_tsv_str(raw: &str) -> Result<BilingualDictionary> {
        let mut dict = BilingualDictionary::new(DEFAULT_MIN_COUNT, DEFAULT_MIN_ASSOC);
        let mut min_seen = f64::INFINITY;
        for (lineno, line) in raw.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split('\t');
            let (src, tgt, score) = match (parts.next(), parts.next(), parts.next()) {
                (Some(s), Some(t), Some(v)) => (s, t, v),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "dictionary line {}: expected src<TAB>tgt<TAB>score",
                        lineno + 1
                    )));
                }
            };
            let score: f64 = score.parse().map_err(|_| {
                Error::InvalidInput(format!("dictionary line {}: bad score", lineno + 1))
            })?;
            dict.insert(src, tgt, score);
            min_seen = min_seen.min(score);
        }
        if min_seen.is_finite() {
            dict.min_assoc = dict.min_assoc.min(min_seen);
        }
        Ok(dict)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<BilingualDictionary> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_tsv_str(&raw)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (src, tgt, score) in self.iter() {
            out.push_str(&format!("{src}\t{tgt}\t{score}\n"));
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_tsv()).map_err(|e| Error::io(path, e))
    }
}

fn span_types<'a>(sentences: &'a [Sentence], range: std::ops::Range<usize>) -> BTreeSet<&'a str> {
    let mut types = BTreeSet::new();
    for sentence in &sentences[range] {
        for token in sentence.text.split_whitespace() {
            if token.chars().count() >= MIN_DICT_WORD_CHARS {
                types.insert(token);
            }
        }
    }
    types
}

/// Build a dictionary from aligned documents.
///
/// Only substitution beads contribute. Counting is type-level per bead: a
/// word pair counts once for every bead where both words appear, and the
/// association is Dice, 2·count(s,t) / (count(s) + count(t)).
pub fn build_dictionary<'a, I>(aligned: I, min_count: u32, min_assoc: f64) -> BilingualDictionary
where
    I: IntoIterator<Item = (&'a [Bead], &'a [Sentence], &'a [Sentence])>,
{
    let mut pair_counts: HashMap<(String, String), u32> = HashMap::new();
    let mut src_counts: HashMap<String, u32> = HashMap::new();
    let mut tgt_counts: HashMap<String, u32> = HashMap::new();

    for (beads, src, tgt) in aligned {
        for bead in beads {
            if !bead.kind.is_substitution() {
                continue;
            }
            let src_types = span_types(src, bead.src_range());
            let tgt_types = span_types(tgt, bead.tgt_range());
            for s in &src_types {
                *src_counts.entry(s.to_string()).or_insert(0) += 1;
            }
            for t in &tgt_types {
                *tgt_counts.entry(t.to_string()).or_insert(0) += 1;
            }
            for s in &src_types {
                for t in &tgt_types {
                    *pair_counts
                        .entry((s.to_string(), t.to_string()))
                        .or_insert(0) += 1;
                }
            }
        }
    }

    let mut dict = BilingualDictionary::new(min_count, min_assoc);
    for ((s, t), count) in pair_counts {
        if count < min_count {
            continue;
        }
        let dice = 2.0 * count as f64 / (src_counts[&s] + tgt_counts[&t]) as f64;
        if dice >= min_assoc {
            dict.insert(&s, &t, dice);
        }
    }
    dict
}

/// Convenience for tests and callers holding documents as sentence lists.
pub(crate) fn substitution_bead(kind: BeadKind, src_start: usize, tgt_start: usize) -> Bead {
    Bead {
        kind,
        src_start,
        tgt_start,
        cost: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::Sentence;

    fn sentences(texts: &[&str]) -> Vec<Sentence> {
        texts.iter().map(|t| Sentence::new(*t)).collect()
    }

    fn one_one(i: usize) -> Bead {
        substitution_bead(BeadKind::OneOne, i, i)
    }

    #[test]
    fn exclusive_cooccurrence_scores_one() {
        // "gato"/"cat" share three beads; every other word is unique to its
        // bead, so nothing else reaches min_count.
        let src = sentences(&[
            "gato dorme cedo",
            "gato corre rápido",
            "gato pula alto",
        ]);
        let tgt = sentences(&[
            "cat sleeps early",
            "cat runs fast",
            "cat jumps high",
        ]);
        let beads = vec![one_one(0), one_one(1), one_one(2)];
        let dict = build_dictionary([(beads.as_slice(), src.as_slice(), tgt.as_slice())], 2, 0.3);
        assert_eq!(dict.score("gato", "cat"), Some(1.0));
        assert_eq!(dict.score("gato", "runs"), None);
    }

    #[test]
    fn empty_bead_list_gives_empty_dictionary() {
        let src = sentences(&["uma frase"]);
        let tgt = sentences(&["a sentence"]);
        let dict = build_dictionary([(&[] as &[Bead], src.as_slice(), tgt.as_slice())], 2, 0.3);
        assert!(dict.is_empty());
    }

    #[test]
    fn pair_below_min_count_is_absent() {
        let src = sentences(&["gato dorme"]);
        let tgt = sentences(&["cat sleeps"]);
        let beads = vec![one_one(0)];
        let dict = build_dictionary([(beads.as_slice(), src.as_slice(), tgt.as_slice())], 2, 0.3);
        assert!(dict.is_empty());
    }

    #[test]
    fn short_words_are_excluded() {
        let src = sentences(&["o gato mia", "o gato come"]);
        let tgt = sentences(&["el cat meows", "el cat eats"]);
        let beads = vec![one_one(0), one_one(1)];
        let dict = build_dictionary([(beads.as_slice(), src.as_slice(), tgt.as_slice())], 2, 0.3);
        assert!(dict.score("o", "el").is_none());
        assert_eq!(dict.score("gato", "cat"), Some(1.0));
    }

    #[test]
    fn insertion_beads_do_not_contribute() {
        let src = sentences(&["gato dorme", "frase extra"]);
        let tgt = sentences(&["cat sleeps"]);
        let beads = vec![
            one_one(0),
            Bead {
                kind: BeadKind::OneZero,
                src_start: 1,
                tgt_start: 1,
                cost: 0.0,
            },
        ];
        let dict = build_dictionary([(beads.as_slice(), src.as_slice(), tgt.as_slice())], 1, 0.1);
        assert!(dict.score("frase", "cat").is_none());
        assert!(dict.score("extra", "cat").is_none());
    }

    #[test]
    fn stored_scores_respect_min_assoc() {
        // "verde" appears in 4 source beads but pairs with "green" in only
        // 2, giving Dice 2·2/(4+2) = 0.667; with "blue" Dice 2·2/(4+2) as
        // well. Raise min_assoc to filter.
        let src = sentences(&["verde claro", "verde escuro", "verde novo", "verde velho"]);
        let tgt = sentences(&["green light", "green dark", "blue fresh", "blue aged"]);
        let beads = vec![one_one(0), one_one(1), one_one(2), one_one(3)];
        let dict = build_dictionary([(beads.as_slice(), src.as_slice(), tgt.as_slice())], 2, 0.7);
        assert!(dict.is_empty());
        let dict = build_dictionary([(beads.as_slice(), src.as_slice(), tgt.as_slice())], 2, 0.5);
        assert!((dict.score("verde", "green").unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert!(dict.iter().all(|(_, _, score)| score >= dict.min_assoc));
    }

    #[test]
    fn tsv_roundtrip() {
        let mut dict = BilingualDictionary::new(2, 0.3);
        dict.insert("gato", "cat", 0.9);
        dict.insert("cão", "dog", 0.75);
        let tsv = dict.to_tsv();
        let reloaded = BilingualDictionary::from_tsv_str(&tsv).unwrap();
        assert_eq!(reloaded.to_tsv(), tsv);
        assert_eq!(reloaded.score("cão", "dog"), Some(0.75));
        assert_eq!(reloaded.translations("gato"), ["cat".to_string()]);
    }

    #[test]
    fn malformed_tsv_is_rejected() {
        assert!(BilingualDictionary::from_tsv_str("gato cat 0.9\n").is_err());
        assert!(BilingualDictionary::from_tsv_str("gato\tcat\tnot_a_number\n").is_err());
    }
}
