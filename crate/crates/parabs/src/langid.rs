//! Character n-gram language detection.
//!
//! A [`LanguageProfile`] is an additive-smoothed table of character n-gram
//! log probabilities (n = 1..=3) trained from raw text. Detection scores a
//! text against each profile by length-normalized log-likelihood, so scores
//! are comparable across input lengths. The crate bundles seed corpora for
//! Portuguese and English; [`builtin_profiles`] trains from them once and
//! caches the result.
//!
//! The detector exists to catch records whose abstracts were filed under the
//! wrong language field, not to identify arbitrary languages.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ingest::DocumentRecord;
use crate::text::normalize_text;

/// Inputs shorter than this (after whitespace normalization) are reported
/// as unknown rather than guessed.
pub const MIN_DETECT_CHARS: usize = 20;

/// Default additive smoothing constant.
pub const DEFAULT_SMOOTHING: f64 = 0.5;

/// Bundled Portuguese seed corpus, one sentence per line.
pub const SEED_PT: &str = include_str!("../data/langid/seed.pt.txt");
/// Bundled English seed corpus, one sentence per line.
pub const SEED_EN: &str = include_str!("../data/langid/seed.en.txt");

struct OrderTable {
    log_probs: HashMap<String, f64>,
    unseen_log_prob: f64,
}

/// Smoothed character n-gram model for one language.
pub struct LanguageProfile {
    pub lang: String,
    pub n_max: usize,
    pub smoothing: f64,
    tables: Vec<OrderTable>,
}

fn char_bounds(s: &str) -> Vec<usize> {
    let mut bounds: Vec<usize> = s.char_indices().map(|(i, _)| i).collect();
    bounds.push(s.len());
    bounds
}

fn for_each_ngram(s: &str, bounds: &[usize], n: usize, mut f: impl FnMut(&str)) {
    if bounds.len() <= n {
        return;
    }
    for i in 0..bounds.len() - n {
        f(&s[bounds[i]..bounds[i + n]]);
    }
}

/// Train a profile with the default smoothing constant.
pub fn train_profile<S: AsRef<str>>(
    texts: &[S],
    lang: &str,
    n_max: usize,
) -> Result<LanguageProfile> {
    train_profile_with(texts, lang, n_max, DEFAULT_SMOOTHING)
}

/// Train a profile from raw texts. Texts are normalized (case fold,
/// whitespace collapse) before n-gram extraction; n-grams include the
/// single spaces separating words.
pub fn train_profile_with<S: AsRef<str>>(
    texts: &[S],
    lang: &str,
    n_max: usize,
    smoothing: f64,
) -> Result<LanguageProfile> {
    if texts.is_empty() || texts.iter().all(|t| t.as_ref().trim().is_empty()) {
        return Err(Error::InvalidInput("empty training corpus".into()));
    }
    if !(1..=3).contains(&n_max) {
        return Err(Error::InvalidInput(format!("n_max must be 1..=3, got {n_max}")));
    }
    if smoothing <= 0.0 {
        return Err(Error::InvalidInput("smoothing must be positive".into()));
    }

    let mut counts: Vec<HashMap<String, u64>> = (0..n_max).map(|_| HashMap::new()).collect();
    let mut totals = vec![0u64; n_max];
    for text in texts {
        let normalized = normalize_text(text.as_ref());
        let bounds = char_bounds(&normalized);
        for n in 1..=n_max {
            for_each_ngram(&normalized, &bounds, n, |gram| {
                *counts[n - 1].entry(gram.to_string()).or_insert(0) += 1;
                totals[n - 1] += 1;
            });
        }
    }

    let tables = counts
        .into_iter()
        .zip(&totals)
        .map(|(count_map, &total)| {
            let vocab = count_map.len() as f64;
            let denom = total as f64 + smoothing * vocab;
            let log_probs = count_map
                .into_iter()
                .map(|(gram, c)| (gram, ((c as f64 + smoothing) / denom).ln()))
                .collect();
            OrderTable {
                log_probs,
                unseen_log_prob: (smoothing / denom).ln(),
            }
        })
        .collect();

    Ok(LanguageProfile {
        lang: lang.to_string(),
        n_max,
        smoothing,
        tables,
    })
}

impl LanguageProfile {
    /// Log probability of one n-gram; `None` when the gram was never seen.
    pub fn log_prob(&self, gram: &str) -> Option<f64> {
        let n = gram.chars().count();
        self.tables.get(n.wrapping_sub(1))?.log_probs.get(gram).copied()
    }

    /// Iterate the stored n-grams of one order (1-based).
    pub fn iter_order(&self, n: usize) -> impl Iterator<Item = (&str, f64)> {
        self.tables
            .get(n.wrapping_sub(1))
            .into_iter()
            .flat_map(|t| t.log_probs.iter().map(|(g, &p)| (g.as_str(), p)))
    }

    /// Length-normalized log-likelihood of a normalized text.
    fn score(&self, normalized: &str, bounds: &[usize]) -> f64 {
        let mut total = 0.0;
        let mut grams = 0u64;
        for (i, table) in self.tables.iter().enumerate() {
            for_each_ngram(normalized, bounds, i + 1, |gram| {
                total += table
                    .log_probs
                    .get(gram)
                    .copied()
                    .unwrap_or(table.unseen_log_prob);
                grams += 1;
            });
        }
        if grams == 0 {
            f64::NEG_INFINITY
        } else {
            total / grams as f64
        }
    }

    /// Serialize to the plain-text `ngram<TAB>logprob` table, with `#%`
    /// metadata lines. Entries are sorted, so equal profiles serialize to
    /// identical bytes.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str("#% parabs-langid 1\n");
        out.push_str(&format!("#% lang {}\n", self.lang));
        out.push_str(&format!("#% n_max {}\n", self.n_max));
        out.push_str(&format!("#% smoothing {}\n", self.smoothing));
        for (i, table) in self.tables.iter().enumerate() {
            out.push_str(&format!("#% unseen {} {}\n", i + 1, table.unseen_log_prob));
        }
        for table in &self.tables {
            let mut entries: Vec<(&String, &f64)> = table.log_probs.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            for (gram, lp) in entries {
                out.push_str(&format!("{}\t{}\n", gram, lp));
            }
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_table()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<LanguageProfile> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_table(&raw).map_err(|message| Error::Profile {
            path: path.to_path_buf(),
            message,
        })
    }

    pub fn from_table(raw: &str) -> std::result::Result<LanguageProfile, String> {
        let mut lang = None;
        let mut n_max = None;
        let mut smoothing = None;
        let mut unseen: Vec<(usize, f64)> = Vec::new();
        let mut entries: Vec<(String, f64)> = Vec::new();
        let mut version_ok = false;

        for (lineno, line) in raw.lines().enumerate() {
            if let Some(meta) = line.strip_prefix("#% ") {
                let mut parts = meta.split_whitespace();
                match parts.next() {
                    Some("parabs-langid") => {
                        version_ok = parts.next() == Some("1");
                    }
                    Some("lang") => lang = parts.next().map(str::to_string),
                    Some("n_max") => n_max = parts.next().and_then(|v| v.parse().ok()),
                    Some("smoothing") => smoothing = parts.next().and_then(|v| v.parse().ok()),
                    Some("unseen") => {
                        let order: usize = parts
                            .next()
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| format!("line {}: bad unseen order", lineno + 1))?;
                        let lp: f64 = parts
                            .next()
                            .and_then(|v| v.parse().ok())
                            .ok_or_else(|| format!("line {}: bad unseen value", lineno + 1))?;
                        unseen.push((order, lp));
                    }
                    _ => return Err(format!("line {}: unknown metadata", lineno + 1)),
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (gram, lp) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: expected ngram<TAB>logprob", lineno + 1))?;
            let lp: f64 = lp
                .parse()
                .map_err(|_| format!("line {}: bad log probability", lineno + 1))?;
            entries.push((gram.to_string(), lp));
        }

        if !version_ok {
            return Err("missing or unsupported version header".into());
        }
        let lang = lang.ok_or("missing lang header")?;
        let n_max: usize = n_max.ok_or("missing n_max header")?;
        let smoothing: f64 = smoothing.ok_or("missing smoothing header")?;
        if unseen.len() != n_max {
            return Err(format!("expected {} unseen entries, found {}", n_max, unseen.len()));
        }
        unseen.sort_by_key(|&(order, _)| order);

        let mut tables: Vec<OrderTable> = unseen
            .into_iter()
            .map(|(_, lp)| OrderTable {
                log_probs: HashMap::new(),
                unseen_log_prob: lp,
            })
            .collect();
        for (gram, lp) in entries {
            let n = gram.chars().count();
            if n == 0 || n > n_max {
                return Err(format!("ngram {gram:?} outside order range"));
            }
            tables[n - 1].log_probs.insert(gram, lp);
        }
        Ok(LanguageProfile {
            lang,
            n_max,
            smoothing,
            tables,
        })
    }
}

/// Result of detecting the language of one text.
#[derive(Debug, Clone, PartialEq)]
pub enum Detection {
    /// Best language plus the margin (best minus second-best normalized
    /// log-likelihood).
    Known { lang: String, margin: f64 },
    /// Input too short for a confident call.
    Unknown,
}

impl Detection {
    pub fn lang(&self) -> Option<&str> {
        match self {
            Detection::Known { lang, .. } => Some(lang),
            Detection::Unknown => None,
        }
    }
}

/// Score `text` against each profile and return the argmax.
///
/// Whitespace runs are collapsed before scoring, so padding never changes
/// the outcome. Texts shorter than [`MIN_DETECT_CHARS`] come back unknown.
pub fn detect(text: &str, profiles: &[LanguageProfile]) -> Detection {
    assert!(profiles.len() >= 2, "detect needs at least two profiles");
    let normalized = normalize_text(text);
    let bounds = char_bounds(&normalized);
    if bounds.len() - 1 < MIN_DETECT_CHARS {
        return Detection::Unknown;
    }
    let mut scored: Vec<(f64, &str)> = profiles
        .iter()
        .map(|p| (p.score(&normalized, &bounds), p.lang.as_str()))
        .collect();
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal));
    Detection::Known {
        lang: scored[0].1.to_string(),
        margin: scored[0].0 - scored[1].0,
    }
}

/// The bundled Portuguese and English profiles (trigram order), trained
/// once from the seed corpora.
pub fn builtin_profiles() -> &'static [LanguageProfile] {
    static PROFILES: OnceLock<Vec<LanguageProfile>> = OnceLock::new();
    PROFILES.get_or_init(|| {
        vec![
            train_profile(&[SEED_PT], "pt", 3).expect("bundled pt seed trains"),
            train_profile(&[SEED_EN], "en", 3).expect("bundled en seed trains"),
        ]
    })
}

/// Outcome of checking a record's two abstract fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Consistency {
    /// Native field is Portuguese and foreign field is English.
    Ok,
    /// The two fields are exchanged.
    Swapped,
    /// Anything else, including unknown detections.
    Inconsistent,
}

/// Verify that the record's abstracts sit in the right fields.
pub fn check_consistency(record: &DocumentRecord, profiles: &[LanguageProfile]) -> Consistency {
    let native = detect(&record.abstract_native, profiles);
    let foreign = detect(&record.abstract_foreign, profiles);
    match (native.lang(), foreign.lang()) {
        (Some("pt"), Some("en")) => Consistency::Ok,
        (Some("en"), Some("pt")) => Consistency::Swapped,
        _ => Consistency::Inconsistent,
    }
}

/// What to do with records whose abstracts are swapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SwapPolicy {
    /// Drop the record (default).
    #[default]
    Drop,
    /// Exchange the abstract fields and keep the record.
    Swap,
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct LanguageCheckStats {
    pub kept: usize,
    pub swapped_rescued: usize,
    pub dropped_swapped: usize,
    pub dropped_inconsistent: usize,
}

/// Run the consistency check over a batch, applying the swap policy.
/// Inconsistent records are always dropped.
pub fn apply_language_check(
    records: Vec<DocumentRecord>,
    profiles: &[LanguageProfile],
    policy: SwapPolicy,
) -> (Vec<DocumentRecord>, LanguageCheckStats) {
    let mut stats = LanguageCheckStats::default();
    let mut kept = Vec::with_capacity(records.len());
    for mut record in records {
        match check_consistency(&record, profiles) {
            Consistency::Ok => {
                stats.kept += 1;
                kept.push(record);
            }
            Consistency::Swapped => match policy {
                SwapPolicy::Drop => stats.dropped_swapped += 1,
                SwapPolicy::Swap => {
                    std::mem::swap(&mut record.abstract_native, &mut record.abstract_foreign);
                    stats.swapped_rescued += 1;
                    kept.push(record);
                }
            },
            Consistency::Inconsistent => stats.dropped_inconsistent += 1,
        }
    }
    (kept, stats)
}
