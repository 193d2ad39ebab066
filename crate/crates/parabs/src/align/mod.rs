//! Two-pass sentence alignment.
//!
//! The scheme follows the classic bootstrap: a first pass aligns every
//! document on sentence-length statistics alone, a bilingual dictionary is
//! built automatically from those links, and a second pass realigns each
//! document with length and dictionary evidence combined. Supplying a
//! dictionary up front skips the first pass. Batches larger than the chunk
//! limit are cut into chunks at document boundaries, which bounds the
//! memory of dictionary construction.

mod cost;
mod dict;
mod dp;
mod post;
mod two_pass;

pub use cost::{length_cost, length_delta, normal_cdf, INSERTION_PENALTY_CAP};
pub use dict::{
    build_dictionary, BilingualDictionary, DEFAULT_MIN_ASSOC, DEFAULT_MIN_COUNT,
    MIN_DICT_WORD_CHARS,
};
pub use dp::{align_pass, check_cover};
pub use post::{
    postprocess, postprocess_corpus, read_pairs_tsv, write_pairs_tsv, AlignedPair, MIN_PAIR_CHARS,
};
pub use two_pass::{
    align_corpus, align_corpus_with_workers, align_document, chunk_boundaries, chunked_align,
    DocBeads, DocPair,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The six link shapes the aligner considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BeadKind {
    OneOne,
    OneZero,
    ZeroOne,
    OneTwo,
    TwoOne,
    TwoTwo,
}

impl BeadKind {
    /// All kinds in tie-break preference order: substitution first, then
    /// merges, insertions and deletions last.
    pub const PREFERENCE: [BeadKind; 6] = [
        BeadKind::OneOne,
        BeadKind::TwoOne,
        BeadKind::OneTwo,
        BeadKind::TwoTwo,
        BeadKind::OneZero,
        BeadKind::ZeroOne,
    ];

    pub fn src_len(&self) -> usize {
        match self {
            BeadKind::OneOne | BeadKind::OneZero | BeadKind::OneTwo => 1,
            BeadKind::TwoOne | BeadKind::TwoTwo => 2,
            BeadKind::ZeroOne => 0,
        }
    }

    pub fn tgt_len(&self) -> usize {
        match self {
            BeadKind::OneOne | BeadKind::ZeroOne | BeadKind::TwoOne => 1,
            BeadKind::OneTwo | BeadKind::TwoTwo => 2,
            BeadKind::OneZero => 0,
        }
    }

    /// Substitution beads pair text on both sides; insertions and
    /// deletions do not.
    pub fn is_substitution(&self) -> bool {
        !matches!(self, BeadKind::OneZero | BeadKind::ZeroOne)
    }

    pub fn label(&self) -> &'static str {
        match self {
            BeadKind::OneOne => "1-1",
            BeadKind::OneZero => "1-0",
            BeadKind::ZeroOne => "0-1",
            BeadKind::OneTwo => "1-2",
            BeadKind::TwoOne => "2-1",
            BeadKind::TwoTwo => "2-2",
        }
    }

    pub fn parse_label(s: &str) -> Option<BeadKind> {
        Some(match s {
            "1-1" => BeadKind::OneOne,
            "1-0" => BeadKind::OneZero,
            "0-1" => BeadKind::ZeroOne,
            "1-2" => BeadKind::OneTwo,
            "2-1" => BeadKind::TwoOne,
            "2-2" => BeadKind::TwoTwo,
            _ => return None,
        })
    }

    /// The kind with source and target roles exchanged.
    pub fn transposed(&self) -> BeadKind {
        match self {
            BeadKind::OneZero => BeadKind::ZeroOne,
            BeadKind::ZeroOne => BeadKind::OneZero,
            BeadKind::OneTwo => BeadKind::TwoOne,
            BeadKind::TwoOne => BeadKind::OneTwo,
            other => *other,
        }
    }
}

/// One alignment link between contiguous sentence spans.
#[derive(Debug, Clone, PartialEq)]
pub struct Bead {
    pub kind: BeadKind,
    pub src_start: usize,
    pub tgt_start: usize,
    pub cost: f64,
}

impl Bead {
    pub fn src_range(&self) -> std::ops::Range<usize> {
        self.src_start..self.src_start + self.kind.src_len()
    }

    pub fn tgt_range(&self) -> std::ops::Range<usize> {
        self.tgt_start..self.tgt_start + self.kind.tgt_len()
    }
}

/// Prior probability of each bead kind.
///
/// The defaults are the customary length-model values, with the merge mass
/// split evenly between the two directions. They are treated as relative
/// weights: validation requires positive entries with a total near one, but
/// does not renormalize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BeadPriors {
    pub one_one: f64,
    pub one_zero: f64,
    pub zero_one: f64,
    pub one_two: f64,
    pub two_one: f64,
    pub two_two: f64,
}

impl Default for BeadPriors {
    fn default() -> BeadPriors {
        BeadPriors {
            one_one: 0.89,
            one_zero: 0.0099,
            zero_one: 0.0099,
            one_two: 0.0445,
            two_one: 0.0445,
            two_two: 0.011,
        }
    }
}

impl BeadPriors {
    pub fn prior(&self, kind: BeadKind) -> f64 {
        match kind {
            BeadKind::OneOne => self.one_one,
            BeadKind::OneZero => self.one_zero,
            BeadKind::ZeroOne => self.zero_one,
            BeadKind::OneTwo => self.one_two,
            BeadKind::TwoOne => self.two_one,
            BeadKind::TwoTwo => self.two_two,
        }
    }

    /// Priors with the directional kinds exchanged (1-2 with 2-1, 1-0 with
    /// 0-1).
    pub fn transposed(&self) -> BeadPriors {
        BeadPriors {
            one_one: self.one_one,
            one_zero: self.zero_one,
            zero_one: self.one_zero,
            one_two: self.two_one,
            two_one: self.one_two,
            two_two: self.two_two,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let values = [
            self.one_one,
            self.one_zero,
            self.zero_one,
            self.one_two,
            self.two_one,
            self.two_two,
        ];
        if values.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
            return Err(Error::Config("bead priors must lie in (0, 1)".into()));
        }
        let sum: f64 = values.iter().sum();
        if !(0.95..=1.05).contains(&sum) {
            return Err(Error::Config(format!(
                "bead priors must sum to about 1, got {sum}"
            )));
        }
        Ok(())
    }
}

/// Parameters of the alignment cost model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AlignParams {
    /// Expected target/source character-count ratio.
    pub c: f64,
    /// Per-character variance of the length difference.
    pub s2: f64,
    pub bead_priors: BeadPriors,
    /// Weight of the dictionary similarity discount in pass two.
    pub dict_weight: f64,
    /// Maximum sentences per side in one chunk.
    pub chunk_limit: usize,
}

impl Default for AlignParams {
    fn default() -> AlignParams {
        AlignParams {
            c: 1.0,
            s2: 6.8,
            bead_priors: BeadPriors::default(),
            dict_weight: 1.0,
            chunk_limit: 10_000,
        }
    }
}

impl AlignParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) {
            return Err(Error::Config("length ratio c must be positive".into()));
        }
        if !(self.s2 > 0.0) {
            return Err(Error::Config("variance s2 must be positive".into()));
        }
        if self.dict_weight < 0.0 {
            return Err(Error::Config("dict_weight must be nonnegative".into()));
        }
        if self.chunk_limit < 100 {
            return Err(Error::Config("chunk_limit must be at least 100".into()));
        }
        self.bead_priors.validate()
    }

    pub fn from_toml_path(path: impl AsRef<Path>) -> Result<AlignParams> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let params: AlignParams = toml::from_str(&raw)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        params.validate()?;
        Ok(params)
    }
}

use std::path::Path;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_params_validate() {
        AlignParams::default().validate().unwrap();
    }

    #[test]
    fn priors_are_positive_and_near_one() {
        let p = BeadPriors::default();
        p.validate().unwrap();
        let sum = p.one_one + p.one_zero + p.zero_one + p.one_two + p.two_one + p.two_two;
        assert!((sum - 1.0).abs() < 0.05, "prior mass {sum}");
    }

    #[test]
    fn negative_priors_rejected() {
        let mut p = BeadPriors::default();
        p.one_two = -0.1;
        assert!(p.validate().is_err());
    }

    #[test]
    fn small_chunk_limit_rejected() {
        let params = AlignParams {
            chunk_limit: 50,
            ..AlignParams::default()
        };
        assert!(params.validate().is_err());
    }

    #[test]
    fn kind_labels_roundtrip() {
        for kind in BeadKind::PREFERENCE {
            assert_eq!(BeadKind::parse_label(kind.label()), Some(kind));
            assert_eq!(kind.transposed().transposed(), kind);
            assert_eq!(kind.src_len(), kind.transposed().tgt_len());
        }
        assert_eq!(BeadKind::parse_label("3-1"), None);
    }
}
