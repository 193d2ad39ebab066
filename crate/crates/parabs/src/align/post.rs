//! Post-alignment filtering and the exported pair record.

use std::path::Path;

use super::{Bead, BeadKind, DocBeads, DocPair};
use crate::error::{Error, Result};
use crate::segment::Sentence;

/// Pairs where either side is shorter than this many characters are
/// dropped as noise.
pub const MIN_PAIR_CHARS: usize = 3;

/// One exported parallel segment.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignedPair {
    pub doc_id: String,
    /// One or two merged source sentences.
    pub src_text: String,
    pub tgt_text: String,
    pub kind: BeadKind,
    pub cost: f64,
}

fn join_span(sentences: &[Sentence], range: std::ops::Range<usize>) -> String {
    sentences[range]
        .iter()
        .map(|s| s.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Turn one document's beads into exported pairs: insertion/deletion beads
/// are dropped, merged spans are joined with single spaces, and pairs with
/// either side under [`MIN_PAIR_CHARS`] characters are removed.
pub fn postprocess(
    doc_id: &str,
    beads: &[Bead],
    src: &[Sentence],
    tgt: &[Sentence],
) -> Vec<AlignedPair> {
    beads
        .iter()
        .filter(|bead| bead.kind.is_substitution())
        .filter_map(|bead| {
            let src_text = join_span(src, bead.src_range());
            let tgt_text = join_span(tgt, bead.tgt_range());
            if src_text.chars().count() < MIN_PAIR_CHARS
                || tgt_text.chars().count() < MIN_PAIR_CHARS
            {
                return None;
            }
            Some(AlignedPair {
                doc_id: doc_id.to_string(),
                src_text,
                tgt_text,
                kind: bead.kind,
                cost: bead.cost,
            })
        })
        .collect()
}

/// Postprocess a whole batch; `aligned` must be in the same order as
/// `docs`.
pub fn postprocess_corpus(docs: &[DocPair], aligned: &[DocBeads]) -> Vec<AlignedPair> {
    docs.iter()
        .zip(aligned)
        .flat_map(|(doc, result)| {
            debug_assert_eq!(doc.doc_id, result.doc_id);
            postprocess(&doc.doc_id, &result.beads, &doc.src, &doc.tgt)
        })
        .collect()
}

const PAIRS_TSV_HEADER: &str = "doc_id\tkind\tsrc_text\ttgt_text\tcost";

/// Write pairs in the tab-separated `doc_id kind src_text tgt_text cost`
/// format with a one-line header.
pub fn write_pairs_tsv(pairs: &[AlignedPair], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::with_capacity(pairs.len() * 120 + 64);
    out.push_str(PAIRS_TSV_HEADER);
    out.push('\n');
    for pair in pairs {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            pair.doc_id,
            pair.kind.label(),
            pair.src_text,
            pair.tgt_text,
            pair.cost
        ));
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn read_pairs_tsv(path: impl AsRef<Path>) -> Result<Vec<AlignedPair>> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = raw.lines();
    match lines.next() {
        Some(h) if h == PAIRS_TSV_HEADER => {}
        _ => {
            return Err(Error::InvalidInput(format!(
                "{}: not a pairs file (bad header)",
                path.display()
            )));
        }
    }
    let mut pairs = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "{}: line {}: expected 5 fields, found {}",
                path.display(),
                lineno + 2,
                fields.len()
            )));
        }
        let kind = BeadKind::parse_label(fields[1]).ok_or_else(|| {
            Error::InvalidInput(format!(
                "{}: line {}: unknown bead kind {:?}",
                path.display(),
                lineno + 2,
                fields[1]
            ))
        })?;
        let cost: f64 = fields[4].parse().map_err(|_| {
            Error::InvalidInput(format!("{}: line {}: bad cost", path.display(), lineno + 2))
        })?;
        pairs.push(AlignedPair {
            doc_id: fields[0].to_string(),
            src_text: fields[2].to_string(),
            tgt_text: fields[3].to_string(),
            kind,
            cost,
        });
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sentences(texts: &[&str]) -> Vec<Sentence> {
        texts.iter().map(|t| Sentence::new(*t)).collect()
    }

    fn bead(kind: BeadKind, src_start: usize, tgt_start: usize) -> Bead {
        Bead {
            kind,
            src_start,
            tgt_start,
            cost: 0.5,
        }
    }

    #[test]
    fn insertion_beads_produce_no_pairs() {
        let src = sentences(&["apenas no original."]);
        let tgt = sentences(&[]);
        let got = postprocess("d", &[bead(BeadKind::OneZero, 0, 0)], &src, &tgt);
        assert!(got.is_empty());
        let src = sentences(&[]);
        let tgt = sentences(&["only in the target."]);
        let got = postprocess("d", &[bead(BeadKind::ZeroOne, 0, 0)], &src, &tgt);
        assert!(got.is_empty());
    }

    #[test]
    fn short_side_drops_the_pair() {
        let src = sentences(&["uma frase razoável."]);
        let tgt = sentences(&["ab"]);
        let got = postprocess("d", &[bead(BeadKind::OneOne, 0, 0)], &src, &tgt);
        assert!(got.is_empty());
    }

    #[test]
    fn merged_beads_join_with_single_space() {
        let src = sentences(&["a b.", "c d."]);
        let tgt = sentences(&["a b c d."]);
        let got = postprocess("d", &[bead(BeadKind::TwoOne, 0, 0)], &src, &tgt);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].src_text, "a b. c d.");
        assert_eq!(got[0].kind, BeadKind::TwoOne);
    }

    #[test]
    fn pairs_tsv_roundtrip() {
        let pairs = vec![
            AlignedPair {
                doc_id: "675023".into(),
                src_text: "os dados foram submetidos à análise.".into(),
                tgt_text: "the data were subjected to analysis.".into(),
                kind: BeadKind::OneOne,
                cost: 0.116534,
            },
            AlignedPair {
                doc_id: "99".into(),
                src_text: "frase um. frase dois.".into(),
                tgt_text: "merged sentence.".into(),
                kind: BeadKind::TwoOne,
                cost: 3.25,
            },
        ];
        let f = tempfile::NamedTempFile::new().unwrap();
        write_pairs_tsv(&pairs, f.path()).unwrap();
        assert_eq!(read_pairs_tsv(f.path()).unwrap(), pairs);
    }

    #[test]
    fn bad_pairs_file_is_rejected() {
        let f = tempfile::NamedTempFile::new().unwrap();
        std::fs::write(f.path(), "not a header\n").unwrap();
        assert!(read_pairs_tsv(f.path()).is_err());
    }
}
