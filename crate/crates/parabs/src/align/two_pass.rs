//! Corpus-level alignment: the two-pass protocol and chunking.

use std::ops::Range;

use super::dict::{build_dictionary, DEFAULT_MIN_ASSOC, DEFAULT_MIN_COUNT};
use super::dp::{align_pass, check_cover};
use super::{AlignParams, Bead, BilingualDictionary};
use crate::error::{Error, Result};
use crate::segment::Sentence;

/// One document's two sentence lists.
#[derive(Debug, Clone)]
pub struct DocPair {
    pub doc_id: String,
    pub src: Vec<Sentence>,
    pub tgt: Vec<Sentence>,
}

/// Alignment result for one document, bead indices local to the document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocBeads {
    pub doc_id: String,
    pub beads: Vec<Bead>,
}

/// Align a single document.
///
/// With a user dictionary the first pass is skipped and the document is
/// aligned once with it. Otherwise the document is aligned on lengths
/// alone, a dictionary is bootstrapped from those beads, and the document
/// is realigned with it.
pub fn align_document(
    src: &[Sentence],
    tgt: &[Sentence],
    params: &AlignParams,
    user_dict: Option<&BilingualDictionary>,
) -> Vec<Bead> {
    if let Some(dict) = user_dict {
        return align_pass(src, tgt, params, Some(dict));
    }
    let first = align_pass(src, tgt, params, None);
    let dict = build_dictionary(
        [(first.as_slice(), src, tgt)],
        DEFAULT_MIN_COUNT,
        DEFAULT_MIN_ASSOC,
    );
    align_pass(src, tgt, params, Some(&dict))
}

/// Group documents into contiguous chunks of at most `chunk_limit`
/// sentences per side. Fails when a single document alone exceeds the
/// limit, since an abstract cannot legitimately be that long.
pub fn chunk_boundaries(docs: &[DocPair], chunk_limit: usize) -> Result<Vec<Range<usize>>> {
    for doc in docs {
        let biggest = doc.src.len().max(doc.tgt.len());
        if biggest > chunk_limit {
            return Err(Error::DocumentTooLarge {
                doc_id: doc.doc_id.clone(),
                sentences: biggest,
                limit: chunk_limit,
            });
        }
    }
    let mut ranges = Vec::new();
    let mut start = 0;
    let mut src_total = 0;
    let mut tgt_total = 0;
    for (i, doc) in docs.iter().enumerate() {
        if src_total + doc.src.len() > chunk_limit || tgt_total + doc.tgt.len() > chunk_limit {
            ranges.push(start..i);
            start = i;
            src_total = 0;
            tgt_total = 0;
        }
        src_total += doc.src.len();
        tgt_total += doc.tgt.len();
    }
    if start < docs.len() || docs.is_empty() {
        ranges.push(start..docs.len());
    }
    Ok(ranges)
}

fn par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|scope| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|slice| scope.spawn(|| slice.iter().map(&f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("alignment worker panicked"))
            .collect()
    })
}

/// Two-pass alignment of a document batch, chunked when the batch exceeds
/// `params.chunk_limit` sentences per side.
///
/// Pass one aligns every document of a chunk on lengths alone; the chunk's
/// dictionary is built from all of those beads; pass two realigns each
/// document with it. A supplied dictionary skips pass one and is used
/// directly. Results keep the input document order.
pub fn align_corpus(
    docs: &[DocPair],
    params: &AlignParams,
    user_dict: Option<&BilingualDictionary>,
) -> Result<Vec<DocBeads>> {
    align_corpus_with_workers(docs, params, user_dict, 1)
}

/// [`align_corpus`] with per-document parallelism inside each chunk.
/// Output is identical for any worker count.
pub fn align_corpus_with_workers(
    docs: &[DocPair],
    params: &AlignParams,
    user_dict: Option<&BilingualDictionary>,
    workers: usize,
) -> Result<Vec<DocBeads>> {
    params.validate()?;
    let mut out = Vec::with_capacity(docs.len());
    for range in chunk_boundaries(docs, params.chunk_limit)? {
        let chunk = &docs[range];
        let second = match user_dict {
            Some(dict) => par_map(chunk, workers, |doc| {
                align_pass(&doc.src, &doc.tgt, params, Some(dict))
            }),
            None => {
                let first = par_map(chunk, workers, |doc| {
                    align_pass(&doc.src, &doc.tgt, params, None)
                });
                let dict = build_dictionary(
                    first
                        .iter()
                        .zip(chunk)
                        .map(|(beads, doc)| (beads.as_slice(), doc.src.as_slice(), doc.tgt.as_slice())),
                    DEFAULT_MIN_COUNT,
                    DEFAULT_MIN_ASSOC,
                );
                let pairs: Vec<(&DocPair, ())> = chunk.iter().map(|d| (d, ())).collect();
                par_map(&pairs, workers, |(doc, _)| {
                    align_pass(&doc.src, &doc.tgt, params, Some(&dict))
                })
            }
        };
        for (doc, beads) in chunk.iter().zip(second) {
            out.push(DocBeads {
                doc_id: doc.doc_id.clone(),
                beads,
            });
        }
    }
    Ok(out)
}

/// Single-pass alignment of a batch with bead indices re-based to global
/// sentence positions across the batch.
///
/// The batch is cut at document boundaries into chunks of at most
/// `params.chunk_limit` sentences per side; each chunk is aligned
/// independently and the beads are concatenated. The output covers every
/// global source and target index exactly once.
pub fn chunked_align(
    docs: &[DocPair],
    params: &AlignParams,
    dict: Option<&BilingualDictionary>,
) -> Result<Vec<Bead>> {
    params.validate()?;
    let mut out = Vec::new();
    let mut src_offset = 0;
    let mut tgt_offset = 0;
    for range in chunk_boundaries(docs, params.chunk_limit)? {
        for doc in &docs[range] {
            for bead in align_pass(&doc.src, &doc.tgt, params, dict) {
                out.push(Bead {
                    kind: bead.kind,
                    src_start: bead.src_start + src_offset,
                    tgt_start: bead.tgt_start + tgt_offset,
                    cost: bead.cost,
                });
            }
            src_offset += doc.src.len();
            tgt_offset += doc.tgt.len();
        }
    }
    debug_assert!(check_cover(&out, src_offset, tgt_offset));
    Ok(out)
}
