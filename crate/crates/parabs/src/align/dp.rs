//! Minimum-cost monotone alignment by dynamic programming.

use std::collections::HashSet;

use super::cost::length_cost;
use super::{AlignParams, Bead, BeadKind, BilingualDictionary};
use crate::segment::Sentence;

struct DictContext<'a> {
    dict: &'a BilingualDictionary,
    src_tokens: Vec<Vec<&'a str>>,
    tgt_sets: Vec<HashSet<&'a str>>,
    weight: f64,
}

impl<'a> DictContext<'a> {
    fn new(
        dict: &'a BilingualDictionary,
        src: &'a [Sentence],
        tgt: &'a [Sentence],
        weight: f64,
    ) -> DictContext<'a> {
        DictContext {
            dict,
            src_tokens: src
                .iter()
                .map(|s| s.text.split_whitespace().collect())
                .collect(),
            tgt_sets: tgt
                .iter()
                .map(|s| s.text.split_whitespace().collect())
                .collect(),
            weight,
        }
    }

    /// Similarity discount for a substitution bead: the share of distinct
    /// source tokens with a known translation present in the target span
    /// (each source token matched at most once), over the larger span's
    /// token count, scaled by the dictionary weight.
    fn discount(
        &self,
        src_range: std::ops::Range<usize>,
        tgt_range: std::ops::Range<usize>,
        src_token_count: usize,
        tgt_token_count: usize,
    ) -> f64 {
        let denom = src_token_count.max(tgt_token_count);
        if denom == 0 {
            return 0.0;
        }
        let mut seen: HashSet<&str> = HashSet::new();
        let mut matched = 0usize;
        for i in src_range {
            for &token in &self.src_tokens[i] {
                if !seen.insert(token) {
                    continue;
                }
                let has_translation = self
                    .dict
                    .translations(token)
                    .iter()
                    .any(|t| tgt_range.clone().any(|j| self.tgt_sets[j].contains(t.as_str())));
                if has_translation {
                    matched += 1;
                }
            }
        }
        self.weight * matched as f64 / denom as f64
    }
}

struct PassState<'a> {
    params: &'a AlignParams,
    src_chars: Vec<usize>,
    tgt_chars: Vec<usize>,
    src_toks: Vec<usize>,
    tgt_toks: Vec<usize>,
    dict: Option<DictContext<'a>>,
}

fn prefix_sums(values: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut sums = vec![0];
    for v in values {
        sums.push(sums.last().unwrap() + v);
    }
    sums
}

impl<'a> PassState<'a> {
    fn bead_cost(&self, kind: BeadKind, src_end: usize, tgt_end: usize) -> f64 {
        let (ds, dt) = (kind.src_len(), kind.tgt_len());
        let (si, ti) = (src_end - ds, tgt_end - dt);
        let l1 = self.src_chars[src_end] - self.src_chars[si];
        let l2 = self.tgt_chars[tgt_end] - self.tgt_chars[ti];
        let base = length_cost(l1, l2, kind, self.params);
        match (&self.dict, kind.is_substitution()) {
            (Some(ctx), true) => {
                let discount = ctx.discount(
                    si..src_end,
                    ti..tgt_end,
                    self.src_toks[src_end] - self.src_toks[si],
                    self.tgt_toks[tgt_end] - self.tgt_toks[ti],
                );
                (base - discount).max(0.0)
            }
            _ => base,
        }
    }
}

/// Align two sentence lists, returning the minimum-total-cost monotone
/// bead cover.
///
/// With a dictionary, substitution beads are discounted by the weighted
/// token-translation similarity of their spans, floored at zero. Ties are
/// broken deterministically by kind preference (1-1, 2-1, 1-2, 2-2, 1-0,
/// 0-1).
pub fn align_pass(
    src: &[Sentence],
    tgt: &[Sentence],
    params: &AlignParams,
    dict: Option<&BilingualDictionary>,
) -> Vec<Bead> {
    let n = src.len();
    let m = tgt.len();
    let state = PassState {
        params,
        src_chars: prefix_sums(src.iter().map(|s| s.char_len)),
        tgt_chars: prefix_sums(tgt.iter().map(|s| s.char_len)),
        src_toks: prefix_sums(src.iter().map(|s| s.token_count)),
        tgt_toks: prefix_sums(tgt.iter().map(|s| s.token_count)),
        dict: dict.map(|d| DictContext::new(d, src, tgt, params.dict_weight)),
    };

    let width = m + 1;
    let mut total = vec![f64::INFINITY; (n + 1) * width];
    let mut back = vec![u8::MAX; (n + 1) * width];
    total[0] = 0.0;

    for i in 0..=n {
        for j in 0..=m {
            if i == 0 && j == 0 {
                continue;
            }
            let mut best = f64::INFINITY;
            let mut best_kind = u8::MAX;
            for (ki, &kind) in BeadKind::PREFERENCE.iter().enumerate() {
                let (ds, dt) = (kind.src_len(), kind.tgt_len());
                if i < ds || j < dt {
                    continue;
                }
                let prev = total[(i - ds) * width + (j - dt)];
                if !prev.is_finite() {
                    continue;
                }
                let candidate = prev + state.bead_cost(kind, i, j);
                if candidate < best {
                    best = candidate;
                    best_kind = ki as u8;
                }
            }
            total[i * width + j] = best;
            back[i * width + j] = best_kind;
        }
    }

    let mut beads = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let kind = BeadKind::PREFERENCE[back[i * width + j] as usize];
        let (ds, dt) = (kind.src_len(), kind.tgt_len());
        beads.push(Bead {
            kind,
            src_start: i - ds,
            tgt_start: j - dt,
            cost: state.bead_cost(kind, i, j),
        });
        i -= ds;
        j -= dt;
    }
    beads.reverse();
    debug_assert!(check_cover(&beads, n, m));
    beads
}

/// Verify that the beads, in order, partition both index sets exactly.
pub fn check_cover(beads: &[Bead], n_src: usize, n_tgt: usize) -> bool {
    let mut next_src = 0;
    let mut next_tgt = 0;
    for bead in beads {
        if bead.src_start != next_src || bead.tgt_start != next_tgt {
            return false;
        }
        next_src += bead.kind.src_len();
        next_tgt += bead.kind.tgt_len();
    }
    next_src == n_src && next_tgt == n_tgt
}
