//! Sentence segmentation for lowercase text.
//!
//! Case folding destroys the capitalization cue segmenters usually rely on,
//! so boundaries here are purely punctuation driven: a terminal character
//! (`.`, `!`, `?`, optionally `;`) followed by whitespace ends a sentence,
//! no uppercase follower required. Periods are guarded against the usual
//! false positives: known abbreviations, single-letter initials, digits on
//! both sides, and short parenthesized spans.
//!
//! Guard lists live in per-language data files (`data/segment/abbrev.*.txt`,
//! one entry per line, `#` comments) and can be replaced at runtime.

use std::path::Path;

use crate::error::{Error, Result};
use crate::text;

/// Longest parenthesized span (in characters, parentheses included) that
/// suppresses boundaries inside it.
const PAREN_GUARD_SPAN: usize = 40;

/// One segmented sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    /// Non-whitespace character count, the length the alignment cost model
    /// works with.
    pub char_len: usize,
    /// Whitespace token count.
    pub token_count: usize,
}

impl Sentence {
    pub fn new(text: impl Into<String>) -> Sentence {
        let text = text.into();
        Sentence {
            char_len: text::char_len(&text),
            token_count: text::token_count(&text),
            text,
        }
    }
}

const ABBREV_PT: &str = include_str!("../data/segment/abbrev.pt.txt");
const ABBREV_EN: &str = include_str!("../data/segment/abbrev.en.txt");

/// Rule-based sentence splitter with a configurable abbreviation list.
#[derive(Debug, Clone)]
pub struct Segmenter {
    abbreviations: Vec<Vec<char>>,
    split_semicolon: bool,
}

fn parse_abbrev_list(raw: &str) -> Vec<Vec<char>> {
    raw.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase().chars().collect())
        .collect()
}

impl Segmenter {
    /// Segmenter with the bundled abbreviation list for `lang` ("pt" or
    /// "en"); any other code gets an empty guard list.
    pub fn for_lang(lang: &str) -> Segmenter {
        let raw = match lang {
            "pt" => ABBREV_PT,
            "en" => ABBREV_EN,
            _ => "",
        };
        Segmenter {
            abbreviations: parse_abbrev_list(raw),
            split_semicolon: false,
        }
    }

    /// Load a custom abbreviation file (one entry per line, `#` comments).
    pub fn from_abbrev_file(path: impl AsRef<Path>) -> Result<Segmenter> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(Segmenter {
            abbreviations: parse_abbrev_list(&raw),
            split_semicolon: false,
        })
    }

    /// Also treat `;` followed by whitespace as a boundary (off by default).
    pub fn split_semicolons(mut self, enabled: bool) -> Segmenter {
        self.split_semicolon = enabled;
        self
    }

    /// Split normalized text (lowercase, single spaces) into sentences.
    ///
    /// Joining the output with single spaces reproduces the input, and
    /// re-segmenting any output sentence returns it unchanged.
    pub fn segment(&self, input: &str) -> Vec<Sentence> {
        let chars: Vec<char> = input.chars().collect();
        let n = chars.len();
        let mut sentences = Vec::new();
        let mut start = first_non_ws(&chars, 0);
        let mut paren_guard_until = 0usize;
        let mut i = start;

        while i < n {
            let c = chars[i];
            if c == '(' {
                if let Some(close) = find_close_paren(&chars, i) {
                    paren_guard_until = paren_guard_until.max(close);
                }
            }
            if self.is_boundary(&chars, i, paren_guard_until) {
                if start <= i {
                    push_sentence(&mut sentences, &chars[start..=i]);
                }
                start = first_non_ws(&chars, i + 1);
                i = start;
                continue;
            }
            i += 1;
        }
        if start < n {
            push_sentence(&mut sentences, &chars[start..n]);
        }
        sentences
    }

    fn is_boundary(&self, chars: &[char], i: usize, paren_guard_until: usize) -> bool {
        let c = chars[i];
        let terminal = matches!(c, '.' | '!' | '?') || (self.split_semicolon && c == ';');
        if !terminal {
            return false;
        }
        // Boundaries need trailing whitespace; end of input closes the last
        // sentence without one.
        if i + 1 >= chars.len() || !chars[i + 1].is_whitespace() {
            return false;
        }
        if i < paren_guard_until {
            return false;
        }
        if c != '.' {
            return true;
        }
        !(self.is_abbreviation(chars, i)
            || is_single_letter_token(chars, i)
            || is_digit_flanked(chars, i))
    }

    /// True when some abbreviation entry ends exactly at the period `i` and
    /// is preceded by a word boundary.
    fn is_abbreviation(&self, chars: &[char], i: usize) -> bool {
        self.abbreviations.iter().any(|abbr| {
            let m = abbr.len();
            if m == 0 || i + 1 < m {
                return false;
            }
            let from = i + 1 - m;
            if !chars[from..=i].eq(abbr.as_slice()) {
                return false;
            }
            from == 0 || !chars[from - 1].is_alphanumeric()
        })
    }
}

fn first_non_ws(chars: &[char], mut i: usize) -> usize {
    while i < chars.len() && chars[i].is_whitespace() {
        i += 1;
    }
    i
}

fn find_close_paren(chars: &[char], open: usize) -> Option<usize> {
    let limit = (open + PAREN_GUARD_SPAN).min(chars.len());
    (open + 1..limit).find(|&j| chars[j] == ')')
}

fn is_single_letter_token(chars: &[char], i: usize) -> bool {
    i >= 1
        && chars[i - 1].is_alphabetic()
        && (i < 2 || !chars[i - 2].is_alphanumeric())
}

fn is_digit_flanked(chars: &[char], i: usize) -> bool {
    i >= 1
        && chars[i - 1].is_ascii_digit()
        && i + 1 < chars.len()
        && chars[i + 1].is_ascii_digit()
}

fn push_sentence(sentences: &mut Vec<Sentence>, piece: &[char]) {
    let text: String = piece.iter().collect();
    let text = text.trim();
    if !text.is_empty() {
        sentences.push(Sentence::new(text));
    }
}

/// Segment with the bundled defaults for `lang`.
pub fn segment(input: &str, lang: &str) -> Vec<Sentence> {
    Segmenter::for_lang(lang).segment(input)
}
