//! Shared text normalization: case folding and whitespace cleanup.

/// Case-fold `s` and collapse every whitespace run to a single space.
///
/// This is the normal form the rest of the crate assumes: full Unicode case
/// folding (so "Ç" becomes "ç"), carriage returns, line feeds, tabs and any
/// other whitespace reduced to single spaces, and no leading or trailing
/// whitespace. Idempotent.
pub fn normalize_text(s: &str) -> String {
    let folded = caseless::default_case_fold_str(s);
    collapse_whitespace(&folded)
}

/// Collapse whitespace runs to single spaces and trim the ends.
pub fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut pending_space = false;
    for ch in s.chars() {
        if ch.is_whitespace() {
            pending_space = !out.is_empty();
        } else {
            if pending_space {
                out.push(' ');
            }
            out.push(ch);
            pending_space = false;
        }
    }
    out
}

/// Count of non-whitespace characters, the length convention used by the
/// alignment cost model.
pub fn char_len(s: &str) -> usize {
    s.chars().filter(|c| !c.is_whitespace()).count()
}

/// Whitespace token count.
pub fn token_count(s: &str) -> usize {
    s.split_whitespace().count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn folds_case_and_linebreaks() {
        assert_eq!(normalize_text("Análise\r\nde Dados"), "análise de dados");
    }

    #[test]
    fn collapses_blank_runs() {
        assert_eq!(normalize_text("A\n\nB"), "a b");
    }

    #[test]
    fn already_normal_text_unchanged() {
        let s = "texto já normalizado, sem caracteres de controle.";
        assert_eq!(normalize_text(s), s);
    }

    #[test]
    fn cedilla_folds() {
        assert_eq!(normalize_text("AÇÃO"), "ação");
    }

    #[test]
    fn idempotent() {
        let inputs = ["  Vários\tEspaços  ", "MAIÚSCULAS", "a. b.\r\nc", ""];
        for s in inputs {
            let once = normalize_text(s);
            assert_eq!(normalize_text(&once), once, "input {s:?}");
        }
    }

    #[test]
    fn char_len_ignores_whitespace() {
        assert_eq!(char_len("a b  c"), 3);
        assert_eq!(char_len(""), 0);
    }
}
