//! Ingestion of delimited dumps of bilingual abstract records.
//!
//! A dump is a delimited text file (comma by default) with a header row.
//! Which column feeds which [`DocumentRecord`] field is configured through a
//! [`ColumnMap`], so the same parser handles layout changes between catalog
//! years. Only three columns are required: the document id and the two
//! abstract fields. Everything else degrades to an empty value when unmapped.

use std::collections::HashSet;
use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::normalize_text;

/// Kind of document a record describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocType {
    Thesis,
    Dissertation,
    Other,
}

impl DocType {
    /// Lenient parse: recognizes the English labels and the degree names
    /// used by the source catalog ("DOUTORADO", "MESTRADO").
    pub fn parse(s: &str) -> DocType {
        let s = s.trim().to_lowercase();
        if s.contains("doutor") || s.contains("tese") || s == "thesis" {
            DocType::Thesis
        } else if s.contains("mestr") || s.contains("dissert") {
            DocType::Dissertation
        } else {
            DocType::Other
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            DocType::Thesis => "thesis",
            DocType::Dissertation => "dissertation",
            DocType::Other => "other",
        }
    }
}

/// One thesis or dissertation with both abstracts and its metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentRecord {
    pub id: String,
    pub year: Option<i32>,
    pub university: String,
    pub title_native: String,
    pub doc_type: DocType,
    pub keywords_native: Vec<String>,
    pub keywords_foreign: Vec<String>,
    /// One of the catalog's top-level knowledge areas; "unknown" when the
    /// source row had none.
    pub knowledge_area: String,
    pub subareas: Vec<String>,
    pub url_pdf: String,
    /// Portuguese-side abstract.
    pub abstract_native: String,
    /// English-side abstract.
    pub abstract_foreign: String,
}

fn default_delimiter() -> char {
    ','
}

fn default_quoting() -> bool {
    true
}

/// Maps record fields to source column headers, plus parsing policy.
///
/// `id`, `abstract_native` and `abstract_foreign` are required; the rest are
/// optional. The bundled `tdc_columns.toml` carries the default mapping for
/// the public catalog layout.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColumnMap {
    pub id: String,
    pub abstract_native: String,
    pub abstract_foreign: String,
    #[serde(default)]
    pub year: Option<String>,
    #[serde(default)]
    pub university: Option<String>,
    #[serde(default)]
    pub title_native: Option<String>,
    #[serde(default)]
    pub doc_type: Option<String>,
    #[serde(default)]
    pub keywords_native: Option<String>,
    #[serde(default)]
    pub keywords_foreign: Option<String>,
    #[serde(default)]
    pub knowledge_area: Option<String>,
    #[serde(default)]
    pub subareas: Option<String>,
    #[serde(default)]
    pub url_pdf: Option<String>,
    /// Field delimiter, one ASCII character.
    #[serde(default = "default_delimiter")]
    pub delimiter: char,
    /// Honor quoted fields (RFC 4180 style).
    #[serde(default = "default_quoting")]
    pub quoting: bool,
    /// Decode rows that are not valid UTF-8 as Latin-1 instead of skipping
    /// them.
    #[serde(default)]
    pub latin1_fallback: bool,
}

const TDC_DEFAULT_MAP: &str = include_str!("../data/tdc_columns.toml");

impl ColumnMap {
    /// Minimal map with just the required columns.
    pub fn new(id: &str, abstract_native: &str, abstract_foreign: &str) -> ColumnMap {
        ColumnMap {
            id: id.to_string(),
            abstract_native: abstract_native.to_string(),
            abstract_foreign: abstract_foreign.to_string(),
            year: None,
            university: None,
            title_native: None,
            doc_type: None,
            keywords_native: None,
            keywords_foreign: None,
            knowledge_area: None,
            subareas: None,
            url_pdf: None,
            delimiter: default_delimiter(),
            quoting: default_quoting(),
            latin1_fallback: false,
        }
    }

    /// The bundled default for the public catalog layout.
    pub fn tdc_default() -> ColumnMap {
        toml::from_str(TDC_DEFAULT_MAP).expect("bundled tdc_columns.toml is valid")
    }

    /// Load a map from a TOML file or a plain `key = value` file (anything
    /// without a `.toml` extension).
    pub fn from_path(path: impl AsRef<Path>) -> Result<ColumnMap> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let map = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&raw).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        } else {
            ColumnMap::from_key_values(&raw)?
        };
        map.validate()?;
        Ok(map)
    }

    /// Parse the plain-text `key = value` form. Lines starting with `#` are
    /// comments; values may be quoted; `\t` names a tab delimiter.
    pub fn from_key_values(raw: &str) -> Result<ColumnMap> {
        let mut map = ColumnMap::new("", "", "");
        for (lineno, line) in raw.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim().trim_matches('"').to_string();
            let slot = |v: String| if v.is_empty() { None } else { Some(v) };
            match key {
                "id" => map.id = value,
                "abstract_native" => map.abstract_native = value,
                "abstract_foreign" => map.abstract_foreign = value,
                "year" => map.year = slot(value),
                "university" => map.university = slot(value),
                "title_native" => map.title_native = slot(value),
                "doc_type" => map.doc_type = slot(value),
                "keywords_native" => map.keywords_native = slot(value),
                "keywords_foreign" => map.keywords_foreign = slot(value),
                "knowledge_area" => map.knowledge_area = slot(value),
                "subareas" => map.subareas = slot(value),
                "url_pdf" => map.url_pdf = slot(value),
                "delimiter" => {
                    let v = if value == "\\t" { "\t".to_string() } else { value };
                    map.delimiter = v.chars().next().ok_or_else(|| {
                        Error::Config(format!("line {}: empty delimiter", lineno + 1))
                    })?;
                }
                "quoting" => {
                    map.quoting = value
                        .parse()
                        .map_err(|_| Error::Config(format!("line {}: bad bool", lineno + 1)))?;
                }
                "latin1_fallback" => {
                    map.latin1_fallback = value
                        .parse()
                        .map_err(|_| Error::Config(format!("line {}: bad bool", lineno + 1)))?;
                }
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )));
                }
            }
        }
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("id", &self.id),
            ("abstract_native", &self.abstract_native),
            ("abstract_foreign", &self.abstract_foreign),
        ] {
            if value.trim().is_empty() {
                return Err(Error::Config(format!("column map is missing {name:?}")));
            }
        }
        if !self.delimiter.is_ascii() {
            return Err(Error::Config("delimiter must be ASCII".into()));
        }
        Ok(())
    }
}

/// Outcome of parsing one dump file.
#[derive(Debug, Default)]
pub struct Ingested {
    /// Records in file order, duplicates and broken rows excluded.
    pub records: Vec<DocumentRecord>,
    pub rows_read: usize,
    pub rows_skipped: usize,
    pub duplicates_dropped: usize,
    pub warnings: Vec<String>,
}

struct ColumnIndices {
    id: usize,
    abstract_native: usize,
    abstract_foreign: usize,
    year: Option<usize>,
    university: Option<usize>,
    title_native: Option<usize>,
    doc_type: Option<usize>,
    keywords_native: Option<usize>,
    keywords_foreign: Option<usize>,
    knowledge_area: Option<usize>,
    subareas: Option<usize>,
    url_pdf: Option<usize>,
}

fn resolve(headers: &[String], name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::MissingColumn {
            column: name.to_string(),
        })
}

fn resolve_opt(headers: &[String], name: &Option<String>) -> Result<Option<usize>> {
    match name {
        Some(n) => resolve(headers, n).map(Some),
        None => Ok(None),
    }
}

fn decode_field(bytes: &[u8], latin1_fallback: bool) -> Option<String> {
    match std::str::from_utf8(bytes) {
        Ok(s) => Some(s.to_string()),
        Err(_) if latin1_fallback => Some(bytes.iter().map(|&b| b as char).collect()),
        Err(_) => None,
    }
}

fn split_list(raw: &str) -> Vec<String> {
    raw.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

/// Parse one dump file into records.
///
/// Rows with broken structure (wrong field count, undecodable bytes without
/// the Latin-1 fallback, empty id) are skipped and counted; duplicate ids
/// keep the first occurrence.
pub fn parse_records(path: impl AsRef<Path>, map: &ColumnMap) -> Result<Ingested> {
    let path = path.as_ref();
    map.validate()?;
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(map.delimiter as u8)
        .quoting(map.quoting)
        .has_headers(true)
        .from_reader(file);

    let headers: Vec<String> = reader
        .byte_headers()?
        .iter()
        .map(|h| decode_field(h, map.latin1_fallback).unwrap_or_default())
        .collect();
    let idx = ColumnIndices {
        id: resolve(&headers, &map.id)?,
        abstract_native: resolve(&headers, &map.abstract_native)?,
        abstract_foreign: resolve(&headers, &map.abstract_foreign)?,
        year: resolve_opt(&headers, &map.year)?,
        university: resolve_opt(&headers, &map.university)?,
        title_native: resolve_opt(&headers, &map.title_native)?,
        doc_type: resolve_opt(&headers, &map.doc_type)?,
        keywords_native: resolve_opt(&headers, &map.keywords_native)?,
        keywords_foreign: resolve_opt(&headers, &map.keywords_foreign)?,
        knowledge_area: resolve_opt(&headers, &map.knowledge_area)?,
        subareas: resolve_opt(&headers, &map.subareas)?,
        url_pdf: resolve_opt(&headers, &map.url_pdf)?,
    };

    let mut out = Ingested::default();
    let mut seen = HashSet::new();
    for (rowno, row) in reader.byte_records().enumerate() {
        out.rows_read += 1;
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                out.rows_skipped += 1;
                out.warnings.push(format!("row {}: {e}", rowno + 1));
                continue;
            }
        };
        let field = |i: usize| -> Option<String> {
            row.get(i)
                .and_then(|b| decode_field(b, map.latin1_fallback))
        };
        let opt_field = |i: Option<usize>| -> Option<String> {
            match i {
                Some(i) => field(i),
                None => Some(String::new()),
            }
        };
        let required = (field(idx.id), field(idx.abstract_native), field(idx.abstract_foreign));
        let meta = (
            opt_field(idx.year),
            opt_field(idx.university),
            opt_field(idx.title_native),
            opt_field(idx.doc_type),
            opt_field(idx.keywords_native),
            opt_field(idx.keywords_foreign),
            opt_field(idx.knowledge_area),
            opt_field(idx.subareas),
            opt_field(idx.url_pdf),
        );
        let ((id, native, foreign), (year, university, title, doc_type, kw_n, kw_f, area, sub, url)) =
            match (required, meta) {
                ((Some(a), Some(b), Some(c)), (Some(d), Some(e), Some(f), Some(g), Some(h), Some(i), Some(j), Some(k), Some(l))) => {
                    ((a, b, c), (d, e, f, g, h, i, j, k, l))
                }
                _ => {
                    out.rows_skipped += 1;
                    out.warnings
                        .push(format!("row {}: undecodable bytes", rowno + 1));
                    continue;
                }
            };
        let id = id.trim().to_string();
        if id.is_empty() {
            out.rows_skipped += 1;
            out.warnings.push(format!("row {}: empty id", rowno + 1));
            continue;
        }
        if !seen.insert(id.clone()) {
            out.duplicates_dropped += 1;
            out.warnings
                .push(format!("row {}: duplicate id {id:?}, keeping first", rowno + 1));
            continue;
        }
        let area = area.trim().to_string();
        out.records.push(DocumentRecord {
            id,
            year: year.trim().parse().ok(),
            university,
            title_native: title,
            doc_type: DocType::parse(&doc_type),
            keywords_native: split_list(&kw_n),
            keywords_foreign: split_list(&kw_f),
            knowledge_area: if area.is_empty() { "unknown".into() } else { area },
            subareas: split_list(&sub),
            url_pdf: url,
            abstract_native: native,
            abstract_foreign: foreign,
        });
    }
    Ok(out)
}

/// Keep only records whose two abstracts are non-empty after trimming.
pub fn filter_bilingual(records: Vec<DocumentRecord>) -> Vec<DocumentRecord> {
    let mut records = records;
    records.retain(|r| {
        !r.abstract_native.trim().is_empty() && !r.abstract_foreign.trim().is_empty()
    });
    records
}

/// Normalize every text field of a record: full case folding, whitespace
/// runs (including CR/LF) collapsed to single spaces, ends trimmed.
///
/// Applies uniformly to all string fields, the id included; catalog ids are
/// numeric so this is a no-op for them in practice.
pub fn normalize(record: &DocumentRecord) -> DocumentRecord {
    let norm_list = |v: &[String]| v.iter().map(|s| normalize_text(s)).collect();
    DocumentRecord {
        id: normalize_text(&record.id),
        year: record.year,
        university: normalize_text(&record.university),
        title_native: normalize_text(&record.title_native),
        doc_type: record.doc_type,
        keywords_native: norm_list(&record.keywords_native),
        keywords_foreign: norm_list(&record.keywords_foreign),
        knowledge_area: normalize_text(&record.knowledge_area),
        subareas: norm_list(&record.subareas),
        url_pdf: normalize_text(&record.url_pdf),
        abstract_native: normalize_text(&record.abstract_native),
        abstract_foreign: normalize_text(&record.abstract_foreign),
    }
}

const RECORDS_TSV_HEADER: &str = "id\tyear\tuniversity\ttitle_native\tdoc_type\tkeywords_native\tkeywords_foreign\tknowledge_area\tsubareas\turl_pdf\tabstract_native\tabstract_foreign";

fn tsv_safe(s: &str) -> String {
    if s.contains(['\t', '\n', '\r']) {
        s.replace(['\t', '\n', '\r'], " ")
    } else {
        s.to_string()
    }
}

/// Write records in the tab-separated intermediate format (one-line header).
pub fn write_records_tsv(records: &[DocumentRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::new();
    out.push_str(RECORDS_TSV_HEADER);
    out.push('\n');
    for r in records {
        let year = r.year.map(|y| y.to_string()).unwrap_or_default();
        let line = [
            r.id.as_str(),
            &year,
            &r.university,
            &r.title_native,
            r.doc_type.label(),
            &r.keywords_native.join("|"),
            &r.keywords_foreign.join("|"),
            &r.knowledge_area,
            &r.subareas.join("|"),
            &r.url_pdf,
            &r.abstract_native,
            &r.abstract_foreign,
        ]
        .iter()
        .map(|f| tsv_safe(f))
        .collect::<Vec<_>>()
        .join("\t");
        out.push_str(&line);
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Read records back from the tab-separated intermediate format.
pub fn read_records_tsv(path: impl AsRef<Path>) -> Result<Vec<DocumentRecord>> {
    let path = path.as_ref();
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = raw.lines();
    match lines.next() {
        Some(h) if h == RECORDS_TSV_HEADER => {}
        _ => {
            return Err(Error::InvalidInput(format!(
                "{}: not a records file (bad header)",
                path.display()
            )));
        }
    }
    let split_bar = |s: &str| -> Vec<String> {
        s.split('|')
            .filter(|p| !p.is_empty())
            .map(str::to_string)
            .collect()
    };
    let mut records = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 12 {
            return Err(Error::InvalidInput(format!(
                "{}: line {}: expected 12 fields, found {}",
                path.display(),
                lineno + 2,
                fields.len()
            )));
        }
        records.push(DocumentRecord {
            id: fields[0].to_string(),
            year: fields[1].parse().ok(),
            university: fields[2].to_string(),
            title_native: fields[3].to_string(),
            doc_type: DocType::parse(fields[4]),
            keywords_native: split_bar(fields[5]),
            keywords_foreign: split_bar(fields[6]),
            knowledge_area: fields[7].to_string(),
            subareas: split_bar(fields[8]),
            url_pdf: fields[9].to_string(),
            abstract_native: fields[10].to_string(),
            abstract_foreign: fields[11].to_string(),
        });
    }
    Ok(records)
}

/// Serialize records back to the delimited layout described by `map`.
/// Together with [`parse_records`] this round-trips well-formed input.
pub fn write_records_with_map(
    records: &[DocumentRecord],
    map: &ColumnMap,
    path: impl AsRef<Path>,
) -> Result<()> {
    let path = path.as_ref();
    map.validate()?;
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut writer = csv::WriterBuilder::new()
        .delimiter(map.delimiter as u8)
        .from_writer(file);

    let mut header: Vec<&str> = vec![&map.id, &map.abstract_native, &map.abstract_foreign];
    let optional = [
        &map.year,
        &map.university,
        &map.title_native,
        &map.doc_type,
        &map.keywords_native,
        &map.keywords_foreign,
        &map.knowledge_area,
        &map.subareas,
        &map.url_pdf,
    ];
    for col in optional.iter().copied().flatten() {
        header.push(col);
    }
    writer.write_record(&header)?;

    for r in records {
        let year = r.year.map(|y| y.to_string()).unwrap_or_default();
        let mut row: Vec<String> = vec![
            r.id.clone(),
            r.abstract_native.clone(),
            r.abstract_foreign.clone(),
        ];
        let values = [
            year,
            r.university.clone(),
            r.title_native.clone(),
            r.doc_type.label().to_string(),
            r.keywords_native.join(";"),
            r.keywords_foreign.join(";"),
            r.knowledge_area.clone(),
            r.subareas.join(";"),
            r.url_pdf.clone(),
        ];
        for (col, value) in optional.iter().zip(values) {
            if col.is_some() {
                row.push(value);
            }
        }
        writer.write_record(&row)?;
    }
    writer.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn sample_map() -> ColumnMap {
        let mut map = ColumnMap::new("ID", "RESUMO", "ABSTRACT");
        map.year = Some("ANO".into());
        map.title_native = Some("TITULO".into());
        map.doc_type = Some("GRAU".into());
        map.knowledge_area = Some("AREA".into());
        map.keywords_native = Some("PALAVRAS".into());
        map
    }

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    const THREE_ROWS: &str = "\
ID,ANO,TITULO,GRAU,AREA,PALAVRAS,RESUMO,ABSTRACT
1,2013,Primeiro,MESTRADO,Engenharias,a;b,resumo um,abstract one
2,2014,Segundo,DOUTORADO,,c,resumo dois,abstract two
3,2015,Terceiro,OUTRO,Humanas,,resumo três,abstract three
";

    #[test]
    fn parses_three_rows_in_order() {
        let f = write_csv(THREE_ROWS);
        let got = parse_records(f.path(), &sample_map()).unwrap();
        assert_eq!(got.records.len(), 3);
        assert_eq!(got.rows_skipped, 0);
        assert_eq!(
            got.records.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(),
            ["1", "2", "3"]
        );
        assert_eq!(got.records[0].year, Some(2013));
        assert_eq!(got.records[0].doc_type, DocType::Dissertation);
        assert_eq!(got.records[1].doc_type, DocType::Thesis);
        assert_eq!(got.records[2].doc_type, DocType::Other);
        assert_eq!(got.records[0].keywords_native, ["a", "b"]);
        assert_eq!(got.records[1].knowledge_area, "unknown");
    }

    #[test]
    fn empty_abstract_is_kept_at_parse_time() {
        let f = write_csv("ID,RESUMO,ABSTRACT\n9,resumo,\n");
        let got = parse_records(f.path(), &ColumnMap::new("ID", "RESUMO", "ABSTRACT")).unwrap();
        assert_eq!(got.records.len(), 1);
        assert_eq!(got.records[0].abstract_foreign, "");
    }

    #[test]
    fn quoted_delimiter_in_title_is_preserved() {
        let f = write_csv(
            "ID,TITULO,RESUMO,ABSTRACT\n7,\"Dados, métodos e resultados\",r,a\n",
        );
        let mut map = ColumnMap::new("ID", "RESUMO", "ABSTRACT");
        map.title_native = Some("TITULO".into());
        let got = parse_records(f.path(), &map).unwrap();
        assert_eq!(got.records[0].title_native, "Dados, métodos e resultados");
    }

    #[test]
    fn missing_mapped_column_is_fatal() {
        let f = write_csv("ID,RESUMO\n1,r\n");
        let err = parse_records(f.path(), &ColumnMap::new("ID", "RESUMO", "ABSTRACT"));
        assert!(matches!(err, Err(Error::MissingColumn { column }) if column == "ABSTRACT"));
    }

    #[test]
    fn unreadable_file_is_fatal() {
        let err = parse_records("/nonexistent/file.csv", &ColumnMap::new("a", "b", "c"));
        assert!(matches!(err, Err(Error::Io { .. })));
    }

    #[test]
    fn malformed_row_is_skipped_and_counted() {
        let f = write_csv("ID,RESUMO,ABSTRACT\n1,r,a\n2,r\n3,r,a\n");
        let got = parse_records(f.path(), &ColumnMap::new("ID", "RESUMO", "ABSTRACT")).unwrap();
        assert_eq!(got.records.len(), 2);
        assert_eq!(got.rows_skipped, 1);
        assert_eq!(got.warnings.len(), 1);
    }

    #[test]
    fn duplicate_id_keeps_first_and_warns() {
        let f = write_csv("ID,RESUMO,ABSTRACT\n1,first,a\n1,second,b\n");
        let got = parse_records(f.path(), &ColumnMap::new("ID", "RESUMO", "ABSTRACT")).unwrap();
        assert_eq!(got.records.len(), 1);
        assert_eq!(got.records[0].abstract_native, "first");
        assert_eq!(got.duplicates_dropped, 1);
        assert!(got.warnings[0].contains("duplicate"));
    }

    #[test]
    fn latin1_fallback_decodes_bad_utf8() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(b"ID,RESUMO,ABSTRACT\n1,caf\xe9,coffee\n").unwrap();

        let strict = ColumnMap::new("ID", "RESUMO", "ABSTRACT");
        let got = parse_records(f.path(), &strict).unwrap();
        assert_eq!(got.records.len(), 0);
        assert_eq!(got.rows_skipped, 1);

        let mut lenient = strict;
        lenient.latin1_fallback = true;
        let got = parse_records(f.path(), &lenient).unwrap();
        assert_eq!(got.records[0].abstract_native, "café");
    }

    fn rec(id: &str, native: &str, foreign: &str) -> DocumentRecord {
        DocumentRecord {
            id: id.into(),
            year: None,
            university: String::new(),
            title_native: String::new(),
            doc_type: DocType::Other,
            keywords_native: vec![],
            keywords_foreign: vec![],
            knowledge_area: "unknown".into(),
            subareas: vec![],
            url_pdf: String::new(),
            abstract_native: native.into(),
            abstract_foreign: foreign.into(),
        }
    }

    #[test]
    fn filter_drops_monolingual_records() {
        let records = vec![rec("1", "tem resumo", "has abstract"), rec("2", "só resumo", "")];
        let kept = filter_bilingual(records);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].id, "1");
    }

    #[test]
    fn filter_keeps_fully_bilingual_lists() {
        let records = vec![rec("1", "a", "b"), rec("2", "c", "d")];
        assert_eq!(filter_bilingual(records.clone()), records);
    }

    #[test]
    fn filter_drops_whitespace_only_abstracts() {
        let records = vec![rec("1", "   \t ", "abstract")];
        assert!(filter_bilingual(records).is_empty());
    }

    #[test]
    fn filter_is_idempotent() {
        let records = vec![rec("1", "a", "b"), rec("2", "", "d"), rec("3", "e", " ")];
        let once = filter_bilingual(records);
        assert_eq!(filter_bilingual(once.clone()), once);
    }

    #[test]
    fn normalize_folds_and_cleans() {
        let r = rec("1", "Análise\r\nde Dados", "Some  TEXT");
        let n = normalize(&r);
        assert_eq!(n.abstract_native, "análise de dados");
        assert_eq!(n.abstract_foreign, "some text");
    }

    #[test]
    fn normalize_is_idempotent() {
        let r = rec("X1", "UM  Texto\ncom\r\nquebras", "And CAPS");
        let once = normalize(&r);
        assert_eq!(normalize(&once), once);
    }

    #[test]
    fn records_roundtrip_through_mapped_layout() {
        let f = write_csv(THREE_ROWS);
        let map = sample_map();
        let first = parse_records(f.path(), &map).unwrap().records;

        let out = tempfile::NamedTempFile::new().unwrap();
        write_records_with_map(&first, &map, out.path()).unwrap();
        let second = parse_records(out.path(), &map).unwrap().records;
        assert_eq!(first, second);
    }

    #[test]
    fn records_roundtrip_through_tsv() {
        let f = write_csv(THREE_ROWS);
        let records: Vec<_> = parse_records(f.path(), &sample_map())
            .unwrap()
            .records
            .iter()
            .map(normalize)
            .collect();
        let out = tempfile::NamedTempFile::new().unwrap();
        write_records_tsv(&records, out.path()).unwrap();
        assert_eq!(read_records_tsv(out.path()).unwrap(), records);
    }

    #[test]
    fn key_value_map_parses() {
        let raw = "# layout\nid = ID\nabstract_native = RESUMO\nabstract_foreign = ABSTRACT\ndelimiter = \\t\n";
        let map = ColumnMap::from_key_values(raw).unwrap();
        assert_eq!(map.id, "ID");
        assert_eq!(map.delimiter, '\t');
    }

    #[test]
    fn tdc_default_map_is_valid() {
        let map = ColumnMap::tdc_default();
        map.validate().unwrap();
        assert_eq!(map.delimiter, ';');
    }
}
