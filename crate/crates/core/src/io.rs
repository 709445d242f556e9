//! Line-based text formats.
//!
//! A brace file (`.sbr`):
//!
//! ```text
//! skewbrace v1 <n>
//! <n rows of the · table>
//! circ
//! <n rows of the ∘ table>
//! ```
//!
//! A group file starts with `group v1 <n>` followed by `n` rows. A matrix file
//! holds any number of blocks `matrix <p> <rows> <cols>` followed by `rows`
//! lines of entries. Everything after `#` on a line is a comment, except that
//! `# @key value` lines carry metadata.

use std::fmt::Write as _;
use std::path::Path;

use crate::brace::{validate_skew_brace, SkewBrace};
use crate::error::{Error, Result};
use crate::fp::FpMatrix;
use crate::group::{validate_group_table, GroupTable};

/// A parsed brace together with its metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceDocument {
    pub name: Option<String>,
    /// Set when the shared identity was not at index 0 and the loader swapped
    /// it with 0.
    pub relabeled_identity: Option<usize>,
    pub brace: SkewBrace,
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    metadata: Vec<(String, String)>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut metadata = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let (body, comment) = match raw.find('#') {
                Some(k) => (&raw[..k], Some(&raw[k + 1..])),
                None => (raw, None),
            };
            if let Some(meta) = comment.and_then(|c| c.trim().strip_prefix('@')) {
                let (key, value) = meta.split_once(char::is_whitespace).unwrap_or((meta, ""));
                metadata.push((key.to_string(), value.trim().to_string()));
            }
            let body = body.trim();
            if !body.is_empty() {
                lines.push((i + 1, body));
            }
        }
        Lines { lines, pos: 0, metadata }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let last = self.lines.last().map_or(1, |l| l.0);
        let line = self.lines.get(self.pos).copied().ok_or_else(|| Error::Syntax {
            line: last,
            message: format!("unexpected end of input, expected {what}"),
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn done(&self) -> bool {
        self.pos == self.lines.len()
    }

    fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

fn parse_header(lines: &mut Lines, keyword: &str) -> Result<usize> {
    let (no, text) = lines.next("a header")?;
    let parts: Vec<&str> = text.split_whitespace().collect();
    match parts.as_slice() {
        [k, "v1", n] if *k == keyword => {
            let n: usize = n.parse().map_err(|_| syntax(no, format!("bad order {n:?}")))?;
            if n == 0 {
                return Err(syntax(no, "order must be positive"));
            }
            Ok(n)
        }
        [k, v, _] if *k == keyword => Err(syntax(no, format!("unsupported version {v:?}"))),
        _ => Err(syntax(no, format!("expected `{keyword} v1 <n>`"))),
    }
}

fn parse_rows(lines: &mut Lines, n: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    (0..n)
        .map(|r| {
            let (no, text) = lines.next(&format!("row {r} of the {what} table"))?;
            let row = text
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(x) if x < n => Ok(x),
                    Ok(x) => Err(syntax(no, format!("entry {x} out of range 0..{n} in {what} row {r}"))),
                    Err(_) => Err(syntax(no, format!("bad entry {t:?} in {what} row {r}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(syntax(no, format!("{what} row {r} has {} entries, expected {n}", row.len())));
            }
            Ok(row)
        })
        .collect()
}

/// The raw tables and name of a brace file, without validation.
pub fn parse_brace_tables(text: &str) -> Result<(Option<String>, Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let mut lines = Lines::new(text);
    let n = parse_header(&mut lines, "skewbrace")?;
    let dot = parse_rows(&mut lines, n, "dot")?;
    let (no, sep) = lines.next("`circ`")?;
    if sep != "circ" {
        return Err(syntax(no, "expected `circ`"));
    }
    let circ = parse_rows(&mut lines, n, "circ")?;
    if !lines.done() {
        return Err(syntax(lines.lines[lines.pos].0, "trailing content"));
    }
    Ok((lines.meta("name").map(str::to_string), dot, circ))
}

pub fn parse_brace(text: &str) -> Result<BraceDocument> {
    let (name, dot, circ) = parse_brace_tables(text)?;
    let (brace, relabeled_identity) =
        validate_skew_brace(&dot, &circ).map_err(|e| Error::Validation(Box::new(e)))?;
    Ok(BraceDocument { name, relabeled_identity, brace })
}

fn write_rows(out: &mut String, g: &GroupTable) {
    for a in 0..g.order() {
        let row: Vec<String> = (0..g.order()).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Canonical text of a brace: equal braces give equal strings.
pub fn serialize_brace(brace: &SkewBrace, name: Option<&str>) -> String {
    let mut out = String::new();
    writeln!(out, "skewbrace v1 {}", brace.order()).unwrap();
    if let Some(name) = name {
        writeln!(out, "# @name {name}").unwrap();
    }
    write_rows(&mut out, brace.dot());
    out.push_str("circ\n");
    write_rows(&mut out, brace.circ());
    out
}

pub fn serialize_document(doc: &BraceDocument) -> String {
    let mut out = serialize_brace(&doc.brace, doc.name.as_deref());
    if let Some(e) = doc.relabeled_identity {
        let at = out.find('\n').unwrap() + 1;
        out.insert_str(at, &format!("# @relabeled-identity {e}\n"));
    }
    out
}

pub fn parse_group(text: &str) -> Result<GroupTable> {
    let mut lines = Lines::new(text);
    let n = parse_header(&mut lines, "group")?;
    let rows = parse_rows(&mut lines, n, "group")?;
    if !lines.done() {
        return Err(syntax(lines.lines[lines.pos].0, "trailing content"));
    }
    validate_group_table(&rows).map_err(|e| Error::Validation(Box::new(e)))
}

pub fn serialize_group(g: &GroupTable) -> String {
    let mut out = format!("group v1 {}\n", g.order());
    write_rows(&mut out, g);
    out
}

pub fn parse_matrices(text: &str) -> Result<Vec<FpMatrix>> {
    let mut lines = Lines::new(text);
    let mut out = Vec::new();
    while !lines.done() {
        let (no, header) = lines.next("a matrix header")?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        let dims = match parts.as_slice() {
            ["matrix", p, r, c] => (p.parse::<u32>(), r.parse::<usize>(), c.parse::<usize>()),
            _ => return Err(syntax(no, "expected `matrix <p> <rows> <cols>`")),
        };
        let (Ok(p), Ok(rows), Ok(cols)) = dims else {
            return Err(syntax(no, "bad matrix dimensions"));
        };
        let entries = (0..rows)
            .map(|r| {
                let (no, text) = lines.next(&format!("matrix row {r}"))?;
                let row = text
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| syntax(no, format!("bad entry {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != cols {
                    return Err(syntax(no, format!("row has {} entries, expected {cols}", row.len())));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let m = if rows == 0 { Ok(FpMatrix::zero(p, 0, cols)) } else { FpMatrix::from_rows(p, &entries) };
        out.push(m.map_err(|e| syntax(no, e.to_string()))?);
    }
    Ok(out)
}

pub fn serialize_matrices(ms: &[FpMatrix]) -> String {
    let mut out = String::new();
    for m in ms {
        let (r, c) = m.shape();
        writeln!(out, "matrix {} {r} {c}", m.modulus()).unwrap();
        for row in m.row_vecs() {
            let row: Vec<String> = row.iter().map(u8::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| syntax(0, format!("cannot read {}: {e}", path.display())))
}

pub fn read_brace_file(path: impl AsRef<Path>) -> Result<BraceDocument> {
    parse_brace(&read(path.as_ref())?)
}

pub fn read_group_file(path: impl AsRef<Path>) -> Result<GroupTable> {
    parse_group(&read(path.as_ref())?)
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<Vec<FpMatrix>> {
    parse_matrices(&read(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::LiftMode;
    use crate::constructions::{example1_brace, s4_generators};
    use crate::group::catalog;

    #[test]
    fn brace_round_trip() {
        let b = example1_brace().unwrap();
        let text = serialize_brace(&b, Some("order 24"));
        let doc = parse_brace(&text).unwrap();
        assert_eq!(doc.brace, b);
        assert_eq!(doc.name.as_deref(), Some("order 24"));
        assert_eq!(serialize_document(&doc), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# a comment\nskewbrace v1 2\n0 1 # row 0\n\n1 0\ncirc\n0 1\n1 0\n";
        let doc = parse_brace(text).unwrap();
        assert_eq!(doc.brace.order(), 2);
        assert_eq!(doc.name, None);
    }

    #[test]
    fn syntax_errors_name_the_line() {
        let cases = [
            ("skewbrace v2 2\n", 1),
            ("skewbrace v1 2\n0 1\n1\ncirc\n0 1\n1 0\n", 3),
            ("skewbrace v1 2\n0 1\n1 0\ncirk\n0 1\n1 0\n", 4),
            ("skewbrace v1 2\n0 1\n1 2\ncirc\n0 1\n1 0\n", 3),
            ("skewbrace v1 2\n0 1\n1 0\ncirc\n0 1\n", 5),
            ("skewbrace v1 2\n0 1\n1 0\ncirc\n0 1\n1 0\n0\n", 7),
        ];
        for (text, line) in cases {
            match parse_brace(text) {
                Err(Error::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn non_permutation_row_is_a_validation_error() {
        let text = "skewbrace v1 2\n0 0\n1 0\ncirc\n0 1\n1 0\n";
        let Err(Error::Validation(inner)) = parse_brace(text) else { panic!() };
        let Error::NotAGroup(report) = *inner else { panic!() };
        assert_eq!(report.witnesses[0].elements, vec![0]);
    }

    #[test]
    fn relabeling_is_recorded() {
        // Z2 with identity at index 1
        let text = "skewbrace v1 2\n1 0\n0 1\ncirc\n1 0\n0 1\n";
        let doc = parse_brace(text).unwrap();
        assert_eq!(doc.relabeled_identity, Some(1));
        assert!(serialize_document(&doc).contains("# @relabeled-identity 1"));
    }

    #[test]
    fn group_and_matrix_round_trips() {
        let g = catalog::symmetric(3);
        assert_eq!(parse_group(&serialize_group(&g)).unwrap(), g);
        let ms = s4_generators();
        assert_eq!(parse_matrices(&serialize_matrices(&ms)).unwrap(), ms);
        let neg = parse_matrices("matrix 3 1 2\n-1 4\n").unwrap();
        assert_eq!(neg[0].row(0), &[2, 1]);
    }

    #[test]
    fn bundled_fixture_s3() {
        let text = include_str!("../fixtures/s3_almost_trivial.sbr");
        let b = parse_brace(text).unwrap().brace;
        assert_eq!(b, SkewBrace::lift(&catalog::symmetric(3), LiftMode::AlmostTrivial));
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(b.star(x, y), b.dot().commutator(b.inv(x), y));
            }
        }
    }

    #[test]
    fn doctored_fixtures_are_rejected_with_witnesses() {
        let cases = [
            include_str!("../fixtures/doctored/s3_circ_not_a_group.sbr"),
            include_str!("../fixtures/doctored/s3_circ_brace_violation.sbr"),
            include_str!("../fixtures/doctored/z4_klein_identity_mismatch.sbr"),
        ];
        let errors: Vec<Error> = cases
            .iter()
            .map(|t| match parse_brace(t) {
                Err(Error::Validation(e)) => *e,
                other => panic!("{other:?}"),
            })
            .collect();
        let Error::NotAGroup(r) = &errors[0] else { panic!() };
        assert!(!r.witnesses.is_empty());
        assert!(matches!(errors[1], Error::LeftBraceViolation(..)));
        assert!(matches!(errors[2], Error::IdentityMismatch { dot: 0, circ: 1 }));
    }
}
