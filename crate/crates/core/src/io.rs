//! Plain-text file formats for lattices (.lat), binary operation tables
//! (.opt), and unary operation tables (.unm), with parsers that keep line
//! numbers and printers that round-trip bit-exactly.

use crate::binop::{BinOpTable, OpError};
use crate::lattice::{Lattice, LatticeError};
use crate::unary::UnaryOpTable;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl fmt::Display) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.to_string(),
    })
}

/// A parsed .lat file, before any order-theoretic validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawLattice {
    pub name: String,
    pub elements: Vec<String>,
    pub bottom: String,
    pub top: String,
    pub covers: Vec<(String, String)>,
}

/// A parsed .opt file: the table is kept as labels so it can be inspected
/// without (or before) resolving the lattice it references.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub name: String,
    pub lattice_name: String,
    pub carrier: Vec<String>,
    pub neutral: Option<String>,
    pub rows: Vec<Vec<String>>,
}

impl RawTable {
    /// Value at `(x, y)` by label, if both labels are in the carrier.
    pub fn lookup(&self, x: &str, y: &str) -> Option<&str> {
        let i = self.carrier.iter().position(|c| c == x)?;
        let j = self.carrier.iter().position(|c| c == y)?;
        Some(self.rows[i][j].as_str())
    }
}

/// A parsed .unm file; elements not listed map to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawUnary {
    pub name: String,
    pub lattice_name: String,
    pub pairs: Vec<(String, String)>,
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn meaningful_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn header<'a>(
    lines: &[(usize, &'a str)],
    keyword: &str,
) -> Result<(usize, &'a str, Option<&'a str>), ParseError> {
    let Some(&(ln, first)) = lines.first() else {
        return err(0, "empty file");
    };
    let mut parts = first.split_whitespace();
    if parts.next() != Some(keyword) {
        return err(ln, format!("expected `{keyword} <name> ...` header"));
    }
    let Some(name) = parts.next() else {
        return err(ln, format!("`{keyword}` header is missing a name"));
    };
    match parts.next() {
        None => Ok((ln, name, None)),
        Some("on") => match parts.next() {
            Some(lat) if parts.next().is_none() => Ok((ln, name, Some(lat))),
            _ => err(ln, "expected `on <lattice-name>` and nothing after it"),
        },
        Some(extra) => err(ln, format!("unexpected token `{extra}` in header")),
    }
}

pub fn parse_lattice_raw(text: &str) -> Result<RawLattice, ParseError> {
    let lines = meaningful_lines(text);
    let (_, name, tail) = header(&lines, "lattice")?;
    if tail.is_some() {
        return err(lines[0].0, "`lattice` header takes only a name");
    }
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut bottom: Option<String> = None;
    let mut top: Option<String> = None;
    let mut covers: Vec<(String, String)> = Vec::new();
    let mut in_covers = false;
    for &(ln, line) in &lines[1..] {
        if in_covers {
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [x, "<", y] => covers.push((x.to_string(), y.to_string())),
                _ => return err(ln, format!("expected `x < y`, got `{line}`")),
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            let es: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if es.is_empty() {
                return err(ln, "`elements:` lists no elements");
            }
            if elements.replace((ln, es)).is_some() {
                return err(ln, "duplicate `elements:` directive");
            }
        } else if let Some(rest) = line.strip_prefix("bottom:") {
            if bottom.replace(one_token(ln, rest, "bottom")?).is_some() {
                return err(ln, "duplicate `bottom:` directive");
            }
        } else if let Some(rest) = line.strip_prefix("top:") {
            if top.replace(one_token(ln, rest, "top")?).is_some() {
                return err(ln, "duplicate `top:` directive");
            }
        } else if line == "covers:" {
            in_covers = true;
        } else {
            return err(ln, format!("unknown directive `{line}`"));
        }
    }
    let Some((_, elements)) = elements else {
        return err(lines[0].0, "missing `elements:` directive");
    };
    let Some(bottom) = bottom else {
        return err(lines[0].0, "missing `bottom:` directive");
    };
    let Some(top) = top else {
        return err(lines[0].0, "missing `top:` directive");
    };
    if !in_covers {
        return err(lines[0].0, "missing `covers:` section");
    }
    Ok(RawLattice {
        name: name.to_string(),
        elements,
        bottom,
        top,
        covers,
    })
}

fn one_token(ln: usize, rest: &str, what: &str) -> Result<String, ParseError> {
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match toks.as_slice() {
        [t] => Ok(t.to_string()),
        _ => err(ln, format!("`{what}:` takes exactly one element")),
    }
}

pub fn parse_table_raw(text: &str) -> Result<RawTable, ParseError> {
    let lines = meaningful_lines(text);
    let (hln, name, lat) = header(&lines, "op")?;
    let Some(lattice_name) = lat else {
        return err(hln, "`op` header needs `on <lattice-name>`");
    };
    let mut rest = lines[1..].iter();
    let Some(&(cln, cline)) = rest.next() else {
        return err(hln, "missing `carrier:` directive");
    };
    let Some(ctail) = cline.strip_prefix("carrier:") else {
        return err(cln, format!("expected `carrier:`, got `{cline}`"));
    };
    let carrier: Vec<String> = ctail.split_whitespace().map(str::to_string).collect();
    if carrier.is_empty() {
        return err(cln, "`carrier:` lists no elements");
    }
    let k = carrier.len();
    let mut neutral = None;
    let mut rows: Vec<Vec<String>> = Vec::new();
    for &(ln, line) in rest {
        if let Some(ntail) = line.strip_prefix("neutral:") {
            if !rows.is_empty() {
                return err(ln, "`neutral:` must come before the rows");
            }
            if neutral.replace(one_token(ln, ntail, "neutral")?).is_some() {
                return err(ln, "duplicate `neutral:` directive");
            }
            continue;
        }
        let row: Vec<String> = line.split_whitespace().map(str::to_string).collect();
        if row.len() != k {
            return err(
                ln,
                format!("row {} has {} entries, expected {k}", rows.len() + 1, row.len()),
            );
        }
        if rows.len() == k {
            return err(ln, format!("more than {k} rows"));
        }
        rows.push(row);
    }
    if rows.len() != k {
        return err(
            lines.last().map_or(hln, |&(ln, _)| ln),
            format!("found {} rows, expected {k}", rows.len()),
        );
    }
    Ok(RawTable {
        name: name.to_string(),
        lattice_name: lattice_name.to_string(),
        carrier,
        neutral,
        rows,
    })
}

pub fn parse_unary_raw(text: &str) -> Result<RawUnary, ParseError> {
    let lines = meaningful_lines(text);
    let (hln, name, lat) = header(&lines, "unary")?;
    let Some(lattice_name) = lat else {
        return err(hln, "`unary` header needs `on <lattice-name>`");
    };
    let mut pairs = Vec::new();
    for &(ln, line) in &lines[1..] {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [x, "->", y] => pairs.push((x.to_string(), y.to_string())),
            _ => return err(ln, format!("expected `x -> y`, got `{line}`")),
        }
    }
    Ok(RawUnary {
        name: name.to_string(),
        lattice_name: lattice_name.to_string(),
        pairs,
    })
}

/// Validates the order in a parsed .lat file and checks the declared bounds
/// against the computed ones.
pub fn build_lattice(raw: &RawLattice) -> Result<Lattice, LatticeError> {
    let labels: Vec<&str> = raw.elements.iter().map(String::as_str).collect();
    let covers: Vec<(&str, &str)> = raw
        .covers
        .iter()
        .map(|(x, y)| (x.as_str(), y.as_str()))
        .collect();
    let lat = Lattice::from_covers(&raw.name, &labels, &covers)?;
    let bottom = lat.label(lat.bottom());
    if bottom != raw.bottom {
        return Err(LatticeError::NotBounded(format!(
            "declared bottom `{}` but the order gives `{bottom}`",
            raw.bottom
        )));
    }
    let top = lat.label(lat.top());
    if top != raw.top {
        return Err(LatticeError::NotBounded(format!(
            "declared top `{}` but the order gives `{top}`",
            raw.top
        )));
    }
    Ok(lat)
}

/// Binds a parsed table to the lattice it references, validating closure,
/// commutativity of nothing (tables may be arbitrary), and the carrier.
pub fn resolve_table(raw: &RawTable, lat: Arc<Lattice>) -> Result<BinOpTable, OpError> {
    let carrier = indices(&raw.carrier, &lat)?;
    let mut values = Vec::with_capacity(carrier.len() * carrier.len());
    for row in &raw.rows {
        for cell in row {
            values.push(lat.idx(cell)?);
        }
    }
    let neutral = match &raw.neutral {
        Some(e) => Some(lat.idx(e)?),
        None => None,
    };
    BinOpTable::new(&raw.name, lat, carrier, values, neutral)
}

/// Binds a parsed unary map to the lattice it references; unlisted elements
/// stay fixed.
pub fn resolve_unary(raw: &RawUnary, lat: Arc<Lattice>) -> Result<UnaryOpTable, OpError> {
    let mut pairs = Vec::with_capacity(raw.pairs.len());
    for (x, y) in &raw.pairs {
        pairs.push((lat.idx(x)?, lat.idx(y)?));
    }
    UnaryOpTable::from_pairs(&raw.name, lat, &pairs)
}

fn indices(labels: &[String], lat: &Lattice) -> Result<Vec<usize>, OpError> {
    labels.iter().map(|l| Ok(lat.idx(l)?)).collect()
}

/// Name tokens must survive a whitespace-splitting parser.
fn sanitize(name: &str) -> String {
    let cleaned: String = name
        .chars()
        .map(|c| if c.is_whitespace() { '_' } else { c })
        .collect();
    if cleaned.is_empty() {
        "unnamed".to_string()
    } else {
        cleaned
    }
}

pub fn print_lattice(lat: &Lattice) -> String {
    let mut out = String::new();
    out.push_str(&format!("lattice {}\n", sanitize(lat.name())));
    out.push_str("elements:");
    for l in lat.labels() {
        out.push_str(&format!(" {l}"));
    }
    out.push('\n');
    out.push_str(&format!("bottom: {}\n", lat.label(lat.bottom())));
    out.push_str(&format!("top: {}\n", lat.label(lat.top())));
    out.push_str("covers:\n");
    for &(x, y) in lat.covers() {
        out.push_str(&format!("{} < {}\n", lat.label(x), lat.label(y)));
    }
    out
}

pub fn print_table(table: &BinOpTable) -> String {
    let lat = table.lattice();
    let mut out = String::new();
    out.push_str(&format!(
        "op {} on {}\n",
        sanitize(table.name()),
        sanitize(lat.name())
    ));
    out.push_str("carrier:");
    for &c in table.carrier() {
        out.push_str(&format!(" {}", lat.label(c)));
    }
    out.push('\n');
    if let Some(e) = table.declared_neutral() {
        out.push_str(&format!("neutral: {}\n", lat.label(e)));
    }
    let width = table
        .carrier()
        .iter()
        .map(|&c| lat.label(c).len())
        .max()
        .unwrap_or(1);
    for &x in table.carrier() {
        let mut row = Vec::new();
        for &y in table.carrier() {
            row.push(format!("{:width$}", lat.label(table.at(x, y))));
        }
        out.push_str(row.join(" ").trim_end());
        out.push('\n');
    }
    out
}

pub fn print_unary(table: &UnaryOpTable) -> String {
    let lat = table.lattice();
    let mut out = String::new();
    out.push_str(&format!(
        "unary {} on {}\n",
        sanitize(table.name()),
        sanitize(lat.name())
    ));
    for (x, y) in table.moved_pairs() {
        out.push_str(&format!("{} -> {}\n", lat.label(x), lat.label(y)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    fn diamond() -> Arc<Lattice> {
        Arc::new(
            Lattice::from_covers(
                "d4",
                &["0", "x", "y", "1"],
                &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")],
            )
            .unwrap(),
        )
    }

    #[test]
    fn lattice_round_trip_is_bit_exact() {
        let lat = diamond();
        let text = print_lattice(&lat);
        let raw = parse_lattice_raw(&text).unwrap();
        let back = build_lattice(&raw).unwrap();
        assert_eq!(back.labels(), lat.labels());
        assert_eq!(back.covers(), lat.covers());
        assert_eq!(print_lattice(&back), text);
    }

    #[test]
    fn lattice_parser_reports_lines_and_unknown_directives() {
        let text = "lattice l\nelements: 0 1\nbottom: 0\ntop: 1\nloops:\n";
        let e = parse_lattice_raw(text).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("unknown directive"));

        let dup = "lattice l\nelements: 0 1\nelements: 0 1\nbottom: 0\ntop: 1\ncovers:\n0 < 1\n";
        assert_eq!(parse_lattice_raw(dup).unwrap_err().line, 3);
    }

    #[test]
    fn declared_bounds_must_match_the_order() {
        let text = "lattice l\nelements: 0 1\nbottom: 1\ntop: 1\ncovers:\n0 < 1\n";
        let raw = parse_lattice_raw(text).unwrap();
        let e = build_lattice(&raw).unwrap_err();
        assert!(e.to_string().contains("declared bottom"));
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header comment\n\nlattice l\n# another\nelements: 0 1\nbottom: 0\ntop: 1\ncovers:\n0 < 1\n";
        assert!(parse_lattice_raw(text).is_ok());
    }

    #[test]
    fn table_round_trip_is_bit_exact() {
        let lat = diamond();
        let table = BinOpTable::from_fn("join", lat.clone(), (0..4).collect(), Some(0), |x, y| {
            lat.join(x, y)
        })
        .unwrap();
        let text = print_table(&table);
        let raw = parse_table_raw(&text).unwrap();
        assert_eq!(raw.lattice_name, "d4");
        assert_eq!(raw.neutral.as_deref(), Some("0"));
        let back = resolve_table(&raw, lat.clone()).unwrap();
        assert!(back.table_eq(&table));
        assert_eq!(print_table(&back), text);
    }

    #[test]
    fn table_parser_checks_row_shape() {
        let text = "op f on l\ncarrier: 0 1\n0 0\n0\n";
        let e = parse_table_raw(text).unwrap_err();
        assert_eq!(e.line, 4);
        assert!(e.message.contains("expected 2"));

        let missing = "op f on l\ncarrier: 0 1\n0 0\n";
        assert!(parse_table_raw(missing).unwrap_err().message.contains("1 rows"));
    }

    #[test]
    fn table_values_must_name_lattice_elements() {
        let lat = diamond();
        let text = "op f on d4\ncarrier: 0 1\n0 z\nz z\n";
        let raw = parse_table_raw(text).unwrap();
        assert!(resolve_table(&raw, lat).is_err());
    }

    #[test]
    fn unary_round_trip_keeps_only_moved_points() {
        let lat = diamond();
        let x = lat.idx("x").unwrap();
        let top = lat.top();
        let cl = UnaryOpTable::from_pairs("cl", lat.clone(), &[(x, top)]).unwrap();
        let text = print_unary(&cl);
        assert!(text.contains("x -> 1"));
        assert!(!text.contains("y ->"));
        let raw = parse_unary_raw(&text).unwrap();
        let back = resolve_unary(&raw, lat).unwrap();
        assert_eq!(back.map(), cl.map());
        assert_eq!(print_unary(&back), text);
    }

    #[test]
    fn names_with_spaces_survive_printing() {
        let lat = Arc::new(
            Lattice::from_covers("two chain", &["0", "1"], &[("0", "1")]).unwrap(),
        );
        let text = print_lattice(&lat);
        let raw = parse_lattice_raw(&text).unwrap();
        assert_eq!(raw.name, "two_chain");
    }
}
