//! Plain-text group definitions.
//!
//! ```text
//! # name: S3
//! degree: 3
//! (1 2 3)
//! (1 2)
//! ```
//!
//! One generator per line in 1-based cycle notation, `()` for the identity.
//! `#` starts a comment; a leading `# name: …` comment names the group.
//! The degree is the largest point mentioned unless a `degree:` header
//! raises it.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{GroupError, ParseError};
use crate::permgroup::{Permutation, PermutationGroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub path: String,
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupFile {
    pub fn group(&self) -> Result<PermutationGroup, GroupError> {
        PermutationGroup::new(self.degree, self.generators.clone())
    }

    pub fn from_group(name: &str, group: &PermutationGroup) -> Self {
        GroupFile {
            path: String::new(),
            name: name.to_string(),
            degree: group.degree(),
            generators: group.generators().to_vec(),
        }
    }
}

/// Parses file contents; `name` is left empty when there is no header.
pub fn parse_group_file(content: &str) -> Result<GroupFile, ParseError> {
    let mut name = String::new();
    let mut header_degree: Option<usize> = None;
    let mut cycle_lists: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut max_point = 0usize;

    for (i, raw) in content.lines().enumerate() {
        let line = i + 1;
        let (body, comment) = match raw.split_once('#') {
            Some((b, c)) => (b, Some(c)),
            None => (raw, None),
        };
        if let Some(c) = comment {
            if let Some(n) = c.trim().strip_prefix("name:") {
                if name.is_empty() {
                    name = n.trim().to_string();
                }
            }
        }
        let body = body.trim();
        if body.is_empty() {
            continue;
        }
        if let Some(d) = body.strip_prefix("degree:") {
            let d: usize = d.trim().parse().map_err(|_| ParseError::BadHeader {
                line,
                reason: format!("`{}` is not a positive integer", d.trim()),
            })?;
            if d == 0 || header_degree.is_some() {
                return Err(ParseError::BadHeader {
                    line,
                    reason: if d == 0 { "degree must be positive".into() } else { "repeated degree header".into() },
                });
            }
            header_degree = Some(d);
            continue;
        }
        let cycles = parse_cycles(body, line)?;
        max_point = max_point.max(cycles.iter().flatten().copied().max().unwrap_or(0));
        cycle_lists.push(cycles);
    }

    let degree = match header_degree {
        Some(h) if h < max_point => return Err(ParseError::DegreeTooSmall { header: h, max_point }),
        Some(h) => h,
        None => max_point.max(1),
    };
    let generators = cycle_lists
        .iter()
        .map(|c| Permutation::from_cycles(degree, c).expect("points checked during parsing"))
        .collect();
    Ok(GroupFile { path: String::new(), name, degree, generators })
}

/// Reads a group file; the name defaults to the file stem.
pub fn read_group_file(path: &Path) -> Result<GroupFile, crate::error::VerifyError> {
    let content = std::fs::read_to_string(path)
        .map_err(|source| crate::error::VerifyError::Io { path: path.to_path_buf(), source })?;
    let mut file = parse_group_file(&content)
        .map_err(|source| crate::error::VerifyError::Parse { path: path.to_path_buf(), source })?;
    if file.name.is_empty() {
        file.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    file.path = path.display().to_string();
    Ok(file)
}

/// Canonical text form; parses back to the same generators and degree.
pub fn serialize_group_file(file: &GroupFile) -> String {
    let mut out = String::new();
    if !file.name.is_empty() {
        let _ = writeln!(out, "# name: {}", file.name);
    }
    let _ = writeln!(out, "degree: {}", file.degree);
    for g in &file.generators {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Cycles on one line: `(1 2 3)(4 5)`, points separated by spaces or commas.
fn parse_cycles(body: &str, line: usize) -> Result<Vec<Vec<usize>>, ParseError> {
    let malformed = |reason: String| ParseError::Malformed { line, reason };
    let mut cycles = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut rest = body;
    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(malformed(format!("expected `(` at `{rest}`")));
        };
        let close = after_open.find(')').ok_or_else(|| malformed("unclosed `(`".into()))?;
        let inner = &after_open[..close];
        if inner.contains('(') {
            return Err(malformed("nested `(`".into()));
        }
        let mut cycle = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let point: usize = tok.parse().map_err(|_| malformed(format!("`{tok}` is not a point")))?;
            if point == 0 {
                return Err(malformed("points are numbered from 1".into()));
            }
            if !seen.insert(point) {
                return Err(ParseError::RepeatedPoint { line, point });
            }
            cycle.push(point);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = after_open[close + 1..].trim_start();
    }
    Ok(cycles)
}
