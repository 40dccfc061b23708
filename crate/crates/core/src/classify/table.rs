use serde::Serialize;

use crate::structure::{identify, Digraph};

use super::canon::{exists_canons, forall_canons};
use super::certificate::ComplexityClass;
use super::digraph::classify_digraph;
use super::semantic::semantic_class;
use super::ClassifyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    /// Adjacency rows joined by `/`, e.g. `010/001/100`.
    pub encoding: String,
    pub class: ComplexityClass,
    pub rule: String,
    pub kernel: Option<String>,
    pub forall_canons: Vec<u32>,
    pub exists_canons: Vec<u32>,
    /// Catalog name of an isomorphic entry, if there is one.
    pub name: Option<String>,
}

impl TableRow {
    pub const CSV_HEADER: &'static str = "encoding,class,rule,kernel,forall_canons,exists_canons,name";

    pub fn to_csv(&self) -> String {
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "{},{},{},{},{},{},{}",
            self.encoding,
            self.class.display_name(),
            self.rule,
            self.kernel.as_deref().unwrap_or(""),
            join(&self.forall_canons),
            join(&self.exists_canons),
            self.name.as_deref().unwrap_or("")
        )
    }
}

/// One row per digraph on `size` vertices, ordered by encoding. With
/// `up_to_iso`, only the least encoding of each isomorphism class is kept.
pub fn classification_table(size: usize, up_to_iso: bool) -> Result<Vec<TableRow>, ClassifyError> {
    if size > 3 {
        return Err(ClassifyError::Unsupported(format!(
            "tables for {size} vertices; the classification covers at most 3"
        )));
    }
    let mut rows = Vec::new();
    for h in Digraph::all(size) {
        if up_to_iso && h.canonical_code() != h.code() {
            continue;
        }
        let c = classify_digraph(&h)?;
        rows.push(TableRow {
            encoding: h.encoding(),
            class: c.verdict,
            rule: c.rule.clone(),
            kernel: c.final_kernel().map(str::to_string),
            forall_canons: forall_canons(&h),
            exists_canons: exists_canons(&h),
            name: identify(&h),
        });
    }
    rows.sort_by(|a, b| a.encoding.cmp(&b.encoding));
    Ok(rows)
}

/// Cross-checks behind a table: structural and semantic classes agree,
/// complements get dual classes, isomorphic digraphs share a class, and
/// every certificate re-checks. Returns one message per offending digraph.
pub fn cross_check_table(size: usize) -> Result<Vec<String>, ClassifyError> {
    let all: Vec<Digraph> = Digraph::all(size).collect();
    let certs = all.iter().map(classify_digraph).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for (h, c) in all.iter().zip(&certs) {
        let mut problems = Vec::new();
        let sem = semantic_class(h);
        if sem != c.verdict {
            problems.push(format!("semantic class {sem}"));
        }
        let dual = certs[h.complement().code() as usize].verdict;
        if dual != c.verdict.dual() {
            problems.push(format!("complement is {dual}"));
        }
        let iso = certs[h.canonical_code() as usize].verdict;
        if iso != c.verdict {
            problems.push(format!("isomorphic copy is {iso}"));
        }
        if let Err(e) = c.check(&h.to_structure()) {
            problems.push(format!("certificate: {e}"));
        }
        if !problems.is_empty() {
            out.push(format!("{} ({}): {}", h.encoding(), c.verdict, problems.join("; ")));
        }
    }
    Ok(out)
}

pub fn render_csv(rows: &[TableRow]) -> String {
    let mut out = String::from(TableRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_counts() {
        assert_eq!(classification_table(2, false).unwrap().len(), 16);
        assert_eq!(classification_table(3, true).unwrap().len(), 104);
        assert_eq!(classification_table(1, false).unwrap().len(), 2);
    }

    #[test]
    fn cross_checks_are_clean() {
        for n in 1..=3 {
            assert!(cross_check_table(n).unwrap().is_empty());
        }
    }

    #[test]
    fn csv_shape() {
        let rows = classification_table(2, false).unwrap();
        let csv = render_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], TableRow::CSV_HEADER);
        assert!(lines[1].starts_with("00/00,Logspace,"));
        assert!(lines.windows(2).skip(1).all(|w| w[0] < w[1]));
    }
}
