//! `#`-prefixed header carried by every output file.

use std::fmt::Write;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub command: String,
    /// Output format and its revision, e.g. `density-csv/1`.
    pub format: String,
    pub params: Vec<(String, String)>,
    /// formula_id per output column.
    pub columns: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str, format: &str) -> Self {
        Self {
            command: command.into(),
            format: format.into(),
            params: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }

    pub fn column(mut self, name: &str, formula_id: impl ToString) -> Self {
        self.columns.push((name.into(), formula_id.to_string()));
        self
    }

    /// The parameters as a command line that regenerates the output.
    pub fn invocation(&self) -> String {
        let mut s = self.command.clone();
        for (k, v) in &self.params {
            let _ = write!(s, " --{k} {v}");
        }
        s
    }

    pub fn header(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# mslevy {VERSION}");
        let _ = writeln!(s, "# command = {}", self.command);
        let _ = writeln!(s, "# format = {}", self.format);
        let _ = writeln!(s, "# invocation = {}", self.invocation());
        for (k, v) in &self.params {
            let _ = writeln!(s, "# param {k} = {v}");
        }
        for (c, f) in &self.columns {
            let _ = writeln!(s, "# formula_id {c} = {f}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_lines() {
        let m = RunManifest::new("density", "density-csv/1")
            .param("alpha", 2.0)
            .param("t", 1.0)
            .column("value", "closed:gauss");
        let h = m.header();
        assert!(h.lines().all(|l| l.starts_with("# ")));
        assert!(h.contains("# invocation = density --alpha 2 --t 1\n"));
        assert!(h.contains("# formula_id value = closed:gauss\n"));
    }
}
