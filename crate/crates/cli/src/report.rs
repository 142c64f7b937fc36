//! Command reports: ordered key/value fields, optional tables and a list of failures.
//!
//! The structured form is line oriented and versioned:
//!
//! ```text
//! hcplx-report 1
//! command analyze-complex
//! dims 1 2
//! table degree dim harmonic
//! row 0 1 1
//! status ok
//! end
//! ```
//!
//! Values never contain newlines, so every line is `key value…`. Failures are listed as
//! `failure <message>` lines before the status.

use std::fmt::Write as _;

/// Output flavour.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Item {
    Field(String, String),
    Table(Table),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    items: Vec<Item>,
    failures: Vec<String>,
}

/// Space-separated rendering of a list.
pub fn list<T: ToString>(xs: &[T]) -> String {
    if xs.is_empty() {
        return "-".into();
    }
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { command: command.into(), items: Vec::new(), failures: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        let value = value.to_string().replace('\n', " ");
        self.items.push(Item::Field(key.into(), if value.is_empty() { "-".into() } else { value }));
        self
    }

    pub fn table(&mut self, name: &str, headers: &[&str], rows: Vec<Vec<String>>) -> &mut Self {
        self.items.push(Item::Table(Table {
            name: name.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows,
        }));
        self
    }

    /// Records a failed invariant or oracle comparison.
    pub fn fail(&mut self, message: impl Into<String>) -> &mut Self {
        self.failures.push(message.into().replace('\n', " "));
        self
    }

    /// Records `message` when `ok` is false.
    pub fn require(&mut self, ok: bool, message: impl Into<String>) -> &mut Self {
        if !ok {
            self.fail(message);
        }
        self
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The value of the first field with this key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.items.iter().find_map(|item| match item {
            Item::Field(k, v) if k == key => Some(v.as_str()),
            _ => None,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human(),
            Format::Structured => self.structured(),
        }
    }

    pub fn structured(&self) -> String {
        let mut out = String::from("hcplx-report 1\n");
        writeln!(out, "command {}", self.command).unwrap();
        for item in &self.items {
            match item {
                Item::Field(k, v) => writeln!(out, "{k} {v}").unwrap(),
                Item::Table(t) => {
                    writeln!(out, "table {} {}", t.name, t.headers.join(" ")).unwrap();
                    for row in &t.rows {
                        writeln!(out, "row {}", row.join(" ")).unwrap();
                    }
                }
            }
        }
        for f in &self.failures {
            writeln!(out, "failure {f}").unwrap();
        }
        writeln!(out, "status {}", if self.passed() { "ok" } else { "failed" }).unwrap();
        out.push_str("end\n");
        out
    }

    pub fn human(&self) -> String {
        let width = self
            .items
            .iter()
            .filter_map(|item| match item {
                Item::Field(k, _) => Some(k.chars().count()),
                Item::Table(_) => None,
            })
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        writeln!(out, "== {} ==", self.command).unwrap();
        for item in &self.items {
            match item {
                Item::Field(k, v) => writeln!(out, "{k:<width$}  {v}").unwrap(),
                Item::Table(t) => {
                    writeln!(out, "-- {} --", t.name).unwrap();
                    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
                    for row in &t.rows {
                        for (w, cell) in widths.iter_mut().zip(row) {
                            *w = (*w).max(cell.chars().count());
                        }
                    }
                    let line = |cells: &[String]| -> String {
                        cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
                    };
                    writeln!(out, "{}", line(&t.headers)).unwrap();
                    for row in &t.rows {
                        writeln!(out, "{}", line(row)).unwrap();
                    }
                }
            }
        }
        for f in &self.failures {
            writeln!(out, "FAILED: {f}").unwrap();
        }
        writeln!(out, "status: {}", if self.passed() { "ok" } else { "failed" }).unwrap();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_layout() {
        let mut r = Report::new("demo");
        r.field("dims", list(&[1, 2])).table("cohomology", &["degree", "dim"], vec![vec!["0".into(), "1".into()]]);
        assert_eq!(
            r.structured(),
            "hcplx-report 1\ncommand demo\ndims 1 2\ntable cohomology degree dim\nrow 0 1\nstatus ok\nend\n"
        );
        r.require(false, "broken");
        assert!(r.structured().ends_with("failure broken\nstatus failed\nend\n"));
        assert_eq!(r.get("dims"), Some("1 2"));
        assert_eq!(list::<usize>(&[]), "-");
    }

    #[test]
    fn human_aligns_tables() {
        let mut r = Report::new("demo");
        r.table("t", &["degree", "dim"], vec![vec!["0".into(), "12".into()]]);
        assert!(r.human().contains("degree  dim\n     0   12\n"));
    }
}
