//! Key-sorted structured text: one `key: value` per line, sections nested by
//! two-space indentation.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Entry {
    Value(String),
    Section(Report),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    entries: BTreeMap<String, Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries
            .insert(key.into(), Entry::Value(value.to_string()));
        self
    }

    /// The nested section under `key`, created if absent. Replaces a plain value.
    pub fn section(&mut self, key: impl Into<String>) -> &mut Report {
        let entry = self
            .entries
            .entry(key.into())
            .or_insert_with(|| Entry::Section(Report::new()));
        if let Entry::Value(_) = entry {
            *entry = Entry::Section(Report::new());
        }
        match entry {
            Entry::Section(r) => r,
            Entry::Value(_) => unreachable!(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        match self.entries.get(key)? {
            Entry::Value(v) => Some(v),
            Entry::Section(_) => None,
        }
    }

    pub fn get_section(&self, key: &str) -> Option<&Report> {
        match self.entries.get(key)? {
            Entry::Section(r) => Some(r),
            Entry::Value(_) => None,
        }
    }

    /// Value at a `/`-separated path.
    pub fn lookup(&self, path: &str) -> Option<&str> {
        let mut parts: Vec<&str> = path.split('/').collect();
        let last = parts.pop()?;
        let mut current = self;
        for part in parts {
            current = current.get_section(part)?;
        }
        current.get(last)
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        for (key, entry) in &self.entries {
            match entry {
                Entry::Value(v) => writeln!(f, "{pad}{key}: {}", v.replace('\n', "\\n"))?,
                Entry::Section(r) => {
                    writeln!(f, "{pad}{key}:")?;
                    r.write_indented(f, depth + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Zero-padded list key so that lexicographic order is numeric order.
pub fn index_key(i: usize, count: usize) -> String {
    let width = count.saturating_sub(1).to_string().len();
    format!("{i:0width$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_sorted_and_nested() {
        let mut r = Report::new();
        r.set("zeta", 1);
        r.section("alpha").set("b", "two").set("a", "one");
        r.section("alpha").section("inner").set("x", true);
        r.set("mid", "line\nbreak");
        assert_eq!(
            r.to_string(),
            "alpha:\n  a: one\n  b: two\n  inner:\n    x: true\nmid: line\\nbreak\nzeta: 1\n"
        );
        assert_eq!(r.lookup("alpha/inner/x"), Some("true"));
        assert_eq!(r.lookup("alpha/missing"), None);
    }

    #[test]
    fn padded_keys_sort_numerically() {
        assert_eq!(index_key(3, 12), "03");
        assert_eq!(index_key(0, 1), "0");
        assert_eq!(index_key(7, 0), "7");
        let mut keys: Vec<String> = (0..12).map(|i| index_key(i, 12)).collect();
        let before = keys.clone();
        keys.sort();
        assert_eq!(keys, before);
    }
}
