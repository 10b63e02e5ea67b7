//! The run report: an ordered key-value text document, one `key: value`
//! line per entry. Keys are lowercase dotted identifiers; values are free
//! text without newlines. The format round-trips exactly.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut report = Report { entries: Vec::new() };
        report.push("command", command);
        let argv: Vec<String> = std::env::args().collect();
        report.push("argv", argv.join(" "));
        report
    }

    #[cfg(test)]
    pub fn empty() -> Self {
        Report { entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        let value = value.to_string();
        debug_assert!(!key.contains(':') && !key.contains('\n'));
        debug_assert!(!value.contains('\n'));
        self.entries.push((key, value));
    }

    #[cfg(test)]
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(value);
            out.push('\n');
        }
        out
    }

    #[cfg(test)]
    pub fn parse(text: &str) -> Result<Report, String> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| format!("line {}: not a `key: value` entry", i + 1))?;
            entries.push((key.to_string(), value.to_string()));
        }
        Ok(Report { entries })
    }
}

/// 64-bit FNV-1a digest, used to fingerprint input files in reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
