//! `key=value` preset files. Blank lines and lines starting with `#` are
//! skipped; command-line flags win over presets.

use std::collections::BTreeMap;

pub const KEYS: [&str; 7] = ["format", "series", "terms", "term-mode", "tol", "method", "k-range"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Presets {
    values: BTreeMap<String, String>,
}

impl Presets {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(format!("config line {}: unknown key {k:?}", i + 1));
            }
            values.insert(k.to_string(), v.to_string());
        }
        Ok(Presets { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let p = Presets::parse("# defaults\nterms = 128\n\ntol=1e-9\n").unwrap();
        assert_eq!(p.get("terms"), Some("128"));
        assert_eq!(p.get("tol"), Some("1e-9"));
        assert_eq!(p.get("series"), None);
        assert!(Presets::parse("colour=red").is_err());
        assert!(Presets::parse("terms 12").is_err());
    }
}
