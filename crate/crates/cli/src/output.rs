//! Run manifests and crash-safe file output.

use std::io::Write;
use std::path::Path;
use std::time::Duration;

use serde_json::{json, Value};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const REPORT_SCHEMA: u32 = 1;

/// Provenance written at the top of every output file.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: &'static str,
    pub channel: String,
    pub channel_config: Value,
    pub config: Value,
    /// Flags that reproduce the run, in canonical order.
    pub args: String,
    pub seed: u64,
    pub duration: Duration,
}

impl RunManifest {
    /// `#`-prefixed header lines; the duration comes last.
    pub fn header(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("# cqregion {} {}\n", ARTIFACT_VERSION, self.command));
        s.push_str(&format!("# channel: {}\n", self.channel));
        s.push_str(&format!("# channel_config: {}\n", self.channel_config));
        s.push_str(&format!("# config: {}\n", self.config));
        s.push_str(&format!("# seed: {}\n", self.seed));
        s.push_str(&format!("# args: {} {}\n", self.command, self.args));
        s.push_str(&format!("# duration_s: {:.3}\n", self.duration.as_secs_f64()));
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "version": ARTIFACT_VERSION,
            "channel": self.channel,
            "channel_config": self.channel_config,
            "config": self.config,
            "seed": self.seed,
            "args": format!("{} {}", self.command, self.args),
            "duration_s": self.duration.as_secs_f64(),
        })
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Drops the manifest lines of a CSV file.
pub fn csv_body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "a\n").unwrap();
        write_atomic(&path, "b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn atomic_write_to_missing_dir_fails_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nope").join("out.csv");
        assert!(write_atomic(&path, "a").is_err());
        assert!(!path.exists());
    }

    #[test]
    fn header_lines_are_comments() {
        let m = RunManifest {
            command: "curve",
            channel: "identity(2)".into(),
            channel_config: json!({"kind": "identity", "dim": 2}),
            config: json!({"restarts": 1}),
            args: "--seed 0".into(),
            seed: 0,
            duration: Duration::from_millis(1500),
        };
        let h = m.header();
        assert!(h.lines().all(|l| l.starts_with("# ")));
        assert!(h.ends_with("# duration_s: 1.500\n"));
        assert_eq!(csv_body(&format!("{h}x,y\n1,2\n")), "x,y\n1,2\n");
    }
}
