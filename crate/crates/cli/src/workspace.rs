use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

/// Bumped whenever the layout of cached outcomes or command output changes.
pub const SCHEMA_VERSION: u32 = 1;

/// The result of one command: exit code plus what it printed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema: u32,
    key: String,
    outcome: Outcome,
}

/// An on-disk cache of outcomes keyed by operation and canonical arguments.
#[derive(Clone, Debug)]
pub struct Workspace {
    root: PathBuf,
}

impl Workspace {
    pub fn open(root: &Path) -> io::Result<Self> {
        fs::create_dir_all(root.join("cache"))?;
        Ok(Workspace { root: root.to_path_buf() })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path(&self, key: &str) -> PathBuf {
        let stem: String = key
            .chars()
            .map(|c| match c {
                'a'..='z' | 'A'..='Z' | '0'..='9' | '-' | '.' => c,
                '/' => '-',
                _ => '_',
            })
            .collect();
        self.root.join("cache").join(format!("{stem}.json"))
    }

    /// A stored outcome, or `None` if absent, unreadable or from another schema.
    pub fn get(&self, key: &str) -> Option<Outcome> {
        let bytes = fs::read(self.path(key)).ok()?;
        let entry: Entry = serde_json::from_slice(&bytes).ok()?;
        (entry.schema == SCHEMA_VERSION && entry.key == key).then_some(entry.outcome)
    }

    pub fn put(&self, key: &str, outcome: &Outcome) -> io::Result<()> {
        let entry = Entry { schema: SCHEMA_VERSION, key: key.to_string(), outcome: outcome.clone() };
        let bytes = serde_json::to_vec(&entry).map_err(io::Error::other)?;
        write_atomic(&self.path(key), &bytes)
    }
}

/// Writes through a temporary file in the target directory, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
