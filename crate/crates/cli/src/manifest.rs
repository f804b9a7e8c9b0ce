use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use outdiv::{Error, Result};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

fn hex(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        let _ = write!(s, "{b:02x}");
    }
    s
}

/// Git-style blob hash (`blob <len>\0<content>`), with SHA-256.
pub fn blob_hash(content: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", content.len()).as_bytes());
    h.update(content);
    hex(&h.finalize())
}

/// Files a command produced, written under one directory with a manifest.
#[derive(Debug, Default)]
pub struct Outputs {
    files: Vec<(String, Vec<u8>)>,
    inputs: Vec<PathBuf>,
}

impl Outputs {
    pub fn file(&mut self, name: impl Into<String>, content: impl Into<Vec<u8>>) {
        self.files.push((name.into(), content.into()));
    }

    pub fn input(&mut self, path: &Path) {
        self.inputs.push(path.to_path_buf());
    }

    /// Writes every file and `manifest.json` under `dir`, or prints a lone
    /// file to stdout when no directory is given.
    pub fn emit(self, dir: Option<&Path>, command: &str, argv: &[String]) -> Result<()> {
        let Some(dir) = dir else {
            return match self.files.as_slice() {
                [(_, content)] => {
                    use std::io::Write;
                    std::io::stdout().write_all(content)?;
                    Ok(())
                }
                _ => Err(Error::Argument(format!("{command} writes several files; pass --out <dir>"))),
            };
        };
        let mut inputs = Vec::new();
        let mut combined = Sha256::new();
        combined.update(command.as_bytes());
        for a in argv {
            combined.update([0]);
            combined.update(a.as_bytes());
        }
        for path in &self.inputs {
            let hash = blob_hash(&std::fs::read(path)?);
            combined.update(hash.as_bytes());
            inputs.push(json!({ "path": path.display().to_string(), "sha256": hash }));
        }
        let mut outputs = Vec::new();
        for (name, content) in &self.files {
            let path = dir.join(name);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, content)?;
            outputs.push(json!({ "path": name, "bytes": content.len(), "sha256": blob_hash(content) }));
        }
        let manifest: Value = json!({
            "tool": "outdiv",
            "version": env!("CARGO_PKG_VERSION"),
            "command": command,
            "argv": argv,
            "inputs": inputs,
            "input_hash": hex(&combined.finalize()),
            "outputs": outputs,
        });
        let text = serde_json::to_string_pretty(&manifest).expect("manifest is valid JSON");
        std::fs::write(dir.join("manifest.json"), text + "\n")?;
        Ok(())
    }
}
