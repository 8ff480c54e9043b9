use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Record of one run. Everything except `wall_time_ms` is a function of the
/// arguments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub parameters: Vec<String>,
    pub tool_version: String,
    pub wall_time_ms: u128,
    pub outputs: Vec<OutputDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl RunManifest {
    pub fn new(argv: &[OsString], text: &str, elapsed: Duration) -> Self {
        let args: Vec<String> = argv
            .iter()
            .skip(1)
            .map(|a| a.to_string_lossy().into_owned())
            .collect();
        let split = args
            .iter()
            .position(|a| a.starts_with("--"))
            .unwrap_or(args.len());
        RunManifest {
            subcommand: args[..split].join(" "),
            parameters: args[split..].to_vec(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: elapsed.as_millis(),
            outputs: vec![OutputDigest {
                path: String::new(),
                sha256: sha256_hex(text.as_bytes()),
                bytes: text.len(),
            }],
        }
    }

    pub fn path_for(out: &Path) -> PathBuf {
        let mut name = out.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        out.with_file_name(name)
    }

    pub fn write_next_to(mut self, out: &Path) -> std::io::Result<()> {
        for o in &mut self.outputs {
            o.path = out.display().to_string();
        }
        let json = serde_json::to_string_pretty(&self).map_err(std::io::Error::other)?;
        std::fs::write(Self::path_for(out), json + "\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn splits_subcommand_from_flags() {
        let argv: Vec<OsString> = ["caustics", "primes", "table", "--q0", "3"]
            .iter()
            .map(OsString::from)
            .collect();
        let m = RunManifest::new(&argv, "x\n", Duration::from_millis(3));
        assert_eq!(m.subcommand, "primes table");
        assert_eq!(m.parameters, ["--q0", "3"]);
        assert_eq!(m.outputs[0].bytes, 2);
        assert_eq!(
            RunManifest::path_for(Path::new("/tmp/a.tsv")),
            Path::new("/tmp/a.tsv.manifest.json")
        );
    }
}
