//! Artifact cache: emitted text keyed by command parameters and crate
//! version, checksummed, written with atomic rename. A hit replays the
//! stored bytes, so cache hit and miss produce identical artifacts.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> std::io::Result<Self> {
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    fn path(&self, key: &str) -> PathBuf {
        let safe: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
            .collect();
        self.dir.join(format!("{safe}.cache"))
    }

    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let (checksum, payload) = text.split_once('\n')?;
        let expected = checksum.strip_prefix("fnv1a:")?;
        if format!("{:016x}", fnv1a(payload.as_bytes())) == expected {
            Some(payload.to_string())
        } else {
            None
        }
    }

    pub fn put(&self, key: &str, payload: &str) -> std::io::Result<()> {
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "fnv1a:{:016x}", fnv1a(payload.as_bytes()))?;
            f.write_all(payload.as_bytes())?;
        }
        fs::rename(&tmp, &path)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}
