//! Content-addressed result cache. Entries are written to a temporary file and
//! renamed into place, so readers never observe a partial entry.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub result: Value,
    pub certification: Option<String>,
    pub e_stable: Option<u32>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    outcome: Outcome,
}

pub enum Lookup {
    Hit(Outcome),
    Miss,
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
}

pub fn digest(material: &str) -> String {
    hex::encode(Sha256::digest(material.as_bytes()))
}

impl Cache {
    pub fn new(dir: &Path) -> Cache {
        Cache {
            dir: dir.to_path_buf(),
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Lookup {
        let bytes = match fs::read(self.path(key)) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(e.to_string()),
        };
        match serde_json::from_slice::<Entry>(&bytes) {
            Ok(entry) if entry.key == key => Lookup::Hit(entry.outcome),
            Ok(_) => Lookup::Corrupt("entry belongs to a different key".into()),
            Err(e) => Lookup::Corrupt(e.to_string()),
        }
    }

    pub fn store(&self, key: &str, outcome: &Outcome) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let entry = Entry {
            key: key.to_string(),
            outcome: outcome.clone(),
        };
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(&tmp, self.path(key))
    }
}
