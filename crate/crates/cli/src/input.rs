//! Reading fixtures: raw bytes, digests, and typed parsing with a JSON
//! pointer to the offending field on failure.

use std::fs;
use std::io::Read;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_path_to_error::Segment;
use sha2::{Digest, Sha256};
use thiserror::Error;

use schemoid_core::quotient::Caps;

pub const CAPS_VAR: &str = "SCHEMOID_LAB_CAPS";

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{source_name}: {message}")]
    Read {
        source_name: String,
        message: String,
    },
    #[error("{source_name} at {pointer}: {message}")]
    Field {
        source_name: String,
        pointer: String,
        message: String,
    },
    #[error("{0}")]
    Argument(String),
}

impl InputError {
    pub fn field(input: &Input, pointer: impl Into<String>, message: impl ToString) -> Self {
        InputError::Field {
            source_name: input.name.clone(),
            pointer: pointer.into(),
            message: message.to_string(),
        }
    }

    pub fn pointer(&self) -> Option<&str> {
        match self {
            InputError::Field { pointer, .. } => Some(pointer),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Digest256 {
    pub source: String,
    pub sha256: String,
}

/// A fixture read from a path, or from stdin for `-`.
#[derive(Debug, Clone)]
pub struct Input {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Input {
    pub fn read(path: &str) -> Result<Self, InputError> {
        let mut bytes = Vec::new();
        let result = if path == "-" {
            std::io::stdin().read_to_end(&mut bytes).map(|_| ())
        } else {
            fs::read(path).map(|b| bytes = b)
        };
        result.map_err(|e| InputError::Read {
            source_name: path.to_string(),
            message: e.to_string(),
        })?;
        Ok(Input {
            name: path.to_string(),
            bytes,
        })
    }

    pub fn digest(&self) -> Digest256 {
        Digest256 {
            source: self.name.clone(),
            sha256: format!("{:x}", Sha256::digest(&self.bytes)),
        }
    }

    pub fn parse<T: DeserializeOwned>(&self) -> Result<T, InputError> {
        let mut de = serde_json::Deserializer::from_slice(&self.bytes);
        let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let pointer = json_pointer(e.path());
            let inner = e.into_inner();
            InputError::field(self, pointer, inner)
        })?;
        de.end().map_err(|e| InputError::field(self, "", e))?;
        Ok(value)
    }
}

/// Typed view of an already parsed value, for formats that flatten one
/// struct into another (where a direct parse loses the field path).
pub fn from_value<T: DeserializeOwned>(
    input: &Input,
    value: &serde_json::Value,
    prefix: &str,
) -> Result<T, InputError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let pointer = format!("{prefix}{}", json_pointer(e.path()));
        InputError::field(input, pointer, e.into_inner())
    })
}

fn json_pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for segment in path.iter() {
        match segment {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => {
                out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1")))
            }
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

/// Completion caps, overridden by `SCHEMOID_LAB_CAPS=max_rule_length=N,max_pairs=M`
/// (either key may be omitted).
pub fn caps_from_env() -> Result<Caps, InputError> {
    match std::env::var(CAPS_VAR) {
        Ok(spec) => parse_caps(&spec),
        Err(_) => Ok(Caps::default()),
    }
}

pub fn parse_caps(spec: &str) -> Result<Caps, InputError> {
    let mut caps = Caps::default();
    let bad = |why: String| InputError::Argument(format!("{CAPS_VAR}: {why}"));
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| bad(format!("{value:?} is not a count")))?;
        match key.trim() {
            "max_rule_length" => caps.max_rule_length = value,
            "max_pairs" => caps.max_pairs = value,
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    Ok(caps)
}
