//! Identifier minting for units and derived resources.

use alloc::format;
use alloc::string::String;

use sha2::{Digest, Sha256};

use crate::term::Iri;

/// Source of fresh unit identifiers.
///
/// `canonical` is a canonical byte rendering of what is being minted; a
/// content-addressed minter hashes it, a random minter ignores it.
pub trait IdMinter {
    fn mint(&mut self, canonical: &[u8]) -> Iri;
}

/// Mints `urn:su:{sha256(canonical)}`. Equal content yields equal identifiers.
#[derive(Debug, Clone, Copy, Default)]
pub struct ContentHashMinter;

impl IdMinter for ContentHashMinter {
    fn mint(&mut self, canonical: &[u8]) -> Iri {
        Iri::new(format!("urn:su:{}", sha256_hex(canonical))).expect("hex IRI is valid")
    }
}

/// Mints `{prefix}{n}` with an incrementing counter.
#[derive(Debug, Clone)]
pub struct SequentialMinter {
    prefix: String,
    next: u64,
}

impl SequentialMinter {
    pub fn new(prefix: impl Into<String>) -> Self {
        Self { prefix: prefix.into(), next: 0 }
    }
}

impl IdMinter for SequentialMinter {
    fn mint(&mut self, _canonical: &[u8]) -> Iri {
        let iri = Iri::new(format!("{}{}", self.prefix, self.next)).expect("prefix must be an absolute IRI");
        self.next += 1;
        iri
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Identifier that depends only on its inputs, whatever minter is active.
/// Used for derived resources and for units computed on read paths.
pub fn derived_iri(namespace: &str, parts: &[&str]) -> Iri {
    let mut hasher = Sha256::new();
    for part in parts {
        hasher.update((part.len() as u64).to_le_bytes());
        hasher.update(part.as_bytes());
    }
    let digest = hex::encode(hasher.finalize());
    Iri::new(format!("urn:su:{namespace}:{digest}")).expect("hex IRI is valid")
}
