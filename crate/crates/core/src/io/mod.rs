//! File formats, canonical serialization and content digests.
//!
//! Every format is JSON with a `format` field naming it. Writers sort all
//! lists and use ordered maps, so equal values serialize to identical bytes.

mod bundle;
mod category;
mod quiver;
mod two;

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::cat::FinCategory;
use crate::error::{Error, Result};

pub use bundle::{
    Bundle, BundleFile, CategorySource, ContextEntry, FunctorEntry, PresentationEntry, TransformationEntry,
};
pub use category::{CategoryFile, MorphismEntry, Provenance};
pub use quiver::{builtin_quiver, QuiverFile, BUILTIN_QUIVERS};
pub use two::{FunctorMaps, TwoCategoryFile, TwoCategorySource, TwoFunctorFile};

/// Pretty-printed JSON with a trailing newline.
pub fn canonical_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("file formats always serialize");
    s.push('\n');
    s
}

/// `sha256:<hex>` of some bytes.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Digest of the canonical serialization.
pub fn digest_of<T: Serialize>(v: &T) -> String {
    digest(canonical_json(v).as_bytes())
}

pub fn category_digest(c: &FinCategory) -> String {
    digest_of(&CategoryFile::from_category(c))
}

pub fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

/// The `format` field of a JSON document.
pub fn detect_format(text: &str, what: &str) -> Result<String> {
    let v: serde_json::Value = parse_json(text, what)?;
    v.get("format")
        .and_then(|f| f.as_str())
        .map(str::to_owned)
        .ok_or_else(|| Error::Parse(format!("{what}: missing format field")))
}

/// Reads a category file, checking its digest when one is expected.
pub fn load_category_file(path: &Path, expect_digest: Option<&str>) -> Result<(CategoryFile, FinCategory)> {
    let what = path.display().to_string();
    let mut file: CategoryFile = parse_json(&read_text(path)?, &what)?;
    file.canonicalize();
    if let Some(want) = expect_digest {
        let got = digest_of(&file);
        if got != want {
            return Err(Error::Input(format!("{what}: digest {got} does not match {want}")));
        }
    }
    let c = file.to_category()?;
    Ok((file, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_format() {
        let d = digest(b"");
        assert_eq!(
            d,
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_json::<CategoryFile>("{\n  \"name\": 3\n}", "x.json").unwrap_err();
        let Error::Parse(msg) = err else { panic!() };
        assert!(msg.contains("line 2"), "{msg}");
    }
}
