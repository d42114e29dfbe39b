//! JSON file formats.
//!
//! * family: `{"n": 3, "maximal": [[0, 1], [2]]}` or `{"spec": {"kind": …}}`
//! * certificate: `{"delta": "2/5", "primal": {"0": "1/5", …}, "dual": {"0": "1/5", …}}`
//! * vector: `{"coords": ["1/2", "-3/1"]}`
//! * interval system: `{"n": 2, "sets": [[["0/1", "1/2"]], [["1/4", "1/1"]]]}`
//!
//! Rationals are written as reduced `p/q` strings. Files written by this
//! crate may carry an extra `"provenance"` object, which readers ignore.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use ptak_core::{
    ConvexMean, FamilySpec, FamilyVector, FractionalCover, GameValueResult, HereditaryFamily, IntervalSet,
    IntervalSystem, Rational,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: field `{field}`: {message}")]
    Field { path: String, field: String, message: String },
}

/// A file's bytes together with their SHA-256 digest.
pub struct Loaded<T> {
    pub value: T,
    pub sha256: String,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<(T, String), FormatError> {
    let p = path.display().to_string();
    let bytes = fs::read(path).map_err(|source| FormatError::Io { path: p.clone(), source })?;
    let value = serde_json::from_slice(&bytes).map_err(|source| FormatError::Json { path: p, source })?;
    Ok((value, hex::encode(Sha256::digest(&bytes))))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn field_err(path: &Path, field: &str, message: impl ToString) -> FormatError {
    FormatError::Field { path: path.display().to_string(), field: field.to_string(), message: message.to_string() }
}

fn parse_rational(path: &Path, field: &str, s: &str) -> Result<Rational, FormatError> {
    s.parse().map_err(|e| field_err(path, field, e))
}

/// Where a generated file came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecFile {
    Explicit { n: usize, sets: Vec<Vec<usize>> },
    CardinalityBound { n: usize, k: usize },
    GraphCliques { n: usize, edges: Vec<(usize, usize)> },
    GraphIndependent { n: usize, edges: Vec<(usize, usize)> },
    IntervalTrace { system: SystemFile },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maximal: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecFile>,
}

impl FamilyFile {
    /// The canonical explicit form of `fam`.
    pub fn explicit(fam: &HereditaryFamily, provenance: Option<Provenance>) -> Self {
        FamilyFile {
            provenance,
            n: Some(fam.n()),
            maximal: Some(fam.maximal().iter().map(|m| m.to_vec()).collect()),
            spec: None,
        }
    }

    pub fn to_family(&self, path: &Path) -> Result<HereditaryFamily, FormatError> {
        match (&self.spec, self.n, &self.maximal) {
            (Some(spec), None, None) => {
                let spec = spec.to_spec(path, "spec")?;
                spec.realize().map_err(|e| field_err(path, "spec", e))
            }
            (None, Some(n), Some(maximal)) => {
                HereditaryFamily::from_label_sets(n, maximal).map_err(|e| field_err(path, "maximal", e))
            }
            _ => Err(field_err(path, "n", "expected either `n` with `maximal`, or `spec` alone")),
        }
    }
}

impl SpecFile {
    pub fn to_spec(&self, path: &Path, field: &str) -> Result<FamilySpec, FormatError> {
        Ok(match self {
            SpecFile::Explicit { n, sets } => FamilySpec::Explicit { n: *n, sets: sets.clone() },
            SpecFile::CardinalityBound { n, k } => FamilySpec::CardinalityBound { n: *n, k: *k },
            SpecFile::GraphCliques { n, edges } => FamilySpec::GraphCliques { n: *n, edges: edges.clone() },
            SpecFile::GraphIndependent { n, edges } => FamilySpec::GraphIndependent { n: *n, edges: edges.clone() },
            SpecFile::IntervalTrace { system } => {
                FamilySpec::IntervalTrace(system.to_system(path, &format!("{field}.system"))?)
            }
        })
    }
}

pub fn read_family(path: &Path) -> Result<Loaded<HereditaryFamily>, FormatError> {
    let (file, sha256): (FamilyFile, _) = read_json(path)?;
    Ok(Loaded { value: file.to_family(path)?, sha256 })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub delta: String,
    pub primal: BTreeMap<usize, String>,
    pub dual: BTreeMap<usize, String>,
}

impl CertificateFile {
    /// Only non-zero weights are written.
    pub fn from_result(res: &GameValueResult) -> Self {
        let sparse = |w: &[Rational]| {
            w.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, v)| (i, v.to_string())).collect()
        };
        CertificateFile {
            delta: res.delta.to_string(),
            primal: sparse(res.primal.weights()),
            dual: sparse(res.dual.weights()),
        }
    }

    /// Densifies against `fam`; an index outside the family is a format error.
    pub fn to_result(&self, fam: &HereditaryFamily, path: &Path) -> Result<GameValueResult, FormatError> {
        let dense = |map: &BTreeMap<usize, String>, len: usize, field: &str| {
            let mut out = vec![Rational::zero(); len];
            for (&i, v) in map {
                if i >= len {
                    return Err(field_err(path, field, format!("index {i} out of range (size {len})")));
                }
                out[i] = parse_rational(path, &format!("{field}.{i}"), v)?;
            }
            Ok(out)
        };
        Ok(GameValueResult {
            delta: parse_rational(path, "delta", &self.delta)?,
            primal: ConvexMean::from_raw(dense(&self.primal, fam.n(), "primal")?),
            dual: FractionalCover::from_raw(dense(&self.dual, fam.maximal().len(), "dual")?),
            pivots: 0,
        })
    }
}

pub fn read_certificate(path: &Path) -> Result<Loaded<CertificateFile>, FormatError> {
    let (value, sha256) = read_json(path)?;
    Ok(Loaded { value, sha256 })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub coords: Vec<String>,
}

impl VectorFile {
    pub fn from_vector(x: &FamilyVector) -> Self {
        VectorFile { provenance: None, coords: x.coords().iter().map(Rational::to_string).collect() }
    }
}

pub fn read_vector(path: &Path) -> Result<Loaded<FamilyVector>, FormatError> {
    let (file, sha256): (VectorFile, _) = read_json(path)?;
    let coords = file
        .coords
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational(path, &format!("coords[{i}]"), c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Loaded { value: FamilyVector::new(coords), sha256 })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    pub n: usize,
    pub sets: Vec<Vec<(String, String)>>,
}

impl SystemFile {
    pub fn from_system(sys: &IntervalSystem, provenance: Option<Provenance>) -> Self {
        SystemFile {
            provenance,
            n: sys.n(),
            sets: sys
                .sets()
                .iter()
                .map(|c| c.pieces().iter().map(|(a, b)| (a.to_string(), b.to_string())).collect())
                .collect(),
        }
    }

    /// Pieces are canonicalised (sorted, touching pieces merged).
    pub fn to_system(&self, path: &Path, field: &str) -> Result<IntervalSystem, FormatError> {
        if self.n != self.sets.len() {
            return Err(field_err(path, &format!("{field}.n"), format!("n = {} but {} sets given", self.n, self.sets.len())));
        }
        let mut sets = Vec::with_capacity(self.n);
        for (s, pieces) in self.sets.iter().enumerate() {
            let f = format!("{field}.sets[{s}]");
            let pieces = pieces
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    Ok((parse_rational(path, &format!("{f}[{i}][0]"), a)?, parse_rational(path, &format!("{f}[{i}][1]"), b)?))
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            sets.push(IntervalSet::canonicalize(pieces).map_err(|e| field_err(path, &f, e))?);
        }
        IntervalSystem::new(sets).map_err(|e| field_err(path, field, e))
    }
}

pub fn read_system(path: &Path) -> Result<Loaded<IntervalSystem>, FormatError> {
    let (file, sha256): (SystemFile, _) = read_json(path)?;
    Ok(Loaded { value: file.to_system(path, "$")?, sha256 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn explicit_family_is_canonicalised() {
        let f = write_tmp(r#"{"n": 3, "maximal": [[1], [1, 0], [2, 1, 0]]}"#);
        let fam = read_family(f.path()).unwrap().value;
        assert_eq!(fam.maximal().len(), 1);
        assert!(fam.is_full_powerset());
    }

    #[test]
    fn spec_families() {
        let f = write_tmp(r#"{"spec": {"kind": "cardinality_bound", "n": 6, "k": 3}}"#);
        assert_eq!(read_family(f.path()).unwrap().value.maximal().len(), 20);
        let f = write_tmp(r#"{"spec": {"kind": "graph_cliques", "n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]}}"#);
        assert_eq!(read_family(f.path()).unwrap().value.maximal().len(), 5);
        let f = write_tmp(
            r#"{"spec": {"kind": "interval_trace", "system": {"n": 2, "sets": [[["0", "1/2"]], [["1/2", "1"]]]}}}"#,
        );
        assert!(read_family(f.path()).unwrap().value.is_full_powerset());
    }

    #[test]
    fn diagnostics_name_the_field() {
        let f = write_tmp(r#"{"n": 3, "maximal": [[0, 7]]}"#);
        let e = read_family(f.path()).err().unwrap().to_string();
        assert!(e.contains("`maximal`") && e.contains("label 7"), "{e}");
        let f = write_tmp("{\"n\": 3,\n \"maximal\": [[0, 1],]}");
        let e = read_family(f.path()).err().unwrap().to_string();
        assert!(e.contains("line 2"), "{e}");
        let f = write_tmp(r#"{"n": 1, "sets": [[["1/2", "x"]]]}"#);
        let e = read_system(f.path()).err().unwrap().to_string();
        assert!(e.contains("$.sets[0][0][1]"), "{e}");
        let f = write_tmp(r#"{"n": 2, "sets": [[["0", "1"]]]}"#);
        assert!(read_system(f.path()).is_err());
        let f = write_tmp(r#"{"n": 2}"#);
        assert!(read_family(f.path()).is_err());
    }

    #[test]
    fn certificate_round_trip() {
        let fam = FamilySpec::GraphCliques { n: 5, edges: FamilySpec::cycle_edges(5) }.realize().unwrap();
        let res = ptak_core::delta_exact(&fam);
        let text = to_json_string(&CertificateFile::from_result(&res));
        assert!(text.contains("\"delta\": \"2/5\""), "{text}");
        let f = write_tmp(&text);
        let back = read_certificate(f.path()).unwrap().value.to_result(&fam, f.path()).unwrap();
        assert_eq!(back.delta, res.delta);
        assert_eq!(back.primal, res.primal);
        assert_eq!(back.dual, res.dual);
    }

    #[test]
    fn certificate_index_out_of_range() {
        let fam = HereditaryFamily::from_label_sets(2, &[vec![0], vec![1]]).unwrap();
        let f = write_tmp(r#"{"delta": "1/2", "primal": {"0": "1/2", "5": "1/2"}, "dual": {"0": "1/2", "1": "1/2"}}"#);
        let cert = read_certificate(f.path()).unwrap().value;
        assert!(cert.to_result(&fam, f.path()).is_err());
    }

    #[test]
    fn vector_and_digest() {
        let f = write_tmp(r#"{"coords": ["1/2", "-3", "0.25"]}"#);
        let loaded = read_vector(f.path()).unwrap();
        assert_eq!(loaded.value.coords(), &[Rational::new(1, 2), Rational::from_integer(-3), Rational::new(1, 4)]);
        assert_eq!(loaded.sha256.len(), 64);
    }
}
