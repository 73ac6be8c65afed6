//! Snapshot files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! u8   version
//! u64  meta length, then: u8 kind, u32 f, u64 max_t (0 = default)
//! u64  data length, then the raw input:
//!        array:  u64 N, u64 sigma, N x u32 colors, sigma x u64 priorities
//!        corpus: u64 s, s x u64 ranks, s x (u64 length, bytes)
//! u32  crc32 of everything above
//! ```
//!
//! The index itself is not stored; loading rebuilds it from the raw input.

use std::fmt;
use std::path::Path;

use topk_core::docs::{DocOptions, DocumentCollection, DocumentIndex};
use topk_core::{BuildOptions, ChunkedTopK, ColorArray, OptimalTopK, SpaceUsage, SparseTopK, TopKIndex, WaveletTopK};

use crate::error::{CliError, Result};

pub const VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Wavelet,
    Sparse,
    Optimal,
    Chunked,
    Docindex,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Wavelet => "wavelet",
            Kind::Sparse => "sparse",
            Kind::Optimal => "optimal",
            Kind::Chunked => "chunked",
            Kind::Docindex => "docindex",
        }
    }

    fn tag(self) -> u8 {
        self as u8
    }

    fn from_tag(t: u8) -> Option<Self> {
        [Kind::Wavelet, Kind::Sparse, Kind::Optimal, Kind::Chunked, Kind::Docindex]
            .into_iter()
            .find(|k| k.tag() == t)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Raw input of an index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Array(ColorArray),
    Corpus(DocumentCollection),
}

/// Build parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    /// Sparsification factor of the sparse kind.
    pub f: u32,
    /// Largest supported t of the document index; 0 picks the default.
    pub max_t: u64,
}

impl Default for Params {
    fn default() -> Self {
        Self { f: 2, max_t: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub kind: Kind,
    pub params: Params,
    pub payload: Payload,
}

/// Object-safe view of the range indexes.
pub trait RangeIndex: TopKIndex + SpaceUsage + Send + Sync {}

impl<T: TopKIndex + SpaceUsage + Send + Sync> RangeIndex for T {}

pub enum Engine {
    Range(Box<dyn RangeIndex>),
    Docs(Box<DocumentIndex>),
}

impl Engine {
    pub fn space_bits(&self) -> u64 {
        match self {
            Engine::Range(ix) => ix.space_bits(),
            Engine::Docs(ix) => ix.space_bits(),
        }
    }
}

impl Snapshot {
    pub fn new(kind: Kind, params: Params, payload: Payload) -> Result<Self> {
        match (kind, &payload) {
            (Kind::Docindex, Payload::Corpus(_)) => {}
            (Kind::Docindex, Payload::Array(_)) | (_, Payload::Corpus(_)) => {
                return Err(CliError::Usage(format!("kind {kind} does not match the input")))
            }
            _ => {}
        }
        if kind == Kind::Sparse && params.f < 2 {
            return Err(topk_core::Error::BadParameter("f must be at least 2").into());
        }
        Ok(Self { kind, params, payload })
    }

    /// Number of indexed elements.
    pub fn len(&self) -> usize {
        match &self.payload {
            Payload::Array(a) => a.len(),
            Payload::Corpus(c) => c.total_len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of colors, documents for a corpus.
    pub fn sigma(&self) -> usize {
        match &self.payload {
            Payload::Array(a) => a.sigma(),
            Payload::Corpus(c) => c.len(),
        }
    }

    pub fn build(&self, opts: &BuildOptions) -> Result<Engine> {
        Ok(match &self.payload {
            Payload::Array(a) => Engine::Range(match self.kind {
                Kind::Wavelet => Box::new(WaveletTopK::new(a)),
                Kind::Sparse => Box::new(SparseTopK::new(a, self.params.f as usize)?),
                Kind::Optimal => Box::new(OptimalTopK::with_options(a, opts)?),
                Kind::Chunked => Box::new(ChunkedTopK::with_options(a, opts)?),
                Kind::Docindex => unreachable!("checked on construction"),
            }),
            Payload::Corpus(c) => {
                let doc_opts = DocOptions {
                    max_t: (self.params.max_t > 0).then_some(self.params.max_t as usize),
                    build: *opts,
                };
                Engine::Docs(Box::new(DocumentIndex::with_options(c.clone(), &doc_opts)?))
            }
        })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut meta = vec![self.kind.tag()];
        meta.extend_from_slice(&self.params.f.to_le_bytes());
        meta.extend_from_slice(&self.params.max_t.to_le_bytes());

        let mut data = Vec::new();
        match &self.payload {
            Payload::Array(a) => {
                data.extend_from_slice(&(a.len() as u64).to_le_bytes());
                data.extend_from_slice(&(a.sigma() as u64).to_le_bytes());
                for c in a.colors() {
                    data.extend_from_slice(&c.to_le_bytes());
                }
                for p in a.priorities() {
                    data.extend_from_slice(&p.to_le_bytes());
                }
            }
            Payload::Corpus(c) => {
                data.extend_from_slice(&(c.len() as u64).to_le_bytes());
                for r in c.ranks() {
                    data.extend_from_slice(&r.to_le_bytes());
                }
                for d in c.docs() {
                    data.extend_from_slice(&(d.len() as u64).to_le_bytes());
                    data.extend_from_slice(d);
                }
            }
        }

        let mut out = vec![VERSION];
        for section in [&meta, &data] {
            out.extend_from_slice(&(section.len() as u64).to_le_bytes());
            out.extend_from_slice(section);
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let corrupt = CliError::SnapshotCorrupt;
        if bytes.len() < 5 {
            return Err(corrupt("file too short"));
        }
        let (body, crc) = bytes.split_at(bytes.len() - 4);
        if crc32fast::hash(body) != u32::from_le_bytes(crc.try_into().unwrap()) {
            return Err(corrupt("checksum mismatch"));
        }
        let mut r = Reader(body);
        if r.u8()? != VERSION {
            return Err(corrupt("unsupported version"));
        }
        let mut meta = Reader(r.section()?);
        let kind = Kind::from_tag(meta.u8()?).ok_or(corrupt("unknown kind"))?;
        let params = Params {
            f: meta.u32()?,
            max_t: meta.u64()?,
        };
        meta.finish()?;

        let mut data = Reader(r.section()?);
        r.finish()?;
        let payload = if kind == Kind::Docindex {
            let s = data.len_field()?;
            let ranks = (0..s).map(|_| data.u64()).collect::<Result<Vec<_>>>()?;
            let docs = (0..s)
                .map(|_| {
                    let len = data.len_field()?;
                    Ok(data.take(len)?.to_vec())
                })
                .collect::<Result<Vec<_>>>()?;
            Payload::Corpus(DocumentCollection::new(docs, ranks).map_err(|_| corrupt("invalid corpus"))?)
        } else {
            let n = data.len_field()?;
            let sigma = data.len_field()?;
            let colors = (0..n).map(|_| data.u32()).collect::<Result<Vec<_>>>()?;
            let prios = (0..sigma).map(|_| data.u64()).collect::<Result<Vec<_>>>()?;
            Payload::Array(ColorArray::from_priorities(colors, prios).map_err(|_| corrupt("invalid array"))?)
        };
        data.finish()?;
        Snapshot::new(kind, params, payload).map_err(|_| corrupt("invalid parameters"))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_bytes())?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_bytes(&std::fs::read(path)?)
    }
}

struct Reader<'a>(&'a [u8]);

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if n > self.0.len() {
            return Err(CliError::SnapshotCorrupt("truncated section"));
        }
        let (head, tail) = self.0.split_at(n);
        self.0 = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// A length that must fit in the remaining bytes.
    fn len_field(&mut self) -> Result<usize> {
        let v = self.u64()?;
        if v > self.0.len() as u64 {
            return Err(CliError::SnapshotCorrupt("length exceeds section"));
        }
        Ok(v as usize)
    }

    fn section(&mut self) -> Result<&'a [u8]> {
        let n = self.len_field()?;
        self.take(n)
    }

    fn finish(&self) -> Result<()> {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(CliError::SnapshotCorrupt("trailing bytes"))
        }
    }
}
