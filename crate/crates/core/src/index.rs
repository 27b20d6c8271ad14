//! Hamming-space retrieval over hashed database codes, plus exhaustive
//! metric retrieval as the baseline.

use std::path::Path;

use rayon::prelude::*;

use crate::code::{hamming_words, words_for, BinaryCode};
use crate::codebook::{CodebookSet, Fingerprint};
use crate::encoder::{hash_batch, hash_trajectory};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::parallel;
use crate::trajectory::{Dataset, Trajectory};
use crate::wire::{Reader, Writer};

const MAGIC: &[u8; 4] = b"TJIX";
pub const FORMAT_VERSION: u16 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub id: String,
    pub category: String,
    pub code: BinaryCode,
}

/// One ranked database item, addressed by its ingestion position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankedItem {
    pub position: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedResult {
    pub query_id: String,
    pub n: usize,
    /// Non-decreasing distance; ties in ingestion order.
    pub items: Vec<RankedItem>,
}

impl RankedResult {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|i| i.position)
    }
}

/// Immutable table of database codes bound to the codebooks that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct HashIndex {
    entries: Vec<IndexEntry>,
    fingerprint: Fingerprint,
    code_length: usize,
}

impl HashIndex {
    pub fn from_entries(entries: Vec<IndexEntry>, fingerprint: Fingerprint, code_length: usize) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|e| e.code.len() != code_length) {
            return Err(Error::Input(format!(
                "entry {} has a {}-bit code, index length is {code_length}",
                bad.id,
                bad.code.len()
            )));
        }
        Ok(Self {
            entries,
            fingerprint,
            code_length,
        })
    }

    pub fn entries(&self) -> &[IndexEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn code_length(&self) -> usize {
        self.code_length
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.fingerprint
    }

    /// Fails unless `cbs` is the codebook set this index was built with.
    pub fn check_codebooks(&self, cbs: &CodebookSet) -> Result<()> {
        let fp = cbs.fingerprint();
        if fp != self.fingerprint {
            return Err(Error::Config(format!(
                "index was built with codebooks {}, but codebooks {} were supplied",
                self.fingerprint, fp
            )));
        }
        Ok(())
    }

    /// The `n` entries closest to `query` in Hamming distance.
    pub fn query_topn(&self, query: &BinaryCode, n: usize) -> Result<RankedResult> {
        self.rank(query, n, String::new())
    }

    pub fn full_ranking(&self, query: &BinaryCode) -> Result<RankedResult> {
        self.rank(query, self.len(), String::new())
    }

    /// Hashes `t` with `cbs` (after checking the fingerprint) and ranks the index.
    pub fn query_trajectory(&self, t: &Trajectory, cbs: &CodebookSet, n: usize) -> Result<RankedResult> {
        self.check_codebooks(cbs)?;
        let code = hash_trajectory(t, cbs)?;
        self.rank(&code, n, t.id().to_string())
    }

    pub(crate) fn rank(&self, query: &BinaryCode, n: usize, query_id: String) -> Result<RankedResult> {
        if query.len() != self.code_length {
            return Err(Error::Input(format!(
                "query code has {} bits, index holds {}-bit codes",
                query.len(),
                self.code_length
            )));
        }
        let take = n.min(self.len());
        let q = query.words();
        let distances: Vec<u32> = self
            .entries
            .iter()
            .map(|e| hamming_words(q, e.code.words()))
            .collect();

        // counting sort on distance keeps ingestion order within each bucket
        let mut starts = vec![0usize; self.code_length + 2];
        for &d in &distances {
            starts[d as usize + 1] += 1;
        }
        for i in 1..starts.len() {
            starts[i] += starts[i - 1];
        }
        let mut order = vec![0usize; distances.len()];
        for (pos, &d) in distances.iter().enumerate() {
            let slot = &mut starts[d as usize];
            order[*slot] = pos;
            *slot += 1;
        }
        let items = order[..take]
            .iter()
            .map(|&position| RankedItem {
                position,
                distance: distances[position] as f64,
            })
            .collect();
        Ok(RankedResult {
            query_id,
            n,
            items,
        })
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut categories: Vec<&str> = Vec::new();
        let mut category_ids = Vec::with_capacity(self.len());
        for e in &self.entries {
            let id = match categories.iter().position(|c| *c == e.category) {
                Some(i) => i,
                None => {
                    categories.push(&e.category);
                    categories.len() - 1
                }
            };
            category_ids.push(id);
        }
        let mut w = Writer::new();
        w.bytes(MAGIC);
        w.u16(FORMAT_VERSION);
        w.len_u32(self.code_length)?;
        w.bytes(&self.fingerprint.0);
        w.len_u32(self.len())?;
        w.len_u32(categories.len())?;
        for c in &categories {
            w.str(c)?;
        }
        for e in &self.entries {
            w.str(&e.id)?;
        }
        for (pos, e) in self.entries.iter().enumerate() {
            w.len_u32(pos)?;
            w.len_u32(category_ids[pos])?;
            for &word in e.code.words() {
                w.u64(word);
            }
        }
        Ok(w.buf)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        r.magic(MAGIC, FORMAT_VERSION)?;
        let code_length = r.u32("code length")? as usize;
        let fingerprint = Fingerprint(r.take(32, "fingerprint")?.try_into().expect("32 bytes"));
        let n = r.u32("entry count")? as usize;
        let n_categories = r.u32("category count")? as usize;
        let mut categories = Vec::with_capacity(n_categories.min(1 << 16));
        for _ in 0..n_categories {
            categories.push(r.str("category label")?);
        }
        let mut ids = Vec::with_capacity(n.min(1 << 20));
        for _ in 0..n {
            ids.push(r.str("trajectory id")?);
        }
        let words = words_for(code_length);
        let mut entries = Vec::with_capacity(ids.len());
        for (pos, id) in ids.into_iter().enumerate() {
            let ordinal = r.u32("record id")? as usize;
            if ordinal != pos {
                return Err(Error::Persistence(format!("record {pos} carries id ordinal {ordinal}")));
            }
            let cat = r.u32("record category")? as usize;
            let category = categories
                .get(cat)
                .ok_or_else(|| Error::Persistence(format!("record {pos} has unknown category {cat}")))?
                .clone();
            let mut packed = Vec::with_capacity(words);
            for _ in 0..words {
                packed.push(r.u64("packed code")?);
            }
            let code = BinaryCode::from_words(packed, code_length)
                .map_err(|e| Error::Persistence(format!("record {pos}: {e}")))?;
            entries.push(IndexEntry { id, category, code });
        }
        r.finish()?;
        Self::from_entries(entries, fingerprint, code_length)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes).map_err(|e| Error::Persistence(format!("{}: {e}", path.display())))
    }
}

/// Hashes every database trajectory; entry order is database order for any worker count.
pub fn build_index(db: &Dataset, cbs: &CodebookSet, workers: usize) -> Result<HashIndex> {
    if db.dim() != cbs.dim {
        return Err(Error::Input(format!(
            "dataset dimension {} does not match codebook dimension {}",
            db.dim(),
            cbs.dim
        )));
    }
    let codes = hash_batch(db.trajectories(), cbs, workers)?;
    let entries = db
        .trajectories()
        .iter()
        .zip(codes)
        .map(|(t, code)| IndexEntry {
            id: t.id().to_string(),
            category: t.category().to_string(),
            code,
        })
        .collect();
    HashIndex::from_entries(entries, cbs.fingerprint(), cbs.code_length())
}

/// Sorts positions by `(distance, position)`.
pub(crate) fn rank_distances(distances: &[f64]) -> Vec<RankedItem> {
    let mut order: Vec<usize> = (0..distances.len()).collect();
    order.sort_by(|&a, &b| distances[a].total_cmp(&distances[b]).then(a.cmp(&b)));
    order
        .into_iter()
        .map(|position| RankedItem {
            position,
            distance: distances[position],
        })
        .collect()
}

/// Exhaustive ranking of the whole database by `metric` distance to `query`.
pub fn brute_force_ranking(db: &Dataset, query: &Trajectory, metric: Metric, workers: usize) -> Result<RankedResult> {
    let distances: Vec<f64> = parallel::run(workers, || {
        db.trajectories()
            .par_iter()
            .map(|t| metric.distance(query.points(), t.points()))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(RankedResult {
        query_id: query.id().to_string(),
        n: db.len(),
        items: rank_distances(&distances),
    })
}
