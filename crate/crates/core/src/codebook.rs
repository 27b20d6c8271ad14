//! Prototype codebooks: the data-dependent hash function.
//!
//! A [`CodebookSet`] holds `M` independent codebooks. Each codebook is built
//! by drawing `ψ = 2^ω` distinct reference trajectories from the database and
//! keeping a random subset of at most `k` points from each one. Construction
//! is a single pass of random sampling with no iterative refinement.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::seed::{self, DOMAIN_CODEBOOK};
use crate::trajectory::{Dataset, Points, Trajectory};
use crate::wire::{Reader, Writer};

/// Largest supported bits-per-quantizer.
pub const MAX_OMEGA: u32 = 24;

const MAGIC: &[u8; 4] = b"TJCB";
/// Version of the codebook persistence format written by this crate.
pub const FORMAT_VERSION: u16 = 1;

/// Unordered point subset of one reference trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Prototype {
    pub points: Points,
    pub source_id: String,
}

/// `ψ` prototypes in draw order; index `j` (0-based here) is the code value.
#[derive(Debug, Clone, PartialEq)]
pub struct Codebook {
    pub prototypes: Vec<Prototype>,
    /// 1-based quantizer position `m`.
    pub quantizer_index: usize,
}

impl Codebook {
    pub fn len(&self) -> usize {
        self.prototypes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prototypes.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookParams {
    /// Number of quantizers `M`.
    pub quantizers: usize,
    /// Bits per quantizer `ω`; codebook size is `2^ω`.
    pub omega: u32,
    /// Maximum points per prototype.
    pub k: usize,
    pub metric: Metric,
    pub seed: u64,
}

impl CodebookParams {
    pub fn new(quantizers: usize, omega: u32, k: usize, metric: Metric, seed: u64) -> Self {
        Self {
            quantizers,
            omega,
            k,
            metric,
            seed,
        }
    }

    /// Resolves `M` from a total code length `L` that `ω` must divide.
    pub fn from_code_length(
        code_length: usize,
        omega: u32,
        k: usize,
        metric: Metric,
        seed: u64,
    ) -> Result<Self> {
        if omega == 0 || code_length == 0 || !code_length.is_multiple_of(omega as usize) {
            return Err(Error::Config(format!(
                "code length L={code_length} is not a positive multiple of omega={omega}"
            )));
        }
        Ok(Self::new(code_length / omega as usize, omega, k, metric, seed))
    }

    pub fn codebook_size(&self) -> usize {
        1usize << self.omega
    }

    pub fn code_length(&self) -> usize {
        self.quantizers * self.omega as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.quantizers == 0 {
            return Err(Error::Config("number of quantizers M must be at least 1".into()));
        }
        if self.omega == 0 || self.omega > MAX_OMEGA {
            return Err(Error::Config(format!(
                "omega={} outside supported range 1..={MAX_OMEGA}",
                self.omega
            )));
        }
        if self.k == 0 {
            return Err(Error::Config("prototype size k must be at least 1".into()));
        }
        Ok(())
    }
}

/// The complete hash function: `M` codebooks plus the parameters that built them.
#[derive(Debug, Clone, PartialEq)]
pub struct CodebookSet {
    pub codebooks: Vec<Codebook>,
    pub params: CodebookParams,
    pub dim: usize,
}

impl CodebookSet {
    pub fn code_length(&self) -> usize {
        self.params.code_length()
    }

    pub fn omega(&self) -> u32 {
        self.params.omega
    }

    pub fn metric(&self) -> Metric {
        self.params.metric
    }

    /// Same codebooks, quantized under a different metric.
    pub fn with_metric(&self, metric: Metric) -> Self {
        let mut out = self.clone();
        out.params.metric = metric;
        out
    }

    /// SHA-256 of the persisted encoding; binds an index to these codebooks.
    pub fn fingerprint(&self) -> Fingerprint {
        let bytes = self.to_bytes().expect("a built codebook set always serializes");
        Fingerprint(Sha256::digest(&bytes).into())
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = Writer::new();
        w.bytes(MAGIC);
        w.u16(FORMAT_VERSION);
        w.len_u32(self.params.quantizers)?;
        w.u32(self.params.omega);
        w.len_u32(self.params.k)?;
        w.u8(self.params.metric.id());
        w.u64(self.params.seed);
        w.len_u32(self.dim)?;
        for cb in &self.codebooks {
            w.len_u32(cb.quantizer_index)?;
            w.len_u32(cb.prototypes.len())?;
            for proto in &cb.prototypes {
                w.str(&proto.source_id)?;
                w.len_u32(proto.points.len())?;
                for &c in proto.points.coords() {
                    w.f64(c);
                }
            }
        }
        Ok(w.buf)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let mut r = Reader::new(bytes);
        r.magic(MAGIC, FORMAT_VERSION)?;
        let quantizers = r.u32("quantizer count")? as usize;
        let omega = r.u32("omega")?;
        let k = r.u32("k")? as usize;
        let metric_id = r.u8("metric id")?;
        let metric = Metric::from_id(metric_id)
            .ok_or_else(|| Error::Persistence(format!("unknown metric id {metric_id}")))?;
        let seed = r.u64("seed")?;
        let dim = r.u32("dimension")? as usize;
        let params = CodebookParams::new(quantizers, omega, k, metric, seed);
        params
            .validate()
            .map_err(|e| Error::Persistence(format!("bad parameter block: {e}")))?;
        if dim == 0 {
            return Err(Error::Persistence("dimension is zero".into()));
        }
        let psi = params.codebook_size();

        let mut codebooks = Vec::with_capacity(quantizers.min(1 << 16));
        for m in 0..quantizers {
            let quantizer_index = r.u32("quantizer index")? as usize;
            if quantizer_index != m + 1 {
                return Err(Error::Persistence(format!(
                    "codebook {} carries quantizer index {quantizer_index}",
                    m + 1
                )));
            }
            let count = r.u32("codebook size")? as usize;
            if count != psi {
                return Err(Error::Persistence(format!(
                    "codebook {quantizer_index} holds {count} prototypes, expected {psi}"
                )));
            }
            let mut prototypes = Vec::with_capacity(psi);
            for _ in 0..psi {
                let source_id = r.str("prototype source id")?;
                let n = r.u32("prototype point count")? as usize;
                if n == 0 || n > k {
                    return Err(Error::Persistence(format!(
                        "prototype of {source_id} has {n} points, allowed 1..={k}"
                    )));
                }
                let coords = (0..n * dim)
                    .map(|_| r.f64("prototype coordinates"))
                    .collect::<Result<Vec<_>>>()?;
                let points = Points::new(dim, coords)
                    .map_err(|e| Error::Persistence(format!("prototype of {source_id}: {e}")))?;
                prototypes.push(Prototype { points, source_id });
            }
            codebooks.push(Codebook {
                prototypes,
                quantizer_index,
            });
        }
        r.finish()?;
        Ok(Self {
            codebooks,
            params,
            dim,
        })
    }

    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes).map_err(|e| Error::Persistence(format!("{}: {e}", path.display())))
    }
}

/// Digest identifying one codebook set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fingerprint(pub [u8; 32]);

impl std::fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Draws `psi` distinct trajectories uniformly without replacement, in draw order.
pub fn sample_reference_trajectories<'a, R: Rng + ?Sized>(
    db: &'a Dataset,
    psi: usize,
    rng: &mut R,
) -> Result<Vec<&'a Trajectory>> {
    if psi == 0 {
        return Err(Error::Config("codebook size must be at least 1".into()));
    }
    if psi > db.len() {
        return Err(Error::Config(format!(
            "codebook size psi={psi} exceeds database size N={}",
            db.len()
        )));
    }
    Ok(index::sample(rng, db.len(), psi)
        .into_iter()
        .map(|i| db.get(i))
        .collect())
}

/// Keeps `min(k, μ)` distinct points of `t`, uniformly at random, in draw order.
pub fn build_prototype<R: Rng + ?Sized>(t: &Trajectory, k: usize, rng: &mut R) -> Result<Prototype> {
    if k == 0 {
        return Err(Error::Config("prototype size k must be at least 1".into()));
    }
    let mu = t.len();
    let points = if mu <= k {
        t.points().clone()
    } else {
        t.points().select(&index::sample(rng, mu, k).into_vec())
    };
    Ok(Prototype {
        points,
        source_id: t.id().to_string(),
    })
}

/// Builds all `M` codebooks. Quantizer `m` draws from its own stream derived
/// from `(seed, m)`; reference draws are independent across quantizers.
pub fn build_codebook_set(db: &Dataset, params: CodebookParams) -> Result<CodebookSet> {
    params.validate()?;
    let psi = params.codebook_size();
    if psi > db.len() {
        return Err(Error::Config(format!(
            "codebook size 2^omega={psi} (omega={}) exceeds database size N={}",
            params.omega,
            db.len()
        )));
    }
    let mut codebooks = Vec::with_capacity(params.quantizers);
    for m in 0..params.quantizers {
        let mut rng = seed::stream(params.seed, DOMAIN_CODEBOOK, m as u64);
        let refs = sample_reference_trajectories(db, psi, &mut rng)?;
        let prototypes = refs
            .into_iter()
            .map(|t| build_prototype(t, params.k, &mut rng))
            .collect::<Result<Vec<_>>>()?;
        codebooks.push(Codebook {
            prototypes,
            quantizer_index: m + 1,
        });
    }
    Ok(CodebookSet {
        codebooks,
        params,
        dim: db.dim(),
    })
}
