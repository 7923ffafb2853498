//! The versioned spec-file format: a JSON document describing one run
//! (a CDGA cohomology computation, an amalgam, a Koszul/Tor
//! computation, a tensor-module quotient, a series identity, or a
//! degree-multiset splitting check), plus an optional table of expected
//! values. Every built-in preset serializes to this format and back.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunKind {
    Cdga,
    Amalgam,
    Koszul,
    TensorModule,
    SeriesIdentity,
    Splitting,
}

impl RunKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunKind::Cdga => "cdga",
            RunKind::Amalgam => "amalgam",
            RunKind::Koszul => "koszul",
            RunKind::TensorModule => "tensor-module",
            RunKind::SeriesIdentity => "series-identity",
            RunKind::Splitting => "splitting",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: u32,
    #[serde(default = "default_flavor", skip_serializing_if = "is_default_flavor")]
    pub flavor: String,
}

fn default_flavor() -> String {
    "koszul".into()
}

fn is_default_flavor(f: &String) -> bool {
    f == "koszul"
}

/// One factor of a (possibly mixed) presented ring: a generator list in
/// either graded-commutative (`gc`) or free noncommutative (`tensor`)
/// mode. A ring is a graded tensor product of such factors modulo
/// homogeneous relations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RingFactorSpec {
    #[serde(default = "default_mode")]
    pub mode: String,
    pub generators: Vec<GeneratorSpec>,
}

fn default_mode() -> String {
    "gc".into()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RingSpec {
    pub factors: Vec<RingFactorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
}

/// A CDGA run: free algebra (graded-commutative unless `mode` says
/// `tensor`), differential on generators (expressions may use the run
/// parameter `k`), optional quotient-CDGA check, optional candidate
/// generator cocycles for the presentation comparison, and optional
/// extra checks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CdgaBlock {
    #[serde(default = "default_mode", skip_serializing_if = "is_default_mode")]
    pub mode: String,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub differential: BTreeMap<String, String>,
    /// Kill these generators and verify the quotient CDGA.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_check: Option<QuotientCheck>,
    /// Named cocycles whose products must span the cohomology.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub candidates: BTreeMap<String, String>,
    /// Compare betti numbers only through this degree (the expected
    /// table may be shorter than the computed range).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare_through: Option<u32>,
    /// Verify a family of cocycles `lead * power^n + sign * n * k *
    /// pair.0 * pair.1 * power^{n-1}` — closed and not a boundary — for
    /// `n = 1..` while the degree fits the report.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sn_family: Option<SnFamily>,
}

fn is_default_mode(m: &String) -> bool {
    m == "gc"
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SnFamily {
    pub lead: String,
    pub pair: (String, String),
    pub sign: i64,
    pub power: String,
    pub provenance: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct QuotientCheck {
    pub kill: Vec<String>,
    pub expect_generators: Vec<String>,
    pub expect_zero_differential: bool,
}

/// An amalgamated free product run: factors `a`, `b`, common
/// subalgebra `c` (each a finite-dimensional graded-commutative
/// algebra), embeddings given on the generators of `c`, and an optional
/// closed-form ring whose quotient dimensions must agree.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AmalgamBlock {
    pub a: Vec<GeneratorSpec>,
    pub b: Vec<GeneratorSpec>,
    pub c: Vec<GeneratorSpec>,
    pub phi_a: BTreeMap<String, String>,
    pub phi_b: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check_ring: Option<RingSpec>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtGeneratorSpec {
    pub name: String,
    pub ext: i32,
    pub internal: u32,
}

/// A Koszul/Tor run over `ring`, with exterior generators in negative
/// external degrees and an `R`-linear differential of bidegree (+1, 0).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KoszulBlock {
    pub ring_generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ring_relations: Vec<String>,
    pub exterior_generators: Vec<ExtGeneratorSpec>,
    pub differential: BTreeMap<String, String>,
    #[serde(default = "default_ext_floor")]
    pub ext_floor: i32,
    /// Expressions spanning a closedness probe; the expected kernel
    /// dimension goes in the expected table.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probe: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_expect_dim: Option<usize>,
    /// Check the representative display at one total degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative_check: Option<(u32, String)>,
    /// Cross-check the total-degree dims against a CDGA cohomology.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check_cdga: Option<Box<CdgaBlock>>,
    /// Compare totals only through this degree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compare_through: Option<u32>,
}

fn default_ext_floor() -> i32 {
    crate::koszul::DEFAULT_EXT_FLOOR
}

/// A right-module quotient of a tensor algebra by the augmentation
/// ideal of the subalgebra on `sub`: degreewise dimensions of
/// `A (x)_{T(sub)} k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ModuleBlock {
    pub generators: Vec<GeneratorSpec>,
    pub sub: Vec<String>,
}

/// Series-identity runs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeriesBlock {
    /// Splitting over F2: dims of `base` convolved with the module
    /// quotient dims, compared against the same construction with the
    /// rational fiber, with a torsion-excess check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z2_split: Option<Z2SplitBlock>,
    /// Odd-prime dimension match: the assembled divided-power series
    /// must equal a rational cohomology series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zp_match: Option<ZpMatchBlock>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Z2SplitBlock {
    pub base: RingSpec,
    pub fiber: ModuleBlock,
    pub rational_fiber: RingSpec,
    /// Expected first degree where the F2 series strictly exceeds the
    /// rational one.
    pub first_excess_degree: u32,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ZpMatchBlock {
    /// The finite quotient part (e.g. Lambda(a,b,g)/<a^2,b^2,bg>).
    pub finite: RingSpec,
    /// Tail monomials multiplied by the positive divided powers.
    pub tails: Vec<String>,
    /// The divided-power generator.
    pub divided: GeneratorSpec,
    /// The rational CDGA whose betti numbers the assembly must match.
    pub rational: CdgaBlock,
}

/// Multiset bookkeeping: the model degrees must equal the union of the
/// base and fiber degree lists.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SplittingBlock {
    pub model_degrees: Vec<u32>,
    pub base_degrees: Vec<u32>,
    pub fiber_degrees: Vec<u32>,
}

/// One expected value with its provenance: `stated` (printed in the
/// source results), `enumerated` (computed by an independent counting
/// oracle), `immediate` (immediate consequence), `cross-oracle`
/// (engine-vs-engine), or `file` (user-supplied).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExpectedEntry {
    pub value: u64,
    #[serde(default = "default_provenance")]
    pub provenance: String,
}

fn default_provenance() -> String {
    "file".into()
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct ExpectedBlock {
    /// Expected betti numbers / dimensions per degree, starting at 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<Vec<ExpectedEntry>>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub format_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: RunKind,
    pub field: String,
    /// Maximum degree reported on.
    pub truncation: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cdga: Option<CdgaBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amalgam: Option<AmalgamBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul: Option<KoszulBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<SplittingBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedBlock>,
}

impl SpecFile {
    pub fn from_json(text: &str) -> Result<SpecFile> {
        let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            col: e.column(),
            message: e.to_string(),
        })?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::SpecFile(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                self.format_version
            )));
        }
        crate::field::FieldSpec::parse(&self.field)?;
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(Error::SpecFile(format!(
                    "kind `{}` requires the `{what}` block",
                    self.kind.as_str()
                )))
            }
        };
        match self.kind {
            RunKind::Cdga => need(self.cdga.is_some(), "cdga")?,
            RunKind::Amalgam => need(self.amalgam.is_some(), "amalgam")?,
            RunKind::Koszul => need(self.koszul.is_some(), "koszul")?,
            RunKind::TensorModule => need(self.module.is_some(), "module")?,
            RunKind::SeriesIdentity => need(self.series.is_some(), "series")?,
            RunKind::Splitting => need(self.splitting.is_some(), "splitting")?,
        }
        Ok(())
    }
}
