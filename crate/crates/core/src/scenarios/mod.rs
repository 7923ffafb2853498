//! Declarative presets and the run harness: builds the objects a spec
//! file describes, computes, validates (`d^2 = 0`, embedding
//! injectivity, seeded sampling), compares against the expected tables
//! and produces a deterministic [`Report`].

pub mod oracles;
pub mod presets;
pub mod sampling;

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use crate::algebra::{
    hilbert, parse_element, quotient_basis, Algebra, Element, Flavor, Generator, HilbertSeries,
    Ideal,
};
use crate::amalgam::{
    amalgam_hilbert, embedding_from_generator_images, AmalgamSpec, AugmentedAlgebra,
};
use crate::cdga::{
    cohomology, compare_presentation, quotient_cdga, CohomologyReport, ComparisonVerdict,
    Differential, PresentationTarget,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, RatLit, Rationals};
use crate::koszul::{ExtGenerator, KoszulComplex};
use crate::linalg::Echelon;
use crate::report::{Report, ReportRow};
use crate::specfile::*;

pub use presets::{FieldRule, Preset};

/// Default report ceiling: two periods of the degree-4 families.
pub const DEFAULT_MAX_DEGREE: u32 = 12;

/// Cases sampled per run by the seeded validation stage.
const VALIDATION_SAMPLES: usize = 8;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// `None` means the preset's (or file's) own field.
    pub field: Option<FieldSpec>,
    pub k: RatLit,
    /// `None` means the file's truncation, or 12 for presets.
    pub max_degree: Option<u32>,
    pub representatives: bool,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            field: None,
            k: RatLit::ONE,
            max_degree: None,
            representatives: false,
            seed: 0x5eed,
        }
    }
}

/// One line of the preset catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresetInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
    pub default_field: FieldSpec,
}

/// The preset catalog, in stable order.
pub fn list_presets() -> Vec<PresetInfo> {
    presets::presets()
        .iter()
        .map(|p| PresetInfo {
            name: p.name,
            kind: p.kind.as_str(),
            description: p.description,
            anchor: p.anchor,
            default_field: p.default_field,
        })
        .collect()
}

/// Runs a named preset and compares against its expected table.
pub fn run_preset(name: &str, opts: &RunOptions) -> Result<Report> {
    let preset = presets::find(name)?;
    let field = opts.field.unwrap_or(preset.default_field);
    preset.field_rule.check(field)?;
    let n_max = opts.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    let file = (preset.build)(field, n_max);
    let mut resolved = opts.clone();
    resolved.field = Some(field);
    resolved.max_degree = Some(n_max);
    run_spec_file(&file, &resolved)
}

/// Runs the cocycle-family check `s_n` on the parametrized-ball model
/// for `n = 1..=count`.
pub fn s_n_cocycle_check(count: u32, opts: &RunOptions) -> Result<Report> {
    let mut resolved = opts.clone();
    resolved.max_degree = Some(4 * count + 2);
    let mut report = run_preset("emb_model", &resolved)?;
    report.source = "s_n_cocycle_check".into();
    Ok(report)
}

/// Runs a parsed spec file. The file's field is used unless the
/// options override it; `k` must be nonzero.
pub fn run_spec_file(file: &SpecFile, opts: &RunOptions) -> Result<Report> {
    file.validate()?;
    if opts.k.is_zero() {
        return Err(Error::Input("k must be nonzero".into()));
    }
    let field = match opts.field {
        Some(f) => f,
        None => FieldSpec::parse(&file.field)?,
    };
    let n_max = opts.max_degree.unwrap_or(file.truncation);
    let source = file.name.clone().unwrap_or_else(|| "spec-file".into());
    let start = Instant::now();
    let mut report = match field {
        FieldSpec::Rationals => dispatch_kind(Rationals, field, file, &source, opts, n_max)?,
        FieldSpec::Prime(p) => {
            dispatch_kind(PrimeField::new(p)?, field, file, &source, opts, n_max)?
        }
    };
    report.elapsed = Some(start.elapsed());
    Ok(report)
}

fn dispatch_kind<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    match file.kind {
        RunKind::Cdga => run_cdga(f, field, file, source, opts, n_max),
        RunKind::Amalgam => run_amalgam(f, field, file, source, opts, n_max),
        RunKind::Koszul => run_koszul(f, field, file, source, opts, n_max),
        RunKind::TensorModule => run_tensor_module(f, field, file, source, opts, n_max),
        RunKind::SeriesIdentity => run_series_identity(f, field, file, source, opts, n_max),
        RunKind::Splitting => run_splitting(field, file, source, opts, n_max),
    }
}

fn new_report(
    source: &str,
    kind: RunKind,
    field: FieldSpec,
    opts: &RunOptions,
    n_max: u32,
) -> Report {
    Report {
        engine_version: crate::ENGINE_VERSION.into(),
        source: source.into(),
        kind: kind.as_str().into(),
        field: field.to_string(),
        k: opts.k.to_string(),
        max_degree: n_max,
        series: None,
        rows: Vec::new(),
        notes: Vec::new(),
        representatives: Vec::new(),
        verdict: "COMPUTED".into(),
        elapsed: None,
    }
}

fn parse_flavor(s: &str) -> Result<Flavor> {
    match s {
        "koszul" => Ok(Flavor::Koszul),
        "exterior" => Ok(Flavor::Exterior),
        "divided-power" => Ok(Flavor::DividedPower),
        other => Err(Error::SpecFile(format!("unknown flavor `{other}`"))),
    }
}

fn build_generators(specs: &[GeneratorSpec]) -> Result<Vec<Generator>> {
    specs
        .iter()
        .map(|g| {
            Ok(Generator {
                name: g.name.clone(),
                degree: g.degree,
                flavor: parse_flavor(&g.flavor)?,
            })
        })
        .collect()
}

fn build_algebra<F: Field>(
    f: &F,
    specs: &[GeneratorSpec],
    mode: &str,
    truncation: u32,
) -> Result<Arc<Algebra<F>>> {
    let gens = build_generators(specs)?;
    match mode {
        "gc" => Algebra::graded_commutative(f.clone(), gens, truncation),
        "tensor" => Algebra::tensor(f.clone(), gens, truncation),
        other => Err(Error::SpecFile(format!("unknown mode `{other}`"))),
    }
}

/// Builds a (possibly mixed) presented ring from factor blocks and
/// relation expressions.
fn build_ring<F: Field>(
    f: &F,
    spec: &RingSpec,
    truncation: u32,
) -> Result<(Arc<Algebra<F>>, Option<Ideal<F>>)> {
    let mut algebra: Option<Arc<Algebra<F>>> = None;
    for factor in &spec.factors {
        let next = build_algebra(f, &factor.generators, &factor.mode, truncation)?;
        algebra = Some(match algebra {
            None => next,
            Some(acc) => Algebra::tensor_product(&acc, &next)?,
        });
    }
    let algebra = algebra.ok_or_else(|| Error::SpecFile("ring needs a factor".into()))?;
    if spec.relations.is_empty() {
        return Ok((algebra, None));
    }
    let none = BTreeMap::new();
    let relations = spec
        .relations
        .iter()
        .map(|r| parse_element(&algebra, r, &none))
        .collect::<Result<Vec<_>>>()?;
    let ideal = Ideal::new(&algebra, relations)?;
    Ok((algebra, Some(ideal)))
}

fn k_params<F: Field>(f: &F, k: RatLit) -> Result<BTreeMap<String, F::Elem>> {
    Ok(BTreeMap::from([("k".to_string(), k.in_field(f)?)]))
}

fn series_string(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exponent caps for the independent counting oracle, mirroring the
/// flavor/characteristic rules.
fn oracle_caps(gens: &[Generator], characteristic: u64) -> Vec<(u32, Option<u32>)> {
    gens.iter()
        .map(|g| {
            let cap = match g.flavor {
                Flavor::Exterior => Some(1),
                Flavor::Koszul if g.degree % 2 == 1 && characteristic != 2 => Some(1),
                _ => None,
            };
            (g.degree, cap)
        })
        .collect()
}

fn compare_series_rows(
    report: &mut Report,
    computed: &[usize],
    expected: &[ExpectedEntry],
    through: u32,
    n_max: u32,
) {
    let last = (expected.len().saturating_sub(1) as u32).min(through).min(n_max);
    for n in 0..=last {
        let e = &expected[n as usize];
        report.rows.push(ReportRow::new(
            format!("degree {n}"),
            computed.get(n as usize).copied().unwrap_or(0).to_string(),
            e.value.to_string(),
            &e.provenance,
        ));
    }
    if last < n_max {
        report.notes.push(format!(
            "degrees {}..={} computed but uncompared: {}",
            last + 1,
            n_max,
            series_string(&computed[(last as usize + 1).min(computed.len())..])
        ));
    }
}

// ---- cdga ---------------------------------------------------------------

fn run_cdga<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let block = file.cdga.as_ref().expect("validated");
    let truncation = n_max + 1;
    let algebra = build_algebra(&f, &block.generators, &block.mode, truncation)?;
    let params = k_params(&f, opts.k)?;
    let mut images = BTreeMap::new();
    for (name, expr) in &block.differential {
        let g = algebra
            .generator_index(name)
            .ok_or_else(|| Error::SpecFile(format!("no generator named `{name}`")))?;
        images.insert(g, parse_element(&algebra, expr, &params)?);
    }
    let d = Differential::new(&algebra, images)?;
    sampling::validate_differential(&algebra, &d, opts.seed, VALIDATION_SAMPLES)?;

    let coh = cohomology(&algebra, &d, n_max)?;
    let betti = coh.betti_series();
    let mut report = new_report(source, RunKind::Cdga, field, opts, n_max);
    report.series = Some(betti.dims.clone());

    if let Some(expected) = file.expected.as_ref().and_then(|e| e.series.as_ref()) {
        let through = block.compare_through.unwrap_or(n_max);
        compare_series_rows(&mut report, &betti.dims, expected, through, n_max);
    }

    if let Some(qc) = &block.quotient_check {
        quotient_check_rows(&mut report, &algebra, &d, qc, n_max)?;
    }

    if !block.candidates.is_empty() {
        let mut candidates = Vec::new();
        for (name, expr) in &block.candidates {
            candidates.push((name.clone(), parse_element(&algebra, expr, &params)?));
        }
        let target = PresentationTarget {
            expected: betti.clone(),
            candidates,
        };
        let computed = match compare_presentation(&coh, &target, n_max)? {
            ComparisonVerdict::Pass => "yes".to_string(),
            ComparisonVerdict::SpanDeficit {
                degree,
                spanned,
                betti,
            } => format!("no: spans {spanned} of {betti} in degree {degree}"),
            ComparisonVerdict::SeriesMismatch { degree, .. } => {
                format!("no: series mismatch at degree {degree}")
            }
        };
        report.rows.push(ReportRow::new(
            "cohomology generated by the named cocycles",
            computed,
            "yes",
            "stated",
        ));
    }

    if let Some(sn) = &block.sn_family {
        sn_family_rows(&mut report, &algebra, &d, &coh, sn, opts.k, n_max)?;
    }

    if opts.representatives {
        for slice in coh.slices() {
            let reps: Vec<String> = slice.representatives.iter().map(|r| r.display()).collect();
            if !reps.is_empty() {
                report
                    .representatives
                    .push((format!("degree {}", slice.degree), reps));
            }
        }
    }

    report.finish_verdict();
    Ok(report)
}

fn quotient_check_rows<F: Field>(
    report: &mut Report,
    algebra: &Arc<Algebra<F>>,
    d: &Differential<F>,
    qc: &QuotientCheck,
    n_max: u32,
) -> Result<()> {
    let kill: Vec<usize> = qc
        .kill
        .iter()
        .map(|n| {
            algebra
                .generator_index(n)
                .ok_or_else(|| Error::SpecFile(format!("no generator named `{n}`")))
        })
        .collect::<Result<_>>()?;
    let (q, dq) = quotient_cdga(algebra, d, &kill)?;
    let names: Vec<&str> = q.generators().iter().map(|g| g.name.as_str()).collect();
    report.rows.push(ReportRow::new(
        "quotient generators",
        names.join(" "),
        qc.expect_generators.join(" "),
        "stated",
    ));
    report.rows.push(ReportRow::new(
        "quotient differential",
        if dq.is_zero() { "zero" } else { "nonzero" },
        if qc.expect_zero_differential {
            "zero"
        } else {
            "nonzero"
        },
        "stated",
    ));
    let qcoh = cohomology(&q, &dq, n_max)?;
    let caps = oracle_caps(q.generators(), q.field().characteristic());
    let counted: Vec<usize> = (0..=n_max)
        .map(|n| oracles::gc_monomial_count(&caps, n))
        .collect();
    report.rows.push(ReportRow::new(
        "quotient betti series",
        series_string(&qcoh.betti_series().dims),
        series_string(&counted),
        "enumerated",
    ));
    Ok(())
}

fn sn_family_rows<F: Field>(
    report: &mut Report,
    algebra: &Arc<Algebra<F>>,
    d: &Differential<F>,
    coh: &CohomologyReport<F>,
    sn: &SnFamily,
    k: RatLit,
    n_max: u32,
) -> Result<()> {
    let f = algebra.field().clone();
    let idx = |name: &str| {
        algebra
            .generator_index(name)
            .ok_or_else(|| Error::SpecFile(format!("no generator named `{name}`")))
    };
    let lead = Element::generator(algebra, idx(&sn.lead)?);
    let y = Element::generator(algebra, idx(&sn.pair.0)?);
    let z = Element::generator(algebra, idx(&sn.pair.1)?);
    let h = Element::generator(algebra, idx(&sn.power)?);
    let base_degree = lead.homogeneous_degree().expect("generator");
    let h_degree = h.homogeneous_degree().expect("generator");
    let k_elem = k.in_field(&f)?;
    let mut n = 1u32;
    loop {
        let degree = base_degree + n * h_degree;
        if degree > n_max {
            break;
        }
        let coeff = f.mul(&f.from_int(sn.sign * n as i64), &k_elem);
        let s = lead
            .mul(&h.pow(n)?)?
            .add(&y.mul(&z)?.mul(&h.pow(n - 1)?)?.scale(&coeff))?;
        let ds = d.apply(&s)?;
        report.rows.push(ReportRow::new(
            format!("s_{n} closed (degree {degree})"),
            if ds.is_zero() { "cocycle" } else { "not closed" },
            "cocycle",
            &sn.provenance,
        ));
        let bounding = s.is_zero() || coh.is_boundary(&s)?;
        report.rows.push(ReportRow::new(
            format!("s_{n} nonbounding"),
            if bounding { "boundary" } else { "nonzero class" },
            "nonzero class",
            &sn.provenance,
        ));
        n += 1;
    }
    Ok(())
}

// ---- amalgam ---------------------------------------------------------------

fn run_amalgam<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let block = file.amalgam.as_ref().expect("validated");
    let factor = |specs: &[GeneratorSpec]| -> Result<Arc<Algebra<F>>> {
        let top: u32 = specs.iter().map(|g| g.degree).sum();
        build_algebra(&f, specs, "gc", (2 * top).max(1))
    };
    let a_alg = factor(&block.a)?;
    let b_alg = factor(&block.b)?;
    let c_alg = factor(&block.c)?;
    let none: BTreeMap<String, F::Elem> = BTreeMap::new();
    let images = |map: &BTreeMap<String, String>,
                  target: &Arc<Algebra<F>>|
     -> Result<BTreeMap<String, Element<F>>> {
        map.iter()
            .map(|(c, expr)| Ok((c.clone(), parse_element(target, expr, &none)?)))
            .collect()
    };
    let phi_a = embedding_from_generator_images(&c_alg, &a_alg, &images(&block.phi_a, &a_alg)?)?;
    let phi_b = embedding_from_generator_images(&c_alg, &b_alg, &images(&block.phi_b, &b_alg)?)?;
    let spec = AmalgamSpec::new(
        AugmentedAlgebra::from_algebra(&a_alg)?,
        AugmentedAlgebra::from_algebra(&b_alg)?,
        AugmentedAlgebra::from_algebra(&c_alg)?,
        phi_a,
        phi_b,
    )?;
    let dims = amalgam_hilbert(&spec, n_max)?;

    let mut report = new_report(source, RunKind::Amalgam, field, opts, n_max);
    report.series = Some(dims.dims.clone());
    if let Some(expected) = file.expected.as_ref().and_then(|e| e.series.as_ref()) {
        compare_series_rows(&mut report, &dims.dims, expected, n_max, n_max);
    }
    if let Some(ring) = &block.cross_check_ring {
        let (alg, ideal) = build_ring(&f, ring, n_max)?;
        let via_ring = hilbert(&alg, ideal.as_ref(), n_max)?;
        report.rows.push(ReportRow::new(
            "presented-ring route",
            series_string(&via_ring.dims),
            series_string(&dims.dims),
            "cross-oracle",
        ));
    }
    report.finish_verdict();
    Ok(report)
}

// ---- koszul ---------------------------------------------------------------

fn run_koszul<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let block = file.koszul.as_ref().expect("validated");
    let complex = KoszulComplex::new(
        f.clone(),
        block
            .ring_generators
            .iter()
            .map(|g| (g.name.clone(), g.degree))
            .collect(),
        block.ring_relations.clone(),
        block
            .exterior_generators
            .iter()
            .map(|g| ExtGenerator {
                name: g.name.clone(),
                ext: g.ext,
                internal: g.internal,
            })
            .collect(),
        block
            .differential
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
        n_max + 1,
        block.ext_floor,
    )?;
    let tor = complex.tor_dimensions(n_max)?;

    let mut report = new_report(source, RunKind::Koszul, field, opts, n_max);
    report.series = Some(tor.totals.clone());
    if let Some(expected) = file.expected.as_ref().and_then(|e| e.series.as_ref()) {
        let through = block.compare_through.unwrap_or(n_max);
        compare_series_rows(&mut report, &tor.totals, expected, through, n_max);
    }

    if let Some((total, rep)) = &block.representative_check {
        if *total <= n_max {
            let reps = tor.total_representatives(*total);
            let shown: Vec<String> = reps.iter().map(|r| r.display()).collect();
            let expected_dim = file
                .expected
                .as_ref()
                .and_then(|e| e.series.as_ref())
                .and_then(|s| s.get(*total as usize))
                .map(|e| e.value as usize)
                .unwrap_or(1);
            let computed = format!("dim {}, representative {}", shown.len(), shown.join(", "));
            report.notes.push(format!("total degree {total}: {computed}"));
            report.rows.push(ReportRow::new(
                format!("representative at total degree {total}"),
                computed,
                format!("dim {expected_dim}, representative {rep}"),
                "stated",
            ));
        }
    }

    if !block.probe.is_empty() {
        let span = block
            .probe
            .iter()
            .map(|e| complex.parse(e))
            .collect::<Result<Vec<_>>>()?;
        let closed = complex.closedness_probe(&span)?;
        if let Some(expect_dim) = block.probe_expect_dim {
            report.rows.push(ReportRow::new(
                format!("closedness probe on {{{}}}", block.probe.join(", ")),
                format!("kernel dimension {}", closed.len()),
                format!("kernel dimension {expect_dim}"),
                "stated",
            ));
        }
    }

    if let Some(cdga_block) = &block.cross_check_cdga {
        let through = block.compare_through.unwrap_or(n_max).min(n_max);
        let truncation = through + 1;
        let algebra = build_algebra(&f, &cdga_block.generators, &cdga_block.mode, truncation)?;
        let params = k_params(&f, opts.k)?;
        let mut images = BTreeMap::new();
        for (name, expr) in &cdga_block.differential {
            let g = algebra
                .generator_index(name)
                .ok_or_else(|| Error::SpecFile(format!("no generator named `{name}`")))?;
            images.insert(g, parse_element(&algebra, expr, &params)?);
        }
        let d = Differential::new(&algebra, images)?;
        let coh = cohomology(&algebra, &d, through)?;
        report.rows.push(ReportRow::new(
            format!("cohomology cross-check (degrees 0..={through})"),
            series_string(&tor.totals[..=through as usize]),
            series_string(&coh.betti_series().dims),
            "cross-oracle",
        ));
    }

    if opts.representatives {
        for ((p, q), slice) in &tor.slices {
            let reps: Vec<String> = slice.representatives.iter().map(|r| r.display()).collect();
            if !reps.is_empty() {
                report
                    .representatives
                    .push((format!("bidegree ({p}, {q})"), reps));
            }
        }
    }

    report.finish_verdict();
    Ok(report)
}

// ---- tensor modules ----------------------------------------------------------

fn run_tensor_module<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let block = file.module.as_ref().expect("validated");
    let dims = module_dims(&f, block, n_max)?;
    let mut report = new_report(source, RunKind::TensorModule, field, opts, n_max);
    report.series = Some(dims.clone());
    if let Some(expected) = file.expected.as_ref().and_then(|e| e.series.as_ref()) {
        compare_series_rows(&mut report, &dims, expected, n_max, n_max);
    }
    report.finish_verdict();
    Ok(report)
}

fn module_dims<F: Field>(f: &F, block: &ModuleBlock, n_max: u32) -> Result<Vec<usize>> {
    let algebra = build_algebra(f, &block.generators, "tensor", n_max)?;
    let sub: Vec<usize> = block
        .sub
        .iter()
        .map(|n| {
            algebra
                .generator_index(n)
                .ok_or_else(|| Error::SpecFile(format!("no generator named `{n}`")))
        })
        .collect::<Result<_>>()?;
    (0..=n_max)
        .map(|n| crate::algebra::module_quotient_right(&algebra, &sub, n))
        .collect()
}

// ---- series identities ----------------------------------------------------------

fn run_series_identity<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let block = file.series.as_ref().expect("validated");
    match (&block.z2_split, &block.zp_match) {
        (Some(split), None) => run_z2_split(f, field, file, split, source, opts, n_max),
        (None, Some(zp)) => run_zp_match(f, field, file, zp, source, opts, n_max),
        _ => Err(Error::SpecFile(
            "series kind needs exactly one of z2_split / zp_match".into(),
        )),
    }
}

fn run_z2_split<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    split: &Z2SplitBlock,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let (base_alg, base_ideal) = build_ring(&f, &split.base, n_max)?;
    let base = hilbert(&base_alg, base_ideal.as_ref(), n_max)?;
    let fiber = HilbertSeries::new(module_dims(&f, &split.fiber, n_max)?);
    let combined = base.convolve(&fiber, n_max as usize);

    // The rational analogue is always taken over Q.
    let (qfiber_alg, qfiber_ideal) = build_ring(&Rationals, &split.rational_fiber, n_max)?;
    let rational_fiber = hilbert(&qfiber_alg, qfiber_ideal.as_ref(), n_max)?;
    let rational = base.convolve(&rational_fiber, n_max as usize);

    let mut report = new_report(source, RunKind::SeriesIdentity, field, opts, n_max);
    report.series = Some(combined.dims.clone());
    if let Some(expected) = file.expected.as_ref().and_then(|e| e.series.as_ref()) {
        compare_series_rows(&mut report, &combined.dims, expected, n_max, n_max);
    }
    report.notes.push(format!(
        "rational analogue: {}",
        series_string(&rational.dims)
    ));
    let dominates = combined
        .dims
        .iter()
        .zip(&rational.dims)
        .all(|(s, r)| s >= r);
    report.rows.push(ReportRow::new(
        "dominates the rational analogue degreewise",
        if dominates { "yes" } else { "no" },
        "yes",
        "enumerated",
    ));
    let first_excess = combined
        .dims
        .iter()
        .zip(&rational.dims)
        .position(|(s, r)| s > r)
        .map(|n| n.to_string())
        .unwrap_or_else(|| "none".into());
    report.rows.push(ReportRow::new(
        "first degree with strict excess",
        first_excess,
        split.first_excess_degree.to_string(),
        "enumerated",
    ));
    report.finish_verdict();
    Ok(report)
}

fn run_zp_match<F: Field>(
    f: F,
    field: FieldSpec,
    file: &SpecFile,
    zp: &ZpMatchBlock,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let (finite_alg, finite_ideal) = build_ring(&f, &zp.finite, n_max)?;
    let finite = hilbert(&finite_alg, finite_ideal.as_ref(), n_max)?;

    // Tail dimensions: independent classes of the tail monomials in the
    // finite quotient, per degree.
    let none: BTreeMap<String, F::Elem> = BTreeMap::new();
    let mut tails = vec![0usize; n_max as usize + 1];
    let mut by_degree: BTreeMap<u32, Vec<Element<F>>> = BTreeMap::new();
    for expr in &zp.tails {
        let elt = parse_element(&finite_alg, expr, &none)?;
        let degree = elt
            .homogeneous_degree()
            .ok_or_else(|| Error::SpecFile(format!("tail `{expr}` must be homogeneous")))?;
        by_degree.entry(degree).or_default().push(elt);
    }
    for (degree, elts) in by_degree {
        if degree > n_max {
            continue;
        }
        let ideal = finite_ideal
            .as_ref()
            .ok_or_else(|| Error::SpecFile("tail assembly needs relations".into()))?;
        let qb = quotient_basis(&finite_alg, ideal, degree)?;
        let mut ech = Echelon::new(f.clone());
        let mut rank = 0usize;
        for e in elts {
            let coords = qb.project(&e)?;
            let row: Vec<(usize, F::Elem)> = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .collect();
            if ech.insert(row).is_some() {
                rank += 1;
            }
        }
        tails[degree as usize] = rank;
    }

    // Divided-power series over F.
    let divided = build_algebra(&f, std::slice::from_ref(&zp.divided), "gc", n_max)?;
    let gamma = hilbert(&divided, None, n_max)?;

    // Assemble: finite part plus tails times positive divided powers.
    let mut assembled = finite.dims.clone();
    for j in 1..=n_max as usize {
        if gamma.dim(j) == 0 {
            continue;
        }
        for d in 0..=(n_max as usize - j) {
            assembled[d + j] += gamma.dim(j) * tails[d];
        }
    }

    // Rational side, always over Q.
    let rational_alg = build_algebra(
        &Rationals,
        &zp.rational.generators,
        &zp.rational.mode,
        n_max + 1,
    )?;
    let params = k_params(&Rationals, opts.k)?;
    let mut images = BTreeMap::new();
    for (name, expr) in &zp.rational.differential {
        let g = rational_alg
            .generator_index(name)
            .ok_or_else(|| Error::SpecFile(format!("no generator named `{name}`")))?;
        images.insert(g, parse_element(&rational_alg, expr, &params)?);
    }
    let d = Differential::new(&rational_alg, images)?;
    let rational = cohomology(&rational_alg, &d, n_max)?.betti_series();

    let mut report = new_report(source, RunKind::SeriesIdentity, field, opts, n_max);
    report.series = Some(assembled.clone());
    if let Some(expected) = file.expected.as_ref().and_then(|e| e.series.as_ref()) {
        compare_series_rows(&mut report, &assembled, expected, n_max, n_max);
    }
    report.rows.push(ReportRow::new(
        "rational cohomology cross-check",
        series_string(&assembled),
        series_string(&rational.dims),
        "cross-oracle",
    ));
    report.finish_verdict();
    Ok(report)
}

// ---- splitting ----------------------------------------------------------

fn run_splitting(
    field: FieldSpec,
    file: &SpecFile,
    source: &str,
    opts: &RunOptions,
    n_max: u32,
) -> Result<Report> {
    let block = file.splitting.as_ref().expect("validated");
    let mut union: Vec<u32> = block
        .base_degrees
        .iter()
        .chain(block.fiber_degrees.iter())
        .copied()
        .collect();
    union.sort_unstable();
    let mut model = block.model_degrees.clone();
    model.sort_unstable();
    let fmt = |v: &[u32]| {
        v.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut report = new_report(source, RunKind::Splitting, field, opts, n_max);
    report.rows.push(ReportRow::new(
        "model degrees = base degrees union fiber degrees",
        fmt(&model),
        fmt(&union),
        "stated",
    ));
    report.finish_verdict();
    Ok(report)
}

#[cfg(test)]
mod tests;
