//! Differentials on graded algebras: degree +1 derivations given on
//! generators, `d^2` validation, degreewise cohomology with echelon-
//! normalized representatives, cup products on classes, quotient CDGAs,
//! the quadratic differential read off a Whitehead-product table, and
//! comparison of a computed cohomology against a stated presentation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::algebra::{Algebra, Element, Flavor, HilbertSeries, Monomial};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{row_sub, to_sparse, Echelon, Matrix, SparseRow};

/// A degree +1 derivation, given by its values on generators. Missing
/// entries mean zero. Construction validates homogeneity of every
/// image; [`Differential::new`] additionally requires `d^2 = 0` on all
/// generators visible below the truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct Differential<F: Field> {
    algebra: Arc<Algebra<F>>,
    images: BTreeMap<usize, Element<F>>,
}

impl<F: Field> Differential<F> {
    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        Differential {
            algebra: algebra.clone(),
            images: BTreeMap::new(),
        }
    }

    /// Builds and validates: homogeneity of each image and `d^2 = 0`.
    pub fn new(algebra: &Arc<Algebra<F>>, images: BTreeMap<usize, Element<F>>) -> Result<Self> {
        let d = Self::new_unvalidated(algebra, images)?;
        if let Some((g, value)) = d.d_squared_witness()? {
            return Err(Error::DSquared {
                generator: algebra.generators()[g].name.clone(),
                value: value.display(),
            });
        }
        Ok(d)
    }

    /// Homogeneity gate only; used to probe deliberately broken data.
    pub fn new_unvalidated(
        algebra: &Arc<Algebra<F>>,
        images: BTreeMap<usize, Element<F>>,
    ) -> Result<Self> {
        for (&g, img) in &images {
            let gen = algebra
                .generators()
                .get(g)
                .ok_or_else(|| Error::Differential(format!("no generator with index {g}")))?;
            if img.is_zero() {
                continue;
            }
            match img.homogeneous_degree() {
                Some(d) if d == gen.degree + 1 => {}
                _ => {
                    return Err(Error::Differential(format!(
                        "d({}) must be homogeneous of degree {}",
                        gen.name,
                        gen.degree + 1
                    )))
                }
            }
        }
        let images = images.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(Differential {
            algebra: algebra.clone(),
            images,
        })
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> impl Iterator<Item = (usize, &Element<F>)> {
        self.images.iter().map(|(&g, e)| (g, e))
    }

    pub fn generator_image(&self, g: usize) -> Element<F> {
        self.images
            .get(&g)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.algebra))
    }

    /// d of a single canonical factor `g^e` (or the divided-power basis
    /// element `x_e`).
    fn d_factor(&self, g: u16, e: u32) -> Result<Element<F>> {
        let alg = &self.algebra;
        let dg = self.generator_image(g as usize);
        if dg.is_zero() {
            return Ok(dg);
        }
        match alg.generators()[g as usize].flavor {
            Flavor::DividedPower => {
                // d(x_e) = x_{e-1} * dx
                let lower = Element::divided_power(alg, g as usize, e - 1);
                lower.mul(&dg)
            }
            _ => {
                // d(g^e) = e g^{e-1} dg. The sign-free form is exact:
                // either e = 1, or |g| is even (so dg commutes past g up
                // to an even sign), or the characteristic is 2.
                let count = alg.field().from_int(e as i64);
                if alg.field().is_zero(&count) {
                    return Ok(Element::zero(alg));
                }
                let power = Element::generator(alg, g as usize).pow(e - 1)?;
                Ok(power.mul(&dg)?.scale(&count))
            }
        }
    }

    /// The signed Leibniz extension `d(uv) = du v + (-1)^{|u|} u dv`
    /// applied linearly to an arbitrary element.
    pub fn apply(&self, u: &Element<F>) -> Result<Element<F>> {
        let alg = &self.algebra;
        if !u.is_zero() && u.max_degree() + 1 > alg.truncation() {
            return Err(Error::InsufficientTruncation {
                truncation: alg.truncation(),
                context: format!(
                    "d of a degree-{} element is not representable",
                    u.max_degree()
                ),
            });
        }
        let mut out = Element::zero(alg);
        for (m, c) in u.terms() {
            let factors = m.factors().to_vec();
            let mut prefix_degree = 0u32;
            for (i, &(g, e)) in factors.iter().enumerate() {
                let df = self.d_factor(g, e)?;
                if !df.is_zero() {
                    let term = monomial_prefix(alg, &factors[..i])
                        .mul(&df)?
                        .mul(&monomial_prefix(alg, &factors[i + 1..]))?;
                    let coeff = if prefix_degree % 2 == 1 {
                        alg.field().neg(c)
                    } else {
                        c.clone()
                    };
                    out = out.add(&term.scale(&coeff))?;
                }
                prefix_degree += alg.generators()[g as usize].degree * e;
            }
        }
        Ok(out)
    }

    /// `d(d(g))` for every generator with `|g| + 2` within the
    /// truncation; the first violation is returned as a witness.
    pub fn d_squared_witness(&self) -> Result<Option<(usize, Element<F>)>> {
        for (g, gen) in self.algebra.generators().iter().enumerate() {
            if gen.degree + 2 > self.algebra.truncation() {
                continue;
            }
            let dd = self.apply(&self.generator_image(g))?;
            if !dd.is_zero() {
                return Ok(Some((g, dd)));
            }
        }
        Ok(None)
    }
}

fn monomial_prefix<F: Field>(alg: &Arc<Algebra<F>>, factors: &[(u16, u32)]) -> Element<F> {
    let mut out = Element::one(alg);
    for &(g, e) in factors {
        let f = if alg.generators()[g as usize].flavor == Flavor::DividedPower {
            Element::divided_power(alg, g as usize, e)
        } else {
            Element::generator(alg, g as usize)
                .pow(e)
                .expect("within truncation")
        };
        out = out.mul(&f).expect("same algebra");
    }
    out
}

/// One degree of a cohomology computation.
#[derive(Clone, Debug)]
pub struct DegreeSlice<F: Field> {
    pub degree: u32,
    pub betti: usize,
    pub boundary_rank: usize,
    /// Echelon-normalized cocycles, linearly independent modulo
    /// boundaries, in deterministic order.
    pub representatives: Vec<Element<F>>,
}

/// Degreewise cohomology of `(A, d)` together with the data needed to
/// multiply classes afterwards.
#[derive(Clone, Debug)]
pub struct CohomologyReport<F: Field> {
    algebra: Arc<Algebra<F>>,
    differential: Differential<F>,
    n_max: u32,
    slices: Vec<DegreeSlice<F>>,
    indexes: Vec<BTreeMap<Monomial, usize>>,
    boundary_echelons: Vec<Echelon<F>>,
    rep_pivots: Vec<Vec<usize>>,
    /// Free-form run metadata (field, truncation, parameter values).
    pub parameters: BTreeMap<String, String>,
}

/// Identifies a cohomology class: `(degree, index into representatives)`.
pub type ClassId = (u32, usize);

impl<F: Field> CohomologyReport<F> {
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn differential(&self) -> &Differential<F> {
        &self.differential
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn slices(&self) -> &[DegreeSlice<F>] {
        &self.slices
    }

    pub fn betti(&self, n: u32) -> usize {
        self.slices[n as usize].betti
    }

    pub fn betti_series(&self) -> HilbertSeries {
        HilbertSeries::new(self.slices.iter().map(|s| s.betti).collect())
    }

    pub fn representative(&self, class: ClassId) -> Result<&Element<F>> {
        let (n, i) = class;
        self.slices
            .get(n as usize)
            .and_then(|s| s.representatives.get(i))
            .ok_or_else(|| Error::Input(format!("no class ({n}, {i}) in the report")))
    }

    /// Expands the product of two classes in the representative basis
    /// of the product degree.
    pub fn cup(&self, c1: ClassId, c2: ClassId) -> Result<Vec<F::Elem>> {
        let r1 = self.representative(c1)?;
        let r2 = self.representative(c2)?;
        let n = c1.0 + c2.0;
        if n > self.n_max {
            return Err(Error::Input(format!(
                "cup product in degree {n} exceeds the report range {}",
                self.n_max
            )));
        }
        let product = r1.mul(r2)?;
        self.expand_in_representatives(n, &product)
    }

    /// Writes a cocycle of degree `n` as boundary plus a combination of
    /// the degree-`n` representatives, returning the coefficients.
    pub fn expand_in_representatives(&self, n: u32, z: &Element<F>) -> Result<Vec<F::Elem>> {
        let f = self.algebra.field().clone();
        let nn = n as usize;
        if z.is_zero() {
            return Ok(vec![f.zero(); self.slices[nn].representatives.len()]);
        }
        if z.homogeneous_degree() != Some(n) {
            return Err(Error::Input(format!(
                "expected a homogeneous element of degree {n}"
            )));
        }
        let dz = self.differential.apply(z)?;
        if !dz.is_zero() {
            return Err(Error::Input("element is not a cocycle".into()));
        }
        let row = z.sparse_coords(&self.indexes[nn])?;
        let mut residual = self.boundary_echelons[nn].reduce(row);
        let pivots = &self.rep_pivots[nn];
        let mut coeffs = vec![f.zero(); pivots.len()];
        for (i, &p) in pivots.iter().enumerate() {
            if let Some(pos) = residual.iter().position(|(c, _)| *c == p) {
                let c = residual[pos].1.clone();
                let rep_row = self.rep_row(nn, i);
                let scaled: SparseRow<F> =
                    rep_row.iter().map(|(col, v)| (*col, f.mul(&c, v))).collect();
                residual = row_sub(&f, &residual, &scaled);
                coeffs[i] = c;
            }
        }
        if !residual.is_empty() {
            return Err(Error::Input(
                "element does not reduce into the representative span".into(),
            ));
        }
        Ok(coeffs)
    }

    fn rep_row(&self, n: usize, i: usize) -> SparseRow<F> {
        let rep = &self.slices[n].representatives[i];
        rep.sparse_coords(&self.indexes[n])
            .expect("representative lies in its slice")
    }

    /// True when a homogeneous element lies in the boundary space of
    /// its degree.
    pub fn is_boundary(&self, z: &Element<F>) -> Result<bool> {
        if z.is_zero() {
            return Ok(true);
        }
        let n = z
            .homogeneous_degree()
            .ok_or_else(|| Error::Input("expected a homogeneous element".into()))?;
        if n > self.n_max {
            return Err(Error::Input(format!(
                "degree {n} exceeds the report range {}",
                self.n_max
            )));
        }
        let row = z.sparse_coords(&self.indexes[n as usize])?;
        Ok(self.boundary_echelons[n as usize].reduce(row).is_empty())
    }

    /// Renders a class expansion as an element of the algebra.
    pub fn format_expansion(&self, n: u32, coeffs: &[F::Elem]) -> String {
        let reps = &self.slices[n as usize].representatives;
        let mut out = Element::zero(&self.algebra);
        for (c, r) in coeffs.iter().zip(reps) {
            out = out.add(&r.scale(c)).expect("same algebra");
        }
        out.display()
    }
}

/// Degreewise cohomology of `(algebra, d)` for degrees `0..=n_max`, via
/// kernel/image linear algebra on the monomial bases. Degree `n` needs
/// the full differential into degree `n + 1`, so `n_max` must be
/// strictly below the truncation; the report refuses degrees it cannot
/// certify.
pub fn cohomology<F: Field>(
    algebra: &Arc<Algebra<F>>,
    d: &Differential<F>,
    n_max: u32,
) -> Result<CohomologyReport<F>> {
    if n_max + 1 > algebra.truncation() {
        return Err(Error::InsufficientTruncation {
            truncation: algebra.truncation(),
            context: format!("cohomology in degree {n_max} needs truncation {}", n_max + 1),
        });
    }
    let f = algebra.field().clone();
    let mut bases = Vec::new();
    let mut indexes = Vec::new();
    for n in 0..=n_max + 1 {
        let b = algebra.monomial_basis(n)?;
        let idx: BTreeMap<Monomial, usize> =
            b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        bases.push(b);
        indexes.push(idx);
    }

    let mut slices = Vec::new();
    let mut boundary_echelons = Vec::new();
    let mut rep_pivots = Vec::new();
    for n in 0..=n_max as usize {
        // Boundaries: images of the degree n-1 basis.
        let mut bnd = Echelon::new(f.clone());
        if n >= 1 {
            for m in &bases[n - 1] {
                let dm = d.apply(&Element::from_monomial(algebra, m.clone(), f.one()))?;
                if !dm.is_zero() {
                    bnd.insert(dm.sparse_coords(&indexes[n])?);
                }
            }
        }
        let boundary_rank = bnd.rank();
        let boundary_pivots: BTreeSet<usize> = bnd.pivots().into_iter().collect();

        // Kernel of d on degree n, via the dense matrix into degree n+1.
        let cols = bases[n].len();
        let rows = bases[n + 1].len();
        let mut matrix = Matrix::zero(f.clone(), rows, cols);
        for (j, m) in bases[n].iter().enumerate() {
            let dm = d.apply(&Element::from_monomial(algebra, m.clone(), f.one()))?;
            for (target, c) in dm.terms() {
                let i = indexes[n + 1][target];
                matrix.set(i, j, c.clone());
            }
        }
        let kernel = matrix.kernel_basis();
        let betti = kernel.len() - boundary_rank;

        // Representatives: extend the boundary echelon by the kernel;
        // the surviving pivot rows are an echelon basis of the kernel
        // modulo boundaries.
        let mut full = bnd.clone();
        for v in &kernel {
            full.insert(to_sparse(&f, v));
        }
        debug_assert_eq!(full.rank(), kernel.len(), "boundaries lie inside the kernel");
        let mut representatives = Vec::new();
        let mut pivots = Vec::new();
        for row in full.reduced_rows() {
            let pivot = row.first().expect("stored rows are nonzero").0;
            if boundary_pivots.contains(&pivot) {
                continue;
            }
            let mut rep = Element::zero(algebra);
            for (col, c) in row.iter() {
                rep = rep.add(&Element::from_monomial(
                    algebra,
                    bases[n][*col].clone(),
                    c.clone(),
                ))?;
            }
            representatives.push(rep);
            pivots.push(pivot);
        }
        debug_assert_eq!(representatives.len(), betti);

        slices.push(DegreeSlice {
            degree: n as u32,
            betti,
            boundary_rank,
            representatives,
        });
        boundary_echelons.push(bnd);
        rep_pivots.push(pivots);
    }

    Ok(CohomologyReport {
        algebra: algebra.clone(),
        differential: d.clone(),
        n_max,
        slices,
        indexes,
        boundary_echelons,
        rep_pivots,
        parameters: BTreeMap::new(),
    })
}

/// A table of Whitehead products `[b_i, b_j]`, each expanded in the
/// degree `|b_i| + |b_j| - 1` span of generators. Entries are stored
/// for unordered pairs; giving both orders is allowed when they satisfy
/// the graded symmetry `[b_i, b_j] = (-1)^{|b_i||b_j|} [b_j, b_i]`.
#[derive(Clone, Debug)]
pub struct WhiteheadTable<F: Field> {
    entries: BTreeMap<(usize, usize), Element<F>>,
}

impl<F: Field> WhiteheadTable<F> {
    pub fn new(
        algebra: &Arc<Algebra<F>>,
        entries: Vec<(usize, usize, Element<F>)>,
    ) -> Result<Self> {
        let gens = algebra.generators();
        let mut table: BTreeMap<(usize, usize), Element<F>> = BTreeMap::new();
        for (i, j, value) in entries {
            if i >= gens.len() || j >= gens.len() {
                return Err(Error::Input("whitehead table generator out of range".into()));
            }
            if !value.is_zero() {
                let expected = gens[i].degree + gens[j].degree - 1;
                if value.homogeneous_degree() != Some(expected) {
                    return Err(Error::Input(format!(
                        "[{}, {}] must be homogeneous of degree {expected}",
                        gens[i].name, gens[j].name
                    )));
                }
                let linear = value
                    .terms()
                    .all(|(m, _)| m.factors().len() == 1 && m.factors()[0].1 == 1);
                if !linear {
                    return Err(Error::Input(format!(
                        "[{}, {}] must expand linearly in the generators",
                        gens[i].name, gens[j].name
                    )));
                }
            }
            // Normalize to i <= j using graded symmetry.
            let (key, norm) = if i <= j {
                ((i, j), value)
            } else {
                let sign_neg = (gens[i].degree * gens[j].degree) % 2 == 1;
                ((j, i), if sign_neg { value.neg() } else { value })
            };
            match table.get(&key) {
                None => {
                    table.insert(key, norm);
                }
                Some(existing) if *existing == norm => {}
                Some(_) => {
                    return Err(Error::Input(format!(
                        "whitehead table breaks graded symmetry at [{}, {}]",
                        gens[key.0].name, gens[key.1].name
                    )))
                }
            }
        }
        Ok(WhiteheadTable { entries: table })
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Element<F>)> {
        self.entries.iter()
    }
}

/// The purely quadratic differential dual to a Whitehead-product table:
/// `d b_k = sum <b_k, [b_i, b_j]> b_i b_j` over unordered pairs, where
/// `<b_k, ->` reads off the `b_k`-coefficient of the expansion.
pub fn duality_differential<F: Field>(
    algebra: &Arc<Algebra<F>>,
    table: &WhiteheadTable<F>,
) -> Result<Differential<F>> {
    let mut images: BTreeMap<usize, Element<F>> = BTreeMap::new();
    for (&(i, j), expansion) in table.entries() {
        let quad = Element::generator(algebra, i).mul(&Element::generator(algebra, j))?;
        for (m, coeff) in expansion.terms() {
            let k = m.factors()[0].0 as usize;
            let entry = images.entry(k).or_insert_with(|| Element::zero(algebra));
            *entry = entry.add(&quad.scale(coeff))?;
        }
    }
    Differential::new(algebra, images)
}

/// Quotient of `(A, d)` by the ideal generated by a set of generators.
/// The ideal must be differential-closed: `d` of each listed generator
/// may only involve listed generators.
pub fn quotient_cdga<F: Field>(
    algebra: &Arc<Algebra<F>>,
    d: &Differential<F>,
    ideal_gens: &[usize],
) -> Result<(Arc<Algebra<F>>, Differential<F>)> {
    let gens = algebra.generators();
    let killed: BTreeSet<usize> = ideal_gens.iter().copied().collect();
    for &g in &killed {
        if g >= gens.len() {
            return Err(Error::Input(format!("no generator with index {g}")));
        }
        let dg = d.generator_image(g);
        let closed = dg.terms().all(|(m, _)| m.mentions(&killed));
        if !closed {
            return Err(Error::Differential(format!(
                "ideal is not differential-closed: d({}) = {} leaves the ideal",
                gens[g].name,
                dg.display()
            )));
        }
    }

    let survivors: Vec<usize> = (0..gens.len()).filter(|g| !killed.contains(g)).collect();
    let reindex: BTreeMap<usize, usize> = survivors
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let quotient = algebra.select_generators(&survivors)?;

    let mut images = BTreeMap::new();
    for &old in &survivors {
        let dg = d.generator_image(old);
        let mapped = project_off(&quotient, &dg, &killed, &reindex)?;
        if !mapped.is_zero() {
            images.insert(reindex[&old], mapped);
        }
    }
    let dq = Differential::new(&quotient, images)?;
    Ok((quotient, dq))
}

/// Maps an element into the quotient algebra, dropping every term that
/// mentions a killed generator and reindexing the rest.
fn project_off<F: Field>(
    target: &Arc<Algebra<F>>,
    u: &Element<F>,
    killed: &BTreeSet<usize>,
    reindex: &BTreeMap<usize, usize>,
) -> Result<Element<F>> {
    let mut out = Element::zero(target);
    for (m, c) in u.terms() {
        if m.mentions(killed) {
            continue;
        }
        let mut factor_elt = Element::scalar(target, c.clone());
        for &(g, e) in m.factors() {
            let ng = reindex[&(g as usize)];
            let f = if target.generators()[ng].flavor == Flavor::DividedPower {
                Element::divided_power(target, ng, e)
            } else {
                Element::generator(target, ng).pow(e)?
            };
            factor_elt = factor_elt.mul(&f)?;
        }
        out = out.add(&factor_elt)?;
    }
    Ok(out)
}

/// A stated presentation to compare a computed cohomology against: the
/// expected dimension series and, optionally, named candidate generator
/// cocycles whose products must span the cohomology degreewise.
#[derive(Clone, Debug)]
pub struct PresentationTarget<F: Field> {
    pub expected: HilbertSeries,
    pub candidates: Vec<(String, Element<F>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComparisonVerdict {
    Pass,
    SeriesMismatch {
        degree: u32,
        computed: usize,
        expected: usize,
    },
    SpanDeficit {
        degree: u32,
        spanned: usize,
        betti: usize,
    },
}

impl ComparisonVerdict {
    pub fn passed(&self) -> bool {
        *self == ComparisonVerdict::Pass
    }
}

/// PASS iff the betti series equals the target series on `0..=n_max`
/// and, when candidates are given, the subalgebra they generate spans
/// the cohomology degreewise.
pub fn compare_presentation<F: Field>(
    report: &CohomologyReport<F>,
    target: &PresentationTarget<F>,
    n_max: u32,
) -> Result<ComparisonVerdict> {
    if n_max > report.n_max() {
        return Err(Error::Input(format!(
            "comparison range {n_max} exceeds the report range {}",
            report.n_max()
        )));
    }
    if target.expected.dims.len() < n_max as usize + 1 {
        return Err(Error::Input(format!(
            "target series must cover degrees 0..={n_max}"
        )));
    }
    for n in 0..=n_max {
        let computed = report.betti(n);
        let expected = target.expected.dim(n as usize);
        if computed != expected {
            return Ok(ComparisonVerdict::SeriesMismatch {
                degree: n,
                computed,
                expected,
            });
        }
    }
    if target.candidates.is_empty() {
        return Ok(ComparisonVerdict::Pass);
    }

    for (name, elt) in &target.candidates {
        if elt.is_zero() || elt.homogeneous_degree().is_none() {
            return Err(Error::Input(format!(
                "candidate `{name}` must be homogeneous and nonzero"
            )));
        }
        let de = report.differential.apply(elt)?;
        if !de.is_zero() {
            return Err(Error::Input(format!("candidate `{name}` is not a cocycle")));
        }
    }

    let f = report.algebra.field().clone();
    let degrees: Vec<u32> = target
        .candidates
        .iter()
        .map(|(_, e)| e.homogeneous_degree().expect("validated"))
        .collect();
    for n in 0..=n_max {
        let products = candidate_products(&target.candidates, &degrees, n)?;
        let mut span = Echelon::new(f.clone());
        for p in products {
            if p.is_zero() {
                continue;
            }
            let row = p.sparse_coords(&report.indexes[n as usize])?;
            let residual = report.boundary_echelons[n as usize].reduce(row);
            if !residual.is_empty() {
                span.insert(residual);
            }
        }
        let spanned = span.rank();
        let betti = report.betti(n);
        if spanned != betti {
            return Ok(ComparisonVerdict::SpanDeficit {
                degree: n,
                spanned,
                betti,
            });
        }
    }
    Ok(ComparisonVerdict::Pass)
}

/// All products `prod_i c_i^{e_i}` of total degree exactly `n`.
fn candidate_products<F: Field>(
    candidates: &[(String, Element<F>)],
    degrees: &[u32],
    n: u32,
) -> Result<Vec<Element<F>>> {
    fn rec<F: Field>(
        candidates: &[(String, Element<F>)],
        degrees: &[u32],
        idx: usize,
        remaining: u32,
        acc: &Element<F>,
        out: &mut Vec<Element<F>>,
    ) -> Result<()> {
        if idx == candidates.len() {
            if remaining == 0 {
                out.push(acc.clone());
            }
            return Ok(());
        }
        let d = degrees[idx];
        let mut power = acc.clone();
        let mut e = 0u32;
        loop {
            rec(candidates, degrees, idx + 1, remaining - e * d, &power, out)?;
            e += 1;
            if e * d > remaining {
                break;
            }
            power = power.mul(&candidates[idx].1)?;
            if power.is_zero() {
                break;
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    if let Some(first) = candidates.first() {
        let one = Element::one(first.1.algebra());
        rec(candidates, degrees, 0, n, &one, &mut out)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
