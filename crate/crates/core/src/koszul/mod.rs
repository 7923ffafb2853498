//! Bigraded Koszul complexes over quotient polynomial rings and their
//! cohomology, reported as Tor slices.
//!
//! The complex is `Lambda(ext generators) (x) R` where `R` is a
//! polynomial ring modulo a homogeneous ideal, concentrated in even
//! internal degrees (so `R` is central). Each exterior generator
//! carries a bidegree `(ext, internal)` with `ext <= -1`; the
//! differential is an `R`-linear derivation of bidegree `(+1, 0)`.
//! Internally everything lives in one free graded-commutative algebra
//! on the exterior generators followed by the ring generators, graded
//! by total degree; ring parts are kept reduced modulo the ideal
//! degreewise, and bidegrees are recovered from the exterior part.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{
    parse_element, quotient_basis, Algebra, Element, Generator, Ideal, Monomial, QuotientBasis,
};
use crate::cdga::Differential;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{to_sparse, Echelon, Matrix};

/// An exterior generator of the complex with its bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGenerator {
    pub name: String,
    pub ext: i32,
    pub internal: u32,
}

/// Default floor on external degrees; columns below it are discarded.
pub const DEFAULT_EXT_FLOOR: i32 = -6;

#[derive(Clone, Debug)]
pub struct KoszulComplex<F: Field> {
    algebra: Arc<Algebra<F>>,
    ext_gens: Vec<ExtGenerator>,
    ideal: Ideal<F>,
    differential: Differential<F>,
    ext_floor: i32,
}

impl<F: Field> KoszulComplex<F> {
    /// Builds and validates the complex: bidegree bookkeeping on every
    /// differential image and `d^2 = 0` in the quotient.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: F,
        ring_generators: Vec<(String, u32)>,
        ring_relations: Vec<String>,
        ext_generators: Vec<ExtGenerator>,
        differentials: Vec<(String, String)>,
        total_truncation: u32,
        ext_floor: i32,
    ) -> Result<Self> {
        let complex = Self::new_unvalidated(
            field,
            ring_generators,
            ring_relations,
            ext_generators,
            differentials,
            total_truncation,
            ext_floor,
        )?;
        if let Some((name, value)) = complex.d_squared_witness()? {
            return Err(Error::DSquared {
                generator: name,
                value: value.display(),
            });
        }
        Ok(complex)
    }

    /// Same construction without the `d^2` gate, for probing broken data.
    #[allow(clippy::too_many_arguments)]
    pub fn new_unvalidated(
        field: F,
        ring_generators: Vec<(String, u32)>,
        ring_relations: Vec<String>,
        ext_generators: Vec<ExtGenerator>,
        differentials: Vec<(String, String)>,
        total_truncation: u32,
        ext_floor: i32,
    ) -> Result<Self> {
        for (name, d) in &ring_generators {
            if d % 2 != 0 || *d == 0 {
                return Err(Error::Koszul(format!(
                    "ring generator `{name}` must have positive even degree"
                )));
            }
        }
        let mut gens = Vec::new();
        for eg in &ext_generators {
            if eg.ext > -1 {
                return Err(Error::Koszul(format!(
                    "exterior generator `{}` must have external degree <= -1",
                    eg.name
                )));
            }
            let total = eg.ext as i64 + eg.internal as i64;
            if total < 1 {
                return Err(Error::Koszul(format!(
                    "exterior generator `{}` must have positive total degree",
                    eg.name
                )));
            }
            gens.push(Generator::exterior(eg.name.clone(), total as u32));
        }
        for (name, d) in &ring_generators {
            gens.push(Generator::new(name.clone(), *d));
        }
        let algebra = Algebra::graded_commutative(field, gens, total_truncation)?;

        let none = BTreeMap::new();
        let mut relations = Vec::new();
        for r in &ring_relations {
            let elt = parse_element(&algebra, r, &none)?;
            let ring_only = elt
                .terms()
                .all(|(m, _)| ext_degree_of(&ext_generators, m).is_none());
            if !ring_only {
                return Err(Error::Koszul(format!(
                    "ring relation `{r}` mentions exterior generators"
                )));
            }
            relations.push(elt);
        }
        let ideal = Ideal::new(&algebra, relations)?;

        let mut images = BTreeMap::new();
        for (name, expr) in &differentials {
            let Some(idx) = algebra.generator_index(name) else {
                return Err(Error::Koszul(format!("no generator named `{name}`")));
            };
            if idx >= ext_generators.len() {
                return Err(Error::Koszul(format!(
                    "`{name}` is a ring generator; the differential is R-linear"
                )));
            }
            let elt = parse_element(&algebra, expr, &none)?;
            images.insert(idx, elt);
        }
        let differential = Differential::new_unvalidated(&algebra, images)?;

        let complex = KoszulComplex {
            algebra,
            ext_gens: ext_generators,
            ideal,
            differential,
            ext_floor,
        };
        // Bidegree bookkeeping: d must be exactly (+1, 0).
        for (idx, eg) in complex.ext_gens.iter().enumerate() {
            let img = complex.differential.generator_image(idx);
            for (m, _) in img.terms() {
                let p = complex.ext_degree(m);
                if p != eg.ext + 1 {
                    return Err(Error::Koszul(format!(
                        "d({}) has a term of external degree {p}, expected {}",
                        eg.name,
                        eg.ext + 1
                    )));
                }
            }
        }
        Ok(complex)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn parse(&self, expr: &str) -> Result<Element<F>> {
        parse_element(&self.algebra, expr, &BTreeMap::new())
    }

    /// External degree of a monomial (0 for pure ring monomials).
    fn ext_degree(&self, m: &Monomial) -> i32 {
        ext_degree_of(&self.ext_gens, m).unwrap_or(0)
    }

    /// The `(ext, internal)` bidegree of a bihomogeneous element.
    pub fn bidegree(&self, u: &Element<F>) -> Result<(i32, u32)> {
        let total = u
            .homogeneous_degree()
            .ok_or_else(|| Error::Koszul("element is not homogeneous".into()))?;
        let mut ps: Vec<i32> = u.terms().map(|(m, _)| self.ext_degree(m)).collect();
        ps.dedup();
        match ps[..] {
            [p] => Ok((p, (total as i64 - p as i64) as u32)),
            _ => Err(Error::Koszul("element is not bihomogeneous".into())),
        }
    }

    /// Reduces the ring part modulo the ideal, degreewise.
    pub fn reduce(&self, u: &Element<F>) -> Result<Element<F>> {
        let mut out = Element::zero(&self.algebra);
        let mut degrees: Vec<u32> = u.terms().map(|(m, _)| m.degree()).collect();
        degrees.dedup();
        for n in degrees {
            let qb = quotient_basis(&self.algebra, &self.ideal, n)?;
            out = out.add(&qb.reduce(&u.component(n))?)?;
        }
        Ok(out)
    }

    /// `d` followed by reduction into the quotient.
    pub fn d(&self, u: &Element<F>) -> Result<Element<F>> {
        self.reduce(&self.differential.apply(u)?)
    }

    /// `d(d(g))` reduced, for every exterior generator visible below
    /// the truncation; the first violation is returned.
    pub fn d_squared_witness(&self) -> Result<Option<(String, Element<F>)>> {
        for (idx, eg) in self.ext_gens.iter().enumerate() {
            let total = (eg.ext as i64 + eg.internal as i64) as u32;
            if total + 2 > self.algebra.truncation() {
                continue;
            }
            let dd = self.d(&self.differential.generator_image(idx))?;
            if !dd.is_zero() {
                return Ok(Some((eg.name.clone(), dd)));
            }
        }
        Ok(None)
    }

    /// Reduced basis monomials of total degree `n`, bucketed by
    /// external degree (respecting the floor).
    fn slices_at(&self, qb: &QuotientBasis<F>) -> BTreeMap<i32, Vec<Monomial>> {
        let mut out: BTreeMap<i32, Vec<Monomial>> = BTreeMap::new();
        for m in qb.monomials() {
            let p = self.ext_degree(m);
            if p < self.ext_floor {
                continue;
            }
            out.entry(p).or_default().push(m.clone());
        }
        out
    }

    /// Per-bidegree cohomology up to the total-degree bound.
    pub fn tor_dimensions(&self, total_max: u32) -> Result<TorReport<F>> {
        if total_max + 1 > self.algebra.truncation() {
            return Err(Error::InsufficientTruncation {
                truncation: self.algebra.truncation(),
                context: format!("tor up to total degree {total_max} needs {}", total_max + 1),
            });
        }
        let f = self.algebra.field().clone();
        // Quotient bases and slice partitions for totals 0..=total_max+1.
        let mut slices_by_total: Vec<BTreeMap<i32, Vec<Monomial>>> = Vec::new();
        for n in 0..=total_max + 1 {
            let qb = quotient_basis(&self.algebra, &self.ideal, n)?;
            slices_by_total.push(self.slices_at(&qb));
        }

        let mut report = TorReport {
            total_max,
            slices: BTreeMap::new(),
            totals: vec![0; total_max as usize + 1],
        };
        for n in 0..=total_max {
            let nn = n as usize;
            let parts: Vec<i32> = slices_by_total[nn].keys().copied().collect();
            for p in parts {
                let space = slices_by_total[nn][&p].clone();
                let q = (n as i64 - p as i64) as u32;

                // Boundaries: images of the (p-1, q) slice at total n-1.
                let mut bnd = Echelon::new(f.clone());
                let index: BTreeMap<Monomial, usize> = space
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, m)| (m, i))
                    .collect();
                if n >= 1 {
                    if let Some(prev) = slices_by_total[nn - 1].get(&(p - 1)) {
                        for m in prev {
                            let dm =
                                self.d(&Element::from_monomial(&self.algebra, m.clone(), f.one()))?;
                            if !dm.is_zero() {
                                bnd.insert(dm.sparse_coords(&index)?);
                            }
                        }
                    }
                }
                let boundary_rank = bnd.rank();
                let boundary_pivots: std::collections::BTreeSet<usize> =
                    bnd.pivots().into_iter().collect();

                // Kernel of d on the slice, mapping into (p+1, q).
                let empty = Vec::new();
                let target = slices_by_total[nn + 1].get(&(p + 1)).unwrap_or(&empty);
                let tindex: BTreeMap<Monomial, usize> = target
                    .iter()
                    .cloned()
                    .enumerate()
                    .map(|(i, m)| (m, i))
                    .collect();
                let mut matrix = Matrix::zero(f.clone(), target.len(), space.len());
                for (j, m) in space.iter().enumerate() {
                    let dm = self.d(&Element::from_monomial(&self.algebra, m.clone(), f.one()))?;
                    for (t, c) in dm.terms() {
                        let Some(&i) = tindex.get(t) else {
                            return Err(Error::Koszul(format!(
                                "d leaves the ({}, {q}) slice: target {}",
                                p + 1,
                                self.algebra.format_monomial(t)
                            )));
                        };
                        matrix.set(i, j, c.clone());
                    }
                }
                let kernel = matrix.kernel_basis();
                let betti = kernel.len() - boundary_rank;

                let mut full = bnd;
                for v in &kernel {
                    full.insert(to_sparse(&f, v));
                }
                let mut representatives = Vec::new();
                for row in full.reduced_rows() {
                    let pivot = row.first().expect("nonzero row").0;
                    if boundary_pivots.contains(&pivot) {
                        continue;
                    }
                    let mut rep = Element::zero(&self.algebra);
                    for (col, c) in row.iter() {
                        rep = rep.add(&Element::from_monomial(
                            &self.algebra,
                            space[*col].clone(),
                            c.clone(),
                        ))?;
                    }
                    representatives.push(rep);
                }
                debug_assert_eq!(representatives.len(), betti);

                report.totals[nn] += betti;
                report.slices.insert(
                    (p, q),
                    SliceReport {
                        dim_space: space.len(),
                        betti,
                        representatives,
                    },
                );
            }
        }
        Ok(report)
    }

    /// Kernel of `d` restricted to the span of the given elements,
    /// which must be bihomogeneous of equal total degree. Returns an
    /// echelon basis of the closed combinations.
    pub fn closedness_probe(&self, span: &[Element<F>]) -> Result<Vec<Element<F>>> {
        if span.is_empty() {
            return Ok(Vec::new());
        }
        let f = self.algebra.field().clone();
        let mut total = None;
        for u in span {
            let (_, _) = self.bidegree(u)?;
            let t = u.homogeneous_degree().expect("bihomogeneous");
            match total {
                None => total = Some(t),
                Some(t0) if t0 == t => {}
                _ => {
                    return Err(Error::Koszul(
                        "span elements must share one total degree".into(),
                    ))
                }
            }
        }
        let n = total.expect("nonempty span");
        let target_qb = quotient_basis(&self.algebra, &self.ideal, n + 1)?;
        let tindex: BTreeMap<Monomial, usize> = target_qb
            .monomials()
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut matrix = Matrix::zero(f.clone(), tindex.len(), span.len());
        for (j, u) in span.iter().enumerate() {
            let du = self.d(u)?;
            for (m, c) in du.terms() {
                matrix.set(tindex[m], j, c.clone());
            }
        }
        let kernel = matrix.kernel_basis();
        let mut out = Vec::new();
        for combo in kernel {
            let mut elt = Element::zero(&self.algebra);
            for (c, u) in combo.iter().zip(span) {
                elt = elt.add(&u.scale(c))?;
            }
            out.push(self.reduce(&elt)?);
        }
        Ok(out)
    }
}

fn ext_degree_of(ext_gens: &[ExtGenerator], m: &Monomial) -> Option<i32> {
    let mut p = 0i32;
    let mut any = false;
    for &(g, e) in m.factors() {
        if let Some(eg) = ext_gens.get(g as usize) {
            p += eg.ext * e as i32;
            any = true;
        }
    }
    any.then_some(p)
}

/// Dimensions of one `(p, q)` slice of the cohomology.
#[derive(Clone, Debug)]
pub struct SliceReport<F: Field> {
    /// Dimension of the underlying slice of the complex.
    pub dim_space: usize,
    /// Dimension of the cohomology at this bidegree.
    pub betti: usize,
    pub representatives: Vec<Element<F>>,
}

/// Per-bidegree and per-total-degree cohomology dimensions.
#[derive(Clone, Debug)]
pub struct TorReport<F: Field> {
    pub total_max: u32,
    pub slices: BTreeMap<(i32, u32), SliceReport<F>>,
    pub totals: Vec<usize>,
}

impl<F: Field> TorReport<F> {
    /// Representatives across all bidegrees with `p + q = n`.
    pub fn total_representatives(&self, n: u32) -> Vec<&Element<F>> {
        self.slices
            .iter()
            .filter(|((p, q), _)| p + *q as i32 == n as i32)
            .flat_map(|(_, s)| s.representatives.iter())
            .collect()
    }
}
