//! Pushouts (amalgamated free products) of finite-dimensional augmented
//! graded algebras, computed degreewise: alternating-word bases of the
//! free product, two-sided closure of the relations identifying the two
//! images of the common subalgebra, and Hilbert series of the quotient.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Element, HilbertSeries, Monomial};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Echelon;

/// A finite-dimensional augmented graded algebra, presented by its
/// graded basis and multiplication structure constants. Basis element 0
/// is the unit; the augmentation is the projection onto it.
#[derive(Clone, Debug)]
pub struct AugmentedAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    degrees: Vec<u32>,
    /// `products[i][j]` = coordinates of `basis_i * basis_j`.
    products: Vec<Vec<Vec<(usize, F::Elem)>>>,
}

impl<F: Field> AugmentedAlgebra<F> {
    /// Validates unitality, degree additivity, one-dimensionality of
    /// degree 0, and associativity on all basis triples.
    pub fn new(
        field: F,
        names: Vec<String>,
        degrees: Vec<u32>,
        products: Vec<Vec<Vec<(usize, F::Elem)>>>,
    ) -> Result<Self> {
        let dim = degrees.len();
        if dim == 0 || degrees[0] != 0 {
            return Err(Error::Amalgam("basis element 0 must be the unit".into()));
        }
        if names.len() != dim || products.len() != dim {
            return Err(Error::Amalgam("basis data lengths disagree".into()));
        }
        if degrees.iter().skip(1).any(|&d| d == 0) {
            return Err(Error::Amalgam("degree-0 component must be one-dimensional".into()));
        }
        let alg = AugmentedAlgebra {
            field,
            names,
            degrees,
            products,
        };
        for i in 0..dim {
            if alg.products[i].len() != dim {
                return Err(Error::Amalgam("structure constant table is ragged".into()));
            }
            // Unitality.
            if *alg.product(0, i) != alg.unit_vec(i) || *alg.product(i, 0) != alg.unit_vec(i) {
                return Err(Error::Amalgam(format!(
                    "basis element 0 is not a unit for `{}`",
                    alg.names[i]
                )));
            }
            // Degree additivity.
            for j in 0..dim {
                for (k, _) in alg.product(i, j) {
                    if alg.degrees[*k] != alg.degrees[i] + alg.degrees[j] {
                        return Err(Error::Amalgam(format!(
                            "product `{} * {}` is not degree-additive",
                            alg.names[i], alg.names[j]
                        )));
                    }
                }
            }
        }
        // Associativity on all basis triples.
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let left = alg.mul_vec(&alg.product(i, j).clone(), k, true);
                    let right = alg.mul_vec(&alg.product(j, k).clone(), i, false);
                    if left != right {
                        return Err(Error::Amalgam(format!(
                            "associativity fails on ({}, {}, {})",
                            alg.names[i], alg.names[j], alg.names[k]
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Extracts the augmented-algebra structure from a graded algebra
    /// that is finite-dimensional (its basis is empty above some degree
    /// within the truncation).
    pub fn from_algebra(algebra: &Arc<Algebra<F>>) -> Result<Self> {
        let basis = finite_basis(algebra)?;
        let index: BTreeMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let field = algebra.field().clone();
        let names: Vec<String> = basis.iter().map(|m| algebra.format_monomial(m)).collect();
        let degrees: Vec<u32> = basis.iter().map(|m| m.degree()).collect();
        let mut products = Vec::with_capacity(basis.len());
        for mi in &basis {
            let ei = Element::from_monomial(algebra, mi.clone(), field.one());
            let mut row = Vec::with_capacity(basis.len());
            for mj in &basis {
                let ej = Element::from_monomial(algebra, mj.clone(), field.one());
                let prod = ei.mul(&ej)?;
                let mut coords: Vec<(usize, F::Elem)> = prod
                    .terms()
                    .map(|(m, c)| (index[m], c.clone()))
                    .collect();
                coords.sort_by_key(|(k, _)| *k);
                row.push(coords);
            }
            products.push(row);
        }
        AugmentedAlgebra::new(field, names, degrees, products)
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn product(&self, i: usize, j: usize) -> &Vec<(usize, F::Elem)> {
        &self.products[i][j]
    }

    fn unit_vec(&self, i: usize) -> Vec<(usize, F::Elem)> {
        vec![(i, self.field.one())]
    }

    /// Multiplies a coordinate vector by basis element `k` on the right
    /// (`right = true`) or left.
    fn mul_vec(
        &self,
        v: &[(usize, F::Elem)],
        k: usize,
        right: bool,
    ) -> Vec<(usize, F::Elem)> {
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (i, c) in v {
            let prod = if right {
                self.product(*i, k)
            } else {
                self.product(k, *i)
            };
            for (t, x) in prod {
                let add = self.field.mul(c, x);
                let entry = acc.entry(*t).or_insert_with(|| self.field.zero());
                *entry = self.field.add(entry, &add);
            }
        }
        acc.into_iter()
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect()
    }

    /// Dimensions per degree, 0..=n_max.
    pub fn hilbert(&self, n_max: u32) -> HilbertSeries {
        let mut dims = vec![0usize; n_max as usize + 1];
        for &d in &self.degrees {
            if d <= n_max {
                dims[d as usize] += 1;
            }
        }
        HilbertSeries::new(dims)
    }

    fn max_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }
}

/// The full monomial basis of a finite-dimensional graded algebra, in
/// degree order. Fails when the algebra could have basis elements or
/// products outside the truncation window: the top occupied degree must
/// be at most half the truncation.
pub fn finite_basis<F: Field>(algebra: &Arc<Algebra<F>>) -> Result<Vec<Monomial>> {
    let trunc = algebra.truncation();
    let mut basis: Vec<Monomial> = Vec::new();
    let mut top_seen = 0u32;
    for n in 0..=trunc {
        let level = algebra.monomial_basis(n)?;
        if !level.is_empty() {
            top_seen = n;
        }
        basis.extend(level);
    }
    if 2 * top_seen > trunc {
        return Err(Error::Amalgam(format!(
            "algebra is not visibly finite-dimensional: basis nonempty at degree {top_seen} \
             with truncation {trunc}"
        )));
    }
    Ok(basis)
}

/// Coordinates, over the [`finite_basis`] ordering of `target`, of the
/// images of every basis element of `c_algebra` under the algebra map
/// sending each generator of `c_algebra` to the given element. The
/// result is the embedding table an [`AmalgamSpec`] expects.
pub fn embedding_from_generator_images<F: Field>(
    c_algebra: &Arc<Algebra<F>>,
    target: &Arc<Algebra<F>>,
    images: &BTreeMap<String, Element<F>>,
) -> Result<Vec<Vec<(usize, F::Elem)>>> {
    for gen in c_algebra.generators() {
        if !images.contains_key(&gen.name) {
            return Err(Error::Amalgam(format!(
                "missing image for generator `{}`",
                gen.name
            )));
        }
    }
    let target_basis = finite_basis(target)?;
    let index: BTreeMap<Monomial, usize> = target_basis
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let c_basis = finite_basis(c_algebra)?;
    let mut out = Vec::with_capacity(c_basis.len());
    for m in &c_basis {
        let mut img = Element::one(target);
        for &(g, e) in m.factors() {
            let name = &c_algebra.generators()[g as usize].name;
            img = img.mul(&images[name].pow(e)?)?;
        }
        let mut coords: Vec<(usize, F::Elem)> = img
            .terms()
            .map(|(mono, c)| {
                index
                    .get(mono)
                    .map(|i| (*i, c.clone()))
                    .ok_or_else(|| Error::Amalgam("image leaves the collected basis".into()))
            })
            .collect::<Result<_>>()?;
        coords.sort_by_key(|(i, _)| *i);
        out.push(coords);
    }
    Ok(out)
}

/// Which factor of the free product a letter comes from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Side {
    A,
    B,
}

/// An alternating word in positive-degree basis elements of the two
/// factors. The empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Word {
    letters: Vec<(Side, usize)>,
}

impl Word {
    pub fn one() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[(Side, usize)] {
        &self.letters
    }
}

/// A linear combination of alternating words.
#[derive(Clone, PartialEq, Eq, Debug)]
struct FreeElement<F: Field> {
    terms: BTreeMap<Word, F::Elem>,
}

/// A pushout datum: factors `A`, `B`, common subalgebra `C`, and the
/// two embeddings given by the images of every `C`-basis element.
#[derive(Clone, Debug)]
pub struct AmalgamSpec<F: Field> {
    pub a: AugmentedAlgebra<F>,
    pub b: AugmentedAlgebra<F>,
    pub c: AugmentedAlgebra<F>,
    /// `phi_a[i]` = coordinates in `A` of the i-th `C`-basis element.
    pub phi_a: Vec<Vec<(usize, F::Elem)>>,
    pub phi_b: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> AmalgamSpec<F> {
    pub fn new(
        a: AugmentedAlgebra<F>,
        b: AugmentedAlgebra<F>,
        c: AugmentedAlgebra<F>,
        phi_a: Vec<Vec<(usize, F::Elem)>>,
        phi_b: Vec<Vec<(usize, F::Elem)>>,
    ) -> Result<Self> {
        let spec = AmalgamSpec {
            a,
            b,
            c,
            phi_a,
            phi_b,
        };
        spec.validate_map(Side::A)?;
        spec.validate_map(Side::B)?;
        Ok(spec)
    }

    fn factor(&self, side: Side) -> &AugmentedAlgebra<F> {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    fn map(&self, side: Side) -> &Vec<Vec<(usize, F::Elem)>> {
        match side {
            Side::A => &self.phi_a,
            Side::B => &self.phi_b,
        }
    }

    /// Checks that an embedding is unital, degree-preserving,
    /// multiplicative on all basis pairs, and injective.
    fn validate_map(&self, side: Side) -> Result<()> {
        let f = self.c.field.clone();
        let target = self.factor(side);
        let phi = self.map(side);
        let label = match side {
            Side::A => "phi_A",
            Side::B => "phi_B",
        };
        if phi.len() != self.c.dim() {
            return Err(Error::Amalgam(format!("{label} must be given on every C basis element")));
        }
        if phi[0] != vec![(0usize, f.one())] {
            return Err(Error::Amalgam(format!("{label} is not unital")));
        }
        for (i, img) in phi.iter().enumerate() {
            for (t, c) in img {
                if f.is_zero(c) {
                    return Err(Error::Amalgam(format!("{label} has an explicit zero entry")));
                }
                if target.degrees[*t] != self.c.degrees[i] {
                    return Err(Error::Amalgam(format!(
                        "{label} does not preserve the degree of `{}`",
                        self.c.names[i]
                    )));
                }
            }
        }
        // Multiplicativity on all basis pairs.
        for i in 0..self.c.dim() {
            for j in 0..self.c.dim() {
                let lhs = self.push_product(side, self.c.product(i, j));
                let rhs = mul_coords(target, &phi[i], &phi[j]);
                if lhs != rhs {
                    return Err(Error::Amalgam(format!(
                        "{label} is not multiplicative on ({}, {})",
                        self.c.names[i], self.c.names[j]
                    )));
                }
            }
        }
        // Injectivity, degree by degree.
        let max_deg = self.c.max_degree();
        for d in 0..=max_deg {
            let c_indices: Vec<usize> = (0..self.c.dim())
                .filter(|&i| self.c.degrees[i] == d)
                .collect();
            if c_indices.is_empty() {
                continue;
            }
            let mut ech = Echelon::new(f.clone());
            let mut rank = 0;
            for &i in &c_indices {
                let mut row = phi[i].clone();
                row.sort_by_key(|(t, _)| *t);
                if ech.insert(row).is_some() {
                    rank += 1;
                }
            }
            if rank != c_indices.len() {
                return Err(Error::Amalgam(format!("{label} is not injective in degree {d}")));
            }
        }
        Ok(())
    }

    /// Image under phi of a coordinate vector on `C`.
    fn push_product(&self, side: Side, v: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
        let f = self.c.field.clone();
        let phi = self.map(side);
        let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
        for (i, c) in v {
            for (t, x) in &phi[*i] {
                let add = f.mul(c, x);
                let entry = acc.entry(*t).or_insert_with(|| f.zero());
                *entry = f.add(entry, &add);
            }
        }
        acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
    }
}

fn mul_coords<F: Field>(
    alg: &AugmentedAlgebra<F>,
    u: &[(usize, F::Elem)],
    v: &[(usize, F::Elem)],
) -> Vec<(usize, F::Elem)> {
    let f = alg.field.clone();
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (i, c) in u {
        for (j, x) in v {
            for (t, y) in alg.product(*i, *j) {
                let add = f.mul(&f.mul(c, x), y);
                let entry = acc.entry(*t).or_insert_with(|| f.zero());
                *entry = f.add(entry, &add);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect()
}

/// The alternating-word basis of `(A * B)_n`: words in positive-degree
/// basis elements with strictly alternating sides, in canonical order.
pub fn free_product_basis<F: Field>(
    a: &AugmentedAlgebra<F>,
    b: &AugmentedAlgebra<F>,
    n: u32,
) -> Vec<Word> {
    fn rec<F: Field>(
        a: &AugmentedAlgebra<F>,
        b: &AugmentedAlgebra<F>,
        remaining: u32,
        last: Option<Side>,
        word: &mut Vec<(Side, usize)>,
        out: &mut Vec<Word>,
    ) {
        if remaining == 0 {
            out.push(Word { letters: word.clone() });
            return;
        }
        for side in [Side::A, Side::B] {
            if last == Some(side) {
                continue;
            }
            let factor = match side {
                Side::A => a,
                Side::B => b,
            };
            for i in 1..factor.dim() {
                let d = factor.degrees[i];
                if d > remaining {
                    continue;
                }
                word.push((side, i));
                rec(a, b, remaining - d, Some(side), word, out);
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(a, b, n, None, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Concatenation product in the free product; adjacent letters from the
/// same side merge through that factor's structure constants. Products
/// of positive-degree elements stay positive, so words stay alternating.
fn word_mul<F: Field>(spec: &AmalgamSpec<F>, u: &Word, v: &Word) -> FreeElement<F> {
    let f = spec.c.field.clone();
    if u.letters.is_empty() {
        return FreeElement {
            terms: BTreeMap::from([(v.clone(), f.one())]),
        };
    }
    if v.letters.is_empty() {
        return FreeElement {
            terms: BTreeMap::from([(u.clone(), f.one())]),
        };
    }
    let (su, iu) = *u.letters.last().unwrap();
    let (sv, iv) = v.letters[0];
    if su != sv {
        let mut letters = u.letters.clone();
        letters.extend(v.letters.iter().copied());
        return FreeElement {
            terms: BTreeMap::from([(Word { letters }, f.one())]),
        };
    }
    let factor = spec.factor(su);
    let mut terms = BTreeMap::new();
    for (t, c) in factor.product(iu, iv) {
        debug_assert_ne!(*t, 0, "positive-degree products stay positive");
        let mut letters = u.letters[..u.letters.len() - 1].to_vec();
        letters.push((su, *t));
        letters.extend_from_slice(&v.letters[1..]);
        terms.insert(Word { letters }, c.clone());
    }
    FreeElement { terms }
}

fn element_mul_word<F: Field>(
    spec: &AmalgamSpec<F>,
    e: &FreeElement<F>,
    w: &Word,
    on_right: bool,
) -> FreeElement<F> {
    let f = spec.c.field.clone();
    let mut terms: BTreeMap<Word, F::Elem> = BTreeMap::new();
    for (word, c) in &e.terms {
        let prod = if on_right {
            word_mul(spec, word, w)
        } else {
            word_mul(spec, w, word)
        };
        for (t, x) in prod.terms {
            let add = f.mul(c, &x);
            let entry = terms.entry(t).or_insert_with(|| f.zero());
            *entry = f.add(entry, &add);
        }
    }
    terms.retain(|_, c| !f.is_zero(c));
    FreeElement { terms }
}

/// The relation `phi_A(c) - phi_B(c)` for each positive-degree basis
/// element of `C`, as length-one-word combinations.
fn relation_elements<F: Field>(spec: &AmalgamSpec<F>) -> Vec<(u32, FreeElement<F>)> {
    let f = spec.c.field.clone();
    let mut relations = Vec::new();
    for i in 1..spec.c.dim() {
        let mut terms: BTreeMap<Word, F::Elem> = BTreeMap::new();
        for (t, c) in &spec.phi_a[i] {
            terms.insert(
                Word {
                    letters: vec![(Side::A, *t)],
                },
                c.clone(),
            );
        }
        for (t, c) in &spec.phi_b[i] {
            let entry = terms
                .entry(Word {
                    letters: vec![(Side::B, *t)],
                })
                .or_insert_with(|| f.zero());
            *entry = f.sub(entry, c);
        }
        terms.retain(|_, c| !f.is_zero(c));
        if !terms.is_empty() {
            relations.push((spec.c.degrees[i], FreeElement { terms }));
        }
    }
    relations
}

/// Reduced echelon of the degree-`n` slice of the two-sided relation
/// ideal, over the given word index.
fn relation_span<F: Field>(
    spec: &AmalgamSpec<F>,
    n: u32,
    index: &BTreeMap<Word, usize>,
) -> Echelon<F> {
    let mut ech = Echelon::new(spec.c.field.clone());
    for (dc, rel) in relation_elements(spec) {
        if dc > n {
            continue;
        }
        for dl in 0..=(n - dc) {
            let dr = n - dc - dl;
            for left in free_product_basis(&spec.a, &spec.b, dl) {
                let lr = element_mul_word(spec, &rel, &left, false);
                if lr.terms.is_empty() {
                    continue;
                }
                for right in free_product_basis(&spec.a, &spec.b, dr) {
                    let lrr = element_mul_word(spec, &lr, &right, true);
                    if lrr.terms.is_empty() {
                        continue;
                    }
                    let mut row: Vec<(usize, F::Elem)> = lrr
                        .terms
                        .iter()
                        .map(|(w, c)| (index[w], c.clone()))
                        .collect();
                    row.sort_by_key(|(i, _)| *i);
                    ech.insert(row);
                }
            }
        }
    }
    ech
}

fn word_index<F: Field>(spec: &AmalgamSpec<F>, n: u32) -> (Vec<Word>, BTreeMap<Word, usize>) {
    let words = free_product_basis(&spec.a, &spec.b, n);
    let index = words
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    (words, index)
}

/// Hilbert series of the pushout `(A * B) / <phi_A(c) - phi_B(c)>` on
/// degrees `0..=n_max`. The relation ideal is closed two-sidedly within
/// each degree by multiplying with basis words on both sides.
pub fn amalgam_hilbert<F: Field>(spec: &AmalgamSpec<F>, n_max: u32) -> Result<HilbertSeries> {
    let mut dims = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let (words, index) = word_index(spec, n);
        let ech = relation_span(spec, n, &index);
        dims.push(words.len() - ech.rank());
    }
    Ok(HilbertSeries::new(dims))
}

/// True when the image of `value` (a linear combination of degree-`n`
/// words) is nonzero in the amalgam quotient.
pub fn nonzero_in_amalgam<F: Field>(
    spec: &AmalgamSpec<F>,
    value: &[(Word, F::Elem)],
    n: u32,
) -> Result<bool> {
    let f = spec.c.field.clone();
    let (_, index) = word_index(spec, n);
    let ech = relation_span(spec, n, &index);
    let mut row: Vec<(usize, F::Elem)> = value
        .iter()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(w, c)| {
            index
                .get(w)
                .map(|i| (*i, c.clone()))
                .ok_or_else(|| Error::Amalgam("word has the wrong degree".into()))
        })
        .collect::<Result<_>>()?;
    row.sort_by_key(|(i, _)| *i);
    Ok(!ech.reduce(row).is_empty())
}

/// Builds a `Word` from `(side, basis-index)` pairs, checking
/// alternation and positivity.
pub fn word<F: Field>(spec: &AmalgamSpec<F>, letters: &[(Side, usize)]) -> Result<Word> {
    let mut last: Option<Side> = None;
    for &(s, i) in letters {
        if i == 0 || i >= spec.factor(s).dim() {
            return Err(Error::Amalgam(format!("letter index {i} out of range")));
        }
        if last == Some(s) {
            return Err(Error::Amalgam("letters must alternate sides".into()));
        }
        last = Some(s);
    }
    Ok(Word {
        letters: letters.to_vec(),
    })
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(s, i)| format!("{}{}", if *s == Side::A { "a" } else { "b" }, i))
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests;
