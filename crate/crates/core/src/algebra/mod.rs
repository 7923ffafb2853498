//! Presented graded algebras over an exact field: free graded-commutative
//! algebras with Koszul signs (with exterior and divided-power generator
//! flavors), free noncommutative (tensor) algebras, and graded tensor
//! products of the two. Everything is truncated at a maximum degree `N`
//! and computed degreewise: monomial bases, products, homogeneous ideal
//! quotients, one-sided module quotients and Hilbert series.

mod parse;

pub use parse::parse_element;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;


use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, SparseRow};

/// How a generator multiplies with itself.
///
/// * `Koszul` — the default graded-commutative rule: odd generators
///   square to zero in characteristic other than 2, even generators are
///   polynomial. In characteristic 2 an odd Koszul generator is *not*
///   forced square-free; use `Exterior` when square-zero is meant.
/// * `Exterior` — square zero in every characteristic.
/// * `DividedPower` — basis `x_0 = 1, x_1, x_2, ...` (exponent `i`
///   denotes the basis element `x_i` of degree `i·|x|`) with
///   `x_i · x_j = C(i+j, i) · x_{i+j}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    Koszul,
    Exterior,
    DividedPower,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub flavor: Flavor,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            flavor: Flavor::Koszul,
        }
    }

    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            flavor: Flavor::Exterior,
        }
    }

    pub fn divided_power(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            flavor: Flavor::DividedPower,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BlockKind {
    /// Generators commute up to the Koszul sign.
    Commutative,
    /// A free (tensor-algebra) block: letters do not commute.
    Free,
}

/// A run of consecutive generators sharing multiplication semantics.
/// Distinct blocks commute past each other with Koszul signs, which is
/// what makes graded tensor products of commutative and tensor algebras
/// representable in one structure.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Block {
    kind: BlockKind,
    start: usize,
    end: usize, // exclusive
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    generators: Vec<Generator>,
    blocks: Vec<Block>,
    gen_block: Vec<usize>,
    truncation: u32,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> Algebra<F> {
    fn build(
        field: F,
        generators: Vec<Generator>,
        kinds: Vec<(BlockKind, usize)>, // (kind, length) runs over the generator list
        truncation: u32,
    ) -> Result<Arc<Self>> {
        if truncation < 1 {
            return Err(Error::Algebra("truncation must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !is_identifier(&g.name) {
                return Err(Error::Algebra(format!("bad generator name `{}`", g.name)));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::Algebra(format!("duplicate generator `{}`", g.name)));
            }
            if g.degree == 0 {
                return Err(Error::Algebra(format!(
                    "generator `{}` must have positive degree",
                    g.name
                )));
            }
            if g.flavor == Flavor::DividedPower && g.degree % 2 != 0 {
                return Err(Error::Algebra(format!(
                    "divided-power generator `{}` must have even degree",
                    g.name
                )));
            }
        }
        let mut blocks = Vec::new();
        let mut gen_block = Vec::new();
        let mut start = 0usize;
        for (kind, len) in kinds {
            let end = start + len;
            if kind == BlockKind::Free {
                for g in &generators[start..end] {
                    if g.flavor == Flavor::DividedPower {
                        return Err(Error::Algebra(format!(
                            "tensor blocks cannot contain divided-power generator `{}`",
                            g.name
                        )));
                    }
                }
            }
            if len > 0 {
                // Adjacent commutative blocks are one commutative block.
                match blocks.last_mut() {
                    Some(b @ Block { kind: BlockKind::Commutative, .. })
                        if kind == BlockKind::Commutative =>
                    {
                        b.end = end;
                    }
                    _ => blocks.push(Block { kind, start, end }),
                }
                let idx = blocks.len() - 1;
                for _ in start..end {
                    gen_block.push(idx);
                }
            }
            start = end;
        }
        assert_eq!(gen_block.len(), generators.len());
        Ok(Arc::new(Algebra {
            field,
            generators,
            blocks,
            gen_block,
            truncation,
        }))
    }

    /// Free graded-commutative algebra (Koszul signs).
    pub fn graded_commutative(
        field: F,
        generators: Vec<Generator>,
        truncation: u32,
    ) -> Result<Arc<Self>> {
        let n = generators.len();
        Self::build(field, generators, vec![(BlockKind::Commutative, n)], truncation)
    }

    /// Free noncommutative (tensor) algebra; monomials are words.
    pub fn tensor(field: F, generators: Vec<Generator>, truncation: u32) -> Result<Arc<Self>> {
        let n = generators.len();
        Self::build(field, generators, vec![(BlockKind::Free, n)], truncation)
    }

    /// Graded tensor product: generator lists are concatenated and the
    /// factors' blocks commute past each other with Koszul signs.
    pub fn tensor_product(a: &Arc<Self>, b: &Arc<Self>) -> Result<Arc<Self>> {
        if a.field != b.field {
            return Err(Error::Algebra("tensor product over different fields".into()));
        }
        let mut generators = a.generators.clone();
        generators.extend(b.generators.iter().cloned());
        let mut kinds = Vec::new();
        for blk in a.blocks.iter().chain(b.blocks.iter()) {
            kinds.push((blk.kind, blk.end - blk.start));
        }
        Self::build(
            a.field.clone(),
            generators,
            kinds,
            a.truncation.min(b.truncation),
        )
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    /// True when every block is free (a pure tensor algebra).
    pub fn is_tensor(&self) -> bool {
        !self.blocks.is_empty() && self.blocks.iter().all(|b| b.kind == BlockKind::Free)
    }

    /// True when some block is free, so ideals must be closed two-sidedly.
    pub fn has_free_block(&self) -> bool {
        self.blocks.iter().any(|b| b.kind == BlockKind::Free)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// The algebra on a subset of the generators (ascending indices),
    /// with block structure and truncation carried over.
    pub fn select_generators(&self, keep: &[usize]) -> Result<Arc<Self>> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.iter().any(|&g| g >= self.generators.len()) {
            return Err(Error::Algebra("generator index out of range".into()));
        }
        let generators: Vec<Generator> =
            keep.iter().map(|&g| self.generators[g].clone()).collect();
        let kinds: Vec<(BlockKind, usize)> = self
            .blocks
            .iter()
            .map(|b| {
                let len = keep.iter().filter(|&&g| g >= b.start && g < b.end).count();
                (b.kind, len)
            })
            .collect();
        Self::build(self.field.clone(), generators, kinds, self.truncation)
    }

    fn gen_degree(&self, g: u16) -> u32 {
        self.generators[g as usize].degree
    }

    fn factor_degree(&self, (g, e): (u16, u32)) -> u32 {
        self.gen_degree(g) * e
    }

    /// Exponent cap for a generator in a commutative block, as far as
    /// monomials of degree at most `limit` are concerned.
    fn exponent_cap(&self, g: usize, limit: u32) -> u32 {
        let gen = &self.generators[g];
        let by_degree = limit / gen.degree;
        match gen.flavor {
            Flavor::Exterior => by_degree.min(1),
            Flavor::Koszul => {
                if gen.degree % 2 == 1 && self.field.characteristic() != 2 {
                    by_degree.min(1)
                } else {
                    by_degree
                }
            }
            Flavor::DividedPower => by_degree,
        }
    }

    /// Merges two adjacent equal-generator factors; `None` means the
    /// product is zero. The returned scalar is 1 except for divided
    /// powers, where it is the binomial `C(e1+e2, e1)`.
    fn merge_factors(&self, g: u16, e1: u32, e2: u32) -> Option<(F::Elem, (u16, u32))> {
        let gen = &self.generators[g as usize];
        let block = &self.blocks[self.gen_block[g as usize]];
        let e = e1 + e2;
        match (block.kind, gen.flavor) {
            (BlockKind::Free, _) => Some((self.field.one(), (g, e))),
            (_, Flavor::Exterior) => None,
            (_, Flavor::Koszul) => {
                if gen.degree % 2 == 1 && self.field.characteristic() != 2 {
                    None
                } else {
                    Some((self.field.one(), (g, e)))
                }
            }
            (_, Flavor::DividedPower) => {
                let binom = num_integer::binomial(BigInt::from(e), BigInt::from(e1));
                let c = self.field.from_bigint(&binom);
                if self.field.is_zero(&c) {
                    None
                } else {
                    Some((c, (g, e)))
                }
            }
        }
    }

    /// Whether two adjacent factors are out of canonical order.
    fn must_swap(&self, g1: u16, g2: u16) -> bool {
        let b1 = self.gen_block[g1 as usize];
        let b2 = self.gen_block[g2 as usize];
        if b1 != b2 {
            return b1 > b2;
        }
        match self.blocks[b1].kind {
            BlockKind::Commutative => g1 > g2,
            BlockKind::Free => false,
        }
    }

    /// Normalizes a factor sequence to canonical form, accumulating the
    /// Koszul sign and divided-power coefficients. `None` means zero.
    fn normalize_factors(&self, mut factors: Vec<(u16, u32)>) -> Option<(F::Elem, Monomial)> {
        let mut coeff = self.field.one();
        let mut negative = false;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < factors.len() {
                let (g1, e1) = factors[i];
                let (g2, e2) = factors[i + 1];
                if g1 == g2 {
                    let (c, merged) = self.merge_factors(g1, e1, e2)?;
                    coeff = self.field.mul(&coeff, &c);
                    factors.splice(i..i + 2, [merged]);
                    changed = true;
                    // A merge can create a new adjacency on the left.
                    i = i.saturating_sub(1);
                } else if self.must_swap(g1, g2) {
                    let odd1 = self.factor_degree((g1, e1)) % 2 == 1;
                    let odd2 = self.factor_degree((g2, e2)) % 2 == 1;
                    if odd1 && odd2 {
                        negative = !negative;
                    }
                    factors.swap(i, i + 1);
                    changed = true;
                    i = i.saturating_sub(1);
                } else {
                    i += 1;
                }
            }
            if !changed {
                break;
            }
        }
        if negative {
            coeff = self.field.neg(&coeff);
        }
        let degree = factors.iter().map(|&f| self.factor_degree(f)).sum();
        Some((coeff, Monomial { degree, factors }))
    }

    /// Product of two canonical monomials: scalar multiplier (Koszul
    /// sign, divided-power binomials) and the canonical result. `None`
    /// when the product vanishes identically.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(F::Elem, Monomial)> {
        let mut factors = a.factors.clone();
        factors.extend(b.factors.iter().copied());
        self.normalize_factors(factors)
    }

    /// The canonical basis of the degree-`n` component of the free
    /// algebra, in canonical order.
    pub fn monomial_basis(&self, n: u32) -> Result<Vec<Monomial>> {
        if n > self.truncation {
            return Err(Error::DegreeAboveTruncation {
                degree: n,
                truncation: self.truncation,
            });
        }
        let mut acc: Vec<Vec<(u16, u32)>> = vec![Vec::new()];
        let mut degrees: Vec<u32> = vec![0];
        for block in &self.blocks {
            let mut next_acc = Vec::new();
            let mut next_degrees = Vec::new();
            for (prefix, &used) in acc.iter().zip(&degrees) {
                for (part, pdeg) in self.block_monomials(block, n - used) {
                    let mut f = prefix.clone();
                    f.extend(part);
                    next_acc.push(f);
                    next_degrees.push(used + pdeg);
                }
            }
            acc = next_acc;
            degrees = next_degrees;
        }
        let mut out: Vec<Monomial> = acc
            .into_iter()
            .zip(degrees)
            .filter(|&(_, d)| d == n)
            .map(|(factors, degree)| Monomial { degree, factors })
            .collect();
        out.sort();
        Ok(out)
    }

    /// All block-monomials of degree at most `limit`, with their degrees.
    fn block_monomials(&self, block: &Block, limit: u32) -> Vec<(Vec<(u16, u32)>, u32)> {
        match block.kind {
            BlockKind::Commutative => {
                let mut out = Vec::new();
                let mut current = Vec::new();
                self.commutative_rec(block.start, block.end, limit, &mut current, 0, &mut out);
                out
            }
            BlockKind::Free => {
                let mut out = Vec::new();
                for d in 0..=limit {
                    self.words_of_degree(block, d, &mut out);
                }
                out
            }
        }
    }

    fn commutative_rec(
        &self,
        g: usize,
        end: usize,
        limit: u32,
        current: &mut Vec<(u16, u32)>,
        degree: u32,
        out: &mut Vec<(Vec<(u16, u32)>, u32)>,
    ) {
        if g == end {
            out.push((current.clone(), degree));
            return;
        }
        let cap = self.exponent_cap(g, limit - degree);
        for e in 0..=cap {
            if e > 0 {
                current.push((g as u16, e));
            }
            self.commutative_rec(
                g + 1,
                end,
                limit,
                current,
                degree + e * self.generators[g].degree,
                out,
            );
            if e > 0 {
                current.pop();
            }
        }
    }

    fn words_of_degree(&self, block: &Block, d: u32, out: &mut Vec<(Vec<(u16, u32)>, u32)>) {
        fn rec<F: Field>(
            alg: &Algebra<F>,
            block: &Block,
            remaining: u32,
            word: &mut Vec<(u16, u32)>,
            out: &mut Vec<(Vec<(u16, u32)>, u32)>,
            total: u32,
        ) {
            if remaining == 0 {
                out.push((word.clone(), total));
                return;
            }
            for g in block.start..block.end {
                let deg = alg.generators[g].degree;
                if deg > remaining {
                    continue;
                }
                let appended_same = matches!(word.last(), Some(&(last, _)) if last as usize == g);
                if appended_same {
                    word.last_mut().unwrap().1 += 1;
                } else {
                    word.push((g as u16, 1));
                }
                rec(alg, block, remaining - deg, word, out, total);
                if appended_same {
                    word.last_mut().unwrap().1 -= 1;
                } else {
                    word.pop();
                }
            }
        }
        rec(self, block, d, &mut Vec::new(), out, d);
    }

    /// Renders a canonical monomial using generator names. Factors are
    /// concatenated when every name is a single character (`rs`,
    /// `a^2b`), and joined with `*` otherwise. Divided-power basis
    /// elements print as `x[i]`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.factors.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = m
            .factors
            .iter()
            .map(|&(g, e)| {
                let gen = &self.generators[g as usize];
                match (gen.flavor, e) {
                    (Flavor::DividedPower, e) if e > 1 => format!("{}[{e}]", gen.name),
                    (_, 1) => gen.name.clone(),
                    (_, e) => format!("{}^{e}", gen.name),
                }
            })
            .collect();
        let multichar = m
            .factors
            .iter()
            .any(|&(g, _)| self.generators[g as usize].name.len() > 1);
        if multichar {
            parts.join("*")
        } else {
            parts.concat()
        }
    }
}

/// A canonical basis monomial. In commutative blocks the factors are
/// sorted by generator with exponents; in free blocks they are the word
/// in run-length encoding. `degree` is the total degree.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial {
    degree: u32,
    factors: Vec<(u16, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            degree: 0,
            factors: Vec::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(u16, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// True if some factor uses one of the listed generators.
    pub fn mentions(&self, gens: &BTreeSet<usize>) -> bool {
        self.factors.iter().any(|(g, _)| gens.contains(&(*g as usize)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Graded order; ties broken lexicographically by generator
        // declaration order (earlier generators first, higher exponent
        // first, which is graded-lex on exponent vectors).
        self.degree.cmp(&other.degree).then_with(|| {
            let lhs = self.factors.iter().map(|&(g, e)| (g, std::cmp::Reverse(e)));
            let rhs = other.factors.iter().map(|&(g, e)| (g, std::cmp::Reverse(e)));
            lhs.cmp(rhs)
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse element: a finite map from canonical monomials to nonzero
/// coefficients, owned by an algebra. The `truncation_loss` flag is
/// sticky and records that some product term above the truncation was
/// dropped somewhere in this value's history.
#[derive(Clone, Debug)]
pub struct Element<F: Field> {
    algebra: Arc<Algebra<F>>,
    terms: BTreeMap<Monomial, F::Elem>,
    truncation_loss: bool,
}

impl<F: Field> PartialEq for Element<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Element<F> {}

impl<F: Field> Element<F> {
    pub fn zero(algebra: &Arc<Algebra<F>>) -> Self {
        Element {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
            truncation_loss: false,
        }
    }

    pub fn one(algebra: &Arc<Algebra<F>>) -> Self {
        Element::from_monomial(algebra, Monomial::one(), algebra.field.one())
    }

    pub fn generator(algebra: &Arc<Algebra<F>>, g: usize) -> Self {
        let m = Monomial {
            degree: algebra.generators[g].degree,
            factors: vec![(g as u16, 1)],
        };
        Element::from_monomial(algebra, m, algebra.field.one())
    }

    /// The divided-power basis element `x_i` for generator `g`.
    pub fn divided_power(algebra: &Arc<Algebra<F>>, g: usize, i: u32) -> Self {
        assert_eq!(algebra.generators[g].flavor, Flavor::DividedPower);
        if i == 0 {
            return Element::one(algebra);
        }
        let m = Monomial {
            degree: algebra.generators[g].degree * i,
            factors: vec![(g as u16, i)],
        };
        Element::from_monomial(algebra, m, algebra.field.one())
    }

    pub fn from_monomial(algebra: &Arc<Algebra<F>>, m: Monomial, c: F::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !algebra.field.is_zero(&c) {
            terms.insert(m, c);
        }
        Element {
            algebra: algebra.clone(),
            terms,
            truncation_loss: false,
        }
    }

    pub fn scalar(algebra: &Arc<Algebra<F>>, c: F::Elem) -> Self {
        Element::from_monomial(algebra, Monomial::one(), c)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        &self.algebra.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncation_loss(&self) -> bool {
        self.truncation_loss
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.same_algebra(other) {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    /// Degree when homogeneous (zero counts as homogeneous of any
    /// degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree;
        it.all(|m| m.degree == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: F::Elem) {
        let f = self.algebra.field.clone();
        if f.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = f.add(e.get(), &c);
                if f.is_zero(&sum) {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.truncation_loss |= other.truncation_loss;
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let f = &self.algebra.field;
        Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
            truncation_loss: self.truncation_loss,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = &self.algebra.field;
        if f.is_zero(c) {
            return Element::zero(&self.algebra);
        }
        Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), f.mul(v, c)))
                .collect(),
            truncation_loss: self.truncation_loss,
        }
    }

    /// Bilinear product. Terms above the truncation are dropped and the
    /// sticky loss flag is set on the result.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let alg = &self.algebra;
        let f = &alg.field;
        let mut out = Element::zero(alg);
        out.truncation_loss = self.truncation_loss || other.truncation_loss;
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1.degree + m2.degree > alg.truncation {
                    out.truncation_loss = true;
                    continue;
                }
                if let Some((k, m)) = alg.mul_monomials(m1, m2) {
                    let c = f.mul(&f.mul(c1, c2), &k);
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut out = Element::one(&self.algebra);
        for _ in 0..e {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The graded commutator `uv - (-1)^{|u||v|} vu` for homogeneous
    /// arguments.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        let du = self
            .homogeneous_degree()
            .ok_or_else(|| Error::Algebra("commutator needs homogeneous arguments".into()))?;
        let dv = other
            .homogeneous_degree()
            .ok_or_else(|| Error::Algebra("commutator needs homogeneous arguments".into()))?;
        let uv = self.mul(other)?;
        let vu = other.mul(self)?;
        if (du * dv) % 2 == 1 {
            uv.add(&vu)
        } else {
            uv.sub(&vu)
        }
    }

    /// The homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> Self {
        Element {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            truncation_loss: self.truncation_loss,
        }
    }

    /// Coordinates in a degree slice, given the monomial-to-column map.
    pub fn sparse_coords(&self, index: &BTreeMap<Monomial, usize>) -> Result<SparseRow<F>> {
        let mut row: SparseRow<F> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let col = index
                .get(m)
                .ok_or_else(|| Error::Algebra("monomial outside the degree slice".into()))?;
            row.push((*col, c.clone()));
        }
        row.sort_by_key(|(c, _)| *c);
        Ok(row)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = &self.algebra.field;
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = f.display(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ms = self.algebra.format_monomial(m);
            if m.is_one() {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&ms);
            } else {
                out.push_str(&format!("{mag}*{ms}"));
            }
        }
        out
    }
}

impl<F: Field> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// A homogeneous ideal, given by relation elements of positive degree.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    algebra: Arc<Algebra<F>>,
    relations: Vec<Element<F>>,
}

impl<F: Field> Ideal<F> {
    pub fn new(algebra: &Arc<Algebra<F>>, relations: Vec<Element<F>>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if !r.same_algebra(&Element::zero(algebra)) {
                return Err(Error::MixedAlgebras);
            }
            if r.is_zero() {
                return Err(Error::Algebra(format!("relation #{i} is zero")));
            }
            match r.homogeneous_degree() {
                Some(d) if d >= 1 => {}
                _ => {
                    return Err(Error::Algebra(format!(
                        "relation #{i} must be homogeneous of positive degree"
                    )))
                }
            }
        }
        Ok(Ideal {
            algebra: algebra.clone(),
            relations,
        })
    }

    pub fn relations(&self) -> &[Element<F>] {
        &self.relations
    }
}

/// Basis of a quotient `(A/I)_n` together with the projection data that
/// rewrites arbitrary elements onto it: the reduced echelon of the
/// degree-`n` ideal slice over the full monomial basis.
#[derive(Clone, Debug)]
pub struct QuotientBasis<F: Field> {
    algebra: Arc<Algebra<F>>,
    degree: u32,
    full: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
    echelon: Echelon<F>,
    basis: Vec<Monomial>,
}

impl<F: Field> QuotientBasis<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Quotient basis monomials in canonical order.
    pub fn monomials(&self) -> &[Monomial] {
        &self.basis
    }

    /// Canonical representative supported on the quotient basis.
    pub fn reduce(&self, u: &Element<F>) -> Result<Element<F>> {
        match u.homogeneous_degree() {
            None if u.is_zero() => return Ok(u.clone()),
            Some(d) if d == self.degree => {}
            _ => {
                return Err(Error::Algebra(format!(
                    "reduce expects a homogeneous element of degree {}",
                    self.degree
                )))
            }
        }
        let row = u.sparse_coords(&self.index)?;
        let red = self.echelon.reduce(row);
        let mut out = Element::zero(&self.algebra);
        out.truncation_loss = u.truncation_loss;
        for (col, c) in red {
            out.add_term(self.full[col].clone(), c);
        }
        Ok(out)
    }

    /// Coordinates of the class of `u` in the quotient basis.
    pub fn project(&self, u: &Element<F>) -> Result<Vec<F::Elem>> {
        let f = self.algebra.field.clone();
        let reduced = self.reduce(u)?;
        let pos: BTreeMap<&Monomial, usize> =
            self.basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut coords = vec![f.zero(); self.basis.len()];
        for (m, c) in &reduced.terms {
            let i = pos
                .get(m)
                .expect("reduced element is supported on the quotient basis");
            coords[*i] = c.clone();
        }
        Ok(coords)
    }
}

/// Basis of `(A/I)_n`, computed by spanning the degree-`n` slice of the
/// ideal (one-sided multiples in commutative algebras, two-sided when a
/// free block is present) and selecting the non-pivot monomials.
pub fn quotient_basis<F: Field>(
    algebra: &Arc<Algebra<F>>,
    ideal: &Ideal<F>,
    n: u32,
) -> Result<QuotientBasis<F>> {
    if !(Arc::ptr_eq(algebra, &ideal.algebra) || **algebra == *ideal.algebra) {
        return Err(Error::MixedAlgebras);
    }
    let full = algebra.monomial_basis(n)?;
    let index: BTreeMap<Monomial, usize> =
        full.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new(algebra.field.clone());
    let two_sided = algebra.has_free_block();
    for r in ideal.relations() {
        let d = r.homogeneous_degree().expect("validated homogeneous");
        if d > n {
            continue;
        }
        if two_sided {
            for dl in 0..=(n - d) {
                let dr = n - d - dl;
                for m in algebra.monomial_basis(dl)? {
                    let left = Element::from_monomial(algebra, m, algebra.field.one());
                    let lr = left.mul(r)?;
                    if lr.is_zero() {
                        continue;
                    }
                    for mr in algebra.monomial_basis(dr)? {
                        let right = Element::from_monomial(algebra, mr, algebra.field.one());
                        let prod = lr.mul(&right)?;
                        if !prod.is_zero() {
                            echelon.insert(prod.sparse_coords(&index)?);
                        }
                    }
                }
            }
        } else {
            for m in algebra.monomial_basis(n - d)? {
                let left = Element::from_monomial(algebra, m, algebra.field.one());
                let prod = left.mul(r)?;
                if !prod.is_zero() {
                    echelon.insert(prod.sparse_coords(&index)?);
                }
            }
        }
    }
    let basis = full
        .iter()
        .enumerate()
        .filter(|(i, _)| !echelon.has_pivot(*i))
        .map(|(_, m)| m.clone())
        .collect();
    Ok(QuotientBasis {
        algebra: algebra.clone(),
        degree: n,
        full,
        index,
        echelon,
        basis,
    })
}

/// Per-degree dimensions of a graded object for degrees `0..=n_max`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    pub dims: Vec<usize>,
}

impl HilbertSeries {
    pub fn new(dims: Vec<usize>) -> Self {
        HilbertSeries { dims }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Coefficientwise product (the Kunneth count for tensor products).
    pub fn convolve(&self, other: &HilbertSeries, n_max: usize) -> HilbertSeries {
        let mut dims = vec![0usize; n_max + 1];
        for (i, a) in self.dims.iter().enumerate() {
            if i > n_max {
                break;
            }
            for (j, b) in other.dims.iter().enumerate() {
                if i + j > n_max {
                    break;
                }
                dims[i + j] += a * b;
            }
        }
        HilbertSeries { dims }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}

/// Hilbert series of `A` or `A/I` on degrees `0..=n_max`.
pub fn hilbert<F: Field>(
    algebra: &Arc<Algebra<F>>,
    ideal: Option<&Ideal<F>>,
    n_max: u32,
) -> Result<HilbertSeries> {
    let mut dims = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let d = match ideal {
            None => algebra.monomial_basis(n)?.len(),
            Some(i) => quotient_basis(algebra, i, n)?.dim(),
        };
        dims.push(d);
    }
    Ok(HilbertSeries { dims })
}

/// Dimension of `A / (A * I_sub)` in degree `n` for a tensor algebra
/// `A`, where `I_sub` is the augmentation ideal of the subalgebra
/// generated by `sub` — the degreewise shadow of `A (x)_{T(sub)} k`.
pub fn module_quotient_right<F: Field>(
    algebra: &Arc<Algebra<F>>,
    sub: &[usize],
    n: u32,
) -> Result<usize> {
    if !algebra.is_tensor() {
        return Err(Error::Algebra(
            "module quotient requires a tensor-mode algebra".into(),
        ));
    }
    for &g in sub {
        if g >= algebra.generators.len() {
            return Err(Error::Algebra(format!("no generator with index {g}")));
        }
    }
    let full = algebra.monomial_basis(n)?;
    let index: BTreeMap<Monomial, usize> =
        full.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new(algebra.field.clone());
    // Span of { m * u : u a nonempty word in the sub-generators }.
    for du in 1..=n {
        for u in sub_words(algebra, sub, du) {
            let ue = Element::from_monomial(algebra, u, algebra.field.one());
            for m in algebra.monomial_basis(n - du)? {
                let me = Element::from_monomial(algebra, m, algebra.field.one());
                let prod = me.mul(&ue)?;
                if !prod.is_zero() {
                    echelon.insert(prod.sparse_coords(&index)?);
                }
            }
        }
    }
    Ok(full.len() - echelon.rank())
}

fn sub_words<F: Field>(algebra: &Arc<Algebra<F>>, sub: &[usize], d: u32) -> Vec<Monomial> {
    fn rec<F: Field>(
        algebra: &Algebra<F>,
        sub: &[usize],
        remaining: u32,
        word: &mut Vec<(u16, u32)>,
        out: &mut Vec<Monomial>,
        total: u32,
    ) {
        if remaining == 0 {
            if !word.is_empty() {
                out.push(Monomial {
                    degree: total,
                    factors: word.clone(),
                });
            }
            return;
        }
        for &g in sub {
            let deg = algebra.generators[g].degree;
            if deg > remaining {
                continue;
            }
            let same = matches!(word.last(), Some(&(last, _)) if last as usize == g);
            if same {
                word.last_mut().unwrap().1 += 1;
            } else {
                word.push((g as u16, 1));
            }
            rec(algebra, sub, remaining - deg, word, out, total);
            if same {
                word.last_mut().unwrap().1 -= 1;
            } else {
                word.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(algebra, sub, d, &mut Vec::new(), &mut out, d);
    out
}
