//! Seeded random sampling used to validate runs (`d^2 = 0` and the
//! signed Leibniz rule on random elements, not just generators) and by
//! the randomized property suites.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::cdga::Differential;
use crate::error::{Error, Result};
use crate::field::Field;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random homogeneous element of the given degree: random small
/// integer coefficients on the monomial basis, biased to be sparse.
pub fn random_homogeneous<F: Field, R: Rng>(
    algebra: &Arc<Algebra<F>>,
    degree: u32,
    rng: &mut R,
) -> Result<Element<F>> {
    let basis = algebra.monomial_basis(degree)?;
    let f = algebra.field().clone();
    let mut out = Element::zero(algebra);
    for m in basis {
        if rng.gen_range(0..3) == 0 {
            let c = f.from_int(rng.gen_range(-4i64..=4));
            out = out.add(&Element::from_monomial(algebra, m, c))?;
        }
    }
    Ok(out)
}

/// A random homogeneous element of some degree in `1..=max_degree`.
pub fn random_homogeneous_any<F: Field, R: Rng>(
    algebra: &Arc<Algebra<F>>,
    max_degree: u32,
    rng: &mut R,
) -> Result<Element<F>> {
    let degree = rng.gen_range(1..=max_degree);
    random_homogeneous(algebra, degree, rng)
}

/// Samples random elements and checks `d(d(x)) = 0` plus the signed
/// Leibniz rule `d(uv) = du v + (-1)^{|u|} u dv`. Returns an internal
/// error on the first violation; passing is not a proof, failing is a
/// bug.
pub fn validate_differential<F: Field>(
    algebra: &Arc<Algebra<F>>,
    d: &Differential<F>,
    seed: u64,
    cases: usize,
) -> Result<()> {
    let mut rng = rng_from_seed(seed);
    let n = algebra.truncation();
    if n < 4 {
        return Ok(());
    }
    for _ in 0..cases {
        let u = random_homogeneous_any(algebra, n / 2, &mut rng)?;
        let v = random_homogeneous_any(algebra, n / 2 - 1, &mut rng)?;
        let Some(du_deg) = u.homogeneous_degree() else {
            continue;
        };
        let dd = d.apply(&d.apply(&u)?)?;
        if !dd.is_zero() {
            return Err(Error::Differential(format!(
                "d^2 != 0 on a sampled element: {}",
                u.display()
            )));
        }
        let lhs = d.apply(&u.mul(&v)?)?;
        let du_v = d.apply(&u)?.mul(&v)?;
        let u_dv = u.mul(&d.apply(&v)?)?;
        let rhs = if du_deg % 2 == 1 {
            du_v.sub(&u_dv)?
        } else {
            du_v.add(&u_dv)?
        };
        if lhs != rhs {
            return Err(Error::Differential(format!(
                "leibniz rule fails on sampled pair ({}, {})",
                u.display(),
                v.display()
            )));
        }
    }
    Ok(())
}
