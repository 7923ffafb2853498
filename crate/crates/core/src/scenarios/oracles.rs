//! Independent counting routines that generate the expected-value
//! tables for the presets. Nothing here touches the engine's basis
//! enumeration, multiplication or linear algebra: these are small
//! self-contained recursions, so they can serve as oracles for it.

/// Number of exponent vectors of total degree `n` over generators with
/// the given `(degree, exponent cap)` data (`None` = unbounded).
pub fn gc_monomial_count(gens: &[(u32, Option<u32>)], n: u32) -> usize {
    match gens.split_first() {
        None => usize::from(n == 0),
        Some((&(deg, cap), rest)) => {
            let max_e = cap.unwrap_or(u32::MAX).min(n / deg);
            (0..=max_e)
                .map(|e| gc_monomial_count(rest, n - e * deg))
                .sum()
        }
    }
}

/// Series of the free graded-commutative algebra on generators of the
/// given degrees over a characteristic-zero field: odd generators
/// square to zero, even generators are polynomial.
pub fn gc_series(degrees: &[u32], n_max: u32) -> Vec<usize> {
    let gens: Vec<(u32, Option<u32>)> = degrees
        .iter()
        .map(|&d| (d, if d % 2 == 1 { Some(1) } else { None }))
        .collect();
    (0..=n_max)
        .map(|n| gc_monomial_count(&gens, n))
        .collect()
}

/// Number of words of total degree `n` over letters of the given
/// degrees.
pub fn word_count(degrees: &[u32], n: u32) -> usize {
    if n == 0 {
        return 1;
    }
    degrees
        .iter()
        .filter(|&&d| d <= n)
        .map(|&d| word_count(degrees, n - d))
        .sum()
}

/// Number of words of total degree `n` with no two equal adjacent
/// letters (the basis of `k<letters>/<letter^2>`).
pub fn squarefree_word_count(degrees: &[u32], n: u32) -> usize {
    fn rec(degrees: &[u32], n: u32, last: Option<usize>) -> usize {
        if n == 0 {
            return 1;
        }
        degrees
            .iter()
            .enumerate()
            .filter(|&(i, &d)| d <= n && last != Some(i))
            .map(|(i, &d)| rec(degrees, n - d, Some(i)))
            .sum()
    }
    rec(degrees, n, None)
}

/// Coefficientwise product of two series, up to degree `n_max`.
pub fn convolve(a: &[usize], b: &[usize], n_max: usize) -> Vec<usize> {
    let mut out = vec![0usize; n_max + 1];
    for (i, x) in a.iter().enumerate().take(n_max + 1) {
        for (j, y) in b.iter().enumerate().take(n_max + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Dimensions of the free tensor algebra on letters of degrees 2, 3, 4
/// quotiented on the right by the positive part of the subalgebra on
/// the degree-2 letter: words not ending in that letter. Equivalently
/// the coefficients of `(1 - t^2) / (1 - t^2 - t^3 - t^4)`.
pub fn fiber_series(n_max: u32) -> Vec<usize> {
    let t: Vec<usize> = (0..=n_max).map(|n| word_count(&[2, 3, 4], n)).collect();
    (0..=n_max as usize)
        .map(|n| t[n] - if n >= 2 { t[n - 2] } else { 0 })
        .collect()
}

/// Expected betti numbers of the six-generator model with
/// `d e = a^2, d f = b^2, d h = k b g`: the surviving classes are
/// `1; a, b; g; ab; ag;` and, for each `m >= 1`, `b h^m`, `g h^m`,
/// `a b h^m`, `a g h^m` — one class in every degree from 3 on.
pub fn im_emb_series(n_max: u32) -> Vec<usize> {
    let mut dims = vec![0usize; n_max as usize + 1];
    let finite: [(u32, usize); 6] = [(0, 1), (2, 1), (2, 1), (3, 1), (4, 1), (5, 1)];
    for (d, c) in finite {
        if d <= n_max {
            dims[d as usize] += c;
        }
    }
    let mut m = 1u32;
    while 4 * m + 2 <= n_max {
        for off in [2u32, 3, 4, 5] {
            let d = 4 * m + off;
            if d <= n_max {
                dims[d as usize] += 1;
            }
        }
        m += 1;
    }
    dims
}

/// Degrees at which the model anchors are stated outright in the
/// source results: 3, 4 and every 4m+3.
pub fn im_emb_stated_degree(n: u32) -> bool {
    n == 4 || (n >= 3 && n % 4 == 3)
}

/// Frozen expected betti numbers of the parametrized-ball model
/// through degree 6, from an independent hand kernel/image computation.
pub const EMB_SERIES_THROUGH_6: [usize; 7] = [1, 0, 1, 3, 0, 2, 4];

/// `H(S^2 x S^2)` dimensions: 1, 0, 2, 0, 1.
pub const BASE_S2XS2: [usize; 5] = [1, 0, 2, 0, 1];

/// Series of the torus amalgam target `(k<t,x>/<t^2,x^2>) (x)
/// Lambda(y)`, all generators in degree 1.
pub fn pontryagin_tilde_series(n_max: u32) -> Vec<usize> {
    let words: Vec<usize> = (0..=n_max)
        .map(|n| squarefree_word_count(&[1, 1], n))
        .collect();
    convolve(&words, &[1, 1], n_max as usize)
}

/// Series of `Lambda(y_3) (x) k<t, x_3>/<t^2, x_3^2>` with
/// `|y_3| = |x_3| = 3` and `|t| = 1`.
pub fn pontryagin_full_series(n_max: u32) -> Vec<usize> {
    let words: Vec<usize> = (0..=n_max)
        .map(|n| squarefree_word_count(&[1, 3], n))
        .collect();
    let ext: Vec<usize> = (0..=n_max as usize)
        .map(|n| usize::from(n == 0 || n == 3))
        .collect();
    convolve(&words, &ext, n_max as usize)
}

/// Rational fiber series `Lambda(g) (x) Q[h]`, `|g| = 3`, `|h| = 4`:
/// one dimension at every degree congruent to 0 or 3 mod 4.
pub fn rational_fiber_series(n_max: u32) -> Vec<usize> {
    (0..=n_max)
        .map(|n| gc_monomial_count(&[(3, Some(1)), (4, None)], n))
        .collect()
}

/// Expected Tor total dimensions through total degree 4.
pub const TOR_TOTALS: [usize; 5] = [1, 0, 2, 1, 1];
