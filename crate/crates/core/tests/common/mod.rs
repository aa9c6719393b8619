//! Oracles and random generators shared by the integration tests. Nothing
//! here calls into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use toricarc::arc::field::Field;
use toricarc::linalg::{Int, IntVector};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn iv(v: &[i64]) -> IntVector {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn small(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

/// Integer determinant by cofactor expansion (dimensions here are at most 4).
pub fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Hirzebruch-Jung expansion `d/k = b_1 - 1/(b_2 - ...)` for `0 < k < d`.
pub fn hirzebruch_jung(d: i64, k: i64) -> Vec<i64> {
    let (mut a, mut b) = (d, k);
    let mut out = Vec::new();
    while b != 0 {
        let q = (a + b - 1) / b;
        out.push(q);
        let r = q * b - a;
        a = b;
        b = r;
    }
    out
}

/// Rays of the minimal resolution of `⟨(0,1), (d,-k)⟩`: `u_0 = (0,1)`,
/// `u_1 = (1,0)`, `u_{i+1} = b_i u_i - u_{i-1}`, ending at `(d,-k)`.
pub fn hj_rays(d: i64, k: i64) -> Vec<[i64; 2]> {
    let mut rays = vec![[0, 1], [1, 0]];
    for b in hirzebruch_jung(d, k) {
        let n = rays.len();
        let (p, q) = (rays[n - 2], rays[n - 1]);
        rays.push([b * q[0] - p[0], b * q[1] - p[1]]);
    }
    assert_eq!(rays.last(), Some(&[d, -k]), "recursion ends at the second ray");
    rays
}

/// Continued-fraction rays of `⟨(1,0),(1,n)⟩`, moved by `(x, y) ↦ (y, x - y)`
/// to `⟨(0,1),(n,1-n)⟩` and back.
pub fn cyclic_family_rays(n: i64) -> BTreeSet<Vec<i64>> {
    hj_rays(n, n - 1).into_iter().map(|[a, b]| vec![a + b, a]).collect()
}

/// Interior lattice points of `⟨(1,0),(1,n)⟩` with `x ≤ bound`, and their
/// `≤_σ`-minimal elements by pairwise comparison.
pub fn cyclic_family_minimal(n: i64, bound: i64) -> BTreeSet<Vec<i64>> {
    let inside = |x: i64, y: i64| y >= 0 && n * x - y >= 0;
    let pts: Vec<(i64, i64)> = (1..=bound).flat_map(|x| (1..n * x).map(move |y| (x, y))).collect();
    pts.iter()
        .filter(|&&(x, y)| !pts.iter().any(|&(a, b)| (a, b) != (x, y) && inside(x - a, y - b)))
        .map(|&(x, y)| vec![x, y])
        .collect()
}

/// `(Σ a_j t^j)^d` modulo `t^len` by schoolbook convolution.
pub fn power_by_convolution<F: Field>(a: &[F], d: usize, len: usize, zero: &F) -> Vec<F> {
    let mut acc = vec![zero.one_like()];
    for _ in 0..d {
        let mut next = vec![zero.zero_like(); len];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in a.iter().enumerate() {
                if i + j < len {
                    next[i + j] = next[i + j].add(&x.mul(y));
                }
            }
        }
        acc = next;
    }
    acc.resize(len, zero.zero_like());
    acc
}

pub fn random_rational(r: &mut Rng8, num: i64, den: i64) -> (i64, i64) {
    (r.gen_range(-num..=num), r.gen_range(1..=den))
}

pub fn random_vector(r: &mut Rng8, n: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..n).map(|_| r.gen_range(lo..=hi)).collect()
}

/// `n` linearly independent vectors with entries in `[lo, hi]`, primitive.
pub fn random_basis(r: &mut Rng8, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    loop {
        let rays: Vec<Vec<i64>> = (0..n).map(|_| primitive(random_vector(r, n, lo, hi))).collect();
        if rays.iter().all(|v| v.iter().any(|&x| x != 0)) && det(&rays) != 0 {
            return rays;
        }
    }
}

pub fn primitive(v: Vec<i64>) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        v
    } else {
        v.into_iter().map(|x| x / g).collect()
    }
}

/// A random unimodular matrix: a product of elementary row operations.
pub fn random_unimodular(r: &mut Rng8, n: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = r.gen_range(0..n);
        let j = (i + r.gen_range(1..n)) % n;
        let c = r.gen_range(-1..=1);
        for k in 0..n {
            m[i][k] += c * m[j][k];
        }
    }
    m
}

pub fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// `Σ c_i r_i` for integer coefficients.
pub fn combine(rays: &[Vec<i64>], c: &[i64]) -> Vec<i64> {
    let n = rays[0].len();
    (0..n).map(|k| rays.iter().zip(c).map(|(r, x)| r[k] * x).sum()).collect()
}

/// Gaussian elimination over `Q` on `i128` fractions: coefficients of `v`
/// in a basis, or `None` when `v` is outside the span.
pub fn coefficients(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<(i128, i128)>> {
    let m = basis.len();
    let n = v.len();
    let mut rows: Vec<Vec<num_rational::Ratio<i128>>> = (0..n)
        .map(|k| {
            let mut row: Vec<_> = basis.iter().map(|b| num_rational::Ratio::from_integer(b[k] as i128)).collect();
            row.push(num_rational::Ratio::from_integer(v[k] as i128));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m {
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[m].is_zero()) || pivots.len() < m {
        return None;
    }
    let mut out = vec![(0i128, 1i128); m];
    for (i, &c) in pivots.iter().enumerate() {
        out[c] = (*rows[i][m].numer(), *rows[i][m].denom());
    }
    Some(out)
}

/// Index of the lattice spanned by independent `rays` in the saturation of
/// their span: the gcd of all maximal minors.
pub fn sublattice_index(rays: &[Vec<i64>]) -> i64 {
    let k = rays.len();
    let n = rays[0].len();
    let mut g = 0i64;
    for cols in subsets(n, k) {
        let minor: Vec<Vec<i64>> = rays.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&det(&minor));
    }
    g
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}
