//! Small exact vector and matrix helpers over `BigInt` and `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVector = Vec<Int>;
pub type RatVector = Vec<Rat>;
pub type IntMatrix = Vec<IntVector>;
pub type RatMatrix = Vec<RatVector>;

pub fn ivec(v: &[i64]) -> IntVector {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn imat(rows: &[&[i64]]) -> IntMatrix {
    rows.iter().map(|r| ivec(r)).collect()
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn qvec(v: &[(i64, i64)]) -> RatVector {
    v.iter().map(|&(n, d)| rat(n, d)).collect()
}

pub fn to_rat(v: &[Int]) -> RatVector {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Returns the integer vector if every entry is integral.
pub fn to_int(v: &[Rat]) -> Option<IntVector> {
    v.iter()
        .map(|x| if x.is_integer() { Some(x.to_integer()) } else { None })
        .collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_iq(a: &[Int], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .map(|(x, y)| y * Rat::from_integer(x.clone()))
        .sum()
}

pub fn add(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Int], b: &[Int]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Int], k: &Int) -> IntVector {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero(a: &[Int]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn gcd_all(a: &[Int]) -> Int {
    a.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive_part(a: &[Int]) -> IntVector {
    let g = gcd_all(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_direction(v: &[Rat]) -> IntVector {
    let lcm = v
        .iter()
        .fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: IntVector = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    primitive_part(&ints)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul(a: &[IntVector], b: &[IntVector]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `v * m` for a row vector `v`.
pub fn vec_mat(v: &[Int], m: &[IntVector]) -> IntVector {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| v.iter().zip(m).map(|(x, r)| x * &r[j]).sum()).collect()
}

pub fn vec_mat_q(v: &[Rat], m: &[RatVector]) -> RatVector {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(m).map(|(x, r)| x * &r[j]).sum())
        .collect()
}

pub fn rat_matrix(m: &[IntVector]) -> RatMatrix {
    m.iter().map(|r| to_rat(r)).collect()
}

/// Row echelon form in place; returns the pivot columns.
fn echelon(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_q(m: &[RatVector]) -> usize {
    let mut a = m.to_vec();
    echelon(&mut a).len()
}

/// Fraction-free (Bareiss) elimination; returns the rank and, for square
/// input of full rank, the determinant.
fn bareiss(m: &[IntVector]) -> (usize, Int) {
    if let Some(small) = small_entries(m) {
        let (r, d) = bareiss_small(small);
        return (r, Int::from(d));
    }
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a = m.to_vec();
    let mut prev = Int::one();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = Int::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if r == rows && rows == cols { prev * Int::from(sign) } else { Int::zero() };
    (r, det)
}

/// Converts to `i128` when the Hadamard bound keeps every Bareiss
/// intermediate (a product of two minors) inside the `i128` range.
fn small_entries(m: &[IntVector]) -> Option<Vec<Vec<i128>>> {
    let mut bound = 1.0f64;
    let mut out = Vec::with_capacity(m.len());
    for row in m {
        let mut norm = 0.0f64;
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            let v: i64 = x.try_into().ok()?;
            if v.unsigned_abs() > 1 << 40 {
                return None;
            }
            norm += (v as f64) * (v as f64);
            r.push(v as i128);
        }
        bound *= norm.sqrt().max(1.0);
        out.push(r);
    }
    (bound * bound < 2f64.powi(120)).then_some(out)
}

fn bareiss_small(mut a: Vec<Vec<i128>>) -> (usize, i128) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = 1i128;
    let mut sign = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    let det = if r == rows && rows == cols { prev * sign } else { 0 };
    (r, det)
}

pub fn rank_i(m: &[IntVector]) -> usize {
    bareiss(m).0
}

pub fn det_q(m: &[RatVector]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] * &inv;
                for j in c..n {
                    let t = &a[c][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
    }
    det
}

pub fn det_i(m: &[IntVector]) -> Int {
    if m.is_empty() {
        return Int::one();
    }
    bareiss(m).1
}

/// Adjugate of a square integer matrix, so that `m * adj = det(m) * I`.
pub fn adjugate(m: &[IntVector]) -> IntMatrix {
    let n = m.len();
    if n == 1 {
        return vec![vec![Int::one()]];
    }
    if let Some(a) = small_entries(m) {
        return (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| {
                        let minor: Vec<Vec<i128>> = (0..n)
                            .filter(|&r| r != i)
                            .map(|r| (0..n).filter(|&c| c != j).map(|c| a[r][c]).collect())
                            .collect();
                        let d = bareiss_small(minor).1;
                        Int::from(if (i + j) % 2 == 0 { d } else { -d })
                    })
                    .collect()
            })
            .collect();
    }
    let mut adj = vec![vec![Int::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                .collect();
            let d = det_i(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    adj
}

pub fn inverse_q(m: &[RatVector]) -> Option<RatMatrix> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut aug: RatMatrix = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `c * basis = x` for the coefficient row `c`; `basis` must have independent rows.
pub fn solve_left(basis: &[RatVector], x: &[Rat]) -> Option<RatVector> {
    let k = basis.len();
    let n = x.len();
    // columns of the augmented system: unknowns c_0..c_{k-1}, equations per coordinate
    let mut sys: RatMatrix = (0..n)
        .map(|j| {
            let mut row: RatVector = basis.iter().map(|b| b[j].clone()).collect();
            row.push(x[j].clone());
            row
        })
        .collect();
    let pivots = echelon(&mut sys);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        c[p] = sys[row][k].clone();
    }
    Some(c)
}

pub fn abs_sum_numerators(v: &[Rat]) -> Int {
    v.iter().map(|x| x.numer().abs()).sum()
}
