//! Sparse multivariate polynomials over the rationals.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so the derived
//! ordering on `Vec<u32>` is the lexicographic monomial order with
//! `a_0 > a_1 > ...`. The leading term is the last map entry.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::linalg::{Int, Rat};

pub type Exponent = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rat>,
}

fn trim(mut e: Exponent) -> Exponent {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn exp_add(a: &[u32], b: &[u32]) -> Exponent {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

fn exp_sub(a: &[u32], b: &[u32]) -> Option<Exponent> {
    if b.len() > a.len() {
        return None;
    }
    let mut v = Vec::with_capacity(a.len());
    for (i, &x) in a.iter().enumerate() {
        let y = b.get(i).copied().unwrap_or(0);
        v.push(x.checked_sub(y)?);
    }
    Some(trim(v))
}

/// Rational `k`-th root, if one exists.
pub fn rat_root(q: &Rat, k: u32) -> Option<Rat> {
    if k == 1 {
        return Some(q.clone());
    }
    if q.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let int_root = |x: &Int| -> Option<Int> {
        let r = x.abs().nth_root(k);
        let r = if x.is_negative() { -r } else { r };
        (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
    };
    Some(Rat::new(int_root(q.numer())?, int_root(q.denom())?))
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::monomial(c, Vec::new())
    }

    pub fn var(i: usize) -> Poly {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Poly::monomial(Rat::one(), e)
    }

    pub fn monomial(c: Rat, e: Exponent) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(e), c);
        }
        Poly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Exponent, Rat)>) -> Poly {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(trim(e), c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Exponent, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rat {
        self.leading().map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    /// One more than the largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e.get(var).copied().unwrap_or(0)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(exp_add(e1, e2), c1 * c2);
            }
        }
        r
    }

    fn mul_term(&self, e: &[u32], c: &Rat) -> Poly {
        Poly { terms: self.terms.iter().map(|(f, d)| (exp_add(f, e), d * c)).collect() }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        let mut s = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(point[i].clone(), k as usize);
                }
            }
            s += t;
        }
        s
    }

    pub fn partial(&self, var: usize) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            let k = e.get(var).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut f = e.clone();
            f[var] -= 1;
            r.add_term(trim(f), c * Rat::from_integer(Int::from(k)));
        }
        r
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut q = Poly::zero();
        while let Some((re, rc)) = rem.leading() {
            let e = exp_sub(re, de)?;
            let c = rc / dc;
            rem = rem.sub(&d.mul_term(&e, &c));
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Coefficients with respect to `var`, lowest degree first.
    fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![Poly::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e.get(var).copied().unwrap_or(0) as usize;
            let mut f = e.clone();
            if k > 0 {
                f[var] = 0;
            }
            out[k].add_term(trim(f), c.clone());
        }
        out
    }

    fn from_coefficients(var: usize, coeffs: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; var + 1];
            e[var] = k as u32;
            for (f, d) in &c.terms {
                r.add_term(exp_add(f, &e), d.clone());
            }
        }
        r
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading_coefficient().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Poly) -> Poly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        if self.as_constant().is_some() || o.as_constant().is_some() {
            return Poly::one();
        }
        if let Some(g) = monomial_gcd(self, o).or_else(|| monomial_gcd(o, self)) {
            return g;
        }
        let var = self.num_vars().max(o.num_vars()) - 1;
        let da = self.degree_in(var);
        let db = o.degree_in(var);
        if da == 0 && db == 0 {
            unreachable!("a nonconstant polynomial involves its last variable");
        }
        if da == 0 {
            return content_gcd(&o.coefficients_in(var), self);
        }
        if db == 0 {
            return content_gcd(&self.coefficients_in(var), o);
        }
        let ca = self.coefficients_in(var);
        let cb = o.coefficients_in(var);
        let conta = content(&ca);
        let contb = content(&cb);
        let pa: Vec<Poly> = ca.iter().map(|c| c.div_exact(&conta).expect("content divides")).collect();
        let pb: Vec<Poly> = cb.iter().map(|c| c.div_exact(&contb).expect("content divides")).collect();
        let g = primitive_prs(pa, pb);
        Poly::from_coefficients(var, &g).mul(&conta.gcd(&contb)).monic()
    }

    /// Root `r` with `r^k = self`, found term by term from the leading term.
    pub fn root(&self, k: u32) -> Option<Poly> {
        if k == 1 || self.is_zero() {
            return Some(self.clone());
        }
        let nvars = self.num_vars();
        let bounds: Vec<u32> = (0..nvars).map(|i| self.degree_in(i) / k).collect();
        let root_term = |e: &[u32], c: &Rat| -> Option<(Exponent, Rat)> {
            if e.iter().any(|x| x % k != 0) {
                return None;
            }
            Some((e.iter().map(|x| x / k).collect(), rat_root(c, k)?))
        };
        let (le, lc) = self.leading()?;
        let (re, rc) = root_term(le, lc)?;
        let lead = Poly::monomial(rc, re);
        let denom = lead.pow(k - 1).scale(&Rat::from_integer(Int::from(k)));
        let (de, dc) = denom.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut r = lead;
        loop {
            let rem = self.sub(&r.pow(k));
            let Some((e, c)) = rem.leading() else {
                return Some(r);
            };
            let te = exp_sub(e, &de)?;
            if te.iter().enumerate().any(|(i, &x)| x > bounds.get(i).copied().unwrap_or(0)) {
                return None;
            }
            if let Some((cur, _)) = r.terms.iter().next() {
                if te >= *cur {
                    return None;
                }
            }
            r.add_term(te, c / &dc);
        }
    }
}

/// `gcd(m, f)` for a single term `m`: the monomial of coordinatewise
/// minimal exponents.
fn monomial_gcd(m: &Poly, f: &Poly) -> Option<Poly> {
    if m.terms.len() != 1 {
        return None;
    }
    let (e, _) = m.terms.iter().next()?;
    let mut low: Vec<u32> = e.clone();
    for g in f.terms.keys() {
        for (i, x) in low.iter_mut().enumerate() {
            *x = (*x).min(g.get(i).copied().unwrap_or(0));
        }
    }
    Some(Poly::monomial(Rat::one(), low))
}

/// Divides out the content and scales so the leading coefficient has
/// leading rational coefficient one; keeps remainder sequences small.
fn normalize(p: Vec<Poly>) -> Vec<Poly> {
    let c = content(&p);
    let p: Vec<Poly> = p.iter().map(|x| x.div_exact(&c).expect("content divides")).collect();
    let lead = p.last().map(|l| l.leading_coefficient().recip()).unwrap_or_else(Rat::one);
    p.iter().map(|x| x.scale(&lead)).collect()
}

fn content(coeffs: &[Poly]) -> Poly {
    coeffs.iter().fold(Poly::zero(), |g, c| g.gcd(c))
}

fn content_gcd(coeffs: &[Poly], other: &Poly) -> Poly {
    coeffs.iter().fold(other.monic(), |g, c| g.gcd(c))
}

fn degree(p: &[Poly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim_coeffs(mut p: Vec<Poly>) -> Vec<Poly> {
    while p.last().is_some_and(Poly::is_zero) {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `a` by `b` as polynomials in one main variable.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = degree(b).expect("nonzero divisor");
    let lb = &b[n];
    let mut r = trim_coeffs(a.to_vec());
    while let Some(m) = degree(&r) {
        if m < n {
            break;
        }
        let lr = r[m].clone();
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            next[j + m - n] = next[j + m - n].sub(&t);
        }
        r = trim_coeffs(next);
    }
    r
}

fn primitive_prs(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    if degree(&a) < degree(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b);
        if r.is_empty() {
            return normalize(b);
        }
        if degree(&r) == Some(0) {
            return vec![Poly::one()];
        }
        a = b;
        b = normalize(r);
    }
}

/// Renders with symbol names, falling back to `a<i>` for missing names.
pub struct Display<'a> {
    pub poly: &'a Poly,
    pub names: &'a [String],
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    let name = self.names.get(i).cloned().unwrap_or_else(|| format!("a{}", i + 1));
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Display { poly: self, names: &[] })
    }
}
