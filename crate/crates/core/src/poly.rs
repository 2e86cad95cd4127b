//! Sparse multivariate polynomials over the variable alphabet
//! `{x, y, z_1..z_{d-1}, t_1..t_{d-1}}` with exact rational coefficients.
//!
//! Terms are stored in a `BTreeMap` keyed by canonically ordered exponent
//! vectors, so structural equality is value equality. Zero coefficients are
//! never stored.

use std::collections::BTreeMap;
use std::fmt;

use crate::linear::LinearForm;
use crate::rational::Rational;

/// One formal variable.
///
/// The derived order `X < Y < Z(1) < Z(2) < ... < T(1) < ...` is also the
/// canonical rendering order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum VarId {
    X,
    Y,
    Z(u32),
    T(u32),
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::X => write!(f, "x"),
            VarId::Y => write!(f, "y"),
            VarId::Z(i) => write!(f, "z_{}", i),
            VarId::T(i) => write!(f, "t_{}", i),
        }
    }
}

/// Exponent vector, sparse: sorted `(variable, exponent > 0)` pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds from arbitrary (possibly unsorted, zero-exponent) pairs.
    pub fn from_pairs(pairs: &[(VarId, u32)]) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        Monomial(map.into_iter().collect())
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<VarId, u32> = self.0.iter().copied().collect();
        for &(v, e) in &other.0 {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().collect())
    }

    /// Removes `v` entirely, returning the remaining monomial and the old
    /// exponent of `v`.
    fn split_var(&self, v: VarId) -> (Monomial, u32) {
        let e = self.exponent(v);
        if e == 0 {
            return (self.clone(), 0);
        }
        let rest = Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect());
        (rest, e)
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        SparsePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::unit(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    /// Adds `c * mono`, dropping the entry if the sum cancels.
    pub fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// The coefficient of the unit monomial.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::unit())
    }

    /// `Some(c)` iff the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by `v^e`: `Some` iff every term carries at least
    /// `v^e`.
    pub fn divide_by_var(&self, v: VarId, e: u32) -> Option<SparsePoly> {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let have = m.exponent(v);
            if have < e {
                return None;
            }
            let (rest, _) = m.split_var(v);
            let mono = if have > e {
                rest.mul(&Monomial::from_pairs(&[(v, have - e)]))
            } else {
                rest
            };
            out.add_term(mono, c.clone());
        }
        Some(out)
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            if e == 0 {
                continue;
            }
            let mut mono = rest;
            if e > 1 {
                mono = mono.mul(&Monomial::from_pairs(&[(v, e - 1)]));
            }
            out.add_term(mono, c * &Rational::from_int(e as i64));
        }
        out
    }

    /// Substitutes a scalar for one variable.
    pub fn substitute_scalar(&self, v: VarId, val: &Rational) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            out.add_term(rest, c * &val.pow(e as i32));
        }
        out
    }

    /// Substitutes an affine form in the t-variables for `v`.
    pub fn substitute_form(&self, v: VarId, form: &LinearForm) -> SparsePoly {
        let fp = form.to_poly();
        let mut powers: Vec<SparsePoly> = vec![SparsePoly::one()];
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap().mul(&fp);
                powers.push(next);
            }
            let mut base = SparsePoly::zero();
            base.add_term(rest, c.clone());
            out = out.add(&base.mul(&powers[e as usize]));
        }
        out
    }

    /// Replaces `x` and `y` by scalars; other variables untouched.
    pub fn eval_xy(&self, x_val: &Rational, y_val: &Rational) -> SparsePoly {
        self.substitute_scalar(VarId::X, x_val)
            .substitute_scalar(VarId::Y, y_val)
    }

    /// Canonical text rendering, variables ordered `x, y, z_1.., t_1..`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            let mut piece = String::new();
            if m.is_unit() {
                piece.push_str(&c.to_string());
            } else {
                if !c.is_one() {
                    piece.push_str(&c.to_string());
                    piece.push('*');
                }
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .map(|(v, e)| {
                        if *e == 1 {
                            v.to_string()
                        } else {
                            format!("{}^{}", v, e)
                        }
                    })
                    .collect();
                piece.push_str(&vars.join("*"));
            }
            parts.push(piece);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Error from homogeneous interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpError {
    DuplicateSample(Rational),
    WrongSampleCount { expected: usize, got: usize },
}

impl fmt::Display for InterpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterpError::DuplicateSample(s) => write!(f, "duplicate sample point {}", s),
            InterpError::WrongSampleCount { expected, got } => {
                write!(f, "need {} samples, got {}", expected, got)
            }
        }
    }
}

impl std::error::Error for InterpError {}

/// Recovers the homogeneous polynomial `P = sum_a c_a x^(r-a) y^a` of degree
/// `r` from the values `v_j = P(1, s_j)` at `r+1` pairwise-distinct points.
///
/// Returns the coefficients `c_0..c_r` indexed by the power of `y`.
pub fn interpolate_homogeneous(
    samples: &[(Rational, Rational)],
    degree: u32,
) -> Result<Vec<Rational>, InterpError> {
    let n = degree as usize + 1;
    if samples.len() != n {
        return Err(InterpError::WrongSampleCount {
            expected: n,
            got: samples.len(),
        });
    }
    for (i, (si, _)) in samples.iter().enumerate() {
        for (sj, _) in &samples[i + 1..] {
            if si == sj {
                return Err(InterpError::DuplicateSample(si.clone()));
            }
        }
    }
    // P(1, s) = sum_a c_a s^a: a Vandermonde system, solved by elimination.
    let mut mat: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for (s, v) in samples {
        let mut row = Vec::with_capacity(n + 1);
        let mut p = Rational::one();
        for _ in 0..n {
            row.push(p.clone());
            p = p * s.clone();
        }
        row.push(v.clone());
        mat.push(row);
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !mat[r][col].is_zero())
            .expect("Vandermonde matrix with distinct nodes is invertible");
        mat.swap(col, pivot);
        let inv = mat[col][col].recip();
        for x in mat[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c2 in col..=n {
                    let delta = &f * &mat[col][c2];
                    mat[r][c2] = mat[r][c2].clone() - delta;
                }
            }
        }
    }
    Ok(mat.into_iter().map(|row| row[row.len() - 1].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn x() -> SparsePoly {
        SparsePoly::var(VarId::X)
    }

    fn y() -> SparsePoly {
        SparsePoly::var(VarId::Y)
    }

    fn z(i: u32) -> SparsePoly {
        SparsePoly::var(VarId::Z(i))
    }

    #[test]
    fn difference_of_squares() {
        // (x+y)(x-y) = x^2 - y^2
        let p = x().add(&y()).mul(&x().sub(&y()));
        let mut want = x().mul(&x());
        want = want.sub(&y().mul(&y()));
        assert_eq!(p, want);
    }

    #[test]
    fn additive_identity() {
        let p = x().add(&z(1)).mul(&y());
        assert_eq!(p.add(&SparsePoly::zero()), p);
    }

    #[test]
    fn hand_expansion_square() {
        // ((x+y)/2 + z_1)^2: coefficient 1/4 on x^2, 1 on z_1^2, 1 on x*z_1/...
        // the x*z_1 coefficient is 2 * (1/2) = 1.
        let base = x().add(&y()).scale(&q(1, 2)).add(&z(1));
        let sq = base.pow(2);
        assert_eq!(
            sq.coefficient(&Monomial::from_pairs(&[(VarId::X, 2)])),
            q(1, 4)
        );
        assert_eq!(
            sq.coefficient(&Monomial::from_pairs(&[(VarId::Z(1), 2)])),
            q(1, 1)
        );
        assert_eq!(
            sq.coefficient(&Monomial::from_pairs(&[(VarId::X, 1), (VarId::Z(1), 1)])),
            q(1, 1)
        );
        assert_eq!(
            sq.coefficient(&Monomial::from_pairs(&[(VarId::X, 1), (VarId::Y, 1)])),
            q(1, 2)
        );
    }

    #[test]
    fn eval_xy_leaves_z_untouched() {
        // (x+y)/2 + z_1 at x=1, y=1 -> 1 + z_1
        let p = x().add(&y()).scale(&q(1, 2)).add(&z(1));
        let e = p.eval_xy(&q(1, 1), &q(1, 1));
        assert_eq!(e, SparsePoly::one().add(&z(1)));

        let no_xy = z(1).mul(&z(2));
        assert_eq!(no_xy.eval_xy(&q(7, 1), &q(-3, 1)), no_xy);
    }

    #[test]
    fn derivative_basic() {
        // d/dx (x^2 y + 3x) = 2xy + 3
        let p = x().pow(2).mul(&y()).add(&x().scale(&q(3, 1)));
        let d = p.derivative(VarId::X);
        let want = x().mul(&y()).scale(&q(2, 1)).add(&SparsePoly::constant(q(3, 1)));
        assert_eq!(d, want);
    }

    #[test]
    fn interpolate_degree_zero_and_one() {
        // r=0: single sample
        let c = interpolate_homogeneous(&[(q(0, 1), q(5, 324))], 0).unwrap();
        assert_eq!(c, vec![q(5, 324)]);

        // r=1: samples (0, 1/2), (1, 1) -> (x+y)/2
        let c = interpolate_homogeneous(&[(q(0, 1), q(1, 2)), (q(1, 1), q(1, 1))], 1).unwrap();
        assert_eq!(c, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn interpolate_recovers_poly3_head() {
        // 2/9 x^2 + 5/9 xy + 2/9 y^2 sampled at s = 0, 1, 2
        let f = |s: Rational| q(2, 9) + q(5, 9) * s.clone() + q(2, 9) * s.clone() * s;
        let samples: Vec<_> = (0..3).map(|s| (q(s, 1), f(q(s, 1)))).collect();
        let c = interpolate_homogeneous(&samples, 2).unwrap();
        assert_eq!(c, vec![q(2, 9), q(5, 9), q(2, 9)]);
    }

    #[test]
    fn interpolate_rejects_duplicates() {
        let r = interpolate_homogeneous(&[(q(1, 1), q(1, 1)), (q(1, 1), q(2, 1))], 1);
        assert!(matches!(r, Err(InterpError::DuplicateSample(_))));
    }

    #[test]
    fn ring_axioms_randomized() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let vars = [VarId::X, VarId::Y, VarId::Z(1), VarId::T(1)];
        let mut random_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
            let mut p = SparsePoly::zero();
            for _ in 0..rng.gen_range(1..5) {
                let v = vars[rng.gen_range(0..vars.len())];
                let e = rng.gen_range(0..3);
                let c = q(rng.gen_range(-6..7), rng.gen_range(1..5));
                p.add_term(Monomial::from_pairs(&[(v, e)]), c);
            }
            p
        };
        for _ in 0..40 {
            let a = random_poly(&mut rng);
            let b = random_poly(&mut rng);
            let c = random_poly(&mut rng);
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.add(&b), b.add(&a));
        }
    }

    #[test]
    fn interpolation_inverts_evaluation_randomized() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let r = rng.gen_range(0..=8u32);
            let coeffs: Vec<Rational> = (0..=r)
                .map(|_| q(rng.gen_range(-20..21), rng.gen_range(1..9)))
                .collect();
            let eval = |s: &Rational| {
                let mut acc = Rational::zero();
                let mut p = Rational::one();
                for c in &coeffs {
                    acc += c * &p;
                    p = p * s.clone();
                }
                acc
            };
            let samples: Vec<_> = (0..=r as i64).map(|s| (q(s, 1), eval(&q(s, 1)))).collect();
            assert_eq!(interpolate_homogeneous(&samples, r).unwrap(), coeffs);
        }
    }
}
