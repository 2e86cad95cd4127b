//! Construction of the degree-d polynomial `Poly_d(x, y, z_1..z_{d-1})`.
//!
//! `Poly_d` is the constant term, in all t-variables, of the product
//! `R_d = prod_j p_j` where
//!
//! ```text
//! p_j = (t_j + phi_j) + z_j + z_j^2/(t_j + phi_j) + z_j^3/(t_j + phi_j)^2 + ...
//! phi_j = ((d-j) x + j y)/d + sum_{i<j} (d-j)/(d-i) t_i + sum_{i>j} (j/i) t_i
//! ```
//!
//! The z-power series of `p_j` turns each z-monomial coefficient of `R_d`
//! into a finite factored rational expression, so the constant term is an
//! iterated residue. The x,y-dependence is recovered by evaluating at
//! samples `(x, y) = (1, s)` and interpolating the homogeneous coefficient
//! polynomial of each z-monomial.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linear::LinearForm;
use crate::poly::{Monomial, SparsePoly, VarId};
use crate::rational::Rational;
use crate::residue::{iterated_residue, OwnedFactor, RatExpr};

/// The linear form `phi_i` attached to the i-th gap at working degree `d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiForm {
    pub d: u32,
    pub i: u32,
    pub x_coeff: Rational,
    pub y_coeff: Rational,
    pub t_coeffs: BTreeMap<u32, Rational>,
}

/// Index-out-of-range error for `phi_form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiIndexError {
    pub d: u32,
    pub i: u32,
}

impl fmt::Display for PhiIndexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi index {} out of range 1..{} for degree {}", self.i, self.d - 1, self.d)
    }
}

impl std::error::Error for PhiIndexError {}

/// `phi_i = ((d-i) x + i y)/d + sum_{j<i} (d-i)/(d-j) t_j + sum_{j>i} (i/j) t_j`.
pub fn phi_form(d: u32, i: u32) -> Result<PhiForm, PhiIndexError> {
    if d < 2 || i < 1 || i > d - 1 {
        return Err(PhiIndexError { d, i });
    }
    let mut t_coeffs = BTreeMap::new();
    for j in 1..i {
        t_coeffs.insert(j, Rational::new((d - i) as i64, (d - j) as i64));
    }
    for j in (i + 1)..d {
        t_coeffs.insert(j, Rational::new(i as i64, j as i64));
    }
    Ok(PhiForm {
        d,
        i,
        x_coeff: Rational::new((d - i) as i64, d as i64),
        y_coeff: Rational::new(i as i64, d as i64),
        t_coeffs,
    })
}

impl PhiForm {
    /// The affine form in the t-variables once x and y are scalars.
    pub fn specialize(&self, x_val: &Rational, y_val: &Rational) -> LinearForm {
        let mut f = LinearForm::constant(&self.x_coeff * x_val + &self.y_coeff * y_val);
        for (j, c) in &self.t_coeffs {
            f.set_coeff(*j, c.clone());
        }
        f
    }
}

/// Exponents of `z_1..z_{d-1}`; the total is at most `d-1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct ZMonomial(pub Vec<u32>);

impl ZMonomial {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `z_i -> z_{d-i}` reversal.
    pub fn reversed(&self) -> ZMonomial {
        let mut v = self.0.clone();
        v.reverse();
        ZMonomial(v)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(j, e)| {
                if *e == 1 {
                    format!("z_{}", j + 1)
                } else {
                    format!("z_{}^{}", j + 1, e)
                }
            })
            .collect();
        parts.join("*")
    }
}

/// Homogeneous polynomial in x, y; `coeffs[a]` multiplies `x^(r-a) y^a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomogeneousXY {
    pub coeffs: Vec<Rational>,
}

impl HomogeneousXY {
    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// x <-> y swap.
    pub fn reversed(&self) -> HomogeneousXY {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        HomogeneousXY { coeffs }
    }

    pub fn value_at_ones(&self) -> Rational {
        let mut acc = Rational::zero();
        for c in &self.coeffs {
            acc += c.clone();
        }
        acc
    }

    /// Paper-style rendering over a common denominator, e.g.
    /// `(2*x^2 + 5*x*y + 2*y^2)/9`.
    pub fn render(&self) -> String {
        use num::Integer;
        let r = self.degree();
        if r == 0 {
            return self.coeffs[0].to_string();
        }
        let mut lcm = num::BigInt::from(1);
        for c in &self.coeffs {
            if !c.is_zero() {
                lcm = lcm.lcm(c.denom());
            }
        }
        let lcm_q = Rational::from_bigint(lcm.clone());
        let mut parts = Vec::new();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = c * &lcm_q;
            let mut piece = String::new();
            if !n.is_one() {
                piece.push_str(&format!("{}*", n));
            }
            let a = a as u32;
            let xp = r - a;
            let vars: Vec<String> = [(VarId::X, xp), (VarId::Y, a)]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
                .collect();
            if vars.is_empty() {
                piece.push('1');
            } else {
                piece.push_str(&vars.join("*"));
            }
            parts.push(piece);
        }
        if parts.is_empty() {
            return "0".to_string();
        }
        let body = parts.join(" + ");
        if lcm == num::BigInt::from(1) {
            if parts.len() == 1 {
                body
            } else {
                format!("({})", body)
            }
        } else {
            format!("({})/{}", body, lcm)
        }
    }
}

/// `Poly_d` as a map from z-monomials to homogeneous (x, y)-coefficients.
///
/// Every entry for z-exponents `m` is homogeneous of degree `d - 1 - |m|`,
/// and the whole polynomial is invariant under `x <-> y`, `z_i <-> z_{d-i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyD {
    d: u32,
    entries: BTreeMap<ZMonomial, HomogeneousXY>,
}

impl PolyD {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn entries(&self) -> &BTreeMap<ZMonomial, HomogeneousXY> {
        &self.entries
    }

    pub fn coefficient(&self, z: &ZMonomial) -> Option<&HomogeneousXY> {
        self.entries.get(z)
    }

    /// Expands into a single sparse polynomial over x, y, z_1..z_{d-1}.
    pub fn to_poly(&self) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (z, h) in &self.entries {
            let r = h.degree();
            for (a, c) in h.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut pairs = vec![(VarId::X, r - a as u32), (VarId::Y, a as u32)];
                for (j, e) in z.0.iter().enumerate() {
                    pairs.push((VarId::Z(j as u32 + 1), *e));
                }
                out.add_term(Monomial::from_pairs(&pairs), c.clone());
            }
        }
        out
    }

    pub fn is_reversal_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(z, h)| self.entries.get(&z.reversed()) == Some(&h.reversed()))
    }

    /// `Poly_d(1, 1, 0, .., 0)`.
    pub fn normalization_value(&self) -> Rational {
        let zero = ZMonomial(vec![0; (self.d - 1) as usize]);
        self.entries
            .get(&zero)
            .map(|h| h.value_at_ones())
            .unwrap_or_else(Rational::zero)
    }

    /// Paper-style rendering grouped by z-monomial.
    pub fn render_grouped(&self) -> String {
        let mut parts = Vec::new();
        for (z, h) in &self.entries {
            let xy = h.render();
            if z.total() == 0 {
                parts.push(xy);
            } else if h.degree() == 0 && h.coeffs[0].is_one() {
                parts.push(z.render());
            } else {
                parts.push(format!("{}*{}", xy, z.render()));
            }
        }
        parts.join(" + ")
    }

    pub fn to_records(&self) -> PolyDRecords {
        PolyDRecords {
            version: 1,
            d: self.d,
            entries: self
                .entries
                .iter()
                .map(|(z, h)| PolyDEntry {
                    z: z.0.clone(),
                    xy: h.coeffs.iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_records(rec: &PolyDRecords) -> Result<PolyD, String> {
        let mut entries = BTreeMap::new();
        for e in &rec.entries {
            if e.z.len() as u32 != rec.d - 1 {
                return Err(format!(
                    "entry has {} z-exponents, degree {} needs {}",
                    e.z.len(),
                    rec.d,
                    rec.d - 1
                ));
            }
            let coeffs: Result<Vec<Rational>, _> = e.xy.iter().map(|s| s.parse()).collect();
            let h = HomogeneousXY {
                coeffs: coeffs.map_err(|e| format!("{}", e))?,
            };
            let m = ZMonomial(e.z.clone());
            let want = rec.d - 1 - m.total();
            if h.degree() != want {
                return Err(format!(
                    "entry {:?} has xy-degree {}, expected {}",
                    e.z,
                    h.degree(),
                    want
                ));
            }
            entries.insert(m, h);
        }
        Ok(PolyD { d: rec.d, entries })
    }
}

/// Serialization schema shared by the CLI and the golden-file tests.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyDRecords {
    pub version: u32,
    pub d: u32,
    pub entries: Vec<PolyDEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyDEntry {
    pub z: Vec<u32>,
    pub xy: Vec<String>,
}

/// Failure to build `Poly_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyBuildError {
    /// Every rung of the sample-retry ladder degenerated.
    Degenerate { d: u32, z: ZMonomial },
    BadDegree(u32),
}

impl fmt::Display for PolyBuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyBuildError::Degenerate { d, z } => write!(
                f,
                "residue computation degenerate for degree {} monomial {:?} at every sample",
                d, z.0
            ),
            PolyBuildError::BadDegree(d) => write!(f, "degree must be >= 1, got {}", d),
        }
    }
}

impl std::error::Error for PolyBuildError {}

/// The factored coefficient of a z-monomial inside `R_d`, with x, y already
/// specialized. Per gap j: exponent 0 contributes the numerator factor
/// `t_j + phi_j`, exponent 1 contributes 1, exponent m >= 2 contributes the
/// denominator factor `(t_j + phi_j)^(m-1)` owned by `t_j`.
pub fn integrand_for(d: u32, m: &ZMonomial, x_val: &Rational, y_val: &Rational) -> RatExpr {
    assert_eq!(m.0.len() as u32, d - 1, "z-monomial length must be d-1");
    assert!(m.total() <= d - 1, "z-monomial degree exceeds d-1");
    let mut factors = Vec::new();
    for j in 1..d {
        let e = m.0[(j - 1) as usize];
        if e == 1 {
            continue;
        }
        let phi = phi_form(d, j).unwrap().specialize(x_val, y_val);
        let f = LinearForm::var(j).add(&phi);
        if e == 0 {
            factors.push(OwnedFactor::numerator(f, j));
        } else {
            factors.push(OwnedFactor::denominator(f, j, e - 1));
        }
    }
    RatExpr::new(SparsePoly::one(), factors)
        .expect("specialized phi forms are never identically zero")
}

/// All z-exponent vectors of length `d-1` with total at most `d-1`,
/// lexicographically ordered.
pub fn z_monomials(d: u32) -> Vec<ZMonomial> {
    let n = (d - 1) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<ZMonomial>) {
        if pos == cur.len() {
            out.push(ZMonomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(cur, pos + 1, left - e, out);
        }
        cur[pos] = 0;
    }
    rec(&mut cur, 0, d - 1, &mut out);
    out.sort();
    out
}

/// Offsets tried for each interpolation node when a residue degenerates.
const SAMPLE_LADDER: [i64; 3] = [0, 101, 211];

fn coefficient_for(d: u32, m: &ZMonomial) -> Result<Option<HomogeneousXY>, PolyBuildError> {
    let r = d - 1 - m.total();
    let order: Vec<u32> = (1..d).collect();
    let mut samples = Vec::with_capacity(r as usize + 1);
    for a in 0..=r as i64 {
        let mut value = None;
        for offset in SAMPLE_LADDER {
            let s = Rational::from_int(a + offset);
            let e = integrand_for(d, m, &Rational::one(), &s);
            match iterated_residue(&e, &order) {
                Ok(v) => {
                    value = Some((s, v));
                    break;
                }
                Err(_) => continue,
            }
        }
        match value {
            Some(sv) => samples.push(sv),
            None => {
                return Err(PolyBuildError::Degenerate { d, z: m.clone() });
            }
        }
    }
    let coeffs = crate::poly::interpolate_homogeneous(&samples, r)
        .expect("ladder keeps sample nodes distinct");
    let h = HomogeneousXY { coeffs };
    Ok(if h.is_zero() { None } else { Some(h) })
}

/// Builds `Poly_d`. Degree 1 gives the constant 1.
pub fn poly_d(d: u32) -> Result<PolyD, PolyBuildError> {
    poly_d_with_jobs(d, 1)
}

/// Builds `Poly_d`, evaluating z-monomial jobs on `jobs` threads. The
/// assembly is a deterministic reduction, so the result is identical for
/// any width.
pub fn poly_d_with_jobs(d: u32, jobs: usize) -> Result<PolyD, PolyBuildError> {
    if d < 1 {
        return Err(PolyBuildError::BadDegree(d));
    }
    if d == 1 {
        let mut entries = BTreeMap::new();
        entries.insert(
            ZMonomial(Vec::new()),
            HomogeneousXY {
                coeffs: vec![Rational::one()],
            },
        );
        return Ok(PolyD { d, entries });
    }
    let monomials = z_monomials(d);
    let results: Vec<Result<Option<HomogeneousXY>, PolyBuildError>> = if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            monomials
                .par_iter()
                .map(|m| coefficient_for(d, m))
                .collect()
        })
    } else {
        monomials.iter().map(|m| coefficient_for(d, m)).collect()
    };
    let mut entries = BTreeMap::new();
    for (m, res) in monomials.into_iter().zip(results) {
        if let Some(h) = res? {
            entries.insert(m, h);
        }
    }
    Ok(PolyD { d, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn zm(v: &[u32]) -> ZMonomial {
        ZMonomial(v.to_vec())
    }

    fn h(cs: &[(i64, i64)]) -> HomogeneousXY {
        HomogeneousXY {
            coeffs: cs.iter().map(|&(n, d)| q(n, d)).collect(),
        }
    }

    #[test]
    fn phi_form_examples() {
        // degree 4, i = 1: (3x + y)/4 + (1/2) t_2 + (1/3) t_3
        let p = phi_form(4, 1).unwrap();
        assert_eq!(p.x_coeff, q(3, 4));
        assert_eq!(p.y_coeff, q(1, 4));
        assert_eq!(p.t_coeffs.get(&2), Some(&q(1, 2)));
        assert_eq!(p.t_coeffs.get(&3), Some(&q(1, 3)));
        assert_eq!(p.t_coeffs.get(&1), None);

        // degree 5, i = 2: (3x + 2y)/5 + (3/4) t_1 + (2/3) t_3 + (1/2) t_4
        let p = phi_form(5, 2).unwrap();
        assert_eq!(p.x_coeff, q(3, 5));
        assert_eq!(p.y_coeff, q(2, 5));
        assert_eq!(p.t_coeffs.get(&1), Some(&q(3, 4)));
        assert_eq!(p.t_coeffs.get(&3), Some(&q(2, 3)));
        assert_eq!(p.t_coeffs.get(&4), Some(&q(1, 2)));

        assert!(phi_form(4, 0).is_err());
        assert!(phi_form(4, 4).is_err());
    }

    #[test]
    fn phi_form_normalized_at_ones() {
        // phi_i(x=1, y=1, t=0) = (d-i+i)/d = 1
        for d in 2..=8 {
            for i in 1..d {
                let p = phi_form(d, i).unwrap();
                assert_eq!(&p.x_coeff + &p.y_coeff, Rational::one());
                for c in p.t_coeffs.values() {
                    assert!(!c.is_zero() && !c.is_negative());
                    assert!(c < &Rational::one());
                }
            }
        }
    }

    #[test]
    fn phi_form_reversal_symmetry() {
        // phi(d, d-i) is phi(d, i) under x<->y, t_j -> t_{d-j}
        for d in 2..=7u32 {
            for i in 1..d {
                let a = phi_form(d, i).unwrap();
                let b = phi_form(d, d - i).unwrap();
                assert_eq!(a.x_coeff, b.y_coeff);
                for (j, c) in &a.t_coeffs {
                    assert_eq!(b.t_coeffs.get(&(d - j)), Some(c));
                }
            }
        }
    }

    #[test]
    fn integrand_all_ones_is_unit() {
        let e = integrand_for(4, &zm(&[1, 1, 1]), &q(0, 1), &q(0, 1));
        assert_eq!(e, RatExpr::one());
    }

    #[test]
    fn integrand_cross_term_matches_printed_residue() {
        // degree 5, monomial z_1^2 z_4^2 at x = y = 0 evaluates to 2/3
        let e = integrand_for(5, &zm(&[2, 0, 0, 2]), &q(0, 1), &q(0, 1));
        assert_eq!(iterated_residue(&e, &[1, 2, 3, 4]).unwrap(), q(2, 3));
    }

    #[test]
    fn integrand_double_pole_matches_printed_residue() {
        // degree 6, monomial z_1^3 z_2^2 at x = y = 0 evaluates to 3/50;
        // at the homogeneous point the plain pole sum degenerates, the
        // continuation evaluates it
        let e = integrand_for(6, &zm(&[3, 2, 0, 0, 0]), &q(0, 1), &q(0, 1));
        assert_eq!(
            crate::residue::iterated_residue_deformed(&e, &[1, 2, 3, 4, 5]).unwrap(),
            q(3, 50)
        );
    }

    #[test]
    fn integrand_degree7_matches_printed_residue() {
        // degree 7, monomial z_1^2 z_2^2 z_3^2 at x = y = 0 evaluates to 1/20
        let e = integrand_for(7, &zm(&[2, 2, 2, 0, 0, 0]), &q(0, 1), &q(0, 1));
        assert_eq!(
            crate::residue::iterated_residue_deformed(&e, &[1, 2, 3, 4, 5, 6]).unwrap(),
            q(1, 20)
        );
    }

    #[test]
    fn z_monomial_count() {
        // compositions with total <= d-1 in d-1 slots: C(2(d-1), d-1)
        assert_eq!(z_monomials(2).len(), 2);
        assert_eq!(z_monomials(3).len(), 6);
        assert_eq!(z_monomials(4).len(), 20);
        assert_eq!(z_monomials(5).len(), 70);
        assert_eq!(z_monomials(6).len(), 252);
    }

    #[test]
    fn poly_1_is_one() {
        let p = poly_d(1).unwrap();
        assert_eq!(p.to_poly(), SparsePoly::one());
        assert_eq!(p.render_grouped(), "1");
    }

    #[test]
    fn poly_2_matches_table() {
        // (x + y)/2 + z_1
        let p = poly_d(2).unwrap();
        assert_eq!(p.entries().len(), 2);
        assert_eq!(p.coefficient(&zm(&[0])), Some(&h(&[(1, 2), (1, 2)])));
        assert_eq!(p.coefficient(&zm(&[1])), Some(&h(&[(1, 1)])));
        assert_eq!(p.render_grouped(), "(x + y)/2 + z_1");
    }

    #[test]
    fn poly_3_matches_table() {
        let p = poly_d(3).unwrap();
        let want: Vec<(&[u32], &[(i64, i64)])> = vec![
            (&[0, 0], &[(2, 9), (5, 9), (2, 9)]),
            (&[1, 0], &[(1, 3), (2, 3)]),
            (&[2, 0], &[(1, 2)]),
            (&[0, 1], &[(2, 3), (1, 3)]),
            (&[0, 2], &[(1, 2)]),
            (&[1, 1], &[(1, 1)]),
        ];
        assert_eq!(p.entries().len(), want.len());
        for (z, cs) in want {
            assert_eq!(p.coefficient(&zm(z)), Some(&h(cs)), "monomial {:?}", z);
        }
    }

    #[test]
    fn poly_4_matches_table() {
        let p = poly_d(4).unwrap();
        let want: Vec<(&[u32], &[(i64, i64)])> = vec![
            (&[0, 0, 0], &[(3, 32), (13, 32), (13, 32), (3, 32)]),
            (&[1, 0, 0], &[(1, 8), (1, 2), (3, 8)]),
            (&[2, 0, 0], &[(1, 6), (11, 18)]),
            (&[3, 0, 0], &[(2, 9)]),
            (&[0, 1, 0], &[(3, 16), (5, 8), (3, 16)]),
            (&[0, 2, 0], &[(3, 8), (3, 8)]),
            (&[0, 3, 0], &[(1, 4)]),
            (&[0, 0, 1], &[(3, 8), (1, 2), (1, 8)]),
            (&[0, 0, 2], &[(11, 18), (1, 6)]),
            (&[0, 0, 3], &[(2, 9)]),
            (&[0, 1, 1], &[(3, 4), (1, 4)]),
            (&[0, 2, 1], &[(1, 2)]),
            (&[0, 1, 2], &[(1, 3)]),
            (&[1, 0, 1], &[(1, 2), (1, 2)]),
            (&[2, 0, 1], &[(2, 3)]),
            (&[1, 0, 2], &[(2, 3)]),
            (&[1, 1, 0], &[(1, 4), (3, 4)]),
            (&[2, 1, 0], &[(1, 3)]),
            (&[1, 2, 0], &[(1, 2)]),
            (&[1, 1, 1], &[(1, 1)]),
        ];
        assert_eq!(p.entries().len(), want.len());
        for (z, cs) in want {
            assert_eq!(p.coefficient(&zm(z)), Some(&h(cs)), "monomial {:?}", z);
        }
    }

    #[test]
    fn poly_small_invariants() {
        for d in 1..=5 {
            let p = poly_d(d).unwrap();
            assert!(p.is_reversal_symmetric(), "d = {}", d);
            assert_eq!(p.normalization_value(), Rational::one(), "d = {}", d);
            // homogeneity: every term of the expansion has total degree d-1
            for (m, _) in p.to_poly().terms() {
                assert_eq!(m.total_degree(), d - 1);
            }
        }
    }

    #[test]
    fn records_round_trip() {
        let p = poly_d(4).unwrap();
        let rec = p.to_records();
        let back = PolyD::from_records(&rec).unwrap();
        assert_eq!(p, back);
    }
}
