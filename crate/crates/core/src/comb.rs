//! The comb-type map from `Poly_d` to recursion formulas.
//!
//! Each monomial `x^(d_0) z_{i_1}^(d_{i_1}) .. z_{i_m}^(d_{i_m}) y^(d_d)`
//! of `Poly_d` (total degree d-1) is classified by its comb type
//! `0 = i_0 < i_1 < ... < i_m < i_{m+1} = d` and mapped to the product
//!
//! ```text
//! prod_{j=1..m+1} L_{n + delta_j}^{N+1, k, i_j - i_{j-1}}
//! ```
//!
//! where the shift vector `delta` is affine in `N - k`:
//!
//! ```text
//! delta_j = (m+1-d) + (i_{j-1} - j + 1) + i_{j-1} (N-k)
//!           + sum_{l=j..m} (d_{i_l} - 1) + d_{i_{m+1}}
//! ```
//!
//! Summing the images over all monomials yields the recursion formula that
//! lowers `L_n^{N,k,d}` to level `N+1`. Shifts are kept affine in `N - k`
//! so a single formula serves every `(N, k)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polyd::{PolyD, ZMonomial};
use crate::rational::Rational;

/// Comb type of a monomial: breakpoints bracketed by 0 and d, with the
/// exponent attached to each breakpoint. `exponents[0]` and the last entry
/// are the x- and y-powers; interior exponents are at least 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CombType {
    pub breakpoints: Vec<u32>,
    pub exponents: Vec<u32>,
}

/// A lower-index shift `constant + nk * (N - k)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Shift {
    pub constant: i64,
    pub nk: i64,
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n")?;
        if self.constant != 0 {
            write!(f, "{:+}", self.constant)?;
        }
        match self.nk {
            0 => {}
            1 => write!(f, "+(N-k)")?,
            -1 => write!(f, "-(N-k)")?,
            s if s > 0 => write!(f, "+{}(N-k)", s)?,
            s => write!(f, "-{}(N-k)", -s)?,
        }
        Ok(())
    }
}

/// The per-factor shifts of one comb, affine in `N - k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaVector(pub Vec<Shift>);

/// Exponent bookkeeping failure when reading a comb off a monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombError {
    pub expected_total: u32,
    pub got_total: u32,
}

impl fmt::Display for CombError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "comb exponents must sum to {}, got {}",
            self.expected_total, self.got_total
        )
    }
}

impl std::error::Error for CombError {}

/// Reads the comb type of `x^(d0) * z^m * y^(dd)`; the working degree is
/// `len(m) + 1` and the exponents must sum to `d - 1`.
pub fn comb_of(m: &ZMonomial, d0: u32, dd: u32) -> Result<CombType, CombError> {
    let d = m.0.len() as u32 + 1;
    let total = d0 + m.total() + dd;
    if total != d - 1 {
        return Err(CombError {
            expected_total: d - 1,
            got_total: total,
        });
    }
    let mut breakpoints = vec![0u32];
    let mut exponents = vec![d0];
    for (idx, e) in m.0.iter().enumerate() {
        if *e > 0 {
            breakpoints.push(idx as u32 + 1);
            exponents.push(*e);
        }
    }
    breakpoints.push(d);
    exponents.push(dd);
    Ok(CombType {
        breakpoints,
        exponents,
    })
}

/// The shift vector of a comb:
/// `delta = alpha + beta + gamma + sum (d_{i_j}-1) eps_j + d_{i_{m+1}} eps_{m+1}`.
pub fn delta_of(c: &CombType) -> DeltaVector {
    let m = c.breakpoints.len() as i64 - 2; // interior breakpoint count
    let d = *c.breakpoints.last().unwrap() as i64;
    let last_exp = *c.exponents.last().unwrap() as i64;
    let mut shifts = Vec::with_capacity((m + 1) as usize);
    for j in 1..=(m + 1) {
        let prev_bp = c.breakpoints[(j - 1) as usize] as i64;
        let tail: i64 = (j..=m)
            .map(|l| c.exponents[l as usize] as i64 - 1)
            .sum();
        shifts.push(Shift {
            constant: (m + 1 - d) + (prev_bp - j + 1) + tail + last_exp,
            nk: prev_bp,
        });
    }
    DeltaVector(shifts)
}

/// One `L`-factor of a recursion term.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RecursionFactor {
    pub degree: u32,
    pub shift: Shift,
}

impl fmt::Display for RecursionFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[{}]^{}", self.shift, self.degree)
    }
}

/// A rational coefficient times a product of `L`-factors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecursionTerm {
    pub coefficient: Rational,
    pub factors: Vec<RecursionFactor>,
}

impl RecursionTerm {
    fn key(&self) -> Vec<(u32, i64, i64)> {
        self.factors
            .iter()
            .map(|f| (f.degree, f.shift.constant, f.shift.nk))
            .collect()
    }
}

impl fmt::Display for RecursionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coefficient)?;
        for factor in &self.factors {
            write!(f, " {}", factor)?;
        }
        Ok(())
    }
}

/// The degree-d recursion: `L_n^{N,k,d}` as a weighted-homogeneous degree-d
/// expression in the `L^{N+1,k,d'}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecursionFormula {
    pub d: u32,
    pub terms: Vec<RecursionTerm>,
}

impl RecursionFormula {
    /// Like terms collected and canonically ordered; the comparison form
    /// used by the golden-file tests.
    pub fn normalized(&self) -> RecursionFormula {
        let mut collected: Vec<(Vec<(u32, i64, i64)>, RecursionTerm)> = Vec::new();
        for t in &self.terms {
            let key = t.key();
            match collected.iter_mut().find(|(k, _)| *k == key) {
                Some((_, existing)) => {
                    existing.coefficient =
                        existing.coefficient.clone() + t.coefficient.clone();
                }
                None => collected.push((key, t.clone())),
            }
        }
        collected.retain(|(_, t)| !t.coefficient.is_zero());
        collected.sort_by(|(a, _), (b, _)| a.cmp(b));
        RecursionFormula {
            d: self.d,
            terms: collected.into_iter().map(|(_, t)| t).collect(),
        }
    }

    /// The coefficient carried by an exact factor pattern, zero if absent.
    pub fn coefficient_of(&self, factors: &[(u32, i64, i64)]) -> Rational {
        self.normalized()
            .terms
            .iter()
            .find(|t| t.key() == factors)
            .map(|t| t.coefficient.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Appendix-style rendering, one term per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for t in &self.terms {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }

    pub fn to_records(&self) -> FormulaRecords {
        FormulaRecords {
            version: 1,
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|t| FormulaTerm {
                    coeff: t.coefficient.to_string(),
                    factors: t
                        .factors
                        .iter()
                        .map(|f| FormulaFactor {
                            deg: f.degree,
                            shift_const: f.shift.constant,
                            shift_nk: f.shift.nk,
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_records(rec: &FormulaRecords) -> Result<RecursionFormula, String> {
        let mut terms = Vec::new();
        for t in &rec.terms {
            let coefficient: Rational = t.coeff.parse().map_err(|e| format!("{}", e))?;
            let factors: Vec<RecursionFactor> = t
                .factors
                .iter()
                .map(|f| RecursionFactor {
                    degree: f.deg,
                    shift: Shift {
                        constant: f.shift_const,
                        nk: f.shift_nk,
                    },
                })
                .collect();
            let degree_sum: u32 = factors.iter().map(|f| f.degree).sum();
            if degree_sum != rec.d {
                return Err(format!(
                    "term degrees sum to {}, formula degree is {}",
                    degree_sum, rec.d
                ));
            }
            terms.push(RecursionTerm {
                coefficient,
                factors,
            });
        }
        Ok(RecursionFormula { d: rec.d, terms })
    }
}

/// Versioned serialization schema for recursion formulas.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormulaRecords {
    pub version: u32,
    pub d: u32,
    pub terms: Vec<FormulaTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormulaTerm {
    pub coeff: String,
    pub factors: Vec<FormulaFactor>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormulaFactor {
    pub deg: u32,
    pub shift_const: i64,
    pub shift_nk: i64,
}

/// Applies the comb-type map to every monomial of `Poly_d`: one recursion
/// term per nonzero `(x-power, z-monomial, y-power)` triple, canonically
/// ordered by (factor degrees, shifts).
pub fn phi_map(p: &PolyD) -> RecursionFormula {
    let mut terms = Vec::new();
    for (z, h) in p.entries() {
        let r = h.degree();
        for (a, c) in h.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d0 = r - a as u32;
            let dd = a as u32;
            let comb = comb_of(z, d0, dd).expect("PolyD entries are homogeneous of degree d-1");
            let delta = delta_of(&comb);
            let factors: Vec<RecursionFactor> = delta
                .0
                .iter()
                .enumerate()
                .map(|(j, shift)| RecursionFactor {
                    degree: comb.breakpoints[j + 1] - comb.breakpoints[j],
                    shift: *shift,
                })
                .collect();
            debug_assert_eq!(factors.iter().map(|f| f.degree).sum::<u32>(), p.d());
            debug_assert_eq!(factors.len(), comb.breakpoints.len() - 1);
            terms.push(RecursionTerm {
                coefficient: c.clone(),
                factors,
            });
        }
    }
    let mut formula = RecursionFormula { d: p.d(), terms };
    formula.terms.sort_by_key(|t| t.key());
    formula
}

/// Parse error for the human-readable formula notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormulaParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormulaParseError {}

/// Parses the rendering produced by [`RecursionFormula::render`]: one term
/// per line, `coeff L[shift]^deg ...`, where a shift is `n`, an optional
/// signed integer, and an optional signed `(N-k)` multiple, e.g.
/// `n-1+2(N-k)`. Lines starting with `#` are comments. Unreduced
/// coefficients such as `12/18` are accepted.
pub fn parse_formula(d: u32, text: &str) -> Result<RecursionFormula, FormulaParseError> {
    let mut terms = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| FormulaParseError {
            line: lineno + 1,
            message,
        };
        let mut tokens = line.split_whitespace();
        let coeff_tok = tokens.next().ok_or_else(|| err("empty term".into()))?;
        let coefficient: Rational = coeff_tok
            .parse()
            .map_err(|_| err(format!("bad coefficient `{}`", coeff_tok)))?;
        let mut factors = Vec::new();
        for tok in tokens {
            let rest = tok
                .strip_prefix("L[")
                .ok_or_else(|| err(format!("expected L[..]^deg, got `{}`", tok)))?;
            let (shift_str, deg_str) = rest
                .split_once("]^")
                .ok_or_else(|| err(format!("expected L[..]^deg, got `{}`", tok)))?;
            let degree: u32 = deg_str
                .parse()
                .map_err(|_| err(format!("bad degree `{}`", deg_str)))?;
            let shift = parse_shift(shift_str).map_err(|m| err(m))?;
            factors.push(RecursionFactor { degree, shift });
        }
        let degree_sum: u32 = factors.iter().map(|f| f.degree).sum();
        if degree_sum != d {
            return Err(err(format!(
                "factor degrees sum to {}, expected {}",
                degree_sum, d
            )));
        }
        terms.push(RecursionTerm {
            coefficient,
            factors,
        });
    }
    Ok(RecursionFormula { d, terms })
}

fn parse_shift(s: &str) -> Result<Shift, String> {
    let bytes = s.as_bytes();
    if bytes.is_empty() || bytes[0] != b'n' {
        return Err(format!("shift must start with n: `{}`", s));
    }
    let mut shift = Shift { constant: 0, nk: 0 };
    let mut pos = 1;
    while pos < bytes.len() {
        let sign: i64 = match bytes[pos] {
            b'+' => 1,
            b'-' => -1,
            _ => return Err(format!("expected sign at `{}` in `{}`", &s[pos..], s)),
        };
        pos += 1;
        // optional integer
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let digits: Option<i64> = if pos > start {
            Some(s[start..pos].parse().unwrap())
        } else {
            None
        };
        // optional (N-k), with or without enclosing parens
        let tail = &s[pos..];
        let nk_len = if tail.starts_with("(N-k)") {
            Some(5)
        } else if tail.starts_with("N-k") {
            Some(3)
        } else {
            None
        };
        match (digits, nk_len) {
            (Some(v), None) => shift.constant += sign * v,
            (Some(v), Some(l)) => {
                shift.nk += sign * v;
                pos += l;
            }
            (None, Some(l)) => {
                shift.nk += sign;
                pos += l;
            }
            (None, None) => return Err(format!("dangling sign in shift `{}`", s)),
        }
    }
    Ok(shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyd::poly_d;

    fn q(n: i64, den: i64) -> Rational {
        Rational::new(n, den)
    }

    fn zm(v: &[u32]) -> ZMonomial {
        ZMonomial(v.to_vec())
    }

    #[test]
    fn comb_of_examples() {
        // d=2, z_1: 0 < 1 < 2 with interior exponent 1
        let c = comb_of(&zm(&[1]), 0, 0).unwrap();
        assert_eq!(c.breakpoints, vec![0, 1, 2]);
        assert_eq!(c.exponents, vec![0, 1, 0]);

        // d=4, x z_2 z_3: 0 < 2 < 3 < 4 with unit interior exponents
        let c = comb_of(&zm(&[0, 1, 1]), 1, 0).unwrap();
        assert_eq!(c.breakpoints, vec![0, 2, 3, 4]);
        assert_eq!(c.exponents, vec![1, 1, 1, 0]);

        // d=5, z_1^2 z_4^2: 0 < 1 < 4 < 5
        let c = comb_of(&zm(&[2, 0, 0, 2]), 0, 0).unwrap();
        assert_eq!(c.breakpoints, vec![0, 1, 4, 5]);
        assert_eq!(c.exponents, vec![0, 2, 2, 0]);

        // exponent mismatch
        assert!(comb_of(&zm(&[1, 0, 0]), 1, 0).is_err());
    }

    #[test]
    fn delta_examples() {
        // d=2, z_1: delta = (0, (N-k))
        let delta = delta_of(&comb_of(&zm(&[1]), 0, 0).unwrap());
        assert_eq!(
            delta.0,
            vec![Shift { constant: 0, nk: 0 }, Shift { constant: 0, nk: 1 }]
        );

        // d=2, monomial x: single factor L^2 at shift -1
        let delta = delta_of(&comb_of(&zm(&[0]), 1, 0).unwrap());
        assert_eq!(delta.0, vec![Shift { constant: -1, nk: 0 }]);

        // d=3, z_1 z_2: delta = (0, (N-k), 2(N-k))
        let delta = delta_of(&comb_of(&zm(&[1, 1]), 0, 0).unwrap());
        assert_eq!(
            delta.0,
            vec![
                Shift { constant: 0, nk: 0 },
                Shift { constant: 0, nk: 1 },
                Shift { constant: 0, nk: 2 }
            ]
        );

        // d=5, z_1^2 z_4^2: factors L^1 L^3 L^1 with shifts
        // (0, -1+(N-k), 4(N-k))
        let comb = comb_of(&zm(&[2, 0, 0, 2]), 0, 0).unwrap();
        let delta = delta_of(&comb);
        assert_eq!(
            delta.0,
            vec![
                Shift { constant: 0, nk: 0 },
                Shift { constant: -1, nk: 1 },
                Shift { constant: 0, nk: 4 }
            ]
        );
    }

    #[test]
    fn phi_map_degree_one() {
        // L_n^{N,k,1} = L_n^{N+1,k,1}
        let f = phi_map(&poly_d(1).unwrap());
        assert_eq!(f.terms.len(), 1);
        assert_eq!(f.terms[0].coefficient, Rational::one());
        assert_eq!(
            f.terms[0].factors,
            vec![RecursionFactor {
                degree: 1,
                shift: Shift { constant: 0, nk: 0 }
            }]
        );
    }

    #[test]
    fn phi_map_degree_two() {
        // 1/2 L[n-1]^2 + 1/2 L[n]^2 + 1 L[n]^1 L[n+(N-k)]^1
        let f = phi_map(&poly_d(2).unwrap());
        let want = parse_formula(
            2,
            "1/2 L[n-1]^2\n1/2 L[n]^2\n2/2 L[n]^1 L[n+N-k]^1\n",
        )
        .unwrap();
        assert_eq!(f.normalized(), want.normalized());
    }

    #[test]
    fn render_parse_round_trip() {
        let f = phi_map(&poly_d(3).unwrap());
        let parsed = parse_formula(3, &f.render()).unwrap();
        assert_eq!(f.normalized(), parsed.normalized());
    }

    #[test]
    fn shift_rendering() {
        for (shift, s) in [
            (Shift { constant: 0, nk: 0 }, "n"),
            (Shift { constant: -2, nk: 0 }, "n-2"),
            (Shift { constant: 1, nk: 3 }, "n+1+3(N-k)"),
            (Shift { constant: -1, nk: 1 }, "n-1+(N-k)"),
            (Shift { constant: 0, nk: -2 }, "n-2(N-k)"),
        ] {
            assert_eq!(shift.to_string(), s);
            assert_eq!(parse_shift(s).unwrap(), shift);
        }
    }

    #[test]
    fn linearity_over_fragments() {
        // phi of a sum of PolyD fragments is the concatenation of images:
        // the map is term-by-term, so splitting the entry set must not
        // change the normalized formula.
        let p = poly_d(3).unwrap();
        let full = phi_map(&p).normalized();
        let rec = p.to_records();
        let mut left = rec.clone();
        let mut right = rec.clone();
        let half = rec.entries.len() / 2;
        left.entries.truncate(half);
        right.entries.drain(..half);
        let mut terms = phi_map(&PolyD::from_records(&left).unwrap()).terms;
        terms.extend(phi_map(&PolyD::from_records(&right).unwrap()).terms);
        let stitched = RecursionFormula { d: 3, terms }.normalized();
        assert_eq!(full, stitched);
    }

    #[test]
    fn degree_five_anchors() {
        let f = phi_map(&poly_d(5).unwrap()).normalized();
        // leading pure-degree-5 coefficients
        assert_eq!(f.coefficient_of(&[(5, -4, 0)]), q(24, 625));
        assert_eq!(f.coefficient_of(&[(5, -3, 0)]), q(154, 625));
        assert_eq!(f.coefficient_of(&[(5, -2, 0)]), q(269, 625));
        // the cross term L^1 L^3 L^1 with shifts (0, -1+(N-k), 4(N-k))
        assert_eq!(
            f.coefficient_of(&[(1, 0, 0), (3, -1, 1), (1, 0, 4)]),
            q(2, 3)
        );
    }

    #[test]
    fn weighted_homogeneity() {
        for d in 1..=5 {
            let f = phi_map(&poly_d(d).unwrap());
            for t in &f.terms {
                assert_eq!(t.factors.iter().map(|f| f.degree).sum::<u32>(), d);
            }
        }
    }

    #[test]
    fn records_round_trip() {
        let f = phi_map(&poly_d(4).unwrap());
        let rec = f.to_records();
        let back = RecursionFormula::from_records(&rec).unwrap();
        assert_eq!(f, back);
        let json = serde_json::to_string(&rec).unwrap();
        let rec2: FormulaRecords = serde_json::from_str(&json).unwrap();
        assert_eq!(rec, rec2);
    }
}
