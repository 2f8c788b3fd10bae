//! Hom, Ext^1 and ker-Ext for pairs of rank one modules.
//!
//! Everything here runs along two routes: closed dimension formulas,
//! and a finite linear-algebra oracle built from the truncated two-term
//! complex C^0 -> C^1 with differential
//!
//!   del(mu)_i = -a_i u^{r_i} mu_i + b_i phi(mu_{i-1}) u^{s_i}.
//!
//! The truncation at v^N (v = u^{e(K'/K)}) is faithful once N is at
//! least the quasi-isomorphism level; basis vectors are monomials
//! ordered by (component, degree).

use crate::error::{BkError, Result};
use crate::field::{Elt, FieldCtx};
use crate::laurent::{frobenius_substitute_into, TruncLaurent, Window};
use crate::matrix::MatrixGF;
use crate::params::{least_residue, AmbientParams};
use crate::rank_one::RankOneBK;
use crate::shapes::{gamma_star, Shape, TameType};

/// The v-adic level making the truncated complex quasi-isomorphic to
/// the full one: ceil((p e a h + 1)/(p - 1)).
pub fn truncation_level(params: &AmbientParams, a_len: u64, h_height: u64) -> u64 {
    let num = params.p * params.e * a_len * h_height + 1;
    num.div_ceil(params.p - 1)
}

fn assert_pair(m: &RankOneBK, n: &RankOneBK) {
    assert_eq!(m.params(), n.params(), "pair must share ambient params");
}

/// #{ j in [lo, hi) : j = t mod modulus } for a residue t.
fn count_congruent(lo: i64, hi: i64, t: u64, modulus: u64) -> u64 {
    if lo >= hi {
        return 0;
    }
    let first = lo + least_residue(t as i128 - lo as i128, modulus) as i64;
    if first >= hi {
        0
    } else {
        ((hi - 1 - first) / modulus as i64) as u64 + 1
    }
}

/// A monomial u^deg on the component `comp` in Z/fZ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub comp: usize,
    pub deg: i64,
}

/// The truncated presentation of the complex for a pair (M, N):
/// monomial bases of C^0 / (Phi_M^*)^{-1}(v^N C^1) and C^1 / v^N C^1,
/// and the matrix of the differential in those bases.
#[derive(Debug, Clone)]
pub struct ExtPresentation<'a> {
    pub pair: (&'a RankOneBK, &'a RankOneBK),
    pub trunc_level: u64,
    pub basis0: Vec<Monomial>,
    pub basis1: Vec<Monomial>,
    pub del: MatrixGF,
}

/// Degree residue of C^1 monomials on component i: [r_i + c_i - d_i].
fn class1(m: &RankOneBK, n: &RankOneBK, i: i64) -> u64 {
    least_residue(
        m.r_at(i) as i128 + m.c_at(i) as i128 - n.c_at(i) as i128,
        m.params().e_kk,
    )
}

/// Degree residue of C^0 monomials on component i: [c_i - d_i].
fn class0(m: &RankOneBK, n: &RankOneBK, i: i64) -> u64 {
    least_residue(m.c_at(i) as i128 - n.c_at(i) as i128, m.params().e_kk)
}

/// Builds the truncated presentation at level trunc + trunc_extra.
pub fn complex_build<'a>(
    m: &'a RankOneBK,
    n: &'a RankOneBK,
    trunc_extra: u64,
) -> ExtPresentation<'a> {
    assert_pair(m, n);
    let params = m.params();
    let field = params.field();
    let f = params.f as usize;
    let e_kk = params.e_kk as i64;
    let level = truncation_level(params, 1, 1) + trunc_extra;
    let bound = level as i64 * e_kk;

    let mut basis0 = Vec::new();
    let mut basis1 = Vec::new();
    let mut row_start = vec![0usize; f];
    for i in 0..f {
        row_start[i] = basis1.len();
        let t1 = class1(m, n, i as i64) as i64;
        let mut deg = t1;
        while deg < bound {
            basis1.push(Monomial { comp: i, deg });
            deg += e_kk;
        }
        let t0 = class0(m, n, i as i64) as i64;
        let mut deg = t0;
        while deg < bound - m.r_at(i as i64) as i64 {
            basis0.push(Monomial { comp: i, deg });
            deg += e_kk;
        }
    }
    debug_assert_eq!(basis1.len() as u64, level * f as u64);

    // Row lookup: on each component the C^1 degrees form an arithmetic
    // progression, so a monomial's row index is immediate.
    let row_of = |comp: usize, deg: i64| -> Option<usize> {
        if deg >= bound {
            return None;
        }
        let t1 = class1(m, n, comp as i64) as i64;
        debug_assert_eq!(least_residue((deg - t1) as i128, e_kk as u64), 0);
        Some(row_start[comp] + ((deg - t1) / e_kk) as usize)
    };

    let mut del = MatrixGF::zeros(basis1.len(), basis0.len());
    for (col, mono) in basis0.iter().enumerate() {
        let i = mono.comp as i64;
        // -a_i u^{r_i} mu_i lands on the same component
        if let Some(row) = row_of(mono.comp, mono.deg + m.r_at(i) as i64) {
            let v = field.add(del.get(row, col), field.neg(m.a_at(i)));
            del.set(row, col, v);
        }
        // b_{i+1} phi(mu_i) u^{s_{i+1}} lands on the next component
        let i2 = (mono.comp + 1) % f;
        let deg2 = params.p as i64 * mono.deg + n.r_at(i + 1) as i64;
        if let Some(row) = row_of(i2, deg2) {
            let v = field.add(del.get(row, col), n.a_at(i + 1));
            del.set(row, col, v);
        }
    }

    ExtPresentation {
        pair: (m, n),
        trunc_level: level,
        basis0,
        basis1,
        del,
    }
}

impl ExtPresentation<'_> {
    fn field(&self) -> &FieldCtx {
        self.pair.0.params().field()
    }

    /// (dim Hom, dim Ext^1) as nullity and corank of the differential.
    pub fn dims(&self) -> (u64, u64) {
        let rank = self.del.rank(self.field());
        (
            (self.del.cols() - rank) as u64,
            (self.del.rows() - rank) as u64,
        )
    }

    /// Dimension of the image in Ext^1 of the classes h with
    /// u^{max(0, r_i + s_i - e')} dividing h_i (height at most one).
    pub fn height_one_dim(&self) -> u64 {
        let (m, n) = self.pair;
        let params = m.params();
        let admissible: Vec<usize> = self
            .basis1
            .iter()
            .enumerate()
            .filter(|(_, mono)| {
                let i = mono.comp as i64;
                let cut = (m.r_at(i) + n.r_at(i)) as i64 - params.e_prime as i64;
                mono.deg >= cut.max(0)
            })
            .map(|(row, _)| row)
            .collect();
        let mut h_cols = MatrixGF::zeros(self.del.rows(), admissible.len());
        for (col, &row) in admissible.iter().enumerate() {
            h_cols.set(row, col, Elt::ONE);
        }
        let rank_del = self.del.rank(self.field());
        let rank_aug = self.del.hstack(&h_cols).rank(self.field());
        (rank_aug - rank_del) as u64
    }
}

/// Matrix-rank oracle for (dim Hom, dim Ext^1).
pub fn hom_ext_dims_oracle(m: &RankOneBK, n: &RankOneBK, trunc_extra: u64) -> (u64, u64) {
    complex_build(m, n, trunc_extra).dims()
}

/// Closed form: dim Ext^1 = Delta + sum_i #{ j in [0, r_i) : j =
/// r_i + c_i - d_i mod e(K'/K) }.
pub fn ext1_dim_formula(m: &RankOneBK, n: &RankOneBK) -> u64 {
    assert_pair(m, n);
    let params = m.params();
    let delta = m.hom_dim(n);
    delta
        + (0..params.f as i64)
            .map(|i| count_congruent(0, m.r_at(i) as i64, class1(m, n, i), params.e_kk))
            .sum::<u64>()
}

/// Closed form for the height-at-most-one subspace: the count starts
/// at max(0, r_i + s_i - e') instead of 0.
pub fn height1_subspace_dim_formula(m: &RankOneBK, n: &RankOneBK) -> u64 {
    assert_pair(m, n);
    let params = m.params();
    let delta = m.hom_dim(n);
    delta
        + (0..params.f as i64)
            .map(|i| {
                let lo = (m.r_at(i) + n.r_at(i)) as i64 - params.e_prime as i64;
                count_congruent(lo.max(0), m.r_at(i) as i64, class1(m, n, i), params.e_kk)
            })
            .sum::<u64>()
}

/// Height-one subspace dimension through the matrix oracle.
pub fn height1_subspace_dim_oracle(m: &RankOneBK, n: &RankOneBK, trunc_extra: u64) -> u64 {
    complex_build(m, n, trunc_extra).height_one_dim()
}

/// Pole bound for maps to N[1/u]/N: floor(e'/(p-1)).
fn pole_bound(params: &AmbientParams) -> i64 {
    (params.e_prime / (params.p - 1)) as i64
}

/// The Laurent-tail unknowns of Hom(M, N[1/u]/N): component i carries
/// the degrees j = c_i - d_i mod e(K'/K) with -B <= j < 0.
fn quotient_unknowns(m: &RankOneBK, n: &RankOneBK) -> Vec<Monomial> {
    let params = m.params();
    let bound = pole_bound(params);
    let e_kk = params.e_kk as i64;
    let mut out = Vec::new();
    for i in 0..params.f as usize {
        let t = class0(m, n, i as i64) as i64;
        let mut deg = t - e_kk;
        while deg >= -bound {
            out.push(Monomial { comp: i, deg });
            deg -= e_kk;
        }
    }
    out
}

/// Rows and columns of the linear system expressing that the polar
/// part of del(mu) vanishes. Returns (rows, matrix-filler) data:
/// entries are pushed as (row, col, value).
fn polar_system(
    m: &RankOneBK,
    n: &RankOneBK,
    unknowns: &[Monomial],
) -> (Vec<Monomial>, Vec<(usize, usize, Elt)>) {
    let params = m.params();
    let e_kk = params.e_kk as i64;
    let low = -(params.p as i64) * pole_bound(params);
    let mut rows = Vec::new();
    let mut row_start = vec![0usize; params.f as usize];
    for i in 0..params.f as usize {
        row_start[i] = rows.len();
        let t = class1(m, n, i as i64) as i64;
        // first degree = t mod e_kk that is >= low
        let mut deg = t - ((t - low).div_euclid(e_kk)) * e_kk;
        while deg < 0 {
            rows.push(Monomial { comp: i, deg });
            deg += e_kk;
        }
    }
    let row_of = |comp: usize, deg: i64| -> Option<usize> {
        if deg >= 0 {
            return None;
        }
        debug_assert!(deg >= low);
        let t1 = class1(m, n, comp as i64) as i64;
        let first = t1 - ((t1 - low).div_euclid(e_kk)) * e_kk;
        Some(row_start[comp] + ((deg - first) / e_kk) as usize)
    };
    let mut entries = Vec::new();
    for (col, mono) in unknowns.iter().enumerate() {
        let i = mono.comp as i64;
        if let Some(row) = row_of(mono.comp, mono.deg + m.r_at(i) as i64) {
            entries.push((row, col, m.params().field().neg(m.a_at(i))));
        }
        let i2 = (mono.comp + 1) % params.f as usize;
        let deg2 = params.p as i64 * mono.deg + n.r_at(i + 1) as i64;
        if let Some(row) = row_of(i2, deg2) {
            entries.push((row, col, n.a_at(i + 1)));
        }
    }
    (rows, entries)
}

/// dim Hom(M, N[1/u]/N): the nullity of the polar system over the
/// Laurent tails with poles bounded by floor(e'/(p-1)).
pub fn hom_to_u_quotient_dim(m: &RankOneBK, n: &RankOneBK) -> u64 {
    assert_pair(m, n);
    let unknowns = quotient_unknowns(m, n);
    if unknowns.is_empty() {
        return 0;
    }
    let (rows, entries) = polar_system(m, n, &unknowns);
    let mut mat = MatrixGF::zeros(rows.len(), unknowns.len());
    for (r, c, v) in entries {
        mat.set(r, c, m.params().field().add(mat.get(r, c), v));
    }
    (unknowns.len() - mat.rank(m.params().field())) as u64
}

/// dim kExt^1(M, N) through the four-term exact sequence:
/// dim Hom(M, N[1/u]/N) - (dim Hom_{G_K}(T(M), T(N)) - dim Hom(M, N)).
pub fn kext_dim(m: &RankOneBK, n: &RankOneBK) -> Result<u64> {
    let hq = hom_to_u_quotient_dim(m, n) as i64;
    let g = if m.chars_equal(n) { 1i64 } else { 0 };
    let delta = m.hom_dim(n) as i64;
    let val = hq - (g - delta);
    if val < 0 {
        return Err(BkError::InternalInconsistency(format!(
            "kExt dimension {val} < 0 contradicts the exact sequence"
        )));
    }
    Ok(val as u64)
}

/// Closed form for the maximal refined shape: the number of indices
/// 0 <= i < f where (i-1, i) is a transition and gamma*_i = 0, reduced
/// by one in the exceptional everywhere-transition case with e = 1 and
/// equal unramified parts.
pub fn kext_dim_maximal_formula(tau: &TameType, shape: &Shape, unram_equal: bool) -> u64 {
    let params = tau.params();
    let gs = gamma_star(tau, shape);
    let count = (0..params.f as i64)
        .filter(|&i| shape.is_transition(i) && gs[i as usize] == 0)
        .count() as u64;
    if params.e == 1 && unram_equal && count == params.f as u64 {
        count - 1
    } else {
        count
    }
}

/// A cocycle h in scrC^1: one integral polynomial per component of
/// Z/fZ, nonzero degrees congruent to r_i + c_i - d_i mod e(K'/K).
#[derive(Debug, Clone)]
pub struct ExtClass {
    h: Vec<TruncLaurent>,
}

impl ExtClass {
    /// Validates the degree congruences and integrality against (M, N).
    pub fn new(m: &RankOneBK, n: &RankOneBK, h: Vec<TruncLaurent>) -> Result<ExtClass> {
        assert_pair(m, n);
        let params = m.params();
        if h.len() != params.f as usize {
            return Err(BkError::InvalidSpec(format!(
                "cocycle must have f = {} components",
                params.f
            )));
        }
        for (i, hi) in h.iter().enumerate() {
            let t = class1(m, n, i as i64);
            for deg in hi.support() {
                if deg < 0 {
                    return Err(BkError::OutOfRange(format!(
                        "h[{i}] has a pole at degree {deg}"
                    )));
                }
                if least_residue(deg as i128, params.e_kk) != t {
                    return Err(BkError::BadCongruence(format!(
                        "h[{i}] has a term of degree {deg}, not congruent to {t} mod {}",
                        params.e_kk
                    )));
                }
            }
        }
        Ok(ExtClass { h })
    }

    pub fn zero(m: &RankOneBK, _n: &RankOneBK) -> ExtClass {
        let f = m.params().f as usize;
        ExtClass {
            h: vec![TruncLaurent::zero(Window::new(0, 1)); f],
        }
    }

    pub fn components(&self) -> &[TruncLaurent] {
        &self.h
    }

    pub fn component(&self, i: i64) -> &TruncLaurent {
        &self.h[i.rem_euclid(self.h.len() as i64) as usize]
    }

    /// The constant coefficient h_i^0.
    pub fn constant_coeff(&self, i: i64) -> Elt {
        self.component(i).coeff(0)
    }
}

/// The differential applied to a tuple of Laurent vectors, one per
/// component of Z/fZ, with an explicit output window.
pub fn apply_del(
    m: &RankOneBK,
    n: &RankOneBK,
    mu: &[TruncLaurent],
    out_win: Window,
) -> Result<Vec<TruncLaurent>> {
    assert_pair(m, n);
    let params = m.params();
    let field = params.field();
    let f = params.f as usize;
    assert_eq!(mu.len(), f, "mu must have f components");
    let mut out = Vec::with_capacity(f);
    for i in 0..f {
        let ii = i as i64;
        let term1 = mu[i].mul_monomial(m.r_at(ii) as i64, field.neg(m.a_at(ii)), field, out_win)?;
        let prev = (i + f - 1) % f;
        let phi_win = Window::new(
            out_win.lo.min(mu[prev].window().lo * params.p as i64),
            out_win
                .hi
                .max(mu[prev].window().hi * params.p as i64)
                .max(1),
        );
        let phi = frobenius_substitute_into(&mu[prev], params.p, phi_win)?;
        let term2 = phi.mul_monomial(n.r_at(ii) as i64, n.a_at(ii), field, out_win)?;
        out.push(term1.add(&term2, field)?.resize(out_win)?);
    }
    Ok(out)
}

/// Whether the class of h dies after inverting u: solvability of the
/// finite system del(mu + sigma) = h with mu a Laurent tail of poles
/// at most floor(e'/(p-1)), sigma integral, and del(mu) integral.
pub fn splits_after_inverting_u(
    m: &RankOneBK,
    n: &RankOneBK,
    h: &ExtClass,
    trunc_extra: u64,
) -> Result<bool> {
    assert_pair(m, n);
    let params = m.params();
    let field = params.field();
    let pres = complex_build(m, n, trunc_extra);
    let bound = pres.trunc_level as i64 * params.e_kk as i64;

    let mu_unknowns = quotient_unknowns(m, n);
    let (neg_rows, neg_entries) = polar_system(m, n, &mu_unknowns);
    let n_neg = neg_rows.len();
    let n_rows = n_neg + pres.basis1.len();
    let n_cols = mu_unknowns.len() + pres.basis0.len();

    let mut mat = MatrixGF::zeros(n_rows, n_cols);
    for (r, c, v) in neg_entries {
        mat.set(r, c, field.add(mat.get(r, c), v));
    }
    // positive-degree contributions of del(mu) into the basis1 rows
    let row1_of = |comp: usize, deg: i64| -> Option<usize> {
        if deg < 0 || deg >= bound {
            return None;
        }
        pres.basis1
            .iter()
            .position(|mono| mono.comp == comp && mono.deg == deg)
            .map(|r| n_neg + r)
    };
    for (col, mono) in mu_unknowns.iter().enumerate() {
        let i = mono.comp as i64;
        if let Some(row) = row1_of(mono.comp, mono.deg + m.r_at(i) as i64) {
            mat.set(row, col, field.add(mat.get(row, col), field.neg(m.a_at(i))));
        }
        let i2 = (mono.comp + 1) % params.f as usize;
        let deg2 = params.p as i64 * mono.deg + n.r_at(i + 1) as i64;
        if let Some(row) = row1_of(i2, deg2) {
            mat.set(row, col, field.add(mat.get(row, col), n.a_at(i + 1)));
        }
    }
    // integral cochains contribute through the presentation matrix
    for col in 0..pres.basis0.len() {
        for row in 0..pres.basis1.len() {
            let v = pres.del.get(row, col);
            if !v.is_zero() {
                mat.set(n_neg + row, mu_unknowns.len() + col, v);
            }
        }
    }

    let mut rhs = vec![Elt::ZERO; n_rows];
    for (r, mono) in pres.basis1.iter().enumerate() {
        rhs[n_neg + r] = h.component(mono.comp as i64).coeff(mono.deg);
    }
    Ok(mat.is_solvable(&rhs, field))
}
