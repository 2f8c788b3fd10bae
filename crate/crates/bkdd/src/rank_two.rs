//! Rank two extensions P(h): type and height checks, Dieudonne F/V
//! vanishing patterns, and the base-change invariants controlling the
//! irreducible locus.

use crate::error::{BkError, Result};
use crate::ext::ExtClass;
use crate::field::Elt;
use crate::laurent::TruncLaurent;
use crate::params::{least_residue, TypeKind};
use crate::rank_one::RankOneBK;
use crate::shapes::{pair_has_type, shape_of_pair, Shape, TameType};

/// The extension of M by N with cocycle h: Phi sends 1 (x) n_{i-1} to
/// b_i u^{s_i} n_i and 1 (x) m_{i-1} to a_i u^{r_i} m_i + h_i n_i.
#[derive(Debug, Clone)]
pub struct RankTwoExt {
    pub m: RankOneBK,
    pub n: RankOneBK,
    pub h: ExtClass,
}

/// Validates the cocycle degree congruences and wraps the extension.
pub fn build_extension(m: &RankOneBK, n: &RankOneBK, h: Vec<TruncLaurent>) -> Result<RankTwoExt> {
    let h = ExtClass::new(m, n, h)?;
    Ok(RankTwoExt {
        m: m.clone(),
        n: n.clone(),
        h,
    })
}

/// Whether P is a Barsotti-Tate extension of type tau: equivalent to
/// the pair (M, N) having type tau, with height at most one certified
/// by u^{r_i + s_i - e'} dividing h_i.
pub fn check_bt_type(ext: &RankTwoExt, tau: &TameType) -> bool {
    if !pair_has_type(&ext.m, &ext.n, tau) {
        return false;
    }
    let params = ext.m.params();
    (0..params.f as i64).all(|i| {
        let cut = (ext.m.r_at(i) + ext.n.r_at(i)) as i64 - params.e_prime as i64;
        cut <= 0 || ext.h.component(i).min_deg().is_none_or(|d| d >= cut)
    })
}

/// The eta-isotypic F/V scalars of the Dieudonne module of P: on the
/// line D_{eta,j}, F maps into D_{eta,j+1} with the stored constant
/// and V maps back with the other; F V = V F = 0 throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DieudonnePattern {
    pub f_consts: Vec<Elt>,
    pub v_consts: Vec<Elt>,
    pub cbar: Elt,
}

impl DieudonnePattern {
    /// Indices j with F = 0 on D_{eta,j}.
    pub fn x_zero(&self) -> Vec<usize> {
        (0..self.f_consts.len())
            .filter(|&j| self.f_consts[j].is_zero())
            .collect()
    }

    /// Indices j with V = 0 into D_{eta,j}.
    pub fn y_zero(&self) -> Vec<usize> {
        (0..self.v_consts.len())
            .filter(|&j| self.v_consts[j].is_zero())
            .collect()
    }
}

/// Computes the F/V scalars of D(P) from the shape of (M, N) and the
/// constant coefficients of h; cbar is the unit E(0)/p.
pub fn dieudonne_pattern(ext: &RankTwoExt, tau: &TameType, cbar: Elt) -> Result<DieudonnePattern> {
    if cbar.is_zero() {
        return Err(BkError::OutOfRange("cbar must be a unit".into()));
    }
    let Some(shape) = shape_of_pair(&ext.m, &ext.n, tau) else {
        return Err(BkError::InvalidSpec(
            "extension pair is not of type tau".into(),
        ));
    };
    let params = ext.m.params();
    let field = params.field();
    let fp = params.f_prime as usize;
    let mut f_consts = vec![Elt::ZERO; fp];
    let mut v_consts = vec![Elt::ZERO; fp];
    for j in 0..fp {
        let i = j as i64 + 1; // the case table reads the pair (i-1, i)
        let (a, b) = (ext.m.a_at(i), ext.n.a_at(i));
        let h0 = ext.h.constant_coeff(i);
        match (shape.contains(i - 1), shape.contains(i)) {
            (true, true) => {
                v_consts[j] = field.inv(field.mul(cbar, a));
            }
            (false, false) => {
                f_consts[j] = b;
            }
            (true, false) => {
                f_consts[j] = h0;
            }
            (false, true) => {
                v_consts[j] = field.neg(field.mul(field.inv(field.mul(field.mul(cbar, a), b)), h0));
            }
        }
        debug_assert!(
            field.mul(f_consts[j], v_consts[j]).is_zero(),
            "F V = p = 0 on each line"
        );
    }
    Ok(DieudonnePattern {
        f_consts,
        v_consts,
        cbar,
    })
}

/// The generic vanishing pattern of the divisor law: F vanishes on
/// D_{eta,j} exactly when j+1 lies in J, and V on the complement.
pub fn divisor_membership(tau: &TameType, shape: &Shape) -> Result<(Vec<usize>, Vec<usize>)> {
    if tau.is_scalar() {
        return Err(BkError::ScalarType);
    }
    let fp = tau.params().f_prime as usize;
    let x_zero = (0..fp).filter(|&j| shape.contains(j as i64 + 1)).collect();
    let y_zero = (0..fp).filter(|&j| !shape.contains(j as i64 + 1)).collect();
    Ok((x_zero, y_zero))
}

/// The exponents x_i of a nonzero map N -> M^(f) over L, or None when
/// no such map exists (so no irreducible enrichment arises from the
/// pair). Input modules live over a cuspidal ambient.
pub fn base_change_x(m: &RankOneBK, n: &RankOneBK) -> Result<Option<Vec<i64>>> {
    if m.params().kind != TypeKind::Cuspidal {
        return Err(BkError::NotCuspidal);
    }
    assert_eq!(m.params(), n.params(), "pair must share ambient params");
    let m_l = m.restrict_to_l()?;
    let n_l = n.restrict_to_l()?;
    let m_twist = m_l.shift_by_f();
    if n_l.hom_dim(&m_twist) == 0 {
        return Ok(None);
    }
    let params_l = m_l.params();
    let fp = params_l.f_prime as usize;
    let f = fp / 2;
    let alpha_n = n_l.alpha();
    let alpha_m = m_l.alpha();
    let x: Vec<i64> = (0..fp)
        .map(|i| alpha_n[i] - alpha_m[(i + f) % fp])
        .collect();
    for i in 0..fp {
        assert!(x[i] >= 0, "a nonzero map forces alpha domination");
        assert_eq!(
            x[i],
            x[(i + f) % fp],
            "determinant condition forces x_i = x_(i+f)"
        );
        let expected = least_residue(
            n_l.c_at(i as i64) as i128 - m_l.c_at(i as i64 + f as i64) as i128,
            params_l.e_kk,
        );
        assert_eq!(
            least_residue(x[i] as i128, params_l.e_kk),
            expected,
            "conjugate characters force x_i = d_i - c_(i+f)"
        );
    }
    Ok(Some(x))
}

/// Dimension data for the irreducible-enrichment fibre attached to a
/// pair over L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IrredBound {
    /// No nonzero map N -> M^(f): no irreducible enrichment exists.
    NoMap,
    /// Some x_i > 0 has x_i + c_i - d_i nonzero mod e(K'/K): the fibre
    /// is empty.
    Empty,
    /// 1 + sum_{i<f} ceil(x_i / (p^f' - 1)).
    Dim(u64),
}

/// The fibre dimension bound from the x_i invariants.
pub fn irred_dim_bound(m: &RankOneBK, n: &RankOneBK) -> Result<IrredBound> {
    let Some(x) = base_change_x(m, n)? else {
        return Ok(IrredBound::NoMap);
    };
    let params = m.params();
    let e_kk = params.e_kk;
    for i in 0..params.f_prime as usize {
        let ci = m.c_at(i as i64) as i128;
        let di = n.c_at(i as i64) as i128;
        if x[i] > 0 && least_residue(x[i] as i128 + ci - di, e_kk) != 0 {
            return Ok(IrredBound::Empty);
        }
    }
    let f = params.f as usize;
    let total: u64 = x[..f].iter().map(|&xi| (xi as u64).div_ceil(e_kk)).sum();
    Ok(IrredBound::Dim(1 + total))
}
