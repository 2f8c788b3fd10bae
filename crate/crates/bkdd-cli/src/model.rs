//! Per-shape computations and the serializable report model. Every
//! numeric field is named after the operation that produced it, and
//! serialization order follows struct declaration order, so output is
//! byte-identical across runs for the same instance.

use bkdd::*;
use serde::Serialize;

#[derive(Serialize, Clone)]
pub struct InstanceOut {
    pub p: u64,
    pub f: u32,
    pub e: u64,
    pub kind: String,
    pub k0: u64,
    pub k0p: u64,
    pub m: u32,
    pub f_prime: u32,
    pub e_kk: u64,
    pub e_prime: u64,
    pub field_size: u64,
    pub field_modulus: Vec<u64>,
    pub cbar: u64,
    pub trunc_extra: u64,
}

pub fn instance_out(tau: &TameType, cbar: Elt, trunc_extra: u64) -> InstanceOut {
    let params = tau.params();
    InstanceOut {
        p: params.p,
        f: params.f,
        e: params.e,
        kind: kind_name(params.kind).into(),
        k0: tau.k0(),
        k0p: tau.k0p(),
        m: params.field().degree(),
        f_prime: params.f_prime,
        e_kk: params.e_kk,
        e_prime: params.e_prime,
        field_size: params.field().size(),
        field_modulus: params.field().modulus().to_vec(),
        cbar: cbar.0,
        trunc_extra,
    }
}

pub fn kind_name(kind: TypeKind) -> &'static str {
    match kind {
        TypeKind::PrincipalSeries => "principal_series",
        TypeKind::Cuspidal => "cuspidal",
        TypeKind::ScalarPs => "scalar",
    }
}

#[derive(Serialize, Clone)]
pub struct WeightOut {
    pub weight_s: Vec<u64>,
    pub weight_t: Vec<u64>,
    pub weight_twist_w: u64,
    pub central_char_check: bool,
}

#[derive(Serialize, Clone)]
pub struct IrredOut {
    pub base_change_x: Option<Vec<i64>>,
    pub irred_dim_bound: String,
}

/// Everything the report knows about one shape.
#[derive(Serialize, Clone)]
pub struct ShapeReport {
    pub shape: Vec<usize>,
    pub in_p_tau: bool,
    pub transitions: Vec<usize>,
    pub gamma_star: Vec<u64>,
    pub maximal_r: Vec<u64>,
    pub maximal_y: Vec<u64>,
    pub refined_count: u64,
    pub pair_c: Vec<u64>,
    pub pair_d: Vec<u64>,
    pub hom_dim_formula: u64,
    pub hom_dim_oracle: u64,
    pub ext1_dim_formula: u64,
    pub ext1_dim_oracle: u64,
    pub height1_dim_formula: u64,
    pub height1_dim_oracle: u64,
    pub hom_to_u_quotient_dim: u64,
    pub kext_dim_oracle: u64,
    pub kext_dim_maximal_formula: u64,
    pub char_w_closed_form: u64,
    pub char_w_rank_one: u64,
    pub char_unram: u64,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor_x_zero: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor_y_zero: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dieudonne_f_consts: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dieudonne_v_consts: Option<Vec<u64>>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    pub irred: Option<IrredOut>,
}

/// Cocycle with unit constant coefficients at the transitions of J;
/// its Dieudonne pattern realizes the generic divisor law.
pub fn generic_cocycle(tau: &TameType, shape: &Shape) -> Vec<TruncLaurent> {
    (0..tau.params().f as i64)
        .map(|i| {
            if shape.is_transition(i) {
                TruncLaurent::monomial(Window::new(0, 1), 0, Elt::ONE).unwrap()
            } else {
                TruncLaurent::zero(Window::new(0, 1))
            }
        })
        .collect()
}

pub fn shape_report(tau: &TameType, shape: &Shape, cbar: Elt, trunc_extra: u64) -> ShapeReport {
    let params = tau.params();
    let in_p_tau = p_tau(tau).contains(shape);
    let rs = maximal_refined(tau, shape);
    let refined_count = enumerate_refined(tau, shape).len() as u64;
    let (m, n) = build_pair(tau, &rs);
    let pres = complex_build(&m, &n, trunc_extra);
    let (hom_oracle, ext_oracle) = pres.dims();
    let char_rank_one = n.galois_char();
    let char_closed = char_of_nj_formula(tau, shape);

    let weight = if in_p_tau {
        let w = jh_factor(tau, shape).expect("shape is in P_tau");
        Some(WeightOut {
            weight_s: w.s,
            weight_t: w.t,
            weight_twist_w: w.twist.w,
            central_char_check: central_char_check(tau, shape),
        })
    } else {
        None
    };

    let (divisor_x_zero, divisor_y_zero, dieudonne_f_consts, dieudonne_v_consts) =
        if tau.is_scalar() {
            (None, None, None, None)
        } else {
            let (x, y) = divisor_membership(tau, shape).expect("non-scalar type");
            let ext = build_extension(&m, &n, generic_cocycle(tau, shape))
                .expect("generic cocycle satisfies the congruences");
            let pat = dieudonne_pattern(&ext, tau, cbar).expect("pair has type tau");
            (
                Some(x),
                Some(y),
                Some(pat.f_consts.iter().map(|c| c.0).collect()),
                Some(pat.v_consts.iter().map(|c| c.0).collect()),
            )
        };

    let irred = if params.kind.is_cuspidal() {
        let x = base_change_x(&m, &n).expect("cuspidal ambient");
        let bound = match irred_dim_bound(&m, &n).expect("cuspidal ambient") {
            IrredBound::NoMap => "no_map".to_string(),
            IrredBound::Empty => "empty".to_string(),
            IrredBound::Dim(d) => format!("dim:{d}"),
        };
        Some(IrredOut {
            base_change_x: x,
            irred_dim_bound: bound,
        })
    } else {
        None
    };

    ShapeReport {
        shape: shape.indices(),
        in_p_tau,
        transitions: (0..params.f_prime as i64)
            .filter(|&i| shape.is_transition(i))
            .map(|i| i as usize)
            .collect(),
        gamma_star: gamma_star(tau, shape),
        maximal_r: rs.r.clone(),
        maximal_y: rs.y.clone(),
        refined_count,
        pair_c: m.c().to_vec(),
        pair_d: n.c().to_vec(),
        hom_dim_formula: m.hom_dim(&n),
        hom_dim_oracle: hom_oracle,
        ext1_dim_formula: ext1_dim_formula(&m, &n),
        ext1_dim_oracle: ext_oracle,
        height1_dim_formula: height1_subspace_dim_formula(&m, &n),
        height1_dim_oracle: pres.height_one_dim(),
        hom_to_u_quotient_dim: hom_to_u_quotient_dim(&m, &n),
        kext_dim_oracle: kext_dim(&m, &n).expect("exact sequence consistency"),
        kext_dim_maximal_formula: kext_dim_maximal_formula(tau, shape, true),
        char_w_closed_form: char_closed.w,
        char_w_rank_one: char_rank_one.w,
        char_unram: char_rank_one.unram.0,
        weight,
        divisor_x_zero,
        divisor_y_zero,
        dieudonne_f_consts,
        dieudonne_v_consts,
        irred,
    }
}

#[derive(Serialize)]
pub struct Report {
    pub instance: InstanceOut,
    pub gamma_digits: Vec<u64>,
    pub p_tau: Vec<Vec<usize>>,
    pub injectivity_check: bool,
    pub shapes: Vec<ShapeReport>,
}

pub fn full_report(tau: &TameType, cbar: Elt, trunc_extra: u64) -> Report {
    Report {
        instance: instance_out(tau, cbar, trunc_extra),
        gamma_digits: tau.gamma_digits(),
        p_tau: p_tau(tau).iter().map(|j| j.indices()).collect(),
        injectivity_check: injectivity_check(tau),
        shapes: enumerate_shapes(tau)
            .iter()
            .map(|j| shape_report(tau, j, cbar, trunc_extra))
            .collect(),
    }
}
