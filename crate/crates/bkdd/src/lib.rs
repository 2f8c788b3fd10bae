//! Rank one Breuil-Kisin modules with tame descent data over finite
//! fields, and the finite combinatorics they carry: Hom/Ext^1/ker-Ext
//! dimensions (closed formulas against truncated linear-algebra
//! oracles), tame types with their shape and Serre weight parameters,
//! and Dieudonne F/V vanishing patterns.

// index arithmetic over Z/fZ and paired structure vectors reads more
// clearly with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod ext;
pub mod field;
pub mod laurent;
pub mod matrix;
pub mod params;
pub mod rank_one;
pub mod rank_two;
pub mod shapes;
pub mod weights;

pub use error::{BkError, Result};
pub use ext::{
    apply_del, complex_build, ext1_dim_formula, height1_subspace_dim_formula,
    height1_subspace_dim_oracle, hom_ext_dims_oracle, hom_to_u_quotient_dim, kext_dim,
    kext_dim_maximal_formula, splits_after_inverting_u, truncation_level, ExtClass,
    ExtPresentation, Monomial,
};
pub use field::{field_create, is_prime, Elt, FieldCtx};
pub use laurent::{frobenius_substitute, frobenius_substitute_into, TruncLaurent, Window};
pub use matrix::MatrixGF;
pub use params::{least_residue, mod_pow, AmbientParams, TypeKind};
pub use rank_one::{make_rank_one, InertialCharacter, RankOneBK};
pub use rank_two::{
    base_change_x, build_extension, check_bt_type, dieudonne_pattern, divisor_membership,
    irred_dim_bound, DieudonnePattern, IrredBound, RankTwoExt,
};
pub use shapes::{
    build_pair, cd_vectors, enumerate_refined, enumerate_shapes, gamma_star, maximal_refined,
    p_tau, pair_has_type, shape_of_pair, RefinedShape, Shape, TameType,
};
pub use weights::{
    central_char_check, char_of_nj_formula, injectivity_check, jh_factor, s_params_raw, t_params,
    SerreWeight,
};
