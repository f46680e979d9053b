use std::fmt;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{FEl, FieldCtx};
use crate::young::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Sl,
    Su,
    Sp,
    OmegaPlus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Sl => "SL",
            Family::Su => "SU",
            Family::Sp => "SP",
            Family::OmegaPlus => "OMEGA_PLUS",
        })
    }
}

/// Whether `F_p(α + α⁻¹)` is all of `F_q` or its index-2 subfield.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Linear,
    Unitary,
}

fn ser_big<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// A classical group `G_N(field)` in the usual notation: `field` is the
/// subscripted parameter, so `SU_N(q)` carries `q` and `SP_N(√q)` carries `√q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedGroup {
    pub family: Family,
    #[serde(rename = "N")]
    pub dim: usize,
    pub field: u64,
    #[serde(serialize_with = "ser_big")]
    pub order: BigUint,
    pub case: Case,
    /// Set when the case tree does not list this instance and the group is extrapolated.
    pub inferred: bool,
}

impl PredictedGroup {
    /// Degree over `F_p` of the field the group's traces should generate.
    pub fn expected_trace_degree(&self, p: u64) -> u32 {
        let mut deg = 0;
        let mut x = 1u64;
        while x < self.field {
            x *= p;
            deg += 1;
        }
        match self.family {
            Family::Su if self.dim == 2 => deg / 2,
            _ => deg,
        }
    }
}

impl fmt::Display for PredictedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}({})", self.family, self.dim, self.field)
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `u` with `u² = q`, if any.
fn int_sqrt(q: u64) -> Option<u64> {
    let u = (q as f64).sqrt().round() as u64;
    (u.checked_mul(u) == Some(q)).then_some(u)
}

/// Exact order of `family_N(field)` in the notation of [`PredictedGroup`].
pub fn group_order(family: Family, n: usize, field: u64) -> Result<BigUint> {
    let bad = |why: &str| Error::UnsupportedFamily(format!("{family}_{n}({field}): {why}"));
    if n == 0 || field < 2 {
        return Err(bad("empty parameters"));
    }
    let nn = n as u32;
    let q = big(field);
    let one = big(1);
    match family {
        Family::Sl => {
            let mut o = q.pow(nn * (nn - 1) / 2);
            for i in 2..=nn {
                o *= q.pow(i) - &one;
            }
            Ok(o)
        }
        Family::Su => {
            let u = big(int_sqrt(field).ok_or_else(|| bad("q is not a square"))?);
            let mut o = u.pow(nn * (nn - 1) / 2);
            for i in 2..=nn {
                let ui = u.pow(i);
                o *= if i % 2 == 0 { ui - &one } else { ui + &one };
            }
            Ok(o)
        }
        Family::Sp => {
            if !n.is_multiple_of(2) {
                return Err(bad("odd dimension"));
            }
            let m = nn / 2;
            let mut o = q.pow(m * m);
            for i in 1..=m {
                o *= q.pow(2 * i) - &one;
            }
            Ok(o)
        }
        Family::OmegaPlus => {
            if !n.is_multiple_of(2) || n < 2 {
                return Err(bad("odd dimension"));
            }
            let m = nn / 2;
            let mut o = q.pow(m * (m - 1)) * (q.pow(m) - &one);
            for i in 1..m {
                o *= q.pow(2 * i) - &one;
            }
            if field % 2 == 1 {
                o /= big(2);
            }
            Ok(o)
        }
    }
}

/// Element orders excluded by the theorem's hypotheses.
pub const EXCLUDED_ORDERS: [u64; 6] = [2, 3, 4, 5, 6, 10];

/// Linear or unitary case for `α`, after checking `F_p(α) = F_q`.
pub fn classify_case(ctx: &FieldCtx, alpha: FEl) -> Result<Case> {
    if ctx.subfield_degree_of([alpha]) != ctx.k() {
        return Err(Error::InadmissibleParameter(format!(
            "α does not generate F_{}",
            ctx.q()
        )));
    }
    let s = ctx.add(alpha, ctx.inv(alpha)?);
    Ok(if ctx.subfield_degree_of([s]) == ctx.k() {
        Case::Linear
    } else {
        Case::Unitary
    })
}

/// The classical group attached to `λ ∈ E_n` or to `λ⁰ = [n-1, 1]`.
pub fn predicted_group(ctx: &FieldCtx, shape: &Partition, alpha: FEl) -> Result<PredictedGroup> {
    let n = shape.n();
    let ord = ctx.element_order(alpha)?;
    if ord <= n as u64 || EXCLUDED_ORDERS.contains(&ord) {
        return Err(Error::InadmissibleParameter(format!(
            "α has order {ord} (n = {n})"
        )));
    }
    let case = classify_case(ctx, alpha)?;
    let q = ctx.q() as u64;
    let root = || int_sqrt(q).expect("unitary case has even degree");
    let lambda_zero = n >= 2 && shape.parts() == [n - 1, 1];
    if shape.is_hook() && !lambda_zero {
        return Err(Error::HookNotLambdaZero(shape.to_string()));
    }
    let (family, dim, field, inferred) = if lambda_zero {
        match case {
            Case::Linear => (Family::Sl, n - 1, q, false),
            Case::Unitary => (Family::Su, n - 1, q, true),
        }
    } else {
        let dim = shape.dimension() as usize;
        let nu = shape.diag_and_nu().1;
        match (case, shape.is_self_conjugate()) {
            (Case::Linear, false) => (Family::Sl, dim, q, false),
            (Case::Unitary, false) => (Family::Su, dim, q, false),
            (Case::Linear, true) if ctx.p() == 2 || nu == -1 => (Family::Sp, dim, q, false),
            (Case::Linear, true) => (Family::OmegaPlus, dim, q, false),
            (Case::Unitary, true) if ctx.p() == 2 || nu == -1 => (Family::Sp, dim, root(), false),
            (Case::Unitary, true) => (Family::OmegaPlus, dim, root(), false),
        }
    };
    let order = group_order(family, dim, field)?;
    Ok(PredictedGroup {
        family,
        dim,
        field,
        order,
        case,
        inferred,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group_order(Family::Sl, 2, 8).unwrap(), big(504));
        assert_eq!(group_order(Family::Su, 2, 49).unwrap(), big(336));
        assert_eq!(group_order(Family::Sl, 3, 8).unwrap(), big(16_482_816));
        assert_eq!(group_order(Family::Su, 3, 49).unwrap(), big(5_663_616));
        assert_eq!(group_order(Family::Sp, 2, 9).unwrap(), big(720));
        assert_eq!(group_order(Family::Sp, 2, 7).unwrap(), big(336));
        // |Ω⁺_4(3)| = |SL_2(3)|² / 2 = 288
        assert_eq!(group_order(Family::OmegaPlus, 4, 3).unwrap(), big(288));
        // |Ω⁺_2(q)| is cyclic of order (q - 1)/gcd(2, q - 1)
        assert_eq!(group_order(Family::OmegaPlus, 2, 7).unwrap(), big(3));
        assert!(group_order(Family::Su, 2, 8).is_err());
        assert!(group_order(Family::Sp, 3, 8).is_err());
    }

    #[test]
    fn symplectic_two_is_sl_two() {
        for q in [3, 4, 5, 7, 8, 9, 11, 13, 16] {
            assert_eq!(
                group_order(Family::Sp, 2, q).unwrap(),
                group_order(Family::Sl, 2, q).unwrap()
            );
        }
    }

    #[test]
    fn case_tree() {
        let f8 = FieldCtx::new(2, 3, None).unwrap();
        let a = f8.x();
        let g = predicted_group(&f8, &p(&[2, 2]), a).unwrap();
        assert_eq!(
            (g.family, g.dim, g.field, g.order.clone()),
            (Family::Sp, 2, 8, big(504))
        );
        let g = predicted_group(&f8, &p(&[2, 1]), a).unwrap();
        assert_eq!(
            (g.family, g.dim, g.order.clone()),
            (Family::Sl, 2, big(504))
        );
        let g = predicted_group(&f8, &p(&[3, 1]), a).unwrap();
        assert_eq!((g.family, g.order.clone()), (Family::Sl, big(16_482_816)));

        let f49 = FieldCtx::new(7, 2, None).unwrap();
        let b = f49.find_element_of_order(8).unwrap();
        let g = predicted_group(&f49, &p(&[2, 1]), b).unwrap();
        assert_eq!(
            (g.family, g.dim, g.field, g.order.clone()),
            (Family::Su, 2, 49, big(336))
        );
        assert!(g.inferred);
        assert_eq!(g.case, Case::Unitary);
        let g = predicted_group(&f49, &p(&[2, 2]), b).unwrap();
        assert_eq!(
            (g.family, g.field, g.order.clone()),
            (Family::Sp, 7, big(336))
        );

        let f9 = FieldCtx::new(3, 2, None).unwrap();
        let c = f9.find_element_of_order(8).unwrap();
        let g = predicted_group(&f9, &p(&[3, 2, 1]), c).unwrap();
        assert_eq!((g.family, g.dim, g.field), (Family::OmegaPlus, 16, 9));
        assert_eq!(g.case, Case::Linear);
        let g = predicted_group(&f9, &p(&[2, 2]), c).unwrap();
        assert_eq!((g.family, g.order.clone()), (Family::Sp, big(720)));
    }

    #[test]
    fn refusals() {
        let f8 = FieldCtx::new(2, 3, None).unwrap();
        let a = f8.x();
        assert!(matches!(
            predicted_group(&f8, &p(&[3, 1, 1]), a),
            Err(Error::HookNotLambdaZero(_))
        ));
        // order 7 ≤ n = 7
        assert!(matches!(
            predicted_group(&f8, &p(&[4, 3]), a),
            Err(Error::InadmissibleParameter(_))
        ));
        let f11 = FieldCtx::prime(11).unwrap();
        // order 10 > n = 4 but excluded
        let b = f11.find_element_of_order(10).unwrap();
        assert!(matches!(
            predicted_group(&f11, &p(&[2, 2]), b),
            Err(Error::InadmissibleParameter(_))
        ));
        // α in a proper subfield
        let f64_ = FieldCtx::new(2, 6, None).unwrap();
        let c = f64_.find_element_of_order(7).unwrap();
        assert!(matches!(
            predicted_group(&f64_, &p(&[2, 2]), c),
            Err(Error::InadmissibleParameter(_))
        ));
    }

    #[test]
    fn inverse_parameter_gives_the_same_prediction() {
        let f49 = FieldCtx::new(7, 2, None).unwrap();
        for ord in [8, 12, 16, 24, 48] {
            let a = f49.find_element_of_order(ord).unwrap();
            let ai = f49.inv(a).unwrap();
            for shape in [p(&[2, 2]), p(&[3, 1]), p(&[3, 2])] {
                if ord as usize <= shape.n() {
                    continue;
                }
                assert_eq!(
                    predicted_group(&f49, &shape, a).unwrap(),
                    predicted_group(&f49, &shape, ai).unwrap()
                );
            }
        }
    }
}
