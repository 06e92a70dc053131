//! Differential objects in the ℕ-module instance, and the derivative they
//! induce.
//!
//! A differential object is a commutative monoid (σ, ζ) on a carrier D
//! together with p̂: T(D) → D making ⟨p, p̂⟩: T(D) → D×D invertible and
//! satisfying four exact equations against the lift ℓ. Everything here is
//! checked as a literal matrix identity under one fixed convention:
//! T² = act_obj(W⊗W, ·) with the first factor innermost and T(f) =
//! act_fun(W, f).

use std::fmt;

use serde_json::json;

use crate::engine::{ComputableCategory, WeilAction};
use crate::instances::{NModCategory, NModMorphism, NModObject, NatMatrix};
use crate::weil::{generators, WeilAlgebra};

/// A carrier with candidate differential structure. The morphisms live in
/// whatever action the checks are run against; σ and ζ only use products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffObject {
    pub carrier: NModObject,
    pub sigma: NModMorphism,
    pub zeta: NModMorphism,
    pub phat: NModMorphism,
}

impl DiffObject {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "carrier": self.carrier.to_json(),
            "sigma": self.sigma.to_json(),
            "zeta": self.zeta.to_json(),
            "phat": self.phat.to_json(),
        })
    }
}

/// The canonical differential structure on ℕ^k: σ adds the two copies,
/// ζ is the zero of the monoid, and p̂ reads the tangent coordinate.
pub fn canonical_diffobj(carrier: &NModObject) -> DiffObject {
    let cat = NModCategory;
    let k = carrier.rank();
    let double = cat.product(carrier, carrier);
    let sigma = NModMorphism::new(
        double,
        carrier.clone(),
        NatMatrix::identity(k)
            .hstack(&NatMatrix::identity(k))
            .expect("row counts agree"),
    )
    .expect("addition matrix fits");
    let zeta = NModMorphism::new(cat.terminal(), carrier.clone(), NatMatrix::zero(k, 0))
        .expect("zero matrix fits");
    let tangent = NModObject::from_rank(2 * k);
    let phat = NModMorphism::new(
        tangent,
        carrier.clone(),
        NatMatrix::zero(k, k)
            .hstack(&NatMatrix::identity(k))
            .expect("row counts agree"),
    )
    .expect("projection matrix fits");
    DiffObject {
        carrier: carrier.clone(),
        sigma,
        zeta,
        phat,
    }
}

/// The canonical differential object on ℕ itself.
pub fn canonical_diffobj_n() -> DiffObject {
    canonical_diffobj(&NModObject::from_rank(1))
}

#[derive(Debug, Clone)]
pub struct EquationCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

/// Outcome of [`check_diffobj`]: one entry per required equation.
#[derive(Debug, Clone)]
pub struct DiffReport {
    pub carrier_rank: usize,
    pub equations: Vec<EquationCheck>,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.equations.iter().all(|e| e.passed)
    }

    /// Names of the violated equations.
    pub fn violations(&self) -> Vec<&'static str> {
        self.equations
            .iter()
            .filter(|e| !e.passed)
            .map(|e| e.name)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "carrier_rank": self.carrier_rank,
            "passed": self.passed(),
            "equations": self
                .equations
                .iter()
                .map(|e| json!({ "name": e.name, "passed": e.passed, "detail": e.detail }))
                .collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "differential object on rank {}", self.carrier_rank)?;
        for eq in &self.equations {
            let verdict = if eq.passed { "pass" } else { "FAIL" };
            write!(f, "  {:<24} {verdict}", eq.name)?;
            if let Some(detail) = &eq.detail {
                write!(f, " ({detail})")?;
            }
            writeln!(f)?;
        }
        let overall = if self.passed() { "pass" } else { "FAIL" };
        write!(f, "overall: {overall}")
    }
}

fn equation(
    name: &'static str,
    lhs: Result<NModMorphism, String>,
    rhs: &NModMorphism,
) -> EquationCheck {
    match lhs {
        Ok(lhs) => EquationCheck {
            detail: (&lhs != rhs).then(|| format!("{} differs from {}", lhs.matrix(), rhs.matrix())),
            passed: &lhs == rhs,
            name,
        },
        Err(reason) => EquationCheck {
            name,
            passed: false,
            detail: Some(reason),
        },
    }
}

/// Checks the commutative-monoid laws, invertibility of ⟨p, p̂⟩, and the
/// four lift equations, all as exact matrix identities in the given action.
/// Boundary mismatches are input errors; violated equations go in the
/// report.
pub fn check_diffobj<A>(d: &DiffObject, action: &A) -> Result<DiffReport, String>
where
    A: WeilAction<Cat = NModCategory>,
{
    let cat = action.category();
    let carrier = &d.carrier;
    let double = cat.product(carrier, carrier);
    let w = WeilAlgebra::w();
    let tangent = action.act_obj(&w, carrier);

    if d.sigma.source() != &double || d.sigma.target() != carrier {
        return Err(format!("σ must map {double} to {carrier}"));
    }
    if d.zeta.source() != &cat.terminal() || d.zeta.target() != carrier {
        return Err(format!("ζ must map N^0 to {carrier}"));
    }
    if d.phat.source() != &tangent || d.phat.target() != carrier {
        return Err(format!("p̂ must map {tangent} to {carrier}"));
    }

    let id = cat.identity(carrier);
    let mut equations = Vec::new();

    let zeta_x_id = cat.product_mor(&d.zeta, &id);
    equations.push(equation(
        "monoid-unit-left",
        cat.compose(&d.sigma, &zeta_x_id),
        &id,
    ));
    let id_x_zeta = cat.product_mor(&id, &d.zeta);
    equations.push(equation(
        "monoid-unit-right",
        cat.compose(&d.sigma, &id_x_zeta),
        &id,
    ));

    let assoc_left = cat.compose(&d.sigma, &cat.product_mor(&d.sigma, &id));
    let assoc_right = cat
        .compose(&d.sigma, &cat.product_mor(&id, &d.sigma))
        .map_err(|e| format!("associativity composite failed to form: {e}"))?;
    equations.push(equation("monoid-associativity", assoc_left, &assoc_right));

    equations.push(equation(
        "monoid-commutativity",
        cat.compose(&d.sigma, &cat.swap(carrier, carrier)),
        &d.sigma,
    ));

    let p = action.act_mor(&generators::epsilon(), carrier);
    let pairing = cat.pairing(&p, &d.phat)?;
    equations.push(EquationCheck {
        name: "pairing-invertible",
        passed: pairing.matrix().is_permutation(),
        detail: (!pairing.matrix().is_permutation())
            .then(|| format!("⟨p, p̂⟩ = {} is not a permutation", pairing.matrix())),
    });

    let lift = action.act_mor(&generators::delta(), carrier);
    let t_p = action.act_fun(&w, &p);
    let t_phat = action.act_fun(&w, &d.phat);
    let zeta_bang = cat.compose(&d.zeta, &cat.bang(&tangent))?;

    let through = |outer: &NModMorphism, mid: &NModMorphism| -> Result<NModMorphism, String> {
        cat.compose(outer, &cat.compose(mid, &lift)?)
    };
    equations.push(equation("pT(p)l = p", through(&p, &t_p), &p));
    equations.push(equation("p̂T(p)l = ζ!", through(&d.phat, &t_p), &zeta_bang));
    equations.push(equation("pT(p̂)l = ζ!", through(&p, &t_phat), &zeta_bang));
    equations.push(equation("p̂T(p̂)l = p̂", through(&d.phat, &t_phat), &d.phat));

    Ok(DiffReport {
        carrier_rank: carrier.rank(),
        equations,
    })
}

/// The derivative ∇(f) = p̂ ∘ T(f) ∘ ⟨p, p̂⟩⁻¹: D_src × D_src → D_tgt,
/// base point first, direction second.
pub fn derivative<A>(
    action: &A,
    f: &NModMorphism,
    d_src: &DiffObject,
    d_tgt: &DiffObject,
) -> Result<NModMorphism, String>
where
    A: WeilAction<Cat = NModCategory>,
{
    if f.source() != &d_src.carrier || f.target() != &d_tgt.carrier {
        return Err(format!(
            "morphism {f} does not connect the carriers {} and {}",
            d_src.carrier, d_tgt.carrier
        ));
    }
    let cat = action.category();
    let p_src = action.act_mor(&generators::epsilon(), &d_src.carrier);
    let pairing = cat.pairing(&p_src, &d_src.phat)?;
    let inverse = NModMorphism::new(
        pairing.target().clone(),
        pairing.source().clone(),
        pairing.matrix().inverse_permutation()?,
    )?;
    let t_f = action.act_fun(&WeilAlgebra::w(), f);
    cat.compose(&d_tgt.phat, &cat.compose(&t_f, &inverse)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{NModAction, TrivialAction};
    use crate::sample;
    use crate::weil::Natural;
    use rand::Rng;

    fn phat_with(row: Vec<u64>) -> DiffObject {
        let mut d = canonical_diffobj_n();
        d.phat = NModMorphism::new(
            NModObject::from_rank(row.len()),
            NModObject::from_rank(1),
            NatMatrix::from_rows(vec![row]).unwrap(),
        )
        .unwrap();
        d
    }

    #[test]
    fn canonical_object_passes_every_equation() {
        let action = NModAction::new();
        for rank in [1usize, 3] {
            let d = canonical_diffobj(&NModObject::from_rank(rank));
            let report = check_diffobj(&d, &action).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.equations.len(), 9);
        }
    }

    #[test]
    fn pairing_for_nat_is_the_identity_permutation() {
        let action = NModAction::new();
        let d = canonical_diffobj_n();
        let cat = action.category();
        let p = action.act_mor(&generators::epsilon(), &d.carrier);
        let pairing = cat.pairing(&p, &d.phat).unwrap();
        assert_eq!(pairing.matrix(), &NatMatrix::identity(2));
    }

    #[test]
    fn all_ones_phat_breaks_the_zeta_equations() {
        let action = NModAction::new();
        let report = check_diffobj(&phat_with(vec![1, 1]), &action).unwrap();
        assert!(!report.passed());
        assert_eq!(
            report.violations(),
            ["pairing-invertible", "p̂T(p)l = ζ!", "pT(p̂)l = ζ!"]
        );
    }

    #[test]
    fn doubled_phat_breaks_the_extra_axiom() {
        let action = NModAction::new();
        let report = check_diffobj(&phat_with(vec![0, 2]), &action).unwrap();
        assert!(!report.passed());
        assert!(report.violations().contains(&"p̂T(p̂)l = p̂"), "{report}");
    }

    #[test]
    fn trivial_action_admits_no_positive_rank_diffobj() {
        let action = TrivialAction::new(NModCategory);
        let carrier = NModObject::from_rank(1);
        let d = DiffObject {
            carrier: carrier.clone(),
            sigma: canonical_diffobj(&carrier).sigma,
            zeta: canonical_diffobj(&carrier).zeta,
            phat: NModCategory.identity(&carrier),
        };
        let report = check_diffobj(&d, &action).unwrap();
        assert!(report.violations().contains(&"pairing-invertible"), "{report}");

        let point = NModObject::from_rank(0);
        let trivial_d = DiffObject {
            carrier: point.clone(),
            sigma: canonical_diffobj(&point).sigma,
            zeta: canonical_diffobj(&point).zeta,
            phat: NModCategory.identity(&point),
        };
        assert!(check_diffobj(&trivial_d, &action).unwrap().passed());
    }

    #[test]
    fn derivative_of_identity_projects_to_the_direction() {
        let action = NModAction::new();
        let d = canonical_diffobj_n();
        let cat = action.category();
        let grad = derivative(&action, &cat.identity(&d.carrier), &d, &d).unwrap();
        assert_eq!(grad, cat.proj2(&d.carrier, &d.carrier));
    }

    #[test]
    fn derivative_is_additive_and_kills_zero() {
        let action = NModAction::new();
        let src = canonical_diffobj(&NModObject::from_rank(2));
        let tgt = canonical_diffobj(&NModObject::from_rank(1));
        let f = NModMorphism::new(
            src.carrier.clone(),
            tgt.carrier.clone(),
            NatMatrix::from_rows(vec![vec![1, 2]]).unwrap(),
        )
        .unwrap();
        let g = NModMorphism::new(
            src.carrier.clone(),
            tgt.carrier.clone(),
            NatMatrix::from_rows(vec![vec![3, 0]]).unwrap(),
        )
        .unwrap();
        let sum = NModMorphism::new(
            src.carrier.clone(),
            tgt.carrier.clone(),
            f.matrix().add(g.matrix()).unwrap(),
        )
        .unwrap();

        let grad_f = derivative(&action, &f, &src, &tgt).unwrap();
        let grad_g = derivative(&action, &g, &src, &tgt).unwrap();
        let grad_sum = derivative(&action, &sum, &src, &tgt).unwrap();
        assert_eq!(
            grad_sum.matrix(),
            &grad_f.matrix().add(grad_g.matrix()).unwrap()
        );

        let zero = NModMorphism::new(
            src.carrier.clone(),
            tgt.carrier.clone(),
            NatMatrix::zero(1, 2),
        )
        .unwrap();
        let grad_zero = derivative(&action, &zero, &src, &tgt).unwrap();
        assert_eq!(grad_zero.matrix(), &NatMatrix::zero(1, 4));
    }

    #[test]
    fn chain_rule_holds_on_sampled_linear_maps() {
        let action = NModAction::new();
        let cat = action.category();
        let mut rng = sample::rng_from_seed(29);
        for _ in 0..30 {
            let (ka, kb, kc) = (
                rng.random_range(1..=3usize),
                rng.random_range(1..=3usize),
                rng.random_range(1..=3usize),
            );
            let (da, db, dc) = (
                canonical_diffobj(&NModObject::from_rank(ka)),
                canonical_diffobj(&NModObject::from_rank(kb)),
                canonical_diffobj(&NModObject::from_rank(kc)),
            );
            let f = NModMorphism::new(
                da.carrier.clone(),
                db.carrier.clone(),
                NatMatrix::from_fn(kb, ka, |_, _| Natural::from(rng.random_range(0u64..=4))),
            )
            .unwrap();
            let g = NModMorphism::new(
                db.carrier.clone(),
                dc.carrier.clone(),
                NatMatrix::from_fn(kc, kb, |_, _| Natural::from(rng.random_range(0u64..=4))),
            )
            .unwrap();
            let gf = cat.compose(&g, &f).unwrap();

            let grad_f = derivative(&action, &f, &da, &db).unwrap();
            let grad_g = derivative(&action, &g, &db, &dc).unwrap();
            let grad_gf = derivative(&action, &gf, &da, &dc).unwrap();

            let f_pi2 = cat.compose(&f, &cat.proj2(&da.carrier, &da.carrier)).unwrap();
            let inner = cat.pairing(&grad_f, &f_pi2).unwrap();
            let rhs = cat.compose(&grad_g, &inner).unwrap();
            assert_eq!(grad_gf, rhs);
        }
    }
}
