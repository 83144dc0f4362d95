//! Tangent spaces of X_w^v at T-fixed points and the smoothness criteria.

use crate::error::Result;
use crate::index::{GrassContext, PluckerIndex, RichardsonId, RootPair};
use crate::poset::{dim_richardson, reflect};

/// Root exchanges spanning the Zariski tangent space of X_w^v at e_τ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentBasis {
    pub tau: PluckerIndex,
    pub roots: Vec<RootPair>,
}

impl TangentBasis {
    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// Pairs each root with the index it reflects τ to.
    pub fn reflections(&self) -> Vec<(RootPair, PluckerIndex)> {
        self.roots
            .iter()
            .map(|&r| (r, reflect(&self.tau, r).expect("basis roots are valid exchanges")))
            .collect()
    }
}

/// Every exchange (a ∈ τ, b ∉ τ), ordered by `removed` then `added`.
pub fn all_root_pairs(tau: &PluckerIndex) -> Vec<RootPair> {
    let outside = tau.complement();
    tau.entries()
        .iter()
        .flat_map(|&a| outside.iter().map(move |&b| RootPair::new(a, b)))
        .collect()
}

/// The exchanges r with w >= s_r τ >= v.
pub fn tangent_basis(x: &RichardsonId, tau: &PluckerIndex) -> Result<TangentBasis> {
    x.require_point(tau)?;
    let roots = all_root_pairs(tau)
        .into_iter()
        .filter(|&r| x.contains(&reflect(tau, r).expect("exchange of tau")))
        .collect();
    Ok(TangentBasis {
        tau: tau.clone(),
        roots,
    })
}

/// Number of exchanges whose reflection leaves [v, w]; these index the
/// nonzero columns of the Jacobian of the defining equations at e_τ.
pub fn jacobian_rank(x: &RichardsonId, tau: &PluckerIndex) -> Result<usize> {
    x.require_point(tau)?;
    Ok(all_root_pairs(tau)
        .into_iter()
        .filter(|&r| !x.contains(&reflect(tau, r).expect("exchange of tau")))
        .count())
}

/// Smooth iff the tangent space has dimension l(w) - l(v).
pub fn is_smooth_at(x: &RichardsonId, tau: &PluckerIndex) -> Result<bool> {
    Ok(tangent_basis(x, tau)?.dim() == dim_richardson(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub richardson: bool,
    pub schubert: bool,
    pub opposite: bool,
}

impl SmoothnessReport {
    /// X_w^v is smooth at e_τ iff X_w and X^v both are.
    pub fn conjunction_holds(&self) -> bool {
        self.richardson == (self.schubert && self.opposite)
    }
}

/// Smoothness at e_τ of X_w^v, X_w and X^v.
pub fn smooth_product_check(x: &RichardsonId, tau: &PluckerIndex) -> Result<SmoothnessReport> {
    x.require_point(tau)?;
    Ok(SmoothnessReport {
        richardson: is_smooth_at(x, tau)?,
        schubert: is_smooth_at(&RichardsonId::schubert(x.w().clone()), tau)?,
        opposite: is_smooth_at(&RichardsonId::opposite(x.v().clone()), tau)?,
    })
}

/// Ambient dimension d(n - d) of the patch around e_τ.
pub fn ambient_dim(ctx: GrassContext) -> usize {
    ctx.dim()
}
