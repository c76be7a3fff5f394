#pragma once

// Norms, seminorms, entropy and the energy I(u).  Norms are returned
// un-powered; take powers at the call site.

#include "flsi/core.hpp"
#include "flsi/profile.hpp"
#include "flsi/quadrature.hpp"

namespace flsi {

/// int |u|^p: closed form when the family has one, quadrature otherwise.
FunctionalValue lp_power_value(const RadialProfile& u, double p, int d, const QuadratureSpec& spec);

/// [u]^p and its weighted analogue, memoised per process on the unit-amplitude
/// shape (the value scales exactly by amplitude^p).  Bypassed when abs_tol > 0.
FunctionalValue gagliardo_power(const RadialProfile& u, const FracParams& params,
                                const QuadratureSpec& spec);
FunctionalValue weighted_gagliardo_power(const RadialProfile& u, const FracParams& params,
                                         const WeightParams& w, const QuadratureSpec& spec);
void clear_seminorm_cache();

/// ||u||_p.
FunctionalValue lp_norm(const RadialProfile& u, double p, int d, const QuadratureSpec& spec);

/// [u]_{W^{s,p}} (the p-th root of the double integral).
FunctionalValue gagliardo_seminorm(const RadialProfile& u, const FracParams& params,
                                   const QuadratureSpec& spec);

/// (||u||_p^p + [u]_{W^{s,p,alpha}}^p)^{1/p}.
FunctionalValue weighted_norm_Wspa(const RadialProfile& u, const FracParams& params,
                                   const WeightParams& w, const QuadratureSpec& spec);

/// (1/p) [u]^p + (1/q) ||u||_q^q.  Throws QOutOfRange for inadmissible q.
FunctionalValue functional_I(const RadialProfile& u, const FracParams& params, double q,
                             const QuadratureSpec& spec);

/// int |u|^p log|u|: closed form when available, quadrature otherwise.
FunctionalValue entropy(const RadialProfile& u, double p, int d, const QuadratureSpec& spec);

/// int |grad u|^p: closed form when available, quadrature otherwise.
FunctionalValue grad_power(const RadialProfile& u, double p, int d, const QuadratureSpec& spec);

/// First-order propagation helpers.
FunctionalValue power_of(const FunctionalValue& v, double exponent);
FunctionalValue scaled(const FunctionalValue& v, double factor);

} // namespace flsi
