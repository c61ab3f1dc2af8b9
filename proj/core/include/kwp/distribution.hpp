#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "kwp/params.hpp"
#include "kwp/random.hpp"
#include "kwp/sample.hpp"

namespace kwp {

// Pareto baseline, support [beta, inf).
double pareto_cdf(double x, double beta, double k);
double pareto_pdf(double x, double beta, double k);

// Kw-P distribution functions.  Below the support pdf, cdf and hazard are 0.
// All evaluate through u = (beta/x)^k, z = 1 - u and log(1 - z^a) in
// log1p/expm1 form so that large b and x near beta or far in the tail do
// not lose precision.
double kwp_cdf(double x, const KwPParams& p);
double kwp_sf(double x, const KwPParams& p);
double kwp_pdf(double x, const KwPParams& p);
double kwp_log_pdf(double x, const KwPParams& p);
double kwp_hazard(double x, const KwPParams& p);

/// Limits of the density and of the hazard as x -> beta from above:
/// +inf for a < 1, bk/beta for a = 1, 0 for a > 1.  kwp_pdf and
/// kwp_hazard return these values at x == beta exactly.
double kwp_pdf_limit_at_beta(const KwPParams& p);
double kwp_hazard_limit_at_beta(const KwPParams& p);

/// Quantile Q(u) for u in [0, 1); throws DomainError otherwise.
double kwp_quantile(double u, const KwPParams& p);

/// Quantile at upper-tail probability q = 1 - u in (0, 1], without forming
/// 1 - q.  Used for sampling and for tail expectations.
double kwp_quantile_upper(double q, const KwPParams& p);

/// n inverse-transform draws from gen (n may be 0).
std::vector<double> kwp_draw(std::size_t n, const KwPParams& p, Xoshiro256& gen);

/// n >= 1 draws seeded by seed; identical seeds give identical samples.
Sample kwp_sample(std::size_t n, const KwPParams& p, std::uint64_t seed);

// Sub-models.  EP is the Kw-P with b = 1; BP pushes the Pareto cdf through
// the beta-G construction: F = I_G(a, b).
double ep_cdf(double x, double beta, double k, double a);
double ep_pdf(double x, double beta, double k, double a);
double bp_cdf(double x, double beta, double k, double a, double b);
double bp_pdf(double x, double beta, double k, double a, double b);

/// Dispatches on kind, reading only the parameters the sub-model uses.
double submodel_cdf(ModelKind kind, double x, const KwPParams& p);
double submodel_pdf(ModelKind kind, double x, const KwPParams& p);

}  // namespace kwp
