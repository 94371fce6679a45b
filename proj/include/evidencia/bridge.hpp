#pragma once

#include <functional>

#include "evidencia/copula.hpp"
#include "evidencia/laplace.hpp"
#include "evidencia/rng.hpp"

namespace evidencia {

// Normalized proposal density r with an i.i.d. sampler.
struct BridgeProposal {
    std::function<double(const Vec&)> log_density;
    std::function<Mat(Rng&, int)> draw;
};

struct BridgeEstimate {
    double log_ml = 0.0;
    double numerator_ess = 0.0;    // (sum w)^2 / sum w^2 over proposal draws
    double denominator_ess = 0.0;  // same over posterior draws
    double t_anchor = 0.0;         // anchor log ml used inside the weight
    int iterations = 1;
    bool converged = true;
};

// Meng-Wong optimal-weight bridge estimate. The weight is evaluated in log
// space, log t = -logsumexp(log s + g - anchor, log S + log r), and the
// estimate is the difference of the two log-sum-exp averages
//   [lse(log t + g) at proposal draws - log S]
// - [lse(log t + log r) at posterior draws - log s].
// Fails with an overlap error when either sum has no finite term.
BridgeEstimate bridge_logml(const TargetModel& target, const Mat& posterior_draws,
                            const BridgeProposal& proposal, const Mat& proposal_draws,
                            double anchor_log_ml);

// Same, drawing the proposal sample internally.
BridgeEstimate bridge_logml(const TargetModel& target, const Mat& posterior_draws,
                            const BridgeProposal& proposal, Rng& rng, int proposal_count,
                            double anchor_log_ml);

// Anchor from the Laplace estimate, proposal N(theta_hat, H^{-1}).
BridgeEstimate laplace_bridge(const TargetModel& target, const Mat& posterior_draws,
                              const ModeSummary& mode, Rng& rng, int proposal_count);

// Anchor and proposal from the simulation copula fit of the same draws.
// clamp_counter, when given, accumulates latent-tail clamps seen while
// evaluating the copula density on both draw sets.
BridgeEstimate copula_bridge(const TargetModel& target, const Mat& posterior_draws, Rng& rng,
                             int proposal_count, long* clamp_counter = nullptr);

// Repeats the bridge on one fixed draw set, feeding each estimate back as the
// next anchor, until the change falls below 1e-4 or max_iter rounds pass
// (then converged=false and the last iterate is returned).
BridgeEstimate iterative_bridge(const TargetModel& target, const Mat& posterior_draws,
                                const BridgeProposal& proposal, Rng& rng, int proposal_count,
                                double initial_anchor, int max_iter);

} // namespace evidencia
