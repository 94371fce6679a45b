#pragma once

#include "evidencia/densities.hpp"
#include "evidencia/laplace.hpp"
#include "evidencia/rng.hpp"

namespace evidencia {

// Skew-t benchmark target: mu = 0, Lambda = I, delta = (delta1, 0, ..., 0).
// The density is normalized, so the true log normalizing constant is 0.
TargetModel make_skewt_target(int k, double nu, double delta1);

enum class LinkKind { Logit, Robit3 };

// Synthetic binary regression: intercept column plus standard-normal
// covariates, true coefficients on an even grid over [-1, 1], independent
// N(0, prior_sd^2) priors per coefficient.
struct GlmTarget {
    Mat design;      // n x q, first column all ones
    Vec responses;   // 0/1
    Vec beta_true;
    double prior_sd = 2.5;
    LinkKind link = LinkKind::Logit;
    TargetModel model;
    ModeSummary mode;  // located during construction (doubles as the separation check)
};

// Posterior of a binary regression with the given data: Bernoulli likelihood
// through the link plus independent N(0, prior_sd^2) coefficient priors.
TargetModel make_glm_model(Mat design, Vec responses, LinkKind link, double prior_sd);

// Draws a dataset, locates the posterior mode, and retries with fresh data
// (max 5 attempts) when the fit diverges, which is how separation shows up.
GlmTarget make_glm_target(Rng& rng, int n, int q, LinkKind link, double prior_sd = 2.5);

struct McmcResult {
    Mat draws;  // post-burn-in states, one row per iteration
    double acceptance_rate = 0.0;
    bool tuned_ok = true;  // acceptance within [0.05, 0.7]
};

// Random-walk Metropolis started at the mode with increment
// N(0, c^2 H^{-1}), c = 2.38/sqrt(p). Each iteration consumes p normals
// then one uniform, so runs replay bit-exactly for a given seed.
McmcResult rw_metropolis(Rng& rng, const TargetModel& target, const ModeSummary& mode,
                         int n_iter, int burn_in);

} // namespace evidencia
