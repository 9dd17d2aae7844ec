#ifndef RBDA_INFERENCE_HPP
#define RBDA_INFERENCE_HPP

#include <vector>

#include "rbda/problem.hpp"

namespace rbda {

// Exact inference for the presence model
//
//   theta ~ Beta(s t, s (1 - t))
//   H     ~ Bernoulli(theta)          presence before management
//   E     ~ Bernoulli(alpha H)        sighting in trial fishing
//   H'    ~ Bernoulli(H (1 - beta))   presence after management d
//
// Presence probabilities depend on the prior only through its mean t.

/// P(H = 1 | E). Requires 0 < t < 1 and 0 < alpha <= 1.
double presence_posterior(double t, double alpha, Evidence e);

/// Same quantity computed by marginalising theta through Beta-function
/// ratios of the prior with strength s. Agrees with the closed form for
/// every s > 0; kept as an independent route through the full model.
double presence_posterior(double t, double s, double alpha, Evidence e);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Posterior mean and variance of theta given E. alpha = 0 is accepted here
/// (the likelihood is flat and the prior moments come back).
Moments theta_posterior_moments(double t, double s, double alpha, Evidence e);

/// Interval for P(H' = 1 | E, d) at fixed (t, alpha) over the decision's
/// efficacy interval.
ProbabilityInterval eradication_posterior(double t, double alpha, Evidence e,
                                          const DecisionAlternative& decision);

struct PosteriorSummary {
  double presence_before = 0.0;
  ProbabilityInterval presence_after;
  double theta_mean = 0.0;
  double theta_var = 0.0;
};

struct Corner {
  double t = 0.0;
  double alpha = 0.0;

  bool operator==(const Corner&) const = default;
};

/// The four (t, alpha) extreme points of a hyperparameter box, ordered
/// (t_lo, a_lo), (t_lo, a_hi), (t_hi, a_lo), (t_hi, a_hi).
std::vector<Corner> box_corners(const HyperparameterBox& hyper);

PosteriorSummary posterior_at(const Corner& corner, double s, Evidence e, const DecisionAlternative& d);

struct BoxPosterior {
  ProbabilityInterval presence_before;  // over the (t, alpha) box
  ProbabilityInterval presence_after;   // over the (t, alpha, beta) box
  std::vector<PosteriorSummary> corners;  // aligned with box_corners()
};

/// Bounds over the full hyperparameter box by corner evaluation. Presence
/// is monotone in t (increasing) and alpha (decreasing for E = 0, constant
/// for E = 1), and P(H'=1) is affine in beta, so extrema sit at corners.
BoxPosterior posterior_box(const HyperparameterBox& hyper, Evidence e, const DecisionAlternative& d);

}  // namespace rbda

#endif  // RBDA_INFERENCE_HPP
