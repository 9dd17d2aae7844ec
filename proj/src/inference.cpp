#include "rbda/inference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbda/error.hpp"

namespace rbda {

namespace {

void check_t(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw Error(ErrorKind::domain, "t", "prior mean t must lie in (0, 1), got " + std::to_string(t));
  }
}

void check_alpha(double alpha, bool allow_zero) {
  bool ok = allow_zero ? (alpha >= 0.0 && alpha <= 1.0) : (alpha > 0.0 && alpha <= 1.0);
  if (!ok) {
    throw Error(ErrorKind::domain, "alpha",
                std::string("detection probability must lie in ") + (allow_zero ? "[0, 1]" : "(0, 1]") +
                    ", got " + std::to_string(alpha));
  }
}

void check_s(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorKind::domain, "s", "prior strength s must be positive, got " + std::to_string(s));
  }
}

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

double presence_posterior(double t, double alpha, Evidence e) {
  check_t(t);
  check_alpha(alpha, false);
  if (e.observed) return 1.0;
  return t * (1.0 - alpha) / (1.0 - t * alpha);
}

double presence_posterior(double t, double s, double alpha, Evidence e) {
  check_t(t);
  check_s(s);
  check_alpha(alpha, false);
  const double a = s * t;
  const double b = s * (1.0 - t);
  // E[theta] under the prior, via B(a+1, b) / B(a, b).
  const double prior_mean = std::exp(log_beta(a + 1.0, b) - log_beta(a, b));
  const double joint_present = (e.observed ? alpha : 1.0 - alpha) * prior_mean;
  const double evidence = e.observed ? alpha * prior_mean : 1.0 - alpha * prior_mean;
  return joint_present / evidence;
}

Moments theta_posterior_moments(double t, double s, double alpha, Evidence e) {
  check_t(t);
  check_s(s);
  check_alpha(alpha, true);
  const double m1 = t;
  const double m2 = t * (s * t + 1.0) / (s + 1.0);
  const double m3 = m2 * (s * t + 2.0) / (s + 2.0);

  Moments out;
  double second;
  if (e.observed) {
    // density proportional to theta * prior
    out.mean = m2 / m1;
    second = m3 / m1;
  } else {
    // density proportional to (1 - alpha theta) * prior
    const double norm = 1.0 - alpha * m1;
    out.mean = (m1 - alpha * m2) / norm;
    second = (m2 - alpha * m3) / norm;
  }
  out.variance = std::max(0.0, second - out.mean * out.mean);
  return out;
}

ProbabilityInterval eradication_posterior(double t, double alpha, Evidence e, const DecisionAlternative& d) {
  const double before = presence_posterior(t, alpha, e);
  // P(H'=1) = P(H=1)(1 - beta); the largest efficacy gives the lower bound.
  return {before * (1.0 - d.efficacy.upper), before * (1.0 - d.efficacy.lower)};
}

std::vector<Corner> box_corners(const HyperparameterBox& hyper) {
  return {
      {hyper.t_range.lower, hyper.alpha_range.lower},
      {hyper.t_range.lower, hyper.alpha_range.upper},
      {hyper.t_range.upper, hyper.alpha_range.lower},
      {hyper.t_range.upper, hyper.alpha_range.upper},
  };
}

PosteriorSummary posterior_at(const Corner& c, double s, Evidence e, const DecisionAlternative& d) {
  PosteriorSummary out;
  out.presence_before = presence_posterior(c.t, c.alpha, e);
  out.presence_after = eradication_posterior(c.t, c.alpha, e, d);
  const Moments m = theta_posterior_moments(c.t, s, c.alpha, e);
  out.theta_mean = m.mean;
  out.theta_var = m.variance;
  return out;
}

BoxPosterior posterior_box(const HyperparameterBox& hyper, Evidence e, const DecisionAlternative& d) {
  BoxPosterior out;
  bool first = true;
  for (const Corner& c : box_corners(hyper)) {
    PosteriorSummary p = posterior_at(c, hyper.s, e, d);
    if (first) {
      out.presence_before = {p.presence_before, p.presence_before};
      out.presence_after = p.presence_after;
      first = false;
    } else {
      out.presence_before.lower = std::min(out.presence_before.lower, p.presence_before);
      out.presence_before.upper = std::max(out.presence_before.upper, p.presence_before);
      out.presence_after.lower = std::min(out.presence_after.lower, p.presence_after.lower);
      out.presence_after.upper = std::max(out.presence_after.upper, p.presence_after.upper);
    }
    out.corners.push_back(p);
  }
  return out;
}

}  // namespace rbda
