#include "drawable/probability.hpp"

#include <cmath>
#include <string>

#include "drawable/error.hpp"

namespace drawable {

namespace {

constexpr double kLogHalf = -0.6931471805599453;

void require_open(double lp, double lq) {
  // One of the logs may round to zero when the other carries the information.
  const bool ok = std::isfinite(lp) && std::isfinite(lq) && lp <= 0.0 &&
                  lq <= 0.0 && (lp < 0.0 || lq < 0.0);
  if (!ok) {
    throw PreconditionError("probability outside (0,1): log p = " +
                            std::to_string(lp) + ", log(1-p) = " + std::to_string(lq));
  }
}

}  // namespace

double log1mexp(double x) noexcept {
  if (x > kLogHalf) return std::log(-std::expm1(x));
  return std::log1p(-std::exp(x));
}

Probability Probability::from_value(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw PreconditionError("probability outside (0,1): " + std::to_string(p));
  }
  const bool upper = p > 0.5;
  return Probability(upper ? 1.0 - p : p, upper, std::log(p), std::log1p(-p));
}

Probability Probability::from_log(double log_p) {
  if (!std::isfinite(log_p) || !(log_p <= 0.0)) {
    throw PreconditionError("log-probability must be finite and not positive");
  }
  const double lq = log1mexp(log_p);
  require_open(log_p, lq);
  if (log_p < kLogHalf) return Probability(std::exp(log_p), false, log_p, lq);
  return Probability(-std::expm1(log_p), true, log_p, lq);
}

Probability Probability::from_log_complement(double log_q) {
  return from_log(log_q).flipped();
}

Probability Probability::from_logs(double log_p, double log_q) {
  require_open(log_p, log_q);
  if (log_p <= log_q) return Probability(std::exp(log_p), false, log_p, log_q);
  return Probability(std::exp(log_q), true, log_p, log_q);
}

Probability Probability::from_parts(double small, bool upper, double log_p, double log_q) {
  require_open(log_p, log_q);
  if (!(small >= 0.0 && small <= 0.5)) {
    throw PreconditionError("stored probability part outside [0,1/2]: " + std::to_string(small));
  }
  return Probability(small, upper, log_p, log_q);
}

}  // namespace drawable
