#include "psigrh/zero_bounds.hpp"

#include <cmath>

#include "psigrh/errors.hpp"

namespace psigrh {

namespace {
constexpr double kTwoPi = 2 * M_PI;

double log_weight(double T, const FieldParams& params) {
  return params.log_disc + params.n_K * std::log(T / kTwoPi);
}
}  // namespace

const TrudgianConstants& trudgian_constants() {
  static const TrudgianConstants cached = [] {
    TrudgianConstants c;
    c.D1 = 0.459;
    c.D2 = 1.996;
    c.D3 = 2.754;
    c.c1 = M_PI * c.D1;
    c.c2 = M_PI * (c.D2 + c.D1 * std::log(kTwoPi));
    c.c3 = M_PI * c.D3;
    c.T0 = 5.0;
    c.eta = 0.5;
    c.p_param = -0.5;
    c.r_param = 2.0;
    return c;
  }();
  return cached;
}

double zero_count_upper(double T, const FieldParams& params) {
  if (!std::isfinite(T) || T < 5) throw DomainError("zero count bound requires T >= 5");
  const double W = log_weight(T, params);
  return (T / M_PI) * (1 + 1.45 / T) * W - (T / M_PI) * (1 - 8.93 / T) * params.n_K + 8.66 / M_PI;
}

ZeroCountWindow zero_count_window(double T, const FieldParams& params) {
  if (!std::isfinite(T) || T < 1) throw DomainError("zero count window requires T >= 1");
  const TrudgianConstants c = trudgian_constants();
  ZeroCountWindow w;
  w.asymptotic = (T / M_PI) * (params.log_disc + params.n_K * std::log(T / (kTwoPi * M_E)));
  w.remainder_bound = (c.c1 * log_weight(T, params) + c.c2 * params.n_K + c.c3) / M_PI;
  return w;
}

double tail_inverse_square_bound(double T, const FieldParams& params) {
  if (!std::isfinite(T) || T < 5) throw DomainError("tail bound requires T >= 5");
  const double W = log_weight(T, params);
  return ((1 + 2.89 / T) * W / T + (1 + 18.61 / T) * params.n_K / T + 17.31 / (T * T)) / M_PI;
}

double first_moment_bound(double T, const FieldParams& params) {
  if (!std::isfinite(T) || T < 5) throw DomainError("first moment bound requires T >= 5");
  const double L = std::log(T / kTwoPi);
  return ((L + 4.01) * params.log_disc + (0.5 * L * L - 1.41) * params.n_K + 25.57) / M_PI;
}

double low_lying_sum_bound(const FieldParams& params) {
  return 1.02 * params.log_disc - 1.63 * params.n_K + 7.04;
}

}  // namespace psigrh
