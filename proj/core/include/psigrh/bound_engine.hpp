#pragma once

#include <optional>
#include <string>

#include "psigrh/field_params.hpp"

namespace psigrh {

enum class BoundKind { theorem1, cor1, cor2_general, cor2_large, cor3, schoenfeld_Q };

std::string to_string(BoundKind kind);
std::optional<BoundKind> bound_kind_from_string(const std::string& name);

struct BoundComponents {
  double coef_log_disc;
  double coef_n;
  double constant;
};

struct BoundReport {
  double x;
  BoundKind kind;
  std::optional<double> T_used;
  double value;
  std::optional<BoundComponents> components;
};

// |psi_K(x) - x| <= F(x,T) log disc + G(x,T) n + H(x,T), x >= 3, T >= 5.
BoundReport theorem1_bound(double x, double T, const FieldParams& params);

// max(0, d_K log x - 1.44 n sqrt(x)/T).
double epsilon_K(double x, double T, const FieldParams& params);

// 1.02 log disc - 2.10 n + 8.35.
double r_K_bound(const FieldParams& params);

// sqrt(x) [(log x/2pi + 2) log disc + (log^2 x/8pi + 2) n]; n >= 2 and x at
// or above the degree-dependent floor (100/100/100/72/43/29/24).
BoundReport corollary1_bound(double x, const FieldParams& params);
long long corollary1_x_floor(int n_K);

enum class Cor2Variant { general, large };
BoundReport corollary2_bound(double x, const FieldParams& params, Cor2Variant variant);

// Bound on pi_K(x) - pi_K(x_bar) minus the log-integral main term; valid for
// x >= x_bar >= 3 (x_bar checked but absent from the value).
double corollary3_pi_bound(double x, double x_bar, const FieldParams& params);

// sqrt(x) [(log x/pi + 2) log disc + (log^2 x/2pi + 2) n], x >= 1.
double oesterle_bound(double x, const FieldParams& params);

// (1/8pi) sqrt(x) log^2 x, rationals only, x >= 73.2.
double schoenfeld_bound(double x);

struct OptimizeResult {
  double T_star;
  BoundReport report;
};

// Minimizes theorem1_bound over T in [T_min, 10x]; never worse than the
// closed-form presets.
OptimizeResult optimize_T(double x, const FieldParams& params, double T_min = 5.0);

// Minimum over the optimized main bound and every corollary whose domain
// contains x (plus the classical rationals-only bound when applicable).
BoundReport best_bound(double x, const FieldParams& params);

}  // namespace psigrh
