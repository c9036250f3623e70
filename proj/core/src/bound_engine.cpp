#include "psigrh/bound_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "psigrh/errors.hpp"

namespace psigrh {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double clamped_log_disc(const FieldParams& params) {
  return std::max(0.0, params.log_disc);
}

double assemble(const BoundComponents& c, const FieldParams& params) {
  return c.coef_log_disc * clamped_log_disc(params) + c.coef_n * params.n_K +
         c.constant;
}

}  // namespace

std::string to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::theorem1:
      return "theorem1";
    case BoundKind::cor1:
      return "cor1";
    case BoundKind::cor2_general:
      return "cor2_general";
    case BoundKind::cor2_large:
      return "cor2_large";
    case BoundKind::cor3:
      return "cor3";
    case BoundKind::schoenfeld_Q:
      return "schoenfeld_Q";
  }
  return "unknown";
}

std::optional<BoundKind> bound_kind_from_string(const std::string& name) {
  if (name == "theorem1") return BoundKind::theorem1;
  if (name == "cor1") return BoundKind::cor1;
  if (name == "cor2_general") return BoundKind::cor2_general;
  if (name == "cor2_large") return BoundKind::cor2_large;
  if (name == "cor3") return BoundKind::cor3;
  if (name == "schoenfeld_Q") return BoundKind::schoenfeld_Q;
  return std::nullopt;
}

double epsilon_K(double x, double T, const FieldParams& params) {
  if (!(x >= 3.0)) throw DomainError("epsilon_K requires x >= 3");
  if (!(T >= 5.0)) throw DomainError("epsilon_K requires T >= 5");
  double v = params.d_K * std::log(x) - 1.44 * params.n_K * std::sqrt(x) / T;
  return std::max(0.0, v);
}

double r_K_bound(const FieldParams& params) {
  return 1.02 * clamped_log_disc(params) - 2.10 * params.n_K + 8.35;
}

BoundReport theorem1_bound(double x, double T, const FieldParams& params) {
  if (!(x >= 3.0)) throw DomainError("theorem1_bound requires x >= 3");
  if (!(T >= 5.0)) throw DomainError("theorem1_bound requires T >= 5");

  double sx = std::sqrt(x);
  double lt = std::log(T / (2.0 * kPi));
  double invT = 1.0 / T;
  double invT2 = invT * invT;

  double F = sx / kPi * (lt + 6.01 + 5.84 * invT + 5.52 * invT2) + 1.02;
  double G = sx / kPi *
                 (0.5 * lt * lt + (2.0 + 5.84 * invT + 5.52 * invT2) * lt -
                  1.41 + 29.04 * invT + 31.46 * invT2) -
             2.10;
  double H = x * invT + sx / kPi * (25.57 + 25.97 * invT + 28.57 * invT2) +
             epsilon_K(x, T, params) + 8.35;
  if (params.n_K <= 2) H += 1.22 / x;

  BoundComponents c{F, G, H};
  return BoundReport{x, BoundKind::theorem1, T, assemble(c, params), c};
}

long long corollary1_x_floor(int n_K) {
  if (n_K < 2) throw DomainError("corollary1 needs degree >= 2");
  if (n_K <= 4) return 100;
  if (n_K == 5) return 72;
  if (n_K == 6) return 43;
  if (n_K == 7) return 29;
  return 24;
}

BoundReport corollary1_bound(double x, const FieldParams& params) {
  long long floor_x = corollary1_x_floor(params.n_K);
  if (!(x >= static_cast<double>(floor_x))) {
    throw DomainError("corollary1 needs x >= " + std::to_string(floor_x) +
                      " for degree " + std::to_string(params.n_K));
  }
  double sx = std::sqrt(x);
  double lx = std::log(x);
  BoundComponents c{sx * (lx / (2.0 * kPi) + 2.0),
                    sx * (lx * lx / (8.0 * kPi) + 2.0), 0.0};
  return BoundReport{x, BoundKind::cor1, std::nullopt, assemble(c, params), c};
}

BoundReport corollary2_bound(double x, const FieldParams& params,
                             Cor2Variant variant) {
  double sx = std::sqrt(x);
  double lx = std::log(x);
  BoundComponents c{};
  BoundKind kind;
  if (variant == Cor2Variant::general) {
    if (!(x >= 3.0)) throw DomainError("corollary2 general needs x >= 3");
    double L = std::log(18.8 * x / (lx * lx));
    c = BoundComponents{sx * (L / (2.0 * kPi) + 2.3),
                        sx * (L * L / (8.0 * kPi) + 1.3),
                        sx * (0.3 * lx + 14.6)};
    kind = BoundKind::cor2_general;
  } else {
    if (!(x >= 2000.0)) throw DomainError("corollary2 large needs x >= 2000");
    double L = std::log(x / (lx * lx));
    c = BoundComponents{sx * (L / (2.0 * kPi) + 1.8),
                        sx * (L * L / (8.0 * kPi) + 1.1),
                        sx * (1.2 * lx + 10.2)};
    kind = BoundKind::cor2_large;
  }
  return BoundReport{x, kind, std::nullopt, assemble(c, params), c};
}

double corollary3_pi_bound(double x, double x_bar, const FieldParams& params) {
  if (!(x_bar >= 3.0)) throw DomainError("corollary3 needs x_bar >= 3");
  if (!(x >= x_bar)) throw DomainError("corollary3 needs x >= x_bar");
  double sx = std::sqrt(x);
  double lx = std::log(x);
  double llx = std::log(lx);
  double cd = 1.0 / (2.0 * kPi) - llx / (kPi * lx) + 5.8 / lx;
  double cn = (1.0 / (8.0 * kPi) - llx / (2.0 * kPi * lx) + 3.0 / lx) * lx;
  return sx * (cd * clamped_log_disc(params) + cn * params.n_K + 0.3 +
               13.3 / lx);
}

double oesterle_bound(double x, const FieldParams& params) {
  if (!(x >= 1.0)) throw DomainError("oesterle_bound requires x >= 1");
  double sx = std::sqrt(x);
  double lx = std::log(x);
  return sx * ((lx / kPi + 2.0) * clamped_log_disc(params) +
               (lx * lx / (2.0 * kPi) + 2.0) * params.n_K);
}

double schoenfeld_bound(double x) {
  if (!(x >= 73.2)) throw DomainError("schoenfeld_bound requires x >= 73.2");
  double lx = std::log(x);
  return std::sqrt(x) * lx * lx / (8.0 * kPi);
}

OptimizeResult optimize_T(double x, const FieldParams& params, double T_min) {
  if (!(x >= 3.0)) throw DomainError("optimize_T requires x >= 3");
  T_min = std::max(T_min, 5.0);
  double T_max = std::max(T_min, 10.0 * x);

  auto value_at = [&](double T) { return theorem1_bound(x, T, params).value; };

  double best_T = T_min;
  double best_v = value_at(T_min);
  auto consider = [&](double T) {
    T = std::min(std::max(T, T_min), T_max);
    double v = value_at(T);
    if (v < best_v || (v == best_v && T < best_T)) {
      best_v = v;
      best_T = T;
    }
  };

  double sx = std::sqrt(x);
  double lx = std::log(x);
  double e = std::exp(1.0);
  const double presets[] = {8.0,
                            x / 6.0,
                            4.8 * sx / lx,
                            8.0 * sx / lx,
                            10.0 / e * sx / lx,
                            2.0 * kPi / (e * e) * sx / lx};
  for (double T : presets) consider(T);

  double a = std::log(T_min);
  double b = std::log(T_max);
  if (b > a) {
    const double invphi = 0.6180339887498948482;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = value_at(std::exp(c));
    double fd = value_at(std::exp(d));
    while (b - a > 1e-6) {
      if (fc <= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - invphi * (b - a);
        fc = value_at(std::exp(c));
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + invphi * (b - a);
        fd = value_at(std::exp(d));
      }
    }
    consider(std::exp(a));
    consider(std::exp(0.5 * (a + b)));
    consider(std::exp(b));
  }

  return OptimizeResult{best_T, theorem1_bound(x, best_T, params)};
}

BoundReport best_bound(double x, const FieldParams& params) {
  if (!(x >= 3.0)) throw DomainError("best_bound requires x >= 3");

  BoundReport best = optimize_T(x, params).report;
  auto consider = [&](const BoundReport& r) {
    if (r.value < best.value) best = r;
  };

  if (params.n_K >= 2 && x >= static_cast<double>(corollary1_x_floor(params.n_K))) {
    consider(corollary1_bound(x, params));
  }
  consider(corollary2_bound(x, params, Cor2Variant::general));
  if (x >= 2000.0) consider(corollary2_bound(x, params, Cor2Variant::large));
  if (params.n_K == 1 && x >= 73.2) {
    double v = schoenfeld_bound(x);
    consider(BoundReport{x, BoundKind::schoenfeld_Q, std::nullopt, v,
                         BoundComponents{0.0, 0.0, v}});
  }
  return best;
}

}  // namespace psigrh
