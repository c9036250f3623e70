#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "output.hpp"
#include "psigrh/bound_engine.hpp"
#include "psigrh/errors.hpp"
#include "psigrh/exact_psi.hpp"
#include "psigrh/field_params.hpp"
#include "psigrh/zero_bounds.hpp"

namespace {

using namespace psigrh;
using cli::Record;
using cli::Writer;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned env_threads() {
  const char* s = std::getenv("PSI_GRH_THREADS");
  if (!s) return 0;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  if (end == s || *end != '\0' || v < 1) return 0;
  return v > 64 ? 64u : static_cast<unsigned>(v);
}

std::vector<double> split_doubles(const std::string& s, char sep, const char* what) {
  std::vector<double> out;
  size_t pos = 0;
  for (;;) {
    const size_t next = s.find(sep, pos);
    const std::string tok =
        next == std::string::npos ? s.substr(pos) : s.substr(pos, next - pos);
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (tok.empty() || used != tok.size())
      throw UsageError(std::string(what) + ": bad number '" + tok + "'");
    out.push_back(v);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

std::vector<double> build_x_grid(const std::string& xlist, const std::string& xrange,
                                 const std::string& xlog) {
  if (!xlist.empty()) return split_doubles(xlist, ',', "--x");
  if (!xrange.empty()) {
    const auto v = split_doubles(xrange, ':', "--x-range");
    if (v.size() != 3) throw UsageError("--x-range expects a:b:step");
    const double a = v[0], b = v[1], step = v[2];
    if (!(step > 0) || b < a) throw UsageError("--x-range needs step > 0 and b >= a");
    const double count = std::floor((b - a) / step + 1e-9) + 1;
    if (count > 1e7) throw UsageError("--x-range produces too many points");
    std::vector<double> out;
    out.reserve(static_cast<size_t>(count));
    for (long long i = 0; i < static_cast<long long>(count); ++i)
      out.push_back(a + step * static_cast<double>(i));
    return out;
  }
  const auto v = split_doubles(xlog, ':', "--x-log");
  if (v.size() != 3) throw UsageError("--x-log expects a:b:n");
  const double a = v[0], b = v[1];
  const auto n = static_cast<long long>(v[2]);
  if (!(a > 0) || b < a || n < 1 || n > 10000000)
    throw UsageError("--x-log needs 0 < a <= b and 1 <= n <= 1e7");
  std::vector<double> out;
  if (n == 1) {
    out.push_back(a);
    return out;
  }
  const double la = std::log(a), lb = std::log(b);
  for (long long i = 0; i < n; ++i)
    out.push_back(std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1)));
  return out;
}

struct BoundArgs {
  std::string field_file;
  int deg = 0;
  int r2 = 0;
  double log_disc = std::numeric_limits<double>::quiet_NaN();
  long long disc = 0;
  std::string xlist, xrange, xlog;
  std::string kind = "best";
  double T = std::numeric_limits<double>::quiet_NaN();
  double xbar = 3.0;
  bool json = false;
};

FieldParams resolve_params(const BoundArgs& a) {
  if (!a.field_file.empty()) return params_from_definition(load_field_file(a.field_file));
  if (a.deg < 1) {
    if (a.r2 != 0 || a.disc != 0 || !std::isnan(a.log_disc))
      throw UsageError("--r2/--disc/--log-disc need --deg");
    return FieldParams(1, 1, 0, 0.0);  // rationals
  }
  const int r1 = a.deg - 2 * a.r2;
  if (r1 < 0) throw UsageError("--r2 exceeds half the degree");
  double ld = 0.0;
  if (!std::isnan(a.log_disc)) {
    ld = a.log_disc;
  } else if (a.disc != 0) {
    ld = std::log(std::abs(static_cast<double>(a.disc)));
  }
  return FieldParams(a.deg, r1, a.r2, ld);
}

// Evaluates the named bound; "best" picks the winner across domains.
BoundReport eval_bound(const std::string& kind, double x, const FieldParams& params,
                       double T_fixed) {
  if (kind == "best") return best_bound(x, params);
  const auto k = bound_kind_from_string(kind);
  if (!k) throw UsageError("unknown bound kind '" + kind + "'");
  switch (*k) {
    case BoundKind::theorem1:
      if (!std::isnan(T_fixed)) return theorem1_bound(x, T_fixed, params);
      return optimize_T(x, params).report;
    case BoundKind::cor1:
      return corollary1_bound(x, params);
    case BoundKind::cor2_general:
      return corollary2_bound(x, params, Cor2Variant::general);
    case BoundKind::cor2_large:
      return corollary2_bound(x, params, Cor2Variant::large);
    case BoundKind::schoenfeld_Q: {
      if (params.n_K != 1) throw DomainError("the classical bound applies to degree 1 only");
      const double v = schoenfeld_bound(x);
      return BoundReport{x, BoundKind::schoenfeld_Q, std::nullopt, v,
                         BoundComponents{0.0, 0.0, v}};
    }
    case BoundKind::cor3:
      throw DomainError("cor3 bounds the prime-ideal count; handled separately");
  }
  throw UsageError("unknown bound kind '" + kind + "'");
}

int run_bound(const BoundArgs& a) {
  if (a.kind != "best" && !bound_kind_from_string(a.kind))
    throw UsageError("unknown bound kind '" + a.kind + "'");
  if (!std::isnan(a.T) && a.kind != "theorem1")
    throw UsageError("--T applies to --kind theorem1 only");
  const FieldParams params = resolve_params(a);
  const std::vector<double> grid = build_x_grid(a.xlist, a.xrange, a.xlog);

  Writer w(std::cout, a.json);
  bool any_error = false;
  for (const double x : grid) {
    Record r("bound");
    r.real("x", x);
    try {
      if (a.kind == "cor3") {
        const double v = corollary3_pi_bound(x, a.xbar, params);
        r.text("kind", "cor3");
        r.blank("T");
        r.real("value", v);
        r.blank("coef_log_disc");
        r.blank("coef_n");
        r.blank("constant");
      } else {
        const BoundReport rep = eval_bound(a.kind, x, params, a.T);
        r.text("kind", to_string(rep.kind));
        if (rep.T_used)
          r.real("T", *rep.T_used);
        else
          r.blank("T");
        r.real("value", rep.value);
        if (rep.components) {
          r.real("coef_log_disc", rep.components->coef_log_disc);
          r.real("coef_n", rep.components->coef_n);
          r.real("constant", rep.components->constant);
        } else {
          r.blank("coef_log_disc");
          r.blank("coef_n");
          r.blank("constant");
        }
      }
      r.text("error", "");
    } catch (const Error& e) {
      r.text("kind", a.kind);
      r.blank("T");
      r.blank("value");
      r.blank("coef_log_disc");
      r.blank("coef_n");
      r.blank("constant");
      r.text("error", e.what());
      any_error = true;
    }
    w.emit(r);
  }
  return any_error ? 1 : 0;
}

struct Lemma3RegenArgs {
  std::string cert_out;
  bool json = false;
};

int run_lemma3_regenerate(const Lemma3RegenArgs& a) {
  const MajorantCertificate cert = solve_certificate(reference_nodes());
  const MajorantCertificate& ref = reference_certificate();
  Writer w(std::cout, a.json);
  bool all_match = cert.coef_scaled.size() == ref.coef_scaled.size();
  for (size_t j = 0; j < cert.coef_scaled.size(); ++j) {
    Record r("lemma3.regenerate");
    r.integer("j", static_cast<long long>(j) + 1);
    r.text("scaled", cert.coef_scaled[j].str());
    const bool match =
        j < ref.coef_scaled.size() && cert.coef_scaled[j] == ref.coef_scaled[j];
    r.text("reference", j < ref.coef_scaled.size() ? ref.coef_scaled[j].str() : "");
    r.integer("match", match ? 1 : 0);
    if (!match) all_match = false;
    w.emit(r);
  }
  if (!a.cert_out.empty()) save_certificate(a.cert_out, cert);
  return all_match ? 0 : 1;
}

struct Lemma3VerifyArgs {
  std::string cert_in;
  unsigned threads = 0;
  bool json = false;
};

int run_lemma3_verify(const Lemma3VerifyArgs& a) {
  const MajorantCertificate cert = load_certificate(a.cert_in);
  const MajorizationReport maj = verify_majorization(cert);
  Record r("lemma3.verify");
  r.integer("majorization_pass", maj.pass ? 1 : 0);
  if (maj.witness)
    r.real("witness", *maj.witness);
  else
    r.blank("witness");
  bool ok = maj.pass;
  if (!maj.pass) std::cerr << "majorization failed: " << maj.detail << "\n";
  try {
    const CertificateConstants c = verify_prime_sum(cert, a.threads);
    r.real("sum_a", c.sum_a);
    r.real("sum_pole", c.sum_pole);
    r.real("sum_gamma_half", c.sum_gamma_half);
    r.real("sum_gamma_shift", c.sum_gamma_shift);
    r.real("prime_sum_slack", c.prime_sum_slack);
    r.text("error", "");
  } catch (const Error& e) {
    r.blank("sum_a");
    r.blank("sum_pole");
    r.blank("sum_gamma_half");
    r.blank("sum_gamma_shift");
    r.blank("prime_sum_slack");
    r.text("error", e.what());
    ok = false;
  }
  Writer w(std::cout, a.json);
  w.emit(r);
  return ok ? 0 : 1;
}

struct PsiArgs {
  std::string field_file;
  double x_max = 0;
  std::string kind = "best";
  unsigned threads = 0;
  bool json = false;
};

int run_psi(const PsiArgs& a) {
  if (a.kind == "cor3") throw UsageError("cor3 bounds the prime-ideal count, not psi");
  if (a.kind != "best" && !bound_kind_from_string(a.kind))
    throw UsageError("unknown bound kind '" + a.kind + "'");
  const FieldDefinition field = load_field_file(a.field_file);
  const FieldParams params = params_from_definition(field);
  const PsiAccumulator acc = accumulate_psi(field, a.x_max, true, a.threads);

  Writer w(std::cout, a.json);
  size_t ci = 0, ni = 0;
  double psi = 0, theta = 0;
  long long pi = 0;
  const auto x_top = static_cast<long long>(std::floor(a.x_max));
  for (long long xi = 1; xi <= x_top; ++xi) {
    while (ci < acc.contributions.size() && acc.contributions[ci].first <= xi)
      psi += acc.contributions[ci++].second;
    while (ni < acc.ideal_norms.size() && acc.ideal_norms[ni].first <= xi) {
      theta += acc.ideal_norms[ni++].second;
      ++pi;
    }
    Record r("psi");
    r.integer("x", xi);
    r.real("psi", psi);
    r.real("theta", theta);
    r.integer("pi", pi);
    try {
      const BoundReport rep =
          eval_bound(a.kind, static_cast<double>(xi), params,
                     std::numeric_limits<double>::quiet_NaN());
      r.real("bound", rep.value);
      r.real("margin", rep.value - std::abs(psi - static_cast<double>(xi)));
    } catch (const DomainError&) {
      r.blank("bound");
      r.blank("margin");
    }
    w.emit(r);
  }
  return 0;
}

struct VerifyArgs {
  std::string field_file;
  std::string kind;
  long long from = 0, to = 0;
  double margin = 0.0;
  unsigned threads = 0;
  bool json = false;
};

int run_verify(const VerifyArgs& a) {
  if (a.from > a.to) throw UsageError("--from must not exceed --to");
  const auto k = bound_kind_from_string(a.kind);
  if (!k || *k == BoundKind::cor3)
    throw UsageError("--kind must name a psi bound (theorem1, cor1, cor2_general, cor2_large, schoenfeld_Q)");
  const FieldDefinition field = load_field_file(a.field_file);
  const RangeVerifyReport rep =
      verify_bound_on_range(field, *k, a.from, a.to, a.margin, a.threads);
  Record r("verify");
  r.text("kind", a.kind);
  r.integer("from", a.from);
  r.integer("to", a.to);
  r.real("margin", a.margin);
  r.integer("pass", rep.pass ? 1 : 0);
  r.integer("checked", rep.checked);
  r.integer("violations", rep.violations);
  r.real("min_margin", rep.min_margin);
  r.integer("argmin_x", rep.argmin_x);
  Writer w(std::cout, a.json);
  w.emit(r);
  return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GRH-conditional bounds on the Chebyshev function of a number field"};
  app.require_subcommand(1);

  const unsigned default_threads = env_threads();

  BoundArgs bound_args;
  auto* bound_cmd = app.add_subcommand("bound", "evaluate a psi_K deviation bound on an x grid");
  bound_cmd->add_option("--field", bound_args.field_file, "field definition file");
  auto* deg_opt = bound_cmd->add_option("--deg", bound_args.deg, "field degree");
  bound_cmd->add_option("--r2", bound_args.r2, "complex-place count");
  auto* ld_opt = bound_cmd->add_option("--log-disc", bound_args.log_disc, "log |disc|");
  auto* disc_opt = bound_cmd->add_option("--disc", bound_args.disc, "|disc| (log taken internally)");
  ld_opt->excludes(disc_opt);
  bound_cmd->get_option("--field")->excludes(deg_opt);
  auto* x_opt = bound_cmd->add_option("--x", bound_args.xlist, "comma-separated x values");
  auto* xr_opt = bound_cmd->add_option("--x-range", bound_args.xrange, "arithmetic grid a:b:step");
  auto* xl_opt = bound_cmd->add_option("--x-log", bound_args.xlog, "geometric grid a:b:n");
  auto* xgroup = bound_cmd->add_option_group("x grid");
  xgroup->add_options(x_opt, xr_opt, xl_opt);
  xgroup->require_option(1);
  bound_cmd->add_option("--kind", bound_args.kind, "bound kind (default best)")
      ->check(CLI::IsMember({"best", "theorem1", "cor1", "cor2_general", "cor2_large",
                             "cor3", "schoenfeld_Q"}));
  bound_cmd->add_option("--T", bound_args.T, "fixed T for theorem1 (otherwise optimized)");
  bound_cmd->add_option("--xbar", bound_args.xbar, "lower endpoint for cor3");
  bound_cmd->add_flag("--json", bound_args.json, "JSON-lines output");

  auto* lemma3_cmd = app.add_subcommand("lemma3", "zero-sum majorant certificate pipeline");
  lemma3_cmd->require_subcommand(1);

  Lemma3RegenArgs regen_args;
  auto* regen_cmd = lemma3_cmd->add_subcommand(
      "regenerate", "re-derive the coefficients and compare to the stored table");
  regen_cmd->add_option("--cert", regen_args.cert_out, "write the certificate here");
  regen_cmd->add_flag("--json", regen_args.json, "JSON-lines output");

  Lemma3VerifyArgs lverify_args;
  lverify_args.threads = default_threads;
  auto* lverify_cmd =
      lemma3_cmd->add_subcommand("verify", "certify a stored certificate end to end");
  lverify_cmd->add_option("--cert", lverify_args.cert_in, "certificate file")->required();
  lverify_cmd->add_option("--threads", lverify_args.threads, "worker cap (0 = auto)");
  lverify_cmd->add_flag("--json", lverify_args.json, "JSON-lines output");

  PsiArgs psi_args;
  psi_args.threads = default_threads;
  auto* psi_cmd = app.add_subcommand("psi", "exact psi_K/theta_K/pi_K per integer x");
  psi_cmd->add_option("--field", psi_args.field_file, "field definition file")->required();
  psi_cmd->add_option("--x-max", psi_args.x_max, "enumerate prime powers up to here")
      ->required();
  psi_cmd->add_option("--kind", psi_args.kind, "bound column kind (default best)");
  psi_cmd->add_option("--threads", psi_args.threads, "worker cap (0 = auto)");
  psi_cmd->add_flag("--json", psi_args.json, "JSON-lines output");

  VerifyArgs verify_args;
  verify_args.threads = default_threads;
  auto* verify_cmd =
      app.add_subcommand("verify", "check a bound against exact psi_K on an integer range");
  verify_cmd->add_option("--field", verify_args.field_file, "field definition file")->required();
  verify_cmd->add_option("--kind", verify_args.kind, "bound kind")->required();
  verify_cmd->add_option("--from", verify_args.from, "first integer x")->required();
  verify_cmd->add_option("--to", verify_args.to, "last integer x")->required();
  verify_cmd->add_option("--margin", verify_args.margin, "required slack (default 0)");
  verify_cmd->add_option("--threads", verify_args.threads, "worker cap (0 = auto)");
  verify_cmd->add_flag("--json", verify_args.json, "JSON-lines output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (bound_cmd->parsed()) return run_bound(bound_args);
    if (lemma3_cmd->parsed()) {
      if (regen_cmd->parsed()) return run_lemma3_regenerate(regen_args);
      if (lverify_cmd->parsed()) return run_lemma3_verify(lverify_args);
    }
    if (psi_cmd->parsed()) return run_psi(psi_args);
    if (verify_cmd->parsed()) return run_verify(verify_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
