// adsem: conserved charges of asymptotically AdS Einstein-Maxwell initial
// data, the Hermitian charge matrix Q, and the positive-energy bounds.
//
// Subcommands: charges, bounds, dec, boundary-form, verify.
// Exit codes: 0 success, 1 verification/bound failure or divergence flag,
// 2 configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adsem/bounds.hpp"
#include "adsem/charges.hpp"
#include "adsem/initial_data.hpp"
#include "adsem/io.hpp"
#include "adsem/killing_spinor.hpp"
#include "adsem/verify.hpp"

namespace {

using namespace adsem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string solution = "kn-ads";
  double m = 1.0, a = 0.0, e = 0.0, Q = 0.0, kappa = 1.0;
  std::vector<double> radii;
  int n_theta = 48, n_psi = 96;
  std::string format = "table";
  std::string output;
  std::string config;
};

// Diagnostic fixture: decays too slowly for the energy integral to converge,
// exercising the divergence-flag path end to end.
FunctionProvider builtin_test_provider(double kappa) {
  return FunctionProvider(
      [](const FramePoint& q) {
        FieldSample s;
        s.a(0, 0) = std::exp(-q.kappa * q.r);
        return s;
      },
      kappa, 1.0, "builtin-test");
}

std::unique_ptr<InitialDataProvider> make_provider(const Options& opt) {
  if (opt.solution == "ads") return std::make_unique<AdsProvider>(provider_ads(opt.kappa));
  if (opt.solution == "rn-ads")
    return std::make_unique<RnAdsProvider>(provider_rn_ads(opt.m, opt.Q, opt.kappa));
  if (opt.solution == "kn-ads")
    return std::make_unique<KnAdsAsymptoticProvider>(
        provider_kn_ads_asymptotic(opt.m, opt.a, opt.e, opt.kappa));
  if (opt.solution == "builtin-test")
    return std::make_unique<FunctionProvider>(builtin_test_provider(opt.kappa));
  throw CLI::ValidationError("--solution", "unknown solution type: " + opt.solution);
}

RadiusSchedule make_schedule(const Options& opt) {
  RadiusSchedule s = default_radius_schedule(opt.kappa);
  if (!opt.radii.empty()) s.radii = opt.radii;
  s.quad = sphere_quadrature(opt.n_theta, opt.n_psi);
  return s;
}

void write_out(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream f(opt.output);
  if (!f) throw std::runtime_error("cannot open output file: " + opt.output);
  f << text;
}

std::string charges_table(const ChargeReport& report) {
  std::ostringstream os;
  os << "charge        value            error\n";
  for (std::size_t ci = 0; ci < kAllCharges.size(); ++ci) {
    const ChargeId id = kAllCharges[ci];
    char line[128];
    std::snprintf(line, sizeof(line), "%-10s  %15s  %12s%s\n", charge_name(id),
                  format_g9(charge_value(report.values, id)).c_str(),
                  format_g9(charge_value(report.errors, id)).c_str(),
                  report.extrapolations[ci].degenerate ? "  [divergent]" : "");
    os << line;
  }
  return os.str();
}

// config file (JSON) provides defaults; explicitly passed flags win
void apply_config(const std::string& path, CLI::App* cmd, Options& opt) {
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot open " + path);
  json j;
  f >> j;
  auto maybe = [&](const char* key, auto& target) {
    const auto* flag = cmd->get_option_no_throw(std::string("--") + key);
    if (j.contains(key) && (flag == nullptr || flag->count() == 0))
      target = j.at(key).get<std::decay_t<decltype(target)>>();
  };
  maybe("solution", opt.solution);
  maybe("m", opt.m);
  maybe("a", opt.a);
  maybe("e", opt.e);
  maybe("Q", opt.Q);
  maybe("kappa", opt.kappa);
  maybe("radii", opt.radii);
  maybe("n_theta", opt.n_theta);
  maybe("n_psi", opt.n_psi);
  maybe("format", opt.format);
  maybe("output", opt.output);
}

void add_common_options(CLI::App* cmd, Options& opt) {
  cmd->add_option("--solution", opt.solution, "ads | rn-ads | kn-ads | builtin-test");
  cmd->add_option("--m", opt.m, "mass parameter");
  cmd->add_option("--a", opt.a, "spin parameter (kn-ads)");
  cmd->add_option("--e", opt.e, "charge parameter (kn-ads)");
  cmd->add_option("--Q", opt.Q, "charge parameter (rn-ads)");
  cmd->add_option("--kappa", opt.kappa, "AdS curvature scale, kappa > 0");
  cmd->add_option("--radii", opt.radii, "evaluation radii (default kappa r = 6..10)");
  cmd->add_option("--n-theta", opt.n_theta, "Gauss-Legendre nodes in cos(theta)");
  cmd->add_option("--n-psi", opt.n_psi, "uniform nodes in psi");
  cmd->add_option("--format", opt.format, "table | csv | json");
  cmd->add_option("--output", opt.output, "write report to file instead of stdout");
  cmd->add_option("--config", opt.config, "JSON config file; flags override");
}

int cmd_charges(CLI::App* cmd, Options& opt) {
  if (!opt.config.empty()) apply_config(opt.config, cmd, opt);
  const auto provider = make_provider(opt);
  const ChargeReport report = compute_charges(*provider, make_schedule(opt));

  if (opt.format == "json")
    write_out(opt, charges_to_json(report).dump(2) + "\n");
  else if (opt.format == "csv")
    write_out(opt, charges_to_csv(report));
  else
    write_out(opt, charges_table(report));

  if (report.any_degenerate) {
    std::fprintf(stderr, "adsem: extrapolation divergence flagged\n");
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_bounds(CLI::App* cmd, Options& opt, const std::string& charge_file) {
  ChargeSet cs;
  if (!charge_file.empty()) {
    std::ifstream f(charge_file);
    if (!f) throw CLI::ValidationError("--from-charges", "cannot open " + charge_file);
    if (charge_file.size() > 4 && charge_file.substr(charge_file.size() - 4) == ".csv") {
      std::stringstream buf;
      buf << f.rdbuf();
      cs = charges_from_csv(buf.str()).values;
    } else {
      json j;
      f >> j;
      cs = charges_from_json(j).values;
    }
  } else {
    if (!opt.config.empty()) apply_config(opt.config, cmd, opt);
    const auto provider = make_provider(opt);
    cs = compute_charges(*provider, make_schedule(opt)).values;
  }

  const QMatrix Q = build_Q(cs);
  const PsdReport psd = psd_report(Q);
  const BoundReport bounds = bound_thm52_report(cs);
  const bool satisfied = cs.E0 >= bounds.bound - 1e-10;

  if (opt.format == "json") {
    write_out(opt, bound_report_to_json(cs).dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "Q =\n";
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double im = Q(i, j).imag();
        os << "  (" << format_g9(Q(i, j).real()) << (im < 0.0 ? "" : "+")
           << format_g9(im) << "i)";
      }
      os << "\n";
    }
    os << "eigenvalues:";
    for (double ev : psd.eigenvalues) os << " " << format_g9(ev);
    os << "\nPSD: " << (psd.psd ? "yes" : "NO")
       << " (min eigenvalue " << format_g9(psd.min_eigenvalue) << ")\n";
    if (!psd.psd) os << "warning: Q not PSD\n";
    os << "bound branches:";
    for (double b : bounds.branches) os << " " << format_g9(b);
    os << "\nE0 >= bound: " << (satisfied ? "PASS" : "FAIL") << " ("
       << format_g9(cs.E0) << " >= " << format_g9(bounds.bound) << ", branch "
       << bounds.active_branch << ")\n";
    write_out(opt, os.str());
  }
  return satisfied && psd.psd ? kExitOk : kExitFailure;
}

int cmd_dec(CLI::App* cmd, Options& opt, double r, double theta, double psi,
            double R_override, bool has_R) {
  if (!opt.config.empty()) apply_config(opt.config, cmd, opt);
  const auto provider = make_provider(opt);
  const FramePoint pt{r, theta, psi, opt.kappa};
  const EnergyConditionSample s =
      has_R ? energy_condition_sample(*provider, pt, R_override)
            : energy_condition_sample(*provider, pt);
  const DecResult dec = dec_check(s);

  std::ostringstream os;
  os << "mu = " << format_g9(s.mu) << "\n"
     << "nu = (" << format_g9(s.nu(0)) << ", " << format_g9(s.nu(1)) << ", "
     << format_g9(s.nu(2)) << ")\n"
     << "nu' = (" << format_g9(s.nu_prime(0)) << ", " << format_g9(s.nu_prime(1))
     << ", " << format_g9(s.nu_prime(2)) << ")\n"
     << "div E = " << format_g9(s.divE) << ", div B = " << format_g9(s.divB)
     << ", |B| = " << format_g9(s.absB) << "\n"
     << "margin = " << format_g9(dec.margin) << " -> "
     << (dec.pass ? "PASS" : "FAIL") << "\n";
  write_out(opt, os.str());
  return dec.pass ? kExitOk : kExitFailure;
}

int cmd_boundary_form(CLI::App* cmd, Options& opt, std::vector<double>& lambda_raw,
                      double r) {
  if (!opt.config.empty()) apply_config(opt.config, cmd, opt);
  LambdaVector lv;
  lv << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0);
  if (!lambda_raw.empty()) {
    if (lambda_raw.size() != 8)
      throw CLI::ValidationError(
          "--lambda", "expected 8 reals: re1,im1,re2,im2,re3,im3,re4,im4");
    for (int k = 0; k < 4; ++k)
      lv(k) = Complex(lambda_raw[2 * k], lambda_raw[2 * k + 1]);
  }
  const auto provider = make_provider(opt);
  const SphereQuadrature quad = sphere_quadrature(opt.n_theta, opt.n_psi);
  const BoundaryForm bf = boundary_form(lv, *provider, r, quad);

  const ChargeReport charges = compute_charges(*provider, make_schedule(opt));
  const double qf = q_form(lv, build_Q(charges.values));

  std::ostringstream os;
  os << "boundary form at r = " << format_g9(r) << ": " << format_g9(bf.value)
     << " (imag residual " << format_g9(bf.imag_residual) << ")\n"
     << "8 pi lambda^H Q lambda: " << format_g9(qf) << "\n"
     << "relative difference: "
     << format_g9(std::abs(bf.value - qf) / (std::abs(qf) + 1e-12)) << "\n";
  write_out(opt, os.str());
  return kExitOk;
}

int cmd_verify(const std::string& level) {
  const bool full = level == "full";
  const auto results = verify::run_verify(full);
  bool all_pass = true;
  for (const auto& s : results) {
    std::printf("[%s] %-18s max residual %.3e  (%.2fs)%s%s\n", s.pass ? "PASS" : "FAIL",
                s.name.c_str(), s.max_residual, s.seconds, s.pass ? "" : "  failed: ",
                s.pass ? "" : s.detail.c_str());
    all_pass = all_pass && s.pass;
  }
  return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conserved charges and positive-energy bounds for asymptotically "
               "AdS Einstein-Maxwell initial data"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  Options opt;

  auto* charges = app.add_subcommand("charges", "compute the charge set");
  add_common_options(charges, opt);

  auto* bounds = app.add_subcommand("bounds", "Q matrix, PSD verdict, energy bounds");
  std::string charge_file;
  add_common_options(bounds, opt);
  bounds->add_option("--from-charges", charge_file, "read charges from a JSON/CSV file");

  auto* dec = app.add_subcommand("dec", "pointwise modified dominant energy condition");
  double dec_r = 8.0, dec_theta = M_PI / 2, dec_psi = 0.0, dec_R = 0.0;
  add_common_options(dec, opt);
  dec->add_option("--r", dec_r, "radius");
  dec->add_option("--theta", dec_theta, "polar angle");
  dec->add_option("--psi", dec_psi, "azimuth");
  auto* ropt = dec->add_option("--R", dec_R, "scalar curvature override (default -6 kappa^2)");

  auto* bform = app.add_subcommand("boundary-form", "surface integrals of the "
                                   "integrated Weitzenbock identity vs the Q form");
  std::vector<double> lambda_raw;
  double bform_r = 10.0;
  add_common_options(bform, opt);
  bform->add_option("--r", bform_r, "evaluation radius");
  bform->add_option("--lambda", lambda_raw,
                    "spinor parameters as 8 reals (re,im per component)");

  auto* verify_cmd = app.add_subcommand("verify", "self-verification suites");
  std::string level = "quick";
  verify_cmd->add_option("level", level, "quick | full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (charges->parsed()) return cmd_charges(charges, opt);
    if (bounds->parsed()) return cmd_bounds(bounds, opt, charge_file);
    if (dec->parsed())
      return cmd_dec(dec, opt, dec_r, dec_theta, dec_psi, dec_R, ropt->count() > 0);
    if (bform->parsed()) return cmd_boundary_form(bform, opt, lambda_raw, bform_r);
    if (verify_cmd->parsed()) return cmd_verify(level);
  } catch (const CLI::ValidationError& err) {
    std::fprintf(stderr, "adsem: %s\n", err.what());
    return kExitConfig;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "adsem: invalid configuration: %s\n", err.what());
    return kExitConfig;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "adsem: %s\n", err.what());
    return kExitFailure;
  }
  return kExitConfig;
}
