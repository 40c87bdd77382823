#include "egelab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "egelab/charpoly.hpp"
#include "egelab/chebmod.hpp"
#include "egelab/errors.hpp"
#include "egelab/gaflimit.hpp"
#include "egelab/io_util.hpp"
#include "egelab/momentcomb.hpp"
#include "egelab/sampling.hpp"
#include "egelab/spectrum.hpp"
#include "egelab/tracestats.hpp"
#include "egelab/verify.hpp"

namespace egelab {

namespace {

struct RunConfig {
  std::string subcommand;
  std::size_t n = 100;
  double t = 0.5;
  std::uint64_t seed = 0;
  int reps = 2000;
  int kmax = 5;
  int res = 512;
  double center_re = 0.0;
  double center_im = 0.0;
  double half_width = 1.0;
  double r = 0.5;
  double inflation = 1.1;
  std::string out;
  std::string format;
  bool quick = false;
  bool full = false;
  bool center_given = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* env = std::getenv("EGE_LAB_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') throw UsageError("EGE_LAB_SEED must be an unsigned integer");
  return v;
}

void require_t(const RunConfig& c) {
  if (!(c.t >= 0.0 && c.t <= 1.0)) throw UsageError("--t must lie in [0, 1]");
}

void require_out(const RunConfig& c) {
  if (c.out.empty()) throw UsageError(c.subcommand + ": --out is required");
}

// Canonical command line carrying every field the output depends on.
std::string config_line(const RunConfig& c) {
  std::ostringstream s;
  s << "ege_lab " << c.subcommand;
  auto flag = [&](const char* name, const std::string& v) { s << " --" << name << ' ' << v; };
  const std::string& sub = c.subcommand;
  if (sub == "portrait" || sub == "traces" || sub == "spectrum") flag("n", std::to_string(c.n));
  flag("t", fmt_double(c.t));
  if (sub != "moments") flag("seed", std::to_string(c.seed));
  if (sub == "traces" || sub == "gaf") flag("reps", std::to_string(c.reps));
  if (sub == "traces" || sub == "moments" || sub == "gaf") flag("kmax", std::to_string(c.kmax));
  if (sub == "portrait") {
    flag("res", std::to_string(c.res));
    flag("center-re", fmt_double(c.center_re));
    flag("center-im", fmt_double(c.center_im));
    flag("half-width", fmt_double(c.half_width));
  }
  if (sub == "gaf" && c.center_given) {
    flag("center-re", fmt_double(c.center_re));
    flag("center-im", fmt_double(c.center_im));
  }
  if (sub == "spectrum") {
    flag("inflation", fmt_double(c.inflation));
    flag("r", fmt_double(c.r));
  }
  if (sub == "traces") flag("format", c.format);
  return s.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path);
}

CMatrix sample_matrix(const RunConfig& c) {
  SampleStream s = derive_stream(c.seed, 0);
  return sample_ege(s, EgeParams{c.n, c.t, c.seed});
}

int cmd_portrait(const RunConfig& c, std::ostream& out) {
  require_t(c);
  require_out(c);
  if (c.format != "ppm" && !c.format.empty()) throw UsageError("portrait writes ppm only");
  if (c.res < 2) throw UsageError("--res must be >= 2");
  if (!(c.half_width > 0.0)) throw UsageError("--half-width must be positive");
  const CMatrix a = sample_matrix(c);
  const Grid grid{{c.center_re, c.center_im}, c.half_width, c.res};
  write_ppm(render_portrait(eval_grid(a, c.t, grid)), c.out);
  nlohmann::ordered_json meta;
  meta["config"] = config_line(c);
  write_text(c.out + ".config.json", meta.dump(2) + "\n");
  out << "wrote " << c.out << " (" << c.res << "x" << c.res << ")\n";
  return kExitOk;
}

int cmd_moments(const RunConfig& c, std::ostream& out) {
  require_t(c);
  require_out(c);
  if (c.kmax < 1) throw UsageError("--kmax must be >= 1");
  const CovTable table = build_cov_table(c.t, c.kmax);
  auto j = nlohmann::ordered_json::parse(cov_table_json(table));
  j["config"] = config_line(c);
  // h_k accompanies the degree-2k monomials; the exact enumeration behind it is budgeted.
  nlohmann::ordered_json h = nlohmann::ordered_json::array();
  for (int k = 1; 2 * k <= c.kmax; ++k) h.push_back({k, h_coeff(k, c.t)});
  j["h"] = h;

  // Diagonalization report for the Chebyshev basis at this t.
  double worst = 0.0;
  for (int k = 1; k <= c.kmax; ++k) {
    for (int l = 1; l <= c.kmax; ++l) {
      const PolyReal pk = cheb_poly(k, c.t);
      const PolyReal pl = cheb_poly(l, c.t);
      const double want = k == l ? k * std::pow(c.t, k) : 0.0;
      const double want_c = k == l ? k : 0.0;
      worst = std::max({worst, std::fabs(phi_poly(c.t, pk, pl) - want), std::fabs(phi_c_poly(c.t, pk, pl) - want_c)});
    }
  }
  const bool ok = worst <= 1e-9;
  j["identity_checks"] = {{"chebyshev_diagonalization_max_error", worst}, {"passed", ok}};
  write_text(c.out, j.dump(2) + "\n");
  out << "wrote " << c.out << "; Chebyshev diagonalization max error " << fmt_double(worst) << (ok ? " (ok)" : " (FAILED)")
      << "\n";
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_traces(const RunConfig& c, std::ostream& out) {
  require_t(c);
  require_out(c);
  if (c.format != "csv" && c.format != "json") throw UsageError("traces: --format must be csv or json");
  if (c.n < 1) throw UsageError("--n must be >= 1");
  if (c.reps < 100) throw UsageError("traces: --reps must be >= 100");
  if (c.kmax < 1) throw UsageError("--kmax must be >= 1");
  const MomentEstimate est = mc_moments(EgeParams{c.n, c.t, c.seed}, c.reps, c.kmax);
  if (c.format == "csv") {
    write_text(c.out, "# " + config_line(c) + "\n" + moment_estimate_csv(est));
  } else {
    auto j = nlohmann::ordered_json::parse(moment_estimate_json(est));
    j["config"] = config_line(c);
    write_text(c.out, j.dump(2) + "\n");
  }
  out << "wrote " << c.out << " (" << c.reps << " samples, kmax " << c.kmax << ")\n";
  return kExitOk;
}

int cmd_gaf(const RunConfig& c, std::ostream& out) {
  require_t(c);
  require_out(c);
  if (c.reps < 1) throw UsageError("gaf: --reps must be >= 1");
  if (c.kmax < 1) throw UsageError("gaf: --kmax (truncation) must be >= 1");
  std::vector<cplx> zs{{0.3, 0.0}, {0.0, 0.4}, {0.25, 0.25}};
  if (c.center_given) zs = {{c.center_re, c.center_im}};
  for (cplx z : zs)
    if (!(std::abs(z) < 1.0)) throw UsageError("gaf: evaluation point must satisfy |z| < 1");
  write_text(c.out, "# " + config_line(c) + "\n" + gaf_samples_csv(GafParams{c.t, c.kmax, c.seed}, zs, c.reps));
  out << "wrote " << c.out << " (" << c.reps << " draws at " << zs.size() << " points)\n";
  return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  require_t(c);
  require_out(c);
  if (c.n < 1) throw UsageError("--n must be >= 1");
  if (!(c.inflation >= 1.0)) throw UsageError("--inflation must be >= 1");
  if (!(c.r > 0.0 && c.r < 1.0)) throw UsageError("--r must lie in (0, 1)");
  const CMatrix a = sample_matrix(c);
  const Spectrum s = eigenvalues(a);
  if (!s.converged) throw std::runtime_error("eigenvalue iteration did not converge");
  write_text(c.out, "# " + config_line(c) + "\n" + export_scatter(s, c.n));
  const EllipseSpec e{c.t, c.inflation};
  out << "wrote " << c.out << "\n";
  out << "outliers outside " << fmt_double(c.inflation) << " x ellipse: " << outlier_count(s, c.n, e) << "\n";
  out << "min log|f| on disk of radius " << fmt_double(c.r) << ": " << fmt_double(min_modulus_on_disk(a, c.t, c.r, 64))
      << "\n";
  if (c.t < 1.0) {
    const HessenbergCharpoly f(a, c.t);
    const ZeroCount zc = count_zeros_in_preimage(f, e);
    out << "zeros of f inside the preimage contour: " << zc.zeros << (zc.reliable ? "" : " (contour flagged)") << "\n";
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  if (c.quick && c.full) throw UsageError("verify: choose one of --quick and --full");
  const Tier tier = c.full ? Tier::Full : Tier::Quick;
  const std::string scratch =
      c.out.empty() ? (std::filesystem::temp_directory_path() / "ege_lab_verify").string() : c.out;
  bool all = true;
  run_suite(tier, c.seed, scratch, [&](const CriterionResult& r) {
    out << format_result(r) << std::endl;
    all = all && r.passed;
  });
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Elliptic Ginibre laboratory: sampling, characteristic polynomials, trace statistics", "ege_lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&](CLI::App* sub, bool with_n, bool with_seed) {
    sub->add_option("--t", cfg.t, "interpolation parameter in [0, 1]");
    if (with_n) sub->add_option("--n", cfg.n, "matrix order");
    if (with_seed) sub->add_option("--seed", cfg.seed, "base seed (default: EGE_LAB_SEED or 0)");
    sub->add_option("--out", cfg.out, "output path");
  };

  auto* portrait = app.add_subcommand("portrait", "phase portrait of f_{n,t} as binary PPM");
  add_common(portrait, true, true);
  portrait->add_option("--res", cfg.res, "pixels per side");
  portrait->add_option("--center-re", cfg.center_re);
  portrait->add_option("--center-im", cfg.center_im);
  portrait->add_option("--half-width", cfg.half_width);
  portrait->add_option("--format", cfg.format)->check(CLI::IsMember({"ppm"}));

  auto* moments = app.add_subcommand("moments", "limit covariance table (JSON) and identity report");
  add_common(moments, false, false);
  moments->add_option("--kmax", cfg.kmax, "largest monomial degree");

  auto* traces = app.add_subcommand("traces", "Monte Carlo moments of Chebyshev trace statistics");
  add_common(traces, true, true);
  traces->add_option("--reps", cfg.reps);
  traces->add_option("--kmax", cfg.kmax);
  traces->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* gaf = app.add_subcommand("gaf", "draws of the limiting random analytic function (CSV)");
  add_common(gaf, false, true);
  gaf->add_option("--reps", cfg.reps, "number of draws");
  gaf->add_option("--kmax", cfg.kmax, "series truncation K");
  auto* cre = gaf->add_option("--center-re", cfg.center_re, "single evaluation point, real part");
  auto* cim = gaf->add_option("--center-im", cfg.center_im, "single evaluation point, imaginary part");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalue scatter (CSV) and outlier counts");
  add_common(spectrum, true, true);
  spectrum->add_option("--inflation", cfg.inflation);
  spectrum->add_option("--r", cfg.r, "disk radius for the min-modulus report");

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_flag("--quick", cfg.quick, "exact identities only (default)");
  verify->add_flag("--full", cfg.full, "all criteria including Monte Carlo");
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--out", cfg.out, "scratch directory");

  try {
    cfg.seed = default_seed();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ege_lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "ege_lab: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.center_given = cre->count() > 0 || cim->count() > 0;
    if (cfg.subcommand == "traces" && cfg.format.empty()) cfg.format = "csv";
    if (cfg.subcommand == "gaf" && gaf->get_option("--kmax")->count() == 0)
      cfg.kmax = kDefaultGafTruncation;
    if (cfg.subcommand == "portrait") return cmd_portrait(cfg, out);
    if (cfg.subcommand == "moments") return cmd_moments(cfg, out);
    if (cfg.subcommand == "traces") return cmd_traces(cfg, out);
    if (cfg.subcommand == "gaf") return cmd_gaf(cfg, out);
    if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const UsageError& e) {
    err << "ege_lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "ege_lab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "ege_lab: oracle budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "ege_lab: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace egelab
