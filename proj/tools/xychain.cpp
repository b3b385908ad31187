// xychain - transverse-field XY chain geometric entanglement / geometric
// phase toolkit: parameter sweeps, oracle verification, QGT, interference
// fringes, finite-size scaling.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "xy/analysis.hpp"
#include "xy/errors.hpp"
#include "xy/finite.hpp"
#include "xy/oracle.hpp"
#include "xy/sweep.hpp"
#include "xy/thermo.hpp"

namespace {

using xy::BetaPConvention;
using xy::ChainSpec;
using xy::ModelParams;
using xy::sweep::format_double;

constexpr int kExitInvalidInput = 1;
constexpr int kExitNonConvergence = 2;
constexpr int kExitVerifyFailure = 3;

struct CommonOpts {
  double r = 1.0;
  std::vector<double> r_list;
  double h = 1.5;
  double h_min = 0.2;
  double h_max = 2.0;
  int h_steps = 37;
  int n_sites = 8;
  std::vector<int> n_list;
  std::string mode = "thermo";
  bool derivative = false;
  std::string out;
  std::string plot;
  int threads = 1;
  double tol_quad = 1e-10;
  double tol_opt = 1e-10;
  std::string loop_extent = "pi";
  int loop_steps = 1024;
  std::string convention = "probe";
  double verify_tol_scale = 1.0;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->set_help_flag("--help", "print help");  // frees -h / --h for the field
  cmd->configurable();  // reachable from the app-level --config file
  cmd->add_option("--r", o.r, "anisotropy r in [0,1]");
  cmd->add_option("--r-list", o.r_list, "list of r values (overrides --r)");
  cmd->add_option("--h", o.h, "single field value (qgt, fringes)");
  cmd->add_option("--h-min", o.h_min, "lower end of the h grid");
  cmd->add_option("--h-max", o.h_max, "upper end of the h grid");
  cmd->add_option("--h-steps", o.h_steps, "number of h grid points (>= 3)");
  cmd->add_option("--N", o.n_sites, "chain length");
  cmd->add_option("--N-list", o.n_list, "list of chain lengths");
  cmd->add_option("--mode", o.mode, "thermo|finite|exact")
      ->check(CLI::IsMember({"thermo", "finite", "exact"}));
  cmd->add_flag("--derivative", o.derivative, "append d/dh columns");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--plot", o.plot, "write an SVG line chart here");
  cmd->add_option("--threads", o.threads, "worker pool size");
  cmd->add_option("--tol-quad", o.tol_quad, "quadrature absolute tolerance");
  cmd->add_option("--tol-opt", o.tol_opt, "xi optimization tolerance");
  cmd->add_option("--loop-extent", o.loop_extent, "pi|2pi")
      ->check(CLI::IsMember({"pi", "2pi"}));
  cmd->add_option("--loop-steps", o.loop_steps, "Pancharatnam steps K >= 64");
  cmd->add_option("--beta-p-convention", o.convention,
                  "probe|full|half (beta^p closed form selection)")
      ->check(CLI::IsMember({"probe", "full", "half"}));
}

BetaPConvention resolve_convention(const CommonOpts& o, std::ostream* report) {
  if (o.convention == "full") return BetaPConvention::full_loop;
  if (o.convention == "half") return BetaPConvention::half_loop;
  const auto probe =
      xy::analysis::convention_probe(ChainSpec{6}, {0.3, 0.5, 0.7});
  if (report)
    *report << "# convention_probe: selected="
            << (probe.selected == BetaPConvention::half_loop ? "half" : "full")
            << " residual_half=" << format_double(probe.residual_half)
            << " residual_full=" << format_double(probe.residual_full)
            << " discriminated=" << (probe.discriminated ? 1 : 0) << "\n";
  return probe.selected;
}

xy::oracle::LoopSpec make_loop(const CommonOpts& o) {
  xy::oracle::LoopSpec loop;
  loop.phi_extent = o.loop_extent == "2pi" ? 2.0 * M_PI : M_PI;
  loop.steps = o.loop_steps;
  return loop;
}

std::ostream& open_out(const CommonOpts& o, std::ofstream& file) {
  if (o.out.empty()) return std::cout;
  file.open(o.out, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file " + o.out);
  return file;
}

int cmd_sweep(const CommonOpts& o) {
  xy::sweep::RunConfig cfg;
  cfg.r_values = o.r_list.empty() ? std::vector<double>{o.r} : o.r_list;
  cfg.h_min = o.h_min;
  cfg.h_max = o.h_max;
  cfg.h_steps = o.h_steps;
  cfg.derivative = o.derivative;
  cfg.threads = o.threads;
  cfg.tol = {o.tol_quad, o.tol_opt};
  if (o.mode == "finite") cfg.mode = xy::sweep::Mode::finite;
  if (o.mode == "exact") cfg.mode = xy::sweep::Mode::exact;
  if (cfg.mode != xy::sweep::Mode::thermo)
    cfg.n_values = o.n_list.empty() ? std::vector<int>{o.n_sites} : o.n_list;
  cfg.convention = resolve_convention(o, nullptr);
  const auto rows = xy::sweep::run_sweep(cfg);
  std::ofstream file;
  xy::sweep::write_csv(open_out(o, file), rows, cfg.derivative);
  if (!o.plot.empty()) {
    std::ofstream pf(o.plot, std::ios::binary);
    if (!pf) throw std::invalid_argument("cannot open plot file " + o.plot);
    xy::sweep::write_plot_svg(pf, rows);
  }
  return 0;
}

struct VerifyReport {
  int failures = 0;
  std::ostream& os;
  double scale;

  void check(const std::string& name, double residual, double bound) {
    const double tol = bound * scale;
    const bool ok = residual <= tol;
    if (!ok) ++failures;
    os << (ok ? "PASS" : "FAIL") << ' ' << name
       << " residual=" << format_double(residual)
       << " tol=" << format_double(tol) << "\n";
  }
};

int cmd_verify(const CommonOpts& o) {
  std::ofstream file;
  std::ostream& os = open_out(o, file);
  const int n = o.n_sites;
  if (n > 10 || n % 2 != 0)
    throw std::invalid_argument("verify: even N <= 10 required");
  VerifyReport rep{0, os, o.verify_tol_scale};

  const auto probe =
      xy::analysis::convention_probe(ChainSpec{6}, {0.3, 0.5, 0.7});
  os << "# convention_probe: selected="
     << (probe.selected == BetaPConvention::half_loop ? "half" : "full")
     << " residual_half=" << format_double(probe.residual_half)
     << " residual_full=" << format_double(probe.residual_full)
     << " discriminated=" << (probe.discriminated ? 1 : 0) << "\n";
  rep.check("convention_probe_discriminates", probe.discriminated ? 0.0 : 1.0,
            0.5);

  const std::vector<double> rs = {0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> hs = {0.2, 0.6, 1.0, 1.4, 1.8};
  const xy::oracle::LoopSpec loop = make_loop(o);
  double worst_overlap = 0.0, worst_phase = 0.0;
  for (const double r : rs) {
    for (const double h : hs) {
      const ModelParams p{r, h};
      const ChainSpec chain{n};
      const auto slice = xy::oracle::ground_state(chain, p);
      const auto psi = slice.even_ground();
      const auto [lam, xi_max] =
          xy::oracle::exact_entanglement_eigenvalue(psi, o.tol_opt);
      for (const double xi : {0.0, 0.3, xi_max}) {
        const double formula = xy::lambda_finite(chain, xi, p);
        const double exact = std::abs(xy::oracle::overlap_with_product(psi, xi));
        worst_overlap = std::max(worst_overlap, std::abs(formula - exact));
      }
      const double beta_g_n = xy::gp_per_site_finite(chain, p);
      const double oracle_phase = xy::oracle::pancharatnam_phase(
          psi, {M_PI, loop.steps, xy::oracle::LoopSpec::Transport::parallel});
      worst_phase = std::max(
          worst_phase, std::abs(std::polar(1.0, n * beta_g_n) -
                                std::polar(1.0, oracle_phase)));
    }
  }
  rep.check("lambda_finite_vs_oracle_overlap", worst_overlap, 1e-8);
  rep.check("gp_per_site_vs_oracle_pancharatnam", worst_phase, 1e-5);

  // Interferometer round trip at a gapped point.
  {
    const ModelParams p{1.0, 1.2};
    const auto slice = xy::oracle::ground_state(ChainSpec{n}, p);
    const auto [lam, xi_max] =
        xy::oracle::exact_entanglement_eigenvalue(slice.even_ground());
    const auto amp = xy::oracle::interference_amplitude(ChainSpec{n}, p,
                                                        xi_max, make_loop(o));
    std::vector<double> grid(64);
    for (int i = 0; i < 64; ++i) grid[i] = 2.0 * M_PI * i / 64;
    const auto fringe =
        xy::oracle::fringe_readout(amp.amplitude, amp.overlap_sq, grid);
    rep.check("fringe_visibility_roundtrip",
              std::abs(fringe.extracted_visibility - lam * lam), 1e-6);
    rep.check("fringe_phase_roundtrip",
              std::abs(std::polar(1.0, fringe.extracted_phase) -
                       std::polar(1.0, std::arg(amp.amplitude))),
              1e-6);
  }

  // QGT method coherence.
  {
    const ChainSpec chain{std::min(n, 8)};
    const ModelParams p{0.5, 1.5};
    const auto sum = xy::oracle::qgt(chain, p, xy::oracle::QGTMethod::sum_over_states);
    const auto proj = xy::oracle::qgt(
        chain, p, xy::oracle::QGTMethod::projector_derivative, 1e-4);
    rep.check("qgt_method_agreement",
              (sum.t - proj.t).cwiseAbs().maxCoeff(), 1e-6);
    const double curv = xy::oracle::berry_curvature_plaquette(chain, p, 1e-3);
    rep.check("berry_plaquette_vs_qgt",
              std::abs(curv - sum.curvature_part()(0, 1)), 1e-4);
  }

  os << (rep.failures == 0 ? "VERIFY PASS" : "VERIFY FAIL") << " failures="
     << rep.failures << "\n";
  return rep.failures == 0 ? 0 : kExitVerifyFailure;
}

int cmd_qgt(const CommonOpts& o) {
  std::ofstream file;
  std::ostream& os = open_out(o, file);
  const ChainSpec chain{o.n_sites};
  const ModelParams p{o.r, o.h};
  const auto sum = xy::oracle::qgt(chain, p, xy::oracle::QGTMethod::sum_over_states);
  const auto proj =
      xy::oracle::qgt(chain, p, xy::oracle::QGTMethod::projector_derivative);
  os << "method,T_rr_re,T_rr_im,T_rh_re,T_rh_im,T_hh_re,T_hh_im\n";
  const auto print_row = [&](const char* name, const Eigen::Matrix2cd& t) {
    os << name;
    for (const auto& v : {t(0, 0), t(0, 1), t(1, 1)})
      os << ',' << format_double(v.real()) << ',' << format_double(v.imag());
    os << "\n";
  };
  print_row("sum_over_states", sum.t);
  print_row("projector_derivative", proj.t);
  os << "# max_entry_deviation=" << format_double((sum.t - proj.t).cwiseAbs().maxCoeff())
     << "\n# berry_plaquette="
     << format_double(xy::oracle::berry_curvature_plaquette(chain, p, 1e-3))
     << " curvature_part_rh=" << format_double(sum.curvature_part()(0, 1))
     << "\n";
  return 0;
}

int cmd_fringes(const CommonOpts& o) {
  std::ofstream file;
  std::ostream& os = open_out(o, file);
  const ChainSpec chain{o.n_sites};
  const ModelParams p{o.r, o.h};
  const auto slice = xy::oracle::ground_state(chain, p);
  const auto [lam, xi_max] =
      xy::oracle::exact_entanglement_eigenvalue(slice.even_ground(), o.tol_opt);
  const auto amp =
      xy::oracle::interference_amplitude(chain, p, xi_max, make_loop(o));
  std::vector<double> grid(64);
  for (int i = 0; i < 64; ++i) grid[i] = 2.0 * M_PI * i / 64;
  const auto fringe =
      xy::oracle::fringe_readout(amp.amplitude, amp.overlap_sq, grid);
  os << "f,I0\n";
  for (const auto& [f, i0] : fringe.samples)
    os << format_double(f) << ',' << format_double(i0) << "\n";
  os << "# xi_max=" << format_double(xi_max)
     << " visibility=" << format_double(fringe.extracted_visibility)
     << " phase=" << format_double(fringe.extracted_phase)
     << " abs_A=" << format_double(std::abs(amp.amplitude))
     << " arg_A=" << format_double(std::arg(amp.amplitude)) << "\n";
  return 0;
}

int cmd_scaling(const CommonOpts& o) {
  std::ofstream file;
  std::ostream& os = open_out(o, file);
  const std::vector<int> ns =
      o.n_list.empty() ? std::vector<int>{16, 32, 64, 128} : o.n_list;
  xy::ThermoTolerances tol{o.tol_quad, o.tol_opt};
  const auto scan =
      xy::analysis::finite_size_scan(o.r, ns, xy::sweep::RunConfig{{o.r},
                                     o.h_min, o.h_max, o.h_steps}.h_grid(), tol);
  os << "N,h_peak,peak_value\n";
  for (const auto& row : scan.rows)
    os << row.n_sites << ',' << format_double(row.h_peak) << ','
       << format_double(row.peak_value) << "\n";
  os << "# slope_vs_lnN=" << format_double(scan.slope_vs_log_n)
     << " intercept=" << format_double(scan.intercept) << "\n";
  return 0;
}

int cmd_critical(const CommonOpts& o) {
  std::ofstream file;
  std::ostream& os = open_out(o, file);
  xy::analysis::CurveMode mode = xy::analysis::CurveMode::thermo;
  if (o.mode == "finite") mode = xy::analysis::CurveMode::finite;
  if (o.mode == "exact") mode = xy::analysis::CurveMode::exact;
  xy::ThermoTolerances tol{o.tol_quad, o.tol_opt};
  const auto scan = xy::analysis::detect_critical_features(
      o.r, mode, o.n_sites,
      xy::sweep::RunConfig{{o.r}, o.h_min, o.h_max, o.h_steps}.h_grid(), tol);
  os << "r,h_peak,peak_value,h_s_estimate,cusp_flag\n";
  os << format_double(o.r) << ',';
  os << (scan.report.h_peak ? format_double(*scan.report.h_peak) : "") << ',';
  os << (scan.report.peak_value ? format_double(*scan.report.peak_value) : "")
     << ',';
  os << (scan.report.h_s_estimate ? format_double(*scan.report.h_s_estimate)
                                  : "")
     << ',';
  os << (scan.report.cusp_flag ? 1 : 0) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric entanglement and geometric phase of the "
               "transverse-field XY chain"};
  app.set_help_flag("--help", "print help");
  app.set_config("--config", "",
                 "INI file; keys live in a [subcommand] section")
      ->check(CLI::ExistingFile);
  app.require_subcommand(1);
  CommonOpts o;

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  CLI::App* verify =
      app.add_subcommand("verify", "oracle-equivalence verification report");
  CLI::App* qgt = app.add_subcommand("qgt", "quantum geometric tensor at one point");
  CLI::App* fringes =
      app.add_subcommand("fringes", "interference fringe samples and fit");
  CLI::App* scaling = app.add_subcommand("scaling", "finite-size peak scan");
  CLI::App* critical =
      app.add_subcommand("critical", "critical feature detection for one r");
  for (CLI::App* cmd : {sweep, verify, qgt, fringes, scaling, critical})
    add_common_flags(cmd, o);
  verify->add_option("--verify-tol-scale", o.verify_tol_scale,
                     "scale factor applied to all residual bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(o);
    if (verify->parsed()) return cmd_verify(o);
    if (qgt->parsed()) return cmd_qgt(o);
    if (fringes->parsed()) return cmd_fringes(o);
    if (scaling->parsed()) return cmd_scaling(o);
    if (critical->parsed()) return cmd_critical(o);
  } catch (const xy::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
  return kExitInvalidInput;
}
