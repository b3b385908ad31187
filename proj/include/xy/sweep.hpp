#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "xy/thermo.hpp"

namespace xy {
namespace sweep {

enum class Mode { thermo, finite, exact };

struct RunConfig {
  std::vector<double> r_values = {1.0};
  double h_min = 0.2;
  double h_max = 2.0;
  int h_steps = 37;  // number of grid points, >= 3
  Mode mode = Mode::thermo;
  std::vector<int> n_values;  // required for finite/exact modes
  bool derivative = false;
  int threads = 1;
  ThermoTolerances tol;
  BetaPConvention convention = BetaPConvention::half_loop;

  std::vector<double> h_grid() const;
  void validate() const;
};

struct ResultRow {
  Mode mode;
  std::optional<int> n_sites;  // absent for thermo
  double r = 0.0;
  double h = 0.0;
  double epsilon = 0.0;
  double xi_max = 0.0;
  double beta_g = 0.0;
  double beta_p = 0.0;
  double delta_beta = 0.0;
  std::complex<double> eps_c;
  // appended when RunConfig::derivative is set
  std::optional<double> d_epsilon_dh;
  std::optional<double> d_beta_g_dh;
  std::optional<double> d_delta_beta_dh;
};

// Deterministic row order: mode as configured, N-major, then r, then h.
std::vector<ResultRow> run_sweep(const RunConfig& config);

// Fixed formatting: 12 significant digits, '.' separator, '\n' endings.
void write_csv(std::ostream& os, const std::vector<ResultRow>& rows,
               bool derivative);

// Minimal self-contained SVG line chart of epsilon (and d eps/dh when
// present) against h; cosmetic output only.
void write_plot_svg(std::ostream& os, const std::vector<ResultRow>& rows);

// Dispatches fn(0..n-1) over a bounded worker pool; results must be written
// by index so output is identical at any thread count.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

std::string format_double(double v);

}  // namespace sweep
}  // namespace xy
