#include "xy/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "xy/analysis.hpp"
#include "xy/finite.hpp"
#include "xy/oracle.hpp"

namespace xy {
namespace sweep {

std::vector<double> RunConfig::h_grid() const {
  std::vector<double> grid(h_steps);
  for (int i = 0; i < h_steps; ++i)
    grid[i] = h_min + (h_max - h_min) * i / (h_steps - 1);
  return grid;
}

void RunConfig::validate() const {
  for (const double r : r_values)
    if (!(r >= 0.0 && r <= 1.0))
      throw std::invalid_argument("sweep: r must be in [0, 1]");
  if (r_values.empty()) throw std::invalid_argument("sweep: no r values");
  if (!(h_min >= 0.0) || !(h_max > h_min))
    throw std::invalid_argument("sweep: need 0 <= h_min < h_max");
  if (h_steps < 3) throw std::invalid_argument("sweep: h_steps must be >= 3");
  if (threads < 1) throw std::invalid_argument("sweep: threads must be >= 1");
  if (mode != Mode::thermo) {
    if (n_values.empty())
      throw std::invalid_argument("sweep: finite/exact modes need N");
    for (const int n : n_values) {
      if (mode == Mode::finite && (n < 4 || n % 2 != 0))
        throw std::invalid_argument("sweep: finite mode needs even N >= 4");
      if (mode == Mode::exact && (n < 4 || n > 12))
        throw std::invalid_argument("sweep: exact mode needs 4 <= N <= 12");
    }
  }
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

ResultRow compute_row(Mode mode, std::optional<int> n, double r, double h,
                      BetaPConvention convention, const ThermoTolerances& tol) {
  ResultRow row;
  row.mode = mode;
  row.n_sites = n;
  row.r = r;
  row.h = h;
  switch (mode) {
    case Mode::thermo: {
      const GeometricRecord rec = thermo_record(ModelParams{r, h}, convention, tol);
      row.epsilon = rec.epsilon;
      row.xi_max = rec.xi_max;
      row.beta_g = rec.beta_g;
      row.beta_p = rec.beta_p;
      row.delta_beta = rec.delta_beta;
      row.eps_c = rec.eps_c;
      break;
    }
    case Mode::finite: {
      const FiniteGERecord rec =
          finite_record(ChainSpec{*n}, ModelParams{r, h}, convention, tol.opt_xi);
      row.epsilon = rec.epsilon_n;
      row.xi_max = rec.xi_max;
      row.beta_g = rec.beta_g_n;
      row.beta_p = rec.beta_p_n;
      row.delta_beta = rec.beta_g_n - rec.beta_p_n;
      row.eps_c = rec.complex_ge_n;
      break;
    }
    case Mode::exact: {
      const auto slice = oracle::ground_state(ChainSpec{*n}, ModelParams{r, h});
      const oracle::StateVector psi = slice.even_ground();
      const auto [lam, xi] =
          oracle::exact_entanglement_eigenvalue(psi, tol.opt_xi);
      row.epsilon = -2.0 / *n * std::log2(std::max(lam, 1e-300));
      row.xi_max = xi;
      row.beta_g = 0.5 * M_PI * (1.0 - oracle::expectation_sz(psi) / *n);
      const double s = std::sin(0.5 * xi);
      row.beta_p = beta_p_factor(convention) * s * s;
      row.delta_beta = row.beta_g - row.beta_p;
      row.eps_c = {row.epsilon, -row.delta_beta / std::log(2.0)};
      break;
    }
  }
  return row;
}

}  // namespace

std::vector<ResultRow> run_sweep(const RunConfig& config) {
  config.validate();
  const std::vector<double> h = config.h_grid();
  std::vector<int> n_list;
  if (config.mode == Mode::thermo)
    n_list.push_back(0);  // placeholder, single pass
  else
    n_list = config.n_values;

  const int per_n = static_cast<int>(config.r_values.size() * h.size());
  const int total = static_cast<int>(n_list.size()) * per_n;
  std::vector<ResultRow> rows(total);
  parallel_for(total, config.threads, [&](int idx) {
    const int in = idx / per_n;
    const int rest = idx % per_n;
    const int ir = rest / static_cast<int>(h.size());
    const int ih = rest % static_cast<int>(h.size());
    const std::optional<int> n =
        config.mode == Mode::thermo ? std::nullopt
                                    : std::optional<int>(n_list[in]);
    rows[idx] = compute_row(config.mode, n, config.r_values[ir], h[ih],
                            config.convention, config.tol);
  });

  if (config.derivative) {
    // Per (N, r) block the h grid is contiguous; differentiate in place.
    const int nh = static_cast<int>(h.size());
    for (int block = 0; block < total / nh; ++block) {
      analysis::CurveSamples eps, bg, db;
      eps.abscissae = bg.abscissae = db.abscissae = h;
      for (int i = 0; i < nh; ++i) {
        const ResultRow& row = rows[block * nh + i];
        eps.ordinates.push_back(row.epsilon);
        bg.ordinates.push_back(row.beta_g);
        db.ordinates.push_back(row.delta_beta);
      }
      const auto deps = analysis::derivative_curve(eps);
      const auto dbg = analysis::derivative_curve(bg);
      const auto ddb = analysis::derivative_curve(db);
      for (int i = 0; i < nh; ++i) {
        ResultRow& row = rows[block * nh + i];
        row.d_epsilon_dh = deps.ordinates[i];
        row.d_beta_g_dh = dbg.ordinates[i];
        row.d_delta_beta_dh = ddb.ordinates[i];
      }
    }
  }
  return rows;
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const std::vector<ResultRow>& rows,
               bool derivative) {
  os << "mode,N,r,h,epsilon,xi_max,beta_g,beta_p,delta_beta,re_eps_c,im_eps_c";
  if (derivative) os << ",d_epsilon_dh,d_beta_g_dh,d_delta_beta_dh";
  os << "\n";
  for (const ResultRow& row : rows) {
    switch (row.mode) {
      case Mode::thermo: os << "thermo"; break;
      case Mode::finite: os << "finite"; break;
      case Mode::exact: os << "exact"; break;
    }
    os << ',';
    if (row.n_sites) os << *row.n_sites;
    os << ',' << format_double(row.r) << ',' << format_double(row.h) << ','
       << format_double(row.epsilon) << ',' << format_double(row.xi_max) << ','
       << format_double(row.beta_g) << ',' << format_double(row.beta_p) << ','
       << format_double(row.delta_beta) << ','
       << format_double(row.eps_c.real()) << ','
       << format_double(row.eps_c.imag());
    if (derivative)
      os << ',' << format_double(row.d_epsilon_dh.value_or(0.0)) << ','
         << format_double(row.d_beta_g_dh.value_or(0.0)) << ','
         << format_double(row.d_delta_beta_dh.value_or(0.0));
    os << "\n";
  }
}

void write_plot_svg(std::ostream& os, const std::vector<ResultRow>& rows) {
  const int w = 640, hgt = 400, margin = 50;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << hgt << "\">\n";
  if (rows.size() >= 2) {
    double xmin = rows.front().h, xmax = rows.front().h;
    double ymin = rows.front().epsilon, ymax = rows.front().epsilon;
    for (const auto& row : rows) {
      xmin = std::min(xmin, row.h);
      xmax = std::max(xmax, row.h);
      ymin = std::min(ymin, row.epsilon);
      ymax = std::max(ymax, row.epsilon);
    }
    if (ymax == ymin) ymax = ymin + 1.0;
    if (xmax == xmin) xmax = xmin + 1.0;
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<polyline "
          "fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : rows) {
      const double px =
          margin + (row.h - xmin) / (xmax - xmin) * (w - 2 * margin);
      const double py = hgt - margin -
                        (row.epsilon - ymin) / (ymax - ymin) * (hgt - 2 * margin);
      os << format_double(px) << ',' << format_double(py) << ' ';
    }
    os << "\"/>\n<text x=\"" << w / 2 << "\" y=\"" << hgt - 10
       << "\" text-anchor=\"middle\" font-size=\"12\">h</text>\n"
       << "<text x=\"15\" y=\"" << hgt / 2
       << "\" font-size=\"12\">epsilon</text>\n";
  }
  os << "</svg>\n";
}

}  // namespace sweep
}  // namespace xy
