#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xy/model.hpp"
#include "xy/thermo.hpp"

namespace xy {
namespace analysis {

enum class CurveMode { thermo, finite, exact };

struct CurveSamples {
  std::vector<double> abscissae;  // strictly ascending
  std::vector<double> ordinates;
  std::string quantity;
};

// Central differences on the interior, second-order one-sided at the ends.
CurveSamples derivative_curve(const CurveSamples& samples);

struct CriticalReport {
  std::optional<double> h_peak;        // argmax |d eps / dh|
  std::optional<double> peak_value;    // |d eps / dh| at the peak
  std::optional<double> h_s_estimate;  // smallest h with xi_max vanished
  bool cusp_flag = false;
};

// eps(h) and xi_max(h) curves plus the derived critical features for one r.
// n_sites is ignored in thermo mode.
struct FeatureScan {
  CurveSamples epsilon;
  CurveSamples xi_max;
  CriticalReport report;
};

FeatureScan detect_critical_features(double r, CurveMode mode, int n_sites,
                                     const std::vector<double>& h_grid,
                                     const ThermoTolerances& tol = {});

struct ScanRow {
  int n_sites;
  double h_peak;
  double peak_value;
};

struct FiniteSizeScan {
  std::vector<ScanRow> rows;
  double slope_vs_log_n = 0.0;  // least-squares slope of peak_value vs ln N
  double intercept = 0.0;
};

FiniteSizeScan finite_size_scan(double r, const std::vector<int>& n_list,
                                const std::vector<double>& h_grid,
                                const ThermoTolerances& tol = {});

struct XXProbeRow {
  double r;
  double max_abs_slope;  // max |d delta_beta / dh| over the grid
  double h_at_max;
};

// Probes the XX-limit non-commutation: for each r the maximal field
// derivative of the GP density difference near h = 1; r = 0 rows use the
// identity delta_beta(0, h) = 0 under the selected convention.
std::vector<XXProbeRow> xx_singularity_probe(
    const std::vector<double>& r_sequence, const std::vector<double>& h_grid,
    BetaPConvention convention, const ThermoTolerances& tol = {});

struct FubiniStudy {
  double distance;            // arccos(lambda)
  double quadratic_estimate;  // 1 - distance^2 / 2
};

FubiniStudy fubini_study_check(double lambda_max);

struct ConventionProbeResult {
  BetaPConvention selected = BetaPConvention::half_loop;
  bool discriminated = false;
  double residual_half = 0.0;  // max over grid, per-site phase difference
  double residual_full = 0.0;
};

// Determines which beta^p convention zeroes delta_beta on the XX line by
// comparing oracle geometric phases of the ground state and of single-spin
// product states at both loop extents.  Throws if neither convention
// satisfies the identity.
ConventionProbeResult convention_probe(const ChainSpec& chain,
                                       const std::vector<double>& h_grid);

}  // namespace analysis
}  // namespace xy
