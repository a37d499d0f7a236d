#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsd/observables.hpp"

namespace qsd {

/// One sweep point: numeric pipeline results next to their closed forms.
/// Fields are empty when undefined (gain at nbar = 0, everything at the
/// degenerate corner, radius when no negative region exists).
struct MeritRow {
  double nbar = 0.0;
  double transmissivity = 0.0;
  bool degenerate = false;
  std::optional<double> pd_num, pd_cf;
  std::optional<double> p0_num, p0_cf;
  std::optional<double> p1_num, p1_cf;
  std::optional<double> mean_num, mean_cf;
  std::optional<double> gain_num, gain_cf;
  std::optional<double> snr_num, snr_cf;
  std::optional<double> parity_num, parity_cf;
  std::optional<double> negativity_radius;  // closed form only
  std::optional<double> max_dev;
};

/// |a - b| with two like-signed infinities counting as agreement.
double pair_deviation(double a, double b);

MeritRow make_merit_row(double nbar, double transmissivity, double tail_tol);

/// Rows ordered nbar outer (as given), transmissivity inner (as given).
std::vector<MeritRow> make_sweep(const std::vector<double>& nbars,
                                 const std::vector<double>& transmissivities,
                                 double tail_tol);

struct SweepConfig {
  std::string command;
  std::vector<double> nbar;
  std::vector<double> transmissivity;
  double tail_tol = 1e-12;
};

/// %.17g; infinities render as "inf" / "-inf".
std::string format_double(double x);

std::string render_merit_csv(const std::vector<MeritRow>& rows);
std::string render_merit_json(const SweepConfig& config,
                              const std::vector<MeritRow>& rows);

/// Phase-space scan of one operating point: numeric Wigner grid of the
/// heralded output next to its closed form.
struct WignerReport {
  double nbar = 0.0;
  double transmissivity = 0.0;
  double tail_tol = 1e-12;
  GridSpec grid;
  WignerGrid numeric;
  RealMatrix analytic;  // same layout as numeric.w
  double min_num = 0.0;
  double min_cf = 0.0;
  double min_q = 0.0;  // location of the numeric minimum
  double min_p = 0.0;
};

WignerReport make_wigner_report(double nbar, double transmissivity,
                                double tail_tol, const GridSpec& grid);

std::string render_wigner_csv(const WignerReport& report);
std::string render_wigner_json(const WignerReport& report);

}  // namespace qsd
