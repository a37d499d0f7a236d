#include "qsd/report.hpp"

#include <cmath>
#include <cstdio>

#include "qsd/closed_forms.hpp"
#include "qsd/scissors.hpp"

namespace qsd {

namespace {

std::string csv_field(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

std::string json_value(const std::optional<double>& value) {
  if (!value) return "null";
  if (std::isinf(*value)) {
    return *value > 0 ? "\"inf\"" : "\"-inf\"";
  }
  return format_double(*value);
}

std::string json_list(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  out += "]";
  return out;
}

std::optional<double> deviation(const std::optional<double>& num,
                                const std::optional<double>& cf) {
  if (!num || !cf) return std::nullopt;
  return pair_deviation(*num, *cf);
}

void append_triplet(std::string& line, const std::optional<double>& num,
                    const std::optional<double>& cf) {
  line += "," + csv_field(num) + "," + csv_field(cf) + "," +
          csv_field(deviation(num, cf));
}

void append_json_triplet(std::string& obj, const char* name,
                         const std::optional<double>& num,
                         const std::optional<double>& cf) {
  obj += std::string(",\"") + name + "_num\":" + json_value(num);
  obj += std::string(",\"") + name + "_cf\":" + json_value(cf);
  obj += std::string(",\"") + name + "_err\":" + json_value(deviation(num, cf));
}

}  // namespace

double pair_deviation(double a, double b) {
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0)) return 0.0;
  return std::abs(a - b);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

MeritRow make_merit_row(double nbar, double transmissivity, double tail_tol) {
  MeritRow row;
  row.nbar = nbar;
  row.transmissivity = transmissivity;
  if (degenerate_corner(nbar, transmissivity)) {
    row.degenerate = true;
    return row;
  }
  const QsdResult result = run_qsd(QsdParams{nbar, transmissivity, tail_tol});

  row.pd_num = result.p_d;
  row.pd_cf = cf_pd(nbar, transmissivity);
  const CfPopulations pops = cf_populations(nbar, transmissivity);
  row.p0_num = result.p0;
  row.p0_cf = pops.p0;
  row.p1_num = result.p1;
  row.p1_cf = pops.p1;
  row.mean_num = mean_photon(result.rho_out);
  row.mean_cf = cf_mean(nbar, transmissivity);
  if (nbar > 0.0) {
    // the input mean is the known parameter, not a truncated estimate
    row.gain_num = gain(result.rho_out, nbar);
    row.gain_cf = cf_gain(nbar, transmissivity);
  }
  row.snr_num = snr(result.rho_out);
  row.snr_cf = cf_snr(nbar, transmissivity);
  row.parity_num = parity(result.rho_out);
  row.parity_cf = cf_parity(nbar, transmissivity);
  if (const auto radius = negativity_region_radius(nbar, transmissivity)) {
    row.negativity_radius = *radius;
  }

  double worst = 0.0;
  const auto track = [&worst](const std::optional<double>& num,
                              const std::optional<double>& cf) {
    if (const auto dev = deviation(num, cf)) worst = std::max(worst, *dev);
  };
  track(row.pd_num, row.pd_cf);
  track(row.p0_num, row.p0_cf);
  track(row.p1_num, row.p1_cf);
  track(row.mean_num, row.mean_cf);
  track(row.gain_num, row.gain_cf);
  track(row.snr_num, row.snr_cf);
  track(row.parity_num, row.parity_cf);
  row.max_dev = worst;
  return row;
}

std::vector<MeritRow> make_sweep(const std::vector<double>& nbars,
                                 const std::vector<double>& transmissivities,
                                 double tail_tol) {
  std::vector<MeritRow> rows;
  rows.reserve(nbars.size() * transmissivities.size());
  for (double nbar : nbars) {
    for (double t : transmissivities) {
      rows.push_back(make_merit_row(nbar, t, tail_tol));
    }
  }
  return rows;
}

std::string render_merit_csv(const std::vector<MeritRow>& rows) {
  std::string out =
      "nbar,T,pd_num,pd_cf,pd_err,p0_num,p0_cf,p0_err,"
      "p1_num,p1_cf,p1_err,mean_num,mean_cf,mean_err,gain_num,gain_cf,"
      "gain_err,snr_num,snr_cf,snr_err,parity_num,parity_cf,parity_err,"
      "negativity_radius,max_dev,degenerate\n";
  for (const MeritRow& row : rows) {
    std::string line =
        format_double(row.nbar) + "," + format_double(row.transmissivity);
    append_triplet(line, row.pd_num, row.pd_cf);
    append_triplet(line, row.p0_num, row.p0_cf);
    append_triplet(line, row.p1_num, row.p1_cf);
    append_triplet(line, row.mean_num, row.mean_cf);
    append_triplet(line, row.gain_num, row.gain_cf);
    append_triplet(line, row.snr_num, row.snr_cf);
    append_triplet(line, row.parity_num, row.parity_cf);
    line += "," + csv_field(row.negativity_radius);
    line += "," + csv_field(row.max_dev);
    line += row.degenerate ? ",1" : ",0";
    out += line + "\n";
  }
  return out;
}

std::string render_merit_json(const SweepConfig& config,
                              const std::vector<MeritRow>& rows) {
  std::string out = "{\"config\":{\"command\":\"" + config.command +
                    "\",\"nbar\":" + json_list(config.nbar) +
                    ",\"T\":" + json_list(config.transmissivity) +
                    ",\"tail_tol\":" + format_double(config.tail_tol) +
                    "},\"rows\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MeritRow& row = rows[i];
    if (i) out += ",";
    std::string obj = "{\"nbar\":" + format_double(row.nbar) +
                      ",\"T\":" + format_double(row.transmissivity);
    append_json_triplet(obj, "pd", row.pd_num, row.pd_cf);
    append_json_triplet(obj, "p0", row.p0_num, row.p0_cf);
    append_json_triplet(obj, "p1", row.p1_num, row.p1_cf);
    append_json_triplet(obj, "mean", row.mean_num, row.mean_cf);
    append_json_triplet(obj, "gain", row.gain_num, row.gain_cf);
    append_json_triplet(obj, "snr", row.snr_num, row.snr_cf);
    append_json_triplet(obj, "parity", row.parity_num, row.parity_cf);
    obj += ",\"negativity_radius\":" + json_value(row.negativity_radius);
    obj += ",\"max_dev\":" + json_value(row.max_dev);
    obj += std::string(",\"degenerate\":") +
           (row.degenerate ? "true" : "false") + "}";
    out += obj;
  }
  out += "]}\n";
  return out;
}

WignerReport make_wigner_report(double nbar, double transmissivity,
                                double tail_tol, const GridSpec& grid) {
  grid.validate();
  if (degenerate_corner(nbar, transmissivity)) {
    throw DegenerateParameterError(
        "vacuum input at unit transmissivity never triggers the herald");
  }
  WignerReport report;
  report.nbar = nbar;
  report.transmissivity = transmissivity;
  report.tail_tol = tail_tol;
  report.grid = grid;

  const QsdResult result = run_qsd(QsdParams{nbar, transmissivity, tail_tol});
  report.numeric = wigner(result.rho_out, grid);
  report.analytic.resize(grid.nq, grid.np);
  for (int iq = 0; iq < grid.nq; ++iq) {
    for (int ip = 0; ip < grid.np; ++ip) {
      report.analytic(iq, ip) = cf_wigner_out(
          nbar, transmissivity,
          beta_from_qp(report.numeric.q(iq), report.numeric.p(ip)));
    }
  }
  const auto [iq, ip] = report.numeric.min_index();
  report.min_num = report.numeric.w(iq, ip);
  report.min_cf = report.analytic.minCoeff();
  report.min_q = report.numeric.q(iq);
  report.min_p = report.numeric.p(ip);
  return report;
}

std::string render_wigner_csv(const WignerReport& report) {
  std::string out = "q,p,w_num,w_cf\n";
  for (int iq = 0; iq < report.grid.nq; ++iq) {
    for (int ip = 0; ip < report.grid.np; ++ip) {
      out += format_double(report.numeric.q(iq)) + "," +
             format_double(report.numeric.p(ip)) + "," +
             format_double(report.numeric.w(iq, ip)) + "," +
             format_double(report.analytic(iq, ip)) + "\n";
    }
  }
  return out;
}

std::string render_wigner_json(const WignerReport& report) {
  std::string out =
      "{\"config\":{\"command\":\"wigner\",\"nbar\":" +
      format_double(report.nbar) +
      ",\"T\":" + format_double(report.transmissivity) +
      ",\"tail_tol\":" + format_double(report.tail_tol) + ",\"grid\":{" +
      "\"q_min\":" + format_double(report.grid.q_min) +
      ",\"q_max\":" + format_double(report.grid.q_max) +
      ",\"nq\":" + std::to_string(report.grid.nq) +
      ",\"p_min\":" + format_double(report.grid.p_min) +
      ",\"p_max\":" + format_double(report.grid.p_max) +
      ",\"np\":" + std::to_string(report.grid.np) + "}},\"rows\":[";
  bool first = true;
  for (int iq = 0; iq < report.grid.nq; ++iq) {
    for (int ip = 0; ip < report.grid.np; ++ip) {
      if (!first) out += ",";
      first = false;
      out += "[" + format_double(report.numeric.q(iq)) + "," +
             format_double(report.numeric.p(ip)) + "," +
             format_double(report.numeric.w(iq, ip)) + "," +
             format_double(report.analytic(iq, ip)) + "]";
    }
  }
  out += "],\"min\":{\"q\":" + format_double(report.min_q) +
         ",\"p\":" + format_double(report.min_p) +
         ",\"w_num\":" + format_double(report.min_num) +
         ",\"w_cf\":" + format_double(report.min_cf) + "}}\n";
  return out;
}

}  // namespace qsd
