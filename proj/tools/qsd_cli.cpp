#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsd/closed_forms.hpp"
#include "qsd/report.hpp"
#include "qsd/validation.hpp"

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw qsd::ParameterError("cannot parse number '" + text + "'");
  }
  if (used != text.size()) {
    throw qsd::ParameterError("cannot parse number '" + text + "'");
  }
  return value;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) {
    values.push_back(parse_double(part));
  }
  return values;
}

// "min:max:step" with inclusive endpoints, or a plain comma list.
std::vector<double> parse_t_values(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  const auto parts = split(text, ':');
  if (parts.size() != 3) {
    throw qsd::ParameterError("range must look like min:max:step");
  }
  const double lo = parse_double(parts[0]);
  const double hi = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (!(step > 0.0) || hi < lo) {
    throw qsd::ParameterError("range needs min <= max and step > 0");
  }
  const long count = static_cast<long>((hi - lo) / step + 1e-9);
  std::vector<double> values;
  for (long i = 0; i <= count; ++i) {
    double v = lo + static_cast<double>(i) * step;
    if (std::abs(v - hi) < 1e-9) v = hi;
    values.push_back(v);
  }
  return values;
}

qsd::GridSpec parse_grid(const std::string& text) {
  const auto axes = split(text, ',');
  if (axes.size() != 2) {
    throw qsd::ParameterError("grid must look like qmin:qmax:nq,pmin:pmax:np");
  }
  double mins[2];
  double maxs[2];
  int counts[2];
  for (int i = 0; i < 2; ++i) {
    const auto parts = split(axes[i], ':');
    if (parts.size() != 3) {
      throw qsd::ParameterError(
          "grid must look like qmin:qmax:nq,pmin:pmax:np");
    }
    mins[i] = parse_double(parts[0]);
    maxs[i] = parse_double(parts[1]);
    const double n = parse_double(parts[2]);
    counts[i] = static_cast<int>(n);
    if (counts[i] != n) {
      throw qsd::ParameterError("grid point counts must be integers");
    }
  }
  qsd::GridSpec grid{mins[0], maxs[0], counts[0], mins[1], maxs[1], counts[1]};
  grid.validate();
  return grid;
}

void check_values(const std::vector<double>& nbars,
                  const std::vector<double>& ts) {
  if (nbars.empty()) throw qsd::ParameterError("--nbar is required");
  if (ts.empty()) throw qsd::ParameterError("--T is required");
  for (double nbar : nbars) {
    if (!std::isfinite(nbar) || nbar < 0.0) {
      throw qsd::ParameterError(
          "mean photon number must be finite and nonnegative");
    }
  }
  for (double t : ts) {
    if (!std::isfinite(t) || t < 0.0 || t > 1.0) {
      throw qsd::ParameterError("transmissivity must lie in [0, 1]");
    }
  }
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(payload.data(), 1, payload.size(), stdout);
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw qsd::ParameterError("cannot open output file '" + out_path + "'");
  }
  file.write(payload.data(),
             static_cast<std::streamsize>(payload.size()));
  if (!file) {
    throw qsd::ParameterError("cannot write output file '" + out_path + "'");
  }
}

int run_validate(double tail_tol) {
  const std::vector<qsd::CheckResult> results = qsd::run_validation(tail_tol);
  int failures = 0;
  for (const qsd::CheckResult& check : results) {
    std::printf("%s %s (measured %.3g, bound %.3g)\n",
                check.pass ? "PASS" : "FAIL", check.name.c_str(),
                check.deviation, check.bound);
    if (!check.pass) ++failures;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Heralded thermal-state truncation: truncated Fock-space pipeline "
      "against closed forms"};
  app.require_subcommand(1);

  std::string nbar_text;
  std::string t_text;
  std::string grid_text = "-3:3:121,-3:3:121";
  std::string format = "csv";
  std::string out_path;
  double tail_tol = 1e-12;
  bool seedless = false;

  app.add_option("--nbar", nbar_text,
                 "input mean photon numbers, comma separated");
  app.add_option("--T", t_text,
                 "transmissivities, comma list or min:max:step");
  app.add_option("--tail-tol", tail_tol, "thermal cutoff tail tolerance")
      ->capture_default_str();
  app.add_option("--grid", grid_text,
                 "phase-space grid qmin:qmax:nq,pmin:pmax:np")
      ->capture_default_str();
  app.add_option("--format", format, "output format: csv or json")
      ->capture_default_str();
  app.add_option("--out", out_path, "write data to this file, not stdout");
  app.add_flag("--seedless", seedless,
               "no-op: there is no randomness; runs are always deterministic");

  CLI::App* cmd_simulate = app.add_subcommand(
      "simulate", "one operating point, numeric against closed form");
  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "grid of operating points");
  CLI::App* cmd_wigner = app.add_subcommand(
      "wigner", "phase-space scan of one heralded output");
  CLI::App* cmd_validate = app.add_subcommand(
      "validate", "structural and oracle self-checks; fails with exit 2");
  for (CLI::App* sub : {cmd_simulate, cmd_sweep, cmd_wigner, cmd_validate}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (format != "csv" && format != "json") {
      throw qsd::ParameterError("format must be csv or json");
    }

    if (cmd_validate->parsed()) {
      return run_validate(tail_tol);
    }

    const std::vector<double> nbars =
        nbar_text.empty() ? std::vector<double>{} : parse_list(nbar_text);
    const std::vector<double> ts =
        t_text.empty() ? std::vector<double>{} : parse_t_values(t_text);
    check_values(nbars, ts);

    if (cmd_simulate->parsed() || cmd_wigner->parsed()) {
      if (nbars.size() != 1 || ts.size() != 1) {
        throw qsd::ParameterError(
            "this command takes exactly one --nbar and one --T value");
      }
    }

    if (cmd_simulate->parsed() || cmd_sweep->parsed()) {
      const bool single = cmd_simulate->parsed();
      if (single && qsd::degenerate_corner(nbars[0], ts[0])) {
        throw qsd::DegenerateParameterError(
            "vacuum input at unit transmissivity never triggers the herald");
      }
      const std::vector<qsd::MeritRow> rows =
          qsd::make_sweep(nbars, ts, tail_tol);
      const qsd::SweepConfig config{single ? "simulate" : "sweep", nbars, ts,
                                    tail_tol};
      emit(format == "csv" ? qsd::render_merit_csv(rows)
                           : qsd::render_merit_json(config, rows),
           out_path);
      return 0;
    }

    // wigner
    const qsd::GridSpec grid = parse_grid(grid_text);
    const qsd::WignerReport report =
        qsd::make_wigner_report(nbars[0], ts[0], tail_tol, grid);
    emit(format == "csv" ? qsd::render_wigner_csv(report)
                         : qsd::render_wigner_json(report),
         out_path);
    std::fprintf(stderr,
                 "min W_num = %s at (q, p) = (%s, %s); min W_cf = %s\n",
                 qsd::format_double(report.min_num).c_str(),
                 qsd::format_double(report.min_q).c_str(),
                 qsd::format_double(report.min_p).c_str(),
                 qsd::format_double(report.min_cf).c_str());
    return 0;
  } catch (const qsd::DegenerateParameterError& e) {
    std::fprintf(stderr, "degenerate parameters: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
