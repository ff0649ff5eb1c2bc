// Command-line front end for the quantum-vacuum ellipsometry library.
// Talks to the core exclusively through the C API in qve/qve.h.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qve/qve.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitCheckFailed = 3;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& message) {
  throw CliError{code, message};
}

[[noreturn]] void fail_api(qve_status st, const std::string& context) {
  int code = (st == QVE_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitNumerical;
  fail(code, context + ": " + qve_last_error());
}

void check_api(qve_status st, const std::string& context) {
  if (st != QVE_OK) fail_api(st, context);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;

  std::vector<double> build() const {
    if (points < 1 || hi < lo) fail(kExitUsage, "invalid grid spec");
    std::vector<double> out;
    out.reserve(points);
    if (points == 1) {
      out.push_back(lo);
      return out;
    }
    if (!(hi > lo)) fail(kExitUsage, "invalid grid spec");
    for (int i = 0; i < points; ++i)
      out.push_back(lo + (hi - lo) * i / static_cast<double>(points - 1));
    return out;
  }
};

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  char extra = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &g.lo, &g.hi, &g.points,
                  &extra) != 3)
    fail(kExitUsage, "grid spec must be min:max:points, got '" + spec + "'");
  return g;
}

struct Options {
  std::string model_kind = "lorentz";
  double eps_r = 1.0;
  double omega_x = 1.0;
  double g = 0.5;
  std::string oscillators;  // "w:g,w:g" for multilorentz

  std::string units = "reduced";
  double hbar = 0.0, eps0 = 0.0, c = 0.0;  // 0 means "use units default"

  double surface = 1.0, length = 1.0, conversion = 1.0;

  std::string filter_kind = "gaussian";
  double t_p = 1.0;
  double omega_c = 1.0;

  std::string omega_grid = "0.01:5:1000";
  std::string tau_grid = "0:10:512";
  std::string k_grid = "0.01:3:300";
  double omega_max = 0.0;  // 0: derive from the filter cutoff

  std::string format = "csv";
  std::string output = "-";
  std::uint64_t seed = 0;
};

struct ModelHandle {
  qve_model* ptr = nullptr;
  ~ModelHandle() { qve_model_free(ptr); }
};

struct FilterHandle {
  qve_filter* ptr = nullptr;
  ~FilterHandle() { qve_filter_free(ptr); }
};

std::vector<std::pair<double, double>> parse_oscillators(
    const std::string& spec) {
  std::vector<std::pair<double, double>> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double w = 0.0, g = 0.0;
    char extra = 0;
    if (std::sscanf(item.c_str(), "%lf:%lf%c", &w, &g, &extra) != 2)
      fail(kExitUsage, "oscillator spec must be w:g[,w:g...]");
    out.emplace_back(w, g);
  }
  return out;
}

void make_model(const Options& opt, ModelHandle& handle) {
  qve_status st;
  if (opt.model_kind == "constant") {
    st = qve_model_create_constant(opt.eps_r, &handle.ptr);
  } else if (opt.model_kind == "lorentz") {
    st = qve_model_create_lorentz(opt.eps_r, opt.omega_x, opt.g, &handle.ptr);
  } else if (opt.model_kind == "multilorentz") {
    auto osc = parse_oscillators(opt.oscillators);
    std::vector<double> ws, gs;
    for (auto& [w, g] : osc) {
      ws.push_back(w);
      gs.push_back(g);
    }
    st = qve_model_create_multi_lorentz(opt.eps_r, ws.size(), ws.data(),
                                        gs.data(), &handle.ptr);
  } else {
    fail(kExitUsage, "unknown model kind '" + opt.model_kind + "'");
  }
  check_api(st, "model construction");
}

void make_filter(const Options& opt, FilterHandle& handle) {
  qve_status st;
  if (opt.filter_kind == "identity") {
    st = qve_filter_identity(&handle.ptr);
  } else if (opt.filter_kind == "gaussian") {
    st = qve_filter_gaussian(opt.t_p, &handle.ptr);
  } else if (opt.filter_kind == "rect") {
    st = qve_filter_rect(opt.omega_c, &handle.ptr);
  } else {
    fail(kExitUsage, "unknown filter kind '" + opt.filter_kind + "'");
  }
  check_api(st, "filter construction");
}

qve_constants make_constants(const Options& opt) {
  qve_constants pc;
  if (opt.units == "reduced") {
    pc = qve_constants_reduced();
  } else if (opt.units == "si") {
    pc = qve_constants_si();
  } else {
    fail(kExitUsage, "units must be 'reduced' or 'si'");
  }
  if (opt.hbar > 0.0) pc.hbar = opt.hbar;
  if (opt.eps0 > 0.0) pc.eps0 = opt.eps0;
  if (opt.c > 0.0) pc.c = opt.c;
  return pc;
}

qve_geometry make_geometry(const Options& opt) {
  return {opt.surface, opt.length, opt.conversion};
}

json model_meta(const Options& opt) {
  json m;
  m["type"] = opt.model_kind;
  m["eps_r"] = opt.eps_r;
  if (opt.model_kind == "lorentz") {
    m["omega_x"] = opt.omega_x;
    m["g"] = opt.g;
  } else if (opt.model_kind == "multilorentz") {
    json osc = json::array();
    for (auto& [w, g] : parse_oscillators(opt.oscillators))
      osc.push_back({{"omega", w}, {"g", g}});
    m["oscillators"] = osc;
  }
  return m;
}

// Table rows; NaN cells are "missing" and rendered as an empty CSV field /
// JSON null.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_output(const Options& opt, const std::string& command,
                  const Table& table, json extra_meta = json::object()) {
  std::ostringstream body;
  if (opt.format == "csv") {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
      body << (i ? "," : "") << table.columns[i];
    body << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) body << ",";
        if (!std::isnan(row[i])) body << fmt(row[i]);
      }
      body << "\n";
    }
  } else if (opt.format == "json") {
    json doc;
    doc["meta"] = {{"model", model_meta(opt)},
                   {"units", opt.units},
                   {"version", qve_version()},
                   {"command", command},
                   {"columns", table.columns}};
    for (auto& [k, v] : extra_meta.items()) doc["meta"][k] = v;
    json data = json::array();
    for (const auto& row : table.rows) {
      json r = json::array();
      for (double v : row) {
        if (std::isnan(v))
          r.push_back(nullptr);
        else
          r.push_back(v);
      }
      data.push_back(std::move(r));
    }
    doc["data"] = std::move(data);
    body << doc.dump(2) << "\n";
  } else {
    fail(kExitUsage, "format must be 'csv' or 'json'");
  }

  if (opt.output == "-") {
    std::cout << body.str();
  } else {
    std::ofstream out(opt.output, std::ios::binary);
    if (!out) fail(kExitNumerical, "cannot open output file " + opt.output);
    out << body.str();
  }
}

// ---- trace ingestion (CSV or JSON, as emitted by ratio/synth) ----

struct Trace {
  std::vector<double> omega, ratio, sigma;
};

Trace read_trace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(kExitUsage, "cannot open input file " + path);
  Trace t;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    json doc = json::parse(in, nullptr, false);
    if (doc.is_discarded() || !doc.contains("data"))
      fail(kExitUsage, "malformed JSON trace in " + path);
    for (const auto& row : doc["data"]) {
      if (!row.is_array() || row.size() < 2 || row[1].is_null()) continue;
      t.omega.push_back(row[0].get<double>());
      t.ratio.push_back(row[1].get<double>());
      if (row.size() > 2 && !row[2].is_null())
        t.sigma.push_back(row[2].get<double>());
    }
  } else {
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      double w = 0.0, r = 0.0, s = 0.0;
      int n = std::sscanf(line.c_str(), "%lf,%lf,%lf", &w, &r, &s);
      if (n < 2) continue;  // header or malformed line
      t.omega.push_back(w);
      t.ratio.push_back(r);
      if (n == 3) t.sigma.push_back(s);
    }
  }
  if (t.omega.empty()) fail(kExitUsage, "no usable samples in " + path);
  if (!t.sigma.empty() && t.sigma.size() != t.omega.size()) t.sigma.clear();
  return t;
}

// ---- subcommand bodies ----

int cmd_dispersion(const Options& opt) {
  ModelHandle model;
  make_model(opt, model);
  qve_constants pc = make_constants(opt);
  auto ks = parse_grid(opt.k_grid).build();

  size_t n_branches = 0;
  check_api(qve_branch_frequencies(model.ptr, &pc, ks.front(), nullptr, 0,
                                   &n_branches),
            "dispersion");
  Table table;
  table.columns.push_back("k");
  if (n_branches == 1) {
    table.columns.push_back("omega");
  } else if (n_branches == 2) {
    table.columns.push_back("omega_lower");
    table.columns.push_back("omega_upper");
  } else {
    for (size_t b = 0; b < n_branches; ++b)
      table.columns.push_back("omega_" + std::to_string(b));
  }
  std::vector<double> freqs(n_branches);
  for (double k : ks) {
    size_t n = 0;
    check_api(qve_branch_frequencies(model.ptr, &pc, k, freqs.data(),
                                     freqs.size(), &n),
              "dispersion");
    std::vector<double> row{k};
    for (size_t b = 0; b < n; ++b) row.push_back(freqs[b]);
    for (size_t b = n; b < n_branches; ++b)
      row.push_back(std::nan(""));
    table.rows.push_back(std::move(row));
  }
  write_output(opt, "dispersion", table);
  return kExitOk;
}

int cmd_hopfield(const Options& opt) {
  ModelHandle model;
  make_model(opt, model);
  qve_constants pc = make_constants(opt);
  auto ks = parse_grid(opt.k_grid).build();

  Table table;
  table.columns = {"k", "branch", "omega", "X", "Z", "v_g", "Omega_k"};
  std::vector<qve_mode> modes(16);
  for (double k : ks) {
    size_t n = 0;
    check_api(qve_mode_solutions(model.ptr, &pc, k, modes.data(), modes.size(),
                                 &n),
              "hopfield");
    for (size_t i = 0; i < n; ++i)
      table.rows.push_back({modes[i].k, static_cast<double>(modes[i].branch),
                            modes[i].omega, modes[i].x, modes[i].z,
                            modes[i].group_velocity, modes[i].bare_frequency});
  }
  write_output(opt, "hopfield", table);
  return kExitOk;
}

int cmd_spectrum(const Options& opt, const std::string& source) {
  ModelHandle model;
  make_model(opt, model);
  FilterHandle filter;
  make_filter(opt, filter);
  qve_constants pc = make_constants(opt);
  qve_geometry geom = make_geometry(opt);
  auto grid = parse_grid(opt.omega_grid).build();

  Table table;
  table.columns = {"omega", "value"};
  for (double w : grid) {
    double v = 0.0;
    qve_status st;
    if (source == "vacuum")
      st = qve_vacuum_spectrum(&pc, &geom, opt.eps_r, filter.ptr, w, &v);
    else
      st = qve_polariton_spectrum(model.ptr, &pc, &geom, filter.ptr, w, &v);
    if (st == QVE_ERR_BAND_EDGE) {
      table.rows.push_back({w, std::nan("")});
      continue;
    }
    check_api(st, "spectrum");
    table.rows.push_back({w, v});
  }
  write_output(opt, "spectrum", table, {{"source", source}});
  return kExitOk;
}

int cmd_ratio(const Options& opt) {
  ModelHandle model;
  make_model(opt, model);
  auto grid = parse_grid(opt.omega_grid).build();

  Table table;
  table.columns = {"omega", "value"};
  for (double w : grid) {
    double v = 0.0;
    int flag = 0;
    check_api(qve_ratio(model.ptr, w, &v, &flag), "ratio");
    table.rows.push_back({w, flag == 2 ? std::nan("") : v});
  }
  write_output(opt, "ratio", table);
  return kExitOk;
}

int cmd_timecorr(const Options& opt, const std::string& source) {
  ModelHandle model;
  make_model(opt, model);
  FilterHandle filter;
  make_filter(opt, filter);
  qve_constants pc = make_constants(opt);
  qve_geometry geom = make_geometry(opt);
  auto taus = parse_grid(opt.tau_grid).build();

  double omega_max = opt.omega_max;
  if (omega_max <= 0.0)
    check_api(qve_filter_cutoff(filter.ptr, 1e-13, &omega_max),
              "timecorr omega_max");

  std::vector<double> values(taus.size());
  check_api(qve_time_correlation(source == "vacuum" ? nullptr : model.ptr,
                                 opt.eps_r, &pc, &geom, filter.ptr,
                                 taus.data(), taus.size(), omega_max,
                                 values.data()),
            "timecorr");
  Table table;
  table.columns = {"tau", "value"};
  for (std::size_t i = 0; i < taus.size(); ++i)
    table.rows.push_back({taus[i], values[i]});
  write_output(opt, "timecorr", table,
               {{"source", source}, {"omega_max", omega_max}});
  return kExitOk;
}

int cmd_nk(const Options& opt) {
  ModelHandle model;
  make_model(opt, model);
  qve_constants pc = make_constants(opt);
  auto ks = parse_grid(opt.k_grid).build();

  Table table;
  table.columns = {"k", "n_k"};
  for (double k : ks) {
    double n = 0.0;
    check_api(qve_virtual_photon_population(model.ptr, &pc, k, &n), "nk");
    table.rows.push_back({k, n});
  }
  write_output(opt, "nk", table);
  return kExitOk;
}

int cmd_synth(const Options& opt, double sigma) {
  ModelHandle model;
  make_model(opt, model);
  auto grid = parse_grid(opt.omega_grid).build();
  std::vector<double> ratio(grid.size());
  check_api(qve_synthesize_ratio(model.ptr, grid.data(), grid.size(), sigma,
                                 opt.seed, ratio.data()),
            "synth");
  Table table;
  if (sigma > 0.0) {
    table.columns = {"omega", "ratio", "sigma"};
    for (std::size_t i = 0; i < grid.size(); ++i)
      table.rows.push_back({grid[i], ratio[i], sigma});
  } else {
    table.columns = {"omega", "ratio"};
    for (std::size_t i = 0; i < grid.size(); ++i)
      table.rows.push_back({grid[i], ratio[i]});
  }
  write_output(opt, "synth", table,
               {{"sigma", sigma}, {"seed", opt.seed}});
  return kExitOk;
}

int cmd_invert(const Options& opt, const std::string& input,
               double threshold) {
  Trace trace = read_trace(input);
  std::size_t n = trace.omega.size();
  std::vector<double> eps(n);
  std::vector<int> flags(n);
  std::vector<double> gap_edges(2 * n);
  size_t n_gaps = 0;
  check_api(qve_invert_ratio(trace.omega.data(), trace.ratio.data(), n,
                             opt.eps_r, threshold, eps.data(), flags.data(),
                             gap_edges.data(), gap_edges.size(), &n_gaps),
            "invert");

  Table table;
  table.columns = {"omega", "epsilon", "gapped"};
  for (std::size_t i = 0; i < n; ++i)
    table.rows.push_back({trace.omega[i],
                          flags[i] ? std::nan("") : eps[i],
                          static_cast<double>(flags[i])});
  json gaps = json::array();
  for (size_t i = 0; i < n_gaps; ++i) {
    gaps.push_back({{"lo", gap_edges[2 * i]}, {"hi", gap_edges[2 * i + 1]}});
    std::cerr << "gap interval: [" << fmt(gap_edges[2 * i]) << ", "
              << fmt(gap_edges[2 * i + 1]) << "]\n";
  }
  write_output(opt, "invert", table, {{"gaps", gaps}});
  return kExitOk;
}

int cmd_fit(const Options& opt, const std::string& input, double guess_wx,
            double guess_g, const std::vector<double>& bounds) {
  Trace trace = read_trace(input);
  double b[4] = {bounds[0], bounds[1], bounds[2], bounds[3]};
  qve_fit_result fit;
  check_api(qve_fit_lorentz(trace.omega.data(), trace.ratio.data(),
                            trace.sigma.empty() ? nullptr : trace.sigma.data(),
                            trace.omega.size(), opt.eps_r, guess_wx, guess_g,
                            b, &fit),
            "fit");
  if (opt.format == "json") {
    json doc;
    doc["meta"] = {{"model", model_meta(opt)},
                   {"units", opt.units},
                   {"version", qve_version()},
                   {"command", "fit"}};
    doc["result"] = {{"eps_r", fit.eps_r},
                     {"omega_x", fit.omega_x},
                     {"g", fit.g},
                     {"rss", fit.rss},
                     {"iterations", fit.iterations},
                     {"converged", fit.converged != 0},
                     {"stderr_omega_x", fit.stderr_omega_x},
                     {"stderr_g", fit.stderr_g}};
    std::ostringstream body;
    body << doc.dump(2) << "\n";
    if (opt.output == "-") {
      std::cout << body.str();
    } else {
      std::ofstream out(opt.output, std::ios::binary);
      out << body.str();
    }
  } else {
    Table table;
    table.columns = {"parameter", "value"};
    std::ostringstream body;
    body << "parameter,value\n";
    body << "eps_r," << fmt(fit.eps_r) << "\n";
    body << "omega_x," << fmt(fit.omega_x) << "\n";
    body << "g," << fmt(fit.g) << "\n";
    body << "rss," << fmt(fit.rss) << "\n";
    body << "iterations," << fit.iterations << "\n";
    body << "converged," << fit.converged << "\n";
    body << "stderr_omega_x," << fmt(fit.stderr_omega_x) << "\n";
    body << "stderr_g," << fmt(fit.stderr_g) << "\n";
    if (opt.output == "-") {
      std::cout << body.str();
    } else {
      std::ofstream out(opt.output, std::ios::binary);
      out << body.str();
    }
  }
  return kExitOk;
}

int cmd_reproduce_fig2(Options opt, const std::string& outdir) {
  // Reduced units, single oscillator at omega_x = 1 with g = 0.5.
  opt.model_kind = "lorentz";
  opt.eps_r = 1.0;
  opt.omega_x = 1.0;
  opt.g = 0.5;
  opt.units = "reduced";

  std::string ext = opt.format == "json" ? ".json" : ".csv";

  Options disp = opt;
  disp.k_grid = "0.005:3:600";  // includes the crossing k = 1
  disp.output = outdir + "/fig2a_dispersion" + ext;
  cmd_dispersion(disp);

  Options ratio = opt;
  ratio.output = outdir + "/fig2b_ratio" + ext;
  // Grid touching omega -> 0+ and containing 2.0 exactly.
  ModelHandle model;
  make_model(ratio, model);
  std::vector<double> grid{1e-4};
  for (int i = 1; i <= 2000; ++i) grid.push_back(0.0025 * i);
  Table table;
  table.columns = {"omega", "value"};
  for (double w : grid) {
    double v = 0.0;
    int flag = 0;
    check_api(qve_ratio(model.ptr, w, &v, &flag), "ratio");
    table.rows.push_back({w, flag == 2 ? std::nan("") : v});
  }
  write_output(ratio, "reproduce-fig2", table);

  std::cerr << "wrote " << disp.output << " and " << ratio.output << "\n";
  return kExitOk;
}

struct CheckOutcome {
  int failures = 0;
  void report(const std::string& name, bool ok, double worst) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << " (worst residual "
              << fmt(worst) << ")\n";
    if (!ok) ++failures;
  }
};

int cmd_check(const Options& opt) {
  ModelHandle model;
  make_model(opt, model);
  qve_constants pc = make_constants(opt);
  qve_geometry geom = make_geometry(opt);
  CheckOutcome out;

  std::vector<double> ks;
  double scale = opt.model_kind == "constant" ? 1.0 : opt.omega_x;
  for (int i = 0; i < 300; ++i)
    ks.push_back(0.01 * scale * std::pow(1000.0, i / 299.0));

  double worst_norm = 0.0, worst_gauge = 0.0, worst_round = 0.0,
         worst_vg = 0.0, worst_part = 0.0;
  std::vector<qve_mode> modes(16);
  std::vector<double> lo_f(16), hi_f(16);
  for (double k : ks) {
    size_t n = 0;
    check_api(qve_mode_solutions(model.ptr, &pc, k, modes.data(), modes.size(),
                                 &n),
              "check");
    double norm = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const auto& m = modes[i];
      norm += m.x * m.x - m.z * m.z;
      double sum = m.x + m.z;
      double gauge = std::abs(m.bare_frequency * sum -
                              m.omega * (m.x - m.z)) /
                     (m.omega * std::abs(sum));
      worst_gauge = std::max(worst_gauge, gauge);
      double kk = 0.0;
      check_api(qve_wavevector_of(model.ptr, &pc, m.omega, &kk), "check");
      worst_round = std::max(worst_round, std::abs(kk - k) / k);
    }
    worst_norm = std::max(worst_norm, std::abs(norm - 1.0));

    // fourth-order central difference: robust near band edges
    double h = 1e-4 * k;
    std::vector<double> lo2(16), hi2(16);
    size_t nl = 0, nh = 0, nl2 = 0, nh2 = 0;
    check_api(qve_branch_frequencies(model.ptr, &pc, k - h, lo_f.data(),
                                     lo_f.size(), &nl),
              "check");
    check_api(qve_branch_frequencies(model.ptr, &pc, k + h, hi_f.data(),
                                     hi_f.size(), &nh),
              "check");
    check_api(qve_branch_frequencies(model.ptr, &pc, k - 2.0 * h, lo2.data(),
                                     lo2.size(), &nl2),
              "check");
    check_api(qve_branch_frequencies(model.ptr, &pc, k + 2.0 * h, hi2.data(),
                                     hi2.size(), &nh2),
              "check");
    if (nl == n && nh == n && nl2 == n && nh2 == n) {
      for (size_t i = 0; i < n; ++i) {
        double fd =
            (8.0 * (hi_f[i] - lo_f[i]) - (hi2[i] - lo2[i])) / (12.0 * h);
        worst_vg = std::max(
            worst_vg, std::abs(modes[i].group_velocity - fd) / fd);
      }
    }

    qve_partition_report rep;
    check_api(qve_partition_identity(model.ptr, &pc, k, &rep), "check");
    worst_part = std::max(worst_part, std::abs(rep.residual));
  }

  out.report("hopfield normalization", worst_norm < 1e-10, worst_norm);
  out.report("gauge condition", worst_gauge < 1e-10, worst_gauge);
  out.report("dispersion round trip", worst_round < 1e-10, worst_round);
  out.report("group velocity vs finite difference", worst_vg < 1e-6, worst_vg);
  if (opt.eps_r == 1.0) {
    out.report("partition identity", worst_part < 1e-8, worst_part);
  } else {
    std::cout << "note partition identity residual " << fmt(worst_part)
              << " (informative: identity balances for eps_r = 1)\n";
  }

  // C-independence of exported observables.
  FilterHandle filter;
  make_filter(opt, filter);
  qve_geometry geom10 = geom;
  geom10.conversion *= 10.0;
  double a = 0.0, b = 0.0;
  double w_probe = 0.5 * scale;
  check_api(
      qve_polariton_spectrum(model.ptr, &pc, &geom, filter.ptr, w_probe, &a),
      "check");
  check_api(
      qve_polariton_spectrum(model.ptr, &pc, &geom10, filter.ptr, w_probe, &b),
      "check");
  out.report("conversion-constant independence", a == b, std::abs(a - b));

  // ratio tends to the uncoupled value far above every resonance
  if (opt.model_kind != "constant") {
    double r = 0.0;
    int flag = 0;
    check_api(qve_ratio(model.ptr, 50.0 * scale, &r, &flag), "check");
    out.report("ratio -> 1 far above resonance", std::abs(r - 1.0) < 1e-3,
               std::abs(r - 1.0));
  }

  return out.failures == 0 ? kExitOk : kExitCheckFailed;
}

void apply_config(Options& opt, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitUsage, "cannot open config file " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(kExitUsage, "malformed JSON config " + path);

  if (doc.contains("model")) {
    const auto& m = doc["model"];
    if (m.contains("type")) opt.model_kind = m["type"].get<std::string>();
    if (m.contains("eps_r")) opt.eps_r = m["eps_r"].get<double>();
    if (m.contains("omega_x")) opt.omega_x = m["omega_x"].get<double>();
    if (m.contains("g")) opt.g = m["g"].get<double>();
    if (m.contains("oscillators")) {
      std::string spec;
      for (const auto& o : m["oscillators"]) {
        if (!spec.empty()) spec += ",";
        spec += fmt(o["omega"].get<double>()) + ":" +
                fmt(o["g"].get<double>());
      }
      opt.oscillators = spec;
    }
  }
  if (doc.contains("units")) opt.units = doc["units"].get<std::string>();
  if (doc.contains("constants")) {
    const auto& c = doc["constants"];
    if (c.contains("hbar")) opt.hbar = c["hbar"].get<double>();
    if (c.contains("eps0")) opt.eps0 = c["eps0"].get<double>();
    if (c.contains("c")) opt.c = c["c"].get<double>();
  }
  if (doc.contains("geometry")) {
    const auto& g = doc["geometry"];
    if (g.contains("S")) opt.surface = g["S"].get<double>();
    if (g.contains("L")) opt.length = g["L"].get<double>();
    if (g.contains("C")) opt.conversion = g["C"].get<double>();
  }
  if (doc.contains("filter")) {
    const auto& f = doc["filter"];
    if (f.contains("type")) opt.filter_kind = f["type"].get<std::string>();
    if (f.contains("t_p")) opt.t_p = f["t_p"].get<double>();
    if (f.contains("omega_c")) opt.omega_c = f["omega_c"].get<double>();
  }
  auto grid_str = [](const json& g) {
    return std::to_string(g["min"].get<double>()) + ":" +
           std::to_string(g["max"].get<double>()) + ":" +
           std::to_string(g["points"].get<int>());
  };
  if (doc.contains("grids")) {
    const auto& g = doc["grids"];
    if (g.contains("omega")) opt.omega_grid = grid_str(g["omega"]);
    if (g.contains("tau")) opt.tau_grid = grid_str(g["tau"]);
    if (g.contains("k")) opt.k_grid = grid_str(g["k"]);
  }
  if (doc.contains("format")) opt.format = doc["format"].get<std::string>();
  if (doc.contains("output")) opt.output = doc["output"].get<std::string>();
  if (doc.contains("seed")) opt.seed = doc["seed"].get<std::uint64_t>();
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;

  // --config provides defaults; explicit flags override them.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config(opt, argv[i + 1]);
      } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
      }
    }
  }

  CLI::App app{"Electro-optic sampling of vacuum fluctuations in dispersive "
               "dielectrics: dispersion, correlation spectra, the vacuum "
               "ellipsometry ratio, and its inversion"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", opt.model_kind,
                    "constant | lorentz | multilorentz");
    sub->add_option("--eps-r", opt.eps_r, "background permittivity");
    sub->add_option("--omega-x", opt.omega_x, "Lorentz resonance frequency");
    sub->add_option("--g", opt.g, "vacuum Rabi frequency");
    sub->add_option("--oscillators", opt.oscillators,
                    "multilorentz oscillators w:g[,w:g...]");
    sub->add_option("--units", opt.units, "reduced | si");
    sub->add_option("--hbar", opt.hbar, "override hbar");
    sub->add_option("--eps0", opt.eps0, "override eps0");
    sub->add_option("--c", opt.c, "override c");
    sub->add_option("--surface", opt.surface, "probe area S");
    sub->add_option("--length", opt.length, "quantization length L");
    sub->add_option("--conversion", opt.conversion,
                    "electro-optic conversion constant C");
    sub->add_option("--filter", opt.filter_kind,
                    "identity | gaussian | rect");
    sub->add_option("--tp", opt.t_p, "Gaussian filter probe duration");
    sub->add_option("--omega-c", opt.omega_c, "rect filter cutoff");
    sub->add_option("--format", opt.format, "csv | json");
    sub->add_option("--output", opt.output, "output path ('-' for stdout)");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--config", config_path,
                    "JSON run configuration (applied before flags)");
  };

  auto* disp = app.add_subcommand("dispersion", "polariton branch table");
  add_common(disp);
  disp->add_option("--k", opt.k_grid, "k grid min:max:points");

  auto* hop = app.add_subcommand("hopfield", "mode solution table");
  add_common(hop);
  hop->add_option("--k", opt.k_grid, "k grid min:max:points");

  std::string source = "polariton";
  auto* spec = app.add_subcommand("spectrum", "correlation spectral density");
  add_common(spec);
  spec->add_option("--omega", opt.omega_grid, "omega grid min:max:points");
  spec->add_option("--source", source, "vacuum | polariton");

  auto* ratio = app.add_subcommand("ratio", "vacuum ellipsometry ratio");
  add_common(ratio);
  ratio->add_option("--omega", opt.omega_grid, "omega grid min:max:points");

  std::string tc_source = "polariton";
  auto* tcorr = app.add_subcommand("timecorr", "time-domain correlation");
  add_common(tcorr);
  tcorr->add_option("--tau", opt.tau_grid, "tau grid min:max:points");
  tcorr->add_option("--omega-max", opt.omega_max, "spectral truncation");
  tcorr->add_option("--source", tc_source, "vacuum | polariton");

  auto* nk = app.add_subcommand("nk", "ground-state virtual photon number");
  add_common(nk);
  nk->add_option("--k", opt.k_grid, "k grid min:max:points");

  auto* chk = app.add_subcommand("check", "built-in invariant suite");
  add_common(chk);

  double sigma = 0.0;
  auto* synth = app.add_subcommand("synth", "synthetic ratio measurement");
  add_common(synth);
  synth->add_option("--omega", opt.omega_grid, "omega grid min:max:points");
  synth->add_option("--sigma", sigma, "multiplicative noise level");

  std::string input;
  double threshold = 0.02;
  auto* inv = app.add_subcommand("invert", "recover eps(omega) from a trace");
  add_common(inv);
  inv->add_option("--input", input, "trace file (csv or json)")->required();
  inv->add_option("--threshold", threshold, "gap threshold on the ratio");

  std::vector<double> guess{1.2, 0.4};
  std::vector<double> bounds{0.1, 10.0, 0.01, 5.0};
  auto* fit = app.add_subcommand("fit", "fit a Lorentz model to a trace");
  add_common(fit);
  fit->add_option("--input", input, "trace file (csv or json)")->required();
  fit->add_option("--guess", guess, "initial (omega_x, g)")->expected(2);
  fit->add_option("--bounds", bounds,
                  "omega_x_lo omega_x_hi g_lo g_hi")->expected(4);
  fit->add_option("--threshold", threshold, "gap threshold on the ratio");

  std::string outdir = ".";
  auto* fig2 = app.add_subcommand("reproduce-fig2",
                                  "dispersion and ratio data, g = 0.5 omega_x");
  add_common(fig2);
  fig2->add_option("--outdir", outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*disp) return cmd_dispersion(opt);
    if (*hop) return cmd_hopfield(opt);
    if (*spec) return cmd_spectrum(opt, source);
    if (*ratio) return cmd_ratio(opt);
    if (*tcorr) return cmd_timecorr(opt, tc_source);
    if (*nk) return cmd_nk(opt);
    if (*chk) return cmd_check(opt);
    if (*synth) return cmd_synth(opt, sigma);
    if (*inv) return cmd_invert(opt, input, threshold);
    if (*fit) return cmd_fit(opt, input, guess[0], guess[1], bounds);
    if (*fig2) return cmd_reproduce_fig2(opt, outdir);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
