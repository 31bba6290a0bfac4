// Command-line front end. Talks to the library only through qreflect.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

#include "qreflect/qreflect.h"

namespace {

using Json = nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Library failure carrying the status that becomes the exit code.
struct ApiError : std::runtime_error {
  ApiError(qr_status s, const std::string& what) : std::runtime_error(what), status(s) {}
  qr_status status;
};

void check(qr_status s, const char* what) {
  if (s != QR_OK) {
    throw ApiError(s, std::string(what) + ": " + qr_last_error());
  }
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using PlanPtr = std::unique_ptr<qr_plan, Deleter<qr_plan, qr_plan_destroy>>;
using SynthPtr = std::unique_ptr<qr_synthesis, Deleter<qr_synthesis, qr_synthesis_destroy>>;
using OperatorPtr = std::unique_ptr<qr_operator, Deleter<qr_operator, qr_operator_destroy>>;
using ReportPtr = std::unique_ptr<qr_report, Deleter<qr_report, qr_report_destroy>>;

struct SpectrumInput {
  std::int64_t dim = 0;
  std::optional<double> delta;
  std::optional<double> theta;
  std::int64_t target_multiplicity = 1;
  std::uint64_t seed = 0;
};

struct JobConfig {
  std::optional<std::string> command;
  std::optional<double> delta;
  std::optional<double> epsilon;
  double theta = 0.0;
  std::optional<std::string> matrix_path;
  std::optional<SpectrumInput> spectrum;
  std::map<std::string, std::string> outputs;
  bool use_paper_t_formula = false;
  int oversample = 32;
  double completion_tol = 1e-10;
  // sweep grids
  std::vector<double> grid_delta;
  std::vector<double> grid_epsilon;
  std::vector<std::int64_t> grid_dim;
  std::vector<std::uint64_t> grid_seed;
  std::int64_t grid_multiplicity = 1;
  int jobs = 1;
  bool timing = true;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Whole-file replace: write a sibling temp file, then rename over the target.
void write_atomic(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move output into '" + path + "': " + ec.message());
  }
}

void load_config(const std::string& path, JobConfig& cfg) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    if (j.contains("command")) cfg.command = j["command"].get<std::string>();
    if (j.contains("gap")) {
      const auto& g = j["gap"];
      if (g.contains("delta")) cfg.delta = g["delta"].get<double>();
      if (g.contains("epsilon")) cfg.epsilon = g["epsilon"].get<double>();
      if (g.contains("theta")) cfg.theta = g["theta"].get<double>();
    }
    if (j.contains("input")) {
      const auto& in = j["input"];
      if (in.contains("matrix")) cfg.matrix_path = in["matrix"].get<std::string>();
      if (in.contains("spectrum")) {
        const auto& s = in["spectrum"];
        SpectrumInput spec;
        spec.dim = s.at("dim").get<std::int64_t>();
        if (s.contains("delta")) spec.delta = s["delta"].get<double>();
        if (s.contains("theta")) spec.theta = s["theta"].get<double>();
        spec.target_multiplicity = s.value("target_multiplicity", std::int64_t{1});
        spec.seed = s.value("seed", std::uint64_t{0});
        cfg.spectrum = spec;
      }
    }
    if (j.contains("output")) {
      for (const auto& [key, value] : j["output"].items()) {
        cfg.outputs[key] = value.get<std::string>();
      }
    }
    if (j.contains("flags")) {
      const auto& f = j["flags"];
      cfg.use_paper_t_formula = f.value("use_paper_t_formula", cfg.use_paper_t_formula);
      cfg.oversample = f.value("oversample", cfg.oversample);
      cfg.completion_tol = f.value("completion_tol", cfg.completion_tol);
    }
    if (j.contains("grid")) {
      const auto& g = j["grid"];
      if (g.contains("delta")) cfg.grid_delta = g["delta"].get<std::vector<double>>();
      if (g.contains("epsilon")) cfg.grid_epsilon = g["epsilon"].get<std::vector<double>>();
      if (g.contains("dim")) cfg.grid_dim = g["dim"].get<std::vector<std::int64_t>>();
      if (g.contains("seed")) cfg.grid_seed = g["seed"].get<std::vector<std::uint64_t>>();
      cfg.grid_multiplicity = g.value("target_multiplicity", cfg.grid_multiplicity);
    }
  } catch (const Json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

std::string output_path(const JobConfig& cfg, const std::string& key,
                        const std::string& fallback) {
  const auto it = cfg.outputs.find(key);
  return it == cfg.outputs.end() ? fallback : it->second;
}

qr_t_formula formula_of(const JobConfig& cfg) {
  return cfg.use_paper_t_formula ? QR_T_PAPER : QR_T_CORRECTED;
}

PlanPtr make_plan(double delta, double epsilon, const JobConfig& cfg) {
  qr_plan* raw = nullptr;
  check(qr_plan_create(delta, epsilon, cfg.theta, formula_of(cfg), &raw), "plan");
  return PlanPtr(raw);
}

PlanPtr plan_from(const JobConfig& cfg) {
  if (!cfg.delta || !cfg.epsilon) {
    throw ConfigError("--delta and --epsilon are required");
  }
  return make_plan(*cfg.delta, *cfg.epsilon, cfg);
}

SynthPtr synthesize(const qr_plan* plan, const JobConfig& cfg) {
  qr_synthesis* raw = nullptr;
  check(qr_synthesize(plan, cfg.completion_tol, &raw), "synthesis");
  return SynthPtr(raw);
}

int cmd_plan(const JobConfig& cfg) {
  auto plan = plan_from(cfg);
  const char* text = nullptr;
  check(qr_plan_json(plan.get(), &text), "plan");
  write_atomic(output_path(cfg, "plan", "-"), text);
  return 0;
}

int cmd_synth(const JobConfig& cfg) {
  auto plan = plan_from(cfg);
  auto synth = synthesize(plan.get(), cfg);
  const char* circuit = nullptr;
  const char* angles = nullptr;
  check(qr_synthesis_circuit_json(synth.get(), &circuit), "synthesis");
  check(qr_synthesis_angles_json(synth.get(), &angles), "synthesis");
  write_atomic(output_path(cfg, "circuit", "circuit.json"), circuit);
  write_atomic(output_path(cfg, "angles", "angles.json"), angles);
  return 0;
}

OperatorPtr operator_from(const JobConfig& cfg) {
  const bool has_matrix = cfg.matrix_path.has_value();
  const bool has_spectrum = cfg.spectrum.has_value();
  if (has_matrix == has_spectrum) {
    throw ConfigError("exactly one input is required: --matrix or --dim (spectrum)");
  }
  qr_operator* raw = nullptr;
  if (has_matrix) {
    const std::string text = read_file(*cfg.matrix_path);
    check(qr_operator_from_json(text.c_str(), &raw), "matrix");
  } else {
    const auto& s = *cfg.spectrum;
    check(qr_operator_from_spectrum(s.dim, s.delta.value_or(cfg.delta.value_or(0.0)),
                                    s.theta.value_or(cfg.theta), s.target_multiplicity,
                                    s.seed, &raw),
          "spectrum");
  }
  return OperatorPtr(raw);
}

int cmd_verify(const JobConfig& cfg) {
  auto plan = plan_from(cfg);
  auto op = operator_from(cfg);
  if (const auto it = cfg.outputs.find("matrix"); it != cfg.outputs.end()) {
    const char* text = nullptr;
    check(qr_operator_json(op.get(), &text), "matrix");
    write_atomic(it->second, text);
  }
  auto synth = synthesize(plan.get(), cfg);
  if (const auto it = cfg.outputs.find("circuit"); it != cfg.outputs.end()) {
    const char* text = nullptr;
    check(qr_synthesis_circuit_json(synth.get(), &text), "synthesis");
    write_atomic(it->second, text);
  }
  qr_report* raw = nullptr;
  check(qr_verify(synth.get(), op.get(), cfg.use_paper_t_formula ? 1 : 0,
                  cfg.oversample, &raw),
        "verify");
  ReportPtr report(raw);
  const char* text = nullptr;
  check(qr_report_json(report.get(), &text), "report");
  write_atomic(output_path(cfg, "report", "-"), text);
  qr_report_summary summary{};
  check(qr_report_summary_get(report.get(), &summary), "report");
  return summary.bound_satisfied ? QR_OK : QR_BOUND_NOT_MET;
}

// Shortest %g form that parses back to the same double.
std::string fmt_double(double x) {
  char buf[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x + 0.0);
    if (std::strtod(buf, nullptr) == x || std::isnan(x)) break;
  }
  return buf;
}

struct SweepRow {
  double delta = 0.0;
  double epsilon = 0.0;
  std::int64_t dim = 0;
  std::uint64_t seed = 0;
  std::int64_t t = 0, n = 0, degree = 0;
  double measured_error = std::numeric_limits<double>::quiet_NaN();
  double bound = 0.0;
  bool satisfied = false;
  double completion_residual = std::numeric_limits<double>::quiet_NaN();
  double wall_time_ms = 0.0;
  std::string status = "ok";
};

struct SweepCell {
  PlanPtr plan;
  SynthPtr synth;
  std::string status = "ok";
  double synth_ms = 0.0;
};

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

int cmd_sweep(const JobConfig& cfg) {
  const std::size_t n_cells = cfg.grid_delta.size() * cfg.grid_epsilon.size();
  std::vector<SweepCell> cells(n_cells);
  parallel_for(n_cells, cfg.jobs, [&](std::size_t i) {
    auto& cell = cells[i];
    const double delta = cfg.grid_delta[i / cfg.grid_epsilon.size()];
    const double epsilon = cfg.grid_epsilon[i % cfg.grid_epsilon.size()];
    const auto start = std::chrono::steady_clock::now();
    try {
      cell.plan = make_plan(delta, epsilon, cfg);
      cell.synth = synthesize(cell.plan.get(), cfg);
    } catch (const ApiError& e) {
      cell.status = qr_status_name(e.status);
      std::cerr << "sweep: delta=" << delta << " epsilon=" << epsilon << ": " << e.what()
                << "\n";
    }
    cell.synth_ms = elapsed_ms(start);
  });

  const std::size_t per_cell = cfg.grid_dim.size() * cfg.grid_seed.size();
  std::vector<SweepRow> rows(n_cells * per_cell);
  parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
    const std::size_t c = i / per_cell;
    const std::size_t r = i % per_cell;
    SweepRow& row = rows[i];
    row.delta = cfg.grid_delta[c / cfg.grid_epsilon.size()];
    row.epsilon = cfg.grid_epsilon[c % cfg.grid_epsilon.size()];
    row.dim = cfg.grid_dim[r / cfg.grid_seed.size()];
    row.seed = cfg.grid_seed[r % cfg.grid_seed.size()];
    row.bound = 4.0 * row.epsilon;
    const auto& cell = cells[c];
    if (cell.plan) qr_plan_params(cell.plan.get(), &row.t, &row.n, &row.degree);
    if (!cell.synth) {
      row.status = cell.status;
      return;
    }
    qr_synthesis_completion_residual(cell.synth.get(), &row.completion_residual);
    const auto start = std::chrono::steady_clock::now();
    try {
      qr_operator* op_raw = nullptr;
      check(qr_operator_from_spectrum(row.dim, row.delta, cfg.theta, cfg.grid_multiplicity,
                                      row.seed, &op_raw),
            "spectrum");
      OperatorPtr op(op_raw);
      qr_report* rep_raw = nullptr;
      check(qr_verify(cell.synth.get(), op.get(), 0, cfg.oversample, &rep_raw), "verify");
      ReportPtr report(rep_raw);
      qr_report_summary s{};
      check(qr_report_summary_get(report.get(), &s), "report");
      row.measured_error = s.measured_error;
      row.satisfied = s.bound_satisfied != 0;
      if (!row.satisfied) row.status = qr_status_name(QR_BOUND_NOT_MET);
    } catch (const ApiError& e) {
      row.status = qr_status_name(e.status);
      std::cerr << "sweep: row " << i << ": " << e.what() << "\n";
    }
    row.wall_time_ms = elapsed_ms(start);
  });

  std::ostringstream csv;
  csv << "delta,epsilon,dim,seed,t,n,degree,measured_error,bound,satisfied,"
         "completion_residual,wall_time_ms,status\n";
  bool all_ok = true;
  for (const auto& row : rows) {
    all_ok = all_ok && row.satisfied;
    csv << fmt_double(row.delta) << ',' << fmt_double(row.epsilon) << ',' << row.dim << ','
        << row.seed << ',' << row.t << ',' << row.n << ',' << row.degree << ','
        << fmt_double(row.measured_error) << ',' << fmt_double(row.bound) << ','
        << (row.satisfied ? "true" : "false") << ','
        << fmt_double(row.completion_residual) << ','
        << (cfg.timing ? fmt_double(row.wall_time_ms) : std::string("0")) << ','
        << row.status << '\n';
  }
  write_atomic(output_path(cfg, "csv", "-"), csv.str());
  return all_ok ? QR_OK : QR_BOUND_NOT_MET;
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::stringstream is(item);
    T value{};
    if (!(is >> value) || !is.eof()) {
      throw ConfigError(std::string("bad ") + what + " list entry '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-ancilla eigenspace reflection: plan, synthesize, verify, sweep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qr_version()));

  // Raw flag values; merged over the config file after parsing.
  std::string config_path;
  std::optional<double> delta, epsilon, theta, completion_tol;
  std::optional<int> oversample;
  bool literal_t = false;
  std::string out_plan, out_circuit, out_angles, out_report, out_matrix, out_csv;
  std::optional<std::string> matrix_path;
  std::optional<std::int64_t> dim, multiplicity;
  std::optional<std::uint64_t> seed;
  std::optional<double> spectrum_delta;
  std::string deltas, epsilons, dims, seeds;
  int jobs = 1;
  bool no_timing = false;

  auto add_gap = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON job configuration");
    sub->add_option("--delta", delta, "angular gap in radians, 0 < delta < pi");
    sub->add_option("--epsilon", epsilon, "target precision, 0 < epsilon < 1");
    sub->add_option("--theta", theta, "target eigenphase in radians (default 0)");
    sub->add_flag("--use-paper-t-formula", literal_t,
                  "use t = ceil(e / (2|e^{i delta} - 1|)) instead of the corrected formula");
    sub->add_option("--completion-tol", completion_tol,
                    "complementary polynomial residual tolerance (default 1e-10)");
    sub->add_option("--oversample", oversample, "grid oversampling for bound estimates");
  };

  auto* plan = app.add_subcommand("plan", "select t, n and predicted gate counts");
  add_gap(plan);
  plan->add_option("--output,-o", out_plan, "plan JSON path (default stdout)");

  auto* synth = app.add_subcommand("synth", "write the reflection circuit and angles");
  add_gap(synth);
  synth->add_option("--circuit-out", out_circuit, "circuit JSON path (default circuit.json)");
  synth->add_option("--angles-out", out_angles, "angles JSON path (default angles.json)");

  auto* verify = app.add_subcommand("verify", "check the circuit against the exact reflection");
  add_gap(verify);
  verify->add_option("--matrix", matrix_path, "unitary JSON file");
  verify->add_option("--dim", dim, "generate a gapped unitary of this dimension");
  verify->add_option("--multiplicity", multiplicity, "target multiplicity (default 1)");
  verify->add_option("--seed", seed, "generator seed (default 0)");
  verify->add_option("--spectrum-delta", spectrum_delta,
                     "gap used by the generator (default --delta)");
  verify->add_option("--report-out", out_report, "report JSON path (default stdout)");
  verify->add_option("--matrix-out", out_matrix, "also write the unitary used");
  verify->add_option("--circuit-out", out_circuit, "also write the circuit");

  auto* sweep = app.add_subcommand("sweep", "verify over a grid of gaps, precisions, sizes, seeds");
  add_gap(sweep);
  sweep->add_option("--deltas", deltas, "comma-separated gaps");
  sweep->add_option("--epsilons", epsilons, "comma-separated precisions");
  sweep->add_option("--dims", dims, "comma-separated dimensions");
  sweep->add_option("--seeds", seeds, "comma-separated seeds");
  sweep->add_option("--multiplicity", multiplicity, "target multiplicity (default 1)");
  sweep->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--csv-out", out_csv, "CSV path (default stdout)");
  sweep->add_flag("--no-timing", no_timing, "write 0 in wall_time_ms for reproducible files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : QR_ERR_CONFIG;
  }

  const auto* active = app.get_subcommands().front();
  const std::string command = active->get_name();

  try {
    JobConfig cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    if (cfg.command && *cfg.command != command) {
      throw ConfigError("config is for '" + *cfg.command + "', not '" + command + "'");
    }
    if (delta) cfg.delta = delta;
    if (epsilon) cfg.epsilon = epsilon;
    if (theta) cfg.theta = *theta;
    if (completion_tol) cfg.completion_tol = *completion_tol;
    if (oversample) cfg.oversample = *oversample;
    if (literal_t) cfg.use_paper_t_formula = true;
    if (!out_plan.empty()) cfg.outputs["plan"] = out_plan;
    if (!out_circuit.empty()) cfg.outputs["circuit"] = out_circuit;
    if (!out_angles.empty()) cfg.outputs["angles"] = out_angles;
    if (!out_report.empty()) cfg.outputs["report"] = out_report;
    if (!out_matrix.empty()) cfg.outputs["matrix"] = out_matrix;
    if (!out_csv.empty()) cfg.outputs["csv"] = out_csv;
    if (matrix_path) {
      cfg.matrix_path = matrix_path;
      if (dim) throw ConfigError("--matrix and --dim are mutually exclusive");
    }
    if (dim) {
      SpectrumInput spec = cfg.spectrum.value_or(SpectrumInput{});
      spec.dim = *dim;
      cfg.spectrum = spec;
    }
    if (cfg.spectrum) {
      if (multiplicity) cfg.spectrum->target_multiplicity = *multiplicity;
      if (seed) cfg.spectrum->seed = *seed;
      if (spectrum_delta) cfg.spectrum->delta = spectrum_delta;
    }
    if (!deltas.empty()) cfg.grid_delta = parse_list<double>(deltas, "delta");
    if (!epsilons.empty()) cfg.grid_epsilon = parse_list<double>(epsilons, "epsilon");
    if (!dims.empty()) cfg.grid_dim = parse_list<std::int64_t>(dims, "dim");
    if (!seeds.empty()) cfg.grid_seed = parse_list<std::uint64_t>(seeds, "seed");
    if (multiplicity) cfg.grid_multiplicity = *multiplicity;
    cfg.jobs = jobs;
    cfg.timing = !no_timing;

    if (command == "plan") return cmd_plan(cfg);
    if (command == "synth") return cmd_synth(cfg);
    if (command == "verify") return cmd_verify(cfg);
    return cmd_sweep(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "qreflect " << command << ": " << e.what() << "\n";
    return QR_ERR_CONFIG;
  } catch (const ApiError& e) {
    std::cerr << "qreflect " << command << ": " << e.what() << "\n";
    const qr_status s = e.status == QR_ERR_INVALID_ARGUMENT ? QR_ERR_CONFIG : e.status;
    return static_cast<int>(s);
  }
}
