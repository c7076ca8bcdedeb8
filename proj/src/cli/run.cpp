#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "dqw/cli.hpp"

namespace dqw::cli {

namespace {

struct Overrides {
  std::string config;
  std::string model;
  std::string delta;
  std::string phi;
  std::string name;
  std::optional<std::size_t> steps;
  std::optional<std::size_t> samples;
  std::string output;
  std::string report;
  std::string trajectory;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open config");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

ExperimentConfig build_config(const Overrides& o) {
  json j = o.config.empty() ? json::object() : read_json_file(o.config);
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  if (!o.model.empty()) j["model"] = o.model;
  if (!o.delta.empty()) j["delta"] = o.delta;
  if (!o.name.empty()) j["name"] = o.name;
  if (o.steps) j["steps"] = *o.steps;
  if (o.samples) j["samples"] = *o.samples;
  if (!o.phi.empty()) {
    try {
      j["phi"] = json::parse(o.phi);
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("--phi: ") + e.what());
    }
  }
  if (!o.output.empty()) j["output"] = o.output;
  if (!o.report.empty()) j["report"] = o.report;
  if (!o.trajectory.empty()) j["trajectory"] = o.trajectory;
  return parse_config(j);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError(path + ": cannot open for writing");
  return f;
}

void emit_json(const json& j, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    fallback << j.dump(2) << '\n';
  } else {
    auto f = open_output(path);
    f << j.dump(2) << '\n';
  }
}

// Runs one command on one config, writing files and/or `out`.
int execute(const std::string& command, const ExperimentConfig& cfg, std::ostream& out) {
  if (command == "simulate") {
    std::optional<std::ofstream> traj;
    if (!cfg.trajectory.empty()) traj = open_output(cfg.trajectory);
    json summary;
    if (cfg.output.empty()) {
      summary = simulate(cfg, out, traj ? &*traj : nullptr);
    } else {
      auto f = open_output(cfg.output);
      summary = simulate(cfg, f, traj ? &*traj : nullptr);
    }
    if (!cfg.report.empty()) emit_json(summary, cfg.report, out);
    return kSuccess;
  }
  if (command == "limit") {
    if (cfg.output.empty()) {
      std::ostringstream csv;
      const auto header = limit(cfg, csv);
      emit_json(header, cfg.report, out);
      out << csv.str();
    } else {
      auto f = open_output(cfg.output);
      emit_json(limit(cfg, f), cfg.report, out);
    }
    return kSuccess;
  }
  if (command == "compare") {
    const auto report = compare(cfg);
    emit_json(report, cfg.report, out);
    return compare_status(report);
  }
  if (command == "classify") {
    const auto report = classify(cfg);
    emit_json(report, cfg.report, out);
    return report["consistent"].get<bool>() ? kSuccess : kToleranceFailure;
  }
  if (command == "check") {
    emit_json(check(cfg), cfg.report, out);
    return kSuccess;
  }
  throw ValidationError("unknown command '" + command + "'");
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kValidationError;
}

struct SweepResult {
  std::string name;
  int status = kSuccess;
  json report;
  std::string error;
};

int sweep(const std::string& path, std::size_t workers_flag, const std::string& dir_flag, std::ostream& out,
          std::ostream& err) {
  const json spec = read_json_file(path);
  if (!spec.is_object()) throw ValidationError("sweep: expected a JSON object");
  for (const auto& [key, value] : spec.items())
    if (key != "command" && key != "workers" && key != "output_dir" && key != "experiments")
      throw ValidationError("sweep." + key + ": unknown field");
  const std::string default_command = spec.value("command", std::string("compare"));
  if (!spec.contains("experiments") || !spec["experiments"].is_array())
    throw ValidationError("sweep.experiments: expected an array");
  std::size_t workers = workers_flag;
  if (workers == 0 && spec.contains("workers")) {
    if (!spec["workers"].is_number_integer() || spec["workers"].get<long long>() < 1)
      throw ValidationError("sweep.workers: expected a positive integer");
    workers = spec["workers"].get<std::size_t>();
  }
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  const std::string dir = !dir_flag.empty() ? dir_flag : spec.value("output_dir", std::string("sweep-output"));
  std::filesystem::create_directories(dir);

  // Parse everything up front so a bad entry fails before any work starts.
  struct Job {
    std::string command;
    ExperimentConfig cfg;
  };
  std::vector<Job> jobs;
  const auto& list = spec["experiments"];
  for (std::size_t i = 0; i < list.size(); ++i) {
    json entry = list[i];
    const std::string field = "sweep.experiments[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ValidationError(field + ": expected an object");
    std::string command = default_command;
    if (entry.contains("command")) {
      command = entry["command"].get<std::string>();
      entry.erase("command");
    }
    if (!entry.contains("name")) entry["name"] = "experiment-" + std::to_string(i);
    ExperimentConfig cfg;
    try {
      cfg = parse_config(entry);
    } catch (const ValidationError& e) {
      throw ValidationError(field + ": " + e.what());
    }
    const auto base = (std::filesystem::path(dir) / cfg.name).string();
    if (command == "simulate" || command == "limit") cfg.output = base + ".csv";
    cfg.report = base + ".json";
    jobs.push_back({command, std::move(cfg)});
  }

  std::vector<SweepResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      auto& r = results[i];
      r.name = jobs[i].cfg.name;
      std::ostringstream sink;
      std::ostringstream errors;
      r.status = guarded([&] { return execute(jobs[i].command, jobs[i].cfg, sink); }, errors);
      r.error = errors.str();
    }
  };
  std::vector<std::future<void>> pool;
  for (std::size_t w = 0; w < std::min(workers, jobs.size()); ++w) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();

  json summary = {{"command", "sweep"}, {"output_dir", dir}, {"results", json::array()}};
  int status = kSuccess;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    json item = {{"name", results[i].name}, {"command", jobs[i].command}, {"exit_code", results[i].status}};
    if (!results[i].error.empty()) {
      item["error"] = results[i].error;
      err << results[i].name << ": " << results[i].error;
    } else {
      item["report"] = jobs[i].cfg.report;
    }
    summary["results"].push_back(item);
    status = std::max(status, results[i].status);
  }
  out << summary.dump(2) << '\n';
  return status;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("-c,--config", o.config, "JSON experiment config");
  sub->add_option("--name", o.name, "Experiment name");
  sub->add_option("--report", o.report, "JSON report path (default: stdout)");
}

void add_walk(CLI::App* sub, Overrides& o) {
  sub->add_option("--model", o.model, "lqw2 | dqw | lqw4 | grover-family");
  sub->add_option("--delta", o.delta, "Grover-family angle, radians or e.g. 0.75pi");
  sub->add_option("--phi", o.phi, "Initial vector as JSON, e.g. [[0.5,0],[0.5,0],[0.5,0],[0.5,0]]");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Decomposed-type quantum walks: simulation, limit measures and spectral checks", "dqw"};
  app.require_subcommand(1);
  Overrides o;
  std::size_t workers = 0;
  std::string sweep_dir;

  auto* sim = app.add_subcommand("simulate", "Evolve a walk and write the distribution as CSV");
  add_common(sim, o);
  add_walk(sim, o);
  sim->add_option("-n,--steps", o.steps, "Number of steps");
  sim->add_option("-o,--output", o.output, "CSV path (default: stdout)");
  sim->add_option("--trajectory", o.trajectory, "CSV path for every intermediate step");

  auto* lim = app.add_subcommand("limit", "Write the limit measure header and density samples");
  add_common(lim, o);
  add_walk(lim, o);
  lim->add_option("--samples", o.samples, "Number of density samples");
  lim->add_option("-o,--output", o.output, "CSV path (default: stdout)");

  auto* cmp = app.add_subcommand("compare", "Compare a simulation at time n with its limit measure");
  add_common(cmp, o);
  add_walk(cmp, o);
  cmp->add_option("-n,--steps", o.steps, "Number of steps (at least 100)");

  auto* cls = app.add_subcommand("classify", "Classify eigenvalues +1 and -1 of the Fourier-space coin");
  add_common(cls, o);
  add_walk(cls, o);

  auto* chk = app.add_subcommand("check", "Check that a coin pair defines an isometry");
  add_common(chk, o);

  auto* swp = app.add_subcommand("sweep", "Run a list of experiments on a worker pool");
  swp->add_option("-c,--config", o.config, "JSON sweep file")->required();
  swp->add_option("-j,--workers", workers, "Worker threads (default: hardware concurrency)");
  swp->add_option("--output-dir", sweep_dir, "Directory for per-experiment outputs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  return guarded(
      [&]() -> int {
        if (swp->parsed()) return sweep(o.config, workers, sweep_dir, out, err);
        for (auto* sub : {sim, lim, cmp, cls, chk})
          if (sub->parsed()) return execute(sub->get_name(), build_config(o), out);
        return kValidationError;
      },
      err);
}

}  // namespace dqw::cli
