#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>

#include "dqw/cli.hpp"

namespace dqw::cli {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ValidationError(field + ": " + what);
}

double parse_number(std::string_view text, const std::string& field) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) fail(field, "cannot parse number '" + std::string(text) + "'");
  return v;
}

double real_at(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

Complex complex_at(const json& j, const std::string& field) {
  if (j.is_number()) return real_at(j, field);
  if (!j.is_array() || j.size() != 2) fail(field, "expected a [re, im] pair");
  return {real_at(j[0], field + "[0]"), real_at(j[1], field + "[1]")};
}

double angle_at(const json& j, const std::string& field) {
  if (j.is_number()) return real_at(j, field);
  if (!j.is_string()) fail(field, "expected an angle (radians or e.g. \"0.75pi\")");
  try {
    return parse_angle(j.get<std::string>());
  } catch (const ValidationError& e) {
    fail(field, e.what());
  }
}

std::vector<Complex> vector_at(const json& j, const std::string& field) {
  if (!j.is_array() || (j.size() != 2 && j.size() != 4)) fail(field, "expected 2 or 4 complex entries");
  std::vector<Complex> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_at(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

template <std::size_t N>
SquareMatrix<N> matrix_at(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != N) fail(field, "expected " + std::to_string(N) + " rows");
  SquareMatrix<N> m;
  for (std::size_t r = 0; r < N; ++r) {
    const auto row_field = field + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != N) fail(row_field, "expected " + std::to_string(N) + " entries");
    for (std::size_t c = 0; c < N; ++c) m(r, c) = complex_at(j[r][c], row_field + "[" + std::to_string(c) + "]");
  }
  return m;
}

std::size_t count_at(const json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(field, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string string_at(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a string");
  return j.get<std::string>();
}

void reject_unknown(const json& j, const std::string& field, const std::set<std::string>& known) {
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) fail(field + "." + key, "unknown field");
}

PairParams params_at(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  reject_unknown(j, field, {"delta", "alpha", "beta", "e", "f"});
  PairParams p;
  if (j.contains("delta")) p.delta = angle_at(j["delta"], field + ".delta");
  if (j.contains("alpha")) p.alpha = complex_at(j["alpha"], field + ".alpha");
  if (j.contains("beta")) p.beta = complex_at(j["beta"], field + ".beta");
  if (j.contains("e")) p.e = real_at(j["e"], field + ".e");
  if (j.contains("f")) p.f = real_at(j["f"], field + ".f");
  try {
    p.validate();
  } catch (const ValidationError& e) {
    fail(field, e.what());
  }
  return p;
}

Model model_at(const json& j, const std::string& field) {
  const auto s = string_at(j, field);
  if (s == "lqw2") return Model::lqw2;
  if (s == "dqw") return Model::dqw;
  if (s == "lqw4") return Model::lqw4;
  if (s == "grover-family") return Model::grover_family;
  fail(field, "unknown model '" + s + "' (expected lqw2, dqw, lqw4 or grover-family)");
}

}  // namespace

std::string_view to_string(Model m) {
  switch (m) {
    case Model::lqw2:
      return "lqw2";
    case Model::dqw:
      return "dqw";
    case Model::lqw4:
      return "lqw4";
    case Model::grover_family:
      return "grover-family";
  }
  return "?";
}

double parse_angle(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty()) throw ValidationError("empty angle");
  const auto at = s.find("pi");
  if (at == std::string::npos) return parse_number(s, "angle");

  const std::string coef = s.substr(0, at);
  double factor = 1.0;
  if (coef == "-") {
    factor = -1.0;
  } else if (!coef.empty() && coef != "+") {
    factor = parse_number(coef.back() == '*' ? coef.substr(0, coef.size() - 1) : coef, "angle");
  }
  const std::string rest = s.substr(at + 2);
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') throw ValidationError("cannot parse angle '" + std::string(text) + "'");
    divisor = parse_number(rest.substr(1), "angle");
    if (divisor == 0.0) throw ValidationError("angle divisor must be nonzero");
  }
  return factor * std::numbers::pi / divisor;
}

ExperimentConfig parse_config(const json& j) {
  const std::string root = "config";
  if (!j.is_object()) fail(root, "expected a JSON object");
  reject_unknown(j, root,
                 {"name", "model", "steps", "phi", "coin", "pair", "params", "delta", "samples", "compare",
                  "output", "trajectory", "report"});
  ExperimentConfig cfg;
  if (j.contains("name")) cfg.name = string_at(j["name"], root + ".name");
  if (!j.contains("model")) fail(root + ".model", "required");
  cfg.model = model_at(j["model"], root + ".model");
  if (j.contains("steps")) cfg.steps = count_at(j["steps"], root + ".steps");
  if (j.contains("phi")) cfg.phi = vector_at(j["phi"], root + ".phi");
  if (j.contains("coin")) {
    const auto& c = j["coin"];
    if (c.is_array() && c.size() == 4) {
      cfg.coin4 = matrix_at<4>(c, root + ".coin");
    } else {
      cfg.coin2 = matrix_at<2>(c, root + ".coin");
    }
  }
  if (j.contains("pair")) {
    const auto& p = j["pair"];
    const auto field = root + ".pair";
    if (!p.is_object() || !p.contains("m_r") || !p.contains("m_i")) fail(field, "expected {\"m_r\": ..., \"m_i\": ...}");
    reject_unknown(p, field, {"m_r", "m_i"});
    cfg.pair = std::pair{matrix_at<2>(p["m_r"], field + ".m_r"), matrix_at<2>(p["m_i"], field + ".m_i")};
  }
  if (j.contains("params")) cfg.params = params_at(j["params"], root + ".params");
  if (j.contains("delta")) cfg.delta = angle_at(j["delta"], root + ".delta");
  if (j.contains("samples")) {
    cfg.samples = count_at(j["samples"], root + ".samples");
    if (cfg.samples == 0) fail(root + ".samples", "must be positive");
  }
  if (j.contains("compare")) {
    const auto& c = j["compare"];
    const auto field = root + ".compare";
    if (!c.is_object()) fail(field, "expected an object");
    reject_unknown(c, field, {"bin_width", "eps", "max_l1", "max_sup", "max_mass_error"});
    if (c.contains("bin_width")) cfg.compare.bin_width = real_at(c["bin_width"], field + ".bin_width");
    if (c.contains("eps")) cfg.compare.eps = real_at(c["eps"], field + ".eps");
    if (c.contains("max_l1")) cfg.compare.max_l1 = real_at(c["max_l1"], field + ".max_l1");
    if (c.contains("max_sup")) cfg.compare.max_sup = real_at(c["max_sup"], field + ".max_sup");
    if (c.contains("max_mass_error")) cfg.compare.max_mass_error = real_at(c["max_mass_error"], field + ".max_mass_error");
    if (!(cfg.compare.bin_width > 0.0 && cfg.compare.bin_width <= 2.0)) fail(field + ".bin_width", "must lie in (0, 2]");
    if (!(cfg.compare.eps >= 0.0 && cfg.compare.eps < 1.0)) fail(field + ".eps", "must lie in [0, 1)");
  }
  if (j.contains("output")) cfg.output = string_at(j["output"], root + ".output");
  if (j.contains("trajectory")) cfg.trajectory = string_at(j["trajectory"], root + ".trajectory");
  if (j.contains("report")) cfg.report = string_at(j["report"], root + ".report");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": cannot open config");
  try {
    return parse_config(json::parse(in));
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dqw::cli
