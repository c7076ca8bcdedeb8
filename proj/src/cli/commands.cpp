#include <functional>
#include <ostream>

#include "dqw/cli.hpp"
#include "dqw/limits.hpp"
#include "dqw/spectral.hpp"
#include "dqw/walk.hpp"

namespace dqw::cli {

namespace {

using Observer = std::function<void(std::size_t, const Distribution&)>;

template <std::size_t N>
Vector<N> phi_as(const ExperimentConfig& cfg) {
  if (cfg.phi.size() != N)
    throw ValidationError("config.phi: model " + std::string(to_string(cfg.model)) + " needs " + std::to_string(N) +
                          " components, got " + std::to_string(cfg.phi.size()));
  Vector<N> v{};
  for (std::size_t i = 0; i < N; ++i) v[i] = cfg.phi[i];
  return v;
}

std::size_t require_steps(const ExperimentConfig& cfg) {
  if (!cfg.steps) throw ValidationError("config.steps: required");
  return *cfg.steps;
}

double require_delta(const ExperimentConfig& cfg) {
  if (!cfg.delta) throw ValidationError("config.delta: required for model grover-family");
  return *cfg.delta;
}

CoinPair pair_of(const ExperimentConfig& cfg) {
  if (cfg.pair && cfg.params) throw ValidationError("config: give either pair or params, not both");
  if (cfg.pair) {
    try {
      return CoinPair::make(cfg.pair->first, cfg.pair->second);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("config.pair: ") + e.what());
    }
  }
  if (cfg.params) return pair_from_params(*cfg.params);
  throw ValidationError("config.pair: model dqw needs pair or params");
}

// Runs the configured walk for `steps` steps, handing the distribution to
// `observe` at the times selected by `wanted`.
void run_model(const ExperimentConfig& cfg, std::size_t steps, const std::function<bool(std::size_t)>& wanted,
               const Observer& observe) {
  const auto forward = [&](std::size_t t, const auto& state) {
    if (wanted(t)) observe(t, measure(state));
  };
  const auto unitary_coin = [](const auto& m, const char* field) {
    if (!is_unitary(m)) throw ValidationError(std::string(field) + ": coin matrix is not unitary");
  };
  switch (cfg.model) {
    case Model::lqw2: {
      if (!cfg.coin2) throw ValidationError("config.coin: model lqw2 needs a 2x2 coin");
      unitary_coin(*cfg.coin2, "config.coin");
      evolve_lqw2(initial_state<2>(phi_as<2>(cfg)), *cfg.coin2, steps, forward);
      break;
    }
    case Model::dqw:
      evolve_dqw(initial_state<2>(phi_as<2>(cfg)), pair_of(cfg), steps, forward);
      break;
    case Model::lqw4: {
      if (!cfg.coin4) throw ValidationError("config.coin: model lqw4 needs a 4x4 coin");
      unitary_coin(*cfg.coin4, "config.coin");
      evolve_lqw4(initial_state<4>(phi_as<4>(cfg)), *cfg.coin4, steps, forward);
      break;
    }
    case Model::grover_family:
      evolve_lqw4(initial_state<4>(phi_as<4>(cfg)), grover_family_matrix(require_delta(cfg)), steps, forward);
      break;
  }
}

void write_distribution(std::ostream& out, const Distribution& d, std::int64_t lo, std::int64_t hi) {
  out << "position,probability\n";
  for (auto x = lo; x <= hi; ++x) out << x << ',' << format_number(d.at(x)) << '\n';
}

template <typename Density>
void write_density(std::ostream& out, const Density& density, std::size_t samples) {
  out << "x,density\n";
  const double r = density.support_radius();
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = -r + 2.0 * r * (static_cast<double>(i) + 0.5) / static_cast<double>(samples);
    out << format_number(x) << ',' << format_number(density.density(x)) << '\n';
  }
}

json grover_header(const GroverLimit& g) {
  return {{"kind", "grover"}, {"delta", g.delta}, {"p", g.p},   {"q", g.q},
          {"d0", g.d0},       {"d1", g.d1},       {"d2", g.d2}, {"A", g.a_coeff},
          {"support_radius", g.support_radius()}, {"corresponds_to_dqw", g.corresponds_to_dqw}};
}

json konno_header(const KonnoLimit& k) {
  return {{"kind", "konno"}, {"r", k.r}, {"C", k.c_coeff}, {"A", 0.0}, {"support_radius", k.support_radius()}};
}

struct Snapshots {
  Distribution at_n;
  Distribution at_next;
};

Snapshots snapshots(const ExperimentConfig& cfg, std::size_t n) {
  Snapshots s;
  run_model(cfg, n + 1, [n](std::size_t t) { return t >= n; },
            [&](std::size_t t, const Distribution& d) { (t == n ? s.at_n : s.at_next) = d; });
  return s;
}

template <typename Density>
json comparison_body(const ExperimentConfig& cfg, std::size_t n, const Snapshots& snap, const Density& density,
                     double predicted_a, const std::function<double(int)>& limit_moment) {
  const auto& opt = cfg.compare;
  const auto cmp = compare_binned(snap.at_n, n, density, opt.bin_width, opt.eps);
  const double mass = localization_mass(snap.at_n, n, snap.at_next, opt.eps);

  // mass per unit length on |p| - w < |x/n| <= |p|, both sides together
  const double r = density.support_radius();
  const double w = opt.bin_width;
  double edge = 0.0;
  const double nd = static_cast<double>(n);
  for (auto x = snap.at_n.min_position(); x <= snap.at_n.max_position(); ++x) {
    const double y = std::abs(static_cast<double>(x)) / nd;
    if (y > r - w && y <= r) edge += snap.at_n.at(x);
  }
  const double limit_edge = interval_mass(density, -r, -r + w) + interval_mass(density, r - w, r);

  json moments = json::array();
  for (int order = 1; order <= 4; ++order)
    moments.push_back({{"order", order}, {"empirical", empirical_moment(snap.at_n, n, order)},
                       {"limit", limit_moment(order)}});

  json report = {{"command", "compare"},
                 {"name", cfg.name},
                 {"model", to_string(cfg.model)},
                 {"steps", n},
                 {"bin_width", opt.bin_width},
                 {"eps", opt.eps},
                 {"bins", cmp.bins},
                 {"l1", cmp.l1},
                 {"sup", cmp.sup},
                 {"localization_mass", mass},
                 {"predicted_A", predicted_a},
                 {"mass_error", std::abs(mass - predicted_a)},
                 {"edge_density", edge / (2.0 * w)},
                 {"limit_edge_density", limit_edge / (2.0 * w)},
                 {"moments", moments}};

  bool pass = true;
  json thresholds = json::object();
  if (opt.max_l1) {
    thresholds["max_l1"] = *opt.max_l1;
    pass = pass && cmp.l1 <= *opt.max_l1;
  }
  if (opt.max_sup) {
    thresholds["max_sup"] = *opt.max_sup;
    pass = pass && cmp.sup <= *opt.max_sup;
  }
  if (opt.max_mass_error) {
    thresholds["max_mass_error"] = *opt.max_mass_error;
    pass = pass && std::abs(mass - predicted_a) <= *opt.max_mass_error;
  }
  report["thresholds"] = thresholds;
  report["pass"] = pass;
  return report;
}

}  // namespace

json simulate(const ExperimentConfig& cfg, std::ostream& csv, std::ostream* trajectory) {
  const std::size_t n = require_steps(cfg);
  const auto lo = -static_cast<std::int64_t>(n);
  const auto hi = static_cast<std::int64_t>(n);
  Distribution final_dist;
  if (trajectory) *trajectory << "step,position,probability\n";
  run_model(cfg, n, [n, trajectory](std::size_t t) { return trajectory != nullptr || t == n; },
            [&](std::size_t t, const Distribution& d) {
              if (trajectory) {
                const auto ts = static_cast<std::int64_t>(t);
                for (auto x = -ts; x <= ts; ++x) *trajectory << t << ',' << x << ',' << format_number(d.at(x)) << '\n';
              }
              if (t == n) final_dist = d;
            });
  write_distribution(csv, final_dist, lo, hi);
  return {{"command", "simulate"}, {"name", cfg.name},          {"model", to_string(cfg.model)},
          {"steps", n},            {"total", final_dist.total()}, {"positions", 2 * n + 1}};
}

json limit(const ExperimentConfig& cfg, std::ostream& csv) {
  switch (cfg.model) {
    case Model::grover_family: {
      const auto g = grover_limit(require_delta(cfg), phi_as<4>(cfg));
      write_density(csv, g, cfg.samples);
      auto header = grover_header(g);
      header["name"] = cfg.name;
      return header;
    }
    case Model::lqw2: {
      if (!cfg.coin2) throw ValidationError("config.coin: model lqw2 needs a 2x2 coin");
      const auto k = konno_limit(*cfg.coin2, phi_as<2>(cfg));
      write_density(csv, k, cfg.samples);
      auto header = konno_header(k);
      header["name"] = cfg.name;
      return header;
    }
    default:
      throw ValidationError("config.model: limit measures exist for grover-family and lqw2 only");
  }
}

json compare(const ExperimentConfig& cfg) {
  const std::size_t n = require_steps(cfg);
  if (n < 100) throw ValidationError("config.steps: compare needs at least 100 steps");
  switch (cfg.model) {
    case Model::grover_family: {
      const auto g = grover_limit(require_delta(cfg), phi_as<4>(cfg));
      const auto snap = snapshots(cfg, n);
      auto report = comparison_body(cfg, n, snap, g, g.a_coeff,
                                    [&g](int order) { return limit_measure_moment(g, order); });
      report["limit"] = grover_header(g);
      return report;
    }
    case Model::lqw2: {
      if (!cfg.coin2) throw ValidationError("config.coin: model lqw2 needs a 2x2 coin");
      const auto k = konno_limit(*cfg.coin2, phi_as<2>(cfg));
      const auto snap = snapshots(cfg, n);
      auto report = comparison_body(cfg, n, snap, k, 0.0, [&k](int order) { return density_moment(k, order); });
      report["limit"] = konno_header(k);
      return report;
    }
    default:
      throw ValidationError("config.model: no limit measure to compare against for model " +
                            std::string(to_string(cfg.model)) + " (use grover-family or lqw2)");
  }
}

int compare_status(const json& report) {
  return report.value("pass", true) ? kSuccess : kToleranceFailure;
}

json classify(const ExperimentConfig& cfg) {
  PairParams params;
  if (cfg.params) {
    params = *cfg.params;
  } else if (cfg.model == Model::grover_family) {
    params = GroverFamily{require_delta(cfg)}.params();
  } else {
    throw ValidationError("config.params: required (or model grover-family with delta)");
  }
  const auto tag = classify_lemma2(params);
  const auto cond = lemma2_conditions(params);
  const auto spectrum = check_pm_one_spectrum(lift_coin(pair_from_params(params)));
  const bool consistent = (tag != Lemma2Case::none) == spectrum.both_everywhere();
  return {{"command", "classify"},
          {"name", cfg.name},
          {"case", to_string(tag)},
          {"conditions", {{"x2_factor", cond.x2_factor}, {"imag_factor", cond.imag_factor}, {"holds", cond.holds}}},
          {"spectrum",
           {{"grid_points", spectrum.grid_points},
            {"plus_one_everywhere", spectrum.plus_one_everywhere},
            {"minus_one_everywhere", spectrum.minus_one_everywhere},
            {"worst_plus", spectrum.worst_plus},
            {"worst_minus", spectrum.worst_minus}}},
          {"consistent", consistent}};
}

json check(const ExperimentConfig& cfg) {
  if (!cfg.pair) throw ValidationError("config.pair: required");
  const auto d = check_isometry(cfg.pair->first, cfg.pair->second);
  json failed = json::array();
  if (!d.unitary_r) failed.push_back("unitary_r");
  if (!d.unitary_i) failed.push_back("unitary_i");
  if (!d.product_real) failed.push_back("product_real");
  return {{"command", "check"},
          {"name", cfg.name},
          {"unitary_r", d.unitary_r},
          {"unitary_i", d.unitary_i},
          {"product_real", d.product_real},
          {"is_isometry", d.is_isometry},
          {"verdict", d.is_isometry ? "pass" : "fail"},
          {"failed", failed}};
}

}  // namespace dqw::cli
