#include "pcf/config.hpp"

#include <json.hpp>

#include "pcf/errors.hpp"

namespace pcf {

using json = nlohmann::ordered_json;

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::run: return "run";
    case ExperimentKind::soliton_check: return "soliton-check";
    case ExperimentKind::virial_study: return "virial-study";
    case ExperimentKind::decay_study: return "decay-study";
    case ExperimentKind::convergence: return "convergence";
    default: return "sweep";
  }
}

namespace {

ExperimentKind experiment_from(const std::string& s) {
  for (auto k : {ExperimentKind::run, ExperimentKind::soliton_check, ExperimentKind::virial_study,
                 ExperimentKind::decay_study, ExperimentKind::convergence, ExperimentKind::sweep})
    if (to_string(k) == s) return k;
  throw InvalidInput("config: unknown experiment \"" + s +
                     "\" (expected run, soliton-check, virial-study, decay-study, convergence "
                     "or sweep)");
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& path) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw InvalidInput("config: unknown key \"" + path + key + "\"");
  }
}

template <typename T>
void get_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

BumpShape shape_from(const std::string& s, const std::string& path) {
  if (s == "smooth-compact") return BumpShape::smooth_compact;
  if (s == "gaussian-truncated") return BumpShape::gaussian_truncated;
  throw InvalidInput("config: " + path +
                     ".shape must be smooth-compact or gaussian-truncated, got \"" + s + "\"");
}

std::string shape_name(BumpShape s) {
  return s == BumpShape::smooth_compact ? "smooth-compact" : "gaussian-truncated";
}

BumpSpec parse_bump(const json& j, BumpSpec defaults, const std::string& path) {
  reject_unknown(j, {"epsilon", "center", "width", "shape"}, path + ".");
  BumpSpec out = defaults;
  get_if(j, "epsilon", out.epsilon);
  get_if(j, "center", out.center);
  get_if(j, "width", out.width);
  if (j.contains("shape")) out.shape = shape_from(j.at("shape").get<std::string>(), path);
  if (!(out.width > 0.0)) throw InvalidInput("config: " + path + ".width must be positive");
  if (out.epsilon < 0.0) throw InvalidInput("config: " + path + ".epsilon must be nonnegative");
  return out;
}

json emit_bump(const BumpSpec& b) {
  return json{{"epsilon", b.epsilon},
              {"center", b.center},
              {"width", b.width},
              {"shape", shape_name(b.shape)}};
}

}  // namespace

FieldState ExperimentConfig::make_initial_state(const Grid& g) const {
  const auto& d = initial_data;
  if (d.type == "bump") return bump_data(d.bump_L, d.bump_phi, d.lambda_bg, g);
  if (d.type == "traveling-wave") {
    const auto dir = d.direction == "left" ? Direction::left : Direction::right;
    return traveling_wave(d.wave_h.profile(), d.wave_k.profile(), dir, d.lambda_bg, g, 0.0);
  }
  if (d.type == "singular-soliton")
    return singular_soliton_state(SolitonParams(d.mu), 0.0, g);
  if (d.type == "finite-energy-soliton")
    return finite_energy_soliton_state(d.lambda_bg, d.epsilon, d.theta.profile(),
                                       SolitonParams(d.mu), 0.0, g);
  throw InvalidInput("config: unknown initial_data.type \"" + d.type + "\"");
}

LambdaWeightKind ExperimentConfig::lambda_weight_kind() const {
  return diagnostics.lambda_weight == "t2-log" ? LambdaWeightKind::t2_over_log
                                               : LambdaWeightKind::t_over_log2;
}

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("config: not valid JSON: ") + e.what());
  }
  reject_unknown(j,
                 {"experiment", "grid", "solver", "initial_data", "diagnostics", "decay", "levels",
                  "sweep_epsilons", "snapshot_times", "output_dir", "seed"},
                 "");
  ExperimentConfig c;
  if (j.contains("experiment")) c.experiment = experiment_from(j.at("experiment"));

  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, {"x_min", "x_max", "nx"}, "grid.");
    get_if(g, "x_min", c.grid.x_min);
    get_if(g, "x_max", c.grid.x_max);
    get_if(g, "nx", c.grid.nx);
    if (c.grid.nx < 8) throw InvalidInput("config: grid.nx must be >= 8");
    if (!(c.grid.x_max > c.grid.x_min))
      throw InvalidInput("config: grid.x_max must exceed grid.x_min");
  }

  if (j.contains("solver")) {
    const auto& s = j.at("solver");
    reject_unknown(s, {"t_end", "cfl", "boundary", "singularity_floor", "record_every"},
                   "solver.");
    get_if(s, "t_end", c.solver.t_end);
    get_if(s, "cfl", c.solver.cfl);
    get_if(s, "singularity_floor", c.solver.singularity_floor);
    get_if(s, "record_every", c.solver.record_every);
    if (s.contains("boundary")) {
      const std::string b = s.at("boundary");
      if (b == "outgoing") c.solver.boundary = Boundary::outgoing;
      else if (b == "frozen") c.solver.boundary = Boundary::frozen;
      else throw InvalidInput("config: solver.boundary must be outgoing or frozen");
    }
    if (!(c.solver.cfl > 0.0 && c.solver.cfl <= 1.0))
      throw InvalidInput("config: solver.cfl must lie in (0, 1]");
    if (!(c.solver.singularity_floor > 0.0))
      throw InvalidInput("config: solver.singularity_floor must be positive");
    if (c.solver.record_every < 1)
      throw InvalidInput("config: solver.record_every must be a positive integer");
  }

  if (j.contains("initial_data")) {
    const auto& d = j.at("initial_data");
    reject_unknown(d,
                   {"type", "lambda_bg", "Ltil", "phi", "direction", "h", "k", "mu", "epsilon",
                    "theta"},
                   "initial_data.");
    auto& out = c.initial_data;
    get_if(d, "type", out.type);
    get_if(d, "lambda_bg", out.lambda_bg);
    if (d.contains("Ltil")) out.bump_L = parse_bump(d.at("Ltil"), out.bump_L, "initial_data.Ltil");
    if (d.contains("phi")) out.bump_phi = parse_bump(d.at("phi"), out.bump_phi, "initial_data.phi");
    get_if(d, "direction", out.direction);
    if (d.contains("h")) out.wave_h = parse_bump(d.at("h"), out.wave_h, "initial_data.h");
    if (d.contains("k")) out.wave_k = parse_bump(d.at("k"), out.wave_k, "initial_data.k");
    get_if(d, "mu", out.mu);
    get_if(d, "epsilon", out.epsilon);
    if (d.contains("theta")) out.theta = parse_bump(d.at("theta"), out.theta, "initial_data.theta");
    if (out.type != "bump" && out.type != "traveling-wave" && out.type != "singular-soliton" &&
        out.type != "finite-energy-soliton")
      throw InvalidInput("config: unknown initial_data.type \"" + out.type + "\"");
    if (out.direction != "left" && out.direction != "right")
      throw InvalidInput("config: initial_data.direction must be left or right");
    if (!(out.lambda_bg > 0.0)) throw InvalidInput("config: initial_data.lambda_bg must be > 0");
    if (out.type == "singular-soliton" && !(out.mu > 1.0))
      throw InvalidInput("config: singular-soliton requires mu > 1");
    if (out.type == "finite-energy-soliton" && !(out.mu > 0.0 && out.mu < 1.0))
      throw InvalidInput("config: finite-energy-soliton requires 0 < mu < 1");
  }

  if (j.contains("diagnostics")) {
    const auto& d = j.at("diagnostics");
    reject_unknown(d, {"v_list", "delta", "lambda_weight", "weighted_norms"}, "diagnostics.");
    get_if(d, "v_list", c.diagnostics.v_list);
    get_if(d, "delta", c.diagnostics.delta);
    get_if(d, "lambda_weight", c.diagnostics.lambda_weight);
    get_if(d, "weighted_norms", c.diagnostics.weighted_norms);
    for (double v : c.diagnostics.v_list)
      if (!(std::abs(v) < 1.0))
        throw InvalidInput("config: diagnostics.v_list entries must satisfy |v| < 1, got " +
                           std::to_string(v));
    if (!(c.diagnostics.delta > 0.0 && c.diagnostics.delta < 1.0))
      throw InvalidInput("config: diagnostics.delta must lie in (0, 1)");
    if (c.diagnostics.lambda_weight != "t-log2" && c.diagnostics.lambda_weight != "t2-log")
      throw InvalidInput("config: diagnostics.lambda_weight must be t-log2 or t2-log");
  }

  if (j.contains("decay")) {
    const auto& d = j.at("decay");
    reject_unknown(d, {"v", "t_early", "t_late"}, "decay.");
    get_if(d, "v", c.decay.v);
    get_if(d, "t_early", c.decay.t_early);
    get_if(d, "t_late", c.decay.t_late);
    if (!(std::abs(c.decay.v) < 1.0))
      throw InvalidInput("config: decay.v must satisfy |v| < 1 (the interior decay window), got " +
                         std::to_string(c.decay.v));
    if (!(c.decay.t_early >= 2.0 && c.decay.t_late > c.decay.t_early))
      throw InvalidInput("config: decay times need 2 <= t_early < t_late");
  }

  get_if(j, "levels", c.levels);
  if (c.levels < 3) throw InvalidInput("config: levels must be >= 3");
  get_if(j, "sweep_epsilons", c.sweep_epsilons);
  get_if(j, "snapshot_times", c.snapshot_times);
  get_if(j, "output_dir", c.output_dir);
  get_if(j, "seed", c.seed);
  return c;
}

std::string emit_config(const ExperimentConfig& c) {
  json j;
  j["experiment"] = to_string(c.experiment);
  j["grid"] = {{"x_min", c.grid.x_min}, {"x_max", c.grid.x_max}, {"nx", c.grid.nx}};
  j["solver"] = {{"t_end", c.solver.t_end},
                 {"cfl", c.solver.cfl},
                 {"boundary", to_string(c.solver.boundary)},
                 {"singularity_floor", c.solver.singularity_floor},
                 {"record_every", c.solver.record_every}};
  j["initial_data"] = {{"type", c.initial_data.type},
                       {"lambda_bg", c.initial_data.lambda_bg},
                       {"Ltil", emit_bump(c.initial_data.bump_L)},
                       {"phi", emit_bump(c.initial_data.bump_phi)},
                       {"direction", c.initial_data.direction},
                       {"h", emit_bump(c.initial_data.wave_h)},
                       {"k", emit_bump(c.initial_data.wave_k)},
                       {"mu", c.initial_data.mu},
                       {"epsilon", c.initial_data.epsilon},
                       {"theta", emit_bump(c.initial_data.theta)}};
  j["diagnostics"] = {{"v_list", c.diagnostics.v_list},
                      {"delta", c.diagnostics.delta},
                      {"lambda_weight", c.diagnostics.lambda_weight},
                      {"weighted_norms", c.diagnostics.weighted_norms}};
  j["decay"] = {{"v", c.decay.v}, {"t_early", c.decay.t_early}, {"t_late", c.decay.t_late}};
  j["levels"] = c.levels;
  j["sweep_epsilons"] = c.sweep_epsilons;
  j["snapshot_times"] = c.snapshot_times;
  j["output_dir"] = c.output_dir;
  j["seed"] = c.seed;
  return j.dump(2) + "\n";
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return emit_config(a) == emit_config(b);
}

}  // namespace pcf
