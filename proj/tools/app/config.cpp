#include "config.hpp"

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <type_traits>

#include <json.hpp>

#include "kinetic/format.hpp"

namespace kinetic::app {
namespace {

using nlohmann::json;

// Reads one JSON object, tracking the dotted path for diagnostics and
// rejecting keys nobody asked for.
class Block {
 public:
  Block(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& field, const std::string& why) {
    throw ConfigError("config field '" + field + "': " + why);
  }

  [[nodiscard]] std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[nodiscard]] const json* find(const std::string& key) {
    seen_.insert(key);
    auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(field(key), "expected a number");
      out = v->get<double>();
    }
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (!v->is_number_integer()) fail(field(key), "expected an integer");
      const auto raw = v->get<long long>();
      if (raw < 0) fail(field(key), "must be nonnegative");
      out = static_cast<Int>(raw);
    }
  }

  void text(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(field(key), "expected a string");
      out = v->get<std::string>();
    }
  }

  void flag(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (!v->is_boolean()) fail(field(key), "expected true or false");
      out = v->get<bool>();
    }
  }

  template <class T>
  void triple(const std::string& key, std::array<T, 3>& out, std::size_t& count) {
    count = 0;
    if (const json* v = find(key)) {
      if (!v->is_array() || v->empty() || v->size() > 3) fail(field(key), "expected an array of 1 to 3 numbers");
      for (std::size_t d = 0; d < v->size(); ++d) {
        const json& e = (*v)[d];
        if constexpr (std::is_integral_v<T>) {
          if (!e.is_number_integer()) fail(field(key) + "[" + std::to_string(d) + "]", "expected an integer");
        } else {
          if (!e.is_number()) fail(field(key) + "[" + std::to_string(d) + "]", "expected a number");
        }
        out[d] = e.get<T>();
      }
      count = v->size();
    }
  }

  [[nodiscard]] std::optional<Block> child(const std::string& key) {
    if (const json* v = find(key)) return Block(*v, field(key));
    return std::nullopt;
  }

  void finish() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.contains(it.key())) fail(field(it.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

void line_column(const std::string& text, std::size_t byte, std::size_t& line, std::size_t& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

json to_json(const RunConfig& c) {
  json j;
  j["grid"] = {{"dim", c.grid.dim},
               {"cells", std::vector<int>(c.grid.cells.begin(), c.grid.cells.begin() + c.grid.dim)},
               {"extent", std::vector<double>(c.grid.extent.begin(), c.grid.extent.begin() + c.grid.dim)},
               {"shells", c.grid.shells},
               {"angles", c.grid.angles},
               {"polar_nodes", c.grid.polar_nodes},
               {"s_max", c.grid.s_max}};
  j["kernel"] = {{"profile", c.kernel.profile}, {"kappa", c.kernel.kappa}, {"lambda", c.kernel.lambda}};
  j["damping"] = {{"kind", c.damping.kind}, {"c", c.damping.c}};
  j["picard"] = {{"horizon", c.picard.horizon},   {"steps", c.picard.steps},       {"tol_abs", c.picard.tol_abs},
                 {"tol_rel", c.picard.tol_rel},   {"max_iter", c.picard.max_iter}, {"moment_order", c.picard.moment_order}};
  j["initial"] = {{"generator", c.initial.generator},
                  {"background", c.initial.background},
                  {"amplitude", c.initial.amplitude},
                  {"width", c.initial.width},
                  {"drift", c.initial.drift},
                  {"temperature", c.initial.temperature},
                  {"anisotropy", c.initial.anisotropy},
                  {"snapshot", c.initial.snapshot},
                  {"mollify_eps", c.initial.mollify_eps}};
  j["output"] = {{"directory", c.output.directory},
                 {"snapshots", c.output.snapshots},
                 {"moments", c.output.moments},
                 {"splitting", c.output.splitting}};
  return j;
}

}  // namespace

std::string RunConfig::canonical() const { return to_json(*this).dump(); }

std::string RunConfig::checksum() const { return hex64(fnv1a64(canonical())); }

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 0;
    std::size_t col = 0;
    line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, col);
    std::ostringstream msg;
    msg << "config syntax error at line " << line << ", column " << col << ": " << e.what();
    throw ConfigError(msg.str());
  }

  RunConfig cfg;
  cfg.base_dir = base_dir;
  Block top(root, "");
  if (auto b = top.child("grid")) {
    b->integer("dim", cfg.grid.dim);
    std::size_t n_cells = 0;
    std::size_t n_extent = 0;
    b->triple("cells", cfg.grid.cells, n_cells);
    b->triple("extent", cfg.grid.extent, n_extent);
    if (n_cells != 0 && static_cast<int>(n_cells) != cfg.grid.dim) {
      Block::fail("grid.cells", "needs exactly dim = " + std::to_string(cfg.grid.dim) + " entries");
    }
    if (n_extent != 0 && static_cast<int>(n_extent) != cfg.grid.dim) {
      Block::fail("grid.extent", "needs exactly dim = " + std::to_string(cfg.grid.dim) + " entries");
    }
    b->integer("shells", cfg.grid.shells);
    b->integer("angles", cfg.grid.angles);
    b->integer("polar_nodes", cfg.grid.polar_nodes);
    b->number("s_max", cfg.grid.s_max);
    b->finish();
  }
  for (int d = cfg.grid.dim; d < 3 && d >= 0; ++d) {
    cfg.grid.cells[d] = 1;
    cfg.grid.extent[d] = 1.0;
  }
  if (auto b = top.child("kernel")) {
    b->text("profile", cfg.kernel.profile);
    b->number("kappa", cfg.kernel.kappa);
    b->number("lambda", cfg.kernel.lambda);
    b->finish();
  }
  if (auto b = top.child("damping")) {
    b->text("kind", cfg.damping.kind);
    b->number("c", cfg.damping.c);
    b->finish();
  }
  if (auto b = top.child("picard")) {
    b->number("horizon", cfg.picard.horizon);
    b->integer("steps", cfg.picard.steps);
    b->number("tol_abs", cfg.picard.tol_abs);
    b->number("tol_rel", cfg.picard.tol_rel);
    b->integer("max_iter", cfg.picard.max_iter);
    b->number("moment_order", cfg.picard.moment_order);
    b->finish();
  }
  if (auto b = top.child("initial")) {
    b->text("generator", cfg.initial.generator);
    b->number("background", cfg.initial.background);
    b->number("amplitude", cfg.initial.amplitude);
    b->number("width", cfg.initial.width);
    std::size_t n_drift = 0;
    b->triple("drift", cfg.initial.drift, n_drift);
    if (n_drift != 0 && n_drift != 3) Block::fail("initial.drift", "velocity is three-dimensional: give 3 entries");
    b->number("temperature", cfg.initial.temperature);
    b->number("anisotropy", cfg.initial.anisotropy);
    b->text("snapshot", cfg.initial.snapshot);
    b->number("mollify_eps", cfg.initial.mollify_eps);
    b->finish();
  }
  if (auto b = top.child("output")) {
    b->text("directory", cfg.output.directory);
    b->flag("snapshots", cfg.output.snapshots);
    b->flag("moments", cfg.output.moments);
    b->flag("splitting", cfg.output.splitting);
    b->finish();
  }
  top.finish();
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

DampingModel make_damping(const DampingConfig& cfg) {
  if (cfg.kind == "zero") return DampingModel::zero();
  if (cfg.kind == "constant") return DampingModel::constant(cfg.c);
  if (cfg.kind == "linear") return DampingModel::linear(cfg.c);
  if (cfg.kind == "saturating") return DampingModel::saturating(cfg.c);
  throw ConfigError("config field 'damping.kind': unknown kind '" + cfg.kind +
                    "' (expected zero, constant, linear or saturating)");
}

AngularProfile make_profile(const KernelConfig& cfg) {
  if (cfg.profile == "isotropic") return AngularProfile::isotropic();
  if (cfg.profile == "forward-peaked") return AngularProfile::forward_peaked(cfg.kappa);
  throw ConfigError("config field 'kernel.profile': unknown profile '" + cfg.profile +
                    "' (expected isotropic or forward-peaked)");
}

void validate(const RunConfig& cfg) {
  auto check = [](bool ok, const char* field, const std::string& why) {
    if (!ok) Block::fail(field, why);
  };
  const auto& g = cfg.grid;
  check(g.dim >= 1 && g.dim <= 3, "grid.dim", "must be 1, 2 or 3");
  for (int d = 0; d < g.dim; ++d) {
    check(g.cells[d] >= 2, "grid.cells", "every active axis needs at least 2 cells");
    check(g.extent[d] > 0.0, "grid.extent", "every side length must be positive");
  }
  check(g.shells >= 1, "grid.shells", "must be at least 1");
  check(g.angles >= 2, "grid.angles", "must be at least 2");
  check(g.s_max > 0.0, "grid.s_max", "must be positive");
  try {
    (void)build_velocity_grid(g.shells, g.angles, g.s_max, g.polar_nodes);
  } catch (const DomainError& e) {
    Block::fail("grid.angles", e.what());
  }
  check(cfg.kernel.lambda >= 0.0, "kernel.lambda", "must be nonnegative");
  check(cfg.damping.c >= 0.0, "damping.c", "must be nonnegative");
  make_damping(cfg.damping);
  make_profile(cfg.kernel);
  check(cfg.picard.horizon > 0.0, "picard.horizon", "must be positive");
  check(cfg.picard.steps >= 1, "picard.steps", "must be at least 1");
  check(cfg.picard.tol_abs > 0.0, "picard.tol_abs", "must be positive");
  check(cfg.picard.tol_rel > 0.0, "picard.tol_rel", "must be positive");
  check(cfg.picard.max_iter >= 1, "picard.max_iter", "must be at least 1");
  check(cfg.picard.moment_order >= 0.0, "picard.moment_order", "must be nonnegative");
  const auto& ini = cfg.initial;
  static const std::set<std::string> generators{"gaussian-beam", "two-stream", "homogeneous-anisotropic",
                                                "from-snapshot"};
  check(generators.contains(ini.generator), "initial.generator",
        "unknown generator '" + ini.generator +
            "' (expected gaussian-beam, two-stream, homogeneous-anisotropic or from-snapshot)");
  check(ini.generator != "from-snapshot" || !ini.snapshot.empty(), "initial.snapshot",
        "required by the from-snapshot generator");
  check(ini.background >= 0.0, "initial.background", "must be nonnegative");
  check(ini.amplitude >= 0.0, "initial.amplitude", "must be nonnegative");
  check(ini.width > 0.0, "initial.width", "must be positive");
  check(ini.temperature > 0.0, "initial.temperature", "must be positive");
  check(std::abs(ini.anisotropy) <= 1.0, "initial.anisotropy", "must lie in [-1, 1] to keep f nonnegative");
  check(ini.mollify_eps >= 0.0, "initial.mollify_eps", "must be nonnegative");
  for (int d = 0; d < g.dim; ++d) {
    check(ini.mollify_eps <= 0.5 * g.extent[d], "initial.mollify_eps", "exceeds half the box");
  }
  check(!cfg.output.directory.empty(), "output.directory", "must not be empty");
}

}  // namespace kinetic::app
