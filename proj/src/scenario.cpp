#include "adhesion1d/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adhesion1d/io.hpp"
#include "adhesion1d/numeric.hpp"

namespace adhesion1d {

using nlohmann::json;

namespace {

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) throw std::invalid_argument("unknown field '" + item.key() + "' in " + where);
  }
}

bool filesystem_safe(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.'))
      return false;
  return true;
}

std::function<double(double)> velocity_field(const json& v) {
  expect_keys(v, {"name", "c", "a", "b", "amp", "freq", "phase"}, "velocity");
  const std::string name = v.at("name").get<std::string>();
  if (name == "constant") {
    const double c = v.at("c").get<double>();
    return [c](double) { return c; };
  }
  if (name == "linear") {
    const double a = v.at("a").get<double>();
    const double b = v.at("b").get<double>();
    return [a, b](double x) { return a + b * x; };
  }
  if (name == "sine") {
    const double amp = v.at("amp").get<double>();
    const double freq = v.at("freq").get<double>();
    const double phase = v.value("phase", 0.0);
    return [amp, freq, phase](double x) { return amp * std::sin(freq * x + phase); };
  }
  throw std::invalid_argument("unknown velocity family '" + name + "'");
}

MassVelocityState family_state(const std::string& family_text, std::uint64_t seed) {
  const json f = json::parse(family_text);
  const std::string name = f.at("name").get<std::string>();
  if (name == "uniform") {
    expect_keys(f, {"name", "a", "b", "n", "velocity"}, "family");
    const double a = f.at("a").get<double>();
    const double b = f.at("b").get<double>();
    if (!(a < b)) throw std::invalid_argument("uniform family needs a < b");
    const auto n = f.at("n").get<std::size_t>();
    auto vel = velocity_field(f.at("velocity"));
    return discretize([a, b](double w) { return a + (b - a) * w; }, vel, n);
  }
  if (name == "random") {
    expect_keys(f, {"name", "n", "pos_lo", "pos_hi", "vel_lo", "vel_hi"}, "family");
    const auto n = f.at("n").get<std::size_t>();
    SplitMix64 rng(seed);
    return random_state(rng, n, f.value("pos_lo", 0.0), f.value("pos_hi", 1.0),
                        f.value("vel_lo", -1.0), f.value("vel_hi", 1.0));
  }
  throw std::invalid_argument("unknown initial family '" + name + "'");
}

}  // namespace

MassVelocityState Scenario::initial() const {
  if (!inline_atoms.empty()) return MassVelocityState(inline_atoms);
  if (!csv_path.empty()) {
    std::ifstream in(csv_path);
    if (!in) throw std::invalid_argument("cannot open initial state file: " + csv_path);
    return read_state(in, renormalize);
  }
  return family_state(family_json, seed);
}

Scenario Scenario::from_json_text(const std::string& text, const std::filesystem::path& base_dir) {
  const json j = json::parse(text);
  expect_keys(j, {"version", "id", "seed", "initial", "times", "suites", "tolerances"},
              "scenario");
  if (j.at("version").get<int>() != 1)
    throw std::invalid_argument("unsupported scenario version");

  Scenario sc;
  sc.id = j.at("id").get<std::string>();
  if (!filesystem_safe(sc.id)) throw std::invalid_argument("scenario id must be filesystem-safe");
  sc.seed = j.value("seed", std::uint64_t{0});

  const json& init = j.at("initial");
  expect_keys(init, {"atoms", "csv", "family", "renormalize"}, "initial");
  sc.renormalize = init.value("renormalize", false);
  int sources = 0;
  if (init.contains("atoms")) {
    ++sources;
    for (const auto& row : init.at("atoms")) {
      if (!row.is_array() || row.size() != 3)
        throw std::invalid_argument("inline atom rows must be [m, x, v]");
      sc.inline_atoms.push_back(
          {row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
    }
    if (sc.inline_atoms.empty()) throw std::invalid_argument("inline atoms must be nonempty");
  }
  if (init.contains("csv")) {
    ++sources;
    std::filesystem::path p = init.at("csv").get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    sc.csv_path = p.string();
  }
  if (init.contains("family")) {
    ++sources;
    sc.family_json = init.at("family").dump();
  }
  if (sources != 1)
    throw std::invalid_argument("initial needs exactly one of atoms, csv, family");

  if (j.contains("times")) {
    for (const auto& t : j.at("times")) sc.times.push_back(t.get<double>());
    for (std::size_t i = 0; i < sc.times.size(); ++i) {
      if (sc.times[i] < 0.0) throw std::invalid_argument("times must be >= 0");
      if (i > 0 && sc.times[i] < sc.times[i - 1])
        throw std::invalid_argument("times must be nondecreasing");
    }
  }
  if (j.contains("suites"))
    for (const auto& s : j.at("suites")) sc.suites.push_back(s.get<std::string>());
  if (j.contains("tolerances"))
    for (const auto& item : j.at("tolerances").items())
      sc.tolerances[item.key()] = item.value().get<double>();
  return sc;
}

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  const json j = json::parse(ss.str());
  std::vector<Scenario> out;
  if (j.contains("scenarios")) {
    expect_keys(j, {"version", "scenarios"}, "scenario bundle");
    if (j.at("version").get<int>() != 1)
      throw std::invalid_argument("unsupported scenario version");
    for (const auto& s : j.at("scenarios"))
      out.push_back(Scenario::from_json_text(s.dump(), path.parent_path()));
  } else {
    out.push_back(Scenario::from_json_text(ss.str(), path.parent_path()));
  }
  return out;
}

std::vector<Scenario> bundled_scenarios() {
  static const char* kTexts[] = {
      R"({"version":1,"id":"head-on-pair","times":[0,0.25,0.5,1,2],
          "initial":{"atoms":[[0.5,0,1],[0.5,1,-1]]}})",
      R"({"version":1,"id":"three-cluster","times":[0,0.25,0.5,1,2],
          "initial":{"atoms":[[0.3333333333333333,0,2],[0.3333333333333333,1,0],
                              [0.3333333333333333,2,-2]]}})",
      R"({"version":1,"id":"uniform-sine","seed":11,"times":[0,0.3,1,3],
          "initial":{"family":{"name":"uniform","a":0,"b":1,"n":24,
                     "velocity":{"name":"sine","amp":1,"freq":3,"phase":0.5}}}})",
      R"({"version":1,"id":"random-20","seed":20240601,"times":[0,0.5,1,5],
          "initial":{"family":{"name":"random","n":20}}})",
      R"({"version":1,"id":"monotone-velocity","seed":3,"times":[0,0.5,1,4],
          "initial":{"family":{"name":"uniform","a":0,"b":1,"n":16,
                     "velocity":{"name":"linear","a":-0.5,"b":1}}}})",
  };
  std::vector<Scenario> out;
  for (const char* t : kTexts) out.push_back(Scenario::from_json_text(t));
  return out;
}

std::uint64_t config_hash(const std::string& canonical_text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

MassVelocityState random_state(SplitMix64& rng, std::size_t n, double pos_lo, double pos_hi,
                               double vel_lo, double vel_hi) {
  if (n == 0) throw std::invalid_argument("random_state: need n >= 1");
  std::vector<double> masses(n), positions(n);
  NeumaierSum total;
  for (auto& m : masses) {
    m = rng.uniform(0.2, 1.0);
    total.add(m);
  }
  const double sum = total.get();
  NeumaierSum renorm;
  for (auto& m : masses) {
    m /= sum;
    renorm.add(m);
  }
  masses.back() += 1.0 - renorm.get();
  for (auto& p : positions) p = rng.uniform(pos_lo, pos_hi);
  std::sort(positions.begin(), positions.end());
  std::vector<MassVelocityState::Atom> atoms(n);
  for (std::size_t i = 0; i < n; ++i)
    atoms[i] = {masses[i], positions[i], rng.uniform(vel_lo, vel_hi)};
  return MassVelocityState(std::move(atoms));
}

MassVelocityState random_spread_state(SplitMix64& rng, std::size_t n, double min_gap,
                                      double vel_scale) {
  MassVelocityState base = random_state(rng, n, 0.0, 1.0, -vel_scale, vel_scale);
  std::vector<MassVelocityState::Atom> atoms = base.atoms();
  double x = atoms.front().position;
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    x = std::max(atoms[i].position, x + min_gap * (1.0 + rng.uniform()));
    atoms[i].position = x;
  }
  return MassVelocityState(std::move(atoms));
}

MassVelocityState random_monotone_velocity_state(SplitMix64& rng, std::size_t n) {
  MassVelocityState base = random_state(rng, n);
  std::vector<MassVelocityState::Atom> atoms = base.atoms();
  std::vector<double> vels(atoms.size());
  for (auto& v : vels) v = rng.uniform(-1.0, 1.0);
  std::sort(vels.begin(), vels.end());
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i].velocity = vels[i];
  return MassVelocityState(std::move(atoms));
}

StepFn random_monotone_fn(SplitMix64& rng, std::size_t cells, double lo, double hi) {
  StepFn f = random_step_fn(rng, cells, lo, hi);
  std::vector<double> v(f.values());
  std::sort(v.begin(), v.end());
  return StepFn(f.partition(), std::move(v));
}

StepFn random_step_fn(SplitMix64& rng, std::size_t cells, double lo, double hi) {
  if (cells == 0) throw std::invalid_argument("random_step_fn: need at least one cell");
  std::vector<double> breaks{0.0};
  for (std::size_t i = 0; i + 1 < cells; ++i) breaks.push_back(rng.uniform());
  breaks.push_back(1.0);
  std::sort(breaks.begin(), breaks.end());
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    if (breaks[i + 1] <= breaks[i]) breaks[i + 1] = std::nextafter(breaks[i], 2.0);
  if (breaks.back() != 1.0) {
    // ties pushed past 1 are vanishingly unlikely; regenerate from scratch
    return random_step_fn(rng, cells, lo, hi);
  }
  std::vector<double> values(cells);
  for (auto& v : values) v = rng.uniform(lo, hi);
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

StepFn random_subdifferential_element(SplitMix64& rng, const StepFn& g) {
  // one scaled tent primitive per selected plateau of g: +c on (a, m),
  // -c' on (m, b), chosen so the primitive is a nonnegative bump vanishing
  // at both plateau ends
  const auto& part = g.partition();
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  for (std::size_t i = 0; i < g.cells(); ++i) {
    const double a = part.left(i), b = part.right(i);
    const bool use = rng.uniform() < 0.7;
    if (!use) {
      values.push_back(0.0);
      breaks.push_back(b);
      continue;
    }
    const double m = a + (b - a) * rng.uniform(0.25, 0.75);
    const double peak = rng.uniform(0.0, 1.0);
    values.push_back(peak / (m - a));
    breaks.push_back(m);
    values.push_back(-peak / (b - m));
    breaks.push_back(b);
  }
  breaks.back() = 1.0;
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

}  // namespace adhesion1d
