#include "adhesion1d/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "adhesion1d/numeric.hpp"

namespace adhesion1d {

std::string fmt_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw std::invalid_argument("not a number: '" + text + "'");
  return v;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void write_step_fn(std::ostream& os, const StepFn& f) {
  for (std::size_t i = 0; i < f.cells(); ++i)
    os << fmt_double(f.partition().left(i)) << ',' << fmt_double(f.value(i)) << '\n';
  os << fmt_double(f.partition().breaks().back()) << ",\n";
}

StepFn read_step_fn(std::istream& is) {
  std::vector<double> breaks, values;
  std::string line;
  bool saw_sentinel = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 2) throw std::invalid_argument("step fn row needs two columns");
    if (saw_sentinel) throw std::invalid_argument("rows after the sentinel");
    breaks.push_back(parse_double(cols[0]));
    if (cols[1].empty())
      saw_sentinel = true;
    else
      values.push_back(parse_double(cols[1]));
  }
  if (!saw_sentinel) throw std::invalid_argument("missing sentinel row");
  return StepFn(Partition(std::move(breaks)), std::move(values));
}

void write_state(std::ostream& os, const MassVelocityState& mu) {
  os << "m,x,v\n";
  for (const auto& a : mu.atoms())
    os << fmt_double(a.mass) << ',' << fmt_double(a.position) << ',' << fmt_double(a.velocity)
       << '\n';
}

MassVelocityState read_state(std::istream& is, bool renormalize) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty state file");
  {
    const auto cols = split_csv(line);
    if (cols.size() != 3 || cols[0] != "m" || cols[1] != "x" || cols[2] != "v")
      throw std::invalid_argument("state file must start with the header 'm,x,v'");
  }
  std::vector<MassVelocityState::Atom> atoms;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (cols.size() != 3) throw std::invalid_argument("state row needs three columns");
    atoms.push_back({parse_double(cols[0]), parse_double(cols[1]), parse_double(cols[2])});
  }
  if (atoms.empty()) throw std::invalid_argument("state file has no atoms");
  NeumaierSum total;
  for (const auto& a : atoms) {
    if (!(a.mass > 0.0)) throw std::invalid_argument("masses must be positive");
    total.add(a.mass);
  }
  const double sum = total.get();
  if (std::abs(sum - 1.0) > 1e-9) {
    if (!renormalize)
      throw std::invalid_argument("masses sum to " + fmt_double(sum) +
                                  ", not 1 (use --renormalize to rescale)");
  }
  if (sum != 1.0) {
    NeumaierSum rescaled;
    for (auto& a : atoms) {
      a.mass /= sum;
      rescaled.add(a.mass);
    }
    atoms.back().mass += 1.0 - rescaled.get();
  }
  return MassVelocityState(std::move(atoms));
}

void write_trajectory(std::ostream& os, const std::vector<TrajectoryRow>& rows) {
  os << "t,cluster_id,m,x,v\n";
  for (const auto& r : rows)
    os << fmt_double(r.time) << ',' << r.cluster_id << ',' << fmt_double(r.mass) << ','
       << fmt_double(r.position) << ',' << fmt_double(r.velocity) << '\n';
}

void write_event_log(std::ostream& os, const std::vector<CollisionEvent>& events) {
  os << "t,first_index,last_index,post_velocity\n";
  for (const auto& e : events)
    os << fmt_double(e.time) << ',' << e.first_index << ',' << e.last_index << ','
       << fmt_double(e.post_velocity) << '\n';
}

void write_snapshots(std::ostream& os, const std::string& scenario_id,
                     const std::vector<LagrangianState>& states) {
  os << "# scenario: " << scenario_id << '\n';
  os << "t,w_left,X,V\n";
  for (const auto& s : states) {
    auto [x, v] = refine_common(s.x(), s.v());
    for (std::size_t i = 0; i < x.cells(); ++i)
      os << fmt_double(s.t()) << ',' << fmt_double(x.partition().left(i)) << ','
         << fmt_double(x.value(i)) << ',' << fmt_double(v.value(i)) << '\n';
  }
}

void write_cdf(std::ostream& os, const CdfSolution& m) {
  os << "x,M\n";
  for (std::size_t i = 0; i < m.xs().size(); ++i)
    os << fmt_double(m.xs()[i]) << ',' << fmt_double(m.levels()[i + 1]) << '\n';
}

void write_table(std::ostream& os, const std::string& param_name,
                 const std::vector<std::pair<double, double>>& rows) {
  os << param_name << ",error\n";
  for (const auto& [p, e] : rows) os << fmt_double(p) << ',' << fmt_double(e) << '\n';
}

}  // namespace adhesion1d
