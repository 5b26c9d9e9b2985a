#include "fssp/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fssp {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + what);
}

struct Lines {
  std::vector<std::string> v;
  std::size_t pos = 0;
  explicit Lines(const std::string& text) {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      auto hash = l.find(" ;");
      if (!l.empty() && l[0] == ';') continue;  // comment line
      if (hash != std::string::npos) l.resize(hash);
      v.push_back(l);
    }
  }
  bool done() const { return pos >= v.size(); }
  int no() const { return static_cast<int>(pos); }
  std::string next() {
    while (pos < v.size() && v[pos].find_first_not_of(" \t") == std::string::npos) ++pos;
    if (pos >= v.size()) parse_fail(static_cast<int>(pos), "unexpected end of input");
    return v[pos++];
  }
  std::vector<std::string> words() {
    std::istringstream is(next());
    std::vector<std::string> w;
    std::string s;
    while (is >> s) w.push_back(s);
    return w;
  }
  std::vector<std::string> expect(const std::string& head, std::size_t n) {
    auto w = words();
    if (w.empty() || w[0] != head) parse_fail(no(), "expected '" + head + "'");
    if (n && w.size() != n) parse_fail(no(), "'" + head + "' takes " + std::to_string(n - 1) + " fields");
    return w;
  }
};

int to_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) parse_fail(line, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    parse_fail(line, "bad integer '" + s + "'");
  }
}

std::string bc_bits(BoundaryCondition b) {
  std::string s;
  for (int d = 0; d < 4; ++d) s += (b >> d) & 1 ? '1' : '0';
  return s;
}

BoundaryCondition parse_bits(const std::string& s, int line) {
  if (s.size() != 4 || s.find_first_not_of("01") != std::string::npos) parse_fail(line, "bad bc '" + s + "'");
  BoundaryCondition b = 0;
  for (int d = 0; d < 4; ++d)
    if (s[d] == '1') b |= static_cast<BoundaryCondition>(1u << d);
  return b;
}

}  // namespace

std::string write_config(const Configuration& c) {
  std::ostringstream os;
  os << "fssp-config v1\n";
  os << "variation " << (c.shape == Shape::Custom ? std::string("custom") : format_descriptor(c)) << '\n';
  os << "general " << c.general().x << ' ' << c.general().y << '\n';
  os << "cells " << c.set().size() << '\n';
  for (Cell x : c.set().cells()) os << x.x << ' ' << x.y << '\n';
  os << "end\n";
  return os.str();
}

Configuration read_config(const std::string& text) {
  Lines in(text);
  if (in.next() != "fssp-config v1") parse_fail(1, "missing 'fssp-config v1' header");
  auto var = in.expect("variation", 2);
  auto gen = in.expect("general", 3);
  Cell g{to_int(gen[1], in.no()), to_int(gen[2], in.no())};
  auto cnt = in.expect("cells", 2);
  int n = to_int(cnt[1], in.no());
  if (n < 1) parse_fail(in.no(), "cell count must be positive");
  std::vector<Cell> cells;
  for (int k = 0; k < n; ++k) {
    auto w = in.words();
    if (w.size() != 2) parse_fail(in.no(), "cell lines hold 'x y'");
    cells.push_back({to_int(w[0], in.no()), to_int(w[1], in.no())});
  }
  if (in.next() != "end") parse_fail(in.no(), "missing 'end'");
  if (var[1] == "custom") return make_custom(std::move(cells), g);
  Configuration c = build_from_descriptor(var[1]);
  CellSet listed(cells, g);
  if (!(listed == c.set()) || listed.general() != c.general())
    throw Error(ErrorKind::Parse, "cell list does not match " + var[1]);
  return c;
}

std::string write_automaton(const TableAutomaton& a) {
  const auto& names = a.names();
  auto nm = [&](State s) { return s == kBoundary ? std::string("#") : names.at(s); };
  std::ostringstream os;
  os << "fssp-automaton v1\n";
  os << "model " << model_name(a.model()) << '\n';
  os << "states " << names.size() << '\n';
  for (const auto& s : names) os << s << '\n';
  os << "quiescent " << names[kQ] << '\n';
  os << "general\n";
  for (int b = 0; b < 16; ++b) os << bc_bits(static_cast<BoundaryCondition>(b)) << ' ' << nm(a.general_map()[b]) << '\n';
  os << "firing";
  for (std::size_t s = 0; s < names.size(); ++s)
    if (a.firing()[s]) os << ' ' << names[s];
  os << '\n';
  auto ent = a.entries();
  os << "delta " << ent.size() << '\n';
  for (const auto& [k, out] : ent)
    os << nm(k.v[0]) << ' ' << nm(k.v[1]) << ' ' << nm(k.v[2]) << ' ' << nm(k.v[3]) << ' ' << nm(k.v[4]) << ' '
       << nm(out) << '\n';
  os << "default " << names[kQ] << '\n';
  os << "end\n";
  return os.str();
}

std::shared_ptr<TableAutomaton> read_automaton(const std::string& text) {
  Lines in(text);
  if (in.next() != "fssp-automaton v1") parse_fail(1, "missing 'fssp-automaton v1' header");
  auto m = in.expect("model", 2);
  Model model;
  try {
    model = parse_model(m[1]);
  } catch (const Error&) {
    parse_fail(in.no(), "model must be tr or bs");
  }
  int n = to_int(in.expect("states", 2)[1], in.no());
  if (n < 1) parse_fail(in.no(), "need at least one state");
  std::vector<std::string> names;
  std::map<std::string, State> id;
  for (int k = 0; k < n; ++k) {
    auto w = in.words();
    if (w.size() != 1 || w[0] == "#") parse_fail(in.no(), "state lines hold one name other than #");
    if (!id.emplace(w[0], k).second) parse_fail(in.no(), "duplicate state " + w[0]);
    names.push_back(w[0]);
  }
  auto look = [&](const std::string& s, bool allow_boundary) -> State {
    if (s == "#" && allow_boundary) return kBoundary;
    auto it = id.find(s);
    if (it == id.end()) parse_fail(in.no(), "unknown state " + s);
    return it->second;
  };
  if (in.expect("quiescent", 2)[1] != names[0]) parse_fail(in.no(), "the quiescent state must be listed first");
  auto a = std::make_shared<TableAutomaton>(model, names);
  in.expect("general", 1);
  for (int b = 0; b < 16; ++b) {
    auto w = in.words();
    if (w.size() != 2) parse_fail(in.no(), "general rows hold 'bits state'");
    a->set_general(parse_bits(w[0], in.no()), look(w[1], false));
  }
  auto f = in.expect("firing", 0);
  for (std::size_t k = 1; k < f.size(); ++k) a->set_firing(look(f[k], false));
  int nd = to_int(in.expect("delta", 2)[1], in.no());
  for (int k = 0; k < nd; ++k) {
    auto w = in.words();
    if (w.size() != 6) parse_fail(in.no(), "delta rows hold 'self e n w s next'");
    Inputs ip{look(w[1], true), look(w[2], true), look(w[3], true), look(w[4], true)};
    a->set(look(w[0], false), ip, look(w[5], false));
  }
  if (in.expect("default", 2)[1] != names[0]) parse_fail(in.no(), "default must be the quiescent state");
  if (in.next() != "end") parse_fail(in.no(), "missing 'end'");
  return a;
}

std::shared_ptr<TableAutomaton> record_table(const Automaton& a, const std::vector<const CellSet*>& runs,
                                             int horizon) {
  std::map<State, State> dense = {{kQ, kQ}};
  std::vector<State> order = {kQ};
  auto note = [&](State s) {
    if (s == kBoundary) return kBoundary;
    auto [it, fresh] = dense.emplace(s, static_cast<State>(order.size()));
    if (fresh) order.push_back(s);
    return it->second;
  };
  std::array<State, 16> gen{};
  for (int b = 0; b < 16; ++b) gen[b] = note(a.general_state(static_cast<BoundaryCondition>(b)));
  std::map<std::array<State, 5>, State> seen;
  for (const CellSet* c : runs) {
    Trace tr = simulate(*c, a, horizon);
    for (int t = 0; t < tr.horizon(); ++t)
      for (int i = 0; i < static_cast<int>(c->size()); ++i) {
        std::array<State, 5> k;
        k[0] = note(tr.at(i, t));
        for (int d = 0; d < 4; ++d) {
          int nb = c->neighbor(i, d);
          k[1 + d] = nb < 0 ? kBoundary : note(tr.at(nb, t));
        }
        seen[k] = note(tr.at(i, t + 1));
      }
  }
  std::vector<std::string> names;
  std::set<std::string> used;
  for (State s : order) {
    std::string nm = a.state_name(s);
    for (char& ch : nm)
      if (ch == ' ' || ch == '\t' || ch == ';') ch = '_';
    if (nm.empty() || nm == "#") nm = "s" + std::to_string(names.size());
    std::string base = nm;
    for (int k = 2; !used.insert(nm).second; ++k) nm = base + "~" + std::to_string(k);
    names.push_back(nm);
  }
  auto tab = std::make_shared<TableAutomaton>(a.model(), names);
  for (int b = 0; b < 16; ++b) tab->set_general(static_cast<BoundaryCondition>(b), gen[b]);
  for (std::size_t k = 0; k < order.size(); ++k) tab->set_firing(static_cast<State>(k), a.is_firing(order[k]));
  for (const auto& [k, out] : seen)
    if (out != kQ) tab->set(k[0], {k[1], k[2], k[3], k[4]}, out);
  return tab;
}

std::string write_trace(const CellSet& c, const Automaton& a, const Trace& tr) { return dump_trace(c, a, tr); }

ParsedTrace read_trace(const std::string& text) {
  Lines in(text);
  if (in.next() != "trace v1") parse_fail(1, "missing 'trace v1' header");
  int n = to_int(in.expect("cells", 2)[1], in.no());
  ParsedTrace p;
  for (const auto& w : in.words()) {
    auto comma = w.find(',');
    if (comma == std::string::npos) parse_fail(in.no(), "cells are 'x,y'");
    p.cells.push_back({to_int(w.substr(0, comma), in.no()), to_int(w.substr(comma + 1), in.no())});
  }
  if (static_cast<int>(p.cells.size()) != n) parse_fail(in.no(), "cell count mismatch");
  int h = to_int(in.expect("horizon", 2)[1], in.no());
  for (int t = 0; t <= h; ++t) {
    auto w = in.words();
    if (w.empty() || w[0] != std::to_string(t) + ":" || static_cast<int>(w.size()) != n + 1)
      parse_fail(in.no(), "bad row for t=" + std::to_string(t));
    p.rows.emplace_back(w.begin() + 1, w.end());
  }
  return p;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace fssp
