// fssp: batch front end over the library.
// Exit codes: 0 ok/FiredAt, 1 check failed, 2 usage/parse/io error,
// 3 PrematureOrPartial, 4 NoFireWithinHorizon, 5 other library error.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "fssp/corpus.hpp"
#include "fssp/covering.hpp"
#include "fssp/engine.hpp"
#include "fssp/io.hpp"
#include "fssp/line.hpp"
#include "fssp/lower_bound.hpp"
#include "fssp/mft.hpp"
#include "fssp/refuter.hpp"
#include "fssp/solutions.hpp"

using namespace fssp;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2, kPremature = 3, kNoFire = 4, kLibrary = 5;

struct Manifest {
  std::string variation, params, config, config_file, automaton_file, builtin = "cab", target;
  std::string out, diagram, model = "bs", format = "text";
  std::vector<std::string> positional;
  int scale = 3, horizon = -1, search_scale = -1, samples = 100;
  unsigned seed = 20260101;
  bool composed = false, show_map = false;
};

std::string join_descriptor(const std::string& variation, const std::string& params) {
  if (params.empty()) return variation;
  return variation + (variation.find(':') == std::string::npos ? ":" : ",") + params;
}

// "LSP 3 1" style positional forms.
std::string positional_descriptor(const std::vector<std::string>& pos) {
  if (pos.empty()) throw Error(ErrorKind::Parse, "missing configuration");
  auto fam = parse_family(pos[0]);
  if (!fam) throw Error(ErrorKind::Parse, "unknown family " + pos[0]);
  std::vector<std::string> keys;
  Shape sh = family_shape(*fam);
  if (*fam == Family::LSP_C_abcd) keys = {"a", "b", "c", "d", "l"};
  else if (family_has_ratio(*fam)) keys = {"a", "b", "l"};
  else if (*fam == Family::EX1) keys = {"r"};
  else if (sh == Shape::Ex2 || *fam == Family::SQ_WALL || *fam == Family::gSQ_WALL || *fam == Family::SQ || *fam == Family::gSQ)
    keys = {"l"};
  else keys = {"w", "h"};
  if (family_generalized(*fam)) {
    if (sh == Shape::Rect) keys.push_back("r"), keys.push_back("s");
    else keys.push_back("i");
  }
  if (pos.size() - 1 > keys.size()) throw Error(ErrorKind::Parse, "too many parameters for " + pos[0]);
  std::string d = pos[0] + ":";
  for (std::size_t k = 1; k < pos.size(); ++k) d += (k > 1 ? "," : "") + keys[k - 1] + "=" + pos[k];
  return d;
}

Configuration manifest_config(const Manifest& m) {
  if (!m.config_file.empty()) return read_config(read_file(m.config_file));
  if (!m.config.empty()) return build_from_descriptor(m.config);
  if (!m.variation.empty()) return build_from_descriptor(join_descriptor(m.variation, m.params));
  return build_from_descriptor(positional_descriptor(m.positional));
}

VariationSpec manifest_spec(const Manifest& m) {
  std::string v = !m.variation.empty() ? m.variation : !m.positional.empty() ? m.positional[0] : "";
  if (v.empty()) throw Error(ErrorKind::Parse, "missing --variation");
  return parse_descriptor(v).spec;
}

AutomatonPtr manifest_automaton(const Manifest& m, const Configuration& c) {
  if (!m.automaton_file.empty()) return read_automaton(read_file(m.automaton_file));
  Model model = parse_model(m.model);
  const std::string& b = m.builtin;
  if (b == "lsp32") return explicit_lsp32().automaton;
  if (b == "generic") return generic_solution(c.spec);
  if (b == "ex2d") return ex2d_minimal();
  if (b == "line") return bend_line(minimal_line());
  if (b == "cab") {
    Configuration t = m.target.empty() ? build(c.spec, c.params) : build_from_descriptor(m.target);
    return generate_cab(t.spec, t, model).automaton;
  }
  throw Error(ErrorKind::Parse, "unknown builtin automaton '" + b + "'");
}

void emit(const Manifest& m, const std::string& text) {
  if (m.out.empty()) std::cout << text;
  else write_file(m.out, text);
}

int exit_for(const FiringOutcome& o) {
  switch (o.kind) {
    case FiringOutcome::Kind::FiredAt: return kOk;
    case FiringOutcome::Kind::PrematureOrPartial: return kPremature;
    case FiringOutcome::Kind::NoFireWithinHorizon: return kNoFire;
  }
  return kLibrary;
}

int cmd_simulate(const Manifest& m) {
  Configuration c = manifest_config(m);
  AutomatonPtr a = manifest_automaton(m, c);
  int horizon = m.horizon >= 0 ? m.horizon : default_horizon(c.set());
  Trace tr = simulate(c.set(), *a, horizon);
  FiringOutcome o = firing_time(c.set(), *a, horizon);
  std::ostringstream os;
  if (m.format == "records")
    os << "config=" << c.name() << " automaton=" << (m.automaton_file.empty() ? m.builtin : m.automaton_file)
       << " horizon=" << horizon << " outcome=" << o.str() << '\n';
  else
    os << c.name() << ": " << o.str() << '\n';
  if (!m.out.empty()) write_file(m.out, write_trace(c.set(), *a, tr));
  std::string dia = ascii_diagram(*a, tr, diagram_order(c));
  if (m.diagram == "-") os << dia;
  else if (!m.diagram.empty()) write_file(m.diagram, dia);
  std::cout << os.str();
  return exit_for(o);
}

int cmd_mft(const Manifest& m) {
  Configuration c = manifest_config(m);
  MftResult r = mft(c.spec, c, parse_model(m.model));
  emit(m, std::to_string(r.value) + " " + r.case_label + " " + mft_model_name(r.model) + "\n");
  return kOk;
}

int cmd_verify(const Manifest& m) {
  VariationSpec spec = manifest_spec(m);
  Model model = parse_model(m.model);
  std::ostringstream os;
  int failed = 0, passed = 0, skipped = 0;
  for (const Configuration& c : enumerate_all(spec, m.scale)) {
    os << c.name() << ' ';
    int value = 0;
    try {
      value = mft(spec, c, model).value;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnknownMft) throw;
      os << "skipped (open problem)\n";
      ++skipped;
      continue;
    }
    std::string upper;
    try {
      PartialSolution ps = generate_cab(spec, c, model);
      FiringOutcome o = firing_time(c.set(), *ps.automaton, std::max(default_horizon(c.set()), value + 2));
      upper = o.fired_at(value) ? "pass" : "FAIL(" + o.str() + ")";
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsupported) throw;
      upper = "skipped (no construction)";
    }
    LowerBoundResult lb = verify_mft_lower(spec, c, model, m.search_scale);
    std::string lower = lb.ok ? "pass(" + lb.reason + ")" : "FAIL(" + lb.reason + ")";
    bool ok = upper.rfind("FAIL", 0) != 0 && lb.ok;
    (ok ? passed : failed)++;
    os << "mft=" << value << " upper=" << upper << " lower=" << lower;
    if (lb.witness && lb.reason == "witness") os << " witness=" << lb.witness->c2.name();
    os << '\n';
  }
  os << "summary pass=" << passed << " fail=" << failed << " skipped=" << skipped << '\n';
  emit(m, os.str());
  return failed ? kFail : kOk;
}

int cmd_lower(const Manifest& m) {
  Configuration c = manifest_config(m);
  LowerBoundResult r = verify_mft_lower(c.spec, c, parse_model(m.model), m.search_scale);
  std::ostringstream os;
  os << c.name() << " t=" << r.t << " " << (r.ok ? "pass" : "FAIL") << " (" << r.reason << ")\n";
  if (r.witness && r.reason == "witness") os << witness_report(*r.witness);
  emit(m, os.str());
  return r.ok ? kOk : kFail;
}

int cmd_refute(const Manifest& m) {
  VariationSpec spec = manifest_spec(m);
  AutomatonPtr a;
  if (!m.automaton_file.empty()) a = read_automaton(read_file(m.automaton_file));
  else if (m.builtin == "generic" || m.builtin == "cab") a = generic_solution(spec);
  else a = manifest_automaton(m, enumerate_all(spec, m.scale).at(0));
  RefutationReport r = refute_minimality(a, spec, m.scale);
  emit(m, r.render(*a));
  return kOk;
}

int cmd_cover(const Manifest& m) {
  if (m.positional.size() != 4) throw Error(ErrorKind::Parse, "cover takes a b w h");
  int v[4];
  for (int k = 0; k < 4; ++k) v[k] = std::stoi(m.positional[k]);
  auto pieces = cover_rect(v[0], v[1], v[2], v[3]);
  std::ostringstream os;
  os << cover_table(pieces) << cover_diagram(pieces, v[2], v[3]);
  CoverCheck chk = verify_cover(pieces, v[2], v[3]);
  os << "verify " << (chk.ok ? "ok" : "FAIL") << '\n';
  bool ok = chk.ok;
  if (m.composed) {
    ComposedRun run = cover_composed(pieces, v[2], v[3]);
    os << "composed latest=" << run.latest << ' ' << (run.ok ? "ok" : "FAIL") << '\n';
    ok = ok && run.ok;
  }
  emit(m, os.str());
  return ok ? kOk : kFail;
}

int cmd_plan(const Manifest& m) {
  Configuration c = manifest_config(m);
  Model model = parse_model(m.model);
  SignalPlan p = make_plan(c.spec, c, model == Model::Traditional && uses_bc_transfer(c.spec, c)
                                          ? Model::BoundarySensitive
                                          : model);
  std::string text = p.render();
  if (model == Model::Traditional && uses_bc_transfer(c.spec, c))
    text += "traditional automaton: boundary-condition transfer over this plan\n";
  emit(m, text);
  return kOk;
}

int cmd_sss(const Manifest& m) {
  Configuration c = manifest_config(m);
  SssBounds b = sss_bounds(c.spec, c);
  std::ostringstream os;
  os << b.lower << ' ' << b.upper << '\n';
  if (!b.note.empty()) os << b.note << '\n';
  emit(m, os.str());
  return kOk;
}

int cmd_corpus(const Manifest& m) {
  std::string action = m.positional.empty() ? "pin" : m.positional[0];
  std::string dir = m.positional.size() > 1 ? m.positional[1] : default_corpus_dir();
  if (action == "write") {
    write_corpus(dir);
    std::cout << "wrote corpus to " << dir << '\n';
    return kOk;
  }
  if (action != "pin") throw Error(ErrorKind::Parse, "corpus takes pin|write [dir]");
  bool ok = true;
  for (const PinResult& r : pin_all(load_corpus(dir))) {
    std::cout << r.id << ' ' << (r.ok ? "pass" : "FAIL " + r.diff) << '\n';
    ok = ok && r.ok;
  }
  return ok ? kOk : kFail;
}

// Random ai-equal pairs: equal available information must give equal states.
int cmd_fact3(const Manifest& m) {
  VariationSpec spec = manifest_spec(m);
  std::mt19937 rng(m.seed);
  auto configs = enumerate_all(spec, m.scale);
  AutomatonPtr a = manifest_automaton(m, configs.at(0));
  int found = 0, bad = 0;
  for (int tries = 0; found < m.samples && tries < 200 * m.samples; ++tries) {
    const Configuration& c1 = configs[rng() % configs.size()];
    const Configuration& c2 = configs[rng() % configs.size()];
    Cell v = c1.set().cell(rng() % c1.set().size());
    int t = static_cast<int>(rng() % (2 * radius(c1.set()) + 2));
    auto ai = available_info(c1.set(), v, t);
    if (!ai.known) continue;
    int vi2 = c2.set().find(c2.general() + ai.origin_offset);
    if (vi2 < 0 || !ai_equal(ai, available_info(c2.set(), c2.set().cell(vi2), t))) continue;
    ++found;
    Trace t1 = simulate(c1.set(), *a, t), t2 = simulate(c2.set(), *a, t);
    if (t1.at(c1.set().index_of(v), t) != t2.at(vi2, t)) ++bad;
  }
  std::ostringstream os;
  os << "pairs=" << found << " mismatches=" << bad << '\n';
  emit(m, os.str());
  return bad ? kFail : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"firing squad synchronization laboratory"};
  app.require_subcommand(1);
  Manifest m;
  auto common = [&](CLI::App* s) {
    s->add_option("--variation", m.variation, "variation descriptor, e.g. gLSP_ab:a=2,b=3");
    s->add_option("--params", m.params, "parameters, e.g. l=2,i=2");
    s->add_option("--config", m.config, "full configuration descriptor");
    s->add_option("--config-file", m.config_file, "configuration file (fssp-config v1)");
    s->add_option("--scale", m.scale, "enumeration scale bound");
    s->add_option("--horizon", m.horizon, "simulation horizon");
    s->add_option("--model", m.model, "tr or bs")->check(CLI::IsMember({"tr", "bs"}));
    s->add_option("--out", m.out, "output path");
    s->add_option("--seed", m.seed, "seed for randomized sweeps");
    s->add_option("--format", m.format, "text or records")->check(CLI::IsMember({"text", "records"}));
    s->add_option("--automaton", m.automaton_file, "automaton file (fssp-automaton v1)");
    s->add_option("--builtin", m.builtin, "cab, lsp32, generic, line, ex2d");
    s->add_option("--target", m.target, "target descriptor for --builtin cab");
    s->add_option("--search-scale", m.search_scale, "witness search scale");
    s->add_option("args", m.positional, "positional arguments");
  };
  std::vector<std::pair<CLI::App*, int (*)(const Manifest&)>> cmds;
  auto add = [&](const char* name, const char* help, int (*fn)(const Manifest&)) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    cmds.push_back({s, fn});
    return s;
  };
  add("simulate", "run an automaton on a configuration", cmd_simulate)
      ->add_option("--diagram", m.diagram, "space-time diagram path ('-' for stdout)");
  add("mft", "print the minimum firing time: value case model", cmd_mft);
  add("verify", "upper and lower bounds for every member up to --scale", cmd_verify);
  add("lower", "lower-bound witness for one configuration", cmd_lower);
  add("refute", "minimality refuter", cmd_refute);
  add("cover", "cover C_R(w,h) of RECT[a,b]: a b w h", cmd_cover)->add_flag("--composed", m.composed, "simulate pieces");
  add("plan", "dump the check-and-broadcast plan", cmd_plan);
  add("sss", "state-count bounds for LSP[a,b] with a <= b", cmd_sss);
  add("corpus", "pin|write [dir]", cmd_corpus);
  add("fact3", "equal available information gives equal states", cmd_fact3)
      ->add_option("--samples", m.samples, "number of pairs");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    for (auto& [s, fn] : cmds)
      if (s->parsed()) return fn(m);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Io ? kUsage : kLibrary;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
