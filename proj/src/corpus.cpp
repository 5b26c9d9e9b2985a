#include "fssp/corpus.hpp"

#include <sstream>

#include "fssp/engine.hpp"
#include "fssp/io.hpp"
#include "fssp/mft.hpp"

#ifndef FSSP_CORPUS_DIR
#define FSSP_CORPUS_DIR "corpus"
#endif

namespace fssp {

namespace {

[[noreturn]] void corpus_fail(const std::string& what) { throw Error(ErrorKind::Corpus, what); }

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> w;
  std::string s;
  while (is >> s) w.push_back(s);
  return w;
}

std::vector<std::vector<std::string>> word_lines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream is(text);
  std::string l;
  while (std::getline(is, l)) {
    if (!l.empty() && l[0] == ';') continue;
    auto w = split_words(l);
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

int as_int(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorKind::Parse, "bad integer '" + s + "'");
}

std::string join_path(const std::string& dir, const std::string& p) { return dir.empty() ? p : dir + "/" + p; }

struct Canon {
  CorpusEntry entry;
  std::string text;
};

std::vector<Canon> canonical_artifacts() {
  std::vector<Canon> out;
  PartialSolution lsp32 = explicit_lsp32();
  out.push_back({{"lsp32-target", CorpusKind::Configuration, "lsp32_target.cfg",
                  {{"ft", "12"}, {"mft", "12"}},
                  "check-and-broadcast target with 14-state table, ft 12"},
                 write_config(lsp32.domain[0])});
  out.push_back({{"lsp32-automaton", CorpusKind::Automaton, "lsp32_automaton.fsa",
                  {{"states", "14"}, {"ft", "12"}, {"config", format_descriptor(lsp32.domain[0])},
                   {"silent", "LSP_ab:a=3,b=2,l=1;LSP_ab:a=3,b=2,l=3"}},
                  "explicit rules: signal R walks to the corner, S broadcasts, S12 fires"},
                 write_automaton(static_cast<const TableAutomaton&>(*lsp32.automaton))});
  {
    VariationSpec g{Family::gLSP_ab, 2, 3};
    Params p;
    p.l = 2, p.i = 2;
    Configuration c = build(g, p);
    auto w = find_witness(g, c, 9, default_search_scale(c), deadline_cells(g, c, Model::BoundarySensitive));
    if (!w) corpus_fail("g-LSP[2,3] witness not found");
    out.push_back({{"glsp23-witness", CorpusKind::Witness, "glsp23_witness.txt",
                    {{"c2", "C_L(6,9,4)"}, {"nodes", "8,10"}, {"t", "9"}},
                    "named witness for C_L(4,6,2) at t = 9"},
                   write_witness(*w, g)});
  }
  {
    VariationSpec l{Family::LSP};
    Params p;
    p.w = 3, p.h = 1;
    Configuration c = build(l, p);
    auto w = find_witness(l, c, 7, default_search_scale(c), deadline_cells(l, c, Model::BoundarySensitive));
    if (!w) corpus_fail("LSP witness not found");
    out.push_back({{"lsp-witness", CorpusKind::Witness, "lsp_witness.txt",
                    {{"c2", "C_L(3,5,0)"}, {"nodes", "0,0"}, {"t", "7"}},
                    "named witness for C_L(3,1) at t = 7"},
                   write_witness(*w, l)});
  }
  out.push_back({{"rect53-cover", CorpusKind::Cover, "rect53_cover.txt", {{"pieces", "11"}, {"ft", "16"}},
                  "eleven LSP-C[5,3;c,d] pieces covering C_R(10,6)"},
                 write_cover(cover_rect(5, 3, 10, 6), 5, 3, 10, 6)});
  return out;
}

std::string index_text(const std::vector<Canon>& arts) {
  std::ostringstream os;
  os << "fssp-corpus v1\n";
  os << "; id kind path expected... | provenance\n";
  for (const auto& a : arts) {
    os << a.entry.id << ' ' << corpus_kind_name(a.entry.kind) << ' ' << a.entry.path;
    for (const auto& [k, v] : a.entry.expected) os << ' ' << k << '=' << v;
    os << " | " << a.entry.provenance << '\n';
  }
  return os.str();
}

}  // namespace

const char* corpus_kind_name(CorpusKind k) {
  switch (k) {
    case CorpusKind::Configuration: return "configuration";
    case CorpusKind::Automaton: return "automaton";
    case CorpusKind::Witness: return "witness";
    case CorpusKind::Cover: return "cover";
  }
  return "?";
}

const CorpusEntry& Corpus::entry(const std::string& id) const {
  for (const auto& e : entries)
    if (e.id == id) return e;
  corpus_fail("no corpus entry '" + id + "'");
}

std::string default_corpus_dir() { return FSSP_CORPUS_DIR; }

Corpus load_corpus(const std::string& dir) {
  Corpus c;
  c.dir = dir;
  std::string text;
  try {
    text = read_file(join_path(dir, "index.txt"));
  } catch (const Error& e) {
    corpus_fail(e.what());
  }
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "fssp-corpus v1") corpus_fail("index.txt lacks the 'fssp-corpus v1' header");
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == ';') continue;
    std::string prov;
    if (auto bar = line.find(" | "); bar != std::string::npos) {
      prov = line.substr(bar + 3);
      line.resize(bar);
    }
    auto w = split_words(line);
    if (w.size() < 3) corpus_fail("index line needs id, kind and path: " + line);
    CorpusEntry e;
    e.id = w[0];
    if (w[1] == "configuration") e.kind = CorpusKind::Configuration;
    else if (w[1] == "automaton") e.kind = CorpusKind::Automaton;
    else if (w[1] == "witness") e.kind = CorpusKind::Witness;
    else if (w[1] == "cover") e.kind = CorpusKind::Cover;
    else corpus_fail("unknown kind " + w[1]);
    e.path = w[2];
    for (std::size_t k = 3; k < w.size(); ++k) {
      auto eq = w[k].find('=');
      if (eq == std::string::npos) corpus_fail("expected values are key=value: " + w[k]);
      e.expected[w[k].substr(0, eq)] = w[k].substr(eq + 1);
    }
    e.provenance = prov;
    c.entries.push_back(e);
  }
  return c;
}

std::string write_witness(const LowerBoundWitness& w, const VariationSpec& spec) {
  std::ostringstream os;
  os << "fssp-witness v1\n";
  os << "variation " << spec_string(spec) << '\n';
  os << "c " << format_descriptor(w.c) << '\n';
  os << "t " << w.t << '\n';
  os << "c2 " << format_descriptor(w.c2) << '\n';
  os << "v " << w.v.x << ' ' << w.v.y << '\n';
  os << "v2 " << w.v2.x << ' ' << w.v2.y << '\n';
  os << "nodes " << w.c.node_index(w.v) << ' ' << w.c2.node_index(w.v2) << '\n';
  os << "end\n";
  return os.str();
}

LowerBoundWitness read_witness(const std::string& text, VariationSpec* spec) {
  auto L = word_lines(text);
  auto need = [&](std::size_t k, const std::string& head, std::size_t n) -> const std::vector<std::string>& {
    if (k >= L.size() || L[k][0] != head || L[k].size() != n) throw Error(ErrorKind::Parse, "witness: expected " + head);
    return L[k];
  };
  if (L.empty() || L[0] != std::vector<std::string>{"fssp-witness", "v1"})
    throw Error(ErrorKind::Parse, "missing 'fssp-witness v1' header");
  LowerBoundWitness w;
  need(1, "variation", 2);
  w.c = build_from_descriptor(need(2, "c", 2)[1]);
  w.t = as_int(need(3, "t", 2)[1]);
  w.c2 = build_from_descriptor(need(4, "c2", 2)[1]);
  const auto& v = need(5, "v", 3);
  const auto& v2 = need(6, "v2", 3);
  w.v = {as_int(v[1]), as_int(v[2])};
  w.v2 = {as_int(v2[1]), as_int(v2[2])};
  if (spec) *spec = parse_descriptor(L[2][1]).spec;
  return w;
}

std::string write_cover(const std::vector<CoverPiece>& pieces, int a, int b, int w, int h) {
  std::ostringstream os;
  os << "fssp-cover v1\n";
  os << "rect " << a << ' ' << b << ' ' << w << ' ' << h << '\n';
  os << "pieces " << pieces.size() << '\n';
  os << "; i j activation firing c d l\n";
  for (const auto& p : pieces)
    os << p.general_at.x << ' ' << p.general_at.y << ' ' << p.activation << ' ' << p.firing_time << ' ' << p.c << ' '
       << p.d << ' ' << p.l << '\n';
  os << "end\n";
  return os.str();
}

std::vector<CoverPiece> read_cover(const std::string& text) {
  auto L = word_lines(text);
  if (L.size() < 3 || L[0] != std::vector<std::string>{"fssp-cover", "v1"} || L[1][0] != "rect" || L[1].size() != 5 ||
      L[2][0] != "pieces" || L[2].size() != 2)
    throw Error(ErrorKind::Parse, "malformed cover header");
  int a = as_int(L[1][1]), b = as_int(L[1][2]), w = as_int(L[1][3]), h = as_int(L[1][4]);
  int n = as_int(L[2][1]);
  if (static_cast<int>(L.size()) != n + 4 || L.back() != std::vector<std::string>{"end"})
    throw Error(ErrorKind::Parse, "cover piece count mismatch");
  std::vector<CoverPiece> out;
  for (int k = 0; k < n; ++k) {
    const auto& r = L[3 + k];
    if (r.size() != 7) throw Error(ErrorKind::Parse, "cover rows hold 7 integers");
    CoverPiece p;
    p.general_at = {as_int(r[0]), as_int(r[1])};
    p.arm_w = w - p.general_at.x;
    p.arm_h = h - p.general_at.y;
    p.activation = as_int(r[2]);
    p.firing_time = as_int(r[3]);
    p.a = a, p.b = b;
    p.c = as_int(r[4]), p.d = as_int(r[5]), p.l = as_int(r[6]);
    out.push_back(p);
  }
  return out;
}

Configuration load_configuration(const Corpus& c, const std::string& id) {
  const auto& e = c.entry(id);
  if (e.kind != CorpusKind::Configuration) corpus_fail(id + " is not a configuration");
  return read_config(read_file(join_path(c.dir, e.path)));
}

std::shared_ptr<TableAutomaton> load_automaton(const Corpus& c, const std::string& id) {
  const auto& e = c.entry(id);
  if (e.kind != CorpusKind::Automaton) corpus_fail(id + " is not an automaton");
  auto a = read_automaton(read_file(join_path(c.dir, e.path)));
  auto v = validate(*a);
  if (!v.empty()) corpus_fail(id + ": " + v[0].kind + ": " + v[0].detail);
  return a;
}

LowerBoundWitness load_witness(const Corpus& c, const std::string& id) {
  const auto& e = c.entry(id);
  if (e.kind != CorpusKind::Witness) corpus_fail(id + " is not a witness");
  auto w = read_witness(read_file(join_path(c.dir, e.path)));
  if (!witness_holds(w)) corpus_fail(id + ": stored witness does not re-verify");
  return w;
}

std::vector<CoverPiece> load_cover(const Corpus& c, const std::string& id) {
  const auto& e = c.entry(id);
  if (e.kind != CorpusKind::Cover) corpus_fail(id + " is not a cover");
  std::string text = read_file(join_path(c.dir, e.path));
  auto pieces = read_cover(text);
  auto L = word_lines(text);
  int w = as_int(L[1][3]), h = as_int(L[1][4]);
  auto chk = verify_cover(pieces, w, h);
  if (!chk.ok) corpus_fail(id + ": stored cover is invalid");
  return pieces;
}

namespace {

std::string first_divergence(const std::string& stored, const std::string& fresh) {
  std::istringstream a(stored), b(fresh);
  std::string la, lb;
  for (int line = 1;; ++line) {
    bool ga = static_cast<bool>(std::getline(a, la)), gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) return "";
    if (!ga || !gb || la != lb)
      return "line " + std::to_string(line) + ": stored '" + (ga ? la : "<eof>") + "' vs recomputed '" +
             (gb ? lb : "<eof>") + "'";
  }
}

}  // namespace

PinResult pin(const Corpus& c, const CorpusEntry& e) {
  PinResult r;
  r.id = e.id;
  try {
    std::string stored = read_file(join_path(c.dir, e.path));
    std::string fresh;
    for (const auto& art : canonical_artifacts())
      if (art.entry.id == e.id) fresh = art.text;
    if (fresh.empty()) {
      r.diff = "no recomputation rule for " + e.id;
      return r;
    }
    r.diff = first_divergence(stored, fresh);
    if (!r.diff.empty()) return r;
    auto want = [&](const std::string& k) -> std::string {
      auto it = e.expected.find(k);
      return it == e.expected.end() ? "" : it->second;
    };
    auto check = [&](const std::string& k, const std::string& got) {
      if (r.diff.empty() && !want(k).empty() && want(k) != got)
        r.diff = k + ": expected " + want(k) + ", recomputed " + got;
    };
    switch (e.kind) {
      case CorpusKind::Configuration: {
        Configuration cfg = load_configuration(c, e.id);
        PartialSolution ps = explicit_lsp32();
        auto out = firing_time(cfg, *ps.automaton);
        check("ft", out.fired() ? std::to_string(out.time) : out.str());
        check("mft", std::to_string(mft(cfg.spec, cfg, Model::Traditional).value));
        break;
      }
      case CorpusKind::Automaton: {
        auto a = load_automaton(c, e.id);
        check("states", std::to_string(a->num_states()));
        if (!want("config").empty()) {
          auto out = firing_time(build_from_descriptor(want("config")), *a);
          check("ft", out.fired() ? std::to_string(out.time) : out.str());
        }
        std::string silent = want("silent");
        for (std::size_t p = 0; !silent.empty() && p != std::string::npos;) {
          auto q = silent.find(';', p);
          std::string d = silent.substr(p, q == std::string::npos ? std::string::npos : q - p);
          auto out = firing_time(build_from_descriptor(d), *a, 60);
          if (r.diff.empty() && out.kind != FiringOutcome::Kind::NoFireWithinHorizon)
            r.diff = d + ": expected no fire, got " + out.str();
          p = q == std::string::npos ? q : q + 1;
        }
        break;
      }
      case CorpusKind::Witness: {
        auto w = load_witness(c, e.id);
        check("c2", w.c2.name());
        check("t", std::to_string(w.t));
        check("nodes", std::to_string(w.c.node_index(w.v)) + "," + std::to_string(w.c2.node_index(w.v2)));
        break;
      }
      case CorpusKind::Cover: {
        auto pieces = load_cover(c, e.id);
        check("pieces", std::to_string(pieces.size()));
        for (const auto& p : pieces) check("ft", std::to_string(p.firing_time));
        break;
      }
    }
    r.ok = r.diff.empty();
  } catch (const Error& ex) {
    r.diff = ex.what();
  }
  return r;
}

std::vector<PinResult> pin_all(const Corpus& c) {
  std::vector<PinResult> out;
  for (const auto& e : c.entries) out.push_back(pin(c, e));
  return out;
}

void write_corpus(const std::string& dir) {
  auto arts = canonical_artifacts();
  for (const auto& a : arts) write_file(join_path(dir, a.entry.path), a.text);
  write_file(join_path(dir, "index.txt"), index_text(arts));
}

}  // namespace fssp
