#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>

#include "fssp/corpus.hpp"
#include "fssp/covering.hpp"
#include "fssp/engine.hpp"
#include "fssp/io.hpp"
#include "fssp/lower_bound.hpp"
#include "fssp/mft.hpp"
#include "fssp/refuter.hpp"
#include "support.hpp"

using namespace fssp;
namespace fs = std::filesystem;

namespace {

std::vector<Cell> random_polyomino(std::mt19937& rng, int n) {
  std::vector<Cell> cells{{0, 0}};
  std::set<std::pair<int, int>> have{{0, 0}};
  while (static_cast<int>(cells.size()) < n) {
    Cell c = cells[rng() % cells.size()] + kDirs[rng() % 4];
    if (have.insert({c.x, c.y}).second) cells.push_back(c);
  }
  return cells;
}

// all-pairs shortest paths by Floyd-Warshall over a plain cell list
std::vector<std::vector<int>> floyd(const std::vector<Cell>& cells) {
  const int n = static_cast<int>(cells.size()), inf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i == j) d[i][j] = 0;
      else if (std::abs(cells[i].x - cells[j].x) + std::abs(cells[i].y - cells[j].y) == 1) d[i][j] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

BoundaryCondition naive_bc(const std::vector<Cell>& cells, Cell v) {
  BoundaryCondition b = 0;
  for (int k = 0; k < 4; ++k)
    if (std::find(cells.begin(), cells.end(), v + kDirs[k]) != cells.end()) b |= static_cast<BoundaryCondition>(1 << k);
  return b;
}

int run(const std::string& args) {
  std::string cmd = std::string(FSSP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("fssp_unit_" + tag + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("distances and radius agree with Floyd-Warshall") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    auto cells = random_polyomino(rng, 2 + static_cast<int>(rng() % 14));
    Cell g = cells[rng() % cells.size()];
    CellSet c(cells, g);
    auto d = floyd(cells);
    int gi = static_cast<int>(std::find(cells.begin(), cells.end(), g) - cells.begin());
    int rad = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      rad = std::max(rad, d[gi][i]);
      CHECK(boundary_condition(c, cells[i]) == naive_bc(cells, cells[i]));
      for (std::size_t j = 0; j < cells.size(); ++j) REQUIRE(distance(c, cells[i], cells[j]) == d[i][j]);
    }
    CHECK(radius(c) == rad);
  }
}

TEST_CASE("available information matches a brute-force construction") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto cells = random_polyomino(rng, 3 + static_cast<int>(rng() % 12));
    Cell g = cells[rng() % cells.size()];
    CellSet c(cells, g);
    auto d = floyd(cells);
    int gi = static_cast<int>(std::find(cells.begin(), cells.end(), g) - cells.begin());
    for (std::size_t vi = 0; vi < cells.size(); ++vi)
      for (int t = 0; t <= 8; ++t) {
        AvailableInformation got = available_info(c, cells[vi], t);
        bool known = d[gi][vi] <= t;
        REQUIRE(got.known == known);
        if (!known) continue;
        std::vector<std::pair<Cell, BoundaryCondition>> want;
        for (std::size_t u = 0; u < cells.size(); ++u)
          if (d[gi][u] + d[u][vi] <= t) want.push_back({cells[u] - g, naive_bc(cells, cells[u])});
        std::sort(want.begin(), want.end(),
                  [](auto& p, auto& q) { return p.first.x != q.first.x ? p.first.x < q.first.x : p.first.y < q.first.y; });
        CHECK(got.local_map == want);
        CHECK(got.origin_offset == cells[vi] - g);
      }
  }
}

TEST_CASE("descriptor round trip and parse errors") {
  for (const auto& s : testing::cab_sweep(2, 3))
    for (const Configuration& c : enumerate_all(s.spec, s.scale)) {
      Configuration back = build_from_descriptor(format_descriptor(c));
      CHECK(back.set() == c.set());
      CHECK(member(s.spec, back));
      Configuration io = read_config(write_config(c));
      CHECK(io.set() == c.set());
    }
  CHECK_THROWS_AS(parse_descriptor("NOPE:w=1"), Error);
  CHECK_THROWS_AS(parse_descriptor("LSP:w="), Error);
  CHECK_THROWS_AS(build_from_descriptor("LSP_ab:a=1,b=2,l=-1"), Error);
}

TEST_CASE("family membership is exclusive of broken shapes") {
  Configuration c = build({Family::LSP}, Params{3, 1, 0, 0, 0, 0});
  CHECK(c.name() == "C_L(3,1,0)");
  CHECK(member({Family::LSP}, c));
  CHECK_FALSE(member({Family::LSP_ab, 1, 1}, c));
  auto cells = c.set().cells();
  cells.pop_back();
  CHECK_FALSE(member({Family::LSP}, make_custom(cells, c.general())));
}

TEST_CASE("closed-form values") {
  Configuration lsp = build({Family::LSP}, Params{3, 1, 0, 0, 0, 0});
  CHECK(mft({Family::LSP}, lsp, Model::Traditional).value == 8);
  CHECK(mft({Family::LSP_ab, 3, 2}, make_lpath(6, 4, 0), Model::Traditional).value == 12);
  for (const auto& s : testing::cab_sweep(3, 4))
    enumerate(s.spec, s.scale, [&](const Configuration& c) {
      try {
        int bs = mft(s.spec, c, Model::BoundarySensitive).value, tr = mft(s.spec, c, Model::Traditional).value;
        CHECK(mft_bounds_consistency(bs, tr));
        CHECK(bs >= radius(c.set()));
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownMft);
      }
      return true;
    });
  CHECK_THROWS_AS(mft({Family::LSP_ab, 1, 2}, make_lpath(3, 3, 0), Model::Traditional), Error);
}

TEST_CASE("cover pieces tile the rectangle") {
  for (auto [a, b, w, h] : std::vector<std::array<int, 4>>{{5, 3, 10, 6}, {1, 1, 2, 2}, {5, 3, 5, 3}, {2, 1, 6, 3}}) {
    auto pieces = cover_rect(a, b, w, h);
    std::set<std::pair<int, int>> seen;
    for (const CoverPiece& p : pieces)
      for (Cell c : p.cells()) {
        CHECK(c.x >= 0);
        CHECK(c.x <= w);
        CHECK(c.y >= 0);
        CHECK(c.y <= h);
        seen.insert({c.x, c.y});
      }
    CHECK(seen.size() == static_cast<std::size_t>((w + 1) * (h + 1)));
    CHECK(verify_cover(pieces, w, h).ok);
    CHECK(read_cover(write_cover(pieces, a, b, w, h)).size() == pieces.size());
  }
  CHECK(cover_rect(1, 1, 2, 2).size() == 3);
  CHECK_THROWS_AS(cover_rect(5, 3, 9, 6), Error);
  auto pieces = cover_rect(5, 3, 10, 6);
  pieces.erase(pieces.begin());
  CHECK_FALSE(verify_cover(pieces, 10, 6).ok);
}

TEST_CASE("automaton text round trip preserves runs") {
  PartialSolution ps = explicit_lsp32();
  auto tab = std::dynamic_pointer_cast<const TableAutomaton>(ps.automaton);
  REQUIRE(tab);
  auto back = read_automaton(write_automaton(*tab));
  CHECK(back->num_states() == 14);
  for (auto [w, h] : {std::pair{6, 4}, std::pair{3, 2}, std::pair{2, 1}}) {
    Configuration c = make_lpath(w, h, 0);
    CHECK(simulate(c.set(), *tab, 30).rows == simulate(c.set(), *back, 30).rows);
  }
  CHECK_THROWS_AS(read_automaton("fssp-automaton v1\nmodel tr\nstates 1\n"), Error);
}

TEST_CASE("recorded tables replay lazy automata") {
  VariationSpec s{Family::LSP_ab, 1, 2};
  auto gen = generic_solution(s);
  std::vector<Configuration> cs = enumerate_all(s, 3);
  std::vector<const CellSet*> runs;
  for (auto& c : cs) runs.push_back(&c.set());
  auto tab = record_table(*gen, runs, 40);
  for (auto& c : cs) CHECK(firing_time(c.set(), *tab, 40) == firing_time(c.set(), *gen, 40));
  ParsedTrace pt = read_trace(write_trace(cs[0].set(), *gen, simulate(cs[0].set(), *gen, 5)));
  CHECK(pt.rows.size() == 6);
  CHECK(pt.cells.size() == cs[0].set().size());
}

TEST_CASE("repetition search on a counter trace finds nothing") {
  // states 0..9 marching along a line, each diagonal window distinct
  Trace tr;
  const int n = 12;
  for (int t = 0; t < n; ++t) {
    Row r(n);
    for (int k = 0; k < n; ++k) r[k] = static_cast<State>((t + 3 * k) % 97);
    tr.rows.push_back(r);
  }
  std::vector<int> diag(n);
  for (int k = 0; k < n; ++k) diag[k] = k;
  CHECK_FALSE(find_repetition(tr, diag, 1, 0, n - 1).has_value());
  CHECK_FALSE(find_repetition(tr, diag, 2, 1, n - 1).has_value());
  Trace flat = tr;
  for (auto& r : flat.rows) std::fill(r.begin(), r.end(), State{5});
  auto cert = find_repetition(flat, diag, 2, 1, n - 1);
  REQUIRE(cert);
  CHECK(cert->t0 == 1);
  CHECK(cert->t1 == 2);
  CHECK_THROWS_AS(find_repetition(tr, diag, 2, 0, n - 1), Error);
}

TEST_CASE("witness search and failure path") {
  Configuration c = build({Family::LSP}, Params{3, 1, 0, 0, 0, 0});
  auto w = find_witness({Family::LSP}, c, 7, default_search_scale(c));
  REQUIRE(w);
  CHECK(witness_holds(*w));
  CHECK(radius(w->c2.set()) > 7);
  // no witness below the radius-limited search scale
  CHECK_FALSE(find_witness({Family::LSP}, c, 7, 1).has_value());
  LowerBoundWitness bad = *w;
  bad.v2 = bad.c2.nodes.back();
  CHECK_FALSE(witness_holds(bad));
}

TEST_CASE("refuter rejects a broken automaton and pumps generics") {
  VariationSpec s{Family::LSP_ab, 1, 1};
  CHECK(refute_minimality(inject_early_fire(generic_solution(s), 2), s, 8).verdict == Verdict::NotASolution);
  CHECK(refute_minimality(generic_solution(s), s, 6).verdict == Verdict::NotMinimal);
}

TEST_CASE("corpus pins and detects corruption") {
  Corpus c = load_corpus();
  for (const PinResult& r : pin_all(c)) CHECK_MESSAGE(r.ok, r.id << ": " << r.diff);
  fs::path dir = temp_dir("corpus");
  write_corpus(dir.string());
  Corpus fresh = load_corpus(dir.string());
  for (const PinResult& r : pin_all(fresh)) CHECK(r.ok);
  const CorpusEntry& e = fresh.entry("lsp32-automaton");
  fs::path f = dir / e.path;
  std::string text = read_file(f.string());
  auto pos = text.find("firing");
  REQUIRE(pos != std::string::npos);
  write_file(f.string(), text.substr(0, pos) + "firing Q\n" + text.substr(text.find('\n', pos) + 1));
  PinResult broken = pin(fresh, e);
  CHECK_FALSE(broken.ok);
  CHECK_FALSE(broken.diff.empty());
  CHECK_THROWS_AS(fresh.entry("no-such-entry"), Error);
  fs::remove_all(dir);
}

TEST_CASE("command line exit codes") {
  CHECK(run("mft LSP 3 1") == 0);
  CHECK(run("simulate --config LSP:w=3,h=1 --builtin generic") == 0);
  CHECK(run("simulate --config LSP:w=3,h=1 --builtin generic --horizon 2") == 4);
  CHECK(run("frobnicate") == 2);
  CHECK(run("simulate --config NOPE:w=1") == 2);
  CHECK(run("simulate --config LSP:w=3,h=1 --automaton /nonexistent/file") == 2);
  CHECK(run("cover 5 3 10 6 --composed") == 0);
  CHECK(run("corpus pin") == 0);
}
