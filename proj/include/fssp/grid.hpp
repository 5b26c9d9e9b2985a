#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fssp {

// Error kinds shared across modules.
enum class ErrorKind {
  CellNotInConfiguration,
  Disconnected,
  EmptyCellSet,
  ParameterViolatesFamily,
  UnknownMft,
  MemberCheckFailure,
  Unsupported,
  PreconditionViolated,
  ModelMismatch,
  Parse,
  Io,
  CoverInvalid,
  ScaleBoundTooSmall,
  SideConditionFailure,
  Corpus,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
  Cell operator+(Cell o) const { return {x + o.x, y + o.y}; }
  Cell operator-(Cell o) const { return {x - o.x, y - o.y}; }
};

// Canonical order: y first, then x.
inline bool canonical_less(Cell a, Cell b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

struct CellLess {
  bool operator()(Cell a, Cell b) const { return canonical_less(a, b); }
};

inline std::uint64_t cell_key(Cell c) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.x)) << 32) |
         static_cast<std::uint32_t>(c.y);
}

// eps_0..eps_3 = east, north, west, south.
enum Dir : int { East = 0, North = 1, West = 2, South = 3 };
inline constexpr std::array<Cell, 4> kDirs = {Cell{1, 0}, Cell{0, 1}, Cell{-1, 0}, Cell{0, -1}};
inline constexpr int opposite(int d) { return (d + 2) & 3; }
int direction_between(Cell from, Cell to);  // -1 unless adjacent

// Bit i set iff v + eps_i is in the configuration.
using BoundaryCondition = std::uint8_t;
std::string bc_string(BoundaryCondition b);  // "(b0,b1,b2,b3)"
BoundaryCondition make_bc(int e, int n, int w, int s);

// Immutable set of cells with a general, plus adjacency and memoized BFS.
class CellSet {
 public:
  CellSet(std::vector<Cell> cells, Cell general);

  std::size_t size() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }
  Cell general() const { return cells_[general_index_]; }
  int general_index() const { return general_index_; }

  bool contains(Cell c) const { return index_.count(cell_key(c)) != 0; }
  int index_of(Cell c) const;     // throws CellNotInConfiguration
  int find(Cell c) const;         // -1 when absent
  Cell cell(int idx) const { return cells_[idx]; }
  int neighbor(int idx, int dir) const { return nbr_[idx][dir]; }
  BoundaryCondition bc(int idx) const { return bc_[idx]; }

  // BFS distances from a cell index, cached.
  const std::vector<int>& distances_from(int idx) const;

  bool operator==(const CellSet& o) const;

 private:
  std::vector<Cell> cells_;
  int general_index_ = 0;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<std::array<int, 4>> nbr_;
  std::vector<BoundaryCondition> bc_;
  mutable std::mutex cache_mu_;
  mutable std::unordered_map<int, std::shared_ptr<const std::vector<int>>> dist_cache_;
};

bool is_connected(const std::vector<Cell>& cells);

int distance(const CellSet& c, Cell v, Cell v2);
// d(v, v2; v3) = d(v, v3) + d(v3, v2)
int distance_via(const CellSet& c, Cell v, Cell v2, Cell v3);
int radius(const CellSet& c);
BoundaryCondition boundary_condition(const CellSet& c, Cell v);

}  // namespace fssp
