#include "fssp/grid.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace fssp {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::CellNotInConfiguration: return "cell-not-in-configuration";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::EmptyCellSet: return "empty";
    case ErrorKind::ParameterViolatesFamily: return "parameter-violates-family";
    case ErrorKind::UnknownMft: return "unknown-mft";
    case ErrorKind::MemberCheckFailure: return "member-check-failure";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::ModelMismatch: return "model-mismatch";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::CoverInvalid: return "cover-invalid";
    case ErrorKind::ScaleBoundTooSmall: return "scale-bound-too-small-for-threshold";
    case ErrorKind::SideConditionFailure: return "side-condition-failure";
    case ErrorKind::Corpus: return "corpus";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

int direction_between(Cell from, Cell to) {
  Cell d = to - from;
  for (int i = 0; i < 4; ++i)
    if (kDirs[i] == d) return i;
  return -1;
}

std::string bc_string(BoundaryCondition b) {
  std::ostringstream os;
  os << '(' << (b & 1) << ',' << ((b >> 1) & 1) << ',' << ((b >> 2) & 1) << ','
     << ((b >> 3) & 1) << ')';
  return os.str();
}

BoundaryCondition make_bc(int e, int n, int w, int s) {
  return static_cast<BoundaryCondition>((e ? 1 : 0) | (n ? 2 : 0) | (w ? 4 : 0) | (s ? 8 : 0));
}

bool is_connected(const std::vector<Cell>& cells) {
  if (cells.empty()) return false;
  std::unordered_set<std::uint64_t> all;
  for (Cell c : cells) all.insert(cell_key(c));
  std::unordered_set<std::uint64_t> seen{cell_key(cells[0])};
  std::deque<Cell> q{cells[0]};
  while (!q.empty()) {
    Cell c = q.front();
    q.pop_front();
    for (Cell d : kDirs) {
      Cell n = c + d;
      auto k = cell_key(n);
      if (all.count(k) && !seen.count(k)) {
        seen.insert(k);
        q.push_back(n);
      }
    }
  }
  return seen.size() == all.size();
}

CellSet::CellSet(std::vector<Cell> cells, Cell general) : cells_(std::move(cells)) {
  if (cells_.empty()) throw Error(ErrorKind::EmptyCellSet, "cell set is empty");
  std::sort(cells_.begin(), cells_.end(), canonical_less);
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (int i = 0; i < static_cast<int>(cells_.size()); ++i) index_[cell_key(cells_[i])] = i;
  auto g = index_.find(cell_key(general));
  if (g == index_.end())
    throw Error(ErrorKind::CellNotInConfiguration, "general is not a member cell");
  general_index_ = g->second;
  if (!is_connected(cells_)) throw Error(ErrorKind::Disconnected, "cell set is not connected");
  nbr_.resize(cells_.size());
  bc_.resize(cells_.size());
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    BoundaryCondition b = 0;
    for (int d = 0; d < 4; ++d) {
      nbr_[i][d] = find(cells_[i] + kDirs[d]);
      if (nbr_[i][d] >= 0) b |= static_cast<BoundaryCondition>(1u << d);
    }
    bc_[i] = b;
  }
}

int CellSet::find(Cell c) const {
  auto it = index_.find(cell_key(c));
  return it == index_.end() ? -1 : it->second;
}

int CellSet::index_of(Cell c) const {
  int i = find(c);
  if (i < 0)
    throw Error(ErrorKind::CellNotInConfiguration,
                "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ") not in configuration");
  return i;
}

const std::vector<int>& CellSet::distances_from(int idx) const {
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = dist_cache_.find(idx);
    if (it != dist_cache_.end()) return *it->second;
  }
  auto d = std::make_shared<std::vector<int>>(cells_.size(), -1);
  std::vector<int> q;
  q.reserve(cells_.size());
  (*d)[idx] = 0;
  q.push_back(idx);
  for (std::size_t h = 0; h < q.size(); ++h) {
    int c = q[h];
    for (int k = 0; k < 4; ++k) {
      int n = nbr_[c][k];
      if (n >= 0 && (*d)[n] < 0) {
        (*d)[n] = (*d)[c] + 1;
        q.push_back(n);
      }
    }
  }
  std::lock_guard<std::mutex> lk(cache_mu_);
  auto [it, _] = dist_cache_.emplace(idx, std::move(d));
  return *it->second;
}

bool CellSet::operator==(const CellSet& o) const {
  return cells_ == o.cells_ && general_index_ == o.general_index_;
}

int distance(const CellSet& c, Cell v, Cell v2) {
  return c.distances_from(c.index_of(v))[c.index_of(v2)];
}

int distance_via(const CellSet& c, Cell v, Cell v2, Cell v3) {
  return distance(c, v, v3) + distance(c, v3, v2);
}

int radius(const CellSet& c) {
  const auto& d = c.distances_from(c.general_index());
  return *std::max_element(d.begin(), d.end());
}

BoundaryCondition boundary_condition(const CellSet& c, Cell v) { return c.bc(c.index_of(v)); }

}  // namespace fssp
