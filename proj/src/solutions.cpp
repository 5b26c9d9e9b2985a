#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "fssp/engine.hpp"
#include "fssp/mft.hpp"
#include "fssp/solutions.hpp"

namespace fssp {

PartialSolution explicit_corner_check(int a, int b, int l) {
  VariationSpec spec{Family::LSP_ab, a, b, 0, 0};
  Params p;
  p.l = l;
  Configuration target = build(spec, p);
  const int w = target.params.w, deadline = mft(spec, target, Model::Traditional).value;
  std::vector<std::string> names = {"Q"};
  for (int k = 0; k < w; ++k) names.push_back("R" + std::to_string(k));
  for (int k = w; k <= deadline; ++k) names.push_back("S" + std::to_string(k));
  auto R = [](int k) { return static_cast<State>(1 + k); };
  auto S = [](int k) { return static_cast<State>(1 + k); };  // S_k follows R_{w-1}
  auto tab = std::make_shared<TableAutomaton>(Model::Traditional, names);
  tab->set_general_all(R(0));
  tab->set_firing(S(deadline));
  for (int k = 0; k + 1 < w; ++k) tab->set(kQ, {kQ, kBoundary, R(k), kBoundary}, R(k + 1));
  tab->set(kQ, {kBoundary, kQ, R(w - 1), kBoundary}, S(w));
  for (int k = w; k < deadline; ++k) {
    State opts[3] = {S(k), kQ, kBoundary};
    for (State self : {S(k), kQ})
      for (int m = 0; m < 81; ++m) {
        Inputs in;
        int x = m;
        bool any = self == S(k);
        for (int d = 0; d < 4; ++d, x /= 3) {
          in[d] = opts[x % 3];
          any = any || in[d] == S(k);
        }
        if (any) tab->set(self, in, S(k + 1));
      }
  }
  PartialSolution ps;
  ps.automaton = tab;
  ps.spec = spec;
  ps.domain = {target};
  ps.declared_ft = {deadline};
  return ps;
}

PartialSolution explicit_lsp32() { return explicit_corner_check(3, 2, 2); }

// ----------------------------------------------------------------- bc transfer

namespace {

class TransferAutomaton : public Automaton {
 public:
  explicit TransferAutomaton(AutomatonPtr base) : base_(std::move(base)) {
    contents_.push_back(Content{});  // Q: every copy quiescent, no bc yet
    contents_.push_back(Content{});  // F
    for (auto& s : contents_[0].copies) s = kQ;
    for (int b = 0; b < 16; ++b) gen_.copies[b] = base_->general_state(static_cast<BoundaryCondition>(b));
    gen_.is_general = true;
    general_ = intern(gen_);
  }

  Model model() const override { return Model::Traditional; }
  State general_state(BoundaryCondition) const override { return general_; }
  bool is_firing(State s) const override { return s == 1; }
  std::size_t num_states() const override {
    // every copy ranges over the base states; 17 bc-message values; plus the general flag
    long double n = 1;
    for (int k = 0; k < 16; ++k) n *= static_cast<long double>(base_->num_states());
    n = n * 17 + 2;
    if (n > static_cast<long double>(std::numeric_limits<std::size_t>::max()))
      return std::numeric_limits<std::size_t>::max();
    return static_cast<std::size_t>(n);
  }
  std::size_t num_firing_states() const override { return 1; }
  std::string state_name(State s) const override {
    if (s == kBoundary) return "#";
    if (s == kQ) return "Q";
    if (s == 1) return "F";
    Content c = content(s);
    std::ostringstream os;
    os << "x" << s << "[bc=" << (c.bmsg < 0 ? std::string("?") : bc_string(static_cast<BoundaryCondition>(c.bmsg)))
       << "]";
    return os.str();
  }

  State delta(State self, const Inputs& in) const override {
    if (self == 1) return 1;
    DeltaKey key{{self, in[0], in[1], in[2], in[3]}};
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Content sc = content(self);
    std::array<Content, 4> nc;
    for (int d = 0; d < 4; ++d)
      if (in[d] >= 0 && in[d] != 1) nc[d] = content(in[d]);
    Content next;
    next.bmsg = sc.bmsg;
    if (sc.is_general) {
      BoundaryCondition own = 0;
      for (int d = 0; d < 4; ++d)
        if (in[d] != kBoundary) own |= static_cast<BoundaryCondition>(1u << d);
      next.bmsg = own;
    }
    for (int d = 0; d < 4; ++d)
      if (in[d] >= 0 && in[d] != 1 && nc[d].bmsg >= 0) next.bmsg = nc[d].bmsg;
    bool fire = false;
    for (int b = 0; b < 16; ++b) {
      Inputs bi;
      for (int d = 0; d < 4; ++d) {
        if (in[d] == kBoundary) bi[d] = kBoundary;
        else if (in[d] == 1) bi[d] = kQ;  // a fired neighbour no longer drives the copies
        else bi[d] = nc[d].copies[b];
      }
      State cur = sc.copies[b];
      next.copies[b] = base_->is_firing(cur) ? cur : base_->delta(cur, bi);
      if (b == next.bmsg && base_->is_firing(next.copies[b]) && !base_->is_firing(cur)) fire = true;
    }
    State r = fire ? 1 : intern(next);
    std::lock_guard<std::mutex> lk(mu_);
    memo_[key] = r;
    return r;
  }

 private:
  struct Content {
    std::array<State, 16> copies{};
    int bmsg = -1;
    bool is_general = false;
  };
  std::string key(const Content& c) const {
    std::string k(reinterpret_cast<const char*>(c.copies.data()), sizeof(State) * 16);
    k += static_cast<char>(c.bmsg + 1);
    k += c.is_general ? 'g' : '-';
    return k;
  }
  State intern(const Content& c) const {
    bool q = c.bmsg < 0 && !c.is_general;
    for (State s : c.copies) q = q && s == kQ;
    if (q) return kQ;
    std::string k = key(c);
    std::lock_guard<std::mutex> lk(mu_);
    auto it = ids_.find(k);
    if (it != ids_.end()) return it->second;
    State id = static_cast<State>(contents_.size());
    contents_.push_back(c);
    ids_[k] = id;
    return id;
  }
  Content content(State s) const {
    std::lock_guard<std::mutex> lk(mu_);
    return contents_.at(s);
  }

  AutomatonPtr base_;
  Content gen_;
  State general_ = kQ;
  mutable std::mutex mu_;
  mutable std::vector<Content> contents_;
  mutable std::unordered_map<std::string, State> ids_;
  mutable std::unordered_map<DeltaKey, State, DeltaKeyHash> memo_;
};

}  // namespace

PartialSolution to_traditional(const PartialSolution& p) {
  if (p.automaton->model() != Model::BoundarySensitive)
    throw Error(ErrorKind::ModelMismatch, "to_traditional needs a boundary-sensitive automaton");
  for (std::size_t k = 0; k < p.domain.size(); ++k) {
    const CellSet& c = p.domain[k].set();
    if (c.size() == 1 || p.declared_ft[k] < radius(c) + 1)
      throw Error(ErrorKind::PreconditionViolated,
                  p.domain[k].name() + ": firing time " + std::to_string(p.declared_ft[k]) + " is below rad + 1");
  }
  PartialSolution out = p;
  out.automaton = std::make_shared<TransferAutomaton>(p.automaton);
  return out;
}

}  // namespace fssp
