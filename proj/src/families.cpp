#include "fssp/families.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace fssp {

namespace {

struct FamilyInfo {
  Family f;
  const char* name;
  Shape shape;
  bool ratio;
  bool generalized;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::LSP, "LSP", Shape::LPath, false, false},
    {Family::gLSP, "gLSP", Shape::LPath, false, true},
    {Family::LSP_ab, "LSP_ab", Shape::LPath, true, false},
    {Family::gLSP_ab, "gLSP_ab", Shape::LPath, true, true},
    {Family::RECT_WALL, "RECT_WALL", Shape::Wall, false, false},
    {Family::gRECT_WALL, "gRECT_WALL", Shape::Wall, false, true},
    {Family::RECT_WALL_ab, "RECT_WALL_ab", Shape::Wall, true, false},
    {Family::gRECT_WALL_ab, "gRECT_WALL_ab", Shape::Wall, true, true},
    {Family::SQ_WALL, "SQ_WALL", Shape::Wall, false, false},
    {Family::gSQ_WALL, "gSQ_WALL", Shape::Wall, false, true},
    {Family::RECT, "RECT", Shape::Rect, false, false},
    {Family::gRECT, "gRECT", Shape::Rect, false, true},
    {Family::RECT_ab, "RECT_ab", Shape::Rect, true, false},
    {Family::gRECT_ab, "gRECT_ab", Shape::Rect, true, true},
    {Family::SQ, "SQ", Shape::Rect, false, false},
    {Family::gSQ, "gSQ", Shape::Rect, false, true},
    {Family::LSP_C_abcd, "LSP_C", Shape::LPath, true, false},
    {Family::EX1, "EX1", Shape::LPath, false, false},
    {Family::EX2A, "EX2A", Shape::Ex2, false, false},
    {Family::EX2B, "EX2B", Shape::Ex2, false, false},
    {Family::EX2C, "EX2C", Shape::Ex2, false, false},
    {Family::EX2D, "EX2D", Shape::Ex2, false, false},
};

const FamilyInfo& info(Family f) {
  for (const auto& fi : kFamilies)
    if (fi.f == f) return fi;
  throw Error(ErrorKind::Parse, "unknown family");
}

[[noreturn]] void violate(const std::string& why) {
  throw Error(ErrorKind::ParameterViolatesFamily, why);
}

bool is_square_family(Family f) {
  return f == Family::SQ || f == Family::gSQ || f == Family::SQ_WALL || f == Family::gSQ_WALL;
}

long long ipow2(int e) { return 1LL << e; }

constexpr int kMaxEx1R = 3;  // r = 4 already has 2^16 columns

Configuration with_tag(Configuration c, const VariationSpec& spec) {
  c.spec = spec;
  return c;
}

}  // namespace

const char* family_name(Family f) { return info(f).name; }

std::optional<Family> parse_family(const std::string& s) {
  for (const auto& fi : kFamilies)
    if (s == fi.name) return fi.f;
  if (s == "LSP_C_abcd") return Family::LSP_C_abcd;
  return std::nullopt;
}

Shape family_shape(Family f) { return info(f).shape; }
bool family_has_ratio(Family f) { return info(f).ratio; }
bool family_generalized(Family f) { return info(f).generalized; }

std::string spec_string(const VariationSpec& s) {
  std::ostringstream os;
  os << family_name(s.family);
  if (s.family == Family::LSP_C_abcd)
    os << '[' << s.a << ',' << s.b << ';' << s.c << ',' << s.d << ']';
  else if (family_has_ratio(s.family))
    os << '[' << s.a << ',' << s.b << ']';
  return os.str();
}

// ---------------------------------------------------------------- geometry

std::vector<Cell> lpath_nodes(int w, int h) {
  std::vector<Cell> p;
  for (int j = 0; j <= w; ++j) p.push_back({j, 0});
  for (int j = 1; j <= h; ++j) p.push_back({w, j});
  return p;
}

std::vector<Cell> wall_nodes(int w, int h) {
  int n = 2 * w + 2 * h;
  std::vector<Cell> p(n);
  for (int k = 0; k <= w; ++k) p[k] = {k, 0};
  for (int k = 1; k <= h; ++k) p[w + k] = {w, k};
  // p_{-k}: up the west side, then east along the north side
  for (int k = 1; k <= h; ++k) p[n - k] = {0, k};
  for (int k = h + 1; k < w + h; ++k) p[n - k] = {k - h, h};
  return p;
}

std::vector<Cell> ex2_cells(Family f, int w) {
  std::set<std::pair<int, int>> removed;
  int m = w / 2;
  auto cut = [&](int x, int y) { removed.insert({x, y}); };
  for (int k = 0; k < m; ++k) {
    int o = 2 * k + 1;
    switch (f) {
      case Family::EX2A:
        for (int x = 1; x <= o; ++x) cut(x, o);
        for (int y = 1; y <= o; ++y) cut(o, y);
        break;
      case Family::EX2B:
        for (int x = 1; x <= w - o; ++x) cut(x, o);
        for (int y = o; y <= w - 1; ++y) cut(w - o, y);
        break;
      case Family::EX2C:
        for (int x = o; x <= w - 1; ++x) cut(x, o);
        for (int y = o; y <= w - 1; ++y) cut(o, y);
        break;
      case Family::EX2D:
        for (int j = 0; j < m; ++j) cut(o, 2 * j + 1);
        break;
      default:
        throw Error(ErrorKind::Parse, "not an EX2 family");
    }
  }
  std::vector<Cell> cells;
  for (int y = 0; y <= w; ++y)
    for (int x = 0; x <= w; ++x)
      if (!removed.count({x, y})) cells.push_back({x, y});
  return cells;
}

Cell Configuration::node(int idx) const {
  int n = node_count();
  if (n == 0) throw Error(ErrorKind::CellNotInConfiguration, "configuration has no node labels");
  if (shape == Shape::LPath) {
    if (idx < 0 || idx >= n) throw Error(ErrorKind::CellNotInConfiguration, "node index out of range");
    return nodes[idx];
  }
  return nodes[((idx % n) + n) % n];
}

int Configuration::node_index(Cell c) const {
  for (int k = 0; k < node_count(); ++k)
    if (nodes[k] == c) return k;
  return -1;
}

std::string Configuration::name() const {
  std::ostringstream os;
  const Params& p = params;
  switch (shape) {
    case Shape::LPath: os << "C_L(" << p.w << ',' << p.h << ',' << p.i << ')'; break;
    case Shape::Wall: os << "C_RW(" << p.w << ',' << p.h << ',' << p.i << ')'; break;
    case Shape::Rect: os << "C_R(" << p.w << ',' << p.h << ",(" << p.r << ',' << p.s << "))"; break;
    case Shape::Ex2: os << "C_" << family_name(spec.family) << '(' << p.w << ')'; break;
    case Shape::Custom: os << "C_custom[" << cells->size() << ']'; break;
  }
  return os.str();
}

int Configuration::scale() const {
  Family f = spec.family;
  if (family_has_ratio(f) || f == Family::EX1 || is_square_family(f)) return params.l;
  if (shape == Shape::Ex2) return params.w / 2;
  return std::max(params.w, params.h);
}

Configuration make_lpath(int w, int h, int i) {
  if (w < 0 || h < 0 || i < 0 || i > w + h) violate("L-path parameters out of range");
  Configuration c;
  c.shape = Shape::LPath;
  c.params = {w, h, i, 0, 0, 0};
  c.nodes = lpath_nodes(w, h);
  c.cells = std::make_shared<CellSet>(c.nodes, c.nodes[i]);
  return c;
}

Configuration make_wall(int w, int h, int i) {
  if (w < 2 || h < 2) violate("walls need w, h >= 2");
  Configuration c;
  c.shape = Shape::Wall;
  int n = 2 * w + 2 * h;
  i = ((i % n) + n) % n;
  c.params = {w, h, i, 0, 0, 0};
  c.nodes = wall_nodes(w, h);
  c.cells = std::make_shared<CellSet>(c.nodes, c.nodes[i]);
  return c;
}

Configuration make_rect(int w, int h, Cell g) {
  if (w < 0 || h < 0 || g.x < 0 || g.x > w || g.y < 0 || g.y > h) violate("rectangle parameters out of range");
  Configuration c;
  c.shape = Shape::Rect;
  c.params = {w, h, 0, g.x, g.y, 0};
  std::vector<Cell> cells;
  for (int y = 0; y <= h; ++y)
    for (int x = 0; x <= w; ++x) cells.push_back({x, y});
  c.cells = std::make_shared<CellSet>(std::move(cells), g);
  return c;
}

Configuration make_custom(std::vector<Cell> cells, Cell general) {
  Configuration c;
  c.shape = Shape::Custom;
  c.cells = std::make_shared<CellSet>(std::move(cells), general);
  return c;
}

// ---------------------------------------------------------------- laws

namespace {

void check_spec(const VariationSpec& s) {
  if (family_has_ratio(s.family) && (s.a < 1 || s.b < 1)) violate("ratio parameters must be >= 1");
  if (s.family == Family::LSP_C_abcd && (s.c < 0 || s.d < 0)) violate("LSP-C offsets must be >= 0");
}

// Resolve w, h (and l) for a spec; throws on violation.
Params resolve(const VariationSpec& s, Params p) {
  check_spec(s);
  Family f = s.family;
  if (is_square_family(f)) {
    if (p.l == 0 && p.w > 0) p.l = p.w;
    p.w = p.h = p.l;
  } else if (f == Family::LSP_C_abcd) {
    if (p.l < 0) violate("LSP-C needs l >= 0");
    p.w = s.a * p.l + s.c;
    p.h = s.b * p.l + s.d;
  } else if (family_has_ratio(f)) {
    if (p.l == 0 && p.w > 0 && p.w % s.a == 0) p.l = p.w / s.a;
    if (p.w != 0 && p.w != s.a * p.l) violate("w does not match the ratio law");
    p.w = s.a * p.l;
    p.h = s.b * p.l;
  } else if (f == Family::EX1) {
    if (p.l < 1) violate("EX1 needs r >= 1");
    if (p.l > kMaxEx1R) throw Error(ErrorKind::Unsupported, "EX1 with r > 3 is too large to build");
    p.w = static_cast<int>(ipow2(p.l * p.l));
    p.h = p.w - p.l;
  }
  return p;
}

int min_scale(Family f) {
  switch (family_shape(f)) {
    case Shape::Wall: return 2;
    default: return f == Family::LSP_C_abcd ? 0 : 1;
  }
}

}  // namespace

Configuration build(const VariationSpec& spec, const Params& in) {
  Params p = resolve(spec, in);
  Family f = spec.family;
  bool gen = family_generalized(f);
  switch (family_shape(f)) {
    case Shape::LPath: {
      if (f == Family::LSP_C_abcd) {
        auto c = with_tag(make_lpath(p.w, p.h, p.w), spec);
        c.params.l = p.l;
        return c;
      }
      if (p.w < 1 || p.h < 1) violate("L-path families need w, h >= 1");
      if (family_has_ratio(f) && p.l < 1) violate("scale l must be >= 1");
      if (!gen && p.i != 0) violate("general must be at p_0");
      auto c = with_tag(make_lpath(p.w, p.h, p.i), spec);
      c.params.l = p.l;
      return c;
    }
    case Shape::Wall: {
      if (family_has_ratio(f) && p.l < 2) violate("wall families need l >= 2");
      if (p.w < 2 || p.h < 2) violate("walls need w, h >= 2");
      if (!gen && p.i != 0) violate("general must be at p_0");
      auto c = with_tag(make_wall(p.w, p.h, p.i), spec);
      c.params.l = p.l;
      return c;
    }
    case Shape::Rect: {
      if (p.w < 1 || p.h < 1) violate("rectangles need w, h >= 1");
      if (!gen && (p.r != 0 || p.s != 0)) violate("general must be at (0,0)");
      auto c = with_tag(make_rect(p.w, p.h, {p.r, p.s}), spec);
      c.params.l = p.l;
      return c;
    }
    case Shape::Ex2: {
      if (p.w < 2 || p.w % 2) violate("EX2 needs an even w >= 2");
      Configuration c;
      c.spec = spec;
      c.shape = Shape::Ex2;
      c.params = {p.w, p.w, 0, 0, 0, 0};
      c.nodes = wall_nodes(p.w, p.w);
      c.cells = std::make_shared<CellSet>(ex2_cells(f, p.w), Cell{0, 0});
      return c;
    }
    case Shape::Custom: break;
  }
  violate("cannot build this family");
}

bool member(const VariationSpec& spec, const Configuration& c) {
  if (c.shape != family_shape(spec.family)) return false;
  try {
    check_spec(spec);
  } catch (const Error&) {
    return false;
  }
  const Params& p = c.params;
  Family f = spec.family;
  Params q;
  q.i = p.i;
  q.r = p.r;
  q.s = p.s;
  if (is_square_family(f)) {
    if (p.w != p.h) return false;
    q.l = p.w;
  } else if (f == Family::LSP_C_abcd) {
    int lw = p.w - spec.c, lh = p.h - spec.d;
    if (lw < 0 || lh < 0 || lw % spec.a || lh % spec.b || lw / spec.a != lh / spec.b) return false;
    q.l = lw / spec.a;
    if (p.i != p.w) return false;
  } else if (family_has_ratio(f)) {
    if (p.w % spec.a || p.h % spec.b || p.w / spec.a != p.h / spec.b) return false;
    q.l = p.w / spec.a;
  } else if (f == Family::EX1) {
    int r = 0;
    for (int k = 1; k <= kMaxEx1R; ++k)
      if (ipow2(k * k) == p.w && p.h == p.w - k) r = k;
    if (!r) return false;
    q.l = r;
  } else {
    q.w = p.w;
    q.h = p.h;
  }
  try {
    Configuration b = build(spec, q);
    return *b.cells == *c.cells;
  } catch (const Error&) {
    return false;
  }
}

void enumerate(const VariationSpec& spec, int max_scale,
               const std::function<bool(const Configuration&)>& fn) {
  Family f = spec.family;
  bool gen = family_generalized(f);
  auto emit_placements = [&](Params p) -> bool {
    Params r = resolve(spec, p);
    Shape sh = family_shape(f);
    if (!gen || sh == Shape::Ex2) return fn(build(spec, p));
    if (sh == Shape::LPath) {
      for (int i = 0; i <= r.w + r.h; ++i) {
        p.i = i;
        if (!fn(build(spec, p))) return false;
      }
    } else if (sh == Shape::Wall) {
      for (int i = 0; i < 2 * r.w + 2 * r.h; ++i) {
        p.i = i;
        if (!fn(build(spec, p))) return false;
      }
    } else {
      for (int y = 0; y <= r.h; ++y)
        for (int x = 0; x <= r.w; ++x) {
          p.r = x;
          p.s = y;
          if (!fn(build(spec, p))) return false;
        }
    }
    return true;
  };
  int lo = min_scale(f);
  if (family_has_ratio(f) || is_square_family(f) || f == Family::EX1) {
    int hi = f == Family::EX1 ? std::min(max_scale, kMaxEx1R) : max_scale;
    for (int l = lo; l <= hi; ++l) {
      Params p;
      p.l = l;
      if (!emit_placements(p)) return;
    }
    return;
  }
  if (family_shape(f) == Shape::Ex2) {
    for (int k = 1; k <= max_scale; ++k) {
      Params p;
      p.w = 2 * k;
      if (!emit_placements(p)) return;
    }
    return;
  }
  // free two-parameter families: scale = max(w, h)
  for (int s = lo; s <= max_scale; ++s)
    for (int w = lo; w <= s; ++w)
      for (int h = lo; h <= s; ++h) {
        if (std::max(w, h) != s) continue;
        Params p;
        p.w = w;
        p.h = h;
        if (!emit_placements(p)) return;
      }
}

std::vector<Configuration> enumerate_all(const VariationSpec& spec, int max_scale) {
  std::vector<Configuration> out;
  enumerate(spec, max_scale, [&](const Configuration& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

// ---------------------------------------------------------------- descriptors

Descriptor parse_descriptor(const std::string& text) {
  Descriptor d;
  auto colon = text.find(':');
  std::string fam = text.substr(0, colon);
  auto f = parse_family(fam);
  if (!f) throw Error(ErrorKind::Parse, "unknown family '" + fam + "'");
  d.spec.family = *f;
  if (colon == std::string::npos) return d;
  std::stringstream ss(text.substr(colon + 1));
  std::string kv;
  while (std::getline(ss, kv, ',')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Parse, "expected key=value in '" + kv + "'");
    std::string k = kv.substr(0, eq);
    int v = 0;
    try {
      std::size_t used = 0;
      v = std::stoi(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad integer in '" + kv + "'");
    }
    if (k == "a") d.spec.a = v;
    else if (k == "b") d.spec.b = v;
    else if (k == "c") d.spec.c = v;
    else if (k == "d") d.spec.d = v;
    else if (k == "w") d.params.w = v;
    else if (k == "h") d.params.h = v;
    else if (k == "i") d.params.i = v;
    else if (k == "r" && d.spec.family == Family::EX1) d.params.l = v;
    else if (k == "r") d.params.r = v;
    else if (k == "s") d.params.s = v;
    else if (k == "l") d.params.l = v;
    else throw Error(ErrorKind::Parse, "unknown key '" + k + "'");
    d.keys.push_back(k);
  }
  return d;
}

std::string format_descriptor(const Configuration& c) {
  const VariationSpec& s = c.spec;
  const Params& p = c.params;
  std::ostringstream os;
  Family f = s.family;
  os << family_name(f) << ':';
  if (family_has_ratio(f)) {
    os << "a=" << s.a << ",b=" << s.b;
    if (f == Family::LSP_C_abcd) os << ",c=" << s.c << ",d=" << s.d;
    os << ",l=" << p.l;
  } else if (is_square_family(f)) {
    os << "l=" << p.l;
  } else if (f == Family::EX1) {
    os << "r=" << p.l;
  } else {
    os << "w=" << p.w;
    if (family_shape(f) != Shape::Ex2) os << ",h=" << p.h;
  }
  if (family_generalized(f)) {
    if (family_shape(f) == Shape::Rect) os << ",r=" << p.r << ",s=" << p.s;
    else os << ",i=" << p.i;
  }
  return os.str();
}

Configuration build_from_descriptor(const std::string& text) {
  Descriptor d = parse_descriptor(text);
  return build(d.spec, d.params);
}

// ---------------------------------------------------------------- symmetry

Cell BoxSymmetry::apply(Cell c) const {
  int W = w, H = h;
  if (k >= 4) c.x = W - c.x;
  for (int t = 0; t < k % 4; ++t) {
    c = {H - c.y, c.x};  // quarter turn counterclockwise
    std::swap(W, H);
  }
  return c;
}

int BoxSymmetry::out_w() const { return (k % 2) ? h : w; }
int BoxSymmetry::out_h() const { return (k % 2) ? w : h; }

WallNormal normalize_wall(int w, int h, int i) {
  auto orig = wall_nodes(w, h);
  int n = 2 * w + 2 * h;
  Cell g = orig[((i % n) + n) % n];
  for (int k = 0; k < 8; ++k) {
    BoxSymmetry s{k, w, h};
    int W = s.out_w(), H = s.out_h();
    if (W > H) continue;
    auto nodes = wall_nodes(W, H);
    Cell img = s.apply(g);
    for (int j = 0; j <= W + H; ++j)
      if (nodes[j] == img) return {s, W, H, j};
  }
  throw Error(ErrorKind::PreconditionViolated, "wall normalization failed");
}

}  // namespace fssp
