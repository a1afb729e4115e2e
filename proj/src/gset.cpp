#include "gspan/gset.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gspan/error.hpp"

namespace gspan {

namespace {

void require_same_group(const GroupPtr& a, const GroupPtr& b, const char* what) {
  if (!same_group(a, b)) fail(ErrorCode::GroupMismatch, what);
}

}  // namespace

// ---- GSet ----

GSet::GSet() : group_(trivial_group()), act_(std::make_shared<const std::vector<int>>()) {}

GSet GSet::from_flat(GroupPtr g, int size, std::vector<int> flat) {
  const int n = g->order();
  if (size < 0 || flat.size() != static_cast<std::size_t>(size) * n)
    fail(ErrorCode::NotAnAction, "action table has wrong shape");
  for (int v : flat)
    if (v < 0 || v >= size) fail(ErrorCode::NotAnAction, "action entry out of range");
  auto at = [&](int x, int a) { return flat[static_cast<std::size_t>(x) * n + a]; };
  for (int x = 0; x < size; ++x) {
    if (at(x, 0) != x) fail(ErrorCode::NotAnAction, "identity moves " + std::to_string(x));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (at(at(x, a), b) != at(x, g->mul(a, b)))
          fail(ErrorCode::NotAnAction, "(x.g).h != x.(gh) at x=" + std::to_string(x));
  }
  GSet s;
  s.group_ = std::move(g);
  s.size_ = size;
  s.act_ = std::make_shared<const std::vector<int>>(std::move(flat));
  return s;
}

GSet GSet::from_flat_unchecked(GroupPtr g, int size, std::vector<int> flat) {
  GSet s;
  s.group_ = std::move(g);
  s.size_ = size;
  s.act_ = std::make_shared<const std::vector<int>>(std::move(flat));
  return s;
}

GSet GSet::build(GroupPtr g, const std::vector<std::vector<int>>& act) {
  std::vector<int> flat;
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != g->order()) fail(ErrorCode::NotAnAction, "action row has wrong length");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return from_flat(std::move(g), static_cast<int>(act.size()), std::move(flat));
}

GSet GSet::orbit(GroupPtr g, const Subgroup& h) {
  const int n = g->order();
  std::vector<int> coset_of(n, -1), rep;
  for (int x = 0; x < n; ++x) {
    if (coset_of[x] >= 0) continue;
    int c = static_cast<int>(rep.size());
    rep.push_back(x);
    for (int y : h.elements) coset_of[g->mul(y, x)] = c;
  }
  const int m = static_cast<int>(rep.size());
  std::vector<int> flat(static_cast<std::size_t>(m) * n);
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < n; ++a) flat[static_cast<std::size_t>(c) * n + a] = coset_of[g->mul(rep[c], a)];
  GSet s;
  s.group_ = std::move(g);
  s.size_ = m;
  s.act_ = std::make_shared<const std::vector<int>>(std::move(flat));
  return s;
}

GSet GSet::regular(GroupPtr g) { return orbit(g, Subgroup{{0}}); }

GSet GSet::point(GroupPtr g) { return trivial_action(std::move(g), 1); }

GSet GSet::empty(GroupPtr g) { return trivial_action(std::move(g), 0); }

GSet GSet::trivial_action(GroupPtr g, int n) {
  GSet s;
  s.size_ = n;
  if (g->order() == 1) {
    // shared per thread; Fin-heavy loops build these constantly
    thread_local std::vector<std::shared_ptr<const std::vector<int>>> tables;
    if (static_cast<int>(tables.size()) <= n) tables.resize(n + 1);
    if (!tables[n]) {
      std::vector<int> flat(n);
      std::iota(flat.begin(), flat.end(), 0);
      tables[n] = std::make_shared<const std::vector<int>>(std::move(flat));
    }
    s.act_ = tables[n];
  } else {
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(n) * g->order());
    for (int x = 0; x < n; ++x) flat.insert(flat.end(), g->order(), x);
    s.act_ = std::make_shared<const std::vector<int>>(std::move(flat));
  }
  s.group_ = std::move(g);
  return s;
}

std::vector<std::vector<int>> GSet::rows() const {
  std::vector<std::vector<int>> r(size_, std::vector<int>(group_->order()));
  for (int x = 0; x < size_; ++x)
    for (int a = 0; a < group_->order(); ++a) r[x][a] = act(x, a);
  return r;
}

Subgroup GSet::stabilizer(int x) const {
  Subgroup s;
  for (int a = 0; a < group_->order(); ++a)
    if (act(x, a) == x) s.elements.push_back(a);
  return s;
}

bool operator==(const GSet& a, const GSet& b) {
  if (a.size_ != b.size_ || !same_group(a.group_, b.group_)) return false;
  return a.act_ == b.act_ || *a.act_ == *b.act_;
}

// ---- maps ----

EquivariantMap make_map(GSet source, GSet target, std::vector<int> map) {
  require_same_group(source.group(), target.group(), "map between different groups");
  if (static_cast<int>(map.size()) != source.size()) fail(ErrorCode::NotEquivariant, "map has wrong length");
  for (int v : map)
    if (v < 0 || v >= target.size()) fail(ErrorCode::NotEquivariant, "map value out of range");
  for (int x = 0; x < source.size(); ++x)
    for (int a = 0; a < source.group()->order(); ++a)
      if (map[source.act(x, a)] != target.act(map[x], a))
        fail(ErrorCode::NotEquivariant, "f(x.g) != f(x).g at x=" + std::to_string(x));
  return EquivariantMap{std::move(source), std::move(target), std::move(map)};
}

EquivariantMap identity_map(const GSet& x) {
  std::vector<int> m(x.size());
  std::iota(m.begin(), m.end(), 0);
  return EquivariantMap{x, x, std::move(m)};
}

EquivariantMap EquivariantMap::then(const EquivariantMap& g) const {
  if (!(target == g.source)) fail(ErrorCode::TargetMismatch, "maps are not composable");
  std::vector<int> m(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) m[i] = g.map[map[i]];
  return EquivariantMap{source, g.target, std::move(m)};
}

bool is_epi(const EquivariantMap& f) {
  std::vector<char> hit(f.target.size(), 0);
  for (int v : f.map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool is_mono(const EquivariantMap& f) {
  std::vector<char> hit(f.target.size(), 0);
  for (int v : f.map) {
    if (hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

EquivariantMap to_point(const GSet& x) {
  return EquivariantMap{x, GSet::point(x.group()), std::vector<int>(x.size(), 0)};
}

// ---- orbits ----

std::vector<int> orbit_index(const GSet& x) {
  std::vector<int> idx(x.size(), -1);
  int next = 0;
  for (int s = 0; s < x.size(); ++s) {
    if (idx[s] >= 0) continue;
    std::vector<int> queue{s};
    idx[s] = next;
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (int a = 0; a < x.group()->order(); ++a) {
        int y = x.act(queue[i], a);
        if (idx[y] < 0) {
          idx[y] = next;
          queue.push_back(y);
        }
      }
    ++next;
  }
  return idx;
}

std::vector<Orbit> orbit_decomposition(const GSet& x) {
  auto idx = orbit_index(x);
  int count = idx.empty() ? 0 : *std::max_element(idx.begin(), idx.end()) + 1;
  std::vector<Orbit> out(count);
  for (int s = 0; s < x.size(); ++s) out[idx[s]].elements.push_back(s);
  const auto& lat = x.group()->lattice();
  for (auto& o : out) {
    o.stabilizer = x.stabilizer(o.elements.front());
    o.stabilizer_class = lat.class_of_subgroup(o.stabilizer);
  }
  return out;
}

std::vector<OrbitType> orbit_types(const GSet& x) {
  std::map<int, int> count;
  for (const auto& o : orbit_decomposition(x)) ++count[o.stabilizer_class];
  std::vector<OrbitType> out;
  for (auto [c, m] : count) out.push_back({c, m});
  return out;
}

std::optional<EquivariantMap> gset_iso(const GSet& x, const GSet& y) {
  require_same_group(x.group(), y.group(), "gset_iso over different groups");
  if (x.size() != y.size()) return std::nullopt;
  auto ox = orbit_decomposition(x), oy = orbit_decomposition(y);
  if (ox.size() != oy.size()) return std::nullopt;
  std::map<int, std::vector<int>> pending;  // class -> y orbits, in order
  for (int i = static_cast<int>(oy.size()) - 1; i >= 0; --i) pending[oy[i].stabilizer_class].push_back(i);
  const FiniteGroup& g = *x.group();
  std::vector<int> map(x.size(), -1);
  for (const auto& o : ox) {
    auto& stack = pending[o.stabilizer_class];
    if (stack.empty()) return std::nullopt;
    const Orbit& t = oy[stack.back()];
    stack.pop_back();
    // move the base of t to a point whose stabilizer equals o's
    int c = -1;
    for (int a = 0; a < g.order() && c < 0; ++a)
      if (conjugate(g, t.stabilizer, a) == o.stabilizer) c = a;
    if (c < 0) return std::nullopt;
    int base = y.act(t.elements.front(), c);
    for (int a = 0; a < g.order(); ++a) map[x.act(o.elements.front(), a)] = y.act(base, a);
  }
  auto f = make_map(x, y, std::move(map));
  if (!is_mono(f)) return std::nullopt;
  return f;
}

// ---- limits and colimits ----

PullbackCarrier pullback_carrier(const GSet& a, const std::vector<int>& f, const GSet& b, const std::vector<int>& g,
                                 int target_size) {
  const int n = a.group()->order();
  // bucket B by image so pairs come out in lexicographic order without a full scan
  thread_local std::vector<int> start, cursor, order, rank, offset;
  start.assign(target_size + 1, 0);
  for (int y = 0; y < b.size(); ++y) ++start[g[y] + 1];
  for (int c = 0; c < target_size; ++c) start[c + 1] += start[c];
  cursor.assign(start.begin(), start.end() - 1);
  order.resize(b.size());
  rank.resize(b.size());
  for (int y = 0; y < b.size(); ++y) {
    int k = cursor[g[y]]++;
    order[k] = y;
    rank[y] = k - start[g[y]];
  }
  // (x, y) sits at offset[x] + rank[y]
  offset.resize(a.size() + 1);
  offset[0] = 0;
  for (int x = 0; x < a.size(); ++x) offset[x + 1] = offset[x] + start[f[x] + 1] - start[f[x]];
  const int m = offset[a.size()];
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m);
  for (int x = 0; x < a.size(); ++x)
    for (int k = start[f[x]]; k < start[f[x] + 1]; ++k) pairs.emplace_back(x, order[k]);
  std::vector<int> flat(static_cast<std::size_t>(m) * n);
  if (n == 1) {
    std::iota(flat.begin(), flat.end(), 0);
  } else {
    for (int i = 0; i < m; ++i) {
      auto [x, y] = pairs[i];
      for (int s = 0; s < n; ++s) flat[static_cast<std::size_t>(i) * n + s] = offset[a.act(x, s)] + rank[b.act(y, s)];
    }
  }
  return PullbackCarrier{GSet::from_flat_unchecked(a.group(), m, std::move(flat)), std::move(pairs)};
}

Pullback pullback(const EquivariantMap& f, const EquivariantMap& g) {
  if (!(f.target == g.target)) fail(ErrorCode::TargetMismatch, "pullback of maps with different targets");
  auto pc = pullback_carrier(f.source, f.map, g.source, g.map, f.target.size());
  const int m = pc.object.size();
  std::vector<int> p1(m), p2(m);
  for (int i = 0; i < m; ++i) {
    p1[i] = pc.pairs[i].first;
    p2[i] = pc.pairs[i].second;
  }
  GSet p = pc.object;
  return Pullback{p, EquivariantMap{p, f.source, std::move(p1)}, EquivariantMap{p, g.source, std::move(p2)},
                  std::move(pc.pairs)};
}

Coproduct coproduct(const GSet& x, const GSet& y) {
  require_same_group(x.group(), y.group(), "coproduct over different groups");
  const int n = x.group()->order();
  std::vector<int> flat(x.flat());
  flat.reserve(static_cast<std::size_t>(x.size() + y.size()) * n);
  for (int v : y.flat()) flat.push_back(v + x.size());
  GSet s = GSet::from_flat_unchecked(x.group(), x.size() + y.size(), std::move(flat));
  std::vector<int> l(x.size()), r(y.size());
  std::iota(l.begin(), l.end(), 0);
  std::iota(r.begin(), r.end(), x.size());
  return Coproduct{s, EquivariantMap{x, s, std::move(l)}, EquivariantMap{y, s, std::move(r)}};
}

Product product(const GSet& x, const GSet& y) {
  require_same_group(x.group(), y.group(), "product over different groups");
  const int n = x.group()->order(), m = x.size() * y.size();
  std::vector<int> flat(static_cast<std::size_t>(m) * n), p1(m), p2(m);
  for (int a = 0; a < x.size(); ++a)
    for (int b = 0; b < y.size(); ++b) {
      int i = a * y.size() + b;
      p1[i] = a;
      p2[i] = b;
      for (int s = 0; s < n; ++s) flat[static_cast<std::size_t>(i) * n + s] = x.act(a, s) * y.size() + y.act(b, s);
    }
  GSet p = GSet::from_flat_unchecked(x.group(), m, std::move(flat));
  return Product{p, EquivariantMap{p, x, std::move(p1)}, EquivariantMap{p, y, std::move(p2)}};
}

EquivariantMap copair(const Coproduct& c, const EquivariantMap& f, const EquivariantMap& g) {
  if (!(f.target == g.target)) fail(ErrorCode::TargetMismatch, "copairing maps with different targets");
  std::vector<int> m(f.map);
  m.insert(m.end(), g.map.begin(), g.map.end());
  return EquivariantMap{c.object, f.target, std::move(m)};
}

// ---- bisets ----

Biset::Biset()
    : left_(trivial_group()),
      right_(trivial_group()),
      lact_(std::make_shared<const std::vector<int>>()),
      ract_(std::make_shared<const std::vector<int>>()) {}

Biset Biset::from_flat(GroupPtr left, GroupPtr right, int size, std::vector<int> lf, std::vector<int> rf,
                       bool require_left_free) {
  const int nl = left->order(), nr = right->order();
  if (size < 0 || lf.size() != static_cast<std::size_t>(size) * nl || rf.size() != static_cast<std::size_t>(size) * nr)
    fail(ErrorCode::NotAnAction, "biset tables have wrong shape");
  for (int v : lf)
    if (v < 0 || v >= size) fail(ErrorCode::NotAnAction, "left action entry out of range");
  for (int v : rf)
    if (v < 0 || v >= size) fail(ErrorCode::NotAnAction, "right action entry out of range");
  auto L = [&](int g, int x) { return lf[static_cast<std::size_t>(g) * size + x]; };
  auto R = [&](int x, int h) { return rf[static_cast<std::size_t>(x) * nr + h]; };
  for (int x = 0; x < size; ++x) {
    if (L(0, x) != x || R(x, 0) != x) fail(ErrorCode::NotAnAction, "identity moves " + std::to_string(x));
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nl; ++b)
        if (L(a, L(b, x)) != L(left->mul(a, b), x)) fail(ErrorCode::NotAnAction, "left table is not an action");
    for (int a = 0; a < nr; ++a)
      for (int b = 0; b < nr; ++b)
        if (R(R(x, a), b) != R(x, right->mul(a, b))) fail(ErrorCode::NotAnAction, "right table is not an action");
    for (int a = 0; a < nl; ++a)
      for (int b = 0; b < nr; ++b)
        if (L(a, R(x, b)) != R(L(a, x), b))
          fail(ErrorCode::ActionsDoNotCommute, "g.(x.h) != (g.x).h at x=" + std::to_string(x));
  }
  bool free = true;
  for (int x = 0; x < size && free; ++x)
    for (int a = 1; a < nl && free; ++a) free = L(a, x) != x;
  if (require_left_free && !free) fail(ErrorCode::LeftActionNotFree, "left action has a fixed point");
  Biset b;
  b.left_ = std::move(left);
  b.right_ = std::move(right);
  b.size_ = size;
  b.left_free_ = free;
  b.lact_ = std::make_shared<const std::vector<int>>(std::move(lf));
  b.ract_ = std::make_shared<const std::vector<int>>(std::move(rf));
  return b;
}

Biset Biset::build(GroupPtr left, GroupPtr right, const std::vector<std::vector<int>>& left_act,
                   const std::vector<std::vector<int>>& right_act, bool require_left_free) {
  const int size = static_cast<int>(left_act.size());
  if (static_cast<int>(right_act.size()) != size) fail(ErrorCode::NotAnAction, "left and right tables differ in size");
  std::vector<int> lf(static_cast<std::size_t>(size) * left->order()), rf;
  for (int x = 0; x < size; ++x) {
    if (static_cast<int>(left_act[x].size()) != left->order()) fail(ErrorCode::NotAnAction, "left row has wrong length");
    if (static_cast<int>(right_act[x].size()) != right->order())
      fail(ErrorCode::NotAnAction, "right row has wrong length");
    for (int g = 0; g < left->order(); ++g) lf[static_cast<std::size_t>(g) * size + x] = left_act[x][g];
    rf.insert(rf.end(), right_act[x].begin(), right_act[x].end());
  }
  return from_flat(std::move(left), std::move(right), size, std::move(lf), std::move(rf), require_left_free);
}

std::vector<std::vector<int>> Biset::left_rows() const {
  std::vector<std::vector<int>> r(size_, std::vector<int>(left_->order()));
  for (int x = 0; x < size_; ++x)
    for (int g = 0; g < left_->order(); ++g) r[x][g] = left(g, x);
  return r;
}

std::vector<std::vector<int>> Biset::right_rows() const {
  std::vector<std::vector<int>> r(size_, std::vector<int>(right_->order()));
  for (int x = 0; x < size_; ++x)
    for (int h = 0; h < right_->order(); ++h) r[x][h] = right(x, h);
  return r;
}

GSet Biset::as_product_gset() const {
  auto p = direct_product(left_, right_);
  const int nr = right_->order(), np = p->order();
  std::vector<int> flat(static_cast<std::size_t>(size_) * np);
  for (int x = 0; x < size_; ++x)
    for (int g = 0; g < left_->order(); ++g)
      for (int h = 0; h < nr; ++h)
        flat[static_cast<std::size_t>(x) * np + g * nr + h] = left(left_->inv(g), right(x, h));
  return GSet::from_flat(p, size_, std::move(flat));
}

GSet Biset::right_gset() const { return GSet::from_flat(right_, size_, *ract_); }

bool operator==(const Biset& a, const Biset& b) {
  return a.size_ == b.size_ && same_group(a.left_, b.left_) && same_group(a.right_, b.right_) &&
         *a.lact_ == *b.lact_ && *a.ract_ == *b.ract_;
}

Biset biset_from_product_gset(GroupPtr left, GroupPtr right, const GSet& x, bool require_left_free) {
  const int nl = left->order(), nr = right->order();
  if (x.group()->order() != nl * nr) fail(ErrorCode::GroupMismatch, "G-set is not over L x R");
  std::vector<int> lf(static_cast<std::size_t>(x.size()) * nl), rf(static_cast<std::size_t>(x.size()) * nr);
  for (int s = 0; s < x.size(); ++s) {
    for (int g = 0; g < nl; ++g) lf[static_cast<std::size_t>(g) * x.size() + s] = x.act(s, left->inv(g) * nr);
    for (int h = 0; h < nr; ++h) rf[static_cast<std::size_t>(s) * nr + h] = x.act(s, h);
  }
  return Biset::from_flat(std::move(left), std::move(right), x.size(), std::move(lf), std::move(rf),
                          require_left_free);
}

bool is_biset_map(const Biset& s, const Biset& t, const std::vector<int>& map) {
  if (!same_group(s.left_group(), t.left_group()) || !same_group(s.right_group(), t.right_group())) return false;
  if (static_cast<int>(map.size()) != s.size()) return false;
  for (int v : map)
    if (v < 0 || v >= t.size()) return false;
  for (int x = 0; x < s.size(); ++x) {
    for (int g = 0; g < s.left_group()->order(); ++g)
      if (map[s.left(g, x)] != t.left(g, map[x])) return false;
    for (int h = 0; h < s.right_group()->order(); ++h)
      if (map[s.right(x, h)] != t.right(map[x], h)) return false;
  }
  return true;
}

BisetMap make_biset_map(Biset source, Biset target, std::vector<int> map) {
  if (!same_group(source.left_group(), target.left_group()) || !same_group(source.right_group(), target.right_group()))
    fail(ErrorCode::GroupMismatch, "biset map between different groups");
  if (!is_biset_map(source, target, map)) fail(ErrorCode::NotEquivariant, "map is not biequivariant");
  return BisetMap{std::move(source), std::move(target), std::move(map)};
}

BisetMap BisetMap::then(const BisetMap& g) const {
  if (!(target == g.source)) fail(ErrorCode::TargetMismatch, "biset maps are not composable");
  std::vector<int> m(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) m[i] = g.map[map[i]];
  return BisetMap{source, g.target, std::move(m)};
}

std::optional<BisetMap> biset_iso(const Biset& x, const Biset& y) {
  if (!same_group(x.left_group(), y.left_group()) || !same_group(x.right_group(), y.right_group()))
    fail(ErrorCode::GroupMismatch, "biset_iso over different groups");
  auto f = gset_iso(x.as_product_gset(), y.as_product_gset());
  if (!f) return std::nullopt;
  return make_biset_map(x, y, f->map);
}

Biset canonical_biset(GroupPtr left, GroupPtr right) {
  const int nl = left->order(), nr = right->order(), size = nl * nr;
  std::vector<int> lf(static_cast<std::size_t>(size) * nl), rf(static_cast<std::size_t>(size) * nr);
  for (int a = 0; a < nl; ++a)
    for (int b = 0; b < nr; ++b) {
      int x = a * nr + b;
      for (int h = 0; h < nl; ++h) lf[static_cast<std::size_t>(h) * size + x] = left->mul(h, a) * nr + b;
      for (int g = 0; g < nr; ++g) rf[static_cast<std::size_t>(x) * nr + g] = a * nr + right->mul(b, g);
    }
  return Biset::from_flat(std::move(left), std::move(right), size, std::move(lf), std::move(rf), true);
}

Biset conjugation_biset(GroupPtr g) {
  const int n = g->order();
  std::vector<int> lf(static_cast<std::size_t>(n) * n), rf(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) {
      lf[static_cast<std::size_t>(a) * n + x] = g->mul(a, x);
      rf[static_cast<std::size_t>(x) * n + a] = g->mul(x, a);
    }
  return Biset::from_flat(g, g, n, std::move(lf), std::move(rf), true);
}

Biset separable_biset(GroupPtr g, const GSet& t) {
  const int n = g->order(), m = t.size(), nr = t.group()->order(), size = n * m;
  std::vector<int> lf(static_cast<std::size_t>(size) * n), rf(static_cast<std::size_t>(size) * nr);
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < m; ++s) {
      int x = a * m + s;
      for (int b = 0; b < n; ++b) lf[static_cast<std::size_t>(b) * size + x] = g->mul(b, a) * m + s;
      for (int h = 0; h < nr; ++h) rf[static_cast<std::size_t>(x) * nr + h] = a * m + t.act(s, h);
    }
  return Biset::from_flat(std::move(g), t.group(), size, std::move(lf), std::move(rf), true);
}

Biset empty_biset(GroupPtr left, GroupPtr right) {
  return Biset::from_flat(std::move(left), std::move(right), 0, {}, {}, true);
}

Biset biset_coproduct(const Biset& x, const Biset& y) {
  if (!same_group(x.left_group(), y.left_group()) || !same_group(x.right_group(), y.right_group()))
    fail(ErrorCode::GroupMismatch, "coproduct of bisets over different groups");
  const int nl = x.left_group()->order(), nr = x.right_group()->order(), size = x.size() + y.size();
  std::vector<int> lf(static_cast<std::size_t>(size) * nl), rf;
  rf.reserve(static_cast<std::size_t>(size) * nr);
  for (int g = 0; g < nl; ++g) {
    for (int s = 0; s < x.size(); ++s) lf[static_cast<std::size_t>(g) * size + s] = x.left(g, s);
    for (int s = 0; s < y.size(); ++s) lf[static_cast<std::size_t>(g) * size + x.size() + s] = y.left(g, s) + x.size();
  }
  for (int s = 0; s < x.size(); ++s)
    for (int h = 0; h < nr; ++h) rf.push_back(x.right(s, h));
  for (int s = 0; s < y.size(); ++s)
    for (int h = 0; h < nr; ++h) rf.push_back(y.right(s, h) + x.size());
  return Biset::from_flat(x.left_group(), x.right_group(), size, std::move(lf), std::move(rf), false);
}

namespace {

// Left orbit id of every element, ids in order of least element.
std::vector<int> left_orbits(const Biset& x, int& count) {
  std::vector<int> id(x.size(), -1);
  count = 0;
  for (int s = 0; s < x.size(); ++s) {
    if (id[s] >= 0) continue;
    for (int g = 0; g < x.left_group()->order(); ++g) id[x.left(g, s)] = count;
    ++count;
  }
  return id;
}

}  // namespace

std::optional<SeparableWitness> is_separable(const Biset& x) {
  if (!x.left_free()) fail(ErrorCode::LeftActionNotFree, "separability needs a free left action");
  int count = 0;
  auto id = left_orbits(x, count);
  // g.x.h = x with g != e  <=>  x.h is a different point of the left orbit of x
  for (int s = 0; s < x.size(); ++s)
    for (int h = 0; h < x.right_group()->order(); ++h) {
      int y = x.right(s, h);
      if (y != s && id[y] == id[s]) return std::nullopt;
    }
  std::vector<int> rep(count, -1);
  for (int s = 0; s < x.size(); ++s)
    if (rep[id[s]] < 0) rep[id[s]] = s;
  const int nr = x.right_group()->order();
  std::vector<int> tflat(static_cast<std::size_t>(count) * nr);
  for (int t = 0; t < count; ++t)
    for (int h = 0; h < nr; ++h) tflat[static_cast<std::size_t>(t) * nr + h] = id[x.right(rep[t], h)];
  GSet t = GSet::from_flat(x.right_group(), count, std::move(tflat));

  // section along each H-orbit of T, transported from its least point
  std::vector<int> section(count, -1);
  for (int t0 = 0; t0 < count; ++t0) {
    if (section[t0] >= 0) continue;
    section[t0] = rep[t0];
    for (int h = 0; h < nr; ++h) {
      int t1 = t.act(t0, h);
      if (section[t1] < 0) section[t1] = x.right(rep[t0], h);
    }
  }
  const int n = x.left_group()->order();
  std::vector<int> iso(static_cast<std::size_t>(n) * count);
  for (int a = 0; a < n; ++a)
    for (int s = 0; s < count; ++s) iso[static_cast<std::size_t>(a) * count + s] = x.left(a, section[s]);
  Biset gt = separable_biset(x.left_group(), t);
  auto map = make_biset_map(gt, x, std::move(iso));
  std::vector<char> hit(x.size(), 0);
  for (int v : map.map) {
    if (hit[v]) fail(ErrorCode::FreenessFailure, "separable witness is not injective");
    hit[v] = 1;
  }
  return SeparableWitness{std::move(t), std::move(map), std::move(section)};
}

std::vector<BiOrbitType> biset_orbit_types(const Biset& x) {
  if (!x.left_free()) fail(ErrorCode::LeftActionNotFree, "orbit classification needs a free left action");
  const FiniteGroup& l = *x.left_group();
  const int nr = x.right_group()->order();
  GSet p = x.as_product_gset();
  std::vector<BiOrbitType> out;
  for (const auto& o : orbit_decomposition(p)) {
    int base = o.elements.front();
    std::vector<int> g_of(x.size(), -1);
    for (int g = 0; g < l.order(); ++g) g_of[x.left(g, base)] = g;
    BiOrbitType t;
    t.elements = o.elements;
    t.product_class = o.stabilizer_class;
    for (int h = 0; h < nr; ++h) {
      int g = g_of[x.right(base, h)];
      if (g < 0) continue;
      t.k.elements.push_back(h);
      t.phi.push_back(g);
    }
    t.phi_canonical = t.phi;
    for (int c = 0; c < l.order(); ++c) {
      std::vector<int> conj(t.phi.size());
      for (std::size_t i = 0; i < t.phi.size(); ++i) conj[i] = l.conjugate(t.phi[i], c);
      t.phi_canonical = std::min(t.phi_canonical, conj);
    }
    out.push_back(std::move(t));
  }
  return out;
}

Biset realize_bi_orbit(GroupPtr left, GroupPtr right, const Subgroup& k, const std::vector<int>& phi) {
  if (phi.size() != k.elements.size()) fail(ErrorCode::MalformedInput, "phi must list one image per element of K");
  auto p = direct_product(left, right);
  Subgroup s;
  for (std::size_t i = 0; i < phi.size(); ++i) s.elements.push_back(phi[i] * right->order() + k.elements[i]);
  std::sort(s.elements.begin(), s.elements.end());
  if (closure(*p, s.elements) != s) fail(ErrorCode::MalformedInput, "phi is not a homomorphism on a subgroup");
  return biset_from_product_gset(std::move(left), std::move(right), GSet::orbit(p, s), true);
}

}  // namespace gspan
