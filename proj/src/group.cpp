#include "gspan/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

#include "gspan/error.hpp"

namespace gspan {

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

std::vector<char> mask_of(int n, const std::vector<int>& elements) {
  std::vector<char> m(n, 0);
  for (int x : elements) m[x] = 1;
  return m;
}

}  // namespace

Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(degree, 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      int a = c[i] - 1, b = c[(i + 1) % c.size()] - 1;
      if (a < 0 || a >= degree || b < 0 || b >= degree || used[a])
        fail(ErrorCode::MalformedTable, "bad cycle entry " + std::to_string(c[i]));
      used[a] = 1;
      p[a] = b;
    }
  return p;
}

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
  return a.elements < b.elements;
}

int SubgroupLattice::index_of(const std::vector<int>& sorted_elements) const {
  auto it = lookup.find(sorted_elements);
  return it == lookup.end() ? -1 : it->second;
}

int SubgroupLattice::class_of_subgroup(const Subgroup& h) const {
  int i = index_of(h.elements);
  return i < 0 ? -1 : class_of[i];
}

struct FiniteGroup::Cache {
  std::once_flag once;
  std::unique_ptr<SubgroupLattice> lattice;
};

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& mul, std::string name) {
  const int n = static_cast<int>(mul.size());
  if (n == 0) fail(ErrorCode::MalformedTable, "empty multiplication table");
  for (const auto& row : mul) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::MalformedTable, "table is not square");
    for (int v : row)
      if (v < 0 || v >= n) fail(ErrorCode::MalformedTable, "entry out of range: " + std::to_string(v));
  }
  int e = -1;
  for (int c = 0; c < n && e < 0; ++c) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = mul[c][a] == a && mul[a][c] == a;
    if (ok) e = c;
  }
  if (e < 0) fail(ErrorCode::NoIdentity, "no two-sided identity");
  for (int a = 0; a < n; ++a) {
    bool found = false;
    for (int b = 0; b < n && !found; ++b) found = mul[a][b] == e && mul[b][a] == e;
    if (!found) fail(ErrorCode::NoInverse, "element " + std::to_string(a) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
          fail(ErrorCode::NonAssociative, "(" + std::to_string(a) + "*" + std::to_string(b) + ")*" +
                                              std::to_string(c) + " differs");

  // identity first, other elements keep their input order
  std::vector<int> old_of;
  old_of.push_back(e);
  for (int a = 0; a < n; ++a)
    if (a != e) old_of.push_back(a);
  std::vector<int> new_of(n);
  for (int i = 0; i < n; ++i) new_of[old_of[i]] = i;

  FiniteGroup g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.mul_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.mul_[static_cast<std::size_t>(i) * n + j] = new_of[mul[old_of[i]][old_of[j]]];
  g.inv_.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mul(i, j) == 0) g.inv_[i] = j;
  g.cache_ = std::make_shared<Cache>();
  return g;
}

FiniteGroup FiniteGroup::from_permutations(int degree, const std::vector<Permutation>& gens, std::size_t cap,
                                           std::string name) {
  if (degree < 0) fail(ErrorCode::MalformedTable, "negative degree");
  for (const auto& p : gens) {
    if (static_cast<int>(p.size()) != degree) fail(ErrorCode::MalformedTable, "generator has wrong degree");
    std::vector<char> hit(degree, 0);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[v]) fail(ErrorCode::MalformedTable, "generator is not a permutation");
      hit[v] = 1;
    }
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elems{id};
  std::unordered_map<Permutation, int, VecHash> index{{id, 0}};
  auto add = [&](Permutation p) {
    if (index.count(p)) return;
    if (elems.size() >= cap)
      fail(ErrorCode::GeneratorClosureOverflow, "closure exceeds cap " + std::to_string(cap));
    index.emplace(p, static_cast<int>(elems.size()));
    elems.push_back(std::move(p));
  };
  for (const auto& p : gens) add(p);
  // x^(ab) = (x^a)^b, so (a*b)[x] = b[a[x]]
  auto compose = [&](const Permutation& a, const Permutation& b) {
    Permutation c(degree);
    for (int x = 0; x < degree; ++x) c[x] = b[a[x]];
    return c;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& s : gens) add(compose(elems[i], s));

  const int n = static_cast<int>(elems.size());
  FiniteGroup g;
  g.n_ = n;
  g.name_ = std::move(name);
  g.mul_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.mul_[static_cast<std::size_t>(i) * n + j] = index.at(compose(elems[i], elems[j]));
  g.inv_.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mul(i, j) == 0) g.inv_[i] = j;
  g.perms_ = std::move(elems);
  g.cache_ = std::make_shared<Cache>();
  return g;
}

FiniteGroup FiniteGroup::product_of(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.n_, nb = b.n_, n = na * nb;
  FiniteGroup g;
  g.n_ = n;
  g.name_ = (a.name_.empty() ? "?" : a.name_) + "x" + (b.name_.empty() ? "?" : b.name_);
  g.mul_.resize(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      g.mul_[static_cast<std::size_t>(x) * n + y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  g.inv_.resize(n);
  for (int x = 0; x < n; ++x) g.inv_[x] = a.inv(x / nb) * nb + b.inv(x % nb);
  g.cache_ = std::make_shared<Cache>();
  return g;
}

int FiniteGroup::element_order(int x) const {
  int k = 1;
  for (int y = x; y != 0; y = mul(y, x)) ++k;
  return k;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t[i][j] = mul(i, j);
  return t;
}

Subgroup closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  std::vector<int> list{0};
  in[0] = 1;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (int s : gens) {
      int y = g.mul(list[i], s);
      if (!in[y]) {
        in[y] = 1;
        list.push_back(y);
      }
    }
  std::sort(list.begin(), list.end());
  return Subgroup{std::move(list)};
}

std::vector<int> generators(const FiniteGroup& g, const Subgroup& h) {
  std::vector<int> gens;
  Subgroup cur{{0}};
  for (int x : h.elements) {
    if (cur.contains(x)) continue;
    gens.push_back(x);
    cur = closure(g, gens);
    if (cur.order() == h.order()) break;
  }
  return gens;
}

std::vector<int> generators(const FiniteGroup& g) {
  Subgroup all;
  all.elements.resize(g.order());
  std::iota(all.elements.begin(), all.elements.end(), 0);
  return generators(g, all);
}

Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int by) {
  Subgroup out;
  out.elements.reserve(h.elements.size());
  for (int x : h.elements) out.elements.push_back(g.conjugate(x, by));
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

Subgroup least_conjugate_in(const FiniteGroup& g, const Subgroup& u, const Subgroup& within) {
  Subgroup best = u;
  for (int s : within.elements) {
    Subgroup c = conjugate(g, u, s);
    if (subgroup_less(c, best)) best = std::move(c);
  }
  return best;
}

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  Subgroup out;
  for (int x = 0; x < g.order(); ++x)
    if (conjugate(g, h, x) == h) out.elements.push_back(x);
  return out;
}

bool is_subset(const Subgroup& h, const Subgroup& k) {
  return std::includes(k.elements.begin(), k.elements.end(), h.elements.begin(), h.elements.end());
}

bool is_subconjugate(const FiniteGroup& g, const Subgroup& h, const Subgroup& k) {
  if (k.order() % std::max(h.order(), 1) != 0) return false;
  for (int x = 0; x < g.order(); ++x)
    if (is_subset(conjugate(g, h, x), k)) return true;
  return false;
}

namespace {

std::unique_ptr<SubgroupLattice> build_lattice(const FiniteGroup& g) {
  const int n = g.order();
  struct Item {
    Subgroup h;
    std::vector<int> gens;
  };
  std::vector<Item> items{{Subgroup{{0}}, {}}};
  std::set<std::vector<int>> seen{{0}};
  for (std::size_t i = 0; i < items.size(); ++i) {
    auto in = mask_of(n, items[i].h.elements);
    for (int x = 0; x < n; ++x) {
      if (in[x]) continue;
      // <H, x> depends only on the coset Hx; take its least element
      bool least = true;
      for (int y : items[i].h.elements)
        if (g.mul(y, x) < x) {
          least = false;
          break;
        }
      if (!least) continue;
      auto gens = items[i].gens;
      gens.push_back(x);
      Subgroup k = closure(g, gens);
      if (seen.insert(k.elements).second) items.push_back({std::move(k), std::move(gens)});
    }
  }

  auto lat = std::make_unique<SubgroupLattice>();
  for (auto& it : items) lat->subgroups.push_back(std::move(it.h));
  std::sort(lat->subgroups.begin(), lat->subgroups.end(), subgroup_less);
  for (int i = 0; i < static_cast<int>(lat->subgroups.size()); ++i) lat->lookup.emplace(lat->subgroups[i].elements, i);

  const int m = static_cast<int>(lat->subgroups.size());
  lat->class_of.assign(m, -1);
  lat->conjugator.assign(m, -1);
  for (int i = 0; i < m; ++i) {
    if (lat->class_of[i] >= 0) continue;
    int c = static_cast<int>(lat->class_reps.size());
    lat->class_reps.push_back(i);
    for (int x = 0; x < n; ++x) {
      int j = lat->index_of(conjugate(g, lat->subgroups[i], x).elements);
      if (lat->class_of[j] < 0) {
        lat->class_of[j] = c;
        lat->conjugator[j] = x;
      }
    }
  }
  return lat;
}

}  // namespace

const SubgroupLattice& FiniteGroup::lattice() const {
  std::call_once(cache_->once, [this] { cache_->lattice = build_lattice(*this); });
  return *cache_->lattice;
}

const SubgroupLattice& subgroup_classes(const FiniteGroup& g) { return g.lattice(); }

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
  const int n = g.order();
  std::vector<char> done(n, 0);
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n; ++x) {
    if (done[x]) continue;
    std::vector<int> cls;
    for (int y = 0; y < n; ++y) {
      int c = g.conjugate(x, y);
      if (!done[c]) {
        done[c] = 1;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  }
  return out;
}

GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

GroupPtr trivial_group() {
  static const GroupPtr t = share(FiniteGroup::from_table({{0}}, "trivial"));
  return t;
}

bool same_group(const GroupPtr& a, const GroupPtr& b) { return a == b || (a && b && *a == *b); }

GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b) {
  static std::mutex mu;
  static std::map<std::pair<const FiniteGroup*, const FiniteGroup*>, std::tuple<GroupPtr, GroupPtr, GroupPtr>> memo;
  std::lock_guard lock(mu);
  auto key = std::make_pair(a.get(), b.get());
  auto it = memo.find(key);
  if (it != memo.end()) return std::get<2>(it->second);
  auto p = share(FiniteGroup::product_of(*a, *b));
  memo.emplace(key, std::make_tuple(a, b, p));
  return p;
}

bool GroupHom::is_trivial() const {
  return std::all_of(map.begin(), map.end(), [](int x) { return x == 0; });
}

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<int> map) {
  const int n = source->order();
  if (static_cast<int>(map.size()) != n) fail(ErrorCode::MalformedTable, "homomorphism table has wrong length");
  for (int v : map)
    if (v < 0 || v >= target->order()) fail(ErrorCode::MalformedTable, "homomorphism image out of range");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (map[source->mul(a, b)] != target->mul(map[a], map[b]))
        fail(ErrorCode::MalformedTable, "map is not a homomorphism");
  return GroupHom{std::move(source), std::move(target), std::move(map)};
}

GroupHom identity_hom(const GroupPtr& g) {
  std::vector<int> m(g->order());
  std::iota(m.begin(), m.end(), 0);
  return GroupHom{g, g, std::move(m)};
}

namespace {

// Images of `gens` fixed; extend along a spanning tree and check every edge.
struct Extender {
  const FiniteGroup& k;
  const FiniteGroup& g;
  std::vector<int> gens;
  std::vector<int> order;   // BFS order of K
  std::vector<int> parent;  // parent in the tree
  std::vector<int> via;     // generator index used to reach the node

  Extender(const FiniteGroup& k_, const FiniteGroup& g_) : k(k_), g(g_), gens(generators(k_)) {
    const int n = k.order();
    parent.assign(n, -1);
    via.assign(n, -1);
    std::vector<char> seen(n, 0);
    order.push_back(0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        int y = k.mul(order[i], gens[s]);
        if (!seen[y]) {
          seen[y] = 1;
          parent[y] = order[i];
          via[y] = static_cast<int>(s);
          order.push_back(y);
        }
      }
  }

  bool extend(const std::vector<int>& images, std::vector<int>& map) const {
    map.assign(k.order(), -1);
    map[0] = 0;
    for (std::size_t i = 1; i < order.size(); ++i) {
      int y = order[i];
      map[y] = g.mul(map[parent[y]], images[via[y]]);
    }
    for (int x = 0; x < k.order(); ++x)
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (map[k.mul(x, gens[s])] != g.mul(map[x], images[s])) return false;
    return true;
  }

  // Calls visit(map) for each homomorphism whose generator images satisfy pred.
  template <class Pred, class Visit>
  void each(Pred&& pred, Visit&& visit) const {
    const std::size_t r = gens.size();
    std::vector<std::vector<int>> cand(r);
    for (std::size_t s = 0; s < r; ++s) {
      int ord = k.element_order(gens[s]);
      for (int y = 0; y < g.order(); ++y)
        if (ord % g.element_order(y) == 0 && pred(s, y)) cand[s].push_back(y);
      if (cand[s].empty()) return;
    }
    std::vector<std::size_t> pos(r, 0);
    std::vector<int> images(r), map;
    while (true) {
      for (std::size_t s = 0; s < r; ++s) images[s] = cand[s][pos[s]];
      if (extend(images, map) && !visit(map)) return;
      std::size_t s = r;
      while (s > 0) {
        --s;
        if (++pos[s] < cand[s].size()) break;
        pos[s] = 0;
        if (s == 0) return;
      }
      if (r == 0) return;
    }
  }
};

}  // namespace

std::vector<GroupHom> enumerate_homomorphisms(const GroupPtr& source, const GroupPtr& target,
                                              std::size_t product_cap) {
  std::size_t prod = static_cast<std::size_t>(source->order()) * static_cast<std::size_t>(target->order());
  if (prod > product_cap)
    fail(ErrorCode::CapExceeded, "|K|*|G| = " + std::to_string(prod) + " exceeds " + std::to_string(product_cap));
  Extender ext(*source, *target);
  std::vector<std::vector<int>> maps;
  ext.each([](std::size_t, int) { return true; },
           [&](const std::vector<int>& m) {
             maps.push_back(m);
             return true;
           });
  std::sort(maps.begin(), maps.end());
  maps.erase(std::unique(maps.begin(), maps.end()), maps.end());
  std::vector<GroupHom> out;
  out.reserve(maps.size());
  for (auto& m : maps) out.push_back(GroupHom{source, target, std::move(m)});
  return out;
}

namespace detail {

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order()) return std::nullopt;
  std::vector<int> pa(a.order() + 1, 0), pb(b.order() + 1, 0);
  for (int x = 0; x < a.order(); ++x) ++pa[a.element_order(x)];
  for (int x = 0; x < b.order(); ++x) ++pb[b.element_order(x)];
  if (pa != pb) return std::nullopt;
  Extender ext(a, b);
  std::optional<std::vector<int>> found;
  ext.each([&](std::size_t s, int y) { return a.element_order(ext.gens[s]) == b.element_order(y); },
           [&](const std::vector<int>& m) {
             std::vector<char> hit(b.order(), 0);
             for (int v : m) {
               if (hit[v]) return true;
               hit[v] = 1;
             }
             found = m;
             return false;
           });
  return found;
}

}  // namespace detail

}  // namespace gspan
