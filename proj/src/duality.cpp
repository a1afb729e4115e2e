#include "gspan/duality.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "gspan/burnside.hpp"
#include "gspan/error.hpp"
#include "gspan/parallel.hpp"

namespace gspan {

// ---- pairing ----

PairingResult pairing(const Biset& x, const Biset& y) {
  if (!same_group(x.right_group(), y.left_group()) || !same_group(x.left_group(), y.right_group()))
    fail(ErrorCode::GroupMismatch, "pairing needs an (H,G)-biset and a (G,H)-biset");
  const int nx = x.size(), ny = y.size();
  std::vector<int> parent(static_cast<std::size_t>(nx) * ny);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  // the smaller root wins, so every root is the least member of its class
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a < b) parent[b] = a;
    else if (b < a) parent[a] = b;
  };
  auto gens_g = generators(*x.right_group());
  auto gens_h = generators(*x.left_group());
  for (int p = 0; p < nx; ++p)
    for (int q = 0; q < ny; ++q) {
      for (int g : gens_g) unite(x.right(p, g) * ny + q, p * ny + y.left(g, q));
      for (int h : gens_h) unite(x.left(h, p) * ny + q, p * ny + y.right(q, h));
    }
  PairingResult r;
  r.y_size = ny;
  r.projection.assign(parent.size(), -1);
  std::vector<int> number(parent.size(), -1);
  for (int i = 0; i < static_cast<int>(parent.size()); ++i) {
    int root = find(i);
    if (root == i) {
      number[i] = r.size++;
      r.section.emplace_back(i / ny, i % ny);
    }
    r.projection[i] = number[root];
  }
  return r;
}

std::vector<int> pairing_map(const PairingResult& src, const PairingResult& dst, const std::vector<int>& f,
                             const std::vector<int>& g) {
  std::vector<int> out(src.size);
  for (int c = 0; c < src.size; ++c) out[c] = dst.cls(f[src.section[c].first], g[src.section[c].second]);
  return out;
}

// ---- corpus ----

int BisetCorpus::arrow(int from, int to, int point) const {
  const auto& row = lookup_[static_cast<std::size_t>(from) * size() + to];
  return point >= 0 && point < static_cast<int>(row.size()) ? row[point] : -1;
}

namespace {

// reach[x] = some u with 0.u = x
std::vector<int> transversal(const GSet& x) {
  std::vector<int> reach(x.size(), -1);
  for (int u = x.group()->order() - 1; u >= 0; --u) reach[x.act(0, u)] = u;
  return reach;
}

bool fixes(const GSet& x, const Subgroup& s, int p) {
  for (int u : s.elements)
    if (x.act(p, u) != p) return false;
  return true;
}

}  // namespace

std::shared_ptr<const BisetCorpus> orbit_corpus(GroupPtr left, GroupPtr right, int bound, std::size_t arrow_cap) {
  auto c = std::make_shared<BisetCorpus>();
  const int nl = left->order(), nr = right->order();
  c->left = left;
  c->right = right;
  c->product = direct_product(left, right);
  c->bound = bound > 0 ? bound : std::max(2 * nl * nr, 6);
  const auto& lat = c->product->lattice();
  c->object_of_class.assign(lat.class_count(), -1);
  for (int cls = 0; cls < lat.class_count(); ++cls) {
    const Subgroup& s = lat.rep(cls);
    if (nl * nr / s.order() > c->bound) continue;
    bool free = true;
    for (int u : s.elements)
      if (u != 0 && u % nr == 0) free = false;
    if (!free) continue;
    Biset o = cls == 0 ? canonical_biset(left, right)
                       : biset_from_product_gset(left, right, GSet::orbit(c->product, s), true);
    if (cls == 0) c->canonical = c->size();
    c->object_of_class[cls] = c->size();
    c->product_sets.push_back(o.as_product_gset());
    c->stabilizers.push_back(c->product_sets.back().stabilizer(0));
    c->objects.push_back(std::move(o));
  }
  const int n = c->size();
  c->lookup_.assign(static_cast<std::size_t>(n) * n, {});
  c->out.assign(n, {});
  for (int i = 0; i < n; ++i) {
    auto reach = transversal(c->product_sets[i]);
    for (int j = 0; j < n; ++j) {
      const GSet& target = c->product_sets[j];
      auto& row = c->lookup_[static_cast<std::size_t>(i) * n + j];
      row.assign(target.size(), -1);
      for (int p = 0; p < target.size(); ++p) {
        if (!fixes(target, c->stabilizers[i], p)) continue;
        if (c->arrows.size() >= arrow_cap) fail(ErrorCode::CorpusOverflow, "corpus has too many arrows");
        CorpusArrow a{i, j, p, std::vector<int>(reach.size())};
        for (std::size_t x = 0; x < reach.size(); ++x) a.map[x] = target.act(p, reach[x]);
        row[p] = static_cast<int>(c->arrows.size());
        c->out[i].push_back(row[p]);
        c->arrows.push_back(std::move(a));
      }
    }
  }
  return c;
}

std::vector<Biset> left_free_bisets(GroupPtr left, GroupPtr right, int bound) {
  std::vector<Biset> out;
  if (bound <= 0) {
    out.push_back(empty_biset(left, right));
    return out;
  }
  auto c = orbit_corpus(left, right, bound);
  std::function<void(int, const Biset&)> go = [&](int from, const Biset& acc) {
    out.push_back(acc);
    for (int i = from; i < c->size(); ++i)
      if (acc.size() + c->objects[i].size() <= bound) go(i, biset_coproduct(acc, c->objects[i]));
  };
  go(0, empty_biset(left, right));
  return out;
}

std::vector<Biset> separable_bisets(GroupPtr g, GroupPtr h, int bound) {
  auto basis = orbit_basis(h);
  std::vector<Biset> out;
  for (const auto& coords : orbit_sums_up_to(basis, bound / g->order()))
    out.push_back(separable_biset(g, orbit_sum(basis, coords)));
  return out;
}

std::vector<std::vector<int>> biset_maps(const Biset& x, const Biset& y, std::size_t cap) {
  if (!same_group(x.left_group(), y.left_group()) || !same_group(x.right_group(), y.right_group()))
    fail(ErrorCode::GroupMismatch, "biset maps between different groups");
  const GSet px = x.as_product_gset(), py = y.as_product_gset();
  const int np = px.group()->order();
  struct Choice {
    int base;
    std::vector<int> candidates;
  };
  std::vector<Choice> orbits;
  for (const auto& o : orbit_decomposition(px)) {
    Choice ch{o.elements.front(), {}};
    for (int q = 0; q < py.size(); ++q)
      if (fixes(py, o.stabilizer, q)) ch.candidates.push_back(q);
    orbits.push_back(std::move(ch));
  }
  std::vector<std::vector<int>> out;
  std::vector<int> map(x.size(), -1);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == orbits.size()) {
      if (out.size() >= cap) fail(ErrorCode::CapExceeded, "too many biset maps");
      out.push_back(map);
      return;
    }
    for (int q : orbits[k].candidates) {
      for (int u = 0; u < np; ++u) map[px.act(orbits[k].base, u)] = py.act(q, u);
      go(k + 1);
    }
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

// ---- functor tables ----

void validate_functor(const FunctorTable& f) {
  auto bad = [](const std::string& what) { fail(ErrorCode::NotAFunctor, what); };
  if (!f.corpus) bad("no corpus");
  const BisetCorpus& c = *f.corpus;
  if (static_cast<int>(f.values.size()) != c.size()) bad("one value per object expected");
  if (f.arrow_values.size() != c.arrows.size()) bad("one function per arrow expected");
  if (f.empty_value < 0) bad("negative value on the empty biset");
  for (int v : f.values)
    if (v < 0) bad("negative object value");
  for (std::size_t a = 0; a < c.arrows.size(); ++a) {
    const auto& arr = c.arrows[a];
    const auto& fa = f.arrow_values[a];
    if (static_cast<int>(fa.size()) != f.values[arr.from]) bad("arrow " + std::to_string(a) + " has the wrong length");
    for (int v : fa)
      if (v < 0 || v >= f.values[arr.to]) bad("arrow " + std::to_string(a) + " leaves its target");
    if (arr.from == arr.to && arr.point == 0)
      for (int x = 0; x < static_cast<int>(fa.size()); ++x)
        if (fa[x] != x) bad("identity of object " + std::to_string(arr.from) + " not sent to an identity");
  }
  for (std::size_t a = 0; a < c.arrows.size(); ++a)
    for (int b : c.out[c.arrows[a].to]) {
      const int comp = c.arrow(c.arrows[a].from, c.arrows[b].to, c.arrows[b].map[c.arrows[a].point]);
      if (comp < 0) bad("corpus is not closed under composition");
      for (int x = 0; x < f.values[c.arrows[a].from]; ++x)
        if (f.arrow_values[comp][x] != f.arrow_values[b][f.arrow_values[a][x]])
          bad("composite of arrows " + std::to_string(a) + " and " + std::to_string(b) + " not preserved");
    }
}

FunctorTable tensor_functor(const Biset& x, std::shared_ptr<const BisetCorpus> corpus) {
  if (!same_group(x.left_group(), corpus->right) || !same_group(x.right_group(), corpus->left))
    fail(ErrorCode::GroupMismatch, "biset groups do not match the corpus");
  if (!x.left_free()) fail(ErrorCode::LeftActionNotFree, "tensor functor needs a left-free biset");
  FunctorTable t;
  const int n = corpus->size();
  std::vector<PairingResult> p;
  p.reserve(n);
  for (const auto& o : corpus->objects) p.push_back(pairing(o, x));
  std::vector<int> id(x.size());
  std::iota(id.begin(), id.end(), 0);
  for (const auto& r : p) t.values.push_back(r.size);
  t.arrow_values.reserve(corpus->arrows.size());
  for (const auto& a : corpus->arrows) t.arrow_values.push_back(pairing_map(p[a.from], p[a.to], a.map, id));
  t.corpus = std::move(corpus);
  return t;
}

FunctorTable tensor_functor(const Biset& x, int bound) {
  return tensor_functor(x, orbit_corpus(x.right_group(), x.left_group(), bound));
}

// ---- pce ----

PceReport preserves_pce(const FunctorTable& f, std::size_t max_failures) {
  validate_functor(f);
  const BisetCorpus& c = *f.corpus;
  PceReport rep;
  rep.empty_ok = f.empty_value == 0;
  for (std::size_t a = 0; a < c.arrows.size(); ++a) {
    std::vector<char> hit(f.values[c.arrows[a].to], 0);
    for (int v : f.arrow_values[a]) hit[v] = 1;
    if (std::count(hit.begin(), hit.end(), 0) > 0) rep.non_epi_arrows.push_back(static_cast<int>(a));
  }
  const FiniteGroup& prod = *c.product;
  const auto& lat = prod.lattice();
  std::vector<std::vector<int>> into(c.size());
  for (std::size_t a = 0; a < c.arrows.size(); ++a) into[c.arrows[a].to].push_back(static_cast<int>(a));
  for (int o3 = 0; o3 < c.size(); ++o3)
    for (int fa : into[o3])
      for (int ga : into[o3]) {
        if (rep.pullback_failures.size() >= max_failures) return rep;
        const auto& fr = c.arrows[fa];
        const auto& gr = c.arrows[ga];
        auto pb = pullback_carrier(c.product_sets[fr.from], fr.map, c.product_sets[gr.from], gr.map,
                                   c.product_sets[o3].size());
        PullbackFailure w;
        w.left = fa;
        w.right = ga;
        bool inside = true;
        for (const auto& orb : orbit_decomposition(pb.object)) {
          const int obj = c.object_of_class[orb.stabilizer_class];
          if (obj < 0) {
            inside = false;
            break;
          }
          // move to a point stabilized by exactly the object's base stabilizer
          const int conj = lat.conjugator[lat.index_of(orb.stabilizer.elements)];
          const int q = pb.object.act(orb.elements.front(), prod.inv(conj));
          w.apex_objects.push_back(obj);
          w.apex_left.push_back(c.arrow(obj, fr.from, pb.pairs[q].first));
          w.apex_right.push_back(c.arrow(obj, gr.from, pb.pairs[q].second));
        }
        if (!inside) {
          ++rep.squares_skipped;
          continue;
        }
        ++rep.squares_checked;
        // F(P) -> F(O1) x F(O2), then compare with the fiber product
        const int n1 = f.values[fr.from], n2 = f.values[gr.from];
        std::vector<int> seen(static_cast<std::size_t>(n1) * n2, -1);
        int offset = 0;
        for (std::size_t k = 0; k < w.apex_objects.size() && w.reason.empty(); ++k) {
          const auto& l = f.arrow_values[w.apex_left[k]];
          const auto& r = f.arrow_values[w.apex_right[k]];
          for (int z = 0; z < f.values[w.apex_objects[k]]; ++z) {
            int& slot = seen[static_cast<std::size_t>(l[z]) * n2 + r[z]];
            if (slot >= 0) {
              w.reason = "not injective";
              w.collided = {slot, offset + z};
              break;
            }
            slot = offset + z;
          }
          offset += f.values[w.apex_objects[k]];
        }
        w.image_size = 0;
        for (int obj : w.apex_objects) w.image_size += f.values[obj];
        const auto& ff = f.arrow_values[fa];
        const auto& gg = f.arrow_values[ga];
        for (int u = 0; u < n1; ++u)
          for (int v = 0; v < n2; ++v)
            if (ff[u] == gg[v]) {
              ++w.fiber_product_size;
              if (w.reason.empty() && seen[static_cast<std::size_t>(u) * n2 + v] < 0) {
                w.reason = "not surjective";
                w.missed = {u, v};
              }
            }
        if (!w.reason.empty()) rep.pullback_failures.push_back(std::move(w));
      }
  return rep;
}

// ---- torsors ----

namespace {

Biset as_biset(const GSet& x) {
  std::vector<int> left(x.size());
  std::iota(left.begin(), left.end(), 0);
  return Biset::from_flat(trivial_group(), x.group(), x.size(), std::move(left), x.flat(), false);
}

}  // namespace

std::optional<TorsorCertificate> is_torsor(const BisetMap& f, GroupPtr k, const std::vector<std::vector<int>>& act) {
  const Biset& s = f.source;
  const int n = s.size(), nk = k->order();
  auto bad = [](const std::string& what) { fail(ErrorCode::ActionIncompatible, what); };
  if (static_cast<int>(act.size()) != nk) bad("one row per element of K expected");
  for (const auto& row : act) {
    if (static_cast<int>(row.size()) != n) bad("action row has the wrong length");
    for (int v : row)
      if (v < 0 || v >= n) bad("action leaves the source");
  }
  for (int x = 0; x < n; ++x) {
    if (act[0][x] != x) bad("identity of K does not act trivially");
    for (int a = 0; a < nk; ++a) {
      for (int b = 0; b < nk; ++b)
        if (act[a][act[b][x]] != act[k->mul(a, b)][x]) bad("not a left action of K");
      for (int g = 0; g < s.left_group()->order(); ++g)
        if (act[a][s.left(g, x)] != s.left(g, act[a][x])) bad("K does not commute with the left action");
      for (int h = 0; h < s.right_group()->order(); ++h)
        if (act[a][s.right(x, h)] != s.right(act[a][x], h)) bad("K does not commute with the right action");
    }
  }
  std::vector<char> hit(f.target.size(), 0);
  for (int v : f.map) hit[v] = 1;
  if (std::count(hit.begin(), hit.end(), 0) > 0) return std::nullopt;
  for (int a = 0; a < nk; ++a)
    for (int x = 0; x < n; ++x)
      if (f.map[act[a][x]] != f.map[x]) return std::nullopt;
  TorsorCertificate cert{k, act, f, {}, {}};
  std::vector<int> index(static_cast<std::size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (f.map[x] == f.map[y]) {
        index[static_cast<std::size_t>(x) * n + y] = static_cast<int>(cert.fiber_pairs.size());
        cert.fiber_pairs.emplace_back(x, y);
      }
  if (cert.fiber_pairs.size() != static_cast<std::size_t>(n) * nk) return std::nullopt;
  std::vector<char> used(cert.fiber_pairs.size(), 0);
  cert.comparison.resize(static_cast<std::size_t>(n) * nk);
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < nk; ++a) {
      const int i = index[static_cast<std::size_t>(x) * n + act[a][x]];
      if (used[i]) return std::nullopt;
      used[i] = 1;
      cert.comparison[static_cast<std::size_t>(x) * nk + a] = i;
    }
  return cert;
}

std::optional<TorsorCertificate> is_torsor(const EquivariantMap& f, GroupPtr k,
                                           const std::vector<std::vector<int>>& act) {
  if (!same_group(f.source.group(), f.target.group())) fail(ErrorCode::GroupMismatch, "map between different groups");
  return is_torsor(BisetMap{as_biset(f.source), as_biset(f.target), f.map}, std::move(k), act);
}

GroupPtr opposite_product(const GroupPtr& h, const GroupPtr& g) {
  const int nh = h->order(), ng = g->order();
  std::vector<std::vector<int>> t(nh * ng, std::vector<int>(nh * ng));
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < ng; ++b)
      for (int a2 = 0; a2 < nh; ++a2)
        for (int b2 = 0; b2 < ng; ++b2) t[a * ng + b][a2 * ng + b2] = h->mul(a2, a) * ng + g->mul(b, b2);
  return share(FiniteGroup::from_table(t, h->name() + "^op x " + g->name()));
}

EpiClassification classify_epi_torsor(const BisetMap& f) {
  const Biset& s = f.source;
  const GroupPtr& h = s.left_group();
  const GroupPtr& g = s.right_group();
  if (!(s == canonical_biset(h, g))) fail(ErrorCode::WrongSource, "source is not the canonical biset H^op x G");
  std::vector<char> hit(f.target.size(), 0);
  for (int v : f.map) hit[v] = 1;
  if (std::count(hit.begin(), hit.end(), 0) > 0) fail(ErrorCode::NotEpi, "map is not surjective");
  EpiClassification out;
  out.ambient = opposite_product(h, g);
  const FiniteGroup& amb = *out.ambient;
  for (int x = 0; x < s.size(); ++x)
    if (f.map[x] == f.map[0]) out.k.elements.push_back(x);
  const auto& ke = out.k.elements;
  const int nk = out.k.order();
  std::vector<int> pos(s.size(), -1);
  for (int i = 0; i < nk; ++i) pos[ke[i]] = i;
  std::vector<std::vector<int>> table(nk, std::vector<int>(nk));
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < nk; ++j) {
      const int p = pos[amb.mul(ke[i], ke[j])];
      if (p < 0) fail(ErrorCode::FreenessFailure, "preimage of the base point is not a subgroup");
      table[i][j] = p;
    }
  auto kg = share(FiniteGroup::from_table(table, "K"));
  std::vector<std::vector<int>> act(nk, std::vector<int>(s.size()));
  for (int i = 0; i < nk; ++i)
    for (int x = 0; x < s.size(); ++x) act[i][x] = amb.mul(ke[i], x);
  auto cert = is_torsor(f, kg, act);
  if (!cert) fail(ErrorCode::FreenessFailure, "epimorphism out of the canonical biset is not a torsor");
  out.certificate = std::move(*cert);
  out.fibers_are_cosets = true;
  for (int x = 0; x < s.size() && out.fibers_are_cosets; ++x) {
    std::vector<int> coset, fiber;
    for (int k : ke) coset.push_back(amb.mul(k, x));
    for (int y = 0; y < s.size(); ++y)
      if (f.map[y] == f.map[x]) fiber.push_back(y);
    std::sort(coset.begin(), coset.end());
    out.fibers_are_cosets = coset == fiber;
  }
  return out;
}

// ---- natural transformations ----

namespace {

void same_corpus(const FunctorTable& f, const FunctorTable& g) {
  if (f.corpus != g.corpus) fail(ErrorCode::ShapeMismatch, "functor tables over different corpora");
}

}  // namespace

bool is_natural(const FunctorTable& f, const FunctorTable& g, const NaturalTransformation& eta) {
  same_corpus(f, g);
  const BisetCorpus& c = *f.corpus;
  if (static_cast<int>(eta.size()) != c.size()) return false;
  for (int i = 0; i < c.size(); ++i) {
    if (static_cast<int>(eta[i].size()) != f.values[i]) return false;
    for (int v : eta[i])
      if (v < 0 || v >= g.values[i]) return false;
  }
  for (std::size_t a = 0; a < c.arrows.size(); ++a) {
    const auto& arr = c.arrows[a];
    for (int x = 0; x < f.values[arr.from]; ++x)
      if (eta[arr.to][f.arrow_values[a][x]] != g.arrow_values[a][eta[arr.from][x]]) return false;
  }
  return true;
}

std::vector<NaturalTransformation> natural_transformations(const FunctorTable& f, const FunctorTable& g,
                                                           std::size_t cap) {
  same_corpus(f, g);
  const BisetCorpus& c = *f.corpus;
  NaturalTransformation eta(c.size());
  for (int i = 0; i < c.size(); ++i) eta[i].assign(f.values[i], -1);
  std::vector<std::pair<int, int>> trail;
  // assign and push consequences along outgoing arrows; false on conflict
  auto assign = [&](int obj, int x, int v) {
    std::vector<std::pair<int, int>> work{{obj, x}};
    eta[obj][x] = v;
    trail.emplace_back(obj, x);
    while (!work.empty()) {
      auto [o, p] = work.back();
      work.pop_back();
      for (int a : c.out[o]) {
        const int to = c.arrows[a].to;
        const int q = f.arrow_values[a][p];
        const int want = g.arrow_values[a][eta[o][p]];
        if (eta[to][q] < 0) {
          eta[to][q] = want;
          trail.emplace_back(to, q);
          work.emplace_back(to, q);
        } else if (eta[to][q] != want) {
          return false;
        }
      }
    }
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      eta[trail.back().first][trail.back().second] = -1;
      trail.pop_back();
    }
  };
  std::vector<NaturalTransformation> out;
  std::function<void(int, int)> go = [&](int obj, int x) {
    while (obj < c.size() && (x >= f.values[obj] || eta[obj][x] >= 0)) {
      if (x >= f.values[obj]) {
        ++obj;
        x = 0;
      } else {
        ++x;
      }
    }
    if (obj == c.size()) {
      if (out.size() >= cap) fail(ErrorCode::CapExceeded, "too many natural transformations");
      out.push_back(eta);
      return;
    }
    for (int v = 0; v < g.values[obj]; ++v) {
      const std::size_t mark = trail.size();
      if (assign(obj, x, v)) go(obj, x + 1);
      undo(mark);
    }
  };
  go(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

NaturalTransformation tensor_transformation(const FunctorTable& fx, const FunctorTable& fy, const BisetMap& f) {
  same_corpus(fx, fy);
  const BisetCorpus& c = *fx.corpus;
  NaturalTransformation eta;
  for (const auto& o : c.objects) {
    std::vector<int> id(o.size());
    std::iota(id.begin(), id.end(), 0);
    eta.push_back(pairing_map(pairing(o, f.source), pairing(o, f.target), id, f.map));
  }
  return eta;
}

// ---- reconstruction ----

Biset reconstruct_biset(const FunctorTable& f) {
  auto rep = preserves_pce(f, 1);
  if (!rep.ok()) fail(ErrorCode::PceViolation, "table does not preserve pullbacks, coproducts and epimorphisms");
  const BisetCorpus& c = *f.corpus;
  if (c.canonical < 0) fail(ErrorCode::PceViolation, "corpus does not contain the canonical biset");
  const GroupPtr& h = c.left;
  const GroupPtr& g = c.right;
  const int n = f.values[c.canonical], ng = g->order(), nh = h->order();
  std::vector<std::vector<int>> left(n, std::vector<int>(ng)), right(n, std::vector<int>(nh));
  for (int a = 0; a < ng; ++a) {
    const auto& m = f.arrow_values[c.arrow(c.canonical, c.canonical, a)];
    for (int x = 0; x < n; ++x) left[x][a] = m[x];
  }
  for (int b = 0; b < nh; ++b) {
    const auto& m = f.arrow_values[c.arrow(c.canonical, c.canonical, b * ng)];
    for (int x = 0; x < n; ++x) right[x][b] = m[x];
  }
  Biset x;
  try {
    x = Biset::build(g, h, left, right, true);
  } catch (const Error& e) {
    fail(ErrorCode::FreenessFailure, std::string("reconstructed actions: ") + e.what());
  }
  if (!is_separable(x)) fail(ErrorCode::FreenessFailure, "reconstructed biset is not separable");
  return x;
}

// ---- verifier ----

bool DualityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const DualityCheck& c) { return c.pass; });
}

namespace {

std::string coords_name(const std::string& head, const std::vector<int>& coords) {
  std::string s = head + "(";
  for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
  return s + ")";
}

// Multiplicity of each corpus object among the orbits of x.
std::vector<int> corpus_coords(const BisetCorpus& c, const Biset& x) {
  std::vector<int> coords(c.size(), 0);
  for (const auto& o : orbit_decomposition(x.as_product_gset())) {
    const int obj = c.object_of_class[o.stabilizer_class];
    if (obj >= 0) ++coords[obj];
  }
  return coords;
}

template <class Fn>
DualityCheck guarded(std::string clause, std::string subject, Fn&& fn) {
  DualityCheck d{std::move(clause), std::move(subject), false, {}};
  try {
    fn(d);
  } catch (const Error& e) {
    d.pass = false;
    d.detail = e.what();
  }
  return d;
}

// Clauses (a) to (c) for separable X in ^G Fin_H, functors on ^H Fin_G.
void phi_clauses(const GroupPtr& g, const GroupPtr& h, int bound, const std::shared_ptr<const BisetCorpus>& corpus,
                 unsigned jobs, const std::string& prefix, std::vector<DualityCheck>& checks) {
  auto basis = orbit_basis(h);
  auto all = orbit_sums_up_to(basis, bound / g->order());
  const std::size_t n = all.size();
  std::vector<Biset> xs;
  std::vector<std::string> names;
  for (const auto& coords : all) {
    xs.push_back(separable_biset(g, orbit_sum(basis, coords)));
    names.push_back(coords_name("T", coords));
  }
  auto tables = parallel_map<FunctorTable>(n, jobs, [&](std::size_t i) { return tensor_functor(xs[i], corpus); });
  auto pce = parallel_map<DualityCheck>(n, jobs, [&](std::size_t i) {
    return guarded(prefix + "pce", names[i], [&](DualityCheck& d) {
      auto r = preserves_pce(tables[i]);
      d.pass = r.ok();
      d.detail = "squares=" + std::to_string(r.squares_checked) + " skipped=" + std::to_string(r.squares_skipped);
    });
  });
  auto full = parallel_map<DualityCheck>(n * n, jobs, [&](std::size_t k) {
    const std::size_t i = k / n, j = k % n;
    return guarded(prefix + "full-faithful", names[i] + " -> " + names[j], [&](DualityCheck& d) {
      auto maps = biset_maps(xs[i], xs[j]);
      auto nats = natural_transformations(tables[i], tables[j]);
      std::set<NaturalTransformation> images;
      bool inside = true;
      for (const auto& m : maps) {
        auto eta = tensor_transformation(tables[i], tables[j], BisetMap{xs[i], xs[j], m});
        inside = inside && is_natural(tables[i], tables[j], eta) &&
                 std::binary_search(nats.begin(), nats.end(), eta);
        images.insert(std::move(eta));
      }
      d.pass = inside && images.size() == maps.size() && nats.size() == maps.size();
      d.detail = "maps=" + std::to_string(maps.size()) + " transformations=" + std::to_string(nats.size());
    });
  });
  auto trip = parallel_map<DualityCheck>(n, jobs, [&](std::size_t i) {
    return guarded(prefix + "round-trip", names[i], [&](DualityCheck& d) {
      Biset back = reconstruct_biset(tables[i]);
      d.pass = biset_iso(back, xs[i]).has_value();
      d.detail = "size=" + std::to_string(back.size());
    });
  });
  for (auto* part : {&pce, &full, &trip}) checks.insert(checks.end(), part->begin(), part->end());
}

}  // namespace

DualityReport verify_duality(const GroupPtr& g, const GroupPtr& h, int bound, bool include_nonseparable,
                             unsigned jobs) {
  if (g->order() > kDualityOrderCap || h->order() > kDualityOrderCap)
    fail(ErrorCode::CapExceeded, "group order above the duality cap");
  DualityReport rep;
  rep.g = g->name();
  rep.h = h->name();
  rep.bound = bound;
  rep.corpus = orbit_corpus(h, g);
  rep.corpus_bound = rep.corpus->bound;
  rep.corpus_objects = rep.corpus->size();
  rep.corpus_arrows = static_cast<int>(rep.corpus->arrows.size());
  phi_clauses(g, h, bound, rep.corpus, jobs, "", rep.checks);
  // H = * : pce functors on ^G Fin are right G-sets
  phi_clauses(trivial_group(), g, bound, orbit_corpus(g, trivial_group()), jobs, "theta-", rep.checks);
  if (!include_nonseparable) return rep;
  std::vector<Biset> others;
  std::vector<std::string> names;
  auto own = orbit_corpus(g, h, std::max(bound, 1));
  for (auto& x : left_free_bisets(g, h, bound))
    if (!is_separable(x)) {
      names.push_back(coords_name("O", corpus_coords(*own, x)));
      others.push_back(std::move(x));
    }
  if (same_group(g, h) && g->order() > 1) {
    others.push_back(conjugation_biset(g));
    names.push_back("conjugation");
  }
  std::vector<std::optional<PullbackFailure>> first(others.size());
  auto found = parallel_map<DualityCheck>(others.size(), jobs, [&](std::size_t i) {
    return guarded("nonseparable", names[i], [&](DualityCheck& d) {
      auto r = preserves_pce(tensor_functor(others[i], rep.corpus));
      d.pass = !r.ok();
      d.detail = r.pullback_failures.empty() ? "no pullback failure"
                                             : "pullback failure: " + r.pullback_failures.front().reason;
      if (!r.pullback_failures.empty()) first[i] = r.pullback_failures.front();
    });
  });
  rep.checks.insert(rep.checks.end(), found.begin(), found.end());
  if (!others.empty() && names.back() == "conjugation") rep.counterexample = first.back();
  return rep;
}

}  // namespace gspan
