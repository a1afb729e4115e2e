#include "gspan/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "gspan/error.hpp"

namespace gspan {

Groupoid groupoid_unchecked(int objects, std::vector<int> src, std::vector<int> tgt, std::vector<int> comp) {
  Groupoid g;
  g.objects_ = objects;
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  g.comp_ = std::move(comp);
  g.derive();
  return g;
}

void Groupoid::derive() {
  const int m = morphisms();
  out_.assign(objects_, {});
  for (int f = 0; f < m; ++f) out_[src_[f]].push_back(f);
  // in a groupoid the only idempotents are identities
  id_.assign(objects_, -1);
  for (int f = 0; f < m; ++f)
    if (src_[f] == tgt_[f] && id_[src_[f]] < 0 && then(f, f) == f) id_[src_[f]] = f;
  inv_.assign(m, -1);
  for (int f = 0; f < m; ++f) {
    if (id_[src_[f]] < 0) continue;
    for (int g : out_[tgt_[f]])
      if (then(f, g) == id_[src_[f]]) {
        inv_[f] = g;
        break;
      }
  }
}

Groupoid Groupoid::build(int objects, std::vector<int> src, std::vector<int> tgt,
                         const std::vector<std::vector<int>>& comp) {
  auto bad = [](const std::string& what) { fail(ErrorCode::NotAGroupoid, what); };
  const int m = static_cast<int>(src.size());
  if (objects < 0) bad("negative object count");
  if (static_cast<int>(tgt.size()) != m) bad("source and target tables differ in length");
  if (static_cast<int>(comp.size()) != m) bad("composition table needs one row per morphism");
  for (int f = 0; f < m; ++f)
    if (src[f] < 0 || src[f] >= objects || tgt[f] < 0 || tgt[f] >= objects)
      bad("morphism " + std::to_string(f) + " has an endpoint out of range");
  std::vector<int> flat(static_cast<std::size_t>(m) * m);
  for (int f = 0; f < m; ++f) {
    if (static_cast<int>(comp[f].size()) != m) bad("composition row " + std::to_string(f) + " has the wrong length");
    for (int g = 0; g < m; ++g) {
      const int h = comp[f][g];
      if (tgt[f] != src[g]) {
        if (h != -1) bad("composite of non-composable morphisms " + std::to_string(f) + ", " + std::to_string(g));
      } else if (h < 0 || h >= m || src[h] != src[f] || tgt[h] != tgt[g]) {
        bad("composite of " + std::to_string(f) + " and " + std::to_string(g) + " has the wrong endpoints");
      }
      flat[static_cast<std::size_t>(f) * m + g] = h;
    }
  }
  Groupoid out = groupoid_unchecked(objects, std::move(src), std::move(tgt), std::move(flat));
  for (int f = 0; f < m; ++f)
    for (int g : out.out(out.tgt(f)))
      for (int h : out.out(out.tgt(g)))
        if (out.then(out.then(f, g), h) != out.then(f, out.then(g, h))) bad("composition is not associative");
  for (int o = 0; o < objects; ++o) {
    const int e = out.identity(o);
    if (e < 0) bad("object " + std::to_string(o) + " has no identity");
    for (int f : out.out(o))
      if (out.then(e, f) != f) bad("identity of object " + std::to_string(o) + " is not a left unit");
    for (int f = 0; f < m; ++f)
      if (out.tgt(f) == o && out.then(f, e) != f) bad("identity of object " + std::to_string(o) + " is not a right unit");
  }
  for (int f = 0; f < m; ++f) {
    const int g = out.inverse(f);
    if (g < 0 || out.then(g, f) != out.identity(out.tgt(f))) bad("morphism " + std::to_string(f) + " is not invertible");
  }
  return out;
}

std::vector<std::vector<int>> Groupoid::comp_table() const {
  const int m = morphisms();
  std::vector<std::vector<int>> t(m, std::vector<int>(m));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) t[f][g] = then(f, g);
  return t;
}

Groupoid connected_groupoid(int n, const GroupPtr& k) {
  const int nk = k->order(), m = n * n * nk;
  std::vector<int> src(m), tgt(m), comp(static_cast<std::size_t>(m) * m, -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < nk; ++a) {
        const int f = (i * n + j) * nk + a;
        src[f] = i;
        tgt[f] = j;
        for (int l = 0; l < n; ++l)
          for (int b = 0; b < nk; ++b)
            comp[static_cast<std::size_t>(f) * m + (j * n + l) * nk + b] = (i * n + l) * nk + k->mul(a, b);
      }
  return groupoid_unchecked(n, std::move(src), std::move(tgt), std::move(comp));
}

Groupoid one_object(const GroupPtr& g) { return connected_groupoid(1, g); }

Groupoid groupoid_coproduct(const Groupoid& a, const Groupoid& b) {
  const int ma = a.morphisms(), m = ma + b.morphisms();
  std::vector<int> src(m), tgt(m), comp(static_cast<std::size_t>(m) * m, -1);
  for (int f = 0; f < m; ++f) {
    const bool left = f < ma;
    src[f] = left ? a.src(f) : a.objects() + b.src(f - ma);
    tgt[f] = left ? a.tgt(f) : a.objects() + b.tgt(f - ma);
  }
  for (int f = 0; f < ma; ++f)
    for (int g = 0; g < ma; ++g) comp[static_cast<std::size_t>(f) * m + g] = a.then(f, g);
  for (int f = ma; f < m; ++f)
    for (int g = ma; g < m; ++g) {
      const int h = b.then(f - ma, g - ma);
      comp[static_cast<std::size_t>(f) * m + g] = h < 0 ? -1 : h + ma;
    }
  return groupoid_unchecked(a.objects() + b.objects(), std::move(src), std::move(tgt), std::move(comp));
}

// ---- functors ----

GroupoidFunctor make_functor(Groupoid source, Groupoid target, std::vector<int> objects, std::vector<int> morphisms) {
  auto bad = [](const std::string& what) { fail(ErrorCode::NotAFunctor, what); };
  if (static_cast<int>(objects.size()) != source.objects()) bad("object map has the wrong length");
  if (static_cast<int>(morphisms.size()) != source.morphisms()) bad("morphism map has the wrong length");
  for (int v : objects)
    if (v < 0 || v >= target.objects()) bad("object image out of range");
  for (int v : morphisms)
    if (v < 0 || v >= target.morphisms()) bad("morphism image out of range");
  for (int f = 0; f < source.morphisms(); ++f)
    if (target.src(morphisms[f]) != objects[source.src(f)] || target.tgt(morphisms[f]) != objects[source.tgt(f)])
      bad("morphism " + std::to_string(f) + " is sent between the wrong objects");
  for (int o = 0; o < source.objects(); ++o)
    if (morphisms[source.identity(o)] != target.identity(objects[o]))
      bad("identity of object " + std::to_string(o) + " not preserved");
  for (int f = 0; f < source.morphisms(); ++f)
    for (int g : source.out(source.tgt(f)))
      if (morphisms[source.then(f, g)] != target.then(morphisms[f], morphisms[g]))
        bad("composite of " + std::to_string(f) + " and " + std::to_string(g) + " not preserved");
  return GroupoidFunctor{std::move(source), std::move(target), std::move(objects), std::move(morphisms)};
}

GroupoidFunctor identity_functor(const Groupoid& g) {
  std::vector<int> o(g.objects()), m(g.morphisms());
  std::iota(o.begin(), o.end(), 0);
  std::iota(m.begin(), m.end(), 0);
  return GroupoidFunctor{g, g, std::move(o), std::move(m)};
}

GroupoidFunctor compose_functors(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  if (!(f.target == g.source)) fail(ErrorCode::TargetMismatch, "functors do not compose");
  GroupoidFunctor h{f.source, g.target, f.objects, f.morphisms};
  for (int& v : h.objects) v = g.objects[v];
  for (int& v : h.morphisms) v = g.morphisms[v];
  return h;
}

FibrationCheck is_discrete_fibration(const GroupoidFunctor& f) {
  const Groupoid& e = f.source;
  const Groupoid& b = f.target;
  FibrationCheck r;
  std::vector<int> count(b.morphisms(), 0);
  for (int x = 0; x < e.objects(); ++x) {
    for (int psi : e.out(x)) ++count[f.morphisms[psi]];
    for (int phi : b.out(f.objects[x]))
      if (r.ok && count[phi] != 1) r = FibrationCheck{false, phi, x, count[phi]};
    for (int psi : e.out(x)) count[f.morphisms[psi]] = 0;
    if (!r.ok) break;
  }
  return r;
}

ActionGroupoid action_groupoid(const GSet& x, int n) {
  const GroupPtr& k = x.group();
  const int nk = k->order(), nx = x.size(), objs = n * nx, m = objs * n * nk;
  std::vector<int> src(m), tgt(m), comp(static_cast<std::size_t>(m) * m, -1);
  std::vector<int> proj(m), proj_obj(objs);
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < nx; ++p) {
      proj_obj[i * nx + p] = i;
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < nk; ++a) {
          const int f = ((i * nx + p) * n + j) * nk + a;
          const int q = x.act(p, a);
          src[f] = i * nx + p;
          tgt[f] = j * nx + q;
          proj[f] = (i * n + j) * nk + a;
          for (int l = 0; l < n; ++l)
            for (int b = 0; b < nk; ++b)
              comp[static_cast<std::size_t>(f) * m + ((j * nx + q) * n + l) * nk + b] =
                  ((i * nx + p) * n + l) * nk + k->mul(a, b);
        }
    }
  ActionGroupoid out;
  out.groupoid = groupoid_unchecked(objs, std::move(src), std::move(tgt), std::move(comp));
  out.projection = GroupoidFunctor{out.groupoid, connected_groupoid(n, k), std::move(proj_obj), std::move(proj)};
  return out;
}

GroupoidFunctor action_functor(const EquivariantMap& f) {
  const int nk = f.source.group()->order();
  GroupoidFunctor out{action_groupoid(f.source).groupoid, action_groupoid(f.target).groupoid, f.map, {}};
  out.morphisms.resize(static_cast<std::size_t>(f.source.size()) * nk);
  for (int p = 0; p < f.source.size(); ++p)
    for (int a = 0; a < nk; ++a) out.morphisms[p * nk + a] = f.map[p] * nk + a;
  return out;
}

StrictPullback strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
  if (!(f.target == g.target)) fail(ErrorCode::TargetMismatch, "pullback of functors into different groupoids");
  const Groupoid& a = f.source;
  const Groupoid& b = g.source;
  const Groupoid& c = f.target;
  StrictPullback pb;
  std::vector<int> obj_index(static_cast<std::size_t>(a.objects()) * b.objects(), -1);
  for (int x = 0; x < a.objects(); ++x)
    for (int y = 0; y < b.objects(); ++y)
      if (f.objects[x] == g.objects[y]) {
        obj_index[static_cast<std::size_t>(x) * b.objects() + y] = static_cast<int>(pb.object_pairs.size());
        pb.object_pairs.emplace_back(x, y);
      }
  std::vector<std::vector<int>> over(c.morphisms());
  for (int beta = 0; beta < b.morphisms(); ++beta) over[g.morphisms[beta]].push_back(beta);
  std::vector<int> mor_index(static_cast<std::size_t>(a.morphisms()) * b.morphisms(), -1);
  for (int alpha = 0; alpha < a.morphisms(); ++alpha)
    for (int beta : over[f.morphisms[alpha]]) {
      mor_index[static_cast<std::size_t>(alpha) * b.morphisms() + beta] = static_cast<int>(pb.morphism_pairs.size());
      pb.morphism_pairs.emplace_back(alpha, beta);
    }
  const int m = static_cast<int>(pb.morphism_pairs.size());
  std::vector<int> src(m), tgt(m), comp(static_cast<std::size_t>(m) * m, -1);
  auto obj = [&](int x, int y) { return obj_index[static_cast<std::size_t>(x) * b.objects() + y]; };
  auto mor = [&](int x, int y) { return mor_index[static_cast<std::size_t>(x) * b.morphisms() + y]; };
  for (int u = 0; u < m; ++u) {
    auto [alpha, beta] = pb.morphism_pairs[u];
    src[u] = obj(a.src(alpha), b.src(beta));
    tgt[u] = obj(a.tgt(alpha), b.tgt(beta));
  }
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v) {
      if (tgt[u] != src[v]) continue;
      auto [a1, b1] = pb.morphism_pairs[u];
      auto [a2, b2] = pb.morphism_pairs[v];
      comp[static_cast<std::size_t>(u) * m + v] = mor(a.then(a1, a2), b.then(b1, b2));
    }
  pb.object = groupoid_unchecked(static_cast<int>(pb.object_pairs.size()), std::move(src), std::move(tgt),
                                 std::move(comp));
  pb.proj1 = GroupoidFunctor{pb.object, a, {}, {}};
  pb.proj2 = GroupoidFunctor{pb.object, b, {}, {}};
  for (auto [x, y] : pb.object_pairs) {
    pb.proj1.objects.push_back(x);
    pb.proj2.objects.push_back(y);
  }
  for (auto [x, y] : pb.morphism_pairs) {
    pb.proj1.morphisms.push_back(x);
    pb.proj2.morphisms.push_back(y);
  }
  return pb;
}

// ---- global spans ----

GlobalSpan make_global_span(GroupoidFunctor ingressive, GroupoidFunctor egressive) {
  if (!(ingressive.source == egressive.source)) fail(ErrorCode::FeetMismatch, "legs start at different groupoids");
  auto check = is_discrete_fibration(ingressive);
  if (!check.ok)
    fail(ErrorCode::IngressiveNotFibration, "morphism " + std::to_string(check.morphism) + " has " +
                                                std::to_string(check.lifts) + " lifts at object " +
                                                std::to_string(check.object));
  GlobalSpan s{ingressive.target, egressive.target, ingressive.source, std::move(ingressive), std::move(egressive)};
  return s;
}

GlobalSpan compose_global_spans(const GlobalSpan& s, const GlobalSpan& t) {
  if (!(s.right == t.left)) fail(ErrorCode::FeetMismatch, "right foot of the first span differs from left foot of the second");
  auto pb = strict_pullback(s.egressive, t.ingressive);
  return make_global_span(compose_functors(pb.proj1, s.ingressive), compose_functors(pb.proj2, t.egressive));
}

GlobalSpan action_span(const Span& s) {
  return make_global_span(action_functor(s.left_map()), action_functor(s.right_map()));
}

// ---- skeleta ----

namespace {

std::vector<std::vector<int>> components(const Groupoid& g) {
  std::vector<int> comp(g.objects(), -1);
  std::vector<std::vector<int>> out;
  for (int o = 0; o < g.objects(); ++o) {
    if (comp[o] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.push_back({o});
    comp[o] = c;
    for (std::size_t i = 0; i < out[c].size(); ++i)
      for (int f : g.out(out[c][i]))
        if (comp[g.tgt(f)] < 0) {
          comp[g.tgt(f)] = c;
          out[c].push_back(g.tgt(f));
        }
    std::sort(out[c].begin(), out[c].end());
  }
  return out;
}

// Automorphisms of an object, identity first, then ascending.
std::vector<int> automorphisms(const Groupoid& g, int obj) {
  std::vector<int> auts{g.identity(obj)};
  for (int f : g.out(obj))
    if (g.tgt(f) == obj && f != g.identity(obj)) auts.push_back(f);
  return auts;
}

GroupPtr automorphism_group(const Groupoid& g, const std::vector<int>& auts) {
  const int n = static_cast<int>(auts.size());
  std::vector<int> pos(g.morphisms(), -1);
  for (int i = 0; i < n; ++i) pos[auts[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = pos[g.then(auts[i], auts[j])];
  return share(FiniteGroup::from_table(t));
}

}  // namespace

std::vector<SkeletonEntry> groupoid_equivalence_skeleton(const Groupoid& g) {
  std::vector<SkeletonEntry> out;
  for (const auto& c : components(g))
    out.push_back(SkeletonEntry{static_cast<int>(c.size()), automorphism_group(g, automorphisms(g, c.front()))});
  return out;
}

bool groupoids_equivalent(const Groupoid& a, const Groupoid& b) {
  auto sa = groupoid_equivalence_skeleton(a), sb = groupoid_equivalence_skeleton(b);
  if (sa.size() != sb.size()) return false;
  std::vector<char> used(sb.size(), 0);
  for (const auto& e : sa) {
    bool found = false;
    for (std::size_t j = 0; j < sb.size() && !found; ++j) {
      if (used[j] || sb[j].automorphisms->order() != e.automorphisms->order()) continue;
      if (detail::find_isomorphism(*e.automorphisms, *sb[j].automorphisms)) {
        used[j] = 1;
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---- one-object feet and bisets ----

Biset global_span_biset(const GlobalSpan& s, const GroupPtr& g, const GroupPtr& h) {
  if (!(s.left == one_object(g)) || !(s.right == one_object(h)))
    fail(ErrorCode::FeetMismatch, "feet are not the one-object groupoids of the given groups");
  const Groupoid& k = s.apex;
  const int nx = k.objects(), ng = g->order(), nh = h->order(), size = nh * nx;
  std::vector<int> lift(static_cast<std::size_t>(nx) * ng, -1);
  for (int x = 0; x < nx; ++x)
    for (int psi : k.out(x)) lift[static_cast<std::size_t>(x) * ng + s.ingressive.morphisms[psi]] = psi;
  std::vector<int> lf(static_cast<std::size_t>(nh) * size), rf(static_cast<std::size_t>(size) * ng);
  for (int a = 0; a < nh; ++a)
    for (int x = 0; x < nx; ++x) {
      const int z = a * nx + x;
      for (int b = 0; b < nh; ++b) lf[static_cast<std::size_t>(b) * size + z] = h->mul(b, a) * nx + x;
      for (int c = 0; c < ng; ++c) {
        const int psi = lift[static_cast<std::size_t>(x) * ng + c];
        rf[static_cast<std::size_t>(z) * ng + c] = h->mul(a, s.egressive.morphisms[psi]) * nx + k.tgt(psi);
      }
    }
  return Biset::from_flat(h, g, size, std::move(lf), std::move(rf), true);
}

GlobalSpan biset_global_span(const Biset& z) {
  if (!z.left_free()) fail(ErrorCode::LeftActionNotFree, "biset is not left-free");
  const GroupPtr& h = z.left_group();
  const GroupPtr& g = z.right_group();
  const int nh = h->order(), ng = g->order();
  std::vector<int> cls(z.size(), -1), section;
  for (int p = 0; p < z.size(); ++p) {
    if (cls[p] >= 0) continue;
    for (int a = 0; a < nh; ++a) cls[z.left(a, p)] = static_cast<int>(section.size());
    section.push_back(p);
  }
  const int nx = static_cast<int>(section.size());
  std::vector<int> flat(static_cast<std::size_t>(nx) * ng);
  std::vector<int> phi(static_cast<std::size_t>(nx) * ng, -1);
  for (int x = 0; x < nx; ++x)
    for (int c = 0; c < ng; ++c) {
      const int moved = z.right(section[x], c);
      const int y = cls[moved];
      flat[static_cast<std::size_t>(x) * ng + c] = y;
      for (int a = 0; a < nh; ++a)
        if (z.left(a, section[y]) == moved) phi[static_cast<std::size_t>(x) * ng + c] = a;
    }
  auto ag = action_groupoid(GSet::from_flat(g, nx, std::move(flat)));
  auto eg = make_functor(ag.groupoid, one_object(h), std::vector<int>(nx, 0), std::move(phi));
  return make_global_span(std::move(ag.projection), std::move(eg));
}

// ---- functor enumeration ----

std::vector<GroupoidFunctor> enumerate_functors(const Groupoid& a, const Groupoid& b, std::size_t cap) {
  // per component of a: every (object map, morphism map) restricted to it
  using Partial = std::pair<std::vector<int>, std::vector<int>>;
  std::vector<std::vector<int>> comps = components(a);
  std::vector<std::vector<Partial>> options;
  for (const auto& comp : comps) {
    const int a0 = comp.front();
    auto auts_a = automorphisms(a, a0);
    auto ga = automorphism_group(a, auts_a);
    std::vector<int> pos_a(a.morphisms(), -1);
    for (std::size_t i = 0; i < auts_a.size(); ++i) pos_a[auts_a[i]] = static_cast<int>(i);
    // BFS tree: tree[o] is a morphism a0 -> o
    std::vector<int> tree(a.objects(), -1);
    tree[a0] = a.identity(a0);
    std::vector<int> order{a0};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (int f : a.out(order[i]))
        if (tree[a.tgt(f)] < 0) {
          tree[a.tgt(f)] = a.then(tree[order[i]], f);
          order.push_back(a.tgt(f));
        }
    std::vector<int> comp_morphisms;
    for (int o : comp)
      for (int f : a.out(o)) comp_morphisms.push_back(f);
    std::vector<Partial> opts;
    for (int b0 = 0; b0 < b.objects(); ++b0) {
      auto auts_b = automorphisms(b, b0);
      auto gb = automorphism_group(b, auts_b);
      const auto& leave = b.out(b0);
      for (const auto& hom : enumerate_homomorphisms(ga, gb)) {
        std::vector<int> choice(order.size(), 0);  // index into leave, for order[1..]
        while (true) {
          std::vector<int> objs(a.objects(), -1), image(a.objects(), -1), mors(a.morphisms(), -1);
          image[a0] = b.identity(b0);
          for (std::size_t i = 1; i < order.size(); ++i) image[order[i]] = leave[choice[i]];
          for (int o : comp) objs[o] = b.tgt(image[o]);
          for (int f : comp_morphisms) {
            const int mid = a.then(a.then(tree[a.src(f)], f), a.inverse(tree[a.tgt(f)]));
            const int fm = auts_b[hom.map[pos_a[mid]]];
            mors[f] = b.then(b.then(b.inverse(image[a.src(f)]), fm), image[a.tgt(f)]);
          }
          opts.emplace_back(std::move(objs), std::move(mors));
          if (opts.size() > cap) fail(ErrorCode::CapExceeded, "too many functors");
          std::size_t i = 1;
          while (i < order.size() && ++choice[i] == static_cast<int>(leave.size())) choice[i++] = 0;
          if (i >= order.size()) break;
        }
      }
    }
    options.push_back(std::move(opts));
  }
  std::vector<GroupoidFunctor> out;
  std::vector<int> objs(a.objects(), -1), mors(a.morphisms(), -1);
  std::function<void(std::size_t)> go = [&](std::size_t c) {
    if (c == options.size()) {
      if (out.size() >= cap) fail(ErrorCode::CapExceeded, "too many functors");
      out.push_back(GroupoidFunctor{a, b, objs, mors});
      return;
    }
    for (const auto& [po, pm] : options[c]) {
      for (int o : comps[c]) objs[o] = po[o];
      for (int o : comps[c])
        for (int f : a.out(o)) mors[f] = pm[f];
      go(c + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace gspan
