// One PASS/FAIL line per acceptance criterion. Every check compares the
// library against a brute-force computation written here or in oracles.hpp.
// Usage: acceptance [criterion numbers...]
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gspan/burnside.hpp"
#include "gspan/catalog.hpp"
#include "gspan/cli.hpp"
#include "gspan/duality.hpp"
#include "gspan/error.hpp"
#include "gspan/groupoid.hpp"
#include "gspan/mackey.hpp"
#include "gspan/operad.hpp"
#include "gspan/span.hpp"
#include "oracles.hpp"

using namespace gspan;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string str(long long v) { return std::to_string(v); }

GSet fin(int n) { return GSet::trivial_action(trivial_group(), n); }

// Every Fin span x <- T -> y with |T| <= apex, one per fiber matrix, grouped by |T|.
std::vector<std::vector<Span>> fin_spans_by_apex(int x, int y, int apex) {
  std::vector<std::vector<Span>> out(apex + 1);
  if (x * y == 0) {
    out[0].push_back(matrix_to_span(NatMatrix(x, y)));
    return out;
  }
  NatMatrix m(x, y);
  std::function<void(int, int)> go = [&](int cell, int used) {
    if (cell == x * y) {
      out[used].push_back(matrix_to_span(m));
      return;
    }
    for (int v = 0; used + v <= apex; ++v) {
      m(cell / y, cell % y) = v;
      go(cell + 1, used + v);
    }
    m(cell / y, cell % y) = 0;
  };
  go(0, 0);
  return out;
}

std::vector<Span> flatten(const std::vector<std::vector<Span>>& by_apex) {
  std::vector<Span> out;
  for (const auto& layer : by_apex) out.insert(out.end(), layer.begin(), layer.end());
  return out;
}

// Fiber counts read straight off the legs.
std::vector<std::vector<long long>> fibers(const Span& s) {
  std::vector<std::vector<long long>> m(s.left.size(), std::vector<long long>(s.right.size(), 0));
  for (int t = 0; t < s.apex.size(); ++t) ++m[s.leg_left[t]][s.leg_right[t]];
  return m;
}

// 1 -----------------------------------------------------------------------

Outcome matrix_correspondence() {
  long long pairs = 0, bad = 0;
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y) {
      auto first = flatten(fin_spans_by_apex(x, y, 6));
      std::vector<std::vector<std::vector<long long>>> fm;
      for (const auto& s : first) fm.push_back(fibers(s));
      for (int z = 0; z <= 3; ++z) {
        auto second = flatten(fin_spans_by_apex(y, z, 6));
        std::vector<std::vector<std::vector<long long>>> sm;
        for (const auto& t : second) sm.push_back(fibers(t));
        for (std::size_t i = 0; i < first.size(); ++i)
          for (std::size_t j = 0; j < second.size(); ++j) {
            ++pairs;
            if (fibers(compose_spans(first[i], second[j])) != oracle::matmul(fm[i], sm[j], z)) ++bad;
          }
      }
    }
  return {bad == 0, str(pairs) + " composable pairs, " + str(bad) + " mismatches"};
}

// 2 -----------------------------------------------------------------------

bool literally_equal(const Span& a, const Span& b) {
  return a.left == b.left && a.right == b.right && a.apex == b.apex && a.leg_left == b.leg_left &&
         a.leg_right == b.leg_right;
}

// Triples s, t, u over the given feet whose apex sizes sum to at most `bound`.
// spans[a][b][n] lists the spans feet[a] -> feet[b] with n apex points. Equal
// composites are isomorphic through the identity; any others go through
// span_class, and `classed` counts those.
long long check_triples(const std::vector<std::vector<std::vector<std::vector<Span>>>>& spans, int bound,
                        long long& bad, long long& classed) {
  const int n = static_cast<int>(spans.size());
  long long triples = 0;
  // t is fixed outermost so s then t and t then u are each formed once
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int b = 0; b <= bound; ++b)
        for (const auto& t : spans[x][y][b]) {
          std::vector<std::pair<const Span*, Span>> firsts, lasts;
          for (int w = 0; w < n; ++w)
            for (int a = 0; a + b <= bound; ++a)
              for (const auto& s : spans[w][x][a]) firsts.emplace_back(&s, compose_spans(s, t));
          for (int z = 0; z < n; ++z)
            for (int c = 0; b + c <= bound; ++c)
              for (const auto& u : spans[y][z][c]) lasts.emplace_back(&u, compose_spans(t, u));
          for (const auto& [s, st] : firsts) {
            for (const auto& [u, tu] : lasts) {
              if (s->apex.size() + t.apex.size() + u->apex.size() > bound) continue;
              ++triples;
              Span left = compose_spans(st, *u), right = compose_spans(*s, tu);
              if (literally_equal(left, right)) continue;
              ++classed;
              if (!(span_class(left) == span_class(right))) ++bad;
            }
          }
        }
  return triples;
}

Outcome associativity() {
  long long bad = 0, classed = 0;
  std::string detail;
  {
    const int n = 4;
    std::vector<std::vector<std::vector<std::vector<Span>>>> spans(n, std::vector<std::vector<std::vector<Span>>>(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) spans[x][y] = fin_spans_by_apex(x, y, 6);
    detail += "Fin " + str(check_triples(spans, 6, bad, classed)) + " triples";
  }
  for (const char* name : {"C2", "C3", "S3"}) {
    auto g = catalog_group(name);
    auto basis = orbit_basis(g);
    std::vector<GSet> feet;
    for (const auto& coords : orbit_sums_up_to(basis, 3)) feet.push_back(orbit_sum(basis, coords));
    const int n = static_cast<int>(feet.size());
    std::vector<std::vector<std::vector<std::vector<Span>>>> spans(
        n, std::vector<std::vector<std::vector<Span>>>(n, std::vector<std::vector<Span>>(7)));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (const auto& c : hom_monoid(feet[x], feet[y], 6).classes)
          spans[x][y][c.apex_size(g->order())].push_back(realize(feet[x], feet[y], c));
    detail += ", " + std::string(name) + " " + str(check_triples(spans, 6, bad, classed)) + " triples";
  }
  return {bad == 0, detail + " (" + str(classed) + " compared by class), " + str(bad) + " mismatches"};
}

// 3 -----------------------------------------------------------------------

Outcome biproducts() {
  long long identities = 0, universal = 0, bad = 0;
  for (const char* name : {"trivial", "C2"}) {
    auto g = catalog_group(name);
    auto objects = oracle::gsets_up_to(g, 2);
    for (const auto& x : objects)
      for (const auto& y : objects) {
        auto cp = coproduct(x, y);
        const GSet& s = cp.object;
        Span i1 = graph_span(cp.inl), i2 = graph_span(cp.inr);
        Span p1 = reverse_graph_span(cp.inl), p2 = reverse_graph_span(cp.inr);
        auto same = [&](const Span& a, const Span& b) {
          ++identities;
          if (!(span_class(a) == span_class(b))) ++bad;
        };
        same(compose_spans(i1, p1), identity_span(x));
        same(compose_spans(i2, p2), identity_span(y));
        same(compose_spans(i1, p2), empty_span(x, y));
        same(compose_spans(i2, p1), empty_span(y, x));
        same(span_sum(compose_spans(p1, i1), compose_spans(p2, i2)), identity_span(s));

        // Restricting h along an inclusion splits its apex, so apex(h) is
        // apex(f) + apex(g) and bound 4 sees every candidate.
        for (const auto& w : objects) {
          auto hx = hom_monoid(w, x, 2), hy = hom_monoid(w, y, 2);
          std::map<std::pair<SpanClass, SpanClass>, int> hits;
          for (const auto& c : hom_monoid(w, s, 4).classes) {
            Span h = realize(w, s, c);
            ++hits[{span_class(compose_spans(h, p1)), span_class(compose_spans(h, p2))}];
          }
          for (const auto& f : hx.classes)
            for (const auto& k : hy.classes) {
              ++universal;
              auto it = hits.find({f, k});
              if (it == hits.end() || it->second != 1) ++bad;
            }
          auto cx = hom_monoid(x, w, 2), cy = hom_monoid(y, w, 2);
          hits.clear();
          for (const auto& c : hom_monoid(s, w, 4).classes) {
            Span h = realize(s, w, c);
            ++hits[{span_class(compose_spans(i1, h)), span_class(compose_spans(i2, h))}];
          }
          for (const auto& f : cx.classes)
            for (const auto& k : cy.classes) {
              ++universal;
              auto it = hits.find({f, k});
              if (it == hits.end() || it->second != 1) ++bad;
            }
        }
      }
  }
  return {bad == 0, str(identities) + " identities, " + str(universal) + " universal-property instances, " +
                        str(bad) + " failures"};
}

// 4 -----------------------------------------------------------------------

Outcome structured_closure() {
  std::vector<Span> corpus;
  for (int x = 0; x <= 4; ++x)
    for (int y = 0; y <= 4; ++y)
      for (auto& s : flatten(fin_spans_by_apex(x, y, 4))) corpus.push_back(std::move(s));
  bool ok = true;
  long long pairs = 0;
  const LegKind kinds[] = {LegKind::Bijective, LegKind::Injective, LegKind::Arbitrary};
  for (LegKind p : kinds)
    for (LegKind q : kinds) {
      auto r = check_closure(SpanType{p, q}, corpus);
      pairs += r.pairs;
      ok = ok && r.ok() && r.spans > 0;
    }

  // Bijective left leg: the span is the function right . left^-1.
  auto as_function = [](const Span& s) {
    std::vector<int> f(s.left.size());
    for (int t = 0; t < s.apex.size(); ++t) f[s.leg_left[t]] = s.leg_right[t];
    return f;
  };
  std::vector<const Span*> graphs;
  for (const auto& s : corpus)
    if (leg_kind(s.leg_left, s.left.size()) == LegKind::Bijective) graphs.push_back(&s);
  long long function_pairs = 0, bad = 0;
  for (const Span* s : graphs)
    for (const Span* t : graphs) {
      if (s->right.size() != t->left.size()) continue;
      ++function_pairs;
      Span c = compose_spans(*s, *t);
      auto f = as_function(*s), g = as_function(*t);
      std::vector<int> gf(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) gf[i] = g[f[i]];
      if (leg_kind(c.leg_left, c.left.size()) != LegKind::Bijective || as_function(c) != gf) ++bad;
    }
  return {ok && bad == 0, str(static_cast<long long>(corpus.size())) + " spans, " + str(pairs) +
                              " pairs over nine classes, " + str(function_pairs) + " function pairs, " + str(bad) +
                              " mismatches"};
}

// 5 -----------------------------------------------------------------------

Outcome torsors() {
  auto groups = catalog_up_to(4);
  long long epis = 0, bad = 0;
  for (const auto& h : groups)
    for (const auto& g : groups) {
      Biset canon = canonical_biset(h, g);
      GSet free_orbit = canon.as_product_gset();
      auto prod = free_orbit.group();
      const int ng = g->order();
      // the free orbit is regular: x = 0.q for exactly one q
      std::vector<int> reach(free_orbit.size());
      for (int q = 0; q < prod->order(); ++q) reach[free_orbit.act(0, q)] = q;
      const auto& lat = prod->lattice();
      for (int c = 0; c < lat.class_count(); ++c) {
        GSet orbit = GSet::orbit(prod, lat.rep(c));
        Biset target = biset_from_product_gset(h, g, orbit);
        for (int p = 0; p < target.size(); ++p) {
          ++epis;
          std::vector<int> map(canon.size());
          for (int x = 0; x < canon.size(); ++x) map[x] = orbit.act(p, reach[x]);
          auto r = classify_epi_torsor(make_biset_map(canon, target, map));
          const auto& k = r.k.elements;
          bool ok = r.fibers_are_cosets && !k.empty() && k[0] == 0;
          // (a, b) in H^op x G sends (x, y) to (x a, b y)
          auto act = [&](int e, int x) {
            int a = e / ng, b = e % ng;
            return h->mul(x / ng, a) * ng + g->mul(b, x % ng);
          };
          for (int u : k)
            for (int v : k) ok = ok && r.k.contains(r.ambient->mul(u, v));
          for (int x = 0; x < canon.size() && ok; ++x) {
            std::set<int> orbit_of_x, fiber;
            for (int e : k) orbit_of_x.insert(act(e, x));
            for (int y = 0; y < canon.size(); ++y)
              if (map[y] == map[x]) fiber.insert(y);
            ok = orbit_of_x == fiber && static_cast<int>(orbit_of_x.size()) == r.k.order();
          }
          const auto& cert = r.certificate;
          std::vector<int> sorted = cert.comparison;
          std::sort(sorted.begin(), sorted.end());
          std::vector<int> iota(static_cast<std::size_t>(canon.size()) * r.k.order());
          std::iota(iota.begin(), iota.end(), 0);
          ok = ok && sorted == iota && cert.fiber_pairs.size() == iota.size();
          for (const auto& [x, y] : cert.fiber_pairs) ok = ok && map[x] == map[y];
          if (!ok) ++bad;
        }
      }
    }
  return {bad == 0, str(epis) + " epimorphisms (every transitive target up to iso, every base point image), " +
                        str(bad) + " uncertified"};
}

// 6 -----------------------------------------------------------------------

// Every (L,R)-biset of size <= bound up to iso, as sums of orbits of L x R.
std::vector<Biset> all_bisets(const GroupPtr& l, const GroupPtr& r, int bound) {
  auto prod = direct_product(l, r);
  const auto& lat = prod->lattice();
  std::vector<GSet> orbits;
  for (int c = 0; c < lat.class_count(); ++c)
    if (prod->order() / lat.rep(c).order() <= bound) orbits.push_back(GSet::orbit(prod, lat.rep(c)));
  std::vector<Biset> out;
  std::vector<GSet> cur;
  std::function<void(std::size_t, int)> go = [&](std::size_t from, int size) {
    out.push_back(biset_from_product_gset(l, r, oracle::disjoint_union(cur, prod)));
    for (std::size_t i = from; i < orbits.size(); ++i)
      if (size + orbits[i].size() <= bound) {
        cur.push_back(orbits[i]);
        go(i, size + orbits[i].size());
        cur.pop_back();
      }
  };
  go(0, 0);
  return out;
}

Outcome pairing_unit() {
  auto groups = catalog_up_to(4);
  long long count = 0, bad = 0;
  for (const auto& h : groups)
    for (const auto& g : groups) {
      Biset canon = canonical_biset(h, g);
      const int ng = g->order();
      for (const auto& x : all_bisets(g, h, 8)) {
        ++count;
        auto r = pairing(canon, x);
        // [(a, b), x] -> b . x . a
        std::vector<int> image(r.size, -1);
        bool ok = r.size == x.size();
        for (int c = 0; c < canon.size() && ok; ++c)
          for (int p = 0; p < x.size() && ok; ++p) {
            int v = x.left(c % ng, x.right(p, c / ng));
            int& slot = image[r.cls(c, p)];
            if (slot < 0) slot = v;
            ok = slot == v;
          }
        std::set<int> hit(image.begin(), image.end());
        if (!ok || static_cast<int>(hit.size()) != x.size() || (x.size() > 0 && *hit.begin() < 0)) ++bad;
      }
    }
  return {bad == 0, str(count) + " bisets, " + str(bad) + " failures"};
}

// 7 -----------------------------------------------------------------------

Outcome perfect_pairing() {
  auto e = trivial_group();
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  const std::vector<std::pair<const char*, const char*>> cases{
      {"trivial", "trivial"}, {"C2", "trivial"}, {"C3", "trivial"}, {"C2", "C2"}, {"S3", "trivial"}};
  for (const auto& [gn, hn] : cases) {
    auto r = verify_duality(catalog_group(gn), catalog_group(hn), 6);
    int passed = 0;
    for (const auto& c : r.checks) passed += c.pass;
    ok = ok && r.ok() && !r.checks.empty();
    detail += std::string(detail.empty() ? "" : ", ") + gn + "/" + hn + " " + str(passed) + "/" +
              str(static_cast<long long>(r.checks.size()));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1f s of 300", secs);
  return {ok && secs <= 300, detail + " clauses" + buf};
}

// 8 -----------------------------------------------------------------------

Outcome nonseparable() {
  auto c2 = catalog_group("C2");
  auto r = verify_duality(c2, c2, 4, true);
  if (!r.counterexample) return {false, "no counterexample"};
  const auto& cx = *r.counterexample;
  const auto& corpus = *r.corpus;
  const auto& l = corpus.arrows[cx.left];
  const auto& rt = corpus.arrows[cx.right];
  // the apex orbits really form the pullback of O1 -> O3 <- O2 in bisets
  std::set<std::pair<int, int>> pullback, covered;
  for (int p = 0; p < corpus.objects[l.from].size(); ++p)
    for (int q = 0; q < corpus.objects[rt.from].size(); ++q)
      if (l.map[p] == rt.map[q]) pullback.insert({p, q});
  long long apex_points = 0;
  for (std::size_t i = 0; i < cx.apex_objects.size(); ++i) {
    const auto& al = corpus.arrows[cx.apex_left[i]];
    const auto& ar = corpus.arrows[cx.apex_right[i]];
    for (int t = 0; t < corpus.objects[cx.apex_objects[i]].size(); ++t) {
      covered.insert({al.map[t], ar.map[t]});
      ++apex_points;
    }
  }
  bool is_pullback = covered == pullback && apex_points == static_cast<long long>(pullback.size());

  // the image under - x G^bi is not one
  auto f = tensor_functor(conjugation_biset(c2), r.corpus);
  const auto& fl = f.arrow_values[cx.left];
  const auto& fr = f.arrow_values[cx.right];
  std::set<std::pair<int, int>> fiber_product, image;
  for (int u = 0; u < f.values[l.from]; ++u)
    for (int v = 0; v < f.values[rt.from]; ++v)
      if (fl[u] == fr[v]) fiber_product.insert({u, v});
  long long image_points = 0;
  for (std::size_t i = 0; i < cx.apex_objects.size(); ++i) {
    const auto& al = f.arrow_values[cx.apex_left[i]];
    const auto& ar = f.arrow_values[cx.apex_right[i]];
    for (int t = 0; t < f.values[cx.apex_objects[i]]; ++t) {
      image.insert({al[t], ar[t]});
      ++image_points;
    }
  }
  bool fails = image != fiber_product || image_points != static_cast<long long>(image.size());
  return {is_pullback && fails && image_points == cx.image_size &&
              static_cast<long long>(fiber_product.size()) == cx.fiber_product_size,
          "arrows " + str(cx.left) + ", " + str(cx.right) + ": |F(P)| = " + str(image_points) +
              ", |F(O1) x F(O2) over F(O3)| = " + str(static_cast<long long>(fiber_product.size())) + " (" +
              cx.reason + ")"};
}

// 9 -----------------------------------------------------------------------

int conjugacy_class_count(const FiniteGroup& g) {
  std::vector<char> seen(g.order(), 0);
  int count = 0;
  for (int x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    ++count;
    for (int y = 0; y < g.order(); ++y) seen[g.mul(g.mul(g.inv(y), x), y)] = 1;
  }
  return count;
}

Outcome conjugacy_pairing() {
  auto groups = catalog_up_to(12);
  int bad = 0;
  for (const auto& g : groups) {
    auto b = conjugation_biset(g);
    if (pairing(b, b).size != conjugacy_class_count(*g)) ++bad;
  }
  return {bad == 0, str(static_cast<long long>(groups.size())) + " groups, " + str(bad) + " mismatches"};
}

// 10 ----------------------------------------------------------------------

// |X^H| by scanning every point against every element of H.
std::vector<long long> marks_by_scan(const GSet& x, const std::vector<Subgroup>& subs) {
  std::vector<long long> out;
  for (const auto& h : subs) {
    long long n = 0;
    for (int p = 0; p < x.size(); ++p) {
      bool fixed = true;
      for (int e : h.elements) fixed = fixed && x.act(p, e) == p;
      n += fixed;
    }
    out.push_back(n);
  }
  return out;
}

Outcome table_of_marks_check() {
  auto groups = catalog_up_to(12);
  long long product_pairs = 0;
  int bad_tables = 0, bad_products = 0;
  for (const auto& g : groups) {
    auto t = table_of_marks(g);
    const int r = t.basis.size();
    bool ok = true;
    for (int i = 0; i < r; ++i) {
      ok = ok && marks_by_scan(t.basis.orbits[i], t.basis.reps) == std::vector<long long>([&] {
             std::vector<long long> row;
             for (int j = 0; j < r; ++j) row.push_back(static_cast<long long>(t.m(i, j)));
             return row;
           }());
      ok = ok && t.m(i, i) > 0;
      for (int j = i + 1; j < r; ++j) ok = ok && t.m(i, j) == 0;
    }
    ok = ok && determinant(t.m) != 0;
    if (!ok) ++bad_tables;
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) {
        ++product_pairs;
        auto direct = marks_by_scan(product(t.basis.orbits[i], t.basis.orbits[j]).object, t.basis.reps);
        auto bp = burnside_product(t.basis.orbits[i], t.basis.orbits[j]);
        bool pok = true;
        for (int s = 0; s < r; ++s) {
          long long expect = static_cast<long long>(t.m(i, s)) * static_cast<long long>(t.m(j, s));
          long long from_coords = 0;
          for (int k = 0; k < r; ++k) from_coords += bp.coords[k] * static_cast<long long>(t.m(k, s));
          pok = pok && direct[s] == expect && from_coords == expect;
        }
        if (!pok) ++bad_products;
      }
  }
  return {bad_tables == 0 && bad_products == 0 && product_pairs >= 100,
          str(static_cast<long long>(groups.size())) + " tables (" + str(bad_tables) + " bad), " +
              str(product_pairs) + " product pairs (" + str(bad_products) + " bad)"};
}

// 11 ----------------------------------------------------------------------

Outcome mackey() {
  long long pairs = 0;
  int bad = 0, controls = 0, caught = 0;
  for (const char* name : {"C2", "C3", "C4", "C2xC2", "S3"}) {
    auto g = catalog_group(name);
    auto basis = orbit_basis(g);
    std::vector<MackeyData> data{standard_mackey(MackeyKind::Burnside, g),
                                 standard_mackey(MackeyKind::Permutation, g, GSet::regular(g)),
                                 standard_mackey(MackeyKind::Permutation, g,
                                                 orbit_sum(basis, std::vector<int>(basis.size(), 1)))};
    for (const auto& m : data) {
      auto r = check_mackey(m);
      pairs += r.pairs;
      if (!r.ok()) ++bad;
    }
    // corrupt one transfer along a map that is not the identity
    MackeyData broken = data[0];
    for (auto& [f, mat] : broken.tr)
      if ((f.from != f.to || f.point != 0) && mat.rows() > 0 && mat.cols() > 0) {
        mat(0, 0) += 1;
        break;
      }
    ++controls;
    caught += !check_mackey(broken).ok();
  }
  return {bad == 0 && caught == controls, str(pairs) + " atom pairs, " + str(bad) + " failing data sets, " +
                                              str(caught) + "/" + str(controls) + " corrupted controls caught"};
}

// 12 ----------------------------------------------------------------------

bool unique_lifts_by_scan(const GroupoidFunctor& f) {
  for (int e = 0; e < f.source.objects(); ++e)
    for (int phi = 0; phi < f.target.morphisms(); ++phi) {
      if (f.target.src(phi) != f.objects[e]) continue;
      int lifts = 0;
      for (int psi = 0; psi < f.source.morphisms(); ++psi) lifts += f.source.src(psi) == e && f.morphisms[psi] == phi;
      if (lifts != 1) return false;
    }
  return true;
}

// Z2 x_H Z1 for Z1 an (H,G)-biset and Z2 a (J,H)-biset.
Biset biset_tensor(const Biset& z2, const Biset& z1) {
  const int n1 = z1.size(), n2 = z2.size();
  const auto& h = z1.left_group();
  std::vector<int> label(static_cast<std::size_t>(n2) * n1, -1), reps;
  for (int s = 0; s < n2 * n1; ++s) {
    if (label[s] >= 0) continue;
    const int c = static_cast<int>(reps.size());
    reps.push_back(s);
    for (int a = 0; a < h->order(); ++a) label[z2.right(s / n1, a) * n1 + z1.left(h->inv(a), s % n1)] = c;
  }
  const int n = static_cast<int>(reps.size());
  const auto& j = z2.left_group();
  const auto& g = z1.right_group();
  std::vector<std::vector<int>> left(n, std::vector<int>(j->order())), right(n, std::vector<int>(g->order()));
  for (int c = 0; c < n; ++c) {
    const int p = reps[c] / n1, q = reps[c] % n1;
    for (int a = 0; a < j->order(); ++a) left[c][a] = label[z2.left(a, p) * n1 + q];
    for (int b = 0; b < g->order(); ++b) right[c][b] = label[p * n1 + z1.right(q, b)];
  }
  return Biset::build(j, g, left, right, false);
}

Outcome global_spans() {
  // connected groupoids (n, K): n objects, n^2 |K| morphisms
  struct Component {
    int n;
    GroupPtr k;
    Groupoid g;
  };
  std::vector<Component> components;
  for (int n = 1; n <= 6; ++n)
    for (const auto& k : catalog_up_to(24 / (n * n))) components.push_back({n, k, connected_groupoid(n, k)});
  long long pullbacks = 0, fibrations = 0, bad = 0;
  for (const auto& base : components) {
    auto basis = orbit_basis(base.k);
    std::vector<GroupoidFunctor> over;
    for (const auto& coords : orbit_sums_up_to(basis, 6 / base.n)) {
      GSet x = orbit_sum(basis, coords);
      if (x.size() == 0 || x.size() * base.n * base.n * base.k->order() > 24) continue;
      auto p = action_groupoid(x, base.n).projection;
      ++fibrations;
      if (!unique_lifts_by_scan(p)) ++bad;
      over.push_back(p);
    }
    for (const auto& a : components)
      for (const auto& f : enumerate_functors(a.g, base.g))
        for (const auto& p : over) {
          ++pullbacks;
          auto pb = strict_pullback(f, p);
          long long objects = 0;
          for (int u = 0; u < a.g.objects(); ++u)
            for (int v = 0; v < p.source.objects(); ++v) objects += f.objects[u] == p.objects[v];
          if (!is_discrete_fibration(pb.proj1).ok || !unique_lifts_by_scan(pb.proj1) ||
              pb.object.objects() != objects)
            ++bad;
        }
  }
  std::string detail = str(static_cast<long long>(components.size())) + " connected groupoids, " + str(fibrations) +
                       " fibrations, " + str(pullbacks) + " pullbacks";

  long long compositions = 0;
  for (const char* name : {"C2", "S3"}) {
    auto basis = orbit_basis(catalog_group(name));
    const int r = basis.size();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        for (int k = 0; k < r; ++k)
          for (const auto& a : atoms_over(basis.orbits[i], basis.orbits[j]))
            for (const auto& b : atoms_over(basis.orbits[j], basis.orbits[k])) {
              ++compositions;
              Span s = realize(basis.orbits[i], basis.orbits[j], a);
              Span t = realize(basis.orbits[j], basis.orbits[k], b);
              auto glob = compose_global_spans(action_span(s), action_span(t));
              auto direct = action_span(compose_spans(s, t));
              if (!groupoids_equivalent(glob.apex, direct.apex) || glob.apex.objects() != direct.apex.objects() ||
                  glob.apex.morphisms() != direct.apex.morphisms() || !(glob.left == direct.left) ||
                  !(glob.right == direct.right))
                ++bad;
            }
  }
  detail += ", " + str(compositions) + " B_G composites";

  long long round_trips = 0, tensors = 0;
  auto small = catalog_up_to(4);
  for (const auto& h : small)
    for (const auto& g : small)
      for (const auto& z : left_free_bisets(h, g, 8)) {
        ++round_trips;
        auto gs = biset_global_span(z);
        if (!(gs.left == one_object(g)) || !(gs.right == one_object(h)) || !biset_iso(global_span_biset(gs, g, h), z))
          ++bad;
      }
  std::vector<GroupPtr> three{trivial_group(), catalog_group("C2"), catalog_group("C3"), catalog_group("S3")};
  for (const auto& g : three)
    for (const auto& h : three)
      for (const auto& j : three) {
        auto c1 = orbit_corpus(h, g, 6), c2 = orbit_corpus(j, h, 6);
        for (const auto& z1 : c1->objects)
          for (const auto& z2 : c2->objects) {
            ++tensors;
            auto comp = compose_global_spans(biset_global_span(z1), biset_global_span(z2));
            if (!biset_iso(global_span_biset(comp, g, j), biset_tensor(z2, z1))) ++bad;
          }
      }
  detail += ", " + str(round_trips) + " biset round trips, " + str(tensors) + " one-object composites";
  return {bad == 0, detail + ", " + str(bad) + " failures"};
}

// 13 ----------------------------------------------------------------------

long long binomial(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Outcome census() {
  long long rows = 0;
  int bad = 0;
  std::string detail;
  for (int which = 0; which < 2; ++which) {
    SetOperad o = which == 0 ? comm_operad(4) : assoc_operad(4);
    for (int k = 0; k <= 3; ++k) {
      auto table = free_algebra_census(o, k, 4);
      for (const auto& row : table) {
        ++rows;
        long long pow = 1;
        for (int i = 0; i < row.t; ++i) pow *= k;
        long long closed = which == 0 ? (row.t == 0 ? 1 : binomial(row.t + k - 1, row.t)) : pow;
        if (row.span_side != row.formula_side || row.span_side != closed) ++bad;
      }
      if (k == 3) {
        detail += std::string(detail.empty() ? "" : "; ") + o.name() + " k=3:";
        for (const auto& row : table) detail += " " + str(row.span_side);
      }
    }
  }
  return {bad == 0 && rows == 2 * 4 * 5, str(rows) + " rows, " + str(bad) + " mismatches; " + detail};
}

// 14 ----------------------------------------------------------------------

Outcome determinism() {
  const std::string d = GSPAN_DATA_DIR "/";
  const std::vector<std::vector<std::string>> plain{
      {"group", "info", "--group", d + "s3.json"},
      {"group", "catalog"},
      {"gset", "orbits", "--gset", d + "s3_mixed.json"},
      {"gset", "biset", "--biset", d + "biset_c2_conjugation.json"},
      {"span", "compose", d + "span_fin_a.json", d + "span_fin_b.json"},
      {"span", "compose", d + "span_c2.json", d + "span_c2_induce.json"},
      {"span", "compose", d + "span_fin_a.json", d + "span_fin_c.json"},
      {"span", "hom", "--x", d + "c2_regular.json", "--y", d + "c2_point.json", "--bound", "4"},
      {"burnside", "marks", "--group", "D6"},
      {"burnside", "marks", "--group", "S3", "--format", "csv"},
      {"burnside", "product", "--group", d + "s3.json"},
      {"mackey", "export", "--data", d + "mackey_burnside_s3.json"},
      {"global", "compose", d + "global_regular_c2.json", d + "global_identity_c2.json"},
      {"global", "skeleton", "--groupoid", d + "groupoid_bc2.json"},
      {"operad", "check", "--operad", d + "assoc3_explicit.json"},
      {"operad", "check", "--operad", d + "assoc3_broken.json"},
      {"frobnicate"},
  };
  const std::vector<std::vector<std::string>> parallel{
      {"mackey", "check", "--data", d + "mackey_burnside_s3.json"},
      {"mackey", "check", "--data", d + "mackey_corrupted_s3.json"},
      {"duality", "verify", "--g", "C2", "--h", "C2", "--bound", "4", "--include-nonseparable"},
      {"duality", "verify", "--g", "S3", "--h", "trivial", "--bound", "6"},
      {"operad", "census", "--operad", d + "assoc4.json", "--k", "3", "--bound", "4"},
      {"operad", "census", "--operad", d + "comm4.json", "--k", "2", "--bound", "4"},
  };
  auto capture = [](std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return std::to_string(code) + "\n" + out.str() + "\n" + err.str();
  };
  int runs = 0, bad = 0;
  for (const auto& cmd : plain) {
    runs += 2;
    if (capture(cmd) != capture(cmd)) ++bad;
  }
  for (const auto& cmd : parallel) {
    auto with = [&](const char* jobs) {
      auto args = cmd;
      args.insert(args.end(), {"--jobs", jobs});
      return capture(args);
    };
    std::string ref = with("1");
    runs += 4;
    if (with("1") != ref || with("8") != ref || with("8") != ref) ++bad;
  }
  return {bad == 0, str(plain.size() + parallel.size()) + " commands, " + str(runs) + " runs, " + str(bad) +
                        " differing"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"matrix correspondence", matrix_correspondence},
      {"span associativity", associativity},
      {"biproducts", biproducts},
      {"structured closure", structured_closure},
      {"torsor classification", torsors},
      {"pairing unit", pairing_unit},
      {"perfect pairing", perfect_pairing},
      {"non-separable counterexample", nonseparable},
      {"conjugacy pairing", conjugacy_pairing},
      {"table of marks", table_of_marks_check},
      {"mackey axiom", mackey},
      {"global spans", global_spans},
      {"operadic census", census},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", n, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
