#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "gspan/catalog.hpp"
#include "gspan/duality.hpp"
#include "gspan/error.hpp"

using namespace gspan;

namespace {

// Classes of X x Y under the full relation, by flood fill over every group
// element in both directions. Returns a class label per pair.
std::vector<int> pairing_by_flood(const Biset& x, const Biset& y) {
  const int nx = x.size(), ny = y.size();
  const int ng = x.right_group()->order(), nh = x.left_group()->order();
  std::vector<int> label(static_cast<std::size_t>(nx) * ny, -1);
  int next = 0;
  for (int s = 0; s < nx * ny; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      int p = c / ny, q = c % ny;
      std::vector<int> nbrs;
      for (int g = 0; g < ng; ++g) {
        // (pg, q) ~ (p, gq) read both ways
        for (int p2 = 0; p2 < nx; ++p2)
          if (x.right(p2, g) == p) nbrs.push_back(p2 * ny + y.left(g, q));
        for (int q2 = 0; q2 < ny; ++q2)
          if (y.left(g, q2) == q) nbrs.push_back(x.right(p, g) * ny + q2);
      }
      for (int h = 0; h < nh; ++h) {
        for (int p2 = 0; p2 < nx; ++p2)
          if (x.left(h, p2) == p) nbrs.push_back(p2 * ny + y.right(q, h));
        for (int q2 = 0; q2 < ny; ++q2)
          if (y.right(q2, h) == q) nbrs.push_back(x.left(h, p) * ny + q2);
      }
      for (int n : nbrs)
        if (label[n] < 0) {
          label[n] = next;
          stack.push_back(n);
        }
    }
    ++next;
  }
  return label;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ab.emplace(a[i], b[i]).first->second != b[i]) return false;
    if (ba.emplace(b[i], a[i]).first->second != a[i]) return false;
  }
  return true;
}

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

// All functions X -> Y that commute with both actions.
std::size_t count_maps_by_brute_force(const Biset& x, const Biset& y) {
  if (y.size() == 0) return x.size() == 0;
  std::vector<int> map(x.size(), 0);
  std::size_t count = 0;
  while (true) {
    count += is_biset_map(x, y, map);
    int i = 0;
    while (i < x.size() && ++map[i] == y.size()) map[i++] = 0;
    if (i == x.size()) break;
  }
  return count;
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("pairing matches the flood-fill closure") {
    for (const char* gn : {"trivial", "C2", "C3", "S3"})
      for (const char* hn : {"trivial", "C2"}) {
        auto g = catalog_group(gn), h = catalog_group(hn);
        auto xs = left_free_bisets(h, g, 6);
        auto ys = left_free_bisets(g, h, 6);
        for (std::size_t i = 0; i < xs.size(); i += 2)
          for (std::size_t j = 0; j < ys.size(); j += 2) {
            auto r = pairing(xs[i], ys[j]);
            CHECK(same_partition(r.projection, pairing_by_flood(xs[i], ys[j])));
            // least representatives, increasing
            for (int c = 0; c < r.size; ++c) {
              auto [p, q] = r.section[c];
              CHECK(r.cls(p, q) == c);
              for (int k = 0; k < p * r.y_size + q; ++k) CHECK(r.projection[k] != c);
            }
          }
      }
    auto c2 = catalog_group("C2");
    CHECK_THROWS_AS(pairing(canonical_biset(c2, c2), canonical_biset(trivial_group(), c2)), Error);
  }

  TEST_CASE("conjugation biset paired with itself counts conjugacy classes") {
    CHECK(pairing(conjugation_biset(catalog_group("S3")), conjugation_biset(catalog_group("S3"))).size == 3);
    for (const auto& g : catalog_up_to(8)) {
      auto b = conjugation_biset(g);
      CHECK(pairing(b, b).size == conjugacy_class_count(*g));
    }
  }

  TEST_CASE("unit law") {
    for (const char* gn : {"trivial", "C2", "C3", "C2xC2"})
      for (const char* hn : {"trivial", "C2", "C3"}) {
        auto g = catalog_group(gn), h = catalog_group(hn);
        auto c = canonical_biset(h, g);
        const int ng = g->order();
        for (const auto& x : left_free_bisets(g, h, 6)) {
          auto r = pairing(c, x);
          REQUIRE(r.size == x.size());
          // [(a, b), x] -> b.x.a is constant on classes and bijective
          std::vector<int> image(r.size, -1);
          for (int p = 0; p < c.size(); ++p)
            for (int q = 0; q < x.size(); ++q) {
              int v = x.left(p % ng, x.right(q, p / ng));
              int& slot = image[r.cls(p, q)];
              CHECK((slot < 0 || slot == v));
              slot = v;
            }
          std::set<int> distinct(image.begin(), image.end());
          CHECK(static_cast<int>(distinct.size()) == x.size());
        }
      }
  }

  TEST_CASE("corpus and biset maps") {
    auto c2 = catalog_group("C2");
    auto c = orbit_corpus(c2, c2);
    // e, e x C2 and the diagonal meet C2 x e trivially; C2 x e and the whole group do not
    CHECK(c->size() == 3);
    CHECK(c->canonical == 0);
    CHECK(c->objects[0] == canonical_biset(c2, c2));
    for (int i = 0; i < c->size(); ++i) CHECK(c->objects[i].left_free());
    for (const auto& a : c->arrows) CHECK(is_biset_map(c->objects[a.from], c->objects[a.to], a.map));
    for (const char* gn : {"C2", "S3"})
      for (const char* hn : {"trivial", "C2"}) {
        auto g = catalog_group(gn), h = catalog_group(hn);
        auto xs = left_free_bisets(g, h, 6);
        for (const auto& x : xs)
          for (const auto& y : xs) {
            if (x.size() > 4 && y.size() > 4) continue;
            auto maps = biset_maps(x, y);
            CHECK(maps.size() == count_maps_by_brute_force(x, y));
            for (const auto& m : maps) CHECK(is_biset_map(x, y, m));
          }
      }
    // corpus arrows are all biset maps between orbit pairs
    for (const auto& cs : {c, orbit_corpus(catalog_group("S3"), trivial_group()), orbit_corpus(c2, catalog_group("C3"))}) {
      std::size_t total = 0;
      for (int i = 0; i < cs->size(); ++i)
        for (int j = 0; j < cs->size(); ++j) total += count_maps_by_brute_force(cs->objects[i], cs->objects[j]);
      CHECK(cs->arrows.size() == total);
    }
  }

  TEST_CASE("tensor functor values") {
    auto g = catalog_group("C3");
    auto e = trivial_group();
    auto basis_t = std::vector<int>{1, 2, 4};
    for (int t : basis_t) {
      auto x = separable_biset(g, GSet::trivial_action(e, t));
      auto f = tensor_functor(x);
      validate_functor(f);
      // O x_G (G x T) is O x T
      for (int i = 0; i < f.corpus->size(); ++i) CHECK(f.values[i] == f.corpus->objects[i].size() * t);
    }
    auto s3 = catalog_group("S3");
    auto unit = tensor_functor(canonical_biset(s3, s3));
    for (int i = 0; i < unit.corpus->size(); ++i) CHECK(unit.values[i] == unit.corpus->objects[i].size());
    auto empty = tensor_functor(empty_biset(g, e));
    for (int v : empty.values) CHECK(v == 0);
    CHECK(preserves_pce(empty).ok());
    CHECK_THROWS_AS(tensor_functor(Biset::build(g, e, {{0, 0, 0}}, {{0}}, false)), Error);
  }

  TEST_CASE("torsors in Fin") {
    auto e = trivial_group();
    auto c3 = catalog_group("C3");
    // C3 acting on itself, mapped to a point
    std::vector<std::vector<int>> act(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
      for (int x = 0; x < 3; ++x) act[a][x] = c3->mul(a, x);
    auto src = GSet::trivial_action(e, 3);
    auto cert = is_torsor(make_map(src, GSet::point(e), {0, 0, 0}), c3, act);
    REQUIRE(cert);
    CHECK(cert->fiber_pairs.size() == 9);
    // C2 swapping 0 and 1, fixing 2: the quotient is not a torsor
    auto c2 = catalog_group("C2");
    std::vector<std::vector<int>> swap{{0, 1, 2}, {1, 0, 2}};
    CHECK_FALSE(is_torsor(make_map(src, GSet::trivial_action(e, 2), {0, 0, 1}), c2, swap));
    // not invariant
    CHECK_FALSE(is_torsor(make_map(src, GSet::trivial_action(e, 3), {0, 1, 2}), c2, swap));
    // trivial K, identity
    CHECK(is_torsor(identity_map(src), e, {{0, 1, 2}}));
    // not an action
    CHECK_THROWS_AS(is_torsor(identity_map(src), c2, {{0, 1, 2}, {1, 2, 0}}), Error);
  }

  TEST_CASE("epimorphisms out of the canonical biset") {
    auto c2 = catalog_group("C2");
    auto e = trivial_group();
    {
      auto c = canonical_biset(c2, c2);
      auto id = make_biset_map(c, c, {0, 1, 2, 3});
      auto r = classify_epi_torsor(id);
      CHECK(r.k.order() == 1);
      CHECK(r.fibers_are_cosets);
    }
    {
      auto c = canonical_biset(e, c2);
      auto pt = Biset::build(e, c2, {{0}}, {{0, 0}}, true);
      auto r = classify_epi_torsor(make_biset_map(c, pt, {0, 0}));
      CHECK(r.k.order() == 2);
    }
    {
      // collapse by the diagonal: (a, b) -> a + b in C2
      auto c = canonical_biset(c2, c2);
      auto corpus = orbit_corpus(c2, c2);
      int diag = -1;
      for (int i = 0; i < corpus->size(); ++i)
        if (corpus->objects[i].size() == 2 && corpus->objects[i].right(0, 1) != 0) diag = i;
      REQUIRE(diag >= 0);
      auto a = corpus->arrows[corpus->arrow(corpus->canonical, diag, 0)];
      auto r = classify_epi_torsor(make_biset_map(c, corpus->objects[diag], a.map));
      // in H^op x G the stabilizer {(h, g) : h g = e} of the biset is the diagonal up to inversion
      CHECK(r.k.elements == std::vector<int>{0, 3});
      CHECK(r.fibers_are_cosets);
      CHECK(corpus->objects[diag].size() == 2);
    }
    auto s3 = catalog_group("S3");
    for (const auto& hg : std::vector<std::pair<GroupPtr, GroupPtr>>{{c2, s3}, {s3, c2}, {c2, c2}}) {
      auto corpus = orbit_corpus(hg.first, hg.second);
      const FiniteGroup& amb = *opposite_product(hg.first, hg.second);
      for (const auto& a : corpus->arrows) {
        if (a.from != corpus->canonical) continue;
        auto r = classify_epi_torsor(
            make_biset_map(corpus->objects[a.from], corpus->objects[a.to], a.map));
        CHECK(r.fibers_are_cosets);
        CHECK(r.k.order() * corpus->objects[a.to].size() == corpus->objects[a.from].size());
        // K is closed under the product of H^op x G
        for (int u : r.k.elements)
          for (int v : r.k.elements) CHECK(r.k.contains(amb.mul(u, v)));
      }
    }
    auto c = canonical_biset(c2, c2);
    auto corpus = orbit_corpus(c2, c2);
    CHECK_THROWS_AS(classify_epi_torsor(make_biset_map(corpus->objects[1], corpus->objects[1], {0, 1})), Error);
    auto two = biset_coproduct(c, c);
    CHECK_THROWS_AS(classify_epi_torsor(make_biset_map(c, two, {0, 1, 2, 3})), Error);
  }

  TEST_CASE("pce and reconstruction") {
    for (const char* gn : {"trivial", "C2", "C3", "S3"})
      for (const char* hn : {"trivial", "C2"}) {
        auto g = catalog_group(gn), h = catalog_group(hn);
        auto corpus = orbit_corpus(h, g);
        for (const auto& x : separable_bisets(g, h, 6)) {
          auto f = tensor_functor(x, corpus);
          auto r = preserves_pce(f);
          CHECK(r.ok());
          CHECK(r.squares_checked > 0);
          CHECK(biset_iso(reconstruct_biset(f), x));
        }
      }
    auto c2 = catalog_group("C2");
    auto bi = tensor_functor(conjugation_biset(c2));
    auto r = preserves_pce(bi);
    REQUIRE_FALSE(r.ok());
    REQUIRE_FALSE(r.pullback_failures.empty());
    const auto& w = r.pullback_failures.front();
    CHECK(w.image_size != w.fiber_product_size);
    CHECK_THROWS_AS(reconstruct_biset(bi), Error);
    // a table that sends the empty biset somewhere nonempty
    auto bad = tensor_functor(canonical_biset(c2, c2));
    bad.empty_value = 1;
    CHECK_FALSE(preserves_pce(bad).empty_ok);
    // a broken composite is not a functor
    auto broken = tensor_functor(canonical_biset(c2, c2));
    std::swap(broken.arrow_values[1][0], broken.arrow_values[1][1]);
    CHECK_THROWS_AS(validate_functor(broken), Error);
  }

  TEST_CASE("natural transformations biject with biset maps") {
    for (const char* gn : {"C2", "S3"})
      for (const char* hn : {"trivial", "C2"}) {
        auto g = catalog_group(gn), h = catalog_group(hn);
        auto corpus = orbit_corpus(h, g);
        auto xs = separable_bisets(g, h, 6);
        for (const auto& x : xs)
          for (const auto& y : xs) {
            auto fx = tensor_functor(x, corpus), fy = tensor_functor(y, corpus);
            auto nats = natural_transformations(fx, fy);
            auto maps = biset_maps(x, y);
            CHECK(nats.size() == maps.size());
            for (const auto& eta : nats) CHECK(is_natural(fx, fy, eta));
            for (const auto& m : maps) {
              auto eta = tensor_transformation(fx, fy, BisetMap{x, y, m});
              CHECK(std::binary_search(nats.begin(), nats.end(), eta));
            }
          }
      }
  }

  TEST_CASE("verifier") {
    auto e = trivial_group();
    auto c2 = catalog_group("C2");
    CHECK(verify_duality(e, e, 6).ok());
    auto r = verify_duality(c2, e, 6, false, 2);
    CHECK(r.ok());
    CHECK(r.checks.size() > 10);
    auto nc = verify_duality(c2, c2, 4, true);
    CHECK(nc.ok());
    REQUIRE(nc.counterexample);
    CHECK_FALSE(nc.counterexample->reason.empty());
    int flagged = 0;
    for (const auto& c : nc.checks) flagged += c.clause == "nonseparable";
    CHECK(flagged >= 2);
    CHECK_THROWS_AS(verify_duality(direct_product(catalog_group("S4"), catalog_group("C2")), e, 2), Error);
  }
}
