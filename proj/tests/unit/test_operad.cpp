#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "gspan/error.hpp"
#include "gspan/operad.hpp"

using namespace gspan;

namespace {

long long binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  long long b = 1;
  for (int i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

// Assoc operations read as string products: word w applied to (x_0, ..) is
// x_{w[0]} x_{w[1]} ...
std::string evaluate(const std::vector<int>& w, const std::vector<std::string>& xs) {
  std::string s;
  for (int i : w) s += xs[i];
  return s;
}

std::vector<std::string> letters(int n, char first = 'a') {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.emplace_back(1, static_cast<char>(first + i));
  return v;
}

// Every apex bijection, checking legs and the induced fiber relabelling.
bool iso_by_bijections(const SetOperad& o, const OperadicSpan& a, const OperadicSpan& b) {
  if (a.x != b.x || a.y != b.y || a.apex() != b.apex()) return false;
  const int t = a.apex();
  auto rank_in_fiber = [](const OperadicSpan& s, int i) {
    int r = 0;
    for (int j = 0; j < i; ++j) r += s.right[j] == s.right[i];
    return r;
  };
  for (const auto& sigma : permutations_of(t)) {
    bool ok = true;
    for (int i = 0; i < t && ok; ++i) ok = a.left[i] == b.left[sigma[i]] && a.right[i] == b.right[sigma[i]];
    for (int yv = 0; yv < a.y && ok; ++yv) {
      std::vector<int> p;
      for (int i = 0; i < t; ++i)
        if (a.right[i] == yv) p.push_back(rank_in_fiber(b, sigma[i]));
      ok = o.relabel(static_cast<int>(p.size()), a.decoration[yv], p) == b.decoration[yv];
    }
    if (ok) return true;
  }
  return false;
}

// All spans x <- T -> y with |T| <= max_apex, every decoration.
std::vector<OperadicSpan> all_spans(const SetOperad& o, int x, int y, int max_apex) {
  std::vector<OperadicSpan> out;
  for (int t = 0; t <= max_apex; ++t) {
    std::vector<int> left(t, 0), right(t, 0);
    auto bump = [](std::vector<int>& v, int base) {
      std::size_t i = 0;
      while (i < v.size() && ++v[i] == base) v[i++] = 0;
      return i < v.size();
    };
    if (t > 0 && (x == 0 || y == 0)) continue;
    do {
      do {
        std::vector<int> sizes(y, 0);
        for (int r : right) ++sizes[r];
        bool fits = true;
        for (int s : sizes) fits = fits && s <= o.max_arity();
        if (!fits) continue;
        std::vector<int> dec(y, 0);
        do out.push_back(make_operadic_span(o, x, y, left, right, dec));
        while ([&] {
          for (int j = 0; j < y; ++j) {
            if (++dec[j] < o.size(sizes[j])) return true;
            dec[j] = 0;
          }
          return false;
        }());
      } while (bump(right, y));
    } while (bump(left, x));
  }
  return out;
}

std::vector<OperadicSpan> class_reps(const SetOperad& o, int x, int y, int max_apex) {
  std::set<OperadicSpan> reps;
  for (const auto& s : all_spans(o, x, y, max_apex)) reps.insert(operadic_canonical_form(o, s));
  return {reps.begin(), reps.end()};
}

}  // namespace

TEST_SUITE("operad") {
  TEST_CASE("Comm and Assoc pass validation, Assoc matches string evaluation") {
    auto comm = comm_operad(4);
    CHECK(comm.size(3) == 1);
    auto assoc = assoc_operad(4);
    for (int n = 0; n <= 4; ++n) CHECK(assoc.size(n) == static_cast<int>(permutations_of(n).size()));

    const int n_max = 4;
    for (int n = 0; n <= n_max; ++n)
      for (int w = 0; w < assoc.size(n); ++w)
        for (const auto& p : permutations_of(n)) {
          // Renaming input i to p(i) is substituting x_{p(i)} for x_i.
          auto xs = letters(n);
          std::vector<std::string> renamed(n);
          for (int i = 0; i < n; ++i) renamed[i] = xs[p[i]];
          CHECK(evaluate(permutations_of(n)[assoc.relabel(n, w, p)], xs) == evaluate(permutations_of(n)[w], renamed));
          for (const auto& q : permutations_of(n)) {
            std::vector<int> qp(n);
            for (int i = 0; i < n; ++i) qp[i] = q[p[i]];
            CHECK(assoc.relabel(n, assoc.relabel(n, w, p), q) == assoc.relabel(n, w, qp));
          }
        }

    // gamma(a; b_1, b_2) evaluates as a applied to the evaluated blocks.
    for (int n1 = 0; n1 <= n_max; ++n1)
      for (int n2 = 0; n1 + n2 <= n_max; ++n2)
        for (int a = 0; a < 2; ++a)
          for (int b1 = 0; b1 < assoc.size(n1); ++b1)
            for (int b2 = 0; b2 < assoc.size(n2); ++b2) {
              auto xs = letters(n1 + n2);
              std::vector<std::string> first(xs.begin(), xs.begin() + n1), second(xs.begin() + n1, xs.end());
              std::vector<std::string> blocks{evaluate(permutations_of(n1)[b1], first),
                                              evaluate(permutations_of(n2)[b2], second)};
              int g = assoc.compose(a, {{n1, b1}, {n2, b2}});
              CHECK(evaluate(permutations_of(n1 + n2)[g], xs) == evaluate(permutations_of(2)[a], blocks));
            }
  }

  TEST_CASE("broken tables are rejected") {
    auto data = assoc_operad(3).data();
    // A binary composite with a non-unit input is covered by no unit law.
    auto key = std::vector<int>{2, 0, 1, 0, 2, 1};
    REQUIRE(data.gamma.count(key));
    data.gamma[key] = (data.gamma[key] + 1) % 6;
    try {
      SetOperad::build(data);
      FAIL("accepted a broken gamma table");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AxiomViolation);
      CHECK(std::string(e.what()).find("fails at") != std::string::npos);
    }

    auto bad_action = assoc_operad(3).data();
    std::swap(bad_action.relabel[3][0][1], bad_action.relabel[3][0][2]);
    try {
      SetOperad::build(bad_action);
      FAIL("accepted a broken action");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::AxiomViolation);
    }

    auto missing = comm_operad(2).data();
    missing.gamma.erase(missing.gamma.begin());
    CHECK_THROWS_AS(SetOperad::build(missing), Error);
    CHECK_THROWS_AS(comm_operad(kMaxOperadArity + 1), Error);
  }

  TEST_CASE("Assoc composition over a point matches nested products") {
    auto assoc = assoc_operad(4);
    for (int m = 1; m <= 4; ++m)
      for (int n = 1; m * n <= 4; ++n)
        for (int a = 0; a < assoc.size(m); ++a)
          for (int b = 0; b < assoc.size(n); ++b) {
            auto s = make_operadic_span(assoc, 1, 1, std::vector<int>(m, 0), std::vector<int>(m, 0), {a});
            auto t = make_operadic_span(assoc, 1, 1, std::vector<int>(n, 0), std::vector<int>(n, 0), {b});
            auto st = operadic_span_compose(assoc, s, t);
            REQUIRE(st.apex() == m * n);
            // Pair (i, j) is apex point i n + j; t's word picks j in order,
            // then s's word picks i.
            std::vector<int> word;
            for (int j : permutations_of(n)[b])
              for (int i : permutations_of(m)[a]) word.push_back(i * n + j);
            CHECK(permutations_of(m * n)[st.decoration[0]] == word);
          }

    auto two = make_operadic_span(assoc, 1, 1, {0, 0}, {0, 0}, {1});
    auto four = operadic_span_compose(assoc, two, two);
    CHECK(four.apex() == 4);
    CHECK(permutations_of(4)[four.decoration[0]] == std::vector<int>{3, 1, 2, 0});
  }

  TEST_CASE("canonical forms decide isomorphism") {
    auto assoc = assoc_operad(3);
    auto spans = all_spans(assoc, 2, 2, 2);
    for (std::size_t i = 0; i < spans.size(); i += 3)
      for (std::size_t j = 0; j < spans.size(); j += 5)
        CHECK(operadic_iso(assoc, spans[i], spans[j]) == iso_by_bijections(assoc, spans[i], spans[j]));
    auto three = all_spans(assoc, 1, 1, 3);
    for (const auto& a : three)
      for (const auto& b : three) CHECK(operadic_iso(assoc, a, b) == iso_by_bijections(assoc, a, b));
  }

  TEST_CASE("identities and associativity up to isomorphism") {
    for (const auto& o : {comm_operad(4), assoc_operad(4)}) {
      std::map<std::pair<int, int>, std::vector<OperadicSpan>> reps;
      for (int x = 1; x <= 2; ++x)
        for (int y = 1; y <= 2; ++y) reps[{x, y}] = class_reps(o, x, y, 2);
      for (const auto& [feet, list] : reps)
        for (const auto& s : list) {
          CHECK(operadic_iso(o, operadic_span_compose(o, operadic_identity(o, feet.first), s), s));
          CHECK(operadic_iso(o, operadic_span_compose(o, s, operadic_identity(o, feet.second)), s));
        }
      long long triples = 0;
      for (int x = 1; x <= 2; ++x)
        for (int y = 1; y <= 2; ++y)
          for (int z = 1; z <= 2; ++z)
            for (int w = 1; w <= 2; ++w)
              for (const auto& s : reps[{x, y}])
                for (const auto& t : reps[{y, z}])
                  for (const auto& u : reps[{z, w}]) {
                    // Triples whose bracketings leave the arity bound are
                    // out of range; both sides are compared whenever both exist.
                    OperadicSpan lhs, rhs;
                    try {
                      lhs = operadic_span_compose(o, operadic_span_compose(o, s, t), u);
                      rhs = operadic_span_compose(o, s, operadic_span_compose(o, t, u));
                    } catch (const Error& e) {
                      CHECK(e.code() == ErrorCode::ArityOverflow);
                      continue;
                    }
                    CHECK(operadic_iso(o, lhs, rhs));
                    ++triples;
                  }
      CHECK(triples > 1000);
    }
  }

  TEST_CASE("Comm spans are plain spans") {
    auto comm = comm_operad(3);
    for (int x = 1; x <= 2; ++x)
      for (int y = 1; y <= 2; ++y) {
        std::set<SpanClass> plain;
        auto spans = all_spans(comm, x, y, 3);
        for (const auto& s : spans) plain.insert(span_class(underlying_span(s)));
        auto reps = class_reps(comm, x, y, 3);
        CHECK(reps.size() == plain.size());
        std::set<SpanClass> images;
        for (const auto& r : reps) images.insert(span_class(underlying_span(r)));
        CHECK(images.size() == reps.size());
      }
    auto s = make_operadic_span(comm, 2, 1, {0, 1, 1}, {0, 0, 0}, {0});
    auto t = make_operadic_span(comm, 1, 2, {0, 0}, {0, 1}, {0, 0});
    auto st = operadic_span_compose(comm, s, t);
    CHECK(span_class(underlying_span(st)) == span_class(compose_spans(underlying_span(s), underlying_span(t))));
  }

  TEST_CASE("free algebra census") {
    auto comm = comm_operad(4);
    auto rows = free_algebra_census(comm, 1, 3);
    REQUIRE(rows.size() == 4);
    for (const auto& r : rows) {
      CHECK(r.span_side == 1);
      CHECK(r.formula_side == 1);
    }
    rows = free_algebra_census(comm, 2, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].span_side == 1);
    CHECK(rows[1].span_side == 2);
    CHECK(rows[2].span_side == 3);

    auto assoc = assoc_operad(4);
    for (const auto* o : {&comm, &assoc}) {
      auto zero = free_algebra_census(*o, 0, 4);
      CHECK(zero[0].span_side == 1);
      CHECK(zero[0].formula_side == 1);
      for (int t = 1; t <= 4; ++t) {
        CHECK(zero[t].span_side == 0);
        CHECK(zero[t].formula_side == 0);
      }
    }
    for (int k = 1; k <= 3; ++k) {
      auto c = free_algebra_census(comm, k, 4, 4);
      auto a = free_algebra_census(assoc, k, 4);
      long long pow = 1;
      for (int t = 0; t <= 4; ++t) {
        CHECK(c[t].span_side == binomial(t + k - 1, t));
        CHECK(c[t].formula_side == c[t].span_side);
        CHECK(a[t].span_side == pow);
        CHECK(a[t].formula_side == pow);
        pow *= k;
      }
    }
  }

  TEST_CASE("errors") {
    auto assoc = assoc_operad(3);
    auto two = make_operadic_span(assoc, 1, 1, {0, 0}, {0, 0}, {0});
    try {
      operadic_span_compose(assoc, two, two);
      FAIL("composite fiber of size 4 accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ArityOverflow);
    }
    auto to_two = make_operadic_span(assoc, 1, 2, {0}, {1}, {0, 0});
    try {
      operadic_span_compose(assoc, to_two, to_two);
      FAIL("mismatched feet accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::FeetMismatch);
    }
    try {
      make_operadic_span(assoc, 1, 1, {0, 0, 0, 0}, {0, 0, 0, 0}, {0});
      FAIL("oversized fiber accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ArityOverflow);
    }
    try {
      free_algebra_census(assoc, 2, 4);
      FAIL("census past the arity bound");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CapExceeded);
    }
  }
}
