#include "gspan/operad.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "gspan/error.hpp"
#include "gspan/parallel.hpp"

namespace gspan {

namespace {

std::string show(const std::vector<int>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

std::string show_inner(const std::vector<std::pair<int, int>>& inner) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < inner.size(); ++i)
    os << (i ? "; " : "") << inner[i].second << " in O(" << inner[i].first << ")";
  os << ')';
  return os.str();
}

std::vector<int> gamma_key(int k, int a, const std::vector<std::pair<int, int>>& inner) {
  std::vector<int> key{k, a};
  for (auto [n, b] : inner) {
    key.push_back(n);
    key.push_back(b);
  }
  return key;
}

int factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

// Calls fn on every tuple ((n_1, b_1), .., (n_k, b_k)) with sum n_i <= cap.
template <class Fn>
void for_each_inner(const std::vector<int>& sizes, int k, int cap, Fn&& fn) {
  std::vector<std::pair<int, int>> cur;
  std::function<void(int)> rec = [&](int left) {
    if (static_cast<int>(cur.size()) == k) {
      fn(cur);
      return;
    }
    for (int n = 0; n <= left; ++n)
      for (int b = 0; b < sizes[n]; ++b) {
        cur.emplace_back(n, b);
        rec(left - n);
        cur.pop_back();
      }
  };
  rec(cap);
}

int total_arity(const std::vector<std::pair<int, int>>& inner) {
  int t = 0;
  for (auto [n, b] : inner) t += n;
  return t;
}

std::vector<int> compose_perm(const std::vector<int>& q, const std::vector<int>& p) {
  std::vector<int> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

std::vector<int> adjacent_swap(int n, int i) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  std::swap(s[i], s[i + 1]);
  return s;
}

void check_shape(const OperadData& d) {
  const int n_max = d.max_arity;
  if (n_max > kMaxOperadArity)
    fail(ErrorCode::CapExceeded, "max_arity " + std::to_string(n_max) + " above " + std::to_string(kMaxOperadArity));
  if (n_max < 1) fail(ErrorCode::MalformedInput, "max_arity must be at least 1");
  if (static_cast<int>(d.sizes.size()) != n_max + 1 || static_cast<int>(d.relabel.size()) != n_max + 1)
    fail(ErrorCode::MalformedInput, "need sizes and relabel tables for arities 0.." + std::to_string(n_max));
  for (int n = 0; n <= n_max; ++n) {
    if (d.sizes[n] < 0) fail(ErrorCode::MalformedInput, "negative size at arity " + std::to_string(n));
    if (static_cast<int>(d.relabel[n].size()) != d.sizes[n])
      fail(ErrorCode::MalformedInput, "relabel table at arity " + std::to_string(n) + " has wrong row count");
    for (const auto& row : d.relabel[n]) {
      if (static_cast<int>(row.size()) != factorial(n))
        fail(ErrorCode::MalformedInput, "relabel row at arity " + std::to_string(n) + " needs n! entries");
      for (int v : row)
        if (v < 0 || v >= d.sizes[n])
          fail(ErrorCode::MalformedInput, "relabel entry out of range at arity " + std::to_string(n));
    }
  }
  if (d.unit < 0 || d.unit >= d.sizes[1]) fail(ErrorCode::MalformedInput, "unit not in O(1)");
  for (const auto& [key, v] : d.gamma) {
    if (key.size() < 2 || key.size() % 2 != 0 || key[0] < 0 || key[0] > n_max ||
        static_cast<int>(key.size()) != 2 + 2 * key[0])
      fail(ErrorCode::MalformedInput, "malformed gamma key " + show(key));
    int total = 0;
    bool ok = key[1] >= 0 && key[1] < d.sizes[key[0]];
    for (std::size_t i = 2; ok && i < key.size(); i += 2) {
      ok = key[i] >= 0 && key[i] <= n_max && key[i + 1] >= 0 && key[i + 1] < d.sizes[key[i]];
      if (ok) total += key[i];
    }
    if (!ok || total > n_max) fail(ErrorCode::MalformedInput, "gamma key out of range " + show(key));
    if (v < 0 || v >= d.sizes[total]) fail(ErrorCode::MalformedInput, "gamma value out of range at " + show(key));
  }
}

[[noreturn]] void violation(const std::string& law, const std::string& witness) {
  fail(ErrorCode::AxiomViolation, law + " fails at " + witness);
}

}  // namespace

const std::vector<std::vector<int>>& permutations_of(int n) {
  static const std::vector<std::vector<std::vector<int>>> all = [] {
    std::vector<std::vector<std::vector<int>>> out(kMaxOperadArity + 1);
    for (int m = 0; m <= kMaxOperadArity; ++m) {
      std::vector<int> p(m);
      std::iota(p.begin(), p.end(), 0);
      do out[m].push_back(p);
      while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }();
  if (n < 0 || n > kMaxOperadArity) fail(ErrorCode::CapExceeded, "permutations of " + std::to_string(n));
  return all[n];
}

int permutation_rank(const std::vector<int>& p) {
  const int n = static_cast<int>(p.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    rank += smaller * factorial(n - 1 - i);
  }
  return rank;
}

int SetOperad::relabel(int n, int x, const std::vector<int>& p) const {
  return d_.relabel[n][x][permutation_rank(p)];
}

int SetOperad::compose(int a, const std::vector<std::pair<int, int>>& inner) const {
  const int total = total_arity(inner);
  if (total > d_.max_arity)
    fail(ErrorCode::ArityOverflow,
         "composite arity " + std::to_string(total) + " above " + std::to_string(d_.max_arity));
  const int k = static_cast<int>(inner.size());
  thread_local std::vector<int> key;
  key.assign({k, a});
  for (auto [n, b] : inner) {
    key.push_back(n);
    key.push_back(b);
  }
  auto it = index_.find(key);
  if (it == index_.end()) fail(ErrorCode::MalformedInput, "no gamma entry for " + show(key));
  return it->second;
}

std::size_t SetOperad::KeyHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = v.size();
  for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
  return h;
}

SetOperad SetOperad::build(OperadData data) {
  check_shape(data);
  SetOperad o;
  o.d_ = std::move(data);
  o.index_.reserve(o.d_.gamma.size());
  for (const auto& [key, v] : o.d_.gamma) o.index_.emplace(key, v);
  const auto& d = o.d_;
  const int n_max = d.max_arity;

  // Every gamma entry inside the bound is required.
  for (int k = 0; k <= n_max; ++k)
    for (int a = 0; a < d.sizes[k]; ++a)
      for_each_inner(d.sizes, k, n_max, [&](const auto& inner) {
        if (!d.gamma.count(gamma_key(k, a, inner)))
          fail(ErrorCode::MalformedInput, "missing gamma entry " + show(gamma_key(k, a, inner)));
      });

  // Action: identity fixes, and O(s)(O(p)(x)) = O(s o p)(x) for all p and
  // adjacent swaps s. Induction on word length gives it for every q.
  for (int n = 0; n <= n_max; ++n) {
    const auto& perms = permutations_of(n);
    for (int x = 0; x < d.sizes[n]; ++x) {
      if (d.relabel[n][x][0] != x) violation("action identity", std::to_string(x) + " in O(" + std::to_string(n) + ")");
      for (int i = 0; i + 1 < n; ++i) {
        auto s = adjacent_swap(n, i);
        for (const auto& p : perms) {
          int lhs = o.relabel(n, o.relabel(n, x, p), s);
          int rhs = o.relabel(n, x, compose_perm(s, p));
          if (lhs != rhs)
            violation("action composition",
                      std::to_string(x) + " in O(" + std::to_string(n) + "), p=" + show(p) + ", swap " + std::to_string(i));
        }
      }
    }
  }

  // Units.
  for (int n = 0; n <= n_max; ++n)
    for (int x = 0; x < d.sizes[n]; ++x) {
      if (o.compose(d.unit, {{n, x}}) != x) violation("left unit", std::to_string(x) + " in O(" + std::to_string(n) + ")");
      std::vector<std::pair<int, int>> units(n, {1, d.unit});
      if (o.compose(x, units) != x) violation("right unit", std::to_string(x) + " in O(" + std::to_string(n) + ")");
    }

  for (int k = 0; k <= n_max; ++k)
    for (int a = 0; a < d.sizes[k]; ++a)
      for_each_inner(d.sizes, k, n_max, [&](const std::vector<std::pair<int, int>>& inner) {
        const int total = total_arity(inner);
        const int base = o.compose(a, inner);
        std::vector<int> offset(k + 1, 0);
        for (int i = 0; i < k; ++i) offset[i + 1] = offset[i] + inner[i].first;

        // Outer swap s: gamma(O(s)a; b_s(0), ..) = O(block swap)(gamma(a; b)).
        for (int i = 0; i + 1 < k; ++i) {
          auto s = adjacent_swap(k, i);
          auto swapped = inner;
          std::swap(swapped[i], swapped[i + 1]);
          std::vector<int> block(total);
          std::iota(block.begin(), block.end(), 0);
          const int ni = inner[i].first, nj = inner[i + 1].first;
          for (int r = 0; r < ni; ++r) block[offset[i] + r] = offset[i] + nj + r;
          for (int r = 0; r < nj; ++r) block[offset[i + 1] + r] = offset[i] + r;
          if (o.compose(o.relabel(k, a, s), swapped) != o.relabel(total, base, block))
            violation("outer equivariance", "a=" + std::to_string(a) + " in O(" + std::to_string(k) + "), inner " +
                                                show_inner(inner) + ", swap " + std::to_string(i));
        }

        // Inner swap in block i: gamma(a; .., O(s)b_i, ..) = O(shifted s)(gamma(a; b)).
        for (int i = 0; i < k; ++i)
          for (int j = 0; j + 1 < inner[i].first; ++j) {
            auto moved = inner;
            moved[i].second = o.relabel(inner[i].first, inner[i].second, adjacent_swap(inner[i].first, j));
            if (o.compose(a, moved) != o.relabel(total, base, adjacent_swap(total, offset[i] + j)))
              violation("inner equivariance", "a=" + std::to_string(a) + " in O(" + std::to_string(k) + "), inner " +
                                                  show_inner(inner) + ", block " + std::to_string(i) + " swap " +
                                                  std::to_string(j));
          }

        // Associativity against every third layer.
        for_each_inner(d.sizes, total, n_max, [&](const std::vector<std::pair<int, int>>& outer) {
          const int lhs = o.compose(base, outer);
          std::vector<std::pair<int, int>> mid;
          for (int i = 0; i < k; ++i) {
            std::vector<std::pair<int, int>> part(outer.begin() + offset[i], outer.begin() + offset[i + 1]);
            mid.emplace_back(total_arity(part), o.compose(inner[i].second, part));
          }
          if (lhs != o.compose(a, mid))
            violation("associativity", "a=" + std::to_string(a) + " in O(" + std::to_string(k) + "), inner " +
                                           show_inner(inner) + ", outer " + show_inner(outer));
        });
      });
  return o;
}

namespace {

SetOperad build_comm(int max_arity) {
  OperadData d;
  d.name = "Comm";
  d.max_arity = max_arity;
  if (max_arity > kMaxOperadArity) fail(ErrorCode::CapExceeded, "max_arity above " + std::to_string(kMaxOperadArity));
  for (int n = 0; n <= max_arity; ++n) {
    d.sizes.push_back(1);
    d.relabel.push_back({std::vector<int>(factorial(n), 0)});
  }
  for (int k = 0; k <= max_arity; ++k)
    for_each_inner(d.sizes, k, max_arity, [&](const auto& inner) { d.gamma[gamma_key(k, 0, inner)] = 0; });
  return SetOperad::build(std::move(d));
}

SetOperad build_assoc(int max_arity) {
  OperadData d;
  d.name = "Assoc";
  d.max_arity = max_arity;
  if (max_arity > kMaxOperadArity) fail(ErrorCode::CapExceeded, "max_arity above " + std::to_string(kMaxOperadArity));
  for (int n = 0; n <= max_arity; ++n) {
    const auto& perms = permutations_of(n);
    d.sizes.push_back(static_cast<int>(perms.size()));
    std::vector<std::vector<int>> rows;
    for (const auto& w : perms) {
      std::vector<int> row;
      for (const auto& p : perms) row.push_back(permutation_rank(compose_perm(p, w)));
      rows.push_back(std::move(row));
    }
    d.relabel.push_back(std::move(rows));
  }
  for (int k = 0; k <= max_arity; ++k)
    for (int a = 0; a < d.sizes[k]; ++a)
      for_each_inner(d.sizes, k, max_arity, [&](const std::vector<std::pair<int, int>>& inner) {
        const auto& w = permutations_of(k)[a];
        std::vector<int> offset(k + 1, 0);
        for (int i = 0; i < k; ++i) offset[i + 1] = offset[i] + inner[i].first;
        std::vector<int> word;
        for (int pos = 0; pos < k; ++pos) {
          const int blk = w[pos];
          for (int letter : permutations_of(inner[blk].first)[inner[blk].second]) word.push_back(offset[blk] + letter);
        }
        d.gamma[gamma_key(k, a, inner)] = permutation_rank(word);
      });
  return SetOperad::build(std::move(d));
}

// Validation is exhaustive, so each built-in is checked once per process.
template <class Build>
SetOperad cached(std::map<int, SetOperad>& cache, std::mutex& m, int max_arity, Build build) {
  std::lock_guard lock(m);
  auto it = cache.find(max_arity);
  if (it == cache.end()) it = cache.emplace(max_arity, build(max_arity)).first;
  return it->second;
}

}  // namespace

SetOperad comm_operad(int max_arity) {
  static std::map<int, SetOperad> cache;
  static std::mutex m;
  return cached(cache, m, max_arity, build_comm);
}

SetOperad assoc_operad(int max_arity) {
  static std::map<int, SetOperad> cache;
  static std::mutex m;
  return cached(cache, m, max_arity, build_assoc);
}

namespace {

std::vector<std::vector<int>> fibers(int y, const std::vector<int>& right) {
  std::vector<std::vector<int>> f(y);
  for (int i = 0; i < static_cast<int>(right.size()); ++i) f[right[i]].push_back(i);
  return f;
}

}  // namespace

OperadicSpan make_operadic_span(const SetOperad& o, int x, int y, std::vector<int> left, std::vector<int> right,
                                std::vector<int> decoration) {
  if (x < 0 || y < 0) fail(ErrorCode::MalformedInput, "negative foot");
  if (left.size() != right.size()) fail(ErrorCode::MalformedInput, "legs have different apex sizes");
  if (static_cast<int>(decoration.size()) != y) fail(ErrorCode::MalformedInput, "need one decoration per point of Y");
  for (int v : left)
    if (v < 0 || v >= x) fail(ErrorCode::MalformedInput, "left leg out of range");
  for (int v : right)
    if (v < 0 || v >= y) fail(ErrorCode::MalformedInput, "right leg out of range");
  auto f = fibers(y, right);
  for (int j = 0; j < y; ++j) {
    const int n = static_cast<int>(f[j].size());
    if (n > o.max_arity())
      fail(ErrorCode::ArityOverflow, "fiber over " + std::to_string(j) + " has " + std::to_string(n) + " points");
    if (decoration[j] < 0 || decoration[j] >= o.size(n))
      fail(ErrorCode::MalformedInput, "decoration over " + std::to_string(j) + " not in O(" + std::to_string(n) + ")");
  }
  return OperadicSpan{x, y, std::move(left), std::move(right), std::move(decoration)};
}

OperadicSpan operadic_identity(const SetOperad& o, int x) {
  std::vector<int> id(x);
  std::iota(id.begin(), id.end(), 0);
  return make_operadic_span(o, x, x, id, id, std::vector<int>(x, o.unit()));
}

OperadicSpan operadic_span_compose(const SetOperad& o, const OperadicSpan& s, const OperadicSpan& t) {
  if (s.y != t.x)
    fail(ErrorCode::FeetMismatch, "middle feet " + std::to_string(s.y) + " and " + std::to_string(t.x));
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < s.apex(); ++a)
    for (int b = 0; b < t.apex(); ++b)
      if (s.right[a] == t.left[b]) pairs.emplace_back(a, b);

  OperadicSpan out;
  out.x = s.x;
  out.y = t.y;
  for (auto [a, b] : pairs) {
    out.left.push_back(s.left[a]);
    out.right.push_back(t.right[b]);
  }
  auto s_fib = fibers(s.y, s.right);
  auto t_fib = fibers(t.y, t.right);
  for (int z = 0; z < t.y; ++z) {
    std::vector<std::pair<int, int>> inner;
    std::vector<std::pair<int, int>> order;  // block order of the gamma inputs
    for (int b : t_fib[z]) {
      const int yb = t.left[b];
      inner.emplace_back(static_cast<int>(s_fib[yb].size()), s.decoration[yb]);
      for (int a : s_fib[yb]) order.emplace_back(a, b);
    }
    const int g = o.compose(t.decoration[z], inner);
    // Rename block positions to ranks in the pullback fiber, which is
    // lexicographic because pairs are.
    std::vector<int> rank(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      int r = 0;
      for (const auto& q : order) r += q < order[i];
      rank[i] = r;
    }
    out.decoration.push_back(o.relabel(static_cast<int>(order.size()), g, rank));
  }
  return out;
}

OperadicSpan operadic_canonical_form(const SetOperad& o, const OperadicSpan& s) {
  OperadicSpan out;
  out.x = s.x;
  out.y = s.y;
  auto f = fibers(s.y, s.right);
  for (int yv = 0; yv < s.y; ++yv) {
    const int n = static_cast<int>(f[yv].size());
    std::vector<int> best_left;
    int best_dec = -1;
    for (const auto& pi : permutations_of(n)) {
      // New position i holds old rank pi[i]; inputs rename by pi^{-1}.
      std::vector<int> lab(n), inv(n);
      for (int i = 0; i < n; ++i) {
        lab[i] = s.left[f[yv][pi[i]]];
        inv[pi[i]] = i;
      }
      if (best_dec >= 0 && lab > best_left) continue;
      const int dec = o.relabel(n, s.decoration[yv], inv);
      if (best_dec < 0 || lab < best_left || dec < best_dec) {
        best_left = lab;
        best_dec = dec;
      }
    }
    for (int v : best_left) {
      out.left.push_back(v);
      out.right.push_back(yv);
    }
    out.decoration.push_back(best_dec);
  }
  return out;
}

bool operadic_iso(const SetOperad& o, const OperadicSpan& a, const OperadicSpan& b) {
  if (a.x != b.x || a.y != b.y || a.apex() != b.apex()) return false;
  return operadic_canonical_form(o, a) == operadic_canonical_form(o, b);
}

Span underlying_span(const OperadicSpan& s) {
  auto e = trivial_group();
  return make_span(GSet::trivial_action(e, s.x), GSet::trivial_action(e, s.y), GSet::trivial_action(e, s.apex()),
                   s.left, s.right);
}

std::vector<CensusRow> free_algebra_census(const SetOperad& o, int k, int bound, unsigned jobs) {
  if (k < 0 || bound < 0) fail(ErrorCode::MalformedInput, "k and bound must be non-negative");
  if (bound > o.max_arity())
    fail(ErrorCode::CapExceeded, "bound " + std::to_string(bound) + " above the operad's max arity " +
                                     std::to_string(o.max_arity()));
  for (int t = 0; t <= bound; ++t) {
    double raw = static_cast<double>(o.size(t)) * factorial(t);
    for (int i = 0; i < t; ++i) raw *= k;
    if (raw > 1e8) fail(ErrorCode::CapExceeded, "census level " + std::to_string(t) + " too large");
  }
  return parallel_map<CensusRow>(static_cast<std::size_t>(bound + 1), jobs, [&](std::size_t ti) {
    const int t = static_cast<int>(ti);
    CensusRow row;
    row.t = t;

    // Span side: every {1..k} <- T -> 1, counted up to decorated iso.
    std::set<OperadicSpan> classes;
    std::vector<int> lab(t, 0);
    const std::vector<int> right(t, 0);
    if (k > 0 || t == 0)
      while (true) {
        for (int d = 0; d < o.size(t); ++d)
          classes.insert(operadic_canonical_form(o, OperadicSpan{k, 1, lab, right, {d}}));
        int i = 0;
        while (i < t && ++lab[i] == k) lab[i++] = 0;
        if (i == t) break;
      }
    row.span_side = static_cast<long long>(classes.size());

    // Formula side: orbits of Sigma_t on O(t) x k^t by Burnside's lemma.
    long long sum = 0;
    for (const auto& sigma : permutations_of(t)) {
      long long fixed = 0;
      for (int d = 0; d < o.size(t); ++d) fixed += o.relabel(t, d, sigma) == d;
      std::vector<char> seen(t, 0);
      long long pow = 1;
      for (int i = 0; i < t; ++i)
        if (!seen[i]) {
          for (int j = i; !seen[j]; j = sigma[j]) seen[j] = 1;
          pow *= k;
        }
      sum += fixed * pow;
    }
    row.formula_side = sum / factorial(t);
    return row;
  });
}

}  // namespace gspan
