#include "gspan/burnside.hpp"

#include <algorithm>

#include "gspan/error.hpp"

namespace gspan {

OrbitBasis orbit_basis(const GroupPtr& g) {
  const auto& lat = g->lattice();
  OrbitBasis b{g, {}, {}};
  for (int c = 0; c < lat.class_count(); ++c) {
    b.reps.push_back(lat.rep(c));
    b.orbits.push_back(GSet::orbit(g, lat.rep(c)));
  }
  return b;
}

GSet orbit_sum(const OrbitBasis& b, const std::vector<int>& coords) {
  if (static_cast<int>(coords.size()) != b.size()) fail(ErrorCode::ShapeMismatch, "coordinate vector has wrong length");
  GSet out = GSet::empty(b.group);
  for (int i = 0; i < b.size(); ++i)
    for (int k = 0; k < coords[i]; ++k) out = coproduct(out, b.orbits[i]).object;
  return out;
}

std::vector<std::vector<int>> orbit_sums_up_to(const OrbitBasis& b, int bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> coords(b.size(), 0);
  std::function<void(int, int)> go = [&](int from, int size) {
    out.push_back(coords);
    for (int i = from; i < b.size(); ++i)
      if (size + b.orbits[i].size() <= bound) {
        ++coords[i];
        go(i, size + b.orbits[i].size());
        --coords[i];
      }
  };
  if (bound >= 0) go(0, 0);
  return out;
}

std::vector<FootBlock> foot_layout(const OrbitBasis& b, const GSet& x) {
  if (!same_group(b.group, x.group())) fail(ErrorCode::GroupMismatch, "foot over a different group");
  const int n = b.group->order();
  std::vector<FootBlock> out;
  int off = 0;
  while (off < x.size()) {
    // the orbit of `off` must be the block starting there
    std::vector<char> hit(x.size(), 0);
    for (int a = 0; a < n; ++a) hit[x.act(off, a)] = 1;
    const int size = static_cast<int>(std::count(hit.begin(), hit.end(), 1));
    int found = -1;
    for (int c = 0; c < b.size() && found < 0; ++c) {
      const GSet& o = b.orbits[c];
      if (o.size() != size || off + size > x.size()) continue;
      bool same = true;
      for (int t = 0; t < size && same; ++t)
        for (int a = 0; a < n && same; ++a) same = x.act(off + t, a) == off + o.act(t, a);
      if (same) found = c;
    }
    if (found < 0) fail(ErrorCode::UnfactorableSpan, "foot is not a sum of basis orbits at point " + std::to_string(off));
    out.push_back(FootBlock{found, off, size});
    off += size;
  }
  return out;
}

std::vector<long long> marks(const GSet& x) {
  const auto& lat = x.group()->lattice();
  std::vector<long long> out(lat.class_count(), 0);
  for (int j = 0; j < lat.class_count(); ++j)
    for (int p = 0; p < x.size(); ++p) {
      bool fixed = true;
      for (int h : lat.rep(j).elements)
        if (x.act(p, h) != p) {
          fixed = false;
          break;
        }
      out[j] += fixed;
    }
  return out;
}

MarksMatrix table_of_marks(const GroupPtr& g) {
  MarksMatrix t{orbit_basis(g), {}};
  const int n = t.basis.size();
  t.m = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    auto row = marks(t.basis.orbits[i]);
    for (int j = 0; j < n; ++j) t.m(i, j) = row[j];
  }
  return t;
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::ShapeMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

BurnsideProduct burnside_product(const GSet& x, const GSet& y) {
  if (!same_group(x.group(), y.group())) fail(ErrorCode::GroupMismatch, "burnside product over different groups");
  auto basis = orbit_basis(x.group());
  auto p = product(x, y);
  std::vector<int> coords(basis.size(), 0);
  for (const auto& t : orbit_types(p.object)) coords[t.stabilizer_class] = t.multiplicity;
  GSet sum = orbit_sum(basis, coords);
  auto iso = gset_iso(sum, p.object);
  if (!iso) fail(ErrorCode::NotEquivariant, "orbit decomposition of the product is not an isomorphism");
  return BurnsideProduct{std::move(coords), p.object, std::move(*iso)};
}

// ---- virtual homs ----

namespace {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::CapExceeded, "virtual coefficient overflow");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::CapExceeded, "virtual coefficient overflow");
  return r;
}

void add_term(std::map<SpanAtom, long long>& c, const SpanAtom& a, long long k) {
  if (k == 0) return;
  auto it = c.find(a);
  if (it == c.end()) {
    c.emplace(a, k);
    return;
  }
  it->second = checked_add(it->second, k);
  if (it->second == 0) c.erase(it);
}

void same_feet(const VirtualHom& a, const VirtualHom& b) {
  if (!(a.x == b.x) || !(a.y == b.y)) fail(ErrorCode::FeetMismatch, "virtual homs over different feet");
}

}  // namespace

VirtualHom zero_hom(const GSet& x, const GSet& y) {
  if (!same_group(x.group(), y.group())) fail(ErrorCode::GroupMismatch, "feet over different groups");
  return VirtualHom{x, y, {}};
}

VirtualHom to_virtual(const GSet& x, const GSet& y, const SpanClass& c) {
  VirtualHom v = zero_hom(x, y);
  for (const auto& [a, m] : c.terms) add_term(v.coeffs, a, m);
  return v;
}

VirtualHom to_virtual(const Span& s) { return to_virtual(s.left, s.right, span_class(s)); }

VirtualHom operator+(const VirtualHom& a, const VirtualHom& b) {
  same_feet(a, b);
  VirtualHom out = a;
  for (const auto& [t, k] : b.coeffs) add_term(out.coeffs, t, k);
  return out;
}

VirtualHom operator*(long long k, const VirtualHom& a) {
  VirtualHom out{a.x, a.y, {}};
  if (k == 0) return out;
  for (const auto& [t, c] : a.coeffs) out.coeffs.emplace(t, checked_mul(k, c));
  return out;
}

VirtualHom operator-(const VirtualHom& a, const VirtualHom& b) { return a + (-1) * b; }

VirtualHom virtual_compose(const VirtualHom& a, const VirtualHom& b) {
  if (!(a.y == b.x)) fail(ErrorCode::FeetMismatch, "right foot of the first hom differs from left foot of the second");
  VirtualHom out{a.x, b.y, {}};
  std::vector<Span> right;
  for (const auto& [t, k] : b.coeffs) right.push_back(realize(b.x, b.y, t));
  for (const auto& [s, ks] : a.coeffs) {
    Span left = realize(a.x, a.y, s);
    std::size_t idx = 0;
    for (const auto& [t, kt] : b.coeffs) {
      long long w = checked_mul(ks, kt);
      for (const auto& [atom, m] : span_class(compose_spans(left, right[idx])).terms)
        add_term(out.coeffs, atom, checked_mul(w, m));
      ++idx;
    }
  }
  return out;
}

// ---- semirings ----

Semiring Semiring::finite(std::vector<std::vector<int>> add, std::vector<std::vector<int>> mul, int zero, int one,
                          std::string name) {
  const int n = static_cast<int>(add.size());
  auto bad = [](const std::string& what) { fail(ErrorCode::NotASemiring, what); };
  if (n == 0) bad("empty carrier");
  if (static_cast<int>(mul.size()) != n) bad("tables have different sizes");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(add[i].size()) != n || static_cast<int>(mul[i].size()) != n) bad("ragged table");
    for (int j = 0; j < n; ++j)
      if (add[i][j] < 0 || add[i][j] >= n || mul[i][j] < 0 || mul[i][j] >= n) bad("table entry outside carrier");
  }
  if (zero < 0 || zero >= n || one < 0 || one >= n) bad("zero or one outside carrier");
  auto at = [](const auto& t, int a, int b) { return t[a][b]; };
  bool comm = true;
  for (int a = 0; a < n; ++a) {
    if (at(add, zero, a) != a || at(add, a, zero) != a) bad("zero is not an additive identity");
    if (at(mul, one, a) != a || at(mul, a, one) != a) bad("one is not a multiplicative identity");
    if (at(mul, zero, a) != zero || at(mul, a, zero) != zero) bad("zero does not annihilate");
    for (int b = 0; b < n; ++b) {
      if (at(add, a, b) != at(add, b, a)) comm = false;
      for (int c = 0; c < n; ++c) {
        if (at(add, at(add, a, b), c) != at(add, a, at(add, b, c))) bad("addition is not associative");
        if (at(mul, at(mul, a, b), c) != at(mul, a, at(mul, b, c))) bad("multiplication is not associative");
        if (at(mul, a, at(add, b, c)) != at(add, at(mul, a, b), at(mul, a, c))) bad("left distributivity fails");
        if (at(mul, at(add, a, b), c) != at(add, at(mul, a, c), at(mul, b, c))) bad("right distributivity fails");
      }
    }
  }
  Semiring r;
  r.kind_ = Kind::Finite;
  r.name_ = name.empty() ? "finite" : std::move(name);
  r.add_ = std::move(add);
  r.mul_ = std::move(mul);
  r.zero_ = zero;
  r.one_ = one;
  r.add_commutative_ = comm;
  return r;
}

Semiring Semiring::boolean() { return finite({{0, 1}, {1, 1}}, {{0, 0}, {0, 1}}, 0, 1, "boolean"); }

Semiring Semiring::natural() {
  Semiring r;
  r.kind_ = Kind::Natural;
  r.name_ = "natural";
  return r;
}

Semiring Semiring::integer() {
  Semiring r;
  r.kind_ = Kind::Integer;
  r.name_ = "integer";
  return r;
}

bool Semiring::contains(const BigInt& v) const {
  switch (kind_) {
    case Kind::Finite:
      return v >= 0 && v < static_cast<long long>(add_.size());
    case Kind::Natural:
      return v >= 0;
    case Kind::Integer:
      return true;
  }
  return false;
}

BigInt Semiring::zero() const { return kind_ == Kind::Finite ? BigInt(zero_) : BigInt(0); }
BigInt Semiring::one() const { return kind_ == Kind::Finite ? BigInt(one_) : BigInt(1); }

BigInt Semiring::add(const BigInt& a, const BigInt& b) const {
  if (kind_ == Kind::Finite) return add_[a.convert_to<int>()][b.convert_to<int>()];
  return a + b;
}

BigInt Semiring::mul(const BigInt& a, const BigInt& b) const {
  if (kind_ == Kind::Finite) return mul_[a.convert_to<int>()][b.convert_to<int>()];
  return a * b;
}

BigMatrix SemiringMatrixCat::identity(std::size_t n) const {
  BigMatrix m(n, n, semiring.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = semiring.one();
  return m;
}

BigMatrix SemiringMatrixCat::compose(const BigMatrix& a, const BigMatrix& b) const {
  if (a.cols() != b.rows())
    fail(ErrorCode::ShapeMismatch, std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " then " +
                                       std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  for (const BigMatrix* m : {&a, &b})
    for (std::size_t i = 0; i < m->rows(); ++i)
      for (std::size_t j = 0; j < m->cols(); ++j)
        if (!semiring.contains((*m)(i, j)))
          fail(ErrorCode::EntryOutOfCarrier, "entry " + (*m)(i, j).str() + " not in " + semiring.name());
  BigMatrix out(a.rows(), b.cols(), semiring.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      BigInt acc = semiring.zero();
      for (std::size_t k = 0; k < a.cols(); ++k) acc = semiring.add(acc, semiring.mul(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  return out;
}

}  // namespace gspan
