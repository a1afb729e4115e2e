#include "gspan/span.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "gspan/error.hpp"
#include "gspan/parallel.hpp"

namespace gspan {

Span make_span(GSet left, GSet right, GSet apex, std::vector<int> leg_left, std::vector<int> leg_right) {
  auto l = make_map(apex, left, std::move(leg_left));
  auto r = make_map(apex, right, std::move(leg_right));
  return Span{std::move(left), std::move(right), std::move(apex), std::move(l.map), std::move(r.map)};
}

Span identity_span(const GSet& x) {
  std::vector<int> id(x.size());
  std::iota(id.begin(), id.end(), 0);
  return Span{x, x, x, id, id};
}

Span empty_span(const GSet& x, const GSet& y) {
  if (!same_group(x.group(), y.group())) fail(ErrorCode::GroupMismatch, "span feet over different groups");
  return Span{x, y, GSet::empty(x.group()), {}, {}};
}

Span graph_span(const EquivariantMap& f) {
  std::vector<int> id(f.source.size());
  std::iota(id.begin(), id.end(), 0);
  return Span{f.source, f.target, f.source, id, f.map};
}

Span reverse_graph_span(const EquivariantMap& f) {
  std::vector<int> id(f.source.size());
  std::iota(id.begin(), id.end(), 0);
  return Span{f.target, f.source, f.source, f.map, id};
}

Span transpose(const Span& s) { return Span{s.right, s.left, s.apex, s.leg_right, s.leg_left}; }

Span span_sum(const Span& a, const Span& b) {
  if (!(a.left == b.left) || !(a.right == b.right)) fail(ErrorCode::FeetMismatch, "sum of spans over different feet");
  auto c = coproduct(a.apex, b.apex);
  std::vector<int> l(a.leg_left), r(a.leg_right);
  l.insert(l.end(), b.leg_left.begin(), b.leg_left.end());
  r.insert(r.end(), b.leg_right.begin(), b.leg_right.end());
  return Span{a.left, a.right, c.object, std::move(l), std::move(r)};
}

Span compose_spans(const Span& s, const Span& t) {
  if (!(s.right == t.left)) fail(ErrorCode::FeetMismatch, "right foot of the first span differs from left foot of the second");
  if (s.apex.group()->order() == 1) {
    // plain finite sets: bucket t's apex by its left leg
    thread_local std::vector<int> start, order;
    const int ny = s.right.size(), nt = t.apex.size();
    start.assign(ny + 1, 0);
    order.resize(nt);
    for (int b = 0; b < nt; ++b) ++start[t.leg_left[b] + 1];
    for (int c = 0; c < ny; ++c) start[c + 1] += start[c];
    for (int b = 0; b < nt; ++b) order[start[t.leg_left[b]]++] = b;
    for (int c = ny; c > 0; --c) start[c] = start[c - 1];
    start[0] = 0;
    std::size_t m = 0;
    for (int a = 0; a < s.apex.size(); ++a) m += start[s.leg_right[a] + 1] - start[s.leg_right[a]];
    std::vector<int> l, r;
    l.reserve(m);
    r.reserve(m);
    for (int a = 0; a < s.apex.size(); ++a) {
      int c = s.leg_right[a];
      for (int k = start[c]; k < start[c + 1]; ++k) {
        l.push_back(s.leg_left[a]);
        r.push_back(t.leg_right[order[k]]);
      }
    }
    return Span{s.left, t.right, GSet::trivial_action(s.apex.group(), static_cast<int>(m)), std::move(l), std::move(r)};
  }
  auto pb = pullback_carrier(s.apex, s.leg_right, t.apex, t.leg_left, s.right.size());
  const int m = pb.object.size();
  std::vector<int> l(m), r(m);
  for (int i = 0; i < m; ++i) {
    l[i] = s.leg_left[pb.pairs[i].first];
    r[i] = t.leg_right[pb.pairs[i].second];
  }
  return Span{s.left, t.right, std::move(pb.object), std::move(l), std::move(r)};
}

bool operator<(const SpanAtom& a, const SpanAtom& b) {
  if (a.base != b.base) return a.base < b.base;
  return subgroup_less(a.sub, b.sub);
}

bool operator<(const SpanClass& a, const SpanClass& b) {
  if (a.left_size != b.left_size) return a.left_size < b.left_size;
  if (a.right_size != b.right_size) return a.right_size < b.right_size;
  return std::lexicographical_compare(a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
                                      [](const auto& p, const auto& q) {
                                        if (p.first == q.first) return p.second < q.second;
                                        return p.first < q.first;
                                      });
}

int SpanClass::apex_size(int group_order) const {
  int n = 0;
  for (const auto& [a, m] : terms) n += m * (group_order / a.sub.order());
  return n;
}

namespace {

// Orbits of X x Y: base[p] is the least element of p's orbit and
// trans[p] an element g with p.g = base[p].
struct ProductOrbits {
  std::vector<int> base;
  std::vector<int> trans;
};

ProductOrbits product_orbits(const GSet& x, const GSet& y) {
  const FiniteGroup& g = *x.group();
  const int ny = y.size(), np = x.size() * ny;
  ProductOrbits po{std::vector<int>(np, -1), std::vector<int>(np, 0)};
  for (int p = 0; p < np; ++p) {
    if (po.base[p] >= 0) continue;
    for (int a = 0; a < g.order(); ++a) {
      int q = x.act(p / ny, a) * ny + y.act(p % ny, a);
      if (po.base[q] < 0) {
        po.base[q] = p;
        po.trans[q] = g.inv(a);
      }
    }
  }
  return po;
}

Subgroup product_stabilizer(const GSet& x, const GSet& y, int p) {
  const int ny = y.size();
  Subgroup s;
  for (int a = 0; a < x.group()->order(); ++a)
    if (x.act(p / ny, a) == p / ny && y.act(p % ny, a) == p % ny) s.elements.push_back(a);
  return s;
}

}  // namespace

SpanClass span_class(const Span& s) {
  const GSet& x = s.left;
  const GSet& y = s.right;
  const FiniteGroup& g = *x.group();
  SpanClass c{x.size(), y.size(), {}};
  if (s.apex.size() == 0) return c;
  const int ny = y.size();
  std::map<SpanAtom, int> count;
  if (g.order() == 1) {
    std::vector<int> cells(static_cast<std::size_t>(x.size()) * ny, 0);
    for (int t = 0; t < s.apex.size(); ++t) ++cells[s.leg_left[t] * ny + s.leg_right[t]];
    for (int p = 0; p < static_cast<int>(cells.size()); ++p)
      if (cells[p]) c.terms.emplace_back(SpanAtom{p, Subgroup{{0}}}, cells[p]);
    return c;
  } else {
    auto po = product_orbits(x, y);
    std::vector<char> seen(s.apex.size(), 0);
    std::map<int, Subgroup> stab_cache;
    for (int a = 0; a < s.apex.size(); ++a) {
      if (seen[a]) continue;
      for (int h = 0; h < g.order(); ++h) seen[s.apex.act(a, h)] = 1;
      int p = s.leg_left[a] * ny + s.leg_right[a];
      int b = po.base[p];
      int a2 = s.apex.act(a, po.trans[p]);
      auto it = stab_cache.find(b);
      if (it == stab_cache.end()) it = stab_cache.emplace(b, product_stabilizer(x, y, b)).first;
      ++count[SpanAtom{b, least_conjugate_in(g, s.apex.stabilizer(a2), it->second)}];
    }
  }
  for (auto& [atom, m] : count) c.terms.emplace_back(atom, m);
  return c;
}

SpanClass class_sum(const SpanClass& a, const SpanClass& b) {
  if (a.left_size != b.left_size || a.right_size != b.right_size)
    fail(ErrorCode::FeetMismatch, "sum of classes over different feet");
  std::map<SpanAtom, int> count;
  for (const auto& [t, m] : a.terms) count[t] += m;
  for (const auto& [t, m] : b.terms) count[t] += m;
  SpanClass c{a.left_size, a.right_size, {}};
  for (auto& [t, m] : count) c.terms.emplace_back(t, m);
  return c;
}

std::vector<SpanAtom> atoms_over(const GSet& x, const GSet& y) {
  if (!same_group(x.group(), y.group())) fail(ErrorCode::GroupMismatch, "span feet over different groups");
  const FiniteGroup& g = *x.group();
  auto po = product_orbits(x, y);
  std::vector<SpanAtom> out;
  for (int p = 0; p < static_cast<int>(po.base.size()); ++p) {
    if (po.base[p] != p) continue;
    Subgroup stab = product_stabilizer(x, y, p);
    std::vector<Subgroup> seen;
    for (const auto& u : g.lattice().subgroups) {
      if (!is_subset(u, stab)) continue;
      Subgroup c = least_conjugate_in(g, u, stab);
      if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(std::move(c));
    }
    for (auto& u : seen) out.push_back(SpanAtom{p, std::move(u)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Span realize(const GSet& x, const GSet& y, const SpanAtom& atom) {
  const int ny = y.size();
  GSet apex = GSet::orbit(x.group(), atom.sub);
  std::vector<int> l(apex.size()), r(apex.size());
  // apex point 0.g lies over base.g
  for (int a = 0; a < x.group()->order(); ++a) {
    int t = apex.act(0, a);
    l[t] = x.act(atom.base / ny, a);
    r[t] = y.act(atom.base % ny, a);
  }
  return make_span(x, y, std::move(apex), std::move(l), std::move(r));
}

Span realize(const GSet& x, const GSet& y, const SpanClass& c) {
  Span out = empty_span(x, y);
  for (const auto& [atom, m] : c.terms) {
    Span one = realize(x, y, atom);
    for (int i = 0; i < m; ++i) out = span_sum(out, one);
  }
  return out;
}

int HomMonoid::index_of(const SpanClass& c) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), c);
  if (it == classes.end() || !(*it == c)) return -1;
  return static_cast<int>(it - classes.begin());
}

HomMonoid hom_monoid(const GSet& x, const GSet& y, int bound) {
  HomMonoid h{x, y, bound, atoms_over(x, y), {}};
  const int n = x.group()->order();
  std::vector<int> mult(h.atoms.size(), 0);
  std::function<void(std::size_t, int)> go = [&](std::size_t i, int used) {
    if (i == h.atoms.size()) {
      SpanClass c{x.size(), y.size(), {}};
      for (std::size_t k = 0; k < mult.size(); ++k)
        if (mult[k]) c.terms.emplace_back(h.atoms[k], mult[k]);
      h.classes.push_back(std::move(c));
      return;
    }
    int size = n / h.atoms[i].sub.order();
    for (int m = 0; used + m * size <= bound; ++m) {
      mult[i] = m;
      go(i + 1, used + m * size);
    }
    mult[i] = 0;
  };
  if (bound >= 0) go(0, 0);
  std::sort(h.classes.begin(), h.classes.end());
  return h;
}

NatMatrix span_to_matrix(const Span& s) {
  if (s.apex.group()->order() != 1) fail(ErrorCode::NontrivialGroup, "matrix bridge needs the trivial group");
  NatMatrix m(s.left.size(), s.right.size());
  for (int t = 0; t < s.apex.size(); ++t) m(s.leg_left[t], s.leg_right[t]) += 1;
  return m;
}

Span matrix_to_span(const NatMatrix& m) {
  auto e = trivial_group();
  std::vector<int> l, r;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::uint64_t k = 0; k < m(i, j); ++k) {
        l.push_back(static_cast<int>(i));
        r.push_back(static_cast<int>(j));
      }
  int n = static_cast<int>(l.size());
  return Span{GSet::trivial_action(e, static_cast<int>(m.rows())), GSet::trivial_action(e, static_cast<int>(m.cols())),
              GSet::trivial_action(e, n), std::move(l), std::move(r)};
}

std::string to_string(LegKind k) {
  switch (k) {
    case LegKind::Bijective:
      return "bijective";
    case LegKind::Injective:
      return "injective";
    case LegKind::Arbitrary:
      return "arbitrary";
  }
  return "?";
}

LegKind leg_kind(const std::vector<int>& leg, int target_size) {
  std::vector<int> hits(target_size, 0);
  for (int v : leg)
    if (++hits[v] > 1) return LegKind::Arbitrary;
  return static_cast<int>(leg.size()) == target_size ? LegKind::Bijective : LegKind::Injective;
}

bool refines(LegKind a, LegKind b) { return static_cast<int>(a) <= static_cast<int>(b); }

SpanType structured_span_type(const Span& s) {
  return SpanType{leg_kind(s.leg_left, s.left.size()), leg_kind(s.leg_right, s.right.size())};
}

ClosureReport check_closure(SpanType type, const std::vector<Span>& corpus, unsigned jobs) {
  ClosureReport rep{type, 0, 0, {}};
  std::vector<const Span*> members;
  for (const auto& s : corpus) {
    auto t = structured_span_type(s);
    if (refines(t.left, type.left) && refines(t.right, type.right)) members.push_back(&s);
  }
  rep.spans = static_cast<long long>(members.size());
  // group members by left foot so each first span only meets composable partners
  std::vector<GSet> feet;
  std::vector<std::vector<const Span*>> by_left;
  auto foot_id = [&](const GSet& f) {
    for (std::size_t i = 0; i < feet.size(); ++i)
      if (feet[i] == f) return static_cast<int>(i);
    feet.push_back(f);
    by_left.emplace_back();
    return static_cast<int>(feet.size() - 1);
  };
  for (const Span* s : members) by_left[foot_id(s->left)].push_back(s);
  std::vector<int> partner(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) partner[i] = foot_id(members[i]->right);

  const std::size_t keep = 8;
  std::vector<long long> pairs(members.size(), 0);
  std::vector<std::vector<ClosureViolation>> found(members.size());
  parallel_for(members.size(), jobs, [&](std::size_t i) {
    const Span& s = *members[i];
    for (const Span* t : by_left[partner[i]]) {
      ++pairs[i];
      Span c = compose_spans(s, *t);
      auto ct = structured_span_type(c);
      if (!(refines(ct.left, type.left) && refines(ct.right, type.right)) && found[i].size() < keep)
        found[i].push_back(ClosureViolation{s, *t, ct});
    }
  });
  for (std::size_t i = 0; i < members.size(); ++i) {
    rep.pairs += pairs[i];
    for (auto& v : found[i])
      if (rep.violations.size() < keep) rep.violations.push_back(std::move(v));
  }
  return rep;
}

}  // namespace gspan
