#include "gspan/mackey.hpp"

#include <algorithm>

#include "gspan/error.hpp"
#include "gspan/parallel.hpp"

namespace gspan {

namespace {

// The G-map from the orbit o = G/R (base point 0) to y sending 0 to q.
std::vector<int> orbit_map(const GSet& o, const GSet& y, int q) {
  std::vector<int> m(o.size(), -1);
  for (int a = 0; a < o.group()->order(); ++a) m[o.act(0, a)] = y.act(q, a);
  return m;
}

bool fixed_by(const GSet& x, int p, const Subgroup& h) {
  for (int a : h.elements)
    if (x.act(p, a) != p) return false;
  return true;
}

int position(const std::vector<Subgroup>& v, const Subgroup& s) {
  auto it = std::find(v.begin(), v.end(), s);
  if (it == v.end()) fail(ErrorCode::InvalidMackeyData, "subgroup missing from value basis");
  return static_cast<int>(it - v.begin());
}

MackeyData burnside_mackey(const GroupPtr& gp) {
  const FiniteGroup& g = *gp;
  MackeyData m{"burnside(" + g.name() + ")", orbit_basis(gp), {}, {}, {}};
  const int n = m.basis.size();
  std::vector<std::vector<Subgroup>> vb(n);
  for (int i = 0; i < n; ++i) {
    vb[i] = burnside_value_basis(g, m.basis.reps[i]);
    m.rank.push_back(static_cast<int>(vb[i].size()));
  }
  for (const auto& f : orbit_morphisms(m.basis)) {
    const GSet& ok = m.basis.orbits[f.from];
    const GSet& oi = m.basis.orbits[f.to];
    const Subgroup& rk = m.basis.reps[f.from];
    const Subgroup& ri = m.basis.reps[f.to];
    auto fmap = orbit_map(ok, oi, f.point);
    // restriction: pull E -> G/R_i back along f, sort orbits over G/R_k
    IntMatrix res(m.rank[f.to], m.rank[f.from]);
    for (int u = 0; u < m.rank[f.to]; ++u) {
      GSet e = GSet::orbit(gp, vb[f.to][u]);
      auto pb = pullback_carrier(e, orbit_map(e, oi, 0), ok, fmap, oi.size());
      auto idx = orbit_index(pb.object);
      std::vector<char> done(pb.object.size(), 0);
      for (int t = 0; t < pb.object.size(); ++t) {
        if (pb.pairs[t].second != 0 || done[idx[t]]) continue;
        done[idx[t]] = 1;
        Subgroup st = least_conjugate_in(g, pb.object.stabilizer(t), rk);
        ++res(u, position(vb[f.from], st));
      }
    }
    // transfer: E -> G/R_k -> G/R_i, stabilizer of a point over the base
    IntMatrix tr(m.rank[f.from], m.rank[f.to]);
    for (int w = 0; w < m.rank[f.from]; ++w) {
      GSet e = GSet::orbit(gp, vb[f.from][w]);
      auto em = orbit_map(e, oi, f.point);
      int t = static_cast<int>(std::find(em.begin(), em.end(), 0) - em.begin());
      Subgroup st = least_conjugate_in(g, e.stabilizer(t), ri);
      tr(w, position(vb[f.to], st)) = 1;
    }
    m.res.emplace(f, std::move(res));
    m.tr.emplace(f, std::move(tr));
  }
  return m;
}

MackeyData permutation_mackey(const GroupPtr& gp, const GSet& x) {
  if (!same_group(gp, x.group())) fail(ErrorCode::GroupMismatch, "permutation Mackey functor over a different group");
  const FiniteGroup& g = *gp;
  MackeyData m{"permutation(" + g.name() + ")", orbit_basis(gp), {}, {}, {}};
  const int n = m.basis.size();
  // orbit_of[i][x]: which R_i-orbit of X contains x, numbered by least element
  std::vector<std::vector<int>> orbit_of(n, std::vector<int>(x.size(), -1));
  for (int i = 0; i < n; ++i) {
    int count = 0;
    for (int p = 0; p < x.size(); ++p) {
      if (orbit_of[i][p] >= 0) continue;
      for (int a : m.basis.reps[i].elements) orbit_of[i][x.act(p, a)] = count;
      ++count;
    }
    m.rank.push_back(count);
  }
  for (const auto& f : orbit_morphisms(m.basis)) {
    const GSet& oi = m.basis.orbits[f.to];
    int gel = 0;
    while (oi.act(0, gel) != f.point) ++gel;
    const int ginv = g.inv(gel);
    // restriction: indicator of O goes to the indicator of O.g
    IntMatrix res(m.rank[f.to], m.rank[f.from]);
    std::vector<char> seen(static_cast<std::size_t>(m.rank[f.to]) * m.rank[f.from], 0);
    for (int p = 0; p < x.size(); ++p) {
      int o = orbit_of[f.to][p], q = orbit_of[f.from][x.act(p, gel)];
      auto& s = seen[static_cast<std::size_t>(o) * m.rank[f.from] + q];
      if (!s) {
        s = 1;
        res(o, q) = 1;
      }
    }
    // transfer: translate by g^-1, then sum over right cosets of g R_k g^-1 in R_i
    Subgroup s = conjugate(g, m.basis.reps[f.from], ginv);
    const Subgroup& ri = m.basis.reps[f.to];
    std::vector<int> reps;
    std::vector<char> covered(g.order(), 0);
    for (int r : ri.elements) {
      if (covered[r]) continue;
      reps.push_back(r);
      for (int a : s.elements) covered[g.mul(a, r)] = 1;
    }
    IntMatrix tr(m.rank[f.from], m.rank[f.to]);
    for (int q = 0; q < m.rank[f.from]; ++q) {
      std::vector<long long> v(x.size(), 0);
      for (int p = 0; p < x.size(); ++p)
        if (orbit_of[f.from][p] == q)
          for (int r : reps) ++v[x.act(x.act(p, ginv), r)];
      std::vector<char> done(m.rank[f.to], 0);
      for (int p = 0; p < x.size(); ++p) {
        int o = orbit_of[f.to][p];
        if (done[o]) continue;
        done[o] = 1;
        tr(q, o) = v[p];
      }
    }
    m.res.emplace(f, std::move(res));
    m.tr.emplace(f, std::move(tr));
  }
  return m;
}

}  // namespace

std::vector<Subgroup> burnside_value_basis(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Subgroup> out;
  for (const auto& u : g.lattice().subgroups) {
    if (!is_subset(u, h)) continue;
    Subgroup c = least_conjugate_in(g, u, h);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

std::vector<OrbitMorphism> orbit_morphisms(const OrbitBasis& b) {
  std::vector<OrbitMorphism> out;
  for (int k = 0; k < b.size(); ++k)
    for (int i = 0; i < b.size(); ++i)
      for (int p = 0; p < b.orbits[i].size(); ++p)
        if (fixed_by(b.orbits[i], p, b.reps[k])) out.push_back(OrbitMorphism{k, i, p});
  return out;
}

void validate(const MackeyData& m) {
  auto bad = [](const std::string& what) { fail(ErrorCode::InvalidMackeyData, what); };
  const int n = m.basis.size();
  if (static_cast<int>(m.rank.size()) != n) bad("one rank per basis orbit expected");
  for (int r : m.rank)
    if (r < 0) bad("negative rank");
  auto fs = orbit_morphisms(m.basis);
  if (m.res.size() != fs.size() || m.tr.size() != fs.size()) bad("generator tables do not match the orbit maps");
  for (const auto& f : fs) {
    auto label = "(" + std::to_string(f.from) + "->" + std::to_string(f.to) + " at " + std::to_string(f.point) + ")";
    auto r = m.res.find(f);
    auto t = m.tr.find(f);
    if (r == m.res.end() || t == m.tr.end()) bad("missing generator " + label);
    const std::size_t rk = m.rank[f.from], ri = m.rank[f.to];
    if (r->second.rows() != ri || r->second.cols() != rk) bad("restriction has wrong shape " + label);
    if (t->second.rows() != rk || t->second.cols() != ri) bad("transfer has wrong shape " + label);
    if (f.from == f.to && f.point == 0) {
      if (!(r->second == IntMatrix::identity(ri))) bad("restriction along an identity is not the identity");
      if (!(t->second == IntMatrix::identity(ri))) bad("transfer along an identity is not the identity");
    }
  }
}

MackeyData standard_mackey(MackeyKind kind, const GroupPtr& g, const GSet& x) {
  MackeyData m = kind == MackeyKind::Burnside ? burnside_mackey(g) : permutation_mackey(g, x);
  validate(m);
  return m;
}

IntMatrix evaluate_mackey(const MackeyData& m, const Span& s) {
  const FiniteGroup& g = *m.basis.group;
  auto lx = foot_layout(m.basis, s.left), ly = foot_layout(m.basis, s.right);
  auto offsets = [&](const std::vector<FootBlock>& blocks, std::vector<int>& block_of, std::vector<int>& off) {
    int total = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      off.push_back(total);
      total += m.rank[blocks[b].cls];
      for (int p = 0; p < blocks[b].size; ++p) block_of[blocks[b].offset + p] = static_cast<int>(b);
    }
    return total;
  };
  std::vector<int> bx(s.left.size()), by(s.right.size()), ox, oy;
  const int rows = offsets(lx, bx, ox), cols = offsets(ly, by, oy);
  IntMatrix out(rows, cols);
  const auto& lat = g.lattice();
  auto idx = orbit_index(s.apex);
  std::vector<char> done(s.apex.size(), 0);
  for (int a = 0; a < s.apex.size(); ++a) {
    if (done[idx[a]]) continue;
    done[idx[a]] = 1;
    int li = lat.index_of(s.apex.stabilizer(a).elements);
    int k = lat.class_of[li];
    // move to the point whose stabilizer is exactly the representative
    int a2 = s.apex.act(a, g.inv(lat.conjugator[li]));
    int l = s.leg_left[a2], r = s.leg_right[a2];
    const FootBlock& fl = lx[bx[l]];
    const FootBlock& fr = ly[by[r]];
    auto res = m.res.find(OrbitMorphism{k, fl.cls, l - fl.offset});
    auto tr = m.tr.find(OrbitMorphism{k, fr.cls, r - fr.offset});
    if (res == m.res.end() || tr == m.tr.end()) fail(ErrorCode::UnfactorableSpan, "no generator for an apex orbit");
    IntMatrix block = res->second * tr->second;
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j) out(ox[bx[l]] + i, oy[by[r]] + j) += block(i, j);
  }
  return out;
}

IntMatrix evaluate_mackey(const MackeyData& m, const VirtualHom& v) {
  IntMatrix out = evaluate_mackey(m, empty_span(v.x, v.y));
  for (const auto& [atom, k] : v.coeffs) out += k * evaluate_mackey(m, realize(v.x, v.y, atom));
  return out;
}

MackeyReport check_mackey(const MackeyData& m, int bound, unsigned jobs) {
  validate(m);
  MackeyReport rep;
  const int n = m.basis.size(), order = m.basis.group->order();
  for (int a = 0; a < n; ++a) {
    const GSet& x = m.basis.orbits[a];
    IntMatrix id = evaluate_mackey(m, identity_span(x));
    if (!(id == IntMatrix::identity(m.rank[a])))
      rep.violations.push_back(MackeyViolation{"identity", a, a, a, {}, {}, IntMatrix::identity(m.rank[a]), id});
  }
  auto atoms = [&](int a, int b) {
    std::vector<SpanAtom> out;
    for (auto& t : atoms_over(m.basis.orbits[a], m.basis.orbits[b]))
      if (bound < 0 || order / t.sub.order() <= bound) out.push_back(t);
    return out;
  };
  struct Cell {
    long long pairs = 0;
    std::vector<MackeyViolation> bad;
  };
  auto cells = parallel_map<Cell>(static_cast<std::size_t>(n) * n * n, jobs, [&](std::size_t id) {
    int a = static_cast<int>(id / (n * n)), b = static_cast<int>(id / n % n), c = static_cast<int>(id % n);
    const GSet &x = m.basis.orbits[a], &y = m.basis.orbits[b], &z = m.basis.orbits[c];
    Cell cell;
    auto first = atoms(a, b), second = atoms(b, c);
    std::vector<Span> tspans;
    std::vector<IntMatrix> tvals;
    for (const auto& t : second) {
      tspans.push_back(realize(y, z, t));
      tvals.push_back(evaluate_mackey(m, tspans.back()));
    }
    for (const auto& s : first) {
      Span ss = realize(x, y, s);
      IntMatrix sv = evaluate_mackey(m, ss);
      for (std::size_t j = 0; j < second.size(); ++j) {
        ++cell.pairs;
        IntMatrix expected = sv * tvals[j];
        IntMatrix actual = evaluate_mackey(m, compose_spans(ss, tspans[j]));
        if (!(expected == actual))
          cell.bad.push_back(MackeyViolation{"composition", a, b, c, s, second[j], expected, actual});
      }
    }
    return cell;
  });
  for (auto& cell : cells) {
    rep.pairs += cell.pairs;
    for (auto& v : cell.bad) rep.violations.push_back(std::move(v));
  }
  return rep;
}

}  // namespace gspan
