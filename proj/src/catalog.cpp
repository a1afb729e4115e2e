#include "gspan/catalog.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "gspan/error.hpp"

namespace gspan {

GroupPtr cyclic(int n) {
  if (n < 1) fail(ErrorCode::MalformedInput, "cyclic order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return share(FiniteGroup::from_table(t, n == 1 ? "trivial" : "C" + std::to_string(n)));
}

GroupPtr dihedral(int n) {
  if (n < 3) fail(ErrorCode::MalformedInput, "dihedral needs n >= 3");
  Permutation rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return share(FiniteGroup::from_permutations(n, {rot, ref}, kDefaultClosureCap, "D" + std::to_string(n)));
}

GroupPtr symmetric(int n) {
  if (n < 1) fail(ErrorCode::MalformedInput, "symmetric degree must be positive");
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(from_cycles(n, {{1, 2}}));
    std::vector<int> full(n);
    for (int i = 0; i < n; ++i) full[i] = i + 1;
    if (n >= 3) gens.push_back(from_cycles(n, {full}));
  }
  return share(FiniteGroup::from_permutations(n, gens, kDefaultClosureCap, "S" + std::to_string(n)));
}

GroupPtr alternating(int n) {
  if (n < 1) fail(ErrorCode::MalformedInput, "alternating degree must be positive");
  std::vector<Permutation> gens;
  for (int k = 3; k <= n; ++k) gens.push_back(from_cycles(n, {{1, 2, k}}));
  return share(FiniteGroup::from_permutations(n, gens, kDefaultClosureCap, "A" + std::to_string(n)));
}

GroupPtr dicyclic(int n) {
  if (n < 2) fail(ErrorCode::MalformedInput, "dicyclic needs n >= 2");
  // a^i x^j stored at i + 2n*j, with x a x^-1 = a^-1 and x^2 = a^n
  const int m = 2 * n, order = 4 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int p = 0; p < order; ++p)
    for (int q = 0; q < order; ++q) {
      int i = p % m, j = p / m, k = q % m, l = q / m;
      int e = i + (j ? -k : k) + (j && l ? n : 0);
      e = ((e % m) + m) % m;
      t[p][q] = e + m * ((j + l) % 2);
    }
  return share(FiniteGroup::from_table(t, n == 2 ? "Q8" : "Dic" + std::to_string(n)));
}

namespace {

struct Entry {
  std::string name;
  std::function<GroupPtr()> make;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = [] {
    std::vector<Entry> v;
    v.push_back({"trivial", [] { return trivial_group(); }});
    for (int n = 2; n <= 12; ++n) v.push_back({"C" + std::to_string(n), [n] { return cyclic(n); }});
    v.push_back({"C2xC2", [] { return direct_product(catalog_group("C2"), catalog_group("C2")); }});
    v.push_back({"C2xC2xC2", [] { return direct_product(catalog_group("C2xC2"), catalog_group("C2")); }});
    v.push_back({"C4xC2", [] { return direct_product(catalog_group("C4"), catalog_group("C2")); }});
    v.push_back({"C3xC3", [] { return direct_product(catalog_group("C3"), catalog_group("C3")); }});
    v.push_back({"C6xC2", [] { return direct_product(catalog_group("C6"), catalog_group("C2")); }});
    v.push_back({"S3", [] { return symmetric(3); }});
    v.push_back({"D4", [] { return dihedral(4); }});
    v.push_back({"Q8", [] { return dicyclic(2); }});
    v.push_back({"D5", [] { return dihedral(5); }});
    v.push_back({"D6", [] { return dihedral(6); }});
    v.push_back({"A4", [] { return alternating(4); }});
    v.push_back({"Dic3", [] { return dicyclic(3); }});
    v.push_back({"S4", [] { return symmetric(4); }});
    return v;
  }();
  return list;
}

}  // namespace

GroupPtr catalog_group(const std::string& name) {
  static std::recursive_mutex mu;
  static std::map<std::string, GroupPtr> built;
  std::lock_guard lock(mu);
  std::string key = name == "C1" || name == "e" ? "trivial" : name;
  if (auto it = built.find(key); it != built.end()) return it->second;
  for (const auto& e : entries())
    if (e.name == key) {
      GroupPtr g = e.make();
      if (g->name() != key) {
        // keep the catalog name on products
        FiniteGroup copy = FiniteGroup::from_table(g->table(), key);
        g = share(std::move(copy));
      }
      built.emplace(key, g);
      return g;
    }
  fail(ErrorCode::MalformedInput, "unknown group name '" + name + "'");
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.push_back(e.name);
  return out;
}

std::vector<GroupPtr> catalog_up_to(int n) {
  std::vector<GroupPtr> out;
  for (const auto& e : entries()) {
    GroupPtr g = catalog_group(e.name);
    if (g->order() <= n) out.push_back(g);
  }
  return out;
}

}  // namespace gspan
