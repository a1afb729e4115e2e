#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gspan {

/// A permutation of {0, ..., d-1} given by its images.
using Permutation = std::vector<int>;

/// Builds a permutation of degree d from 1-based cycles, e.g. {{1, 2, 3}}.
Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr std::size_t kDefaultClosureCap = 10080;
inline constexpr std::size_t kDefaultHomProductCap = 1u << 20;

/// A subgroup, stored as its sorted element ids. The parent group is passed
/// explicitly to every operation that needs it.
struct Subgroup {
  std::vector<int> elements;

  int order() const { return static_cast<int>(elements.size()); }
  bool contains(int g) const;

  friend bool operator==(const Subgroup&, const Subgroup&) = default;
};

/// Canonical subgroup order: by order, then by element list.
bool subgroup_less(const Subgroup& a, const Subgroup& b);

/// All subgroups of a group together with their conjugacy classes.
///
/// `subgroups` is sorted canonically, so the first member of each class is its
/// representative and class 0 is the trivial subgroup. `conjugator[i]` is an
/// element g with g^-1 * rep * g equal to subgroups[i].
struct SubgroupLattice {
  std::vector<Subgroup> subgroups;
  std::vector<int> class_of;
  std::vector<int> class_reps;
  std::vector<int> conjugator;
  std::map<std::vector<int>, int> lookup;

  int class_count() const { return static_cast<int>(class_reps.size()); }
  const Subgroup& rep(int cls) const { return subgroups[class_reps[cls]]; }
  /// Index of a subgroup given by its sorted elements, or -1.
  int index_of(const std::vector<int>& sorted_elements) const;
  int class_of_subgroup(const Subgroup& h) const;
};

/// A finite group carried by its full multiplication table; element 0 is the
/// identity. Immutable after construction and safe to share between threads.
class FiniteGroup {
 public:
  /// Validates the table and relabels so that the identity becomes element 0,
  /// keeping the input order for the remaining elements.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& mul, std::string name = {});

  /// Closes the generators under composition. Points are 0-based and
  /// composition reads left to right: x^(ab) = (x^a)^b.
  static FiniteGroup from_permutations(int degree, const std::vector<Permutation>& generators,
                                       std::size_t cap = kDefaultClosureCap, std::string name = {});

  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  /// g^-1 x g
  int conjugate(int x, int g) const { return mul(mul(inv_[g], x), g); }
  int element_order(int x) const;

  const std::string& name() const { return name_; }
  /// Element images on {0..d-1} when built from permutations, else empty.
  const std::vector<Permutation>& permutations() const { return perms_; }
  std::vector<std::vector<int>> table() const;

  /// Lazily computed and cached; thread safe.
  const SubgroupLattice& lattice() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.n_ == b.n_ && a.mul_ == b.mul_;
  }

 private:
  FiniteGroup() = default;
  static FiniteGroup product_of(const FiniteGroup& a, const FiniteGroup& b);
  friend GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);
  struct Cache;

  int n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::string name_;
  std::vector<Permutation> perms_;
  std::shared_ptr<Cache> cache_;
};

GroupPtr share(FiniteGroup g);
GroupPtr trivial_group();
bool same_group(const GroupPtr& a, const GroupPtr& b);

/// Direct product A x B with (a, b) stored at a * |B| + b. Memoized per pair.
GroupPtr direct_product(const GroupPtr& a, const GroupPtr& b);

Subgroup closure(const FiniteGroup& g, const std::vector<int>& generators);
/// A small generating set, chosen greedily in element order.
std::vector<int> generators(const FiniteGroup& g);
std::vector<int> generators(const FiniteGroup& g, const Subgroup& h);

/// g^-1 H g
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int by);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);
/// Least conjugate of u by elements of `within`, in subgroup_less order.
Subgroup least_conjugate_in(const FiniteGroup& g, const Subgroup& u, const Subgroup& within);
/// True when some conjugate of `h` lies in `k`.
bool is_subconjugate(const FiniteGroup& g, const Subgroup& h, const Subgroup& k);
bool is_subset(const Subgroup& h, const Subgroup& k);

const SubgroupLattice& subgroup_classes(const FiniteGroup& g);

/// Conjugacy classes ordered by least element; each class sorted.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

struct GroupHom {
  GroupPtr source;
  GroupPtr target;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  bool is_trivial() const;
};

GroupHom make_hom(GroupPtr source, GroupPtr target, std::vector<int> map);
GroupHom identity_hom(const GroupPtr& g);

/// Every homomorphism source -> target, sorted by image table.
std::vector<GroupHom> enumerate_homomorphisms(const GroupPtr& source, const GroupPtr& target,
                                              std::size_t product_cap = kDefaultHomProductCap);

namespace detail {

/// Backtracking isomorphism search over generator images; meant for small
/// orders only. Returns the element map a -> b.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);

}  // namespace detail

}  // namespace gspan
