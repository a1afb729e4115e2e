#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "gspan/group.hpp"

namespace gspan {

/// A finite right G-set: act(x, g) = x.g, with x.(gh) = (x.g).h.
class GSet {
 public:
  GSet();
  /// Validates act[x][g]; throws NotAnAction.
  static GSet build(GroupPtr g, const std::vector<std::vector<int>>& act);
  static GSet from_flat(GroupPtr g, int size, std::vector<int> flat);
  /// No validation; for tables built by the library itself.
  static GSet from_flat_unchecked(GroupPtr g, int size, std::vector<int> flat);
  /// Right cosets Hg, labelled in order of first appearance so the base
  /// coset H is element 0 and 0.g is the coset Hg.
  static GSet orbit(GroupPtr g, const Subgroup& h);
  static GSet regular(GroupPtr g);
  static GSet point(GroupPtr g);
  static GSet empty(GroupPtr g);
  /// n points with trivial action; for the trivial group this is the set {0..n-1}.
  static GSet trivial_action(GroupPtr g, int n);

  const GroupPtr& group() const { return group_; }
  int size() const { return size_; }
  int act(int x, int g) const { return (*act_)[static_cast<std::size_t>(x) * group_->order() + g]; }
  const std::vector<int>& flat() const { return *act_; }
  std::vector<std::vector<int>> rows() const;

  Subgroup stabilizer(int x) const;

  friend bool operator==(const GSet& a, const GSet& b);

 private:
  GroupPtr group_;
  int size_ = 0;
  std::shared_ptr<const std::vector<int>> act_;
};

/// An equivariant map between G-sets.
struct EquivariantMap {
  GSet source;
  GSet target;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  /// this first, then g
  EquivariantMap then(const EquivariantMap& g) const;
  friend bool operator==(const EquivariantMap&, const EquivariantMap&) = default;
};

/// Validates shape and equivariance; throws GroupMismatch or NotEquivariant.
EquivariantMap make_map(GSet source, GSet target, std::vector<int> map);
EquivariantMap identity_map(const GSet& x);
bool is_epi(const EquivariantMap& f);
bool is_mono(const EquivariantMap& f);

struct Orbit {
  std::vector<int> elements;  // sorted; elements.front() is the base point
  Subgroup stabilizer;        // of the base point
  int stabilizer_class = 0;
};

struct OrbitType {
  int stabilizer_class = 0;
  int multiplicity = 0;
  friend auto operator<=>(const OrbitType&, const OrbitType&) = default;
};

/// Orbits ordered by least element.
std::vector<Orbit> orbit_decomposition(const GSet& x);
/// Sorted by stabilizer class; an isomorphism invariant.
std::vector<OrbitType> orbit_types(const GSet& x);
/// orbit_of[x] = index into orbit_decomposition
std::vector<int> orbit_index(const GSet& x);

std::optional<EquivariantMap> gset_iso(const GSet& x, const GSet& y);

struct Pullback {
  GSet object;
  EquivariantMap proj1;
  EquivariantMap proj2;
  std::vector<std::pair<int, int>> pairs;  // sorted lexicographically
};

Pullback pullback(const EquivariantMap& f, const EquivariantMap& g);

/// Carrier of the pullback of f: A -> C and g: B -> C given as raw tables.
struct PullbackCarrier {
  GSet object;
  std::vector<std::pair<int, int>> pairs;
};
PullbackCarrier pullback_carrier(const GSet& a, const std::vector<int>& f, const GSet& b, const std::vector<int>& g,
                                 int target_size);

struct Coproduct {
  GSet object;
  EquivariantMap inl;
  EquivariantMap inr;
};
/// X first, then Y.
Coproduct coproduct(const GSet& x, const GSet& y);

struct Product {
  GSet object;
  EquivariantMap proj1;
  EquivariantMap proj2;
};
/// (x, y) stored at x * |Y| + y.
Product product(const GSet& x, const GSet& y);

/// Unique equivariant map into the point.
EquivariantMap to_point(const GSet& x);
/// Codiagonal / copairing X + Y -> Z.
EquivariantMap copair(const Coproduct& c, const EquivariantMap& f, const EquivariantMap& g);

/// A set with a left action of L and a right action of R that commute.
/// Stored as left(g, x) = g.x and right(x, h) = x.h.
class Biset {
 public:
  Biset();
  /// left_act[x][g] = g.x, right_act[x][h] = x.h
  static Biset build(GroupPtr left, GroupPtr right, const std::vector<std::vector<int>>& left_act,
                     const std::vector<std::vector<int>>& right_act, bool require_left_free);
  static Biset from_flat(GroupPtr left, GroupPtr right, int size, std::vector<int> left_flat,
                         std::vector<int> right_flat, bool require_left_free);

  const GroupPtr& left_group() const { return left_; }
  const GroupPtr& right_group() const { return right_; }
  int size() const { return size_; }
  bool left_free() const { return left_free_; }
  int left(int g, int x) const { return (*lact_)[static_cast<std::size_t>(g) * size_ + x]; }
  int right(int x, int h) const { return (*ract_)[static_cast<std::size_t>(x) * right_->order() + h]; }

  std::vector<std::vector<int>> left_rows() const;
  std::vector<std::vector<int>> right_rows() const;

  /// Right G-set over L x R with x.(g, h) = g^-1 . x . h.
  GSet as_product_gset() const;
  /// Restriction to the right action.
  GSet right_gset() const;

  friend bool operator==(const Biset& a, const Biset& b);

 private:
  GroupPtr left_;
  GroupPtr right_;
  int size_ = 0;
  bool left_free_ = true;
  std::shared_ptr<const std::vector<int>> lact_;
  std::shared_ptr<const std::vector<int>> ract_;
};

/// Inverse of Biset::as_product_gset.
Biset biset_from_product_gset(GroupPtr left, GroupPtr right, const GSet& x, bool require_left_free = false);

struct BisetMap {
  Biset source;
  Biset target;
  std::vector<int> map;

  int operator()(int x) const { return map[x]; }
  BisetMap then(const BisetMap& g) const;
};

BisetMap make_biset_map(Biset source, Biset target, std::vector<int> map);
bool is_biset_map(const Biset& source, const Biset& target, const std::vector<int>& map);
std::optional<BisetMap> biset_iso(const Biset& x, const Biset& y);

/// Left L, right R; (a, b) stored at a * |R| + b with h.(a, b).g = (ha, bg).
Biset canonical_biset(GroupPtr left, GroupPtr right);
/// G acting on itself from both sides.
Biset conjugation_biset(GroupPtr g);
/// G x T with g.(a, t).h = (ga, t.h); (a, t) stored at a * |T| + t.
Biset separable_biset(GroupPtr g, const GSet& t);
Biset empty_biset(GroupPtr left, GroupPtr right);
/// Disjoint union, first operand first.
Biset biset_coproduct(const Biset& x, const Biset& y);

struct SeparableWitness {
  GSet t;            // X / G with the inherited right action
  BisetMap iso;      // G x T -> X
  std::vector<int> section;  // T -> X
};

/// Throws LeftActionNotFree. Empty optional when some g != e has g.x.h = x.
std::optional<SeparableWitness> is_separable(const Biset& x);

/// One entry per (L x R)-orbit: K <= R and phi: K -> L with g.x = x.k exactly
/// when g = phi(k), where x is the least element of the orbit.
struct BiOrbitType {
  std::vector<int> elements;  // sorted
  Subgroup k;
  std::vector<int> phi;            // phi[i] is the image of k.elements[i]
  std::vector<int> phi_canonical;  // least L-conjugate of phi
  int product_class = 0;      // class of the stabilizer in L x R
};

std::vector<BiOrbitType> biset_orbit_types(const Biset& x);
/// The transitive biset with base stabilizer {(phi(k), k)} in L x R.
Biset realize_bi_orbit(GroupPtr left, GroupPtr right, const Subgroup& k, const std::vector<int>& phi);

}  // namespace gspan
