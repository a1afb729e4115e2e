#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

#include "gspan/gset.hpp"
#include "gspan/span.hpp"

namespace gspan {

/// A finite groupoid. Morphisms are ids 0..m-1; then(f, g) is f followed by
/// g, defined when tgt(f) = src(g).
class Groupoid {
 public:
  Groupoid() = default;
  /// comp[f][g] = f then g when composable, else -1. Checks every law
  /// exhaustively; throws NotAGroupoid.
  static Groupoid build(int objects, std::vector<int> src, std::vector<int> tgt,
                        const std::vector<std::vector<int>>& comp);

  int objects() const { return objects_; }
  int morphisms() const { return static_cast<int>(src_.size()); }
  int src(int f) const { return src_[f]; }
  int tgt(int f) const { return tgt_[f]; }
  int then(int f, int g) const { return comp_[static_cast<std::size_t>(f) * morphisms() + g]; }
  int inverse(int f) const { return inv_[f]; }
  int identity(int obj) const { return id_[obj]; }
  /// Morphisms with the given source, ascending.
  const std::vector<int>& out(int obj) const { return out_[obj]; }
  std::vector<std::vector<int>> comp_table() const;

  friend bool operator==(const Groupoid& a, const Groupoid& b) {
    return a.objects_ == b.objects_ && a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.comp_ == b.comp_;
  }

 private:
  friend Groupoid groupoid_unchecked(int, std::vector<int>, std::vector<int>, std::vector<int>);
  void derive();

  int objects_ = 0;
  std::vector<int> src_, tgt_, comp_, inv_, id_;
  std::vector<std::vector<int>> out_;
};

/// n objects, Hom(i, j) = K for all i, j: (i, j, k) at (i n + j)|K| + k, and
/// (i, j, k) then (j, l, k') = (i, l, kk').
Groupoid connected_groupoid(int n, const GroupPtr& k);
/// BG: one object, morphism ids are the elements.
Groupoid one_object(const GroupPtr& g);
/// Disjoint union, first operand first.
Groupoid groupoid_coproduct(const Groupoid& a, const Groupoid& b);

struct GroupoidFunctor {
  Groupoid source;
  Groupoid target;
  std::vector<int> objects;
  std::vector<int> morphisms;
};

/// Checks sources, targets, identities and composites; throws NotAFunctor.
GroupoidFunctor make_functor(Groupoid source, Groupoid target, std::vector<int> objects, std::vector<int> morphisms);
GroupoidFunctor identity_functor(const Groupoid& g);
/// f then g. Throws TargetMismatch.
GroupoidFunctor compose_functors(const GroupoidFunctor& f, const GroupoidFunctor& g);

struct FibrationCheck {
  bool ok = true;
  /// First failure: a target morphism, a source object over its source, and
  /// how many lifts start there.
  int morphism = -1;
  int object = -1;
  int lifts = 0;
};

/// Unique lifts: for each object e and each morphism starting at F(e), one
/// morphism starting at e over it.
FibrationCheck is_discrete_fibration(const GroupoidFunctor& f);

/// B_K X over the n-object connected groupoid: objects (i, x) at i|X| + x,
/// morphisms (i, x) -> (j, x.k) at ((i|X| + x) n + j)|K| + k. For n = 1 this
/// is the action groupoid over BK.
struct ActionGroupoid {
  Groupoid groupoid;
  GroupoidFunctor projection;
};
ActionGroupoid action_groupoid(const GSet& x, int n = 1);
/// B_G f : B_G X -> B_G Y.
GroupoidFunctor action_functor(const EquivariantMap& f);

struct StrictPullback {
  Groupoid object;
  GroupoidFunctor proj1;
  GroupoidFunctor proj2;
  std::vector<std::pair<int, int>> object_pairs;    // lexicographic
  std::vector<std::pair<int, int>> morphism_pairs;  // lexicographic
};

/// Throws TargetMismatch.
StrictPullback strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g);

/// left <- apex -> right with the left leg a discrete fibration.
struct GlobalSpan {
  Groupoid left;
  Groupoid right;
  Groupoid apex;
  GroupoidFunctor ingressive;
  GroupoidFunctor egressive;
};

/// Throws FeetMismatch when the legs start at different groupoids,
/// IngressiveNotFibration.
GlobalSpan make_global_span(GroupoidFunctor ingressive, GroupoidFunctor egressive);
/// s then t, apex the strict pullback along t's ingressive leg. Throws
/// FeetMismatch, IngressiveNotFibration.
GlobalSpan compose_global_spans(const GlobalSpan& s, const GlobalSpan& t);
/// B_G applied to a span of G-sets.
GlobalSpan action_span(const Span& s);

struct SkeletonEntry {
  int objects = 0;
  GroupPtr automorphisms;  // of the least object of the component
};

/// One entry per component, ordered by least object.
std::vector<SkeletonEntry> groupoid_equivalence_skeleton(const Groupoid& g);
/// Components matched by isomorphic automorphism groups.
bool groupoids_equivalent(const Groupoid& a, const Groupoid& b);

/// BG <- K -> BH to the (H,G)-biset H x Ob(K) with h'.(h, x) = (h'h, x)
/// and (h, x).g = (h phi(x, g), x.g), where phi is the right leg on the
/// unique lift of g at x. Throws FeetMismatch unless the feet are BG, BH.
Biset global_span_biset(const GlobalSpan& s, const GroupPtr& g, const GroupPtr& h);
/// A left-free (H,G)-biset Z to BG <- B_G(H\Z) -> BH, using the least
/// element of each left orbit as its section. Throws LeftActionNotFree.
GlobalSpan biset_global_span(const Biset& z);

/// Every functor a -> b, fixed on each component of a by the image of its
/// least object, the automorphism group there and a BFS tree. Throws
/// CapExceeded past `cap`.
std::vector<GroupoidFunctor> enumerate_functors(const Groupoid& a, const Groupoid& b, std::size_t cap = 1u << 16);

}  // namespace gspan
