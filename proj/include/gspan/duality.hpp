#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gspan/gset.hpp"

namespace gspan {

/// X x_(H,G) Y for X an (H,G)-biset and Y a (G,H)-biset: the quotient of
/// X x Y by (xg, y) ~ (x, gy) and (hx, y) ~ (x, yh).
struct PairingResult {
  int size = 0;
  int y_size = 0;
  std::vector<int> projection;  // (x, y) at x * |Y| + y -> class
  /// Least pair of each class; classes are numbered in this order.
  std::vector<std::pair<int, int>> section;

  int cls(int x, int y) const { return projection[static_cast<std::size_t>(x) * y_size + y]; }
};

/// Throws GroupMismatch unless X's groups are Y's swapped.
PairingResult pairing(const Biset& x, const Biset& y);
/// The map induced by f: X -> X' and g: Y -> Y' on the quotients.
std::vector<int> pairing_map(const PairingResult& src, const PairingResult& dst, const std::vector<int>& f,
                             const std::vector<int>& g);

/// A morphism between corpus orbits, fixed by where it sends the base point.
struct CorpusArrow {
  int from = 0;
  int to = 0;
  int point = 0;
  std::vector<int> map;
};

/// The transitive left-free (L,R)-bisets of size <= bound, one per class of
/// base stabilizers in L x R, with every biset map between them. Object i
/// has base point 0 with stabilizer stabilizers[i]. The free orbit is the
/// literal canonical_biset(L, R) and comes first when it fits.
struct BisetCorpus {
  GroupPtr left, right, product;
  int bound = 0;
  std::vector<Biset> objects;
  std::vector<GSet> product_sets;
  std::vector<Subgroup> stabilizers;
  std::vector<int> object_of_class;  // lattice class of L x R -> object, or -1
  std::vector<CorpusArrow> arrows;   // sorted by (from, to, point)
  std::vector<std::vector<int>> out;  // arrows leaving each object
  int canonical = -1;

  int size() const { return static_cast<int>(objects.size()); }
  /// Index of the arrow from -> to sending the base point to `point`, or -1.
  int arrow(int from, int to, int point) const;

 private:
  friend std::shared_ptr<const BisetCorpus> orbit_corpus(GroupPtr, GroupPtr, int, std::size_t);
  std::vector<std::vector<int>> lookup_;  // [from * n + to][point]
};

inline constexpr std::size_t kDefaultCorpusArrowCap = 1u << 20;

/// bound <= 0 picks max(2|L||R|, 6). Throws CorpusOverflow past the arrow cap.
std::shared_ptr<const BisetCorpus> orbit_corpus(GroupPtr left, GroupPtr right, int bound = 0,
                                                std::size_t arrow_cap = kDefaultCorpusArrowCap);

/// Every left-free (L,R)-biset of size <= bound up to isomorphism, as sums of
/// corpus orbits in lexicographic order of the multiset of orbit indices.
std::vector<Biset> left_free_bisets(GroupPtr left, GroupPtr right, int bound);
/// G x T for every right H-set T with |G||T| <= bound, same order on T.
std::vector<Biset> separable_bisets(GroupPtr g, GroupPtr h, int bound);

/// Every biset map X -> Y. Throws CapExceeded past `cap` maps.
std::vector<std::vector<int>> biset_maps(const Biset& x, const Biset& y, std::size_t cap = 1u << 16);

/// A set-valued functor on a corpus, given on orbits and extended additively.
struct FunctorTable {
  std::shared_ptr<const BisetCorpus> corpus;
  std::vector<int> values;                    // |F(O)| per object
  std::vector<std::vector<int>> arrow_values;  // F(a), aligned with corpus->arrows
  int empty_value = 0;                        // |F(empty)|
};

/// Shapes, identities and every composite; throws NotAFunctor.
void validate_functor(const FunctorTable& f);

/// - x_(H,G) X on ^H Fin_G for X in ^G Fin_H. Throws LeftActionNotFree,
/// GroupMismatch, CorpusOverflow.
FunctorTable tensor_functor(const Biset& x, std::shared_ptr<const BisetCorpus> corpus);
FunctorTable tensor_functor(const Biset& x, int bound = 0);

/// A cospan O1 -> O3 <- O2 of corpus arrows whose image square is not a
/// pullback. The pullback P is the sum of apex orbits, each with its two
/// projections; F(P) is indexed by concatenating their values.
struct PullbackFailure {
  int left = 0;   // arrow O1 -> O3
  int right = 0;  // arrow O2 -> O3
  std::vector<int> apex_objects;
  std::vector<int> apex_left;   // arrows apex orbit -> O1
  std::vector<int> apex_right;  // arrows apex orbit -> O2
  long long image_size = 0;          // |F(P)|
  long long fiber_product_size = 0;  // |F(O1) x_F(O3) F(O2)|
  std::string reason;                // "not injective" or "not surjective"
  std::vector<int> collided;         // two points of F(P) with one image
  std::pair<int, int> missed{-1, -1};  // a pair of F(O1) x F(O2) not hit
};

struct PceReport {
  bool empty_ok = true;
  std::vector<int> non_epi_arrows;
  std::vector<PullbackFailure> pullback_failures;
  long long squares_checked = 0;
  long long squares_skipped = 0;  // apex orbit outside the corpus

  bool ok() const { return empty_ok && non_epi_arrows.empty() && pullback_failures.empty(); }
};

/// Checks empty, epis and every orbit cospan on the corpus. Coproducts hold
/// by construction. Stops collecting failures after `max_failures`.
PceReport preserves_pce(const FunctorTable& f, std::size_t max_failures = 16);

/// A K-torsor witness for f. K acts on the left of the source by biset
/// automorphisms; comparison sends (x, k) at x * |K| + k to the index of
/// (x, k.x) in fiber_pairs, and is a bijection.
struct TorsorCertificate {
  GroupPtr k;
  std::vector<std::vector<int>> action;  // action[k][x] = k.x
  BisetMap map;
  std::vector<std::pair<int, int>> fiber_pairs;  // X x_Y X, lexicographic
  std::vector<int> comparison;
};

/// Throws ActionIncompatible if act is not a left K-action commuting with
/// both actions on the source.
std::optional<TorsorCertificate> is_torsor(const BisetMap& f, GroupPtr k, const std::vector<std::vector<int>>& act);
/// G-set maps, with K commuting with the G-action; Fin is the trivial group.
std::optional<TorsorCertificate> is_torsor(const EquivariantMap& f, GroupPtr k,
                                           const std::vector<std::vector<int>>& act);

/// H^op x G with (a, b) at a * |G| + b and (a, b)(a', b') = (a'a, bb'). Its
/// left multiplication on canonical_biset(H, G) commutes with both actions.
GroupPtr opposite_product(const GroupPtr& h, const GroupPtr& g);

struct EpiClassification {
  GroupPtr ambient;  // opposite_product(H, G)
  Subgroup k;        // f^-1(f(e, e)), in ambient ids
  TorsorCertificate certificate;
  bool fibers_are_cosets = false;
};

/// f out of canonical_biset(H, G). Throws WrongSource, NotEpi.
EpiClassification classify_epi_torsor(const BisetMap& f);

/// eta[i][x] in G(object i) for x in F(object i).
using NaturalTransformation = std::vector<std::vector<int>>;

bool is_natural(const FunctorTable& f, const FunctorTable& g, const NaturalTransformation& eta);
/// All of them, by backtracking with propagation along arrows, in
/// lexicographic order. Throws CapExceeded past `cap`, ShapeMismatch for
/// tables over different corpora.
std::vector<NaturalTransformation> natural_transformations(const FunctorTable& f, const FunctorTable& g,
                                                           std::size_t cap = 1u << 16);
/// The transformation - x_(H,G) f for a biset map f: X -> Y.
NaturalTransformation tensor_transformation(const FunctorTable& fx, const FunctorTable& fy, const BisetMap& f);

/// F(H^op x G) with g.x = F(b -> (e, g))(x) and x.h = F(b -> (h, e))(x),
/// where b is the base point. Throws PceViolation when preserves_pce fails
/// or the corpus lacks the canonical biset, FreenessFailure when the result
/// is not a left-free separable biset.
Biset reconstruct_biset(const FunctorTable& f);

struct DualityCheck {
  std::string clause;
  std::string subject;
  bool pass = false;
  std::string detail;
};

struct DualityReport {
  std::string g, h;
  int bound = 0;
  int corpus_bound = 0;
  int corpus_objects = 0;
  int corpus_arrows = 0;
  std::vector<DualityCheck> checks;
  /// For G = H with the conjugation biset included.
  std::optional<PullbackFailure> counterexample;
  std::shared_ptr<const BisetCorpus> corpus;

  bool ok() const;
};

inline constexpr int kDualityOrderCap = 24;

/// Clauses over separable X in ^G Fin_H with |X| <= bound: pce (Phi(X) is
/// clean), full-faithful (transformations Phi(X) -> Phi(Y) are exactly the
/// images of biset maps), round-trip, and theta (the same three for the pair
/// (e, G), i.e. right G-sets). With include_nonseparable, every other
/// left-free biset of size <= bound must fail pce. Throws CapExceeded when
/// |G| or |H| exceeds kDualityOrderCap.
DualityReport verify_duality(const GroupPtr& g, const GroupPtr& h, int bound, bool include_nonseparable = false,
                             unsigned jobs = 1);

}  // namespace gspan
