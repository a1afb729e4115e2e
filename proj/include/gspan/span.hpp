#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gspan/gset.hpp"
#include "gspan/matrix.hpp"

namespace gspan {

/// X <- T -> Y
struct Span {
  GSet left;
  GSet right;
  GSet apex;
  std::vector<int> leg_left;
  std::vector<int> leg_right;

  EquivariantMap left_map() const { return EquivariantMap{apex, left, leg_left}; }
  EquivariantMap right_map() const { return EquivariantMap{apex, right, leg_right}; }
};

/// Validates both legs; throws GroupMismatch or NotEquivariant.
Span make_span(GSet left, GSet right, GSet apex, std::vector<int> leg_left, std::vector<int> leg_right);
Span identity_span(const GSet& x);
Span empty_span(const GSet& x, const GSet& y);
/// X <- X -> Y along f.
Span graph_span(const EquivariantMap& f);
/// Y <- X -> X along f.
Span reverse_graph_span(const EquivariantMap& f);
/// Swaps the legs.
Span transpose(const Span& s);
/// Disjoint union of apexes over the same feet.
Span span_sum(const Span& a, const Span& b);

/// s : X -> Y then t : Y -> Z. The apex is the pullback of s's right leg and
/// t's left leg. Throws FeetMismatch.
Span compose_spans(const Span& s, const Span& t);

/// A transitive span over fixed feet: the orbit of X x Y through `base`
/// (least element of its orbit, stored as x * |Y| + y) together with the
/// stabilizer of an apex point over `base`, taken up to conjugation in the
/// stabilizer of `base`.
struct SpanAtom {
  int base = 0;
  Subgroup sub;

  friend bool operator==(const SpanAtom&, const SpanAtom&) = default;
};
bool operator<(const SpanAtom& a, const SpanAtom& b);

/// Isomorphism class of a span over fixed feet.
struct SpanClass {
  int left_size = 0;
  int right_size = 0;
  std::vector<std::pair<SpanAtom, int>> terms;  // sorted by atom, multiplicities >= 1

  int apex_size(int group_order) const;
  friend bool operator==(const SpanClass&, const SpanClass&) = default;
};
bool operator<(const SpanClass& a, const SpanClass& b);

SpanClass span_class(const Span& s);
SpanClass class_sum(const SpanClass& a, const SpanClass& b);

/// All atoms over X x Y, sorted.
std::vector<SpanAtom> atoms_over(const GSet& x, const GSet& y);
Span realize(const GSet& x, const GSet& y, const SpanAtom& atom);
Span realize(const GSet& x, const GSet& y, const SpanClass& c);

struct HomMonoid {
  GSet x;
  GSet y;
  int bound = 0;
  std::vector<SpanAtom> atoms;
  std::vector<SpanClass> classes;  // sorted, unique

  /// -1 when the class is not in the enumerated range.
  int index_of(const SpanClass& c) const;
};

/// Every class with apex size <= bound.
HomMonoid hom_monoid(const GSet& x, const GSet& y, int bound);

/// Fiber counts M(i, j) = #{t : leg_left(t) = i, leg_right(t) = j}. Composition
/// s then t corresponds to the product M(s) * M(t). Throws NontrivialGroup.
NatMatrix span_to_matrix(const Span& s);
/// Apex ordered row-major, each (i, j) repeated M(i, j) times.
Span matrix_to_span(const NatMatrix& m);

enum class LegKind { Bijective, Injective, Arbitrary };
std::string to_string(LegKind k);
LegKind leg_kind(const std::vector<int>& leg, int target_size);
/// a is at least as fine as b
bool refines(LegKind a, LegKind b);

struct SpanType {
  LegKind left;
  LegKind right;
  friend bool operator==(const SpanType&, const SpanType&) = default;
};
SpanType structured_span_type(const Span& s);

struct ClosureViolation {
  Span first;
  Span second;
  SpanType composite_type;
};

struct ClosureReport {
  SpanType type;
  long long spans = 0;   // members of the class in the corpus
  long long pairs = 0;   // composable pairs checked
  std::vector<ClosureViolation> violations;  // at most a few, in corpus order
  bool ok() const { return violations.empty(); }
};

/// Composes every composable pair of corpus members of type `type` and checks
/// that the composite is still of that type.
ClosureReport check_closure(SpanType type, const std::vector<Span>& corpus, unsigned jobs = 1);

}  // namespace gspan
