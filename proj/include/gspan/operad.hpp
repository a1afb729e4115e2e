#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gspan/span.hpp"

namespace gspan {

/// Raw tables for a single-colored set operad truncated at max_arity.
///
/// Permutations of {0..n-1} are indexed by lexicographic rank of their image
/// lists. relabel[n][x][p] is O(p)(x): the operation x with input i renamed
/// p(i), so O(q)(O(p)(x)) = O(q o p)(x).
///
/// gamma keys are {k, a, n_1, b_1, .., n_k, b_k} for a in O(k) and b_i in
/// O(n_i); the value lies in O(n_1 + .. + n_k), inputs of b_1 first.
struct OperadData {
  std::string name;
  int max_arity = 0;
  std::vector<int> sizes;
  std::vector<std::vector<std::vector<int>>> relabel;
  int unit = 0;
  std::map<std::vector<int>, int> gamma;
};

inline constexpr int kMaxOperadArity = 7;

/// A validated operad. Every gamma entry with total arity <= max_arity must be
/// present.
class SetOperad {
 public:
  /// Throws AxiomViolation naming the law and a witness, CapExceeded past
  /// kMaxOperadArity.
  static SetOperad build(OperadData data);

  const std::string& name() const { return d_.name; }
  int max_arity() const { return d_.max_arity; }
  int size(int n) const { return d_.sizes[n]; }
  int unit() const { return d_.unit; }
  const OperadData& data() const { return d_; }

  /// O(p)(x) for a permutation p of {0..n-1}.
  int relabel(int n, int x, const std::vector<int>& p) const;
  /// gamma(a; b_1..b_k) with inner = {(n_i, b_i)}. Throws ArityOverflow.
  int compose(int a, const std::vector<std::pair<int, int>>& inner) const;

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept;
  };
  OperadData d_;
  std::unordered_map<std::vector<int>, int, KeyHash> index_;
};

/// O(n) a point for every n.
SetOperad comm_operad(int max_arity);
/// O(n) the orderings of n inputs, read as words w with w[i] the input in
/// position i; relabelling applies p letterwise and gamma substitutes.
SetOperad assoc_operad(int max_arity);

/// All permutations of {0..n-1} in lexicographic order.
const std::vector<std::vector<int>>& permutations_of(int n);
int permutation_rank(const std::vector<int>& p);

/// X <- T -> Y with each fiber T_y decorated by an element of O(|T_y|),
/// whose inputs are the points of T_y in increasing order.
struct OperadicSpan {
  int x = 0;
  int y = 0;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<int> decoration;  // one per point of Y

  int apex() const { return static_cast<int>(left.size()); }
  friend bool operator==(const OperadicSpan&, const OperadicSpan&) = default;
  friend auto operator<=>(const OperadicSpan&, const OperadicSpan&) = default;
};

/// Throws MalformedInput for bad legs or decorations, ArityOverflow when a
/// fiber exceeds the operad's bound.
OperadicSpan make_operadic_span(const SetOperad& o, int x, int y, std::vector<int> left, std::vector<int> right,
                                std::vector<int> decoration);
OperadicSpan operadic_identity(const SetOperad& o, int x);
/// s then t. The apex is the set pullback in lexicographic order; the
/// decoration over z is gamma of t's decoration at z with s's decorations at
/// the images of T_z, relabelled to the pullback order. Throws FeetMismatch,
/// ArityOverflow.
OperadicSpan operadic_span_compose(const SetOperad& o, const OperadicSpan& s, const OperadicSpan& t);
/// Apex sorted by fiber; within each fiber the ordering whose (left labels,
/// decoration) is least. Two spans are isomorphic iff these agree.
OperadicSpan operadic_canonical_form(const SetOperad& o, const OperadicSpan& s);
bool operadic_iso(const SetOperad& o, const OperadicSpan& a, const OperadicSpan& b);
/// The plain span of finite sets underneath.
Span underlying_span(const OperadicSpan& s);

struct CensusRow {
  int t = 0;
  long long span_side = 0;     // classes of {1..k} <- T -> 1 with |T| = t
  long long formula_side = 0;  // |O(t) x_{Sigma_t} {1..k}^t| by Burnside's lemma
};

/// Throws CapExceeded when bound > max_arity or a level needs more than 10^8
/// relabellings.
std::vector<CensusRow> free_algebra_census(const SetOperad& o, int k, int bound, unsigned jobs = 1);

}  // namespace gspan
