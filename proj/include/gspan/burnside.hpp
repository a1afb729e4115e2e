#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gspan/gset.hpp"
#include "gspan/matrix.hpp"
#include "gspan/span.hpp"

namespace gspan {

using BigInt = boost::multiprecision::cpp_int;

/// Orbits G/H_i for H_i running over the subgroup class representatives,
/// smallest first; index 0 is G/e.
struct OrbitBasis {
  GroupPtr group;
  std::vector<Subgroup> reps;
  std::vector<GSet> orbits;

  int size() const { return static_cast<int>(reps.size()); }
};

OrbitBasis orbit_basis(const GroupPtr& g);

/// Disjoint union with coords[i] copies of G/H_i, in basis order.
GSet orbit_sum(const OrbitBasis& b, const std::vector<int>& coords);

/// Every coordinate vector whose orbit sum has at most `bound` points, in
/// lexicographic order of the multiset of basis indices.
std::vector<std::vector<int>> orbit_sums_up_to(const OrbitBasis& b, int bound);

/// Where each orbit of a foot sits: a block of `size` points starting at
/// `offset`, equal (not just isomorphic) to basis orbit `cls`.
struct FootBlock {
  int cls;
  int offset;
  int size;
};
/// Throws UnfactorableSpan unless x is literally a sum of basis orbits.
std::vector<FootBlock> foot_layout(const OrbitBasis& b, const GSet& x);

/// Rows are orbits G/K_i, columns subgroups H_j: m(i, j) = |(G/K_i)^{H_j}|.
struct MarksMatrix {
  OrbitBasis basis;
  IntMatrix m;
};

MarksMatrix table_of_marks(const GroupPtr& g);
/// |X^{H_j}| for each basis subgroup.
std::vector<long long> marks(const GSet& x);
/// Exact, by fraction-free elimination.
BigInt determinant(const IntMatrix& m);

struct BurnsideProduct {
  std::vector<int> coords;  // multiplicity of each basis orbit in X x Y
  GSet product;
  EquivariantMap witness;  // orbit_sum(coords) -> X x Y, an isomorphism
};

/// Throws GroupMismatch.
BurnsideProduct burnside_product(const GSet& x, const GSet& y);

/// Integer combination of atoms over X x Y.
struct VirtualHom {
  GSet x;
  GSet y;
  std::map<SpanAtom, long long> coeffs;  // no zero entries

  friend bool operator==(const VirtualHom& a, const VirtualHom& b) {
    return a.x == b.x && a.y == b.y && a.coeffs == b.coeffs;
  }
};

VirtualHom zero_hom(const GSet& x, const GSet& y);
VirtualHom to_virtual(const GSet& x, const GSet& y, const SpanClass& c);
VirtualHom to_virtual(const Span& s);
/// Throws FeetMismatch.
VirtualHom operator+(const VirtualHom& a, const VirtualHom& b);
VirtualHom operator-(const VirtualHom& a, const VirtualHom& b);
VirtualHom operator*(long long k, const VirtualHom& a);
/// Bilinear extension of span composition, a then b. Throws FeetMismatch.
VirtualHom virtual_compose(const VirtualHom& a, const VirtualHom& b);

/// A discrete semiring. Finite carriers are {0, .., n-1} with explicit
/// tables; the built-in naturals and integers are unbounded.
class Semiring {
 public:
  enum class Kind { Finite, Natural, Integer };

  /// Validates every axiom exhaustively; throws NotASemiring naming the
  /// first failing law.
  static Semiring finite(std::vector<std::vector<int>> add, std::vector<std::vector<int>> mul, int zero, int one,
                         std::string name = {});
  static Semiring boolean();
  static Semiring natural();
  static Semiring integer();

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool add_commutative() const { return add_commutative_; }
  bool contains(const BigInt& v) const;
  BigInt zero() const;
  BigInt one() const;
  BigInt add(const BigInt& a, const BigInt& b) const;
  BigInt mul(const BigInt& a, const BigInt& b) const;

 private:
  Kind kind_ = Kind::Natural;
  std::string name_;
  std::vector<std::vector<int>> add_, mul_;
  int zero_ = 0, one_ = 1;
  bool add_commutative_ = true;
};

using BigMatrix = Matrix<BigInt>;

/// Objects are natural numbers, morphisms n -> m are n x m matrices over R.
struct SemiringMatrixCat {
  Semiring semiring;

  BigMatrix identity(std::size_t n) const;
  /// a then b. Throws ShapeMismatch or EntryOutOfCarrier.
  BigMatrix compose(const BigMatrix& a, const BigMatrix& b) const;
};

}  // namespace gspan
