#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "gspan/burnside.hpp"

namespace gspan {

/// The G-map G/H_from -> G/H_to sending the base coset to `point`, which must
/// be fixed by H_from.
struct OrbitMorphism {
  int from = 0;
  int to = 0;
  int point = 0;

  friend auto operator<=>(const OrbitMorphism&, const OrbitMorphism&) = default;
};

/// Every G-map between basis orbits.
std::vector<OrbitMorphism> orbit_morphisms(const OrbitBasis& b);

/// Values are free abelian groups Z^rank[i] at G/H_i, written as row
/// vectors. Along f : G/H_k -> G/H_i, res[f] is rank[i] x rank[k] and tr[f]
/// is rank[k] x rank[i]. A span X <- T -> Y acts as restriction along the left
/// leg followed by transfer along the right leg.
struct MackeyData {
  std::string name;
  OrbitBasis basis;
  std::vector<int> rank;
  std::map<OrbitMorphism, IntMatrix> res;
  std::map<OrbitMorphism, IntMatrix> tr;
};

/// Shapes, completeness of the generator tables, identities at identity maps.
/// Throws InvalidMackeyData.
void validate(const MackeyData& m);

enum class MackeyKind { Burnside, Permutation };

/// Subgroups of h up to h-conjugacy (least conjugates, sorted): the basis of
/// the Burnside value at G/h.
std::vector<Subgroup> burnside_value_basis(const FiniteGroup& g, const Subgroup& h);

/// Burnside: G/H goes to the Grothendieck group of G-sets over G/H, basis the
/// subgroups of H up to H-conjugacy; restriction is pullback, transfer is
/// composition. Permutation: G/H goes to Z[X]^H with the H-orbit sums of X
/// as basis, ordered by least element; restriction translates, transfer is
/// the relative trace.
MackeyData standard_mackey(MackeyKind kind, const GroupPtr& g, const GSet& x = {});

/// Feet must be sums of basis orbits (see foot_layout). Throws UnfactorableSpan.
IntMatrix evaluate_mackey(const MackeyData& m, const Span& s);
IntMatrix evaluate_mackey(const MackeyData& m, const VirtualHom& v);

struct MackeyViolation {
  std::string kind;  // "identity" or "composition"
  int a = 0, b = 0, c = 0;  // basis orbits X, Y, Z
  SpanAtom first;
  SpanAtom second;
  IntMatrix expected;  // evaluate(s) * evaluate(t)
  IntMatrix actual;    // evaluate(s then t)
};

struct MackeyReport {
  long long pairs = 0;
  std::vector<MackeyViolation> violations;  // every violation, in (a, b, c, atom) order
  bool ok() const { return violations.empty(); }
};

/// Checks identities and evaluate(s then t) = evaluate(s) evaluate(t) for all
/// pairs of atoms between basis orbits with apex at most `bound` points each
/// (bound < 0: no limit).
MackeyReport check_mackey(const MackeyData& m, int bound = -1, unsigned jobs = 1);

}  // namespace gspan
