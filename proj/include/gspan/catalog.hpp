#pragma once

#include <string>
#include <vector>

#include "gspan/group.hpp"

namespace gspan {

GroupPtr cyclic(int n);
/// Symmetries of the regular n-gon, order 2n (n >= 3).
GroupPtr dihedral(int n);
GroupPtr symmetric(int n);
GroupPtr alternating(int n);
/// Dicyclic group of order 4n; dicyclic(2) is Q8.
GroupPtr dicyclic(int n);

/// Named groups: trivial, C1..C12, C2xC2, C2xC2xC2, C4xC2, C3xC3, C6xC2,
/// S3, D4, Q8, D5, D6, A4, Dic3, S4. Repeated lookups return the same pointer.
GroupPtr catalog_group(const std::string& name);
std::vector<std::string> catalog_names();
/// Catalog groups of order <= n, one per isomorphism type, in catalog order.
std::vector<GroupPtr> catalog_up_to(int n);

}  // namespace gspan
