#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gspan/burnside.hpp"
#include "gspan/groupoid.hpp"
#include "gspan/mackey.hpp"
#include "gspan/operad.hpp"
#include "gspan/span.hpp"

// JSON readers and writers for every file format. Readers throw
// MalformedInput (or the validating constructor's own error) and resolve
// file references relative to `base`.
namespace gspan::io {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path);
/// 64-bit FNV-1a of the file bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

/// A catalog name, a path to a group file, or an object with "mul", with
/// "degree" and "generators" (1-based cycles), or with "catalog".
GroupPtr read_group(const json& j, const std::filesystem::path& base = {});
json write_group(const FiniteGroup& g);

/// {"group", "size", "act"} with act[x][g] = x.g, or {"group", "orbit":
/// {"stabilizer"}}, or {"group", "orbits": [...]} for a sum of orbits.
GSet read_gset(const json& j, const std::filesystem::path& base = {});
json write_gset(const GSet& x);

/// {"leftGroup", "group", "size", "leftAct", "act"} with leftAct[x][g] = g.x.
Biset read_biset(const json& j, const std::filesystem::path& base = {});
json write_biset(const Biset& b);

/// {"left", "right", "apex", "legLeft", "legRight"}, or {"matrix"} for a span
/// of finite sets given by its fiber counts.
Span read_span(const json& j, const std::filesystem::path& base = {});
json write_span(const Span& s);
json write_span_class(const SpanClass& c);
json write_subgroup(const Subgroup& h);

template <class T>
json write_matrix(const Matrix<T>& m) {
  return json(m.to_rows());
}
template <class T>
std::string matrix_csv(const Matrix<T>& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? "," : "") + std::to_string(m(i, j));
    out += '\n';
  }
  return out;
}

/// {"group", "rank", "res": [{"from", "to", "point", "matrix"}], "tr": [..]},
/// or {"builtin": "burnside" | "permutation", "group", "gset"}.
MackeyData read_mackey(const json& j, const std::filesystem::path& base = {});
json write_mackey(const MackeyData& m);

/// {"objects", "morphisms": [{"src", "tgt"}], "comp"}, or {"oneObject":
/// group}, {"connected": {"objects", "group"}}, {"action": gset}.
Groupoid read_groupoid(const json& j, const std::filesystem::path& base = {});
json write_groupoid(const Groupoid& g);
/// {"left", "right", "apex", "ingressive": {"objects", "morphisms"},
/// "egressive": {..}}
GlobalSpan read_global_span(const json& j, const std::filesystem::path& base = {});
json write_global_span(const GlobalSpan& s);

/// {"name", "maxArity", "arities": [{"size", "relabel"}], "unit", "gamma":
/// [{"arity", "outer", "inner": [[n, b]..], "result"}]}, or {"builtin":
/// "Comm" | "Assoc", "maxArity"}.
SetOperad read_operad(const json& j, const std::filesystem::path& base = {});
json write_operad(const SetOperad& o);
OperadicSpan read_operadic_span(const SetOperad& o, const json& j);
json write_operadic_span(const OperadicSpan& s);

}  // namespace gspan::io
