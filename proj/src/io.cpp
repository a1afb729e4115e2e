#include "gspan/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "gspan/catalog.hpp"
#include "gspan/error.hpp"

namespace gspan::io {

namespace fs = std::filesystem;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::MalformedInput, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T as(const json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::MalformedInput, std::string("bad value for ") + what);
  }
}

template <class T>
T get(const json& j, const char* key) {
  return as<T>(field(j, key), key);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MalformedInput, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path resolve(const fs::path& base, const std::string& ref) {
  fs::path p(ref);
  return p.is_absolute() || base.empty() ? p : base / p;
}

std::vector<int> flatten(const std::vector<std::vector<int>>& rows, std::size_t width, const char* what) {
  std::vector<int> flat;
  for (const auto& r : rows) {
    if (r.size() != width) fail(ErrorCode::MalformedInput, std::string(what) + " rows need " + std::to_string(width) + " entries");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

IntMatrix read_int_matrix(const json& j, const char* what) {
  auto rows = as<std::vector<std::vector<std::int64_t>>>(j, what);
  return IntMatrix::from_rows(rows);
}

GroupoidFunctor read_functor(const json& j, const Groupoid& source, const Groupoid& target) {
  return make_functor(source, target, get<std::vector<int>>(j, "objects"), get<std::vector<int>>(j, "morphisms"));
}

json write_functor(const GroupoidFunctor& f) { return {{"objects", f.objects}, {"morphisms", f.morphisms}}; }

}  // namespace

json read_json_file(const fs::path& path) {
  try {
    return json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::MalformedInput, path.string() + ": " + e.what());
  }
}

std::string file_digest(const fs::path& path) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : slurp(path)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GroupPtr read_group(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto name = j.get<std::string>();
    auto names = catalog_names();
    if (std::find(names.begin(), names.end(), name) != names.end()) return catalog_group(name);
    auto path = resolve(base, name);
    return read_group(read_json_file(path), path.parent_path());
  }
  if (!j.is_object()) fail(ErrorCode::MalformedInput, "a group is a catalog name, a path or an object");
  if (j.contains("catalog")) return read_group(field(j, "catalog"), base);
  std::string name = j.contains("name") ? get<std::string>(j, "name") : std::string();
  if (j.contains("mul")) {
    auto mul = get<std::vector<std::vector<int>>>(j, "mul");
    if (j.contains("order") && get<int>(j, "order") != static_cast<int>(mul.size()))
      fail(ErrorCode::MalformedInput, "order does not match the table");
    return share(FiniteGroup::from_table(mul, name));
  }
  if (j.contains("generators")) {
    const int degree = get<int>(j, "degree");
    std::vector<Permutation> gens;
    for (const auto& cycles : field(j, "generators"))
      gens.push_back(from_cycles(degree, as<std::vector<std::vector<int>>>(cycles, "generators")));
    return share(FiniteGroup::from_permutations(degree, gens, kDefaultClosureCap, name));
  }
  fail(ErrorCode::MalformedInput, "a group object needs \"mul\", \"generators\" or \"catalog\"");
}

json write_group(const FiniteGroup& g) {
  json j{{"order", g.order()}, {"mul", g.table()}};
  if (!g.name().empty()) j["name"] = g.name();
  return j;
}

json write_subgroup(const Subgroup& h) { return h.elements; }

namespace {

Subgroup read_subgroup(const FiniteGroup& g, const json& j) {
  auto ids = as<std::vector<int>>(j, "stabilizer");
  for (int x : ids)
    if (x < 0 || x >= g.order()) fail(ErrorCode::MalformedInput, "stabilizer element out of range");
  return closure(g, ids);
}

GSet read_orbit(const GroupPtr& g, const json& j) { return GSet::orbit(g, read_subgroup(*g, field(j, "stabilizer"))); }

}  // namespace

GSet read_gset(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_gset(read_json_file(path), path.parent_path());
  }
  auto g = read_group(field(j, "group"), base);
  if (j.contains("orbit")) return read_orbit(g, field(j, "orbit"));
  if (j.contains("orbits")) {
    GSet sum = GSet::empty(g);
    for (const auto& o : field(j, "orbits")) sum = coproduct(sum, read_orbit(g, o)).object;
    return sum;
  }
  const int size = get<int>(j, "size");
  auto act = get<std::vector<std::vector<int>>>(j, "act");
  if (static_cast<int>(act.size()) != size) fail(ErrorCode::MalformedInput, "act needs one row per point");
  return GSet::from_flat(g, size, flatten(act, g->order(), "act"));
}

json write_gset(const GSet& x) {
  return {{"group", write_group(*x.group())}, {"size", x.size()}, {"act", x.rows()}};
}

Biset read_biset(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_biset(read_json_file(path), path.parent_path());
  }
  auto l = read_group(field(j, "leftGroup"), base);
  auto r = read_group(field(j, "group"), base);
  const int size = get<int>(j, "size");
  auto left = get<std::vector<std::vector<int>>>(j, "leftAct");
  auto right = get<std::vector<std::vector<int>>>(j, "act");
  if (static_cast<int>(left.size()) != size || static_cast<int>(right.size()) != size)
    fail(ErrorCode::MalformedInput, "leftAct and act need one row per point");
  return Biset::build(l, r, left, right, false);
}

json write_biset(const Biset& b) {
  return {{"leftGroup", write_group(*b.left_group())},
          {"group", write_group(*b.right_group())},
          {"size", b.size()},
          {"leftAct", b.left_rows()},
          {"act", b.right_rows()}};
}

Span read_span(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_span(read_json_file(path), path.parent_path());
  }
  if (j.contains("matrix")) {
    auto rows = get<std::vector<std::vector<std::uint64_t>>>(j, "matrix");
    return matrix_to_span(NatMatrix::from_rows(rows));
  }
  return make_span(read_gset(field(j, "left"), base), read_gset(field(j, "right"), base),
                   read_gset(field(j, "apex"), base), get<std::vector<int>>(j, "legLeft"),
                   get<std::vector<int>>(j, "legRight"));
}

json write_span(const Span& s) {
  return {{"left", write_gset(s.left)},
          {"right", write_gset(s.right)},
          {"apex", write_gset(s.apex)},
          {"legLeft", s.leg_left},
          {"legRight", s.leg_right}};
}

json write_span_class(const SpanClass& c) {
  json terms = json::array();
  for (const auto& [atom, mult] : c.terms)
    terms.push_back({{"base", atom.base}, {"subgroup", atom.sub.elements}, {"multiplicity", mult}});
  return {{"leftSize", c.left_size}, {"rightSize", c.right_size}, {"terms", terms}};
}

MackeyData read_mackey(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_mackey(read_json_file(path), path.parent_path());
  }
  auto g = read_group(field(j, "group"), base);
  if (j.contains("builtin")) {
    auto kind = get<std::string>(j, "builtin");
    if (kind == "burnside") return standard_mackey(MackeyKind::Burnside, g);
    if (kind == "permutation") return standard_mackey(MackeyKind::Permutation, g, read_gset(field(j, "gset"), base));
    fail(ErrorCode::MalformedInput, "unknown builtin Mackey data \"" + kind + "\"");
  }
  MackeyData m;
  m.name = j.contains("name") ? get<std::string>(j, "name") : std::string();
  m.basis = orbit_basis(g);
  m.rank = get<std::vector<int>>(j, "rank");
  for (const char* table : {"res", "tr"})
    for (const auto& e : field(j, table)) {
      OrbitMorphism f{get<int>(e, "from"), get<int>(e, "to"), get<int>(e, "point")};
      (std::string(table) == "res" ? m.res : m.tr)[f] = read_int_matrix(field(e, "matrix"), "matrix");
    }
  validate(m);
  return m;
}

json write_mackey(const MackeyData& m) {
  json j{{"group", write_group(*m.basis.group)}, {"rank", m.rank}};
  if (!m.name.empty()) j["name"] = m.name;
  for (const char* table : {"res", "tr"}) {
    json arr = json::array();
    for (const auto& [f, mat] : std::string(table) == "res" ? m.res : m.tr)
      arr.push_back({{"from", f.from}, {"to", f.to}, {"point", f.point}, {"matrix", write_matrix(mat)}});
    j[table] = arr;
  }
  return j;
}

Groupoid read_groupoid(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_groupoid(read_json_file(path), path.parent_path());
  }
  if (j.contains("oneObject")) return one_object(read_group(field(j, "oneObject"), base));
  if (j.contains("connected")) {
    const auto& c = field(j, "connected");
    return connected_groupoid(get<int>(c, "objects"), read_group(field(c, "group"), base));
  }
  if (j.contains("action")) return action_groupoid(read_gset(field(j, "action"), base)).groupoid;
  std::vector<int> src, tgt;
  for (const auto& m : field(j, "morphisms")) {
    src.push_back(get<int>(m, "src"));
    tgt.push_back(get<int>(m, "tgt"));
  }
  return Groupoid::build(get<int>(j, "objects"), src, tgt, get<std::vector<std::vector<int>>>(j, "comp"));
}

json write_groupoid(const Groupoid& g) {
  json mor = json::array();
  for (int f = 0; f < g.morphisms(); ++f) mor.push_back({{"src", g.src(f)}, {"tgt", g.tgt(f)}});
  return {{"objects", g.objects()}, {"morphisms", mor}, {"comp", g.comp_table()}};
}

GlobalSpan read_global_span(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_global_span(read_json_file(path), path.parent_path());
  }
  auto left = read_groupoid(field(j, "left"), base);
  auto right = read_groupoid(field(j, "right"), base);
  auto apex = read_groupoid(field(j, "apex"), base);
  return make_global_span(read_functor(field(j, "ingressive"), apex, left),
                          read_functor(field(j, "egressive"), apex, right));
}

json write_global_span(const GlobalSpan& s) {
  return {{"left", write_groupoid(s.left)},
          {"right", write_groupoid(s.right)},
          {"apex", write_groupoid(s.apex)},
          {"ingressive", write_functor(s.ingressive)},
          {"egressive", write_functor(s.egressive)}};
}

SetOperad read_operad(const json& j, const fs::path& base) {
  if (j.is_string()) {
    auto path = resolve(base, j.get<std::string>());
    return read_operad(read_json_file(path), path.parent_path());
  }
  if (j.contains("builtin")) {
    auto kind = get<std::string>(j, "builtin");
    const int n = get<int>(j, "maxArity");
    if (kind == "Comm") return comm_operad(n);
    if (kind == "Assoc") return assoc_operad(n);
    fail(ErrorCode::MalformedInput, "unknown builtin operad \"" + kind + "\"");
  }
  OperadData d;
  d.name = j.contains("name") ? get<std::string>(j, "name") : std::string();
  d.max_arity = get<int>(j, "maxArity");
  for (const auto& a : field(j, "arities")) {
    d.sizes.push_back(get<int>(a, "size"));
    d.relabel.push_back(get<std::vector<std::vector<int>>>(a, "relabel"));
  }
  d.unit = get<int>(j, "unit");
  for (const auto& e : field(j, "gamma")) {
    auto inner = get<std::vector<std::vector<int>>>(e, "inner");
    std::vector<int> key{get<int>(e, "arity"), get<int>(e, "outer")};
    if (key[0] != static_cast<int>(inner.size())) fail(ErrorCode::MalformedInput, "gamma arity and inner length differ");
    for (const auto& p : inner) {
      if (p.size() != 2) fail(ErrorCode::MalformedInput, "gamma inner entries are [arity, element]");
      key.insert(key.end(), p.begin(), p.end());
    }
    if (!d.gamma.emplace(key, get<int>(e, "result")).second)
      fail(ErrorCode::MalformedInput, "duplicate gamma entry");
  }
  return SetOperad::build(std::move(d));
}

json write_operad(const SetOperad& o) {
  const auto& d = o.data();
  json arities = json::array();
  for (int n = 0; n <= d.max_arity; ++n) arities.push_back({{"size", d.sizes[n]}, {"relabel", d.relabel[n]}});
  json gamma = json::array();
  for (const auto& [key, r] : d.gamma) {
    json inner = json::array();
    for (std::size_t i = 2; i < key.size(); i += 2) inner.push_back({key[i], key[i + 1]});
    gamma.push_back({{"arity", key[0]}, {"outer", key[1]}, {"inner", inner}, {"result", r}});
  }
  json j{{"maxArity", d.max_arity}, {"arities", arities}, {"unit", d.unit}, {"gamma", gamma}};
  if (!d.name.empty()) j["name"] = d.name;
  return j;
}

OperadicSpan read_operadic_span(const SetOperad& o, const json& j) {
  return make_operadic_span(o, get<int>(j, "x"), get<int>(j, "y"), get<std::vector<int>>(j, "left"),
                            get<std::vector<int>>(j, "right"), get<std::vector<int>>(j, "decoration"));
}

json write_operadic_span(const OperadicSpan& s) {
  return {{"x", s.x}, {"y", s.y}, {"left", s.left}, {"right", s.right}, {"decoration", s.decoration}};
}

}  // namespace gspan::io
