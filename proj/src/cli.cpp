#include "gspan/cli.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gspan/burnside.hpp"
#include "gspan/catalog.hpp"
#include "gspan/duality.hpp"
#include "gspan/error.hpp"
#include "gspan/groupoid.hpp"
#include "gspan/io.hpp"
#include "gspan/mackey.hpp"
#include "gspan/operad.hpp"

namespace gspan::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

struct Report {
  json command = json::array();
  json inputs = json::array();
  json clauses = json::array();
  json result = json::object();
  std::optional<std::string> csv;

  void clause(const std::string& name, bool pass, json witness = nullptr) {
    json c{{"name", name}, {"pass", pass}};
    if (!witness.is_null()) c["witness"] = std::move(witness);
    clauses.push_back(std::move(c));
  }
  bool passed() const {
    for (const auto& c : clauses)
      if (!c["pass"].get<bool>()) return false;
    return true;
  }
  // Files are digested; anything else (a catalog name) is echoed.
  void input(const std::string& role, const std::string& ref) {
    json e{{"role", role}};
    std::error_code ec;
    if (fs::is_regular_file(ref, ec)) {
      e["path"] = ref;
      e["fnv1a64"] = io::file_digest(ref);
    } else {
      e["value"] = ref;
    }
    inputs.push_back(std::move(e));
  }
};

// The echo leaves out --jobs so reports do not depend on parallelism.
json echo(const std::vector<std::string>& args) {
  json out = json::array();
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--jobs") {
      ++i;
      continue;
    }
    if (args[i].rfind("--jobs=", 0) == 0) continue;
    out.push_back(args[i]);
  }
  return out;
}

json group_summary(const FiniteGroup& g) {
  const auto& lat = subgroup_classes(g);
  json classes = json::array();
  for (int c = 0; c < lat.class_count(); ++c) {
    int size = 0;
    for (int cls : lat.class_of) size += cls == c;
    classes.push_back({{"order", lat.rep(c).order()}, {"representative", lat.rep(c).elements}, {"conjugates", size}});
  }
  std::vector<int> orders;
  for (int x = 0; x < g.order(); ++x) orders.push_back(g.element_order(x));
  return {{"name", g.name()},
          {"order", g.order()},
          {"elementOrders", orders},
          {"conjugacyClasses", conjugacy_classes(g)},
          {"subgroupClasses", classes}};
}

json arrow_json(const BisetCorpus& c, int a) {
  const auto& ar = c.arrows[a];
  return {{"from", ar.from}, {"to", ar.to}, {"point", ar.point}};
}

json counterexample_json(const DualityReport& rep) {
  const auto& f = *rep.counterexample;
  const auto& c = *rep.corpus;
  json objects = json::object();
  auto note = [&](int obj) { objects[std::to_string(obj)] = c.stabilizers[obj].elements; };
  json apex_left = json::array(), apex_right = json::array();
  for (int a : f.apex_left) apex_left.push_back(arrow_json(c, a));
  for (int a : f.apex_right) apex_right.push_back(arrow_json(c, a));
  for (int o : f.apex_objects) note(o);
  note(c.arrows[f.left].from);
  note(c.arrows[f.right].from);
  note(c.arrows[f.left].to);
  return {{"left", arrow_json(c, f.left)},
          {"right", arrow_json(c, f.right)},
          {"apexObjects", f.apex_objects},
          {"apexLeft", apex_left},
          {"apexRight", apex_right},
          {"imageSize", f.image_size},
          {"fiberProductSize", f.fiber_product_size},
          {"reason", f.reason},
          {"collided", f.collided},
          {"missed", {f.missed.first, f.missed.second}},
          {"stabilizers", objects}};
}

json violation_json(const MackeyViolation& v) {
  auto atom = [](const SpanAtom& a) { return json{{"base", a.base}, {"subgroup", a.sub.elements}}; };
  return {{"kind", v.kind},  {"x", v.a},
          {"y", v.b},        {"z", v.c},
          {"first", atom(v.first)}, {"second", atom(v.second)},
          {"expected", io::write_matrix(v.expected)}, {"actual", io::write_matrix(v.actual)}};
}

bool lower_triangular(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Report rep;
  rep.command = echo(args);

  CLI::App app{"Spans, Burnside categories, bisets and their duality, global spans and operadic spans", "gspan"};
  app.require_subcommand(1);
  std::function<void()> action;
  std::string format = "json";
  unsigned jobs = 1;
  int bound = 0;

  auto formats = [&](CLI::App* c) {
    c->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };
  auto parallel = [&](CLI::App* c) { c->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1u, 256u)); };

  // group
  auto* group = app.add_subcommand("group", "finite groups")->require_subcommand(1);
  std::string group_ref;
  auto* group_info = group->add_subcommand("info", "order, classes and subgroup lattice");
  group_info->add_option("--group", group_ref)->required();
  group_info->callback([&] {
    action = [&] {
      rep.input("group", group_ref);
      auto g = io::read_group(group_ref);
      rep.clause("group-axioms", true);
      rep.result = group_summary(*g);
      rep.result["table"] = io::write_group(*g);
    };
  });
  group->add_subcommand("catalog", "named groups")->callback([&] {
    action = [&] {
      json list = json::array();
      for (const auto& name : catalog_names()) list.push_back({{"name", name}, {"order", catalog_group(name)->order()}});
      rep.result["groups"] = list;
    };
  });

  // gset
  auto* gset = app.add_subcommand("gset", "G-sets and bisets")->require_subcommand(1);
  std::string gset_ref;
  auto* gset_orbits = gset->add_subcommand("orbits", "orbit decomposition");
  gset_orbits->add_option("--gset", gset_ref)->required();
  gset_orbits->callback([&] {
    action = [&] {
      rep.input("gset", gset_ref);
      auto x = io::read_gset(json(gset_ref));
      rep.clause("action", true);
      json orbits = json::array();
      for (const auto& o : orbit_decomposition(x))
        orbits.push_back({{"elements", o.elements}, {"stabilizer", o.stabilizer.elements}, {"stabilizerClass", o.stabilizer_class}});
      json types = json::array();
      for (const auto& t : orbit_types(x)) types.push_back({{"stabilizerClass", t.stabilizer_class}, {"multiplicity", t.multiplicity}});
      rep.result = {{"size", x.size()}, {"orbits", orbits}, {"orbitTypes", types}};
    };
  });
  std::string biset_ref;
  auto* gset_biset = gset->add_subcommand("biset", "freeness, separability and bi-orbits");
  gset_biset->add_option("--biset", biset_ref)->required();
  gset_biset->callback([&] {
    action = [&] {
      rep.input("biset", biset_ref);
      auto b = io::read_biset(json(biset_ref));
      rep.clause("left-free", b.left_free());
      json orbits = json::array();
      for (const auto& o : biset_orbit_types(b))
        orbits.push_back({{"elements", o.elements}, {"k", o.k.elements}, {"phi", o.phi}});
      rep.result = {{"size", b.size()}, {"leftFree", b.left_free()}, {"orbits", orbits}};
      if (b.left_free()) {
        auto w = is_separable(b);
        rep.result["separable"] = w.has_value();
        if (w) rep.result["quotient"] = io::write_gset(w->t);
      }
    };
  });

  // span
  auto* span = app.add_subcommand("span", "spans of finite G-sets")->require_subcommand(1);
  std::string first_ref, second_ref, x_ref, y_ref, span_ref;
  auto* span_compose = span->add_subcommand("compose", "pullback composite, first then second");
  span_compose->add_option("first", first_ref)->required();
  span_compose->add_option("second", second_ref)->required();
  span_compose->callback([&] {
    action = [&] {
      rep.input("first", first_ref);
      rep.input("second", second_ref);
      auto s = io::read_span(json(first_ref));
      auto t = io::read_span(json(second_ref));
      auto st = compose_spans(s, t);
      rep.clause("composable", true);
      rep.result = {{"composite", io::write_span(st)}, {"class", io::write_span_class(span_class(st))}};
    };
  });
  auto* span_matrix = span->add_subcommand("matrix", "fiber-count matrix of a span of sets");
  span_matrix->add_option("--span", span_ref)->required();
  formats(span_matrix);
  span_matrix->callback([&] {
    action = [&] {
      rep.input("span", span_ref);
      auto m = span_to_matrix(io::read_span(json(span_ref)));
      rep.result["matrix"] = io::write_matrix(m);
      if (format == "csv") rep.csv = io::matrix_csv(m);
    };
  });
  auto* span_hom = span->add_subcommand("hom", "isomorphism classes of spans X -> Y");
  span_hom->add_option("--x", x_ref)->required();
  span_hom->add_option("--y", y_ref)->required();
  span_hom->add_option("--bound", bound, "apex size bound")->required()->check(CLI::NonNegativeNumber);
  span_hom->callback([&] {
    action = [&] {
      rep.input("x", x_ref);
      rep.input("y", y_ref);
      auto h = hom_monoid(io::read_gset(json(x_ref)), io::read_gset(json(y_ref)), bound);
      json classes = json::array();
      const int order = h.x.group()->order();
      for (const auto& c : h.classes) {
        auto j = io::write_span_class(c);
        j["apexSize"] = c.apex_size(order);
        classes.push_back(std::move(j));
      }
      rep.result = {{"bound", bound}, {"atoms", h.atoms.size()}, {"count", h.classes.size()}, {"classes", classes}};
    };
  });

  // burnside
  auto* burnside = app.add_subcommand("burnside", "table of marks and the Burnside ring")->require_subcommand(1);
  auto* marks_cmd = burnside->add_subcommand("marks", "table of marks");
  marks_cmd->add_option("--group", group_ref)->required();
  formats(marks_cmd);
  marks_cmd->callback([&] {
    action = [&] {
      rep.input("group", group_ref);
      auto t = table_of_marks(io::read_group(json(group_ref)));
      bool positive = true;
      for (std::size_t i = 0; i < t.m.rows(); ++i) positive = positive && t.m(i, i) > 0;
      auto det = determinant(t.m);
      rep.clause("lower-triangular", lower_triangular(t.m));
      rep.clause("positive-diagonal", positive);
      rep.clause("nonzero-determinant", det != 0, json{{"determinant", det.str()}});
      json subs = json::array();
      for (const auto& h : t.basis.reps) subs.push_back(h.elements);
      rep.result = {{"subgroups", subs}, {"marks", io::write_matrix(t.m)}, {"determinant", det.str()}};
      if (format == "csv") rep.csv = io::matrix_csv(t.m);
    };
  });
  auto* product_cmd = burnside->add_subcommand("product", "structure constants of the Burnside ring");
  product_cmd->add_option("--group", group_ref)->required();
  formats(product_cmd);
  product_cmd->callback([&] {
    action = [&] {
      rep.input("group", group_ref);
      auto b = orbit_basis(io::read_group(json(group_ref)));
      const int r = b.size();
      json table = json::array();
      std::string csv;
      bool commutative = true, multiplicative = true;
      std::vector<std::vector<std::vector<int>>> coords(r, std::vector<std::vector<int>>(r));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          auto p = burnside_product(b.orbits[i], b.orbits[j]);
          coords[i][j] = p.coords;
          auto mi = marks(b.orbits[i]), mj = marks(b.orbits[j]), mp = marks(p.product);
          for (int k = 0; k < r; ++k) multiplicative = multiplicative && mp[k] == mi[k] * mj[k];
          table.push_back({{"left", i}, {"right", j}, {"coords", p.coords}});
          csv += std::to_string(i) + "," + std::to_string(j);
          for (int c : p.coords) csv += "," + std::to_string(c);
          csv += '\n';
        }
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) commutative = commutative && coords[i][j] == coords[j][i];
      rep.clause("commutative", commutative);
      rep.clause("marks-multiply", multiplicative);
      json subs = json::array();
      for (const auto& h : b.reps) subs.push_back(h.elements);
      rep.result = {{"subgroups", subs}, {"products", table}};
      if (format == "csv") rep.csv = csv;
    };
  });

  // mackey
  auto* mackey = app.add_subcommand("mackey", "Mackey functors")->require_subcommand(1);
  std::string data_ref;
  int mackey_bound = -1;
  auto* mackey_check = mackey->add_subcommand("check", "evaluate(s then t) = evaluate(s) evaluate(t) on atom pairs");
  mackey_check->add_option("--data", data_ref)->required();
  mackey_check->add_option("--bound", mackey_bound, "apex bound per atom (default: none)");
  parallel(mackey_check);
  mackey_check->callback([&] {
    action = [&] {
      rep.input("data", data_ref);
      auto m = io::read_mackey(json(data_ref));
      auto r = check_mackey(m, mackey_bound, jobs);
      json witness = json::array();
      for (std::size_t i = 0; i < r.violations.size() && i < 8; ++i) witness.push_back(violation_json(r.violations[i]));
      rep.clause("mackey-axiom", r.ok(), r.ok() ? json(nullptr) : witness);
      rep.result = {{"name", m.name}, {"rank", m.rank}, {"pairs", r.pairs}, {"violations", r.violations.size()}};
    };
  });

  auto* mackey_export = mackey->add_subcommand("export", "Mackey data with every table written out");
  mackey_export->add_option("--data", data_ref)->required();
  mackey_export->callback([&] {
    action = [&] {
      rep.input("data", data_ref);
      rep.result = {{"data", io::write_mackey(io::read_mackey(json(data_ref)))}};
    };
  });

  // duality
  auto* duality = app.add_subcommand("duality", "bisets and pullback-preserving functors")->require_subcommand(1);
  std::string g_ref, h_ref;
  bool nonseparable = false;
  auto* verify = duality->add_subcommand("verify", "check the duality clauses up to a bound");
  verify->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  verify->add_option("--g", g_ref)->required();
  verify->add_option("--h", h_ref)->required();
  verify->add_option("--bound", bound)->required()->check(CLI::NonNegativeNumber);
  verify->add_flag("--include-nonseparable", nonseparable);
  parallel(verify);
  verify->callback([&] {
    action = [&] {
      rep.input("g", g_ref);
      rep.input("h", h_ref);
      auto d = verify_duality(io::read_group(json(g_ref)), io::read_group(json(h_ref)), bound, nonseparable, jobs);
      for (const auto& c : d.checks) rep.clause(c.clause + " " + c.subject, c.pass, json{{"detail", c.detail}});
      rep.result = {{"bound", d.bound},
                    {"corpusBound", d.corpus_bound},
                    {"corpusObjects", d.corpus_objects},
                    {"corpusArrows", d.corpus_arrows},
                    {"checks", d.checks.size()}};
      if (d.counterexample) rep.result["counterexample"] = counterexample_json(d);
    };
  });

  // global
  auto* global = app.add_subcommand("global", "groupoids and global spans")->require_subcommand(1);
  auto* global_compose = global->add_subcommand("compose", "strict pullback composite, first then second");
  global_compose->add_option("first", first_ref)->required();
  global_compose->add_option("second", second_ref)->required();
  global_compose->callback([&] {
    action = [&] {
      rep.input("first", first_ref);
      rep.input("second", second_ref);
      auto s = io::read_global_span(json(first_ref));
      auto t = io::read_global_span(json(second_ref));
      auto st = compose_global_spans(s, t);
      rep.clause("ingressive-fibration", is_discrete_fibration(st.ingressive).ok);
      rep.result = {{"composite", io::write_global_span(st)}};
    };
  });
  std::string groupoid_ref;
  auto* global_skeleton = global->add_subcommand("skeleton", "components and their automorphism groups");
  global_skeleton->add_option("--groupoid", groupoid_ref)->required();
  global_skeleton->callback([&] {
    action = [&] {
      rep.input("groupoid", groupoid_ref);
      auto g = io::read_groupoid(json(groupoid_ref));
      json entries = json::array();
      for (const auto& e : groupoid_equivalence_skeleton(g))
        entries.push_back({{"objects", e.objects},
                           {"automorphismOrder", e.automorphisms->order()},
                           {"automorphisms", io::write_group(*e.automorphisms)}});
      rep.result = {{"objects", g.objects()}, {"morphisms", g.morphisms()}, {"components", entries}};
    };
  });

  // operad
  auto* operad = app.add_subcommand("operad", "set operads and operadic spans")->require_subcommand(1);
  std::string operad_ref;
  int k = 0;
  auto* operad_check = operad->add_subcommand("check", "validate the operad axioms within the arity bound");
  operad_check->add_option("--operad", operad_ref)->required();
  operad_check->callback([&] {
    action = [&] {
      rep.input("operad", operad_ref);
      try {
        auto o = io::read_operad(json(operad_ref));
        rep.clause("axioms", true);
        std::vector<int> sizes;
        for (int n = 0; n <= o.max_arity(); ++n) sizes.push_back(o.size(n));
        rep.result = {{"name", o.name()}, {"maxArity", o.max_arity()}, {"sizes", sizes}};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::AxiomViolation) throw;
        rep.clause("axioms", false, json{{"detail", e.what()}});
      }
    };
  });
  auto* census = operad->add_subcommand("census", "free algebra elements counted two ways");
  census->add_option("--operad", operad_ref)->required();
  census->add_option("--k", k, "generators")->required()->check(CLI::NonNegativeNumber);
  census->add_option("--bound", bound, "apex bound")->required()->check(CLI::NonNegativeNumber);
  parallel(census);
  census->callback([&] {
    action = [&] {
      rep.input("operad", operad_ref);
      auto o = io::read_operad(json(operad_ref));
      auto rows = free_algebra_census(o, k, bound, jobs);
      json out_rows = json::array();
      long long span_total = 0, formula_total = 0;
      for (const auto& r : rows) {
        rep.clause("census t=" + std::to_string(r.t), r.span_side == r.formula_side,
                   json{{"spanSide", r.span_side}, {"formulaSide", r.formula_side}});
        out_rows.push_back({{"t", r.t}, {"spanSide", r.span_side}, {"formulaSide", r.formula_side}});
        span_total += r.span_side;
        formula_total += r.formula_side;
      }
      rep.result = {{"operad", o.name()}, {"k", k}, {"bound", bound}, {"rows", out_rows},
                    {"spanTotal", span_total}, {"formulaTotal", formula_total}};
    };
  });

  auto emit_error = [&](ErrorCode code, const std::string& cause, const std::string& message) {
    json j{{"command", rep.command},
           {"inputs", rep.inputs},
           {"status", "error"},
           {"error", {{"code", std::string(to_string(code))}, {"cause", cause}, {"message", message}}}};
    out << j.dump(2) << '\n';
    return 2;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    bool unknown = dynamic_cast<const CLI::ExtrasError*>(&e) != nullptr;
    if (dynamic_cast<const CLI::RequiredError*>(&e) && std::string(e.what()).find("subcommand") != std::string::npos)
      unknown = true;
    err << e.what() << '\n';
    return emit_error(unknown ? ErrorCode::UnknownCommand : ErrorCode::MalformedInput, e.get_name(), e.what());
  }

  try {
    action();
  } catch (const Error& e) {
    // Any library error here stems from the inputs or the requested bounds.
    const auto code = e.code() == ErrorCode::UnknownCommand ? ErrorCode::UnknownCommand : ErrorCode::MalformedInput;
    return emit_error(code, std::string(to_string(e.code())), e.what());
  } catch (const std::exception& e) {
    return emit_error(ErrorCode::MalformedInput, "exception", e.what());
  }

  const bool ok = rep.passed();
  json j{{"command", rep.command},
         {"inputs", rep.inputs},
         {"clauses", rep.clauses},
         {"result", rep.result},
         {"status", ok ? "pass" : "fail"}};
  if (rep.csv) {
    out << *rep.csv;
    err << j.dump(2) << '\n';
  } else {
    out << j.dump(2) << '\n';
  }
  return ok ? 0 : 1;
}

}  // namespace gspan::cli
