// octa-cli: JSON-emitting front end.
//   exit 0 on success, 1 on verification failure or library error, 2 on usage error

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance_suite.hpp"
#include "octa/normal_form.hpp"

using namespace octa;
using nlohmann::json;

namespace {

constexpr int kSchema = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int g_indent = 2;

void emit(const std::string& command, json body) {
  json out{{"schema", kSchema}, {"command", command}};
  for (auto& [k, v] : body.items()) out[k] = v;
  std::cout << out.dump(g_indent) << "\n";
}

const char* kSchemaHelp =
    "octa-cli <command> [options]\n"
    "commands:\n"
    "  lattice  --enumerate roots|exceptional|sixers|double_sixes|trios|triad_pairs|weyl|twisted_cubics\n"
    "  gen      --field <spec> --seed <u64>            surface from six random points\n"
    "  lines    --in <surface.json>                    rational lines\n"
    "           (every --in command also takes --over <spec> to base-change the surface)\n"
    "  mark     --in <surface.json>                    marking and incidence\n"
    "  eckardt  --in <surface.json>                    Eckardt points of a split surface\n"
    "  reduce   --in <surface.json> --pair <k> --ordering <o> [--cube-root <c>]\n"
    "  params   --in <surface.json> [--threads <n>]    all octanomial parameters\n"
    "  classify --in <surface.json>                    automorphisms by Weyl class\n"
    "  stratum  --label <L> (--field <spec> | --char <p>) --seed <u64>\n"
    "  check-all --char 0-equivalent                   the acceptance suite\n"
    "global: --json-indent <n>, --cache-dir <dir>\n"
    "surface.json: {\"field\": spec, \"degree\": 3, \"coeffs\": [...]} or {\"surface\": {...}}\n";

HomForm read_surface(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(path + " is not JSON: " + e.what());
  }
  if (j.contains("surface")) j = j["surface"];
  try {
    HomForm f = HomForm::from_json(j);
    if (f.degree() != 3) throw UsageError(path + " does not hold a cubic form");
    return f;
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json lines_json(const std::vector<ProjLine>& lines) {
  json a = json::array();
  for (const auto& l : lines) a.push_back(l.to_json());
  return a;
}

// lattice ------------------------------------------------------------------
int cmd_lattice(const std::string& what) {
  json items = json::array();
  auto vec = [](const e6::Vec7& v) { return json(std::vector<int>(v.begin(), v.end())); };
  auto labels = [](const auto& idx) {
    json a = json::array();
    for (int i : idx) a.push_back(e6::label(i));
    return a;
  };
  if (what == "roots") {
    for (const auto& r : e6::roots()) items.push_back(vec(r));
  } else if (what == "exceptional") {
    for (int i = 0; i < 27; ++i) items.push_back({{"label", e6::label(i)}, {"vector", vec(e6::exceptional_vectors()[i])}});
  } else if (what == "sixers") {
    for (const auto& s : e6::sixers()) items.push_back(labels(s));
  } else if (what == "double_sixes") {
    for (const auto& d : e6::double_sixes()) items.push_back({labels(d[0]), labels(d[1])});
  } else if (what == "trios") {
    for (const auto& t : e6::tritangent_trios()) items.push_back(labels(t));
  } else if (what == "triad_pairs") {
    for (const auto& t : e6::triad_pairs()) items.push_back({labels(t[0]), labels(t[1]), labels(t[2])});
  } else if (what == "weyl") {
    const auto& W = e6::WeylGroup::instance();
    for (std::size_t c = 0; c < W.class_count(); ++c) {
      const auto& s = W.class_signature(static_cast<int>(c));
      items.push_back({{"class", c},
                       {"label", s.label ? json(*s.label) : json()},
                       {"size", W.class_size(static_cast<int>(c))},
                       {"order", s.order},
                       {"cycle_type", s.cycle_string()}});
    }
    emit("lattice", {{"enumerate", what}, {"order", W.size()}, {"count", W.class_count()}, {"items", items}});
    return 0;
  } else if (what == "twisted_cubics") {
    bool ok = true;
    for (const auto& r : e6::twisted_cubic_check()) {
      ok = ok && r.class_plus_k_ok && r.found_count == r.stated_count;
      items.push_back({{"row", r.name}, {"cubic_class", vec(r.cubic_class)}, {"stated_root", vec(r.stated_root)},
                       {"stated_count", r.stated_count}, {"found_count", r.found_count}, {"c_plus_k", r.class_plus_k_ok}});
    }
    emit("lattice", {{"enumerate", what}, {"count", items.size()}, {"items", items}, {"pass", ok}});
    return ok ? 0 : 1;
  } else {
    throw UsageError("unknown enumeration " + what);
  }
  emit("lattice", {{"enumerate", what}, {"count", items.size()}, {"items", items}});
  return 0;
}

// surfaces -----------------------------------------------------------------
int cmd_gen(const std::string& field, std::uint64_t seed) {
  Field f = Field::parse(field);
  auto pts = random_six_points(f, seed);
  auto sp = from_six_points(f, pts);
  json pj = json::array();
  for (const auto& p : pts) pj.push_back({p[0].to_string(), p[1].to_string(), p[2].to_string()});
  json ex = json::array();
  for (const auto& l : sp.exceptional) ex.push_back(l.to_json());
  emit("gen", {{"field", f.spec().to_string()}, {"seed", seed}, {"points", pj}, {"surface", sp.f.to_json()}, {"exceptional", ex}});
  return 0;
}

int cmd_lines(const HomForm& f) {
  auto lines = lines_on(f);
  emit("lines", {{"field", f.field().spec().to_string()}, {"count", lines.size()}, {"lines", lines_json(lines)}});
  return 0;
}

int cmd_mark(const HomForm& f) {
  auto s = split_surface(f);
  auto inc = s.marking.incidence();
  json rows = json::array();
  for (const auto& r : inc) rows.push_back(std::vector<int>(r.begin(), r.end()));
  json labels = json::array();
  for (int i = 0; i < 27; ++i) labels.push_back(e6::label(i));
  bool ok = s.marking.verify();
  emit("mark", {{"field", f.field().spec().to_string()}, {"count", 27}, {"marking", s.marking.to_json()}, {"labels", labels},
                {"incidence", rows}, {"tritangent_planes", s.planes.size()}, {"pass", ok}});
  return ok ? 0 : 1;
}

int cmd_eckardt(const HomForm& f) {
  auto s = split_surface(f);
  json pts = json::array();
  for (const auto& e : eckardt_points(s.marking))
    pts.push_back({{"point", point_to_json(e.point)},
                   {"trio", {e6::label(e.trio[0]), e6::label(e.trio[1]), e6::label(e.trio[2])}}});
  emit("eckardt", {{"field", f.field().spec().to_string()}, {"count", pts.size()}, {"points", pts}});
  return 0;
}

int cmd_reduce(const HomForm& f, int pair, int ordering, int cube_root) {
  if (pair < 0 || pair >= 120) throw UsageError("--pair must be in 0..119");
  if (ordering < 0 || ordering >= Ordering::count) throw UsageError("--ordering must be in 0..71");
  auto s = split_surface(f);
  auto red = octanomial_reduce(s.f, s.marking, e6::triad_pairs()[pair], Ordering::from_index(ordering),
                               static_cast<std::size_t>(cube_root));
  bool id = s.f.substitute(red.T.inverse()) == octanomial_surface(red.params) * red.scalar;
  json body = red.to_json();
  body["pair"] = pair;
  body["ordering"] = ordering;
  body["identity"] = id;
  emit("reduce", body);
  return id ? 0 : 1;
}

int cmd_params(const HomForm& f, unsigned threads) {
  auto s = split_surface(f);
  auto en = enumerate_octanomial_params(s.f, s.marking, false, threads);
  auto aut = automorphism_group(s.f, s.marking).size();
  json ps = json::array();
  for (const auto& p : en.params) ps.push_back(p.to_json());
  std::size_t expect = f.field().characteristic() == 3 ? 8640 : 25920;
  emit("params", {{"field", f.field().spec().to_string()}, {"count", en.params.size()}, {"reductions", en.reductions},
                  {"aut", aut}, {"product", en.params.size() * aut}, {"expected_product", expect}, {"params", ps}});
  return 0;
}

int cmd_classify(const HomForm& f) {
  auto s = split_surface(f);
  auto aut = automorphism_group(s.f, s.marking);
  const auto& W = e6::WeylGroup::instance();
  std::map<std::string, int> counts;
  json elems = json::array();
  for (const auto& a : aut) {
    auto l = W.label_of(a.perm);
    std::string name = l ? *l : "class " + std::to_string(W.class_of(a.perm));
    ++counts[name];
    elems.push_back({{"matrix", a.matrix.to_json()}, {"weyl_class", name}, {"order", e6::order(a.perm)}});
  }
  emit("classify", {{"field", f.field().spec().to_string()}, {"aut", aut.size()}, {"classes", counts}, {"elements", elems}});
  return 0;
}

int cmd_stratum(const std::string& label, const std::string& field, const std::string& chr, std::uint64_t seed) {
  if (field.empty() == chr.empty()) throw UsageError("stratum needs exactly one of --field and --char");
  StratumInstance inst;
  std::uint64_t p;
  if (!field.empty()) {
    Field f = Field::parse(field);
    p = f.characteristic();
    inst = stratum_params(label, f, {}, seed);
  } else {
    try {
      p = std::stoull(chr);
    } catch (const std::exception&) {
      throw UsageError("--char must be a prime");
    }
    inst = find_stratum_instance(label, p, seed);
  }
  auto rep = verify_stratum(inst);
  json body = rep.to_json();
  body["requirements"] = stratum_requirements(label, p);
  body["seed"] = seed;
  emit("stratum", body);
  return rep.pass() ? 0 : 1;
}

int cmd_check_all(const std::string& chr) {
  if (chr != "0-equivalent") throw UsageError("check-all takes --char 0-equivalent");
  json rows = json::array();
  bool ok = true;
  for (const auto& r : acceptance::run_all()) {
    ok = ok && r.pass;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}, {"data", r.data}});
  }
  emit("check-all", {{"char", chr}, {"criteria", rows}, {"pass", ok}});
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"octanomial normal forms of cubic surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string cache_dir;
  app.add_option("--json-indent", g_indent, "JSON indentation (-1 for one line)");
  app.add_option("--cache-dir", cache_dir, "Weyl group cache directory");

  std::string what, field, in, over, label, chr;
  std::uint64_t seed = 0;
  int pair = 0, ordering = 0, cube_root = 0;
  unsigned threads = 0;

  auto* lattice = app.add_subcommand("lattice", "lattice enumerations");
  lattice->add_option("--enumerate", what, "what to enumerate")->required();
  auto* gen = app.add_subcommand("gen", "surface from six seeded points");
  gen->add_option("--field", field)->required();
  gen->add_option("--seed", seed)->required();
  std::map<std::string, CLI::App*> on_surface;
  for (const char* name : {"lines", "mark", "eckardt", "reduce", "params", "classify"}) {
    auto* c = app.add_subcommand(name);
    c->add_option("--in", in, "surface JSON file")->required();
    c->add_option("--over", over, "base-change the surface into this field first");
    on_surface[name] = c;
  }
  on_surface["lines"]->description("rational lines");
  on_surface["mark"]->description("marking and incidence matrix");
  on_surface["eckardt"]->description("Eckardt points");
  on_surface["reduce"]->description("reduce to the octanomial form");
  on_surface["params"]->description("all octanomial parameters");
  on_surface["classify"]->description("automorphisms by Weyl class");
  on_surface["reduce"]->add_option("--pair", pair)->required();
  on_surface["reduce"]->add_option("--ordering", ordering)->required();
  on_surface["reduce"]->add_option("--cube-root", cube_root);
  on_surface["params"]->add_option("--threads", threads);
  auto* stratum = app.add_subcommand("stratum", "verify a stratum normal form");
  stratum->add_option("--label", label)->required();
  stratum->add_option("--field", field);
  stratum->add_option("--char", chr);
  stratum->add_option("--seed", seed)->required();
  auto* check = app.add_subcommand("check-all", "run the acceptance suite");
  check->add_option("--char", chr)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << kSchemaHelp;
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << kSchemaHelp;
    return 2;
  }
  if (!cache_dir.empty()) e6::WeylGroup::set_cache_dir(cache_dir);

  std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "lattice") return cmd_lattice(what);
    if (name == "gen") return cmd_gen(field, seed);
    if (name == "stratum") return cmd_stratum(label, field, chr, seed);
    if (name == "check-all") return cmd_check_all(chr);
    HomForm f = read_surface(in);
    if (!over.empty()) f = embed(Embedding(f.field(), Field::parse(over)), f);
    if (name == "lines") return cmd_lines(f);
    if (name == "mark") return cmd_mark(f);
    if (name == "eckardt") return cmd_eckardt(f);
    if (name == "reduce") return cmd_reduce(f, pair, ordering, cube_root);
    if (name == "params") return cmd_params(f, threads);
    if (name == "classify") return cmd_classify(f);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n" << kSchemaHelp;
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse_error) {
      std::cerr << e.what() << "\n" << kSchemaHelp;
      return 2;
    }
    emit(name, {{"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}, {"pass", false}});
    return 1;
  }
  return 2;
}
