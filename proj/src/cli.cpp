#include "gstruct/cli.hpp"

#include <cstdlib>
#include <future>
#include <iostream>

#include "CLI11.hpp"
#include "gstruct/expr.hpp"
#include "gstruct/io.hpp"

namespace gs {

using nlohmann::json;

int thread_count() {
  const char* v = std::getenv("GSTRUCT_THREADS");
  if (!v) return 1;
  int n = std::atoi(v);
  return n > 0 ? n : 1;
}

namespace {

template <typename A, typename B>
CheckReport run_pair(A a, B b) {
  if (thread_count() > 1) {
    auto fa = std::async(std::launch::async, a);
    CheckReport rb = b();
    CheckReport ra = fa.get();
    ra.merge(rb);
    return ra;
  }
  CheckReport ra = a();
  ra.merge(b());
  return ra;
}

CheckReport check_any(const AnyStructure& s) {
  if (auto* a = std::get_if<SU2Structure>(&s))
    return run_pair([a] { return check_su2_compatibility(*a); }, [a] { return classify_su2(*a); });
  if (auto* b = std::get_if<SU3Structure>(&s))
    return run_pair([b] { return check_su3_compatibility(*b); }, [b] { return classify_su3(*b); });
  return check_structure(s);
}

struct ExpectResult {
  json detail = json::object();
  bool ok = true;
};

ExpectResult compare_expectations(const std::map<std::string, bool>& expect, const CheckReport& r) {
  ExpectResult out;
  for (const auto& [k, v] : expect) {
    json e = {{"expected", v}};
    bool ok = false;
    if (r.has_flag(k)) {
      e["actual"] = r.flag(k);
      ok = r.flag(k) == v;
    } else {
      e["actual"] = nullptr;
    }
    e["ok"] = ok;
    out.ok = out.ok && ok;
    out.detail[k] = e;
  }
  return out;
}

void print_expectations(std::ostream& out, const ExpectResult& e) {
  for (const auto& [k, v] : e.detail.items()) {
    out << "  expect " << k << " = " << (v["expected"].get<bool>() ? "true" : "false") << ": "
        << (v["ok"].get<bool>() ? "ok" : "MISMATCH") << "\n";
  }
}

int cmd_check(const std::string& path, bool as_json, std::ostream& out) {
  StructureFile f = read_structure_file(path);
  CheckReport r = check_any(f.structure);
  ExpectResult e = compare_expectations(f.expect, r);
  if (as_json) {
    json j = r.to_json();
    j["file"] = path;
    j["kind"] = structure_kind(f.structure);
    if (!f.name.empty()) j["name"] = f.name;
    j["expect"] = e.detail;
    j["passed"] = e.ok;
    out << j.dump(2) << "\n";
  } else {
    out << (f.name.empty() ? path : f.name) << " (" << structure_kind(f.structure) << ")\n";
    out << r.to_text();
    print_expectations(out, e);
  }
  return e.ok ? kExitOk : kExitExpectation;
}

int cmd_lift(const std::string& path, const std::string& kind, const std::string& out_path,
             std::ostream& out, std::ostream& err) {
  StructureFile f = read_structure_file(path);
  StructureFile g;
  const bool su2 = std::holds_alternative<SU2Structure>(f.structure);
  const bool su3 = std::holds_alternative<SU3Structure>(f.structure);
  auto mismatch = [&](const std::string& need) {
    err << "error: lift kind '" << kind << "' needs an " << need << " structure, got "
        << structure_kind(f.structure) << "\n";
    return kExitParse;
  };
  if (kind == "product" || kind == "cone" || kind == "sin-cone-nk") {
    if (!su2) return mismatch("su2");
    const auto& s = std::get<SU2Structure>(f.structure);
    if (kind == "product") g.structure = product_lift(s);
    if (kind == "cone") g.structure = cone_cy(s);
    if (kind == "sin-cone-nk") g.structure = sin_cone_nk(s);
  } else if (kind == "g2" || kind == "sin-cone-g2") {
    if (!su3) return mismatch("su3");
    const auto& s = std::get<SU3Structure>(f.structure);
    g.structure = kind == "g2" ? g2_lift(s) : sin_cone_g2(s);
  } else {
    err << "error: unknown lift kind '" << kind << "' (product, cone, sin-cone-nk, g2, sin-cone-g2)\n";
    return kExitParse;
  }
  if (!f.name.empty()) g.name = f.name + "+" + kind;
  g.assumptions = f.assumptions;
  if (out_path.empty()) {
    out << structure_to_json(g).dump(2) << "\n";
  } else {
    write_structure_file(g, out_path);
  }
  return kExitOk;
}

int cmd_evolve(const std::string& path, const std::string& equations, bool as_json, std::ostream& out,
               std::ostream& err) {
  StructureFile f = read_structure_file(path);
  Evolution kind;
  try {
    kind = parse_evolution(equations);
  } catch (const LiftError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (f.derivation.empty()) {
    err << "error: " << path << " declares no family derivation\n";
    return kExitParse;
  }
  const bool slice5 = kind == Evolution::conti_salamon || kind == Evolution::nearly_hypo;
  TimeFamily fam{f.derivation, SU2Structure{}};
  if (slice5) {
    if (!std::holds_alternative<SU2Structure>(f.structure)) {
      err << "error: " << equations << " evolves su2 structures\n";
      return kExitParse;
    }
    fam.structure = std::get<SU2Structure>(f.structure);
  } else {
    if (!std::holds_alternative<SU3Structure>(f.structure)) {
      err << "error: " << equations << " evolves su3 structures\n";
      return kExitParse;
    }
    fam.structure = std::get<SU3Structure>(f.structure);
  }
  CheckReport r = evolution_residual(fam, kind);
  CheckReport compat = slice5 ? check_su2_compatibility(std::get<SU2Structure>(f.structure))
                              : check_su3_compatibility(std::get<SU3Structure>(f.structure));
  const bool compatible = compat.flag("compatible");
  if (as_json) {
    json j = r.to_json();
    j["file"] = path;
    j["equations"] = evolution_name(kind);
    j["compatible"] = compatible;
    if (!compatible) j["compatibility"] = compat.to_json()["conditions"];
    j["passed"] = r.all_passed();
    out << j.dump(2) << "\n";
  } else {
    out << (f.name.empty() ? path : f.name) << ": " << evolution_name(kind) << " along " << f.derivation << "\n";
    out << r.to_text();
    if (!compatible) {
      out << "  warning: the family is not a compatible structure for generic parameter\n";
      for (const auto& it : compat.items())
        if (!it.verdict) out << "    " << it.condition << ": " << it.residual.to_string() << "\n";
    }
  }
  return r.all_passed() ? kExitOk : kExitExpectation;
}

int cmd_catalog(const std::string& name, const std::string& export_path, bool as_json, std::ostream& out) {
  if (name.empty()) {
    if (!export_path.empty()) throw CatalogError("--export needs --name");
    json list = json::array();
    for (const auto& n : catalog_names()) {
      CatalogEntry e = catalog_entry(n);
      if (as_json) {
        list.push_back({{"name", n}, {"summary", e.summary}, {"expected", e.expected}});
      } else {
        out << n << "  " << e.summary << "\n   ";
        for (const auto& [k, v] : e.expected) out << " " << k << "=" << (v ? "true" : "false");
        out << "\n";
      }
    }
    if (as_json) out << list.dump(2) << "\n";
    return kExitOk;
  }
  CatalogEntry e = catalog_entry(name);
  StructureFile f = from_catalog(e);
  if (!export_path.empty()) {
    write_structure_file(f, export_path);
    return kExitOk;
  }
  if (as_json) {
    out << structure_to_json(f).dump(2) << "\n";
  } else {
    out << e.name << " (" << structure_kind(e.structure) << "): " << e.summary << "\n";
    if (!e.assumptions.empty()) out << "  assumptions: " << e.assumptions << "\n";
    if (!e.derivation.empty()) out << "  family along " << e.derivation << "\n";
    for (const auto& [k, v] : e.expected) out << "  expect " << k << " = " << (v ? "true" : "false") << "\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of SU(2)-, SU(3)- and G2-structures given by differential forms"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string file, kind, out_path, equations, name, export_path;

  auto* check = app.add_subcommand("check", "Run compatibility and classification checks");
  check->add_option("file", file, "Structure file")->required();
  check->add_flag("--json", as_json, "JSON report");

  auto* lift = app.add_subcommand("lift", "Lift a structure to one dimension higher");
  lift->add_option("file", file, "Structure file")->required();
  lift->add_option("--kind", kind, "product, cone, sin-cone-nk, g2 or sin-cone-g2")->required();
  lift->add_option("--out", out_path, "Output file (default: standard output)");

  auto* evolve = app.add_subcommand("evolve-verify", "Check evolution equations for a one-parameter family");
  evolve->add_option("file", file, "Structure file with a family block")->required();
  evolve->add_option("--equations", equations, "cs, nearly-hypo, nhf or hitchin")->required();
  evolve->add_flag("--json", as_json, "JSON report");

  auto* cat = app.add_subcommand("catalog", "List or export built-in examples");
  cat->add_option("--name", name, "Entry name");
  cat->add_option("--export", export_path, "Write the entry as a structure file");
  cat->add_flag("--json", as_json, "JSON output");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*check) return cmd_check(file, as_json, out);
    if (*lift) return cmd_lift(file, kind, out_path, out, err);
    if (*evolve) return cmd_evolve(file, equations, as_json, out, err);
    return cmd_catalog(name, export_path, as_json, out);
  } catch (const IoError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CatalogError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "inconsistent input: " << e.what() << "\n";
    return kExitInconsistent;
  }
}

}  // namespace gs
