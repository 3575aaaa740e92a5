#include "gstruct/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "gstruct/expr.hpp"

namespace gs {

using nlohmann::json;

namespace {

std::string raw_to_string(const RawPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    if (c == 0) continue;
    std::string mono;
    for (const auto& [name, e] : m) {
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (e > 1) mono += "^" + std::to_string(e);
    }
    Rational a = abs(c);
    out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    first = false;
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return first ? "0" : out;
}

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) throw IoError(path, "missing key '" + key + "'");
  return obj.at(key);
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw IoError(path, "expected a string");
  return j.get<std::string>();
}

RawPoly expression(const json& j, const std::set<std::string>& names, const std::string& path) {
  std::string text;
  if (j.is_number_integer()) {
    text = std::to_string(j.get<long long>());
  } else {
    text = as_string(j, path);
  }
  RawPoly p;
  try {
    p = parse_raw(text);
  } catch (const ParseError& e) {
    throw IoError(path, std::string("bad expression '") + text + "': " + e.what());
  }
  for (const auto& [m, c] : p) {
    for (const auto& [g, e] : m) {
      if (!names.count(g)) throw IoError(path, "unknown generator '" + g + "'");
    }
  }
  return p;
}

std::set<std::string> ring_names(const RingPtr& r) {
  std::set<std::string> s;
  for (const auto& g : r->specs()) s.insert(g.name);
  return s;
}

std::vector<std::string> coframe_names(const std::vector<std::string>& coframe, const json& idx,
                                       std::size_t degree, const std::string& path) {
  if (!idx.is_array()) throw IoError(path, "indices must be an array");
  if (idx.size() != degree)
    throw IoError(path, "expected " + std::to_string(degree) + " indices, got " + std::to_string(idx.size()));
  std::vector<std::string> out;
  std::set<long long> seen;
  for (const auto& i : idx) {
    if (!i.is_number_integer()) throw IoError(path, "indices must be integers");
    long long k = i.get<long long>();
    if (k < 1 || k > static_cast<long long>(coframe.size()))
      throw IoError(path, "index " + std::to_string(k) + " out of range 1.." + std::to_string(coframe.size()));
    if (!seen.insert(k).second) throw IoError(path, "repeated index " + std::to_string(k));
    out.push_back(coframe[k - 1]);
  }
  return out;
}

RawForm raw_form(const std::vector<std::string>& coframe, const std::set<std::string>& gens,
                 const json& terms, std::size_t degree, const std::string& path) {
  if (!terms.is_array()) throw IoError(path, "a form is a list of {coeff, indices} terms");
  RawForm out;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    std::string p = path + "[" + std::to_string(t) + "]";
    const json& term = terms[t];
    RawFormTerm rt;
    rt.coeff = expression(member(term, "coeff", p), gens, p + ".coeff");
    rt.coframe = coframe_names(coframe, member(term, "indices", p), degree, p + ".indices");
    out.push_back(std::move(rt));
  }
  return out;
}

// "g^k = rhs", "g = rhs" or "g*h = 1" (inverse pair).
GeneratorSpec relation_spec(const std::string& name, const std::string& text,
                            const std::set<std::string>& names, const std::string& path) {
  std::pair<std::string, std::string> sides;
  try {
    sides = split_relation(text);
  } catch (const ParseError& e) {
    throw IoError(path, e.what());
  }
  RawPoly lhs;
  try {
    lhs = parse_raw(sides.first);
  } catch (const ParseError& e) {
    throw IoError(path, std::string("bad left-hand side: ") + e.what());
  }
  if (lhs.size() != 1 || lhs.begin()->second != 1)
    throw IoError(path, "left-hand side must be a generator power or a product of two generators");
  const NameMonomial& m = lhs.begin()->first;
  GeneratorSpec g{name, 0, {}, {}, {}};
  if (m.size() == 1 && m.begin()->first == name) {
    g.power = m.begin()->second;
    g.replacement = expression(sides.second, names, path);
    return g;
  }
  if (m.size() == 2 && m.count(name) && m.at(name) == 1) {
    std::string other;
    for (const auto& [n, e] : m) {
      if (n != name) other = n;
      if (e != 1) throw IoError(path, "inverse relations have the form g*h = 1");
    }
    if (expression(sides.second, names, path) != raw_constant(1))
      throw IoError(path, "inverse relations have the form g*h = 1");
    if (!names.count(other)) throw IoError(path, "unknown generator '" + other + "'");
    g.inverse_of = other;
    return g;
  }
  throw IoError(path, "relation must rewrite a power of '" + name + "'");
}

std::string spec_relation(const GeneratorSpec& g) {
  if (!g.inverse_of.empty()) return g.name + "*" + g.inverse_of + " = 1";
  std::string lhs = g.power == 1 ? g.name : g.name + "^" + std::to_string(g.power);
  return lhs + " = " + raw_to_string(g.replacement);
}

json locus_to_json(const Locus& l) {
  json out = json::object();
  json cons = json::array();
  for (const auto& c : l.constraints()) cons.push_back(form_to_json(c));
  out["constraints"] = cons;
  json rules = json::array();
  for (const auto& r : l.rules()) rules.push_back(spec_relation(r));
  out["rules"] = rules;
  json clear = json::array();
  for (const auto& c : l.clearing())
    clear.push_back({{"inverse", c.inverse}, {"unit", c.unit}, {"value", raw_to_string(c.value)}});
  out["clearing"] = clear;
  return out;
}

const std::vector<std::string>& form_names(const std::string& kind) {
  static const std::map<std::string, std::vector<std::string>> names = {
      {"su2", {"eta", "omega1", "omega2", "omega3"}},
      {"su3", {"F", "psi_plus", "psi_minus"}},
      {"g2", {"phi", "star_phi"}},
  };
  auto it = names.find(kind);
  if (it == names.end()) throw IoError("structure.kind", "unknown kind '" + kind + "' (su2, su3, g2)");
  return it->second;
}

int form_degree(const std::string& name) {
  if (name == "eta") return 1;
  if (name == "phi" || name == "psi_plus" || name == "psi_minus") return 3;
  if (name == "star_phi") return 4;
  return 2;
}

}  // namespace

const FramePtr& structure_frame(const AnyStructure& s) {
  return std::visit([](const auto& x) -> const FramePtr& { return x.frame; }, s);
}

const LocusPtr& structure_locus(const AnyStructure& s) {
  return std::visit([](const auto& x) -> const LocusPtr& { return x.locus; }, s);
}

std::string structure_kind(const AnyStructure& s) {
  switch (s.index()) {
    case 0: return "su2";
    case 1: return "su3";
    default: return "g2";
  }
}

std::vector<std::pair<std::string, Form>> structure_forms(const AnyStructure& s) {
  if (auto* a = std::get_if<SU2Structure>(&s))
    return {{"eta", a->eta}, {"omega1", a->omega1}, {"omega2", a->omega2}, {"omega3", a->omega3}};
  if (auto* b = std::get_if<SU3Structure>(&s))
    return {{"F", b->F}, {"psi_plus", b->psi_plus}, {"psi_minus", b->psi_minus}};
  const auto& c = std::get<G2Structure>(s);
  return {{"phi", c.phi}, {"star_phi", c.star_phi}};
}

json form_to_json(const Form& a) {
  json out = json::array();
  for (const auto& [m, c] : a.terms()) {
    json idx = json::array();
    for (int i : mask_indices(m)) idx.push_back(i + 1);
    out.push_back({{"coeff", c.to_string()}, {"indices", idx}});
  }
  return out;
}

Form form_from_json(const FramePtr& frame, const json& terms, int degree, const std::string& path) {
  return frame->from_raw(raw_form(frame->names(), ring_names(frame->ring()), terms, degree, path), degree);
}

StructureFile structure_from_json(const json& doc) {
  if (!doc.is_object()) throw IoError("", "document must be a JSON object");

  // Ring.
  const json& jring = member(doc, "ring", "");
  const json& jgens = member(jring, "generators", "ring");
  if (!jgens.is_array()) throw IoError("ring.generators", "expected an array");
  std::set<std::string> names;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < jgens.size(); ++i) {
    std::string p = "ring.generators[" + std::to_string(i) + "]";
    std::string n = as_string(member(jgens[i], "name", p), p + ".name");
    if (!names.insert(n).second) throw IoError(p, "duplicate generator '" + n + "'");
    order.push_back(n);
  }
  std::vector<std::string> derivations;
  if (jring.contains("derivations")) derivations = jring.at("derivations").get<std::vector<std::string>>();
  std::vector<GeneratorSpec> specs;
  for (std::size_t i = 0; i < jgens.size(); ++i) {
    std::string p = "ring.generators[" + std::to_string(i) + "]";
    const json& g = jgens[i];
    GeneratorSpec s{order[i], 0, {}, {}, {}};
    if (g.contains("relation")) s = relation_spec(order[i], as_string(g.at("relation"), p + ".relation"), names, p + ".relation");
    if (g.contains("inverse_of")) {
      s.inverse_of = as_string(g.at("inverse_of"), p + ".inverse_of");
      if (!names.count(s.inverse_of)) throw IoError(p + ".inverse_of", "unknown generator '" + s.inverse_of + "'");
    }
    if (g.contains("derivations")) {
      for (const auto& [dn, v] : g.at("derivations").items()) {
        s.derivations[dn] = expression(v, names, p + ".derivations." + dn);
        if (std::find(derivations.begin(), derivations.end(), dn) == derivations.end()) derivations.push_back(dn);
      }
    }
    specs.push_back(std::move(s));
  }
  RingPtr ring = Ring::create(specs, derivations);

  // Frame.
  FrameSpec fs;
  fs.ring = ring;
  const json& jcof = member(doc, "coframe", "");
  fs.coframe = member(jcof, "names", "coframe").get<std::vector<std::string>>();
  {
    std::set<std::string> seen;
    for (const auto& n : fs.coframe) {
      if (!seen.insert(n).second) throw IoError("coframe.names", "duplicate coframe element '" + n + "'");
      if (names.count(n)) throw IoError("coframe.names", "'" + n + "' is also a generator");
    }
  }
  const bool lie = doc.contains("structure_constants");
  if (jcof.contains("d")) {
    if (lie) throw IoError("coframe.d", "give either coframe.d or structure_constants");
    for (const auto& [n, terms] : jcof.at("d").items()) {
      if (std::find(fs.coframe.begin(), fs.coframe.end(), n) == fs.coframe.end())
        throw IoError("coframe.d", "unknown coframe element '" + n + "'");
      fs.d_coframe[n] = raw_form(fs.coframe, names, terms, 2, "coframe.d." + n);
    }
  }
  if (lie) {
    const json& sc = doc.at("structure_constants");
    if (!sc.is_array()) throw IoError("structure_constants", "expected an array");
    for (std::size_t i = 0; i < sc.size(); ++i) {
      std::string p = "structure_constants[" + std::to_string(i) + "]";
      auto upper = coframe_names(fs.coframe, json::array({member(sc[i], "upper", p)}), 1, p + ".upper");
      RawFormTerm t;
      t.coeff = expression(member(sc[i], "value", p), names, p + ".value");
      t.coframe = coframe_names(fs.coframe, member(sc[i], "lower", p), 2, p + ".lower");
      fs.d_coframe[upper[0]].push_back(std::move(t));
    }
  }
  if (jcof.contains("orientation")) fs.orientation = jcof.at("orientation").get<std::vector<std::string>>();
  for (std::size_t i = 0; i < jgens.size(); ++i) {
    const json& g = jgens[i];
    if (g.contains("d")) {
      fs.d_generators[order[i]] =
          raw_form(fs.coframe, names, g.at("d"), 1, "ring.generators[" + std::to_string(i) + "].d");
    } else if (lie) {
      fs.d_generators[order[i]] = {};
    }
  }
  FramePtr frame = DifferentialFrame::create(std::move(fs));

  // Locus.
  LocusPtr locus;
  if (doc.contains("locus")) {
    const json& jl = doc.at("locus");
    std::vector<Form> cons;
    std::vector<GeneratorSpec> rules;
    std::vector<ClearingSpec> clearing;
    const json* jc = &jl;
    if (jl.is_object()) {
      jc = jl.contains("constraints") ? &jl.at("constraints") : nullptr;
      if (jl.contains("rules")) {
        const json& jr = jl.at("rules");
        for (std::size_t i = 0; i < jr.size(); ++i) {
          std::string p = "locus.rules[" + std::to_string(i) + "]";
          std::string text = as_string(jr[i], p);
          std::string lhs = split_relation(text).first;
          RawPoly l;
          try {
            l = parse_raw(lhs);
          } catch (const ParseError& e) {
            throw IoError(p, e.what());
          }
          if (l.size() != 1 || l.begin()->first.size() != 1) throw IoError(p, "left-hand side must be a generator power");
          rules.push_back(relation_spec(l.begin()->first.begin()->first, text, names, p));
        }
      }
      if (jl.contains("clearing")) {
        const json& jr = jl.at("clearing");
        for (std::size_t i = 0; i < jr.size(); ++i) {
          std::string p = "locus.clearing[" + std::to_string(i) + "]";
          clearing.push_back(ClearingSpec{as_string(member(jr[i], "inverse", p), p + ".inverse"),
                                          as_string(member(jr[i], "unit", p), p + ".unit"),
                                          expression(member(jr[i], "value", p), names, p + ".value")});
        }
      }
    }
    if (jc) {
      if (!jc->is_array()) throw IoError("locus", "constraints must be a list of 1-forms");
      for (std::size_t i = 0; i < jc->size(); ++i)
        cons.push_back(form_from_json(frame, (*jc)[i], 1, "locus.constraints[" + std::to_string(i) + "]"));
    }
    locus = std::make_shared<Locus>(frame, cons, rules, clearing);
  }

  // Structure.
  StructureFile out;
  if (doc.contains("name")) out.name = as_string(doc.at("name"), "name");
  const json& js = member(doc, "structure", "");
  std::string kind = as_string(member(js, "kind", "structure"), "structure.kind");
  const json& jf = member(js, "forms", "structure");
  std::map<std::string, Form> forms;
  for (const auto& n : form_names(kind))
    forms[n] = form_from_json(frame, member(jf, n, "structure.forms"), form_degree(n), "structure.forms." + n);
  for (const auto& [n, v] : jf.items()) {
    if (!forms.count(n)) throw IoError("structure.forms", "unexpected form '" + n + "' for kind " + kind);
  }
  if (kind == "su2") {
    out.structure = SU2Structure{frame, forms["eta"], forms["omega1"], forms["omega2"], forms["omega3"], locus};
  } else if (kind == "su3") {
    out.structure = SU3Structure{frame, forms["F"], forms["psi_plus"], forms["psi_minus"], locus};
  } else {
    out.structure = G2Structure{frame, forms["phi"], forms["star_phi"], locus};
  }

  if (doc.contains("metric")) {
    const json& jm = doc.at("metric");
    const int n = frame->dim();
    if (!jm.is_array() || static_cast<int>(jm.size()) != n) throw IoError("metric", "expected an n x n matrix");
    std::vector<std::vector<RingElement>> m(n);
    for (int i = 0; i < n; ++i) {
      if (!jm[i].is_array() || static_cast<int>(jm[i].size()) != n) throw IoError("metric", "expected an n x n matrix");
      for (int j = 0; j < n; ++j)
        m[i].push_back(ring->from_raw(expression(jm[i][j], names, "metric[" + std::to_string(i) + "][" + std::to_string(j) + "]")));
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j)
        if (m[i][j] != m[j][i]) throw IoError("metric", "matrix is not symmetric");
    out.metric = BilinearForm(frame, std::move(m));
  }

  if (doc.contains("family")) {
    const json& fam = doc.at("family");
    if (fam.is_string()) {
      out.derivation = fam.get<std::string>();
    } else {
      out.derivation = as_string(member(fam, "derivation", "family"), "family.derivation");
      if (fam.contains("evolution")) {
        try {
          out.evolution = parse_evolution(as_string(fam.at("evolution"), "family.evolution"));
        } catch (const LiftError& e) {
          throw IoError("family.evolution", e.what());
        }
      }
    }
    if (!ring->has_derivation(out.derivation))
      throw IoError("family.derivation", "ring declares no derivation '" + out.derivation + "'");
  }
  if (doc.contains("expect")) {
    for (const auto& [k, v] : doc.at("expect").items()) {
      if (!v.is_boolean()) throw IoError("expect." + k, "expected true or false");
      out.expect[k] = v.get<bool>();
    }
  }
  if (doc.contains("assumptions")) out.assumptions = as_string(doc.at("assumptions"), "assumptions");
  return out;
}

StructureFile read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path, e.what());
  }
  try {
    return structure_from_json(doc);
  } catch (const json::exception& e) {
    throw IoError(path, e.what());
  }
}

json structure_to_json(const StructureFile& f) {
  const FramePtr& frame = structure_frame(f.structure);
  const RingPtr& ring = frame->ring();
  json doc = json::object();
  if (!f.name.empty()) doc["name"] = f.name;

  json gens = json::array();
  for (std::size_t i = 0; i < ring->size(); ++i) {
    const GeneratorSpec& s = ring->specs()[i];
    json g = {{"name", s.name}};
    if (s.power > 0) g["relation"] = spec_relation(s);
    if (!s.inverse_of.empty()) g["inverse_of"] = s.inverse_of;
    if (!s.derivations.empty()) {
      json dj = json::object();
      for (const auto& [dn, v] : s.derivations) dj[dn] = raw_to_string(v);
      g["derivations"] = dj;
    }
    if (auto dg = frame->d_generator(i)) g["d"] = form_to_json(*dg);
    gens.push_back(std::move(g));
  }
  doc["ring"] = {{"generators", gens}, {"derivations", ring->derivation_names()}};

  json cof = {{"names", frame->names()}};
  json dcof = json::object();
  for (int i = 0; i < frame->dim(); ++i) {
    Form de = frame->d_coframe(i);
    if (!de.is_zero()) dcof[frame->name(i)] = form_to_json(de);
  }
  cof["d"] = dcof;
  if (frame->spec().orientation) cof["orientation"] = *frame->spec().orientation;
  doc["coframe"] = cof;

  if (const auto& l = structure_locus(f.structure)) doc["locus"] = locus_to_json(*l);
  json forms = json::object();
  for (const auto& [n, a] : structure_forms(f.structure)) forms[n] = form_to_json(a);
  doc["structure"] = {{"kind", structure_kind(f.structure)}, {"forms", forms}};

  if (f.metric) {
    json m = json::array();
    for (int i = 0; i < frame->dim(); ++i) {
      json row = json::array();
      for (int j = 0; j < frame->dim(); ++j) row.push_back(f.metric->at(i, j).to_string());
      m.push_back(row);
    }
    doc["metric"] = m;
  }
  if (!f.derivation.empty()) {
    json fam = {{"derivation", f.derivation}};
    if (f.evolution) fam["evolution"] = evolution_name(*f.evolution);
    doc["family"] = fam;
  }
  if (!f.expect.empty()) doc["expect"] = f.expect;
  if (!f.assumptions.empty()) doc["assumptions"] = f.assumptions;
  return doc;
}

void write_structure_file(const StructureFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot write file");
  out << structure_to_json(f).dump(2) << "\n";
}

StructureFile from_catalog(const CatalogEntry& e) {
  StructureFile f;
  f.name = e.name;
  f.structure = e.structure;
  f.metric = e.metric;
  f.derivation = e.derivation;
  f.evolution = e.evolution;
  f.expect = e.expected;
  f.assumptions = e.assumptions;
  return f;
}

}  // namespace gs
