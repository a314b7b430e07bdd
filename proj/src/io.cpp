#include "latsp/io.hpp"

#include <filesystem>
#include <fstream>

namespace latsp {

namespace {

void require_kind(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw ParseError("expected a JSON object for kind '" + kind + "'");
  if (j.value("kind", "") != kind)
    throw ParseError("expected kind '" + kind + "', found '" + j.value("kind", "<missing>") + "'");
}

std::vector<std::string> parse_elements(const Json& j) {
  if (!j.contains("elements") || !j["elements"].is_array())
    throw ParseError("missing 'elements' array");
  std::vector<std::string> names;
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw ParseError("'elements' entries must be strings");
    names.push_back(e.get<std::string>());
  }
  if (names.empty()) throw ParseError("'elements' must be nonempty");
  return names;
}

int name_index(const std::vector<std::string>& names, const std::string& s) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == s) return static_cast<int>(i);
  throw ParseError("unknown element name '" + s + "'");
}

// "covers" (closed transitively on load) or "leq" (taken as given pairs,
// then closed reflexively-transitively as well).
Relation parse_relation(const Json& j, const std::vector<std::string>& names) {
  const char* key = j.contains("covers") ? "covers" : "leq";
  if (!j.contains(key)) throw ParseError("missing 'covers' or 'leq' pair list");
  if (!j[key].is_array()) throw ParseError("'" + std::string(key) + "' must be an array of pairs");
  std::vector<std::pair<int, int>> pairs;
  for (const auto& pr : j[key]) {
    if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
      throw ParseError("'" + std::string(key) + "' entries must be [from, to] name pairs");
    pairs.emplace_back(name_index(names, pr[0].get<std::string>()),
                       name_index(names, pr[1].get<std::string>()));
  }
  return closure_from_pairs(static_cast<int>(names.size()), pairs);
}

Json relation_to_covers(const std::vector<std::string>& names,
                        const std::vector<std::pair<Elem, Elem>>& covers) {
  Json arr = Json::array();
  for (auto& [a, b] : covers) arr.push_back(Json::array({names[a], names[b]}));
  return arr;
}

}  // namespace

Json serialize(const DomainPoset& p) {
  Json j;
  j["kind"] = "domain";
  j["elements"] = p.names();
  j["covers"] = relation_to_covers(p.names(), p.covers());
  if (p.has_bottom()) j["bottom"] = p.name(p.bottom());
  return j;
}

Json serialize(const FiniteLattice& l) {
  Json j;
  j["kind"] = "lattice";
  j["elements"] = l.names();
  j["covers"] = relation_to_covers(l.names(), l.covers());
  return j;
}

Json serialize(const Quantale& q) {
  Json j;
  j["kind"] = "quantale";
  j["lattice"] = serialize(q.lattice());
  Json rows = Json::array();
  for (int a = 0; a < q.size(); ++a) {
    Json row = Json::array();
    for (int b = 0; b < q.size(); ++b) row.push_back(q.lattice().name(q.star(a, b)));
    rows.push_back(row);
  }
  j["star"] = rows;
  j["unit"] = q.lattice().name(q.unit());
  return j;
}

Json serialize(const Predicate& m) {
  Json j;
  j["kind"] = "predicate";
  j["mode"] = m.mode() == Mode::normalized ? "normalized" : "general";
  Json values = Json::object();
  for (int d = 0; d < m.domain_size(); ++d)
    values[m.domain().name(d)] = m.lattice().name(m.value(d));
  j["values"] = values;
  return j;
}

Json serialize(const StateTransformer& phi) {
  Json j;
  j["kind"] = "transformer";
  if (phi.extensional()) {
    j["default"] = serialize(*phi.default_image());
    Json images = Json::object();
    for (auto& [a, p] : phi.overrides()) images[phi.source().name(a)] = serialize(p);
    j["images"] = images;
  } else {
    Json images = Json::object();
    for (Elem a = 0; a < phi.source().size(); ++a) images[phi.source().name(a)] = serialize(phi.image(a));
    j["images"] = images;
  }
  return j;
}

Json serialize(const InstanceBundle& b) {
  Json j;
  j["kind"] = "bundle";
  j["quantale"] = serialize(*b.quantale);
  j["source"] = serialize(*b.source);
  j["target"] = serialize(*b.target);
  if (b.predicate) j["predicate"] = serialize(*b.predicate);
  if (b.transformer) j["transformer"] = serialize(*b.transformer);
  return j;
}

PosetPtr parse_domain(const Json& j) {
  require_kind(j, "domain");
  auto names = parse_elements(j);
  Relation leq = parse_relation(j, names);
  PosetReport rep = verify_domain(names, std::move(leq));
  if (!rep.ok) throw ParseError("invalid domain: " + rep.first_failure());
  if (j.contains("bottom")) {
    const std::string declared = j["bottom"].get<std::string>();
    if (!rep.has_bottom || rep.bottom_name != declared)
      throw ParseError("declared bottom '" + declared + "' is not the least element");
  }
  return std::make_shared<const DomainPoset>(*std::move(rep.poset));
}

LatticePtr parse_lattice(const Json& j) {
  require_kind(j, "lattice");
  if (j.contains("builtin")) {
    const std::string b = j["builtin"].get<std::string>();
    if (b == "chain") {
      if (!j.contains("n")) throw ParseError("builtin chain needs 'n'");
      return std::make_shared<const FiniteLattice>(build_chain(j["n"].get<int>()));
    }
    throw ParseError("unknown lattice builtin '" + b + "'");
  }
  auto names = parse_elements(j);
  Relation leq = parse_relation(j, names);
  LatticeReport rep = verify_lattice(names, std::move(leq));
  if (!rep.ok) throw ParseError("invalid lattice: " + rep.first_failure());
  return std::make_shared<const FiniteLattice>(*std::move(rep.lattice));
}

QuantalePtr parse_quantale(const Json& j) {
  require_kind(j, "quantale");
  if (j.contains("builtin")) {
    const std::string b = j["builtin"].get<std::string>();
    if (b == "lukasiewicz") {
      if (!j.contains("m")) throw ParseError("builtin lukasiewicz needs 'm'");
      return std::make_shared<const Quantale>(lukasiewicz_quantale(j["m"].get<int>()));
    }
    if (b == "godel") {
      if (!j.contains("lattice")) throw ParseError("builtin godel needs 'lattice'");
      return std::make_shared<const Quantale>(godel_quantale(parse_lattice(j["lattice"])));
    }
    if (b == "downset_monoid")
      return std::make_shared<const Quantale>(downset_monoid_quantale());
    throw ParseError("unknown quantale builtin '" + b + "'");
  }
  if (!j.contains("lattice")) throw ParseError("quantale needs 'lattice'");
  LatticePtr lattice = parse_lattice(j["lattice"]);
  if (!j.contains("star") || !j["star"].is_array())
    throw ParseError("quantale needs a 'star' table");
  const int n = lattice->size();
  if (static_cast<int>(j["star"].size()) != n)
    throw ParseError("'star' must have one row per lattice element");
  std::vector<std::vector<Elem>> star(n, std::vector<Elem>(n));
  for (int a = 0; a < n; ++a) {
    const auto& row = j["star"][a];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError("'star' rows must list one entry per lattice element");
    for (int b = 0; b < n; ++b) star[a][b] = lattice->index(row[b].get<std::string>());
  }
  Elem unit = lattice->top();
  if (j.contains("unit")) unit = lattice->index(j["unit"].get<std::string>());
  return std::make_shared<const Quantale>(make_quantale(std::move(lattice), std::move(star), unit));
}

Predicate parse_predicate(const Json& j, PosetPtr domain, LatticePtr lattice) {
  require_kind(j, "predicate");
  const std::string mode_s = j.value("mode", "general");
  if (mode_s != "general" && mode_s != "normalized")
    throw ParseError("predicate mode must be 'general' or 'normalized'");
  if (!j.contains("values") || !j["values"].is_object())
    throw ParseError("predicate needs a 'values' object");
  std::vector<Elem> values(domain->size(), -1);
  for (auto& [key, val] : j["values"].items()) {
    auto d = domain->find(key);
    if (!d) throw ParseError("predicate value for unknown domain element '" + key + "'");
    values[*d] = lattice->index(val.get<std::string>());
  }
  for (int d = 0; d < domain->size(); ++d)
    if (values[d] == -1)
      throw ParseError("predicate missing a value for domain element '" + domain->name(d) + "'");
  // File-loaded predicates are always validated, regardless of build mode.
  if (auto bad = antitone_violation(*domain, *lattice, values))
    throw ParseError("predicate is not antitone at (" + domain->name(bad->first) + ", " +
                     domain->name(bad->second) + ")");
  Mode mode = mode_s == "normalized" ? Mode::normalized : Mode::general;
  if (mode == Mode::normalized) {
    if (!domain->has_bottom()) throw ParseError("normalized predicate over a bottomless domain");
    if (values[domain->bottom()] != lattice->top())
      throw ParseError("normalized predicate must take value 1 at the bottom");
  }
  return Predicate(std::move(domain), std::move(lattice), std::move(values), mode);
}

StateTransformer parse_transformer(const Json& j, PosetPtr source, PosetPtr target,
                                   QuantalePtr quantale) {
  require_kind(j, "transformer");
  if (!j.contains("images") || !j["images"].is_object())
    throw ParseError("transformer needs an 'images' object");
  if (j.contains("default")) {
    Predicate def = parse_predicate(j["default"], target, quantale->lattice_ptr());
    std::map<Elem, Predicate> overrides;
    for (auto& [key, block] : j["images"].items()) {
      auto a = source->find(key);
      if (!a) throw ParseError("transformer image for unknown source element '" + key + "'");
      overrides.emplace(*a, parse_predicate(block, target, quantale->lattice_ptr()));
    }
    return StateTransformer(std::move(source), std::move(target), std::move(quantale),
                            std::move(def), std::move(overrides));
  }
  std::vector<std::optional<Predicate>> images(source->size());
  for (auto& [key, block] : j["images"].items()) {
    auto a = source->find(key);
    if (!a) throw ParseError("transformer image for unknown source element '" + key + "'");
    images[*a] = parse_predicate(block, target, quantale->lattice_ptr());
  }
  std::vector<Predicate> dense;
  for (int a = 0; a < source->size(); ++a) {
    if (!images[a])
      throw ParseError("transformer missing an image for source element '" + source->name(a) + "'");
    dense.push_back(*std::move(images[a]));
  }
  return StateTransformer(std::move(source), std::move(target), std::move(quantale),
                          std::move(dense));
}

namespace {

Json resolve_ref(const Json& j, const std::string& base_dir) {
  if (j.is_string()) {
    std::filesystem::path p = j.get<std::string>();
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return load_json_file(p.string());
  }
  return j;
}

}  // namespace

InstanceBundle parse_bundle(const Json& j, const std::string& base_dir) {
  require_kind(j, "bundle");
  InstanceBundle b;
  if (!j.contains("quantale")) throw ParseError("bundle needs 'quantale'");
  b.quantale = parse_quantale(resolve_ref(j["quantale"], base_dir));
  if (!j.contains("source")) throw ParseError("bundle needs 'source'");
  b.source = parse_domain(resolve_ref(j["source"], base_dir));
  b.target = j.contains("target") ? parse_domain(resolve_ref(j["target"], base_dir)) : b.source;
  if (j.contains("predicate"))
    b.predicate = parse_predicate(resolve_ref(j["predicate"], base_dir), b.source,
                                  b.quantale->lattice_ptr());
  if (j.contains("transformer"))
    b.transformer = parse_transformer(resolve_ref(j["transformer"], base_dir), b.source, b.target,
                                      b.quantale);
  return b;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("cannot parse " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

InstanceBundle load_bundle_file(const std::string& path) {
  Json j = load_json_file(path);
  return parse_bundle(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace latsp
