#pragma once

#include <json.hpp>

#include "latsp/transformer.hpp"

namespace latsp {

using Json = nlohmann::json;

// A self-contained instance: quantale, source/target domains, and
// optionally a precondition predicate (over source) and a transformer.
struct InstanceBundle {
  QuantalePtr quantale;
  PosetPtr source;
  PosetPtr target;
  std::optional<Predicate> predicate;
  std::optional<StateTransformer> transformer;
};

// Serializers emit explicit element/cover/table form; loading re-validates
// through the same verify paths as hand-built structures, so a round trip
// is the identity on valid inputs and impossible for invalid ones.
Json serialize(const DomainPoset& p);
Json serialize(const FiniteLattice& l);
Json serialize(const Quantale& q);
Json serialize(const Predicate& m);
Json serialize(const StateTransformer& phi);
Json serialize(const InstanceBundle& b);

PosetPtr parse_domain(const Json& j);
LatticePtr parse_lattice(const Json& j);
QuantalePtr parse_quantale(const Json& j);
Predicate parse_predicate(const Json& j, PosetPtr domain, LatticePtr lattice);
StateTransformer parse_transformer(const Json& j, PosetPtr source, PosetPtr target,
                                   QuantalePtr quantale);
// base_dir resolves string file references inside the bundle.
InstanceBundle parse_bundle(const Json& j, const std::string& base_dir);

Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);
InstanceBundle load_bundle_file(const std::string& path);

}  // namespace latsp
