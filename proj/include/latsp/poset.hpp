#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latsp/core.hpp"

namespace latsp {

using Relation = std::vector<std::vector<std::uint8_t>>;

// Builds the reflexive-transitive closure of a cover/edge list over n nodes.
Relation closure_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

// Outcome of checking one law during structure validation.
struct LawCheck {
  std::string law;
  bool pass = true;
  std::vector<std::string> witness;  // offending element names, if any
};

struct PosetReport;

// A finite pointed (or unpointed) poset used as a domain of computation.
// Immutable after construction; safe to share across threads.
class DomainPoset {
 public:
  // Validates the relation (throws Error with a witness on failure).
  static DomainPoset create(std::vector<std::string> names, Relation leq);

  // For builders whose output is a poset by construction (products of
  // chains, powersets); skips the cubic validation scan.  Small instances
  // are re-validated through verify_domain in tests.
  static DomainPoset create_unchecked(std::vector<std::string> names, Relation leq,
                                      std::optional<Elem> bottom);

  int size() const { return static_cast<int>(names_.size()); }
  bool leq(Elem a, Elem b) const { return leq_[a][b] != 0; }
  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  Elem index(const std::string& name) const;  // throws UnknownElement
  std::optional<Elem> find(const std::string& name) const;

  bool has_bottom() const { return bottom_.has_value(); }
  Elem bottom() const;  // throws NoBottom

  // The way-below relation.  On a finite poset it coincides with leq; the
  // definition-level check lives in way_below_by_definition and is run once
  // per poset in debug builds (small sizes only).
  bool way_below(Elem a, Elem b) const { return leq(a, b); }

  // ↑a = {b | a ≤ b}, ascending by element index.
  std::vector<Elem> principal_upset(Elem a) const;

  // Covering pairs (a ⋖ b), for compact serialization and diagnostics.
  std::vector<std::pair<Elem, Elem>> covers() const;

  // A linear extension: ascending in the order, deterministic tie-break.
  std::vector<Elem> topo_order() const;

  bool same_structure(const DomainPoset& other) const {
    return names_ == other.names_ && leq_ == other.leq_;
  }

 private:
  DomainPoset() = default;
  std::vector<std::string> names_;
  Relation leq_;
  std::optional<Elem> bottom_;
  friend struct PosetReport;
  friend PosetReport verify_domain(std::vector<std::string>, Relation);
};

using PosetPtr = std::shared_ptr<const DomainPoset>;

struct PosetReport {
  std::vector<LawCheck> checks;
  bool ok = false;
  bool has_bottom = false;
  std::string bottom_name;
  bool is_meet_semilattice = false;  // diagnostic only, never enforced
  std::optional<DomainPoset> poset;  // present iff ok
  std::string first_failure() const;
};

// Checks reflexivity, antisymmetry and transitivity; locates the bottom if
// present; reports (but does not require) existence of all binary meets.
PosetReport verify_domain(std::vector<std::string> names, Relation leq);

// a ≪ b straight from the definition: every directed subset whose maximum
// dominates b contains an element above a.  Exponential; test-size posets.
bool way_below_by_definition(const DomainPoset& p, Elem a, Elem b);

// Is f (given as f[src elem] = dst elem) order-preserving?
bool is_isotone_map(const DomainPoset& src, const DomainPoset& dst,
                    const std::vector<Elem>& f);

// The n-element chain c0 < c1 < ... < c(n-1) as a domain.
DomainPoset chain_poset(int n);

// Random DAG closed under reflexivity/transitivity; optionally adjoins a
// fresh bottom element below everything.  Identical seeds and parameters
// give identical relations.
DomainPoset random_poset(std::uint64_t seed, int size, double edge_density,
                         bool with_bottom);

}  // namespace latsp
