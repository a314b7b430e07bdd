#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "latsp/poset.hpp"

namespace latsp {

struct LatticeReport;

// A finite lattice with tabulated joins and meets.  Distributivity is not
// part of the type invariant; verify_distributive reports it separately.
// Immutable after construction.
class FiniteLattice {
 public:
  int size() const { return static_cast<int>(names_.size()); }
  bool leq(Elem a, Elem b) const { return leq_[a][b] != 0; }
  Elem join(Elem a, Elem b) const { return join_[a][b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a][b]; }
  Elem top() const { return top_; }
  Elem bottom() const { return bottom_; }
  const std::string& name(Elem a) const { return names_[a]; }
  const std::vector<std::string>& names() const { return names_; }
  Elem index(const std::string& name) const;  // throws UnknownElement
  std::optional<Elem> find(const std::string& name) const;

  // Fold over a family; the empty join is bottom, the empty meet is top.
  Elem join_all(const std::vector<Elem>& xs) const;
  Elem meet_all(const std::vector<Elem>& xs) const;

  const Relation& relation() const { return leq_; }
  std::vector<std::pair<Elem, Elem>> covers() const;

  bool same_structure(const FiniteLattice& other) const {
    return names_ == other.names_ && leq_ == other.leq_;
  }

 private:
  FiniteLattice() = default;
  std::vector<std::string> names_;
  Relation leq_;
  std::vector<std::vector<Elem>> join_, meet_;
  Elem top_ = 0, bottom_ = 0;
  friend struct LatticeReport;
  friend LatticeReport verify_lattice(std::vector<std::string>, Relation, Exec);
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

struct LatticeReport {
  std::vector<LawCheck> checks;
  bool ok = false;
  std::optional<FiniteLattice> lattice;  // present iff ok
  std::string first_failure() const;
};

// Checks the order axioms, existence and uniqueness of all binary joins and
// meets (computing the tables by brute-force bound search), absorption, and
// commutativity/associativity/idempotence of the resulting tables.
LatticeReport verify_lattice(std::vector<std::string> names, Relation leq,
                             Exec exec = Exec::automatic);

// Same, but throws Error with the first witness instead of reporting.
FiniteLattice make_lattice(std::vector<std::string> names, Relation leq);

// Both distributive laws over all triples; first counterexample as witness.
LawReport verify_distributive(const FiniteLattice& l, Exec exec = Exec::automatic);

// Total order 0 < 1 < ... < n-1 with numeric element names.
FiniteLattice build_chain(int n);

// Componentwise order on pairs, element names "(a,b)", row-major pair order.
FiniteLattice build_product(const FiniteLattice& a, const FiniteLattice& b);

// Lattice of down-closed subsets of a poset, ordered by inclusion.  Always
// distributive.  Rejects posets with more than `cap` down-sets.
FiniteLattice build_downset_lattice(const DomainPoset& p, std::size_t cap = 4096);

}  // namespace latsp
