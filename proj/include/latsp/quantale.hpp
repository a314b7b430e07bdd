#pragma once

#include "latsp/lattice.hpp"

namespace latsp {

struct QuantaleReport;

// A unital quantale on a finite lattice: an associative multiplication that
// distributes over joins on both sides, annihilates bottom, and whose unit
// is the top element (so multiplication never exceeds meet).
class Quantale {
 public:
  const FiniteLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  int size() const { return lattice_->size(); }
  Elem star(Elem a, Elem b) const { return star_[a][b]; }
  Elem unit() const { return lattice_->top(); }
  const std::vector<std::vector<Elem>>& star_table() const { return star_; }

  // Whether ∗ also distributes over binary meets in both arguments.
  // Computed once at construction; gates the stronger transformer laws.
  bool inf_distributive() const { return inf_distributive_; }

 private:
  Quantale() = default;
  LatticePtr lattice_;
  std::vector<std::vector<Elem>> star_;
  bool inf_distributive_ = false;
  friend struct QuantaleReport;
  friend QuantaleReport verify_quantale(LatticePtr, std::vector<std::vector<Elem>>,
                                        Elem, Exec);
};

using QuantalePtr = std::shared_ptr<const Quantale>;

struct QuantaleReport {
  std::vector<LawCheck> checks;
  bool ok = false;
  std::optional<Quantale> quantale;  // present iff ok
  std::string first_failure() const;
};

// Checks unit-is-top, associativity, two-sided unit, join-distributivity in
// both arguments, bottom annihilation, and isotonicity of ∗ in each
// argument.  The empty-join convention makes annihilation the empty case of
// distributivity, so it is checked explicitly.
QuantaleReport verify_quantale(LatticePtr lattice, std::vector<std::vector<Elem>> star,
                               Elem unit, Exec exec = Exec::automatic);

// Same, but throws UnitNotTop / QuantaleLawViolation with the witness.
Quantale make_quantale(LatticePtr lattice, std::vector<std::vector<Elem>> star,
                       Elem unit, Exec exec = Exec::automatic);

// i ∗ j = max(i + j - m, 0) on the chain 0 < ... < m.
Quantale lukasiewicz_quantale(int m);

// ∗ = meet on any finite lattice.
Quantale godel_quantale(LatticePtr lattice);

// Componentwise multiplication on the product lattice.
Quantale quantale_product(const Quantale& a, const Quantale& b);

// Full meet-distributivity scan with the first counterexample as witness.
LawReport inf_distributivity_report(const Quantale& q, Exec exec = Exec::automatic);

// A 7-element quantale (down-sets of a pointed ordered monoid) whose
// multiplication is not meet-distributive; the standard counterexample used
// by tests and the hypothesis-gated suites.
Quantale downset_monoid_quantale();

}  // namespace latsp
