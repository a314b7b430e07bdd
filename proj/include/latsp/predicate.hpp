#pragma once

#include "latsp/quantale.hpp"

namespace latsp {

// An unconstrained assignment of lattice values to domain elements, the raw
// material that u_closure turns into a monotonic (antitone) predicate.
struct RawValuation {
  PosetPtr domain;
  LatticePtr lattice;
  std::vector<Elem> values;
};

// An L-fuzzy monotonic predicate: an antitone map domain -> lattice.  The
// normalized mode additionally pins value 1 at the domain bottom; both modes
// share the representation, the flag selects which semimodule the predicate
// lives in.  Immutable and shareable across threads.
class Predicate {
 public:
  Predicate(PosetPtr domain, LatticePtr lattice, std::vector<Elem> values,
            Mode mode = Mode::general);

  static Predicate constant(PosetPtr domain, LatticePtr lattice, Elem value,
                            Mode mode = Mode::general);

  const DomainPoset& domain() const { return *domain_; }
  const FiniteLattice& lattice() const { return *lattice_; }
  const PosetPtr& domain_ptr() const { return domain_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  Mode mode() const { return mode_; }
  int domain_size() const { return domain_->size(); }
  Elem value(Elem d) const { return values_[d]; }
  Elem value_at(const std::string& name) const { return values_[domain_->index(name)]; }
  const std::vector<Elem>& values() const { return values_; }

  // Antitonicity, plus value 1 at bottom for normalized mode; with witness.
  LawReport validate() const;

  // Pointwise order and equality (same domain and lattice required).
  bool leq(const Predicate& other) const;
  bool operator==(const Predicate& other) const;
  bool operator!=(const Predicate& other) const { return !(*this == other); }

 private:
  PosetPtr domain_;
  LatticePtr lattice_;
  std::vector<Elem> values_;
  Mode mode_;
};

// First antitonicity violation (a <= b with values[b] not <= values[a]).
std::optional<std::pair<Elem, Elem>> antitone_violation(const DomainPoset& d,
                                                        const FiniteLattice& l,
                                                        const std::vector<Elem>& values);

// Greatest antitone map below f: b |-> meet of f over the way-below set of
// b.  On finite posets this is the meet over all a <= b, and it fixes every
// antitone input.
Predicate u_closure(const RawValuation& f);

// Pointwise join / meet.  Both preserve antitonicity on finite posets (the
// join case is asserted against the closure-based definition in tests).
Predicate pred_join(const Predicate& a, const Predicate& b);
Predicate pred_meet(const Predicate& a, const Predicate& b);

// Finite families; the empty join is the constant-0 predicate, the empty
// meet the constant-1 predicate.
Predicate sup_family(PosetPtr domain, LatticePtr lattice,
                     const std::vector<Predicate>& family);
Predicate inf_family(PosetPtr domain, LatticePtr lattice,
                     const std::vector<Predicate>& family);

// Scalar action of the general semimodule: (α∗m)^u, which on a finite poset
// is just the pointwise product (asserted in tests).
Predicate scalar_u(const Quantale& q, Elem alpha, const Predicate& m);

// Scalar action of the normalized semimodule: scalar_u followed by joining
// the point predicate of the bottom.  Requires a normalized operand.
Predicate scalar_n(const Quantale& q, Elem alpha, const Predicate& m);

// Point predicate of d0: value 1 on the principal down-set of d0, else 0.
// eta lives in the normalized semimodule (requires a bottom); eta_u is the
// same map read in the general semimodule and has no bottom requirement.
Predicate eta(PosetPtr domain, LatticePtr lattice, Elem d0);
Predicate eta_u(PosetPtr domain, LatticePtr lattice, Elem d0);

// η of the bottom element: value 1 exactly at bottom.
Predicate delta(PosetPtr domain, LatticePtr lattice);

// Forces value 1 at the bottom and flips the mode flag to normalized.
Predicate normalize(const Predicate& m);

// The canonical decomposition m = ⊕_a m(a) ⊙ η_u(a): per-point coefficient
// pairs (m(a), a), plus the test-facing recomposition.
std::vector<std::pair<Elem, Elem>> decompose(const Predicate& m);
Predicate recompose(const Quantale& q, const PosetPtr& domain,
                    const std::vector<std::pair<Elem, Elem>>& parts);

// All antitone maps domain -> lattice (as value vectors, lexicographic in
// topo order).  Refuses if |L|^|D| exceeds cap.
std::vector<std::vector<Elem>> enumerate_antitone_maps(const DomainPoset& d,
                                                       const FiniteLattice& l,
                                                       std::size_t cap);

// A random antitone predicate: uniform raw valuation pushed through
// u_closure (normalized mode additionally forces 1 at the bottom).
Predicate random_predicate(PosetPtr domain, LatticePtr lattice, Rng& rng,
                           Mode mode = Mode::general);

// The idempotent-semimodule axioms for (uM, ⊕, ⊙) or (M, ⊕, ⊛): addition
// laws, neutral element, both distributivities of the action, action
// compatibility with ∗, unit action and zero action.
LawReport check_semimodule_axioms(const Quantale& q, PosetPtr domain, Mode mode,
                                  std::uint64_t seed, int cases);
LawReport check_semimodule_axioms_exhaustive(const Quantale& q, PosetPtr domain,
                                             Mode mode, std::size_t cap = 300000);

}  // namespace latsp
