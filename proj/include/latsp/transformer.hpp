#pragma once

#include <map>

#include "latsp/predicate.hpp"

namespace latsp {

// A state transformer: a map from source-domain elements to predicates over
// the target domain, with values in the quantale's lattice.  Stored either
// densely (one image per source element) or extensionally (a default image
// plus finitely many overrides on key states).  Immutable.
class StateTransformer {
 public:
  StateTransformer(PosetPtr source, PosetPtr target, QuantalePtr quantale,
                   std::vector<Predicate> images);
  StateTransformer(PosetPtr source, PosetPtr target, QuantalePtr quantale,
                   Predicate default_image, std::map<Elem, Predicate> overrides);

  const DomainPoset& source() const { return *source_; }
  const DomainPoset& target() const { return *target_; }
  const PosetPtr& source_ptr() const { return source_; }
  const PosetPtr& target_ptr() const { return target_; }
  const Quantale& quantale() const { return *quantale_; }
  const QuantalePtr& quantale_ptr() const { return quantale_; }

  const Predicate& image(Elem a) const;
  bool isotone() const { return isotone_; }
  bool normalized_valued() const { return normalized_valued_; }

  bool extensional() const { return extensional_; }
  const std::map<Elem, Predicate>& overrides() const { return overrides_; }
  const std::optional<Predicate>& default_image() const { return default_; }
  bool default_is_bottom() const { return default_is_bottom_; }

 private:
  void finish_init();
  PosetPtr source_;
  PosetPtr target_;
  QuantalePtr quantale_;
  bool extensional_ = false;
  std::vector<Predicate> dense_;
  std::optional<Predicate> default_;
  std::map<Elem, Predicate> overrides_;
  bool isotone_ = false;
  bool normalized_valued_ = false;
  bool default_is_bottom_ = false;
};

// Strongest-postcondition transformer on general predicates, by the
// way-below-infimum formula.  Serial reference implementation.
Predicate usp_general(const StateTransformer& phi, const Predicate& m);

// The simplified formula (pointwise supremum at b itself); provably equal
// to usp_general on finite domains.  Has serial and OpenMP paths.
Predicate usp_simple(const StateTransformer& phi, const Predicate& m,
                     Exec exec = Exec::automatic);

// Production entry point: the simple formula in release builds; debug builds
// evaluate both formulas and assert agreement.
Predicate usp(const StateTransformer& phi, const Predicate& m,
              Exec exec = Exec::automatic);

// Normalized strongest postcondition: usp followed by forcing value 1 at
// the target bottom.  Rejects a non-normalized-valued transformer unless
// allow_non_normalized is set.
Predicate sp(const StateTransformer& phi, const Predicate& m,
             bool allow_non_normalized = false, Exec exec = Exec::automatic);

// Is m_prime a postcondition of m under phi, i.e. does
// m_prime(b) >= m(a) ∗ phi(a)(b) hold for all a, b?
bool is_postcondition(const StateTransformer& phi, const Predicate& m,
                      const Predicate& m_prime);
bool is_postcondition(const StateTransformer& phi, const std::vector<Elem>& raw_m,
                      const Predicate& m_prime);

// Brute force: enumerate every antitone map on the target, keep the
// postconditions, return their pointwise meet (which is checked to be a
// postcondition itself).  Refuses if |L|^|target| exceeds cap.
Predicate oracle_least_postcondition(const StateTransformer& phi, const Predicate& m,
                                     std::size_t cap = 10000);

// Property checks over seeded random instances.  All of them compare usp
// outputs for exact equality and report witnesses.
LawReport check_join_preservation(const StateTransformer& phi, std::uint64_t seed,
                                  int cases);
// Families of size 0..max_family; requires an isotone transformer.
LawReport check_sup_preservation(const StateTransformer& phi, std::uint64_t seed,
                                 int cases, int max_family = 5);

// Which theorem hypothesis licenses a linearity/affinity check.
enum class LinearityHypothesis { isotone_transformer, inf_distributive_quantale };

// usp of a finite linear combination ⊕ α_i ⊙ m_i (including the empty one)
// versus the combination of usp images.  Throws HypothesisNotMet when the
// requested hypothesis does not hold for phi.
LawReport check_linearity(const StateTransformer& phi, LinearityHypothesis hyp,
                          std::uint64_t seed, int cases);

// Affine combinations (scalars joining to 1) through sp in the normalized
// setting; same hypothesis gate as linearity.
LawReport check_affinity(const StateTransformer& phi, LinearityHypothesis hyp,
                         std::uint64_t seed, int cases);

// usp agrees with phi on point predicates (and sp on eta for
// normalized-valued phi).  Requires an isotone transformer.
LawReport check_extension(const StateTransformer& phi);

// usp(phi)(m) equals the canonical combination ⊕_a m(a) ⊙ phi(a); requires
// an isotone transformer.
LawReport check_least_linear_extension(const StateTransformer& phi, std::uint64_t seed,
                                       int cases);

// Ungated linearity probe for transformers satisfying no hypothesis; any
// violations found are informational, not errors.
LawReport linearity_counterexample_search(const StateTransformer& phi, std::uint64_t seed,
                                          int cases);

}  // namespace latsp
