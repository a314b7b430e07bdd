#pragma once

#include "latsp/transformer.hpp"

namespace latsp {

// Quality-degree setting: n parts rated on the chain 0..m.  An information
// state d asserts "part i has quality at least d_i"; a componentwise larger
// vector is a stronger assertion.  The domain orders state vectors by
// reversed componentwise comparison — stronger assertions sit lower, and
// the bottom is the all-m vector, the assertion that implies every other.
// This is the unique order under which the worked predicates below are
// antitone (and take value m at the bottom, so they normalize).
enum class ScaleQuantale { lukasiewicz, godel };

struct QualityScale {
  int parts = 0;    // n
  int degrees = 0;  // m; the value lattice is the chain 0..m
  PosetPtr domain;
  LatticePtr lattice;
  QuantalePtr quantale;

  Elem state_index(const std::vector<int>& s) const;
  std::vector<int> state_of(Elem e) const;
};

QualityScale make_quality_scale(int parts, int degrees,
                                ScaleQuantale sq = ScaleQuantale::lukasiewicz,
                                std::size_t cap = 4096);

// Truth degree m - (worst shortfall of d against the target q); the largest
// k with d_i >= q_i - (m-k) for all i, found by downward maximum search.
Predicate margin_predicate(const QualityScale& scale, const std::vector<int>& q);

// Largest k with d_i >= min(k, q_i) for all i.
Predicate threshold_below_predicate(const QualityScale& scale, const std::vector<int>& q);

// Largest k with max(d_i, m-k) >= q_i for all i.
Predicate threshold_above_predicate(const QualityScale& scale, const std::vector<int>& q);

// Truth of assertion d under actual qualities s: the largest k with
// s_i >= d_i ∗ k for all i (∗ from the scale's quantale).  The literal
// formula grows with d in the domain order, so it is returned as a raw
// valuation; predicate-typed callers take its antitone closure.
RawValuation truth_valuation(const QualityScale& scale, const std::vector<int>& s);

// Antitone closure of truth_valuation — the greatest predicate below it.
Predicate truth_predicate(const QualityScale& scale, const std::vector<int>& s);

// The frame-pipeline transformer: stored extensionally with a constant-0
// default.  For each interior position i (0 < i < parts-1) the key state is
// zero everywhere except (m, m-1, m) at positions i-1, i, i+1; its image is
// the margin predicate for the target that demands m at position i only.
// Requires parts >= 3.  Not isotone; the flags record what was computed.
StateTransformer frame_transformer(const QualityScale& scale);

// A subprobability distribution with exact rational weights num[s]/den.
struct SubDistribution {
  std::vector<long long> num;
  long long den = 1;
};

// All subsets of the given states, ordered by reverse inclusion; the full
// set (no information) is the bottom.
PosetPtr powerset_domain(const std::vector<std::string>& states, std::size_t cap = 4096);

// Greatest guaranteed probability of each event A: the minimum over the
// distributions of P_i(A), quantized by flooring onto the chain 0..k (k =
// resolution; element j stands for j/k).  Exact rational arithmetic; the
// result is normalized iff every distribution has full mass.
Predicate guaranteed_probability_predicate(const std::vector<std::string>& states,
                                           const std::vector<SubDistribution>& dists,
                                           int resolution, std::size_t cap = 4096);

}  // namespace latsp
