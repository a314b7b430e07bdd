#pragma once

#include "latsp/io.hpp"

namespace latsp {

// Random structure builders behind the property suites and the gen command.
// Everything is a pure function of the Rng stream, so a seed pins the
// instance exactly.

// Chains, down-set lattices of small random posets, and products of chains;
// all carriers are distributive.  Size is bounded by max_size (>= 2).
LatticePtr random_lattice(Rng& rng, int max_size);

// Builtins on random carriers, componentwise products, an occasional
// non-meet-distributive example, and validated random perturbations of a
// builtin table (rejection sampling; falls back to the unperturbed table).
QuantalePtr random_quantale(Rng& rng, int max_lattice);

PosetPtr random_domain(Rng& rng, int max_size, bool need_bottom);

// Dense random transformer.  force_isotone accumulates joins along a linear
// extension; force_normalized normalizes every image (target needs bottom).
StateTransformer random_transformer(Rng& rng, PosetPtr source, PosetPtr target,
                                    QuantalePtr quantale, bool force_isotone,
                                    bool force_normalized);

struct GenConfig {
  int max_lattice = 6;
  int max_domain = 5;
  bool with_predicate = true;
  bool with_transformer = true;
};

InstanceBundle random_bundle(Rng& rng, const GenConfig& cfg);

}  // namespace latsp
