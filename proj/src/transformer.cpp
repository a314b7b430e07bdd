#include "latsp/transformer.hpp"

#include <cassert>

namespace latsp {

namespace {

bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  return a.get() == b.get() || a->same_structure(*b);
}

void require_precondition(const StateTransformer& phi, const Predicate& m, const char* op) {
  if (!same_poset(m.domain_ptr(), phi.source_ptr()))
    throw MismatchError(std::string(op) + ": predicate domain is not the transformer source");
  if (!m.lattice().same_structure(phi.quantale().lattice()))
    throw MismatchError(std::string(op) + ": predicate lattice does not match the quantale");
}

void require_postcondition_shape(const StateTransformer& phi, const Predicate& mp,
                                 const char* op) {
  if (!same_poset(mp.domain_ptr(), phi.target_ptr()))
    throw MismatchError(std::string(op) + ": predicate domain is not the transformer target");
  if (!mp.lattice().same_structure(phi.quantale().lattice()))
    throw MismatchError(std::string(op) + ": predicate lattice does not match the quantale");
}

std::string pred_str(const Predicate& p) {
  std::string s = "[";
  for (int d = 0; d < p.domain_size(); ++d) {
    if (d) s += ",";
    s += p.lattice().name(p.value(d));
  }
  return s + "]";
}

}  // namespace

StateTransformer::StateTransformer(PosetPtr source, PosetPtr target, QuantalePtr quantale,
                                   std::vector<Predicate> images)
    : source_(std::move(source)), target_(std::move(target)), quantale_(std::move(quantale)),
      extensional_(false), dense_(std::move(images)) {
  if (!source_ || !target_ || !quantale_) throw Error("StateTransformer: null component");
  if (static_cast<int>(dense_.size()) != source_->size())
    throw MismatchError("StateTransformer: need exactly one image per source element");
  for (const Predicate& p : dense_) {
    if (!same_poset(p.domain_ptr(), target_))
      throw MismatchError("StateTransformer: image domain is not the target");
    if (!p.lattice().same_structure(quantale_->lattice()))
      throw MismatchError("StateTransformer: image lattice does not match the quantale");
  }
  finish_init();
}

StateTransformer::StateTransformer(PosetPtr source, PosetPtr target, QuantalePtr quantale,
                                   Predicate default_image, std::map<Elem, Predicate> overrides)
    : source_(std::move(source)), target_(std::move(target)), quantale_(std::move(quantale)),
      extensional_(true), default_(std::move(default_image)), overrides_(std::move(overrides)) {
  if (!source_ || !target_ || !quantale_) throw Error("StateTransformer: null component");
  auto check_image = [&](const Predicate& p) {
    if (!same_poset(p.domain_ptr(), target_))
      throw MismatchError("StateTransformer: image domain is not the target");
    if (!p.lattice().same_structure(quantale_->lattice()))
      throw MismatchError("StateTransformer: image lattice does not match the quantale");
  };
  check_image(*default_);
  for (auto& [a, p] : overrides_) {
    if (a < 0 || a >= source_->size())
      throw UnknownElement("StateTransformer: override key out of range");
    check_image(p);
  }
  finish_init();
}

void StateTransformer::finish_init() {
  const FiniteLattice& l = quantale_->lattice();
  if (default_) {
    default_is_bottom_ = true;
    for (Elem v : default_->values())
      if (v != l.bottom()) {
        default_is_bottom_ = false;
        break;
      }
  }

  normalized_valued_ = target_->has_bottom();
  if (normalized_valued_) {
    const Elem b0 = target_->bottom();
    for (Elem a = 0; a < source_->size() && normalized_valued_; ++a)
      normalized_valued_ = image(a).value(b0) == l.top();
  }

  // Isotonicity.  In the extensional case with a constant-bottom default,
  // pairs of two default states compare equal, so only pairs touching an
  // override need a pointwise comparison.
  isotone_ = true;
  const int n = source_->size();
  if (extensional_ && default_is_bottom_) {
    for (auto it = overrides_.begin(); it != overrides_.end() && isotone_; ++it) {
      const Elem a = it->first;
      for (Elem b = 0; b < n && isotone_; ++b) {
        if (a == b) continue;
        if (source_->leq(a, b) && !image(a).leq(image(b))) isotone_ = false;
        if (source_->leq(b, a) && !image(b).leq(image(a))) isotone_ = false;
      }
    }
  } else {
    for (Elem a = 0; a < n && isotone_; ++a)
      for (Elem b = 0; b < n && isotone_; ++b)
        if (source_->leq(a, b) && !image(a).leq(image(b))) isotone_ = false;
  }
}

const Predicate& StateTransformer::image(Elem a) const {
  if (a < 0 || a >= source_->size())
    throw UnknownElement("StateTransformer::image: element out of range");
  if (!extensional_) return dense_[a];
  auto it = overrides_.find(a);
  return it != overrides_.end() ? it->second : *default_;
}

Predicate usp_general(const StateTransformer& phi, const Predicate& m) {
  require_precondition(phi, m, "usp_general");
  const Quantale& q = phi.quantale();
  const FiniteLattice& l = q.lattice();
  const DomainPoset& target = phi.target();
  const int nb = target.size();
  const int na = phi.source().size();

  // Inner supremum at every target point, then the way-below infimum.
  std::vector<Elem> sup_at(nb);
  for (Elem b = 0; b < nb; ++b) {
    Elem acc = l.bottom();
    for (Elem a = 0; a < na; ++a) acc = l.join(acc, q.star(m.value(a), phi.image(a).value(b)));
    sup_at[b] = acc;
  }
  std::vector<Elem> out(nb);
  for (Elem b = 0; b < nb; ++b) {
    Elem acc = l.top();
    for (Elem bp = 0; bp < nb; ++bp)
      if (target.way_below(bp, b)) acc = l.meet(acc, sup_at[bp]);
    out[b] = acc;
  }
  return Predicate(phi.target_ptr(), q.lattice_ptr(), std::move(out), Mode::general);
}

Predicate usp_simple(const StateTransformer& phi, const Predicate& m, Exec exec) {
  require_precondition(phi, m, "usp_simple");
  const Quantale& q = phi.quantale();
  const FiniteLattice& l = q.lattice();
  const int nb = phi.target().size();
  const int na = phi.source().size();
  std::vector<Elem> out(nb);

  if (phi.extensional()) {
    // Non-override states share one image, and ∗ distributes over joins in
    // its first argument, so their whole contribution is (⊕ m(a)) ∗ default.
    std::vector<char> overridden(na, 0);
    for (auto& [a, p] : phi.overrides()) overridden[a] = 1;
    Elem rest = l.bottom();
    for (Elem a = 0; a < na; ++a)
      if (!overridden[a]) rest = l.join(rest, m.value(a));
    const Predicate& def = *phi.default_image();
    const bool skip_default = phi.default_is_bottom();
    auto eval_b = [&](Elem b) {
      Elem acc = skip_default ? l.bottom() : q.star(rest, def.value(b));
      for (auto& [a, p] : phi.overrides()) acc = l.join(acc, q.star(m.value(a), p.value(b)));
      return acc;
    };
    const long long work = 1LL * nb * (static_cast<long long>(phi.overrides().size()) + 1);
    if (use_parallel(exec, work)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
      for (Elem b = 0; b < nb; ++b) out[b] = eval_b(b);
#endif
    } else {
      for (Elem b = 0; b < nb; ++b) out[b] = eval_b(b);
    }
  } else {
    auto eval_b = [&](Elem b) {
      Elem acc = l.bottom();
      for (Elem a = 0; a < na; ++a) acc = l.join(acc, q.star(m.value(a), phi.image(a).value(b)));
      return acc;
    };
    if (use_parallel(exec, 1LL * nb * na)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
      for (Elem b = 0; b < nb; ++b) out[b] = eval_b(b);
#endif
    } else {
      for (Elem b = 0; b < nb; ++b) out[b] = eval_b(b);
    }
  }
  return Predicate(phi.target_ptr(), q.lattice_ptr(), std::move(out), Mode::general);
}

Predicate usp(const StateTransformer& phi, const Predicate& m, Exec exec) {
#ifndef NDEBUG
  Predicate simple = usp_simple(phi, m, exec);
  Predicate general = usp_general(phi, m);
  assert(simple == general);
  return simple;
#else
  return usp_simple(phi, m, exec);
#endif
}

Predicate sp(const StateTransformer& phi, const Predicate& m, bool allow_non_normalized,
             Exec exec) {
  require_precondition(phi, m, "sp");
  if (!phi.target().has_bottom()) throw NoBottom("sp: target domain has no bottom");
  if (m.mode() != Mode::normalized)
    throw NotNormalized("sp: precondition predicate must be normalized");
  if (!phi.normalized_valued() && !allow_non_normalized)
    throw NotNormalized("sp: transformer is not normalized-valued (pass the explicit flag to allow)");
  return normalize(usp(phi, m, exec));
}

bool is_postcondition(const StateTransformer& phi, const Predicate& m,
                      const Predicate& m_prime) {
  require_precondition(phi, m, "is_postcondition");
  return is_postcondition(phi, m.values(), m_prime);
}

bool is_postcondition(const StateTransformer& phi, const std::vector<Elem>& raw_m,
                      const Predicate& m_prime) {
  require_postcondition_shape(phi, m_prime, "is_postcondition");
  if (static_cast<int>(raw_m.size()) != phi.source().size())
    throw MismatchError("is_postcondition: precondition size does not match source");
  const Quantale& q = phi.quantale();
  const FiniteLattice& l = q.lattice();
  const int na = phi.source().size();
  const int nb = phi.target().size();
  for (Elem a = 0; a < na; ++a) {
    const Predicate& img = phi.image(a);
    for (Elem b = 0; b < nb; ++b)
      if (!l.leq(q.star(raw_m[a], img.value(b)), m_prime.value(b))) return false;
  }
  return true;
}

Predicate oracle_least_postcondition(const StateTransformer& phi, const Predicate& m,
                                     std::size_t cap) {
  require_precondition(phi, m, "oracle_least_postcondition");
  const Quantale& q = phi.quantale();
  const FiniteLattice& l = q.lattice();
  auto candidates = enumerate_antitone_maps(phi.target(), l, cap);
  std::vector<Elem> best(phi.target().size(), l.top());
  bool found = false;
  for (auto& values : candidates) {
    Predicate cand(phi.target_ptr(), q.lattice_ptr(), values, Mode::general);
    if (!is_postcondition(phi, m, cand)) continue;
    found = true;
    for (std::size_t b = 0; b < best.size(); ++b) best[b] = l.meet(best[b], values[b]);
  }
  if (!found) throw Error("oracle_least_postcondition: no postcondition found (impossible)");
  Predicate least(phi.target_ptr(), q.lattice_ptr(), std::move(best), Mode::general);
  if (!is_postcondition(phi, m, least))
    throw Error("oracle_least_postcondition: meet of postconditions is not a postcondition");
  return least;
}

namespace {

void expect_equal(LawReport& rep, const char* law, const Predicate& lhs, const Predicate& rhs,
                  const std::string& detail) {
  ++rep.checked;
  if (lhs == rhs) return;
  rep.add({law, {}, detail + " lhs=" + pred_str(lhs) + " rhs=" + pred_str(rhs)});
}

// Scalars whose join with `partial` is the lattice top; never empty (top
// itself qualifies).
Elem completing_scalar(const FiniteLattice& l, Elem partial, Rng& rng) {
  std::vector<Elem> options;
  for (Elem x = 0; x < l.size(); ++x)
    if (l.join(partial, x) == l.top()) options.push_back(x);
  return options[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(options.size()) - 1))];
}

}  // namespace

LawReport check_join_preservation(const StateTransformer& phi, std::uint64_t seed, int cases) {
  LawReport rep;
  const QuantalePtr& q = phi.quantale_ptr();
  Predicate zero_src = Predicate::constant(phi.source_ptr(), q->lattice_ptr(), q->lattice().bottom());
  Predicate zero_dst = Predicate::constant(phi.target_ptr(), q->lattice_ptr(), q->lattice().bottom());
  expect_equal(rep, "empty join preservation", usp(phi, zero_src), zero_dst, "m=0");
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    Predicate m1 = random_predicate(phi.source_ptr(), q->lattice_ptr(), rng);
    Predicate m2 = random_predicate(phi.source_ptr(), q->lattice_ptr(), rng);
    expect_equal(rep, "join preservation", usp(phi, pred_join(m1, m2)),
                 pred_join(usp(phi, m1), usp(phi, m2)),
                 "m1=" + pred_str(m1) + " m2=" + pred_str(m2));
  }
  return rep;
}

LawReport check_sup_preservation(const StateTransformer& phi, std::uint64_t seed, int cases,
                                 int max_family) {
  if (!phi.isotone())
    throw HypothesisNotMet("check_sup_preservation: transformer is not isotone");
  LawReport rep;
  const QuantalePtr& q = phi.quantale_ptr();
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int k = i == 0 ? 0 : (i == 1 ? 1 : rng.uniform(0, max_family));
    std::vector<Predicate> family;
    std::string detail = "k=" + std::to_string(k);
    for (int j = 0; j < k; ++j)
      family.push_back(random_predicate(phi.source_ptr(), q->lattice_ptr(), rng));
    std::vector<Predicate> images;
    for (const Predicate& m : family) images.push_back(usp(phi, m));
    expect_equal(rep, "sup preservation",
                 usp(phi, sup_family(phi.source_ptr(), q->lattice_ptr(), family)),
                 sup_family(phi.target_ptr(), q->lattice_ptr(), images), detail);
  }
  return rep;
}

namespace {

void require_hypothesis(const StateTransformer& phi, LinearityHypothesis hyp, const char* op) {
  switch (hyp) {
    case LinearityHypothesis::isotone_transformer:
      if (!phi.isotone())
        throw HypothesisNotMet(std::string(op) + ": transformer is not isotone");
      return;
    case LinearityHypothesis::inf_distributive_quantale:
      if (!phi.quantale().inf_distributive())
        throw HypothesisNotMet(std::string(op) + ": quantale is not meet-distributive");
      return;
  }
}

LawReport linearity_cases(const StateTransformer& phi, std::uint64_t seed, int cases,
                          const char* law) {
  LawReport rep;
  const QuantalePtr& q = phi.quantale_ptr();
  const FiniteLattice& l = q->lattice();
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int k = i == 0 ? 0 : rng.uniform(1, 3);  // the first case is the empty combination
    std::vector<Predicate> ms;
    std::vector<Elem> scalars;
    for (int j = 0; j < k; ++j) {
      ms.push_back(random_predicate(phi.source_ptr(), q->lattice_ptr(), rng));
      scalars.push_back(rng.uniform(0, l.size() - 1));
    }
    Predicate combo = Predicate::constant(phi.source_ptr(), q->lattice_ptr(), l.bottom());
    for (int j = 0; j < k; ++j) combo = pred_join(combo, scalar_u(*q, scalars[j], ms[j]));
    Predicate rhs = Predicate::constant(phi.target_ptr(), q->lattice_ptr(), l.bottom());
    for (int j = 0; j < k; ++j) rhs = pred_join(rhs, scalar_u(*q, scalars[j], usp(phi, ms[j])));
    std::string detail = "k=" + std::to_string(k);
    for (int j = 0; j < k; ++j) detail += " a" + std::to_string(j) + "=" + l.name(scalars[j]);
    expect_equal(rep, law, usp(phi, combo), rhs, detail);
  }
  return rep;
}

}  // namespace

LawReport check_linearity(const StateTransformer& phi, LinearityHypothesis hyp,
                          std::uint64_t seed, int cases) {
  require_hypothesis(phi, hyp, "check_linearity");
  return linearity_cases(phi, seed, cases, "linearity");
}

LawReport check_affinity(const StateTransformer& phi, LinearityHypothesis hyp,
                         std::uint64_t seed, int cases) {
  require_hypothesis(phi, hyp, "check_affinity");
  if (!phi.source().has_bottom() || !phi.target().has_bottom())
    throw NoBottom("check_affinity: both domains need a bottom");
  if (!phi.normalized_valued())
    throw NotNormalized("check_affinity: transformer is not normalized-valued");
  LawReport rep;
  const QuantalePtr& q = phi.quantale_ptr();
  const FiniteLattice& l = q->lattice();
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    const int k = rng.uniform(1, 3);
    std::vector<Predicate> ms;
    std::vector<Elem> scalars;
    Elem joined = l.bottom();
    for (int j = 0; j < k; ++j) {
      ms.push_back(random_predicate(phi.source_ptr(), q->lattice_ptr(), rng, Mode::normalized));
      Elem s = j + 1 == k ? completing_scalar(l, joined, rng) : rng.uniform(0, l.size() - 1);
      scalars.push_back(s);
      joined = l.join(joined, s);
    }
    Predicate combo = delta(phi.source_ptr(), q->lattice_ptr());
    for (int j = 0; j < k; ++j) combo = pred_join(combo, scalar_n(*q, scalars[j], ms[j]));
    Predicate rhs = delta(phi.target_ptr(), q->lattice_ptr());
    for (int j = 0; j < k; ++j) rhs = pred_join(rhs, scalar_n(*q, scalars[j], sp(phi, ms[j])));
    std::string detail = "k=" + std::to_string(k);
    for (int j = 0; j < k; ++j) detail += " a" + std::to_string(j) + "=" + l.name(scalars[j]);
    expect_equal(rep, "affinity", sp(phi, combo), rhs, detail);
  }
  return rep;
}

LawReport check_extension(const StateTransformer& phi) {
  if (!phi.isotone()) throw HypothesisNotMet("check_extension: transformer is not isotone");
  LawReport rep;
  const QuantalePtr& q = phi.quantale_ptr();
  for (Elem d = 0; d < phi.source().size(); ++d) {
    expect_equal(rep, "extension on point predicates",
                 usp(phi, eta_u(phi.source_ptr(), q->lattice_ptr(), d)), phi.image(d),
                 "d=" + phi.source().name(d));
    if (phi.source().has_bottom() && phi.target().has_bottom() && phi.normalized_valued())
      expect_equal(rep, "normalized extension on point predicates",
                   sp(phi, eta(phi.source_ptr(), q->lattice_ptr(), d)), phi.image(d),
                   "d=" + phi.source().name(d));
  }
  return rep;
}

LawReport check_least_linear_extension(const StateTransformer& phi, std::uint64_t seed,
                                       int cases) {
  if (!phi.isotone())
    throw HypothesisNotMet("check_least_linear_extension: transformer is not isotone");
  LawReport rep;
  const QuantalePtr& q = phi.quantale_ptr();
  const FiniteLattice& l = q->lattice();
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    Predicate m = random_predicate(phi.source_ptr(), q->lattice_ptr(), rng);
    Predicate rhs = Predicate::constant(phi.target_ptr(), q->lattice_ptr(), l.bottom());
    for (Elem a = 0; a < phi.source().size(); ++a)
      rhs = pred_join(rhs, scalar_u(*q, m.value(a), phi.image(a)));
    expect_equal(rep, "least linear extension", usp(phi, m), rhs, "m=" + pred_str(m));
  }
  return rep;
}

LawReport linearity_counterexample_search(const StateTransformer& phi, std::uint64_t seed,
                                          int cases) {
  return linearity_cases(phi, seed, cases, "linearity (informational search)");
}

}  // namespace latsp
