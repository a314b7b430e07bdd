#include "latsp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <sstream>

#include "latsp/scenarios.hpp"

namespace latsp {
namespace {

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

struct InstanceResult {
  LawReport report;
  std::vector<std::string> info;
  Json artifact;  // serialized instance for the reproducer file
};

void expect(LawReport& r, bool pass, const std::string& law, const std::string& detail) {
  ++r.checked;
  if (!pass) r.add(Witness{law, {}, detail});
}

LawReport from_checks(const std::vector<LawCheck>& checks) {
  LawReport r;
  for (const auto& c : checks) {
    ++r.checked;
    if (!c.pass) {
      std::string detail;
      for (const auto& w : c.witness) detail += (detail.empty() ? "" : ", ") + w;
      r.add(Witness{c.law, {}, detail});
    }
  }
  return r;
}

std::vector<Elem> random_raw(Rng& rng, int n, int lattice_size) {
  std::vector<Elem> v(n);
  for (auto& x : v) x = rng.uniform(0, lattice_size - 1);
  return v;
}

// Least antitone map above a raw valuation (the order-dual of u_closure),
// used to manufacture predicates that satisfy a pointwise lower bound.
std::vector<Elem> antitone_envelope(const DomainPoset& d, const FiniteLattice& l,
                                    const std::vector<Elem>& raw) {
  std::vector<Elem> out(raw.size());
  for (Elem b = 0; b < d.size(); ++b) {
    std::vector<Elem> ups;
    for (Elem a = 0; a < d.size(); ++a)
      if (d.leq(b, a)) ups.push_back(raw[a]);
    out[b] = l.join_all(ups);
  }
  return out;
}

bool pointwise_leq(const FiniteLattice& l, const std::vector<Elem>& a,
                   const std::vector<Elem>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!l.leq(a[i], b[i])) return false;
  return true;
}

std::string vec_to_string(const FiniteLattice& l, const std::vector<Elem>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += l.name(v[i]);
  }
  return s + "]";
}

Json quantale_json(const FiniteLattice& lattice, const std::vector<std::vector<Elem>>& star,
                   Elem unit) {
  Json j;
  j["kind"] = "quantale";
  j["lattice"] = serialize(lattice);
  Json rows = Json::array();
  for (const auto& row : star) {
    Json r = Json::array();
    for (Elem v : row) r.push_back(lattice.name(v));
    rows.push_back(r);
  }
  j["star"] = rows;
  j["unit"] = lattice.name(unit);
  return j;
}

PosetPtr share(DomainPoset p) { return std::make_shared<const DomainPoset>(std::move(p)); }
LatticePtr share(FiniteLattice l) { return std::make_shared<const FiniteLattice>(std::move(l)); }
QuantalePtr share(Quantale q) { return std::make_shared<const Quantale>(std::move(q)); }

// ---------------------------------------------------------------------------
// lattice suite: the verifier accepts lawful constructions, rejects a
// non-lattice, and certifies distributivity of down-set lattices.
// ---------------------------------------------------------------------------

InstanceResult lattice_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));

  DomainPoset p = random_poset(rng.next(), rng.uniform(1, 4), rng.uniform01() * 0.8, false);
  FiniteLattice dl = build_downset_lattice(p);
  LatticeReport lr = verify_lattice(dl.names(), dl.relation(), cfg.exec);
  res.report.merge(from_checks(lr.checks));
  expect(res.report, lr.ok, "down-set lattice satisfies the lattice laws", lr.first_failure());
  LawReport dist = verify_distributive(dl, cfg.exec);
  res.report.merge(dist);
  expect(res.report, dist.ok(), "down-set lattice is distributive", dist.summary());

  LatticePtr rl = random_lattice(rng, cfg.max_lattice);
  LatticeReport rr = verify_lattice(rl->names(), rl->relation(), cfg.exec);
  res.report.merge(from_checks(rr.checks));
  expect(res.report, rr.ok, "generated lattice re-verifies", rr.first_failure());

  if (index == 0) {
    // Two incomparable elements with no bounds: the verifier must refuse.
    Relation anti(2, std::vector<std::uint8_t>(2, 0));
    anti[0][0] = anti[1][1] = 1;
    LatticeReport bad = verify_lattice({"a", "b"}, anti, cfg.exec);
    expect(res.report, !bad.ok, "verifier rejects a non-lattice",
           "the two-element antichain was accepted");
  }

  res.artifact = Json{{"lattice", serialize(dl)}, {"generated", serialize(*rl)}};
  return res;
}

// ---------------------------------------------------------------------------
// quantale suite: generated quantales re-verify, the meet-distributivity
// flag agrees with a full scan, and --inject-failure plants a corrupted
// table at instance 0 that the verifier must catch.
// ---------------------------------------------------------------------------

InstanceResult quantale_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));
  QuantalePtr q = random_quantale(rng, cfg.max_lattice);

  auto star = q->star_table();
  const bool inject = cfg.inject_failure && index == 0;
  if (inject) {
    // A valid table has star[unit][x] = x; bump one entry so the two-sided
    // unit law must fail.
    const Elem u = q->unit();
    const Elem x = u == 0 ? 1 : 0;
    star[u][x] = (star[u][x] + 1) % q->size();
  }

  QuantaleReport qr = verify_quantale(q->lattice_ptr(), star, q->unit(), cfg.exec);
  res.report.merge(from_checks(qr.checks));
  if (inject) {
    expect(res.report, !qr.ok, "verifier catches the planted violation",
           "corrupted unit row was accepted");
  } else {
    expect(res.report, qr.ok, "generated quantale re-verifies", qr.first_failure());
    LawReport inf = inf_distributivity_report(*q, cfg.exec);
    expect(res.report, inf.ok() == q->inf_distributive(),
           "meet-distributivity flag agrees with the full scan",
           "flag=" + std::string(q->inf_distributive() ? "true" : "false"));
  }

  res.artifact = Json{{"quantale", quantale_json(q->lattice(), star, q->unit())}};
  return res;
}

// ---------------------------------------------------------------------------
// semimodule suite: the seven axioms on random instances, both modes, plus
// one exhaustive small instance.
// ---------------------------------------------------------------------------

InstanceResult semimodule_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));
  QuantalePtr q = random_quantale(rng, cfg.max_lattice);

  PosetPtr dg = random_domain(rng, cfg.max_domain, false);
  res.report.merge(check_semimodule_axioms(*q, dg, Mode::general, rng.next(), 4));

  PosetPtr dn = random_domain(rng, cfg.max_domain, true);
  res.report.merge(check_semimodule_axioms(*q, dn, Mode::normalized, rng.next(), 4));

  if (index == 0) {
    QuantalePtr boolean = share(lukasiewicz_quantale(1));
    PosetPtr chain2 = share(chain_poset(2));
    res.report.merge(check_semimodule_axioms_exhaustive(*boolean, chain2, Mode::general));
    res.report.merge(check_semimodule_axioms_exhaustive(*boolean, chain2, Mode::normalized));
  }

  res.artifact = Json{{"quantale", serialize(*q)},
                      {"general_domain", serialize(*dg)},
                      {"normalized_domain", serialize(*dn)}};
  return res;
}

// ---------------------------------------------------------------------------
// closure suite: the antitone closure, the scalar-action laws and the
// closure lemmas in the scope that holds on finite instances.
// ---------------------------------------------------------------------------

InstanceResult closure_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));
  QuantalePtr q = random_quantale(rng, cfg.max_lattice);
  LatticePtr L = q->lattice_ptr();
  PosetPtr D = random_domain(rng, cfg.max_domain, rng.bernoulli(0.5));
  const int n = D->size();
  const int ls = L->size();

  const std::vector<Elem> raw = random_raw(rng, n, ls);
  const Predicate u = u_closure(RawValuation{D, L, raw});

  expect(res.report, u.validate().ok(), "closure output is antitone",
         vec_to_string(*L, u.values()));
  expect(res.report, pointwise_leq(*L, u.values(), raw), "closure stays below its input",
         vec_to_string(*L, raw));
  expect(res.report, u_closure(RawValuation{D, L, u.values()}) == u, "closure is idempotent",
         vec_to_string(*L, u.values()));

  const Predicate g = random_predicate(D, L, rng);
  expect(res.report, u_closure(RawValuation{D, L, g.values()}) == g,
         "closure fixes antitone inputs", vec_to_string(*L, g.values()));

  // Any antitone map below the raw input must sit below the closure.
  std::vector<Elem> lowered(n);
  for (Elem i = 0; i < n; ++i) lowered[i] = L->meet(g.value(i), raw[i]);
  const Predicate h = u_closure(RawValuation{D, L, lowered});
  expect(res.report, h.leq(u), "closure is the greatest antitone map below the input",
         vec_to_string(*L, h.values()));

  // Scalar action composes with the multiplication, in both modes.
  const Elem alpha = rng.uniform(0, ls - 1);
  const Elem beta = rng.uniform(0, ls - 1);
  const Predicate m = random_predicate(D, L, rng);
  expect(res.report,
         scalar_u(*q, alpha, scalar_u(*q, beta, m)) == scalar_u(*q, q->star(alpha, beta), m),
         "scalar action composes with the multiplication",
         L->name(alpha) + "," + L->name(beta));
  if (D->has_bottom()) {
    const Predicate mn = random_predicate(D, L, rng, Mode::normalized);
    expect(res.report,
           scalar_n(*q, alpha, scalar_n(*q, beta, mn)) ==
               scalar_n(*q, q->star(alpha, beta), mn),
           "normalized scalar action composes with the multiplication",
           L->name(alpha) + "," + L->name(beta));
  }

  // Scalar-bound lemma.  For raw f only one direction survives: a bound on
  // α∗f forces the same bound on α∗f^u (the closure only shrinks values).
  // The converse direction needs an antitone f, where it is immediate.
  std::vector<Elem> af(n), fa(n), afu(n), fua(n);
  for (Elem i = 0; i < n; ++i) {
    af[i] = q->star(alpha, raw[i]);
    fa[i] = q->star(raw[i], alpha);
    afu[i] = q->star(alpha, u.value(i));
    fua[i] = q->star(u.value(i), alpha);
  }
  expect(res.report, pointwise_leq(*L, afu, antitone_envelope(*D, *L, af)),
         "scalar bound transfers to the closure (left)", vec_to_string(*L, af));
  expect(res.report, pointwise_leq(*L, fua, antitone_envelope(*D, *L, fa)),
         "scalar bound transfers to the closure (right)", vec_to_string(*L, fa));
  const bool bound_raw = pointwise_leq(*L, af, m.values());
  const bool bound_closed = pointwise_leq(*L, afu, m.values());
  expect(res.report, !bound_raw || bound_closed,
         "scalar bound implication from raw to closed", vec_to_string(*L, m.values()));
  std::vector<Elem> ag(n), agu(n);
  for (Elem i = 0; i < n; ++i) ag[i] = q->star(alpha, g.value(i));
  const Predicate gu = u_closure(RawValuation{D, L, g.values()});
  for (Elem i = 0; i < n; ++i) agu[i] = q->star(alpha, gu.value(i));
  expect(res.report,
         pointwise_leq(*L, ag, m.values()) == pointwise_leq(*L, agu, m.values()),
         "scalar bound equivalence on antitone inputs", vec_to_string(*L, ag));

  // Closure of a scalar product: one inequality always holds; equality for
  // every raw input needs a meet-distributive multiplication, and holds
  // unconditionally for antitone inputs.
  const Predicate left = u_closure(RawValuation{D, L, af});
  const Predicate right = u_closure(RawValuation{D, L, afu});
  expect(res.report, right.leq(left), "closed product dominates the closed factors",
         vec_to_string(*L, af));
  if (q->inf_distributive()) {
    expect(res.report, left == right,
           "closed product equality under meet-distributive multiplication",
           vec_to_string(*L, af) + " alpha=" + L->name(alpha));
  } else if (left != right) {
    res.info.push_back("closed-product gap on a non-meet-distributive quantale: alpha=" +
                       L->name(alpha) + " f=" + vec_to_string(*L, raw));
  }
  expect(res.report, u_closure(RawValuation{D, L, ag}).values() == ag,
         "scalar product of an antitone input stays antitone", vec_to_string(*L, ag));

  // Pointwise suprema of families: the closure of the supremum dominates
  // the supremum of the closures, with equality for antitone families.
  const int fam = rng.uniform(1, 3);
  std::vector<Elem> psup(n, L->bottom()), psup_closed(n, L->bottom());
  for (int k = 0; k < fam; ++k) {
    const std::vector<Elem> fi = random_raw(rng, n, ls);
    const Predicate fiu = u_closure(RawValuation{D, L, fi});
    for (Elem i = 0; i < n; ++i) {
      psup[i] = L->join(psup[i], fi[i]);
      psup_closed[i] = L->join(psup_closed[i], fiu.value(i));
    }
  }
  expect(res.report,
         u_closure(RawValuation{D, L, psup_closed}).leq(u_closure(RawValuation{D, L, psup})),
         "closed family supremum dominates", vec_to_string(*L, psup));
  const Predicate g2 = random_predicate(D, L, rng);
  std::vector<Elem> sg(n);
  for (Elem i = 0; i < n; ++i) sg[i] = L->join(g.value(i), g2.value(i));
  expect(res.report, antitone_violation(*D, *L, sg) == std::nullopt,
         "supremum of antitone maps is antitone", vec_to_string(*L, sg));
  expect(res.report, pred_join(g, g2).values() == sg,
         "join is the pointwise supremum", vec_to_string(*L, sg));

  res.artifact = Json{{"quantale", serialize(*q)},
                      {"domain", serialize(*D)},
                      {"raw", vec_to_string(*L, raw)}};
  return res;
}

// ---------------------------------------------------------------------------
// transformer suite: join/sup preservation, linearity and affinity under
// their hypotheses, extension, the least-linear-extension identity, formula
// agreement, and the postcondition relation itself.
// ---------------------------------------------------------------------------

InstanceResult transformer_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));
  QuantalePtr q = random_quantale(rng, cfg.max_lattice);
  LatticePtr L = q->lattice_ptr();
  PosetPtr source = random_domain(rng, cfg.max_domain, rng.bernoulli(0.5));
  PosetPtr target =
      rng.bernoulli(0.3) ? source : random_domain(rng, cfg.max_domain, rng.bernoulli(0.5));

  const StateTransformer any = random_transformer(rng, source, target, q, false, false);
  const StateTransformer iso = random_transformer(rng, source, target, q, true, false);

  res.report.merge(check_join_preservation(any, rng.next(), 3));
  res.report.merge(check_join_preservation(iso, rng.next(), 2));

  for (int k = 0; k < 2; ++k) {
    const Predicate m = random_predicate(source, L, rng);
    expect(res.report, usp_general(any, m) == usp_simple(any, m, cfg.exec),
           "simple formula agrees with the general formula", vec_to_string(*L, m.values()));

    // Monotonicity in the predicate and in the transformer.
    const Predicate m2 = pred_join(m, random_predicate(source, L, rng));
    expect(res.report, usp_simple(any, m, cfg.exec).leq(usp_simple(any, m2, cfg.exec)),
           "transformer is isotone in the predicate", vec_to_string(*L, m2.values()));
    std::vector<Predicate> bigger;
    for (Elem a = 0; a < source->size(); ++a)
      bigger.push_back(pred_join(any.image(a), random_predicate(target, L, rng)));
    const StateTransformer wider(source, target, q, std::move(bigger));
    expect(res.report, usp_simple(any, m, cfg.exec).leq(usp_simple(wider, m, cfg.exec)),
           "transformer is isotone in the images", "case " + std::to_string(k));

    // The postcondition relation: usp output qualifies, and lowering any
    // attained coordinate below the computed join disqualifies it.
    const Predicate out = usp_simple(any, m, cfg.exec);
    expect(res.report, is_postcondition(any, m, out), "usp output is a postcondition",
           vec_to_string(*L, out.values()));
    Elem witness_b = -1;
    for (Elem b = 0; b < target->size(); ++b)
      if (out.value(b) != L->bottom()) {
        witness_b = b;
        break;
      }
    if (witness_b >= 0) {
      std::vector<Elem> lowered = out.values();
      for (Elem w = 0; w < L->size(); ++w)
        if (L->leq(w, lowered[witness_b]) && w != lowered[witness_b]) {
          lowered[witness_b] = w;
          break;
        }
      bool still = true;
      for (Elem a = 0; a < source->size() && still; ++a)
        for (Elem b = 0; b < target->size() && still; ++b)
          if (!L->leq(q->star(m.value(a), any.image(a).value(b)), lowered[b])) still = false;
      expect(res.report, !still, "lowering an attained coordinate breaks the postcondition",
             "at " + target->name(witness_b));
    }

    // The postcondition relation only sees the closure of a raw input when
    // the raw input is already antitone.
    const Predicate mp = random_predicate(target, L, rng);
    expect(res.report,
           is_postcondition(any, m.values(), mp) ==
               is_postcondition(any, u_closure(RawValuation{source, L, m.values()}), mp),
           "postcondition relation factors through the closure",
           vec_to_string(*L, m.values()));
  }

  res.report.merge(check_sup_preservation(iso, rng.next(), 2, 4));
  res.report.merge(check_linearity(iso, LinearityHypothesis::isotone_transformer, rng.next(), 3));
  res.report.merge(check_extension(iso));
  res.report.merge(check_least_linear_extension(iso, rng.next(), 3));

  if (q->inf_distributive()) {
    res.report.merge(
        check_linearity(any, LinearityHypothesis::inf_distributive_quantale, rng.next(), 3));
  } else if (!any.isotone()) {
    const LawReport probe = linearity_counterexample_search(any, rng.next(), 3);
    if (!probe.ok())
      res.info.push_back("linearity probe without a licensing hypothesis found " +
                         std::to_string(probe.failures.size()) + " gap(s): " +
                         probe.failures.front().detail);
  }

  // Affinity needs bottoms on both sides and normalized-valued images.
  PosetPtr nsource = random_domain(rng, cfg.max_domain, true);
  PosetPtr ntarget = rng.bernoulli(0.5) ? nsource : random_domain(rng, cfg.max_domain, true);
  const StateTransformer niso = random_transformer(rng, nsource, ntarget, q, true, true);
  res.report.merge(check_affinity(niso, LinearityHypothesis::isotone_transformer, rng.next(), 3));
  if (q->inf_distributive()) {
    const StateTransformer nany = random_transformer(rng, nsource, ntarget, q, false, true);
    res.report.merge(
        check_affinity(nany, LinearityHypothesis::inf_distributive_quantale, rng.next(), 3));
  }

  InstanceBundle bundle;
  bundle.quantale = q;
  bundle.source = source;
  bundle.target = target;
  bundle.transformer = any;
  res.artifact = Json{{"bundle", serialize(bundle)}};
  return res;
}

// ---------------------------------------------------------------------------
// oracle suite: usp equals the enumerate-all-postconditions oracle on small
// instances over a fixed mix of quantales.
// ---------------------------------------------------------------------------

InstanceResult oracle_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));

  QuantalePtr q;
  switch (index % 4) {
    case 0: q = share(lukasiewicz_quantale(1)); break;                           // Boolean
    case 1: q = share(godel_quantale(share(build_chain(3)))); break;             // chain-3 meet
    case 2: q = share(lukasiewicz_quantale(2)); break;                           // chain-3 table
    default:
      q = share(godel_quantale(share(build_product(build_chain(2), build_chain(2)))));
  }
  LatticePtr L = q->lattice_ptr();
  PosetPtr source = random_domain(rng, 3, rng.bernoulli(0.5));
  PosetPtr target = random_domain(rng, 3, rng.bernoulli(0.5));
  const StateTransformer phi =
      random_transformer(rng, source, target, q, rng.bernoulli(0.5), false);

  for (int k = 0; k < 2; ++k) {
    const Predicate m = random_predicate(source, L, rng);
    const Predicate fast = usp_simple(phi, m, cfg.exec);
    const Predicate slow = oracle_least_postcondition(phi, m);
    expect(res.report, fast == slow, "usp matches the enumeration oracle",
           "usp=" + vec_to_string(*L, fast.values()) +
               " oracle=" + vec_to_string(*L, slow.values()));
    expect(res.report, is_postcondition(phi, m, fast), "usp output is a postcondition",
           vec_to_string(*L, fast.values()));
  }
  if (index == 0) {
    const Predicate zero = Predicate::constant(source, L, L->bottom());
    expect(res.report,
           oracle_least_postcondition(phi, zero) ==
               Predicate::constant(target, L, L->bottom()),
           "zero predicate maps to zero", "constant bottom input");
  }

  InstanceBundle bundle;
  bundle.quantale = q;
  bundle.source = source;
  bundle.target = target;
  bundle.transformer = phi;
  res.artifact = Json{{"bundle", serialize(bundle)}};
  return res;
}

// ---------------------------------------------------------------------------
// embedding suite: eta as an order embedding, least-element
// characterizations, and the point-predicate decomposition.
// ---------------------------------------------------------------------------

InstanceResult embedding_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));
  QuantalePtr q = random_quantale(rng, cfg.max_lattice);
  LatticePtr L = q->lattice_ptr();
  PosetPtr D = random_domain(rng, cfg.max_domain, rng.bernoulli(0.5));

  bool embeds = true;
  for (Elem d1 = 0; d1 < D->size() && embeds; ++d1)
    for (Elem d2 = 0; d2 < D->size() && embeds; ++d2)
      if (eta_u(D, L, d1).leq(eta_u(D, L, d2)) != D->leq(d1, d2)) embeds = false;
  expect(res.report, embeds, "eta preserves and reflects the order", D->name(0));

  if (D->has_bottom()) {
    bool nembeds = true;
    for (Elem d1 = 0; d1 < D->size() && nembeds; ++d1)
      for (Elem d2 = 0; d2 < D->size() && nembeds; ++d2)
        if (eta(D, L, d1).leq(eta(D, L, d2)) != D->leq(d1, d2)) nembeds = false;
    expect(res.report, nembeds, "normalized eta preserves and reflects the order",
           D->name(D->bottom()));
    const Predicate mn = random_predicate(D, L, rng, Mode::normalized);
    expect(res.report, delta(D, L).leq(mn), "delta is the least normalized predicate",
           vec_to_string(*L, mn.values()));
  }

  // Exhaustive least-element characterization on a small side instance.
  PosetPtr Ds = share(random_poset(rng.next(), rng.uniform(1, 2), rng.uniform01(), true));
  LatticePtr Ls = share(build_chain(rng.uniform(2, 3)));
  const auto maps = enumerate_antitone_maps(*Ds, *Ls, 10000);
  const Elem d0 = rng.uniform(0, Ds->size() - 1);
  std::vector<Elem> least_general(Ds->size(), Ls->top());
  std::vector<Elem> least_normalized(Ds->size(), Ls->top());
  bool any_normalized = false;
  for (const auto& mv : maps) {
    if (mv[d0] != Ls->top()) continue;
    for (Elem i = 0; i < Ds->size(); ++i)
      least_general[i] = Ls->meet(least_general[i], mv[i]);
    if (mv[Ds->bottom()] == Ls->top()) {
      any_normalized = true;
      for (Elem i = 0; i < Ds->size(); ++i)
        least_normalized[i] = Ls->meet(least_normalized[i], mv[i]);
    }
  }
  expect(res.report, least_general == eta_u(Ds, Ls, d0).values(),
         "eta is the least predicate holding at its point",
         vec_to_string(*Ls, least_general));
  expect(res.report, any_normalized && least_normalized == eta(Ds, Ls, d0).values(),
         "normalized eta is the least normalized predicate holding at its point",
         vec_to_string(*Ls, least_normalized));

  // Decomposition into point predicates reconstructs the original.
  const Predicate m = random_predicate(D, L, rng);
  expect(res.report, recompose(*q, D, decompose(m)) == m,
         "point decomposition reconstructs the predicate", vec_to_string(*L, m.values()));

  res.artifact = Json{{"quantale", serialize(*q)}, {"domain", serialize(*D)}};
  return res;
}

// ---------------------------------------------------------------------------
// scenarios suite: the quality-scale constructions, the frame pipeline and
// the quantized probability predicates.
// ---------------------------------------------------------------------------

InstanceResult scenarios_instance(const SuiteConfig& cfg, int index) {
  InstanceResult res;
  Rng rng(derive_seed(cfg.seed, index));
  const int parts = 2 + index % 2;
  const int degrees = 2 + index % 3;
  const ScaleQuantale sq = index % 2 ? ScaleQuantale::godel : ScaleQuantale::lukasiewicz;
  const QualityScale scale = make_quality_scale(parts, degrees, sq);
  const FiniteLattice& L = *scale.lattice;

  std::vector<int> qv(parts), sv(parts), dv(parts);
  for (int i = 0; i < parts; ++i) {
    qv[i] = rng.uniform(0, degrees);
    sv[i] = rng.uniform(0, degrees);
    dv[i] = rng.uniform(0, degrees);
  }

  const Predicate margin = margin_predicate(scale, qv);
  const Predicate below = threshold_below_predicate(scale, qv);
  const Predicate above = threshold_above_predicate(scale, qv);
  expect(res.report,
         margin.validate().ok() && below.validate().ok() && above.validate().ok(),
         "quality predicates are antitone", "q=" + scale.domain->name(scale.state_index(qv)));
  expect(res.report, margin.value(scale.state_index(qv)) == degrees,
         "exactly met quality has full margin", scale.domain->name(scale.state_index(qv)));
  const Elem bottom = scale.domain->bottom();
  expect(res.report,
         margin.value(bottom) == degrees && below.value(bottom) == degrees &&
             above.value(bottom) == degrees,
         "quality predicates hold fully at the no-information state",
         scale.domain->name(bottom));

  const RawValuation truth = truth_valuation(scale, sv);
  const Elem at_d = scale.state_index(dv);
  if (sq == ScaleQuantale::lukasiewicz) {
    expect(res.report,
           truth.values[at_d] == margin_predicate(scale, dv).value(scale.state_index(sv)),
           "truth valuation swaps roles with the margin predicate",
           "s=" + scale.domain->name(scale.state_index(sv)) +
               " d=" + scale.domain->name(at_d));
  } else {
    int closed = degrees;
    for (int i = 0; i < parts; ++i)
      closed = std::min(closed, dv[i] <= sv[i] ? degrees : sv[i]);
    expect(res.report, truth.values[at_d] == closed,
           "truth valuation matches its closed form",
           "s=" + scale.domain->name(scale.state_index(sv)) +
               " d=" + scale.domain->name(at_d));
  }
  const std::vector<int> all_m(parts, degrees);
  expect(res.report,
         truth_predicate(scale, all_m) == Predicate::constant(scale.domain, scale.lattice,
                                                              static_cast<Elem>(degrees)),
         "perfect qualities make every assertion fully true", "s=all-" + std::to_string(degrees));

  if (parts >= 3) {
    const StateTransformer frames = frame_transformer(scale);
    expect(res.report, !frames.isotone(), "frame transformer is not isotone", "");
    expect(res.report, !frames.normalized_valued(),
           "frame transformer images are not normalized-valued", "");
    const Predicate out = usp_simple(frames, truth_predicate(scale, all_m), cfg.exec);
    bool middle = true;
    for (Elem b = 0; b < scale.domain->size() && middle; ++b)
      if (out.value(b) != scale.state_of(b)[1]) middle = false;
    expect(res.report, middle, "frame pipeline reports the middle coordinate",
           vec_to_string(L, {out.value(0)}));
  }

  // Quantized guaranteed probabilities.
  const int nstates = rng.uniform(2, 3);
  std::vector<std::string> names;
  for (int i = 0; i < nstates; ++i) names.push_back("s" + std::to_string(i + 1));
  const int ndists = rng.uniform(1, 3);
  const int resolution = rng.uniform(2, 6);
  std::vector<SubDistribution> dists;
  for (int i = 0; i < ndists; ++i) {
    SubDistribution d;
    d.den = rng.uniform(2, 12);
    long long left = d.den;
    for (int s = 0; s < nstates; ++s) {
      const long long w = rng.uniform(0, static_cast<int>(left));
      d.num.push_back(w);
      left -= w;
    }
    dists.push_back(std::move(d));
  }
  const Predicate prob = guaranteed_probability_predicate(names, dists, resolution);
  expect(res.report, prob.validate().ok(),
         "probability predicate is antitone for reverse inclusion", "");
  bool full = true;
  for (const auto& d : dists) {
    long long total = 0;
    for (long long w : d.num) total += w;
    if (total != d.den) full = false;
  }
  expect(res.report, (prob.mode() == Mode::normalized) == full,
         "probability predicate is normalized exactly for full distributions",
         full ? "full mass" : "subprobability");
  bool floors = true;
  for (int mask = 0; mask < (1 << nstates) && floors; ++mask) {
    // Exact minimum over the distributions by cross-multiplication.
    long long bn = 1, bd = 1;
    bool first = true;
    for (const auto& d : dists) {
      long long an = 0;
      for (int s = 0; s < nstates; ++s)
        if (mask >> s & 1) an += d.num[s];
      if (first || an * bd < bn * d.den) {
        bn = an;
        bd = d.den;
        first = false;
      }
    }
    const long long v = prob.value(mask);
    if (!(v * bd <= resolution * bn && resolution * bn < (v + 1) * bd)) floors = false;
  }
  expect(res.report, floors, "quantization floors the exact probability", "");

  res.artifact = Json{{"parts", parts}, {"degrees", degrees},
                      {"resolution", resolution}};
  return res;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

using InstanceFn = InstanceResult (*)(const SuiteConfig&, int);

struct SuiteDef {
  const char* name;
  InstanceFn fn;
};

constexpr SuiteDef kSuites[] = {
    {"lattice", lattice_instance},       {"quantale", quantale_instance},
    {"semimodule", semimodule_instance}, {"closure", closure_instance},
    {"transformer", transformer_instance}, {"oracle", oracle_instance},
    {"embedding", embedding_instance},   {"scenarios", scenarios_instance},
};

InstanceResult guarded(InstanceFn fn, const SuiteConfig& cfg, int index) {
  try {
    return fn(cfg, index);
  } catch (const std::exception& e) {
    InstanceResult r;
    ++r.report.checked;
    r.report.add(Witness{"unexpected error", {}, e.what()});
    return r;
  }
}

std::string write_reproducer(const SuiteConfig& cfg, const std::string& suite, int index,
                             const InstanceResult& r) {
  Json j;
  j["kind"] = "reproducer";
  j["suite"] = suite;
  j["seed"] = cfg.seed;
  j["index"] = index;
  j["cases"] = cfg.cases;
  j["max_domain"] = cfg.max_domain;
  j["max_lattice"] = cfg.max_lattice;
  j["inject_failure"] = cfg.inject_failure;
  Json witnesses = Json::array();
  for (std::size_t i = 0; i < r.report.failures.size() && i < 4; ++i)
    witnesses.push_back(r.report.failures[i].pretty());
  j["witnesses"] = witnesses;
  if (!r.artifact.is_null()) j["instance"] = r.artifact;
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path =
      cfg.out_dir + "/repro_" + suite + "_" + std::to_string(index) + ".json";
  save_json_file(path, j);
  return path;
}

SuiteOutcome run_one_suite(const SuiteDef& def, const SuiteConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteOutcome out;
  out.suite = def.name;
  const int n = std::max(1, cfg.cases);
  std::vector<InstanceResult> results(n);

#ifdef _OPENMP
  if (cfg.exec != Exec::serial && n > 1) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) results[i] = guarded(def.fn, cfg, i);
  } else {
    for (int i = 0; i < n; ++i) results[i] = guarded(def.fn, cfg, i);
  }
#else
  for (int i = 0; i < n; ++i) results[i] = guarded(def.fn, cfg, i);
#endif

  for (int i = 0; i < n; ++i) {
    InstanceResult& r = results[i];
    for (auto& w : r.report.failures)
      w.items.insert(w.items.begin(), "case " + std::to_string(i));
    if (!r.report.ok() && !cfg.out_dir.empty() &&
        static_cast<int>(out.reproducer_files.size()) < cfg.max_reproducers)
      out.reproducer_files.push_back(write_reproducer(cfg, def.name, i, r));
    out.report.merge(r.report);
    for (const auto& s : r.info)
      out.informational.push_back("case " + std::to_string(i) + ": " + s);
  }

  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& def : kSuites) names.emplace_back(def.name);
  return names;
}

std::vector<SuiteOutcome> run_suites(const SuiteConfig& cfg) {
  std::vector<SuiteOutcome> outcomes;
  for (const auto& def : kSuites) {
    if (!cfg.only.empty() &&
        std::find(cfg.only.begin(), cfg.only.end(), def.name) == cfg.only.end())
      continue;
    outcomes.push_back(run_one_suite(def, cfg));
  }
  return outcomes;
}

bool all_passed(const std::vector<SuiteOutcome>& outcomes) {
  for (const auto& o : outcomes)
    if (!o.report.ok()) return false;
  return true;
}

LawReport rerun_reproducer(const std::string& path) {
  const Json j = load_json_file(path);
  if (!j.is_object() || j.value("kind", "") != "reproducer")
    throw ParseError("rerun: '" + path + "' is not a reproducer file");
  SuiteConfig cfg;
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.cases = j.value("cases", cfg.cases);
  cfg.max_domain = j.value("max_domain", cfg.max_domain);
  cfg.max_lattice = j.value("max_lattice", cfg.max_lattice);
  cfg.inject_failure = j.value("inject_failure", false);
  const std::string suite = j.at("suite").get<std::string>();
  const int index = j.at("index").get<int>();
  for (const auto& def : kSuites)
    if (suite == def.name) return guarded(def.fn, cfg, index).report;
  throw ParseError("rerun: unknown suite '" + suite + "'");
}

std::string format_outcomes(const std::vector<SuiteOutcome>& outcomes, bool machine) {
  std::ostringstream os;
  if (machine) {
    for (const auto& o : outcomes) {
      os << "suite\t" << o.suite << '\t' << (o.report.ok() ? "pass" : "fail") << '\t'
         << "checked=" << o.report.checked << '\t' << "failures=" << o.report.failures.size()
         << '\n';
      for (const auto& w : o.report.failures) os << "witness\t" << o.suite << '\t' << w.pretty() << '\n';
      for (const auto& i : o.informational) os << "info\t" << o.suite << '\t' << i << '\n';
      for (const auto& f : o.reproducer_files) os << "repro\t" << o.suite << '\t' << f << '\n';
    }
    os << "overall\t" << (all_passed(outcomes) ? "pass" : "fail") << '\n';
  } else {
    for (const auto& o : outcomes) {
      os << o.suite << ": " << (o.report.ok() ? "ok" : "FAILED") << " (" << o.report.checked
         << " checks";
      if (!o.report.ok()) os << ", " << o.report.failures.size() << " failures";
      os << ")\n";
      for (const auto& w : o.report.failures) os << "  failure: " << w.pretty() << '\n';
      for (const auto& i : o.informational) os << "  note: " << i << '\n';
      for (const auto& f : o.reproducer_files) os << "  reproducer: " << f << '\n';
    }
    os << (all_passed(outcomes) ? "all suites passed" : "SUITE FAILURES PRESENT") << '\n';
  }
  return os.str();
}

}  // namespace latsp
