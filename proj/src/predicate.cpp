#include "latsp/predicate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace latsp {

namespace {

bool same_poset(const PosetPtr& a, const PosetPtr& b) {
  return a.get() == b.get() || a->same_structure(*b);
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  return a.get() == b.get() || a->same_structure(*b);
}

void require_compatible(const Predicate& a, const Predicate& b, const char* op) {
  if (!same_poset(a.domain_ptr(), b.domain_ptr()) ||
      !same_lattice(a.lattice_ptr(), b.lattice_ptr()))
    throw MismatchError(std::string(op) + ": predicates over different domain or lattice");
}

void require_scalar_shape(const Quantale& q, Elem alpha, const Predicate& m, const char* op) {
  if (alpha < 0 || alpha >= q.size())
    throw UnknownElement(std::string(op) + ": scalar out of range");
  if (!m.lattice().same_structure(q.lattice()))
    throw MismatchError(std::string(op) + ": predicate lattice does not match quantale");
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

Predicate::Predicate(PosetPtr domain, LatticePtr lattice, std::vector<Elem> values, Mode mode)
    : domain_(std::move(domain)), lattice_(std::move(lattice)), values_(std::move(values)), mode_(mode) {
  if (!domain_ || !lattice_) throw Error("Predicate: null domain or lattice");
  if (static_cast<int>(values_.size()) != domain_->size())
    throw MismatchError("Predicate: value count does not match domain size");
  for (Elem v : values_)
    if (v < 0 || v >= lattice_->size()) throw UnknownElement("Predicate: value out of range");
  if (mode_ == Mode::normalized && !domain_->has_bottom())
    throw NoBottom("normalized predicate requires a domain with bottom");
#ifndef NDEBUG
  assert(validate().ok());
#endif
}

Predicate Predicate::constant(PosetPtr domain, LatticePtr lattice, Elem value, Mode mode) {
  if (!domain) throw Error("Predicate::constant: null domain");
  std::vector<Elem> values(domain->size(), value);
  return Predicate(std::move(domain), std::move(lattice), std::move(values), mode);
}

LawReport Predicate::validate() const {
  LawReport rep;
  rep.checked = 1LL * domain_->size() * domain_->size();
  if (auto bad = antitone_violation(*domain_, *lattice_, values_))
    rep.add({"antitonicity",
             {domain_->name(bad->first), domain_->name(bad->second)},
             lattice_->name(values_[bad->first]) + " vs " + lattice_->name(values_[bad->second])});
  if (mode_ == Mode::normalized) {
    ++rep.checked;
    if (values_[domain_->bottom()] != lattice_->top())
      rep.add({"normalization",
               {domain_->name(domain_->bottom())},
               "value " + lattice_->name(values_[domain_->bottom()]) + " is not 1"});
  }
  return rep;
}

bool Predicate::leq(const Predicate& other) const {
  require_compatible(*this, other, "Predicate::leq");
  for (int d = 0; d < domain_size(); ++d)
    if (!lattice_->leq(values_[d], other.values_[d])) return false;
  return true;
}

bool Predicate::operator==(const Predicate& other) const {
  return same_poset(domain_, other.domain_) && same_lattice(lattice_, other.lattice_) &&
         values_ == other.values_;
}

std::optional<std::pair<Elem, Elem>> antitone_violation(const DomainPoset& d,
                                                        const FiniteLattice& l,
                                                        const std::vector<Elem>& values) {
  for (Elem a = 0; a < d.size(); ++a)
    for (Elem b = 0; b < d.size(); ++b)
      if (d.leq(a, b) && !l.leq(values[b], values[a])) return std::make_pair(a, b);
  return std::nullopt;
}

Predicate u_closure(const RawValuation& f) {
  if (!f.domain || !f.lattice) throw Error("u_closure: null domain or lattice");
  if (static_cast<int>(f.values.size()) != f.domain->size())
    throw MismatchError("u_closure: value count does not match domain size");
  const DomainPoset& d = *f.domain;
  const FiniteLattice& l = *f.lattice;
  std::vector<Elem> out(d.size());
  for (Elem b = 0; b < d.size(); ++b) {
    Elem acc = l.top();
    for (Elem a = 0; a < d.size(); ++a)
      if (d.way_below(a, b)) acc = l.meet(acc, f.values[a]);
    out[b] = acc;
  }
  return Predicate(f.domain, f.lattice, std::move(out), Mode::general);
}

Predicate pred_join(const Predicate& a, const Predicate& b) {
  require_compatible(a, b, "pred_join");
  std::vector<Elem> out(a.domain_size());
  for (int d = 0; d < a.domain_size(); ++d) out[d] = a.lattice().join(a.value(d), b.value(d));
  Mode mode = (a.mode() == Mode::normalized && b.mode() == Mode::normalized)
                  ? Mode::normalized
                  : Mode::general;
  return Predicate(a.domain_ptr(), a.lattice_ptr(), std::move(out), mode);
}

Predicate pred_meet(const Predicate& a, const Predicate& b) {
  require_compatible(a, b, "pred_meet");
  std::vector<Elem> out(a.domain_size());
  for (int d = 0; d < a.domain_size(); ++d) out[d] = a.lattice().meet(a.value(d), b.value(d));
  Mode mode = (a.mode() == Mode::normalized && b.mode() == Mode::normalized)
                  ? Mode::normalized
                  : Mode::general;
  return Predicate(a.domain_ptr(), a.lattice_ptr(), std::move(out), mode);
}

Predicate sup_family(PosetPtr domain, LatticePtr lattice, const std::vector<Predicate>& family) {
  if (!domain || !lattice) throw Error("sup_family: null domain or lattice");
  Predicate acc = Predicate::constant(domain, lattice, lattice->bottom(), Mode::general);
  for (const Predicate& p : family) acc = pred_join(acc, p);
  return acc;
}

Predicate inf_family(PosetPtr domain, LatticePtr lattice, const std::vector<Predicate>& family) {
  if (!domain || !lattice) throw Error("inf_family: null domain or lattice");
  Mode mode = domain->has_bottom() ? Mode::normalized : Mode::general;
  for (const Predicate& p : family)
    if (p.mode() != Mode::normalized) mode = Mode::general;
  Predicate acc = Predicate::constant(domain, lattice, lattice->top(), mode);
  for (const Predicate& p : family) acc = pred_meet(acc, p);
  return acc;
}

Predicate scalar_u(const Quantale& q, Elem alpha, const Predicate& m) {
  require_scalar_shape(q, alpha, m, "scalar_u");
  // (α∗m)^u: the pointwise product is already antitone on a finite poset,
  // so the closure is computed directly as the product.
  std::vector<Elem> out(m.domain_size());
  for (int d = 0; d < m.domain_size(); ++d) out[d] = q.star(alpha, m.value(d));
  return Predicate(m.domain_ptr(), m.lattice_ptr(), std::move(out), Mode::general);
}

Predicate scalar_n(const Quantale& q, Elem alpha, const Predicate& m) {
  require_scalar_shape(q, alpha, m, "scalar_n");
  if (m.mode() != Mode::normalized)
    throw NotNormalized("scalar_n: operand must be a normalized predicate");
  Predicate scaled = scalar_u(q, alpha, m);
  std::vector<Elem> out = scaled.values();
  out[m.domain().bottom()] = m.lattice().top();
  return Predicate(m.domain_ptr(), m.lattice_ptr(), std::move(out), Mode::normalized);
}

Predicate eta(PosetPtr domain, LatticePtr lattice, Elem d0) {
  if (!domain || !lattice) throw Error("eta: null domain or lattice");
  if (!domain->has_bottom()) throw NoBottom("eta: domain has no bottom; use eta_u");
  if (d0 < 0 || d0 >= domain->size()) throw UnknownElement("eta: element out of range");
  std::vector<Elem> out(domain->size());
  for (Elem d = 0; d < domain->size(); ++d)
    out[d] = domain->leq(d, d0) ? lattice->top() : lattice->bottom();
  return Predicate(std::move(domain), std::move(lattice), std::move(out), Mode::normalized);
}

Predicate eta_u(PosetPtr domain, LatticePtr lattice, Elem d0) {
  if (!domain || !lattice) throw Error("eta_u: null domain or lattice");
  if (d0 < 0 || d0 >= domain->size()) throw UnknownElement("eta_u: element out of range");
  std::vector<Elem> out(domain->size());
  for (Elem d = 0; d < domain->size(); ++d)
    out[d] = domain->leq(d, d0) ? lattice->top() : lattice->bottom();
  return Predicate(std::move(domain), std::move(lattice), std::move(out), Mode::general);
}

Predicate delta(PosetPtr domain, LatticePtr lattice) {
  if (!domain || !lattice) throw Error("delta: null domain or lattice");
  if (!domain->has_bottom()) throw NoBottom("delta: domain has no bottom");
  return eta(domain, lattice, domain->bottom());
}

Predicate normalize(const Predicate& m) {
  if (!m.domain().has_bottom()) throw NoBottom("normalize: domain has no bottom");
  std::vector<Elem> out = m.values();
  out[m.domain().bottom()] = m.lattice().top();
  return Predicate(m.domain_ptr(), m.lattice_ptr(), std::move(out), Mode::normalized);
}

std::vector<std::pair<Elem, Elem>> decompose(const Predicate& m) {
  std::vector<std::pair<Elem, Elem>> parts;
  parts.reserve(m.domain_size());
  for (Elem d = 0; d < m.domain_size(); ++d) parts.emplace_back(m.value(d), d);
  return parts;
}

Predicate recompose(const Quantale& q, const PosetPtr& domain,
                    const std::vector<std::pair<Elem, Elem>>& parts) {
  Predicate acc = Predicate::constant(domain, q.lattice_ptr(), q.lattice().bottom());
  for (auto& [coef, point] : parts)
    acc = pred_join(acc, scalar_u(q, coef, eta_u(domain, q.lattice_ptr(), point)));
  return acc;
}

std::vector<std::vector<Elem>> enumerate_antitone_maps(const DomainPoset& d,
                                                       const FiniteLattice& l,
                                                       std::size_t cap) {
  // The guard bounds |L|^|D|, the size of the raw search space.
  double log_space = static_cast<double>(d.size()) * std::log(static_cast<double>(l.size()));
  if (l.size() > 1 && log_space > std::log(static_cast<double>(cap)) + 1e-9)
    throw CapExceeded("enumerate_antitone_maps: |L|^|D| exceeds cap");

  const std::vector<Elem> order = d.topo_order();
  std::vector<std::vector<Elem>> result;
  std::vector<Elem> values(d.size(), -1);
  // Assign along a linear extension; every element below the current one is
  // already assigned, so the antitone constraint is an upper bound by meets.
  auto dfs = [&](auto&& self, std::size_t pos) -> void {
    if (pos == order.size()) {
      result.push_back(values);
      return;
    }
    const Elem e = order[pos];
    Elem bound = l.top();
    for (std::size_t prev = 0; prev < pos; ++prev)
      if (d.leq(order[prev], e)) bound = l.meet(bound, values[order[prev]]);
    for (Elem v = 0; v < l.size(); ++v)
      if (l.leq(v, bound)) {
        values[e] = v;
        self(self, pos + 1);
      }
    values[e] = -1;
  };
  dfs(dfs, 0);
  return result;
}

Predicate random_predicate(PosetPtr domain, LatticePtr lattice, Rng& rng, Mode mode) {
  std::vector<Elem> raw(domain->size());
  for (auto& v : raw) v = rng.uniform(0, lattice->size() - 1);
  Predicate p = u_closure({domain, lattice, std::move(raw)});
  if (mode == Mode::normalized) return normalize(p);
  return p;
}

namespace {

struct AxiomContext {
  const Quantale& q;
  Mode mode;
  const Predicate& theta;
  LawReport& rep;

  Predicate act(Elem alpha, const Predicate& m) const {
    return mode == Mode::normalized ? scalar_n(q, alpha, m) : scalar_u(q, alpha, m);
  }

  void expect(const char* law, const Predicate& lhs, const Predicate& rhs,
              std::initializer_list<Elem> scalars, const Predicate& x) const {
    ++rep.checked;
    if (lhs == rhs) return;
    std::vector<std::string> items;
    for (Elem s : scalars) items.push_back(q.lattice().name(s));
    rep.add({law, items, "x=" + pred_str(x) + " lhs=" + pred_str(lhs) + " rhs=" + pred_str(rhs)});
  }

  void run(const Predicate& x, const Predicate& y, const Predicate& z, Elem alpha, Elem beta) const {
    const FiniteLattice& l = q.lattice();
    expect("addition associativity", pred_join(pred_join(x, y), z), pred_join(x, pred_join(y, z)),
           {}, x);
    expect("addition commutativity", pred_join(x, y), pred_join(y, x), {}, x);
    expect("addition idempotence", pred_join(x, x), x, {}, x);
    expect("neutral element", pred_join(x, theta), x, {}, x);
    expect("action distributes over addition", act(alpha, pred_join(x, y)),
           pred_join(act(alpha, x), act(alpha, y)), {alpha}, x);
    expect("action distributes over scalar join", act(l.join(alpha, beta), x),
           pred_join(act(alpha, x), act(beta, x)), {alpha, beta}, x);
    expect("action compatible with multiplication", act(q.star(alpha, beta), x),
           act(alpha, act(beta, x)), {alpha, beta}, x);
    expect("unit acts as identity", act(q.unit(), x), x, {}, x);
    expect("zero acts as zero", act(l.bottom(), x), theta, {}, x);
  }
};

Predicate neutral_predicate(const Quantale& q, const PosetPtr& domain, Mode mode) {
  if (mode == Mode::normalized) return delta(domain, q.lattice_ptr());
  return Predicate::constant(domain, q.lattice_ptr(), q.lattice().bottom());
}

}  // namespace

LawReport check_semimodule_axioms(const Quantale& q, PosetPtr domain, Mode mode,
                                  std::uint64_t seed, int cases) {
  if (mode == Mode::normalized && !domain->has_bottom())
    throw NoBottom("check_semimodule_axioms: normalized mode requires a bottom");
  LawReport rep;
  Predicate theta = neutral_predicate(q, domain, mode);
  AxiomContext ctx{q, mode, theta, rep};
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    Predicate x = random_predicate(domain, q.lattice_ptr(), rng, mode);
    Predicate y = random_predicate(domain, q.lattice_ptr(), rng, mode);
    Predicate z = random_predicate(domain, q.lattice_ptr(), rng, mode);
    Elem alpha = rng.uniform(0, q.size() - 1);
    Elem beta = rng.uniform(0, q.size() - 1);
    ctx.run(x, y, z, alpha, beta);
  }
  return rep;
}

LawReport check_semimodule_axioms_exhaustive(const Quantale& q, PosetPtr domain,
                                             Mode mode, std::size_t cap) {
  if (mode == Mode::normalized && !domain->has_bottom())
    throw NoBottom("check_semimodule_axioms: normalized mode requires a bottom");
  const FiniteLattice& l = q.lattice();
  std::vector<std::vector<Elem>> maps = enumerate_antitone_maps(*domain, l, cap);
  std::vector<Predicate> preds;
  for (auto& values : maps) {
    if (mode == Mode::normalized && values[domain->bottom()] != l.top()) continue;
    preds.emplace_back(domain, q.lattice_ptr(), values, mode);
  }
  const std::size_t p = preds.size();
  const std::size_t combos = p * p * p * l.size() * l.size();
  if (combos > cap)
    throw CapExceeded("check_semimodule_axioms_exhaustive: combination count exceeds cap");

  LawReport rep;
  Predicate theta = neutral_predicate(q, domain, mode);
  AxiomContext ctx{q, mode, theta, rep};
  for (const Predicate& x : preds)
    for (const Predicate& y : preds)
      for (const Predicate& z : preds)
        for (Elem alpha = 0; alpha < l.size(); ++alpha)
          for (Elem beta = 0; beta < l.size(); ++beta) {
            ctx.run(x, y, z, alpha, beta);
            if (!rep.ok() && rep.failures.size() > 8) return rep;
          }
  return rep;
}

}  // namespace latsp
