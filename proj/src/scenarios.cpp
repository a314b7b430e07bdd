#include "latsp/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace latsp {

namespace {

std::string state_name(const std::vector<int>& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + ")";
}

void require_state(const QualityScale& scale, const std::vector<int>& s, const char* op) {
  if (static_cast<int>(s.size()) != scale.parts)
    throw MismatchError(std::string(op) + ": state has wrong number of parts");
  for (int v : s)
    if (v < 0 || v > scale.degrees)
      throw UnknownElement(std::string(op) + ": quality degree out of range");
}

// Downward scan from m; the satisfying sets below are down-closed in k, so
// the first hit is the maximum.
template <class Sat>
int max_degree(int m, Sat&& satisfied) {
  for (int k = m; k >= 1; --k)
    if (satisfied(k)) return k;
  return 0;
}

Predicate scan_predicate(const QualityScale& scale,
                         const std::function<bool(const std::vector<int>&, int)>& satisfied) {
  const int n = scale.domain->size();
  std::vector<Elem> values(n);
  for (Elem e = 0; e < n; ++e) {
    const std::vector<int> d = scale.state_of(e);
    values[e] = max_degree(scale.degrees, [&](int k) { return satisfied(d, k); });
  }
  return Predicate(scale.domain, scale.lattice, std::move(values), Mode::general);
}

}  // namespace

Elem QualityScale::state_index(const std::vector<int>& s) const {
  require_state(*this, s, "state_index");
  Elem e = 0;
  for (int v : s) e = e * (degrees + 1) + v;
  return e;
}

std::vector<int> QualityScale::state_of(Elem e) const {
  if (e < 0 || e >= domain->size()) throw UnknownElement("state_of: element out of range");
  std::vector<int> s(parts);
  for (int i = parts - 1; i >= 0; --i) {
    s[i] = e % (degrees + 1);
    e /= degrees + 1;
  }
  return s;
}

QualityScale make_quality_scale(int parts, int degrees, ScaleQuantale sq, std::size_t cap) {
  if (parts < 1) throw Error("make_quality_scale: need at least one part");
  if (degrees < 1) throw Error("make_quality_scale: need at least one degree");
  std::size_t count = 1;
  for (int i = 0; i < parts; ++i) {
    count *= static_cast<std::size_t>(degrees + 1);
    if (count > cap) throw CapExceeded("make_quality_scale: state count exceeds cap");
  }
  const int n = static_cast<int>(count);

  QualityScale scale;
  scale.parts = parts;
  scale.degrees = degrees;
  switch (sq) {
    case ScaleQuantale::lukasiewicz:
      scale.quantale = std::make_shared<const Quantale>(lukasiewicz_quantale(degrees));
      break;
    case ScaleQuantale::godel: {
      auto chain = std::make_shared<const FiniteLattice>(build_chain(degrees + 1));
      scale.quantale = std::make_shared<const Quantale>(godel_quantale(chain));
      break;
    }
  }
  scale.lattice = scale.quantale->lattice_ptr();

  std::vector<std::vector<int>> states(n);
  std::vector<std::string> names(n);
  {
    std::vector<int> s(parts, 0);
    for (int e = 0; e < n; ++e) {
      states[e] = s;
      names[e] = state_name(s);
      for (int i = parts - 1; i >= 0; --i) {
        if (++s[i] <= degrees) break;
        s[i] = 0;
      }
    }
  }
  // Reversed componentwise order: x <= y iff every component of y is <= the
  // matching component of x, so stronger assertions (componentwise larger)
  // sit lower and the all-m vector is the bottom.
  Relation leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (int c = 0; c < parts && le; ++c) le = states[j][c] <= states[i][c];
      leq[i][j] = le ? 1 : 0;
    }
  std::vector<int> all_m(parts, degrees);
  Elem bottom = 0;
  for (int v : all_m) bottom = bottom * (degrees + 1) + v;
  scale.domain = std::make_shared<const DomainPoset>(
      DomainPoset::create_unchecked(std::move(names), std::move(leq), bottom));
  return scale;
}

Predicate margin_predicate(const QualityScale& scale, const std::vector<int>& q) {
  require_state(scale, q, "margin_predicate");
  const int m = scale.degrees;
  return scan_predicate(scale, [&](const std::vector<int>& d, int k) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (d[i] < q[i] - (m - k)) return false;
    return true;
  });
}

Predicate threshold_below_predicate(const QualityScale& scale, const std::vector<int>& q) {
  require_state(scale, q, "threshold_below_predicate");
  return scan_predicate(scale, [&](const std::vector<int>& d, int k) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (d[i] < std::min(k, q[i])) return false;
    return true;
  });
}

Predicate threshold_above_predicate(const QualityScale& scale, const std::vector<int>& q) {
  require_state(scale, q, "threshold_above_predicate");
  const int m = scale.degrees;
  return scan_predicate(scale, [&](const std::vector<int>& d, int k) {
    for (std::size_t i = 0; i < q.size(); ++i)
      if (std::max(d[i], m - k) < q[i]) return false;
    return true;
  });
}

RawValuation truth_valuation(const QualityScale& scale, const std::vector<int>& s) {
  require_state(scale, s, "truth_valuation");
  const Quantale& q = *scale.quantale;
  const int n = scale.domain->size();
  std::vector<Elem> values(n);
  for (Elem e = 0; e < n; ++e) {
    const std::vector<int> d = scale.state_of(e);
    values[e] = max_degree(scale.degrees, [&](int k) {
      for (std::size_t i = 0; i < s.size(); ++i)
        if (!q.lattice().leq(q.star(d[i], k), s[i])) return false;
      return true;
    });
  }
  return RawValuation{scale.domain, scale.lattice, std::move(values)};
}

Predicate truth_predicate(const QualityScale& scale, const std::vector<int>& s) {
  return u_closure(truth_valuation(scale, s));
}

StateTransformer frame_transformer(const QualityScale& scale) {
  const int n = scale.parts;
  const int m = scale.degrees;
  if (n < 3) throw Error("frame_transformer: need at least 3 parts");
  Predicate def = Predicate::constant(scale.domain, scale.lattice, scale.lattice->bottom());
  std::map<Elem, Predicate> overrides;
  for (int i = 1; i + 1 < n; ++i) {
    std::vector<int> key(n, 0);
    key[i - 1] = m;
    key[i] = m - 1;
    key[i + 1] = m;
    std::vector<int> target(n, 0);
    target[i] = m;
    overrides.emplace(scale.state_index(key), margin_predicate(scale, target));
  }
  return StateTransformer(scale.domain, scale.domain, scale.quantale, std::move(def),
                          std::move(overrides));
}

PosetPtr powerset_domain(const std::vector<std::string>& states, std::size_t cap) {
  const int k = static_cast<int>(states.size());
  if (k == 0) throw Error("powerset_domain: need at least one state");
  if (k > 20 || (std::size_t{1} << k) > cap)
    throw CapExceeded("powerset_domain: subset count exceeds cap");
  const int n = 1 << k;
  std::vector<std::string> names(n);
  for (int mask = 0; mask < n; ++mask) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < k; ++i)
      if (mask >> i & 1) {
        if (!first) s += ",";
        s += states[i];
        first = false;
      }
    names[mask] = s + "}";
  }
  // Reverse inclusion: A <= B iff B is a subset of A; bottom is the full set.
  Relation leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq[i][j] = (j & ~i) == 0 ? 1 : 0;
  return std::make_shared<const DomainPoset>(
      DomainPoset::create_unchecked(std::move(names), std::move(leq), n - 1));
}

Predicate guaranteed_probability_predicate(const std::vector<std::string>& states,
                                           const std::vector<SubDistribution>& dists,
                                           int resolution, std::size_t cap) {
  if (resolution < 1) throw Error("guaranteed_probability_predicate: resolution must be positive");
  if (dists.empty()) throw Error("guaranteed_probability_predicate: need at least one distribution");
  const int k = static_cast<int>(states.size());
  for (const SubDistribution& d : dists) {
    if (static_cast<int>(d.num.size()) != k)
      throw MismatchError("guaranteed_probability_predicate: weight count does not match states");
    if (d.den < 1) throw Error("guaranteed_probability_predicate: denominator must be positive");
    long long total = 0;
    for (long long w : d.num) {
      if (w < 0) throw Error("guaranteed_probability_predicate: negative weight");
      total += w;
    }
    if (total > d.den) throw Error("guaranteed_probability_predicate: total mass exceeds 1");
  }

  PosetPtr domain = powerset_domain(states, cap);
  auto lattice = std::make_shared<const FiniteLattice>(build_chain(resolution + 1));
  const int n = domain->size();
  std::vector<Elem> values(n);
  bool all_full = true;
  for (const SubDistribution& d : dists)
    all_full = all_full && std::accumulate(d.num.begin(), d.num.end(), 0LL) == d.den;
  for (int mask = 0; mask < n; ++mask) {
    // min over distributions of P_i(A), as an exact rational num/den.
    long long best_num = 0, best_den = 0;
    for (const SubDistribution& d : dists) {
      long long sum = 0;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) sum += d.num[i];
      if (best_den == 0 || sum * best_den < best_num * d.den) {
        best_num = sum;
        best_den = d.den;
      }
    }
    values[mask] = static_cast<Elem>(static_cast<long long>(resolution) * best_num / best_den);
  }
  return Predicate(domain, lattice, std::move(values),
                   all_full ? Mode::normalized : Mode::general);
}

}  // namespace latsp
