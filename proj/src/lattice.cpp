#include "latsp/lattice.hpp"

#include <algorithm>
#include <climits>

namespace latsp {

namespace {

// Finds the first triple index violating pred(i,j,k) over [0,n)^3, or -1.
// Deterministic in either execution mode: the minimal linear index wins.
template <class Pred3>
long long scan_triples(int n, Exec exec, Pred3&& bad) {
  const long long total = 1LL * n * n * n;
  long long first = LLONG_MAX;
  if (use_parallel(exec, total)) {
#ifdef _OPENMP
#pragma omp parallel for reduction(min : first) schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
      const int i = static_cast<int>(idx / (1LL * n * n));
      const int j = static_cast<int>(idx / n % n);
      const int k = static_cast<int>(idx % n);
      if (bad(i, j, k) && idx < first) first = idx;
    }
#endif
  } else {
    for (long long idx = 0; idx < total; ++idx) {
      const int i = static_cast<int>(idx / (1LL * n * n));
      const int j = static_cast<int>(idx / n % n);
      const int k = static_cast<int>(idx % n);
      if (bad(i, j, k)) {
        first = idx;
        break;
      }
    }
  }
  return first == LLONG_MAX ? -1 : first;
}

}  // namespace

std::string LatticeReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) {
      std::string s = c.law;
      if (!c.witness.empty()) {
        s += " at (";
        for (std::size_t i = 0; i < c.witness.size(); ++i) {
          if (i) s += ", ";
          s += c.witness[i];
        }
        s += ")";
      }
      return s;
    }
  return "";
}

LatticeReport verify_lattice(std::vector<std::string> names, Relation leq, Exec exec) {
  LatticeReport rep;
  PosetReport order = verify_domain(names, leq);
  rep.checks = order.checks;
  if (!order.ok) return rep;
  const int n = static_cast<int>(names.size());

  std::vector<std::vector<Elem>> join(n, std::vector<Elem>(n, -1));
  std::vector<std::vector<Elem>> meet(n, std::vector<Elem>(n, -1));

  LawCheck joins{"binary joins exist", true, {}};
  LawCheck meets{"binary meets exist", true, {}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // Least upper bound: an upper bound below every other upper bound.
      Elem lub = -1;
      for (int c = 0; c < n && lub == -1; ++c) {
        if (!leq[a][c] || !leq[b][c]) continue;
        bool least = true;
        for (int d = 0; d < n; ++d)
          if (leq[a][d] && leq[b][d] && !leq[c][d]) {
            least = false;
            break;
          }
        if (least) lub = c;
      }
      if (lub == -1 && joins.pass) joins = {"binary joins exist", false, {names[a], names[b]}};
      join[a][b] = lub;

      Elem glb = -1;
      for (int c = 0; c < n && glb == -1; ++c) {
        if (!leq[c][a] || !leq[c][b]) continue;
        bool greatest = true;
        for (int d = 0; d < n; ++d)
          if (leq[d][a] && leq[d][b] && !leq[d][c]) {
            greatest = false;
            break;
          }
        if (greatest) glb = c;
      }
      if (glb == -1 && meets.pass) meets = {"binary meets exist", false, {names[a], names[b]}};
      meet[a][b] = glb;
    }
  rep.checks.push_back(joins);
  rep.checks.push_back(meets);
  if (!joins.pass || !meets.pass) return rep;

  LawCheck absorb{"absorption", true, {}};
  for (int a = 0; a < n && absorb.pass; ++a)
    for (int b = 0; b < n; ++b)
      if (join[a][meet[a][b]] != a || meet[a][join[a][b]] != a) {
        absorb = {"absorption", false, {names[a], names[b]}};
        break;
      }
  rep.checks.push_back(absorb);

  LawCheck comm{"join/meet commutativity", true, {}};
  for (int a = 0; a < n && comm.pass; ++a)
    for (int b = 0; b < n; ++b)
      if (join[a][b] != join[b][a] || meet[a][b] != meet[b][a]) {
        comm = {"join/meet commutativity", false, {names[a], names[b]}};
        break;
      }
  rep.checks.push_back(comm);

  LawCheck idem{"join/meet idempotence", true, {}};
  for (int a = 0; a < n && idem.pass; ++a)
    if (join[a][a] != a || meet[a][a] != a) idem = {"join/meet idempotence", false, {names[a]}};
  rep.checks.push_back(idem);

  long long bad = scan_triples(n, exec, [&](int i, int j, int k) {
    return join[join[i][j]][k] != join[i][join[j][k]] ||
           meet[meet[i][j]][k] != meet[i][meet[j][k]];
  });
  LawCheck assoc{"join/meet associativity", true, {}};
  if (bad >= 0) {
    const int i = static_cast<int>(bad / (1LL * n * n));
    const int j = static_cast<int>(bad / n % n);
    const int k = static_cast<int>(bad % n);
    assoc = {"join/meet associativity", false, {names[i], names[j], names[k]}};
  }
  rep.checks.push_back(assoc);

  rep.ok = absorb.pass && comm.pass && idem.pass && assoc.pass;
  if (!rep.ok) return rep;

  FiniteLattice l;
  l.names_ = std::move(names);
  l.leq_ = std::move(leq);
  l.join_ = std::move(join);
  l.meet_ = std::move(meet);
  Elem top = 0, bottom = 0;
  for (int a = 1; a < n; ++a) {
    top = l.join_[top][a];
    bottom = l.meet_[bottom][a];
  }
  l.top_ = top;
  l.bottom_ = bottom;
  rep.lattice = std::move(l);
  return rep;
}

FiniteLattice make_lattice(std::vector<std::string> names, Relation leq) {
  LatticeReport rep = verify_lattice(std::move(names), std::move(leq));
  if (!rep.ok) throw Error("invalid lattice: " + rep.first_failure());
  return *std::move(rep.lattice);
}

Elem FiniteLattice::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownElement("unknown lattice element: " + name);
  return static_cast<Elem>(it - names_.begin());
}

std::optional<Elem> FiniteLattice::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Elem>(it - names_.begin());
}

Elem FiniteLattice::join_all(const std::vector<Elem>& xs) const {
  Elem acc = bottom_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

Elem FiniteLattice::meet_all(const std::vector<Elem>& xs) const {
  Elem acc = top_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

std::vector<std::pair<Elem, Elem>> FiniteLattice::covers() const {
  const int n = size();
  std::vector<std::pair<Elem, Elem>> cov;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool is_cover = true;
      for (Elem c = 0; c < n; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) {
          is_cover = false;
          break;
        }
      if (is_cover) cov.emplace_back(a, b);
    }
  return cov;
}

LawReport verify_distributive(const FiniteLattice& l, Exec exec) {
  const int n = l.size();
  LawReport rep;
  rep.checked = 2LL * n * n * n;
  long long bad = scan_triples(n, exec, [&](int a, int b, int c) {
    return l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) ||
           l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), l.join(a, c));
  });
  if (bad >= 0) {
    const int a = static_cast<int>(bad / (1LL * n * n));
    const int b = static_cast<int>(bad / n % n);
    const int c = static_cast<int>(bad % n);
    rep.add({"distributivity", {l.name(a), l.name(b), l.name(c)}, ""});
  }
  return rep;
}

FiniteLattice build_chain(int n) {
  if (n < 1) throw Error("build_chain: need at least one element");
  std::vector<std::string> names;
  Relation leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (int j = i; j < n; ++j) leq[i][j] = 1;
  }
  return make_lattice(std::move(names), std::move(leq));
}

FiniteLattice build_product(const FiniteLattice& a, const FiniteLattice& b) {
  const int na = a.size(), nb = b.size();
  const int n = na * nb;
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  Relation leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      leq[i][j] = a.leq(i / nb, j / nb) && b.leq(i % nb, j % nb) ? 1 : 0;
  return make_lattice(std::move(names), std::move(leq));
}

FiniteLattice build_downset_lattice(const DomainPoset& p, std::size_t cap) {
  const int n = p.size();
  if (n > 20) throw CapExceeded("build_downset_lattice: poset too large to enumerate");
  std::vector<std::uint32_t> downsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int b = 0; b < n && closed; ++b) {
      if (!(mask >> b & 1)) continue;
      for (int a = 0; a < n; ++a)
        if (p.leq(a, b) && !(mask >> a & 1)) {
          closed = false;
          break;
        }
    }
    if (closed) {
      downsets.push_back(mask);
      if (downsets.size() > cap) throw CapExceeded("build_downset_lattice: down-set count exceeds cap");
    }
  }
  const int m = static_cast<int>(downsets.size());
  std::vector<std::string> names;
  names.reserve(m);
  for (std::uint32_t mask : downsets) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (!first) s += ",";
        s += p.name(i);
        first = false;
      }
    s += "}";
    names.push_back(s);
  }
  Relation leq(m, std::vector<std::uint8_t>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) leq[i][j] = (downsets[i] & ~downsets[j]) == 0 ? 1 : 0;
  return make_lattice(std::move(names), std::move(leq));
}

}  // namespace latsp
