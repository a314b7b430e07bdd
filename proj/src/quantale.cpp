#include "latsp/quantale.hpp"

#include <climits>

namespace latsp {

namespace {

template <class Pred3>
long long scan_quantale_triples(int n, Exec exec, Pred3&& bad) {
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

LawCheck triple_check(const FiniteLattice& l, const std::string& law, long long bad_idx) {
  if (bad_idx < 0) return {law, true, {}};
  const int n = l.size();
  const int i = static_cast<int>(bad_idx / (1LL * n * n));
  const int j = static_cast<int>(bad_idx / n % n);
  const int k = static_cast<int>(bad_idx % n);
  return {law, false, {l.name(i), l.name(j), l.name(k)}};
}

}  // namespace

std::string QuantaleReport::first_failure() const {
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

QuantaleReport verify_quantale(LatticePtr lattice, std::vector<std::vector<Elem>> star,
                               Elem unit, Exec exec) {
  QuantaleReport rep;
  if (!lattice) throw Error("verify_quantale: null lattice");
  const FiniteLattice& l = *lattice;
  const int n = l.size();
  if (static_cast<int>(star.size()) != n)
    throw Error("verify_quantale: star table size does not match lattice");
  for (auto& row : star) {
    if (static_cast<int>(row.size()) != n)
      throw Error("verify_quantale: star table is not square");
    for (Elem x : row)
      if (x < 0 || x >= n) throw Error("verify_quantale: star entry out of range");
  }
  if (unit < 0 || unit >= n) throw Error("verify_quantale: unit out of range");

  LawCheck unit_top{"unit equals top", unit == l.top(), {}};
  if (!unit_top.pass) unit_top.witness = {l.name(unit)};
  rep.checks.push_back(unit_top);

  rep.checks.push_back(triple_check(
      l, "associativity", scan_quantale_triples(n, exec, [&](int a, int b, int c) {
        return star[star[a][b]][c] != star[a][star[b][c]];
      })));

  LawCheck unit_law{"two-sided unit", true, {}};
  for (int a = 0; a < n && unit_law.pass; ++a)
    if (star[unit][a] != a || star[a][unit] != a) unit_law = {"two-sided unit", false, {l.name(a)}};
  rep.checks.push_back(unit_law);

  rep.checks.push_back(triple_check(
      l, "join-distributivity", scan_quantale_triples(n, exec, [&](int a, int b, int c) {
        return star[a][l.join(b, c)] != l.join(star[a][b], star[a][c]) ||
               star[l.join(b, c)][a] != l.join(star[b][a], star[c][a]);
      })));

  LawCheck annih{"bottom annihilation", true, {}};
  for (int a = 0; a < n && annih.pass; ++a)
    if (star[a][l.bottom()] != l.bottom() || star[l.bottom()][a] != l.bottom())
      annih = {"bottom annihilation", false, {l.name(a)}};
  rep.checks.push_back(annih);

  // Isotonicity in each argument follows from join-distributivity but is
  // asserted directly as a cross-check.
  rep.checks.push_back(triple_check(
      l, "isotone in each argument", scan_quantale_triples(n, exec, [&](int a, int b, int c) {
        return l.leq(b, c) && (!l.leq(star[a][b], star[a][c]) || !l.leq(star[b][a], star[c][a]));
      })));

  rep.ok = true;
  for (const auto& c : rep.checks) rep.ok = rep.ok && c.pass;
  if (!rep.ok) return rep;

  Quantale q;
  q.lattice_ = std::move(lattice);
  q.star_ = std::move(star);
  q.inf_distributive_ =
      scan_quantale_triples(n, exec, [&](int a, int b, int c) {
        return q.star_[a][l.meet(b, c)] != l.meet(q.star_[a][b], q.star_[a][c]) ||
               q.star_[l.meet(b, c)][a] != l.meet(q.star_[b][a], q.star_[c][a]);
      }) < 0;
  rep.quantale = std::move(q);
  return rep;
}

Quantale make_quantale(LatticePtr lattice, std::vector<std::vector<Elem>> star,
                       Elem unit, Exec exec) {
  QuantaleReport rep = verify_quantale(std::move(lattice), std::move(star), unit, exec);
  if (!rep.ok) {
    if (!rep.checks.empty() && rep.checks[0].law == "unit equals top" && !rep.checks[0].pass)
      throw UnitNotTop("quantale unit must be the lattice top");
    throw QuantaleLawViolation("quantale law violated: " + rep.first_failure());
  }
  return *std::move(rep.quantale);
}

Quantale lukasiewicz_quantale(int m) {
  if (m < 0) throw Error("lukasiewicz_quantale: m must be nonnegative");
  auto chain = std::make_shared<const FiniteLattice>(build_chain(m + 1));
  const int n = m + 1;
  std::vector<std::vector<Elem>> star(n, std::vector<Elem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) star[i][j] = std::max(i + j - m, 0);
  return make_quantale(std::move(chain), std::move(star), m);
}

Quantale godel_quantale(LatticePtr lattice) {
  if (!lattice) throw Error("godel_quantale: null lattice");
  const int n = lattice->size();
  std::vector<std::vector<Elem>> star(n, std::vector<Elem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) star[i][j] = lattice->meet(i, j);
  Elem unit = lattice->top();
  return make_quantale(std::move(lattice), std::move(star), unit);
}

Quantale quantale_product(const Quantale& a, const Quantale& b) {
  auto lattice =
      std::make_shared<const FiniteLattice>(build_product(a.lattice(), b.lattice()));
  const int nb = b.size();
  const int n = lattice->size();
  std::vector<std::vector<Elem>> star(n, std::vector<Elem>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      star[i][j] = a.star(i / nb, j / nb) * nb + b.star(i % nb, j % nb);
  Elem unit = lattice->top();
  return make_quantale(std::move(lattice), std::move(star), unit);
}

LawReport inf_distributivity_report(const Quantale& q, Exec exec) {
  const FiniteLattice& l = q.lattice();
  const int n = l.size();
  LawReport rep;
  rep.checked = 2LL * n * n * n;
  long long bad = scan_quantale_triples(n, exec, [&](int a, int b, int c) {
    return q.star(a, l.meet(b, c)) != l.meet(q.star(a, b), q.star(a, c)) ||
           q.star(l.meet(b, c), a) != l.meet(q.star(b, a), q.star(c, a));
  });
  if (bad >= 0) {
    const int a = static_cast<int>(bad / (1LL * n * n));
    const int b = static_cast<int>(bad / n % n);
    const int c = static_cast<int>(bad % n);
    rep.add({"meet-distributivity", {l.name(a), l.name(b), l.name(c)}, ""});
  }
  return rep;
}

Quantale downset_monoid_quantale() {
  // Pointed ordered monoid on {0 < d < a,b < e}: e is both the order top and
  // the monoid identity, all products of {a,b} collapse to d, and d is
  // multiplicatively nilpotent.  Down-sets then form a quantale whose
  // multiplication ↓(A·B) fails meet-distributivity at ({0,d,a}, {0,d,a},
  // {0,d,b}).
  const int n = 5;  // 0, d, a, b, e
  auto mul = [](int x, int y) -> int {
    if (x == 4) return y;  // e is the identity
    if (y == 4) return x;
    if ((x == 2 || x == 3) && (y == 2 || y == 3)) return 1;  // products of a,b give d
    return 0;
  };
  std::vector<std::pair<int, int>> covers = {{0, 1}, {1, 2}, {1, 3}, {2, 4}, {3, 4}};
  Relation leq = closure_from_pairs(n, covers);

  std::vector<std::uint32_t> downsets;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool closed = true;
    for (int b = 0; b < n && closed; ++b) {
      if (!(mask >> b & 1)) continue;
      for (int a2 = 0; a2 < n; ++a2)
        if (leq[a2][b] && !(mask >> a2 & 1)) {
          closed = false;
          break;
        }
    }
    if (closed) downsets.push_back(mask);
  }
  const int m = static_cast<int>(downsets.size());
  const std::vector<std::string> base = {"0", "d", "a", "b", "e"};
  std::vector<std::string> names;
  for (std::uint32_t mask : downsets) {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (!first) s += ",";
        s += base[i];
        first = false;
      }
    names.push_back(s + "}");
  }
  Relation lat_leq(m, std::vector<std::uint8_t>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) lat_leq[i][j] = (downsets[i] & ~downsets[j]) == 0 ? 1 : 0;
  auto lattice = std::make_shared<const FiniteLattice>(make_lattice(names, lat_leq));

  auto downset_index = [&](std::uint32_t mask) -> int {
    for (int i = 0; i < m; ++i)
      if (downsets[i] == mask) return i;
    throw Error("downset_monoid_quantale: product escaped the down-set family");
  };
  std::vector<std::vector<Elem>> star(m, std::vector<Elem>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::uint32_t prod = 0;
      for (int x = 0; x < n; ++x) {
        if (!(downsets[i] >> x & 1)) continue;
        for (int y = 0; y < n; ++y)
          if (downsets[j] >> y & 1) prod |= 1u << mul(x, y);
      }
      if (prod == 0 && (downsets[i] == 0 || downsets[j] == 0)) {
        star[i][j] = downset_index(0);
        continue;
      }
      // Down-closure of the product set.
      std::uint32_t closed = 0;
      for (int z = 0; z < n; ++z) {
        bool below = false;
        for (int w = 0; w < n && !below; ++w)
          if ((prod >> w & 1) && leq[z][w]) below = true;
        if (below) closed |= 1u << z;
      }
      star[i][j] = downset_index(closed);
    }
  Elem unit = lattice->top();
  return make_quantale(std::move(lattice), std::move(star), unit);
}

}  // namespace latsp
