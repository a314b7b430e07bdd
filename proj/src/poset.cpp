#include "latsp/poset.hpp"

#include <algorithm>
#include <cassert>

namespace latsp {

Relation closure_from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  Relation r(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  for (auto& [a, b] : pairs) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw Error("closure_from_pairs: index out of range");
    r[a][b] = 1;
  }
  // Floyd-Warshall style transitive closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (int j = 0; j < n; ++j)
        if (r[k][j]) r[i][j] = 1;
    }
  return r;
}

std::string PosetReport::first_failure() const {
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

PosetReport verify_domain(std::vector<std::string> names, Relation leq) {
  PosetReport rep;
  const int n = static_cast<int>(names.size());
  if (n == 0) {
    rep.checks.push_back({"nonempty", false, {}});
    rep.ok = false;
    return rep;
  }
  if (static_cast<int>(leq.size()) != n)
    throw Error("verify_domain: relation size does not match element count");
  for (auto& row : leq)
    if (static_cast<int>(row.size()) != n)
      throw Error("verify_domain: relation is not square");
  {
    auto sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("verify_domain: duplicate element name");
  }

  LawCheck refl{"reflexivity", true, {}};
  for (int i = 0; i < n && refl.pass; ++i)
    if (!leq[i][i]) refl = {"reflexivity", false, {names[i]}};
  rep.checks.push_back(refl);

  LawCheck antisym{"antisymmetry", true, {}};
  for (int i = 0; i < n && antisym.pass; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && leq[i][j] && leq[j][i]) {
        antisym = {"antisymmetry", false, {names[i], names[j]}};
        break;
      }
  rep.checks.push_back(antisym);

  LawCheck trans{"transitivity", true, {}};
  for (int i = 0; i < n && trans.pass; ++i)
    for (int j = 0; j < n && trans.pass; ++j) {
      if (!leq[i][j]) continue;
      for (int k = 0; k < n; ++k)
        if (leq[j][k] && !leq[i][k]) {
          trans = {"transitivity", false, {names[i], names[j], names[k]}};
          break;
        }
    }
  rep.checks.push_back(trans);

  rep.ok = refl.pass && antisym.pass && trans.pass;
  if (!rep.ok) return rep;

  std::optional<Elem> bottom;
  for (int i = 0; i < n; ++i) {
    bool below_all = true;
    for (int j = 0; j < n; ++j)
      if (!leq[i][j]) {
        below_all = false;
        break;
      }
    if (below_all) {
      bottom = i;
      break;
    }
  }
  rep.has_bottom = bottom.has_value();
  if (bottom) rep.bottom_name = names[*bottom];

  // Diagnostic: does every pair have a greatest lower bound?
  rep.is_meet_semilattice = true;
  for (int a = 0; a < n && rep.is_meet_semilattice; ++a)
    for (int b = a; b < n; ++b) {
      Elem glb = -1;
      for (int c = 0; c < n; ++c) {
        if (!leq[c][a] || !leq[c][b]) continue;
        if (glb == -1 || leq[glb][c]) glb = c;
      }
      bool greatest = glb != -1;
      if (greatest)
        for (int c = 0; c < n; ++c)
          if (leq[c][a] && leq[c][b] && !leq[c][glb]) {
            greatest = false;
            break;
          }
      if (!greatest) {
        rep.is_meet_semilattice = false;
        break;
      }
    }

  DomainPoset p;
  p.names_ = std::move(names);
  p.leq_ = std::move(leq);
  p.bottom_ = bottom;
  rep.poset = std::move(p);
  return rep;
}

DomainPoset DomainPoset::create(std::vector<std::string> names, Relation leq) {
  PosetReport rep = verify_domain(std::move(names), std::move(leq));
  if (!rep.ok) throw Error("invalid poset: " + rep.first_failure());
#ifndef NDEBUG
  // Once per poset: the way-below relation really is leq on finite posets.
  if (rep.poset->size() <= 6) {
    for (Elem a = 0; a < rep.poset->size(); ++a)
      for (Elem b = 0; b < rep.poset->size(); ++b)
        assert(way_below_by_definition(*rep.poset, a, b) == rep.poset->leq(a, b));
  }
#endif
  return *std::move(rep.poset);
}

DomainPoset DomainPoset::create_unchecked(std::vector<std::string> names, Relation leq,
                                          std::optional<Elem> bottom) {
  DomainPoset p;
  p.names_ = std::move(names);
  p.leq_ = std::move(leq);
  p.bottom_ = bottom;
  return p;
}

Elem DomainPoset::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw UnknownElement("unknown poset element: " + name);
  return static_cast<Elem>(it - names_.begin());
}

std::optional<Elem> DomainPoset::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<Elem>(it - names_.begin());
}

Elem DomainPoset::bottom() const {
  if (!bottom_) throw NoBottom("poset has no bottom element");
  return *bottom_;
}

std::vector<Elem> DomainPoset::principal_upset(Elem a) const {
  std::vector<Elem> up;
  for (Elem b = 0; b < size(); ++b)
    if (leq(a, b)) up.push_back(b);
  return up;
}

std::vector<std::pair<Elem, Elem>> DomainPoset::covers() const {
  std::vector<std::pair<Elem, Elem>> cov;
  const int n = size();
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

std::vector<Elem> DomainPoset::topo_order() const {
  const int n = size();
  std::vector<Elem> order;
  std::vector<char> used(n, 0);
  for (int step = 0; step < n; ++step) {
    for (Elem c = 0; c < n; ++c) {
      if (used[c]) continue;
      bool minimal = true;
      for (Elem d = 0; d < n; ++d)
        if (!used[d] && d != c && leq(d, c)) {
          minimal = false;
          break;
        }
      if (minimal) {
        order.push_back(c);
        used[c] = 1;
        break;
      }
    }
  }
  assert(static_cast<int>(order.size()) == n);
  return order;
}

bool way_below_by_definition(const DomainPoset& p, Elem a, Elem b) {
  const int n = p.size();
  if (n > 20) throw CapExceeded("way_below_by_definition: poset too large");
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    // Directedness: every pair in the subset has an upper bound inside it.
    bool directed = true;
    for (int x = 0; x < n && directed; ++x) {
      if (!(mask >> x & 1)) continue;
      for (int y = x; y < n && directed; ++y) {
        if (!(mask >> y & 1)) continue;
        bool has_ub = false;
        for (int z = 0; z < n; ++z)
          if ((mask >> z & 1) && p.leq(x, z) && p.leq(y, z)) {
            has_ub = true;
            break;
          }
        directed = has_ub;
      }
    }
    if (!directed) continue;
    // A finite directed set has a greatest element; find it.
    Elem top = -1;
    for (int x = 0; x < n && top == -1; ++x) {
      if (!(mask >> x & 1)) continue;
      bool greatest = true;
      for (int y = 0; y < n; ++y)
        if ((mask >> y & 1) && !p.leq(y, x)) {
          greatest = false;
          break;
        }
      if (greatest) top = x;
    }
    assert(top != -1);
    if (!p.leq(b, top)) continue;
    bool witness = false;
    for (int c = 0; c < n; ++c)
      if ((mask >> c & 1) && p.leq(a, c)) {
        witness = true;
        break;
      }
    if (!witness) return false;
  }
  return true;
}

bool is_isotone_map(const DomainPoset& src, const DomainPoset& dst,
                    const std::vector<Elem>& f) {
  if (static_cast<int>(f.size()) != src.size())
    throw MismatchError("is_isotone_map: map size does not match source poset");
  for (Elem a = 0; a < src.size(); ++a)
    for (Elem b = 0; b < src.size(); ++b)
      if (src.leq(a, b) && !dst.leq(f[a], f[b])) return false;
  return true;
}

DomainPoset chain_poset(int n) {
  if (n < 1) throw Error("chain_poset: size must be positive");
  std::vector<std::string> names(n);
  for (int i = 0; i < n; ++i) names[i] = "c" + std::to_string(i);
  Relation leq(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[i][j] = 1;
  return DomainPoset::create(std::move(names), std::move(leq));
}

DomainPoset random_poset(std::uint64_t seed, int size, double edge_density,
                         bool with_bottom) {
  if (size < 1) throw Error("random_poset: size must be positive");
  Rng rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      if (rng.bernoulli(edge_density)) edges.emplace_back(i, j);
  int n = size;
  std::vector<std::string> names;
  for (int i = 0; i < size; ++i) names.push_back("p" + std::to_string(i));
  if (with_bottom) {
    names.insert(names.begin(), "bot");
    for (auto& [a, b] : edges) {
      ++a;
      ++b;
    }
    n = size + 1;
    for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
  }
  return DomainPoset::create(std::move(names), closure_from_pairs(n, edges));
}

}  // namespace latsp
