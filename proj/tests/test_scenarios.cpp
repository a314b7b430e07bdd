#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "latsp/scenarios.hpp"

using namespace latsp;

namespace {

// Independent re-derivations of the three quality predicates: a plain
// downward loop over k testing the defining condition verbatim.
int brute_margin(int m, const std::vector<int>& q, const std::vector<int>& d) {
  for (int k = m; k >= 0; --k) {
    bool ok = true;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (!(d[i] >= q[i] - (m - k))) ok = false;
    if (ok) return k;
  }
  return 0;
}

int brute_threshold_below(int m, const std::vector<int>& q, const std::vector<int>& d) {
  for (int k = m; k >= 0; --k) {
    bool ok = true;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (!(d[i] >= std::min(k, q[i]))) ok = false;
    if (ok) return k;
  }
  return 0;
}

int brute_threshold_above(int m, const std::vector<int>& q, const std::vector<int>& d) {
  for (int k = m; k >= 0; --k) {
    bool ok = true;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (!(std::max(d[i], m - k) >= q[i])) ok = false;
    if (ok) return k;
  }
  return 0;
}

}  // namespace

TEST_CASE("quality scale structure: reversed componentwise order with all-m bottom") {
  QualityScale scale = make_quality_scale(2, 3);
  REQUIRE(scale.domain->size() == 16);
  CHECK(scale.lattice->size() == 4);
  CHECK(scale.quantale->unit() == 3);

  // Round trip between states and element indices.
  for (Elem e = 0; e < scale.domain->size(); ++e)
    CHECK(scale.state_index(scale.state_of(e)) == e);
  CHECK(scale.state_of(scale.state_index({2, 1})) == std::vector<int>{2, 1});

  // The order compares reversed componentwise.
  for (Elem e1 = 0; e1 < scale.domain->size(); ++e1)
    for (Elem e2 = 0; e2 < scale.domain->size(); ++e2) {
      auto s1 = scale.state_of(e1);
      auto s2 = scale.state_of(e2);
      bool rev = true;
      for (int i = 0; i < 2; ++i) rev = rev && s2[i] <= s1[i];
      CHECK(scale.domain->leq(e1, e2) == rev);
    }

  // Bottom is the all-m state; the all-0 state is the top end.
  REQUIRE(scale.domain->has_bottom());
  CHECK(scale.state_of(scale.domain->bottom()) == std::vector<int>{3, 3});
  for (Elem e = 0; e < scale.domain->size(); ++e)
    CHECK(scale.domain->leq(e, scale.state_index({0, 0})));

  CHECK_THROWS_AS(make_quality_scale(8, 9, ScaleQuantale::lukasiewicz, 4096), CapExceeded);
  CHECK_THROWS_AS(scale.state_index({4, 0}), UnknownElement);
}

TEST_CASE("quality predicates: worked values 4, 2, 0 and the brute-force scan") {
  QualityScale scale = make_quality_scale(2, 5);
  const std::vector<int> q = {5, 3};
  Predicate mq = margin_predicate(scale, q);
  Predicate mq_p = threshold_below_predicate(scale, q);
  Predicate mq_pp = threshold_above_predicate(scale, q);

  const Elem d = scale.state_index({4, 2});
  CHECK(mq.value(d) == 4);
  CHECK(mq_p.value(d) == 2);
  CHECK(mq_pp.value(d) == 0);

  // The margin value is min{d1, d2+2, 5} for this target.
  for (Elem e = 0; e < scale.domain->size(); ++e) {
    auto s = scale.state_of(e);
    CHECK(mq.value(e) == std::min({s[0], s[1] + 2, 5}));
  }

  // Full agreement with the independent scan for every state.
  for (Elem e = 0; e < scale.domain->size(); ++e) {
    auto s = scale.state_of(e);
    CHECK(mq.value(e) == brute_margin(5, q, s));
    CHECK(mq_p.value(e) == brute_threshold_below(5, q, s));
    CHECK(mq_pp.value(e) == brute_threshold_above(5, q, s));
  }

  // All three are antitone and reach the full degree at the bottom, so all
  // three normalize.
  for (const Predicate& p : {mq, mq_p, mq_pp}) {
    CHECK(p.validate().ok());
    CHECK(p.value(scale.domain->bottom()) == 5);
    Predicate n = normalize(p);
    CHECK(n.values() == p.values());
    CHECK(n.mode() == Mode::normalized);
  }

  // Quality exactly met gives the full degree.
  CHECK(mq.value(scale.state_index(q)) == 5);
}

TEST_CASE("quality predicates at random targets against the brute scan") {
  QualityScale scale = make_quality_scale(3, 3);
  Rng rng(19);
  for (int t = 0; t < 10; ++t) {
    std::vector<int> q(3);
    for (int& v : q) v = rng.uniform(0, 3);
    Predicate mq = margin_predicate(scale, q);
    Predicate mq_p = threshold_below_predicate(scale, q);
    Predicate mq_pp = threshold_above_predicate(scale, q);
    for (Elem e = 0; e < scale.domain->size(); ++e) {
      auto s = scale.state_of(e);
      CHECK(mq.value(e) == brute_margin(3, q, s));
      CHECK(mq_p.value(e) == brute_threshold_below(3, q, s));
      CHECK(mq_pp.value(e) == brute_threshold_above(3, q, s));
    }
    CHECK(mq.value(scale.state_index(q)) == 3);
  }
}

TEST_CASE("truth degrees: worked values and the closure relationship") {
  QualityScale scale = make_quality_scale(2, 5);
  RawValuation raw = truth_valuation(scale, {5, 3});
  CHECK(raw.values[scale.state_index({5, 5})] == 3);
  CHECK(raw.values[scale.state_index({0, 0})] == 5);
  CHECK(raw.values[scale.state_index({5, 3})] == 5);

  // The typed predicate is the antitone closure of the raw valuation.
  Predicate p = truth_predicate(scale, {5, 3});
  CHECK(p == u_closure(raw));
  CHECK(p.validate().ok());

  // Under perfect actual quality every degree qualifies everywhere.
  RawValuation top_raw = truth_valuation(scale, {5, 5});
  for (Elem e = 0; e < scale.domain->size(); ++e) CHECK(top_raw.values[e] == 5);
  CHECK(truth_predicate(scale, {5, 5}) ==
        Predicate::constant(scale.domain, scale.lattice, 5));
}

TEST_CASE("the truth valuation is the margin family with the roles swapped") {
  QualityScale scale = make_quality_scale(2, 3);  // Lukasiewicz
  for (Elem se = 0; se < scale.domain->size(); ++se) {
    const std::vector<int> s = scale.state_of(se);
    RawValuation raw = truth_valuation(scale, s);
    for (Elem de = 0; de < scale.domain->size(); ++de) {
      const std::vector<int> d = scale.state_of(de);
      CHECK(raw.values[de] == margin_predicate(scale, d).value(se));
    }
  }
}

TEST_CASE("truth degrees under the Goedel quantale have a min closed form") {
  QualityScale scale = make_quality_scale(2, 3, ScaleQuantale::godel);
  for (Elem se = 0; se < scale.domain->size(); ++se) {
    const std::vector<int> s = scale.state_of(se);
    RawValuation raw = truth_valuation(scale, s);
    for (Elem de = 0; de < scale.domain->size(); ++de) {
      const std::vector<int> d = scale.state_of(de);
      int expect = 3;
      for (int i = 0; i < 2; ++i)
        if (d[i] > s[i]) expect = std::min(expect, s[i]);
      CHECK(raw.values[de] == expect);
    }
  }
}

TEST_CASE("frame transformer: key states, images, and flags") {
  QualityScale scale = make_quality_scale(3, 5);
  StateTransformer phi = frame_transformer(scale);
  REQUIRE(phi.extensional());
  REQUIRE(phi.overrides().size() == 1);
  const Elem key = phi.overrides().begin()->first;
  CHECK(scale.state_of(key) == std::vector<int>{5, 4, 5});
  CHECK(phi.overrides().begin()->second == margin_predicate(scale, {0, 5, 0}));

  // The key image collapses to the middle coordinate.
  for (Elem e = 0; e < scale.domain->size(); ++e)
    CHECK(phi.image(key).value(e) == scale.state_of(e)[1]);

  // Everything else maps to constant 0.
  CHECK(phi.default_is_bottom());
  CHECK(phi.image(scale.state_index({0, 0, 0})).values() ==
        std::vector<Elem>(scale.domain->size(), 0));
  CHECK(phi.image(scale.state_index({5, 5, 5})).values() ==
        std::vector<Elem>(scale.domain->size(), 0));

  CHECK(!phi.isotone());
  CHECK(!phi.normalized_valued());

  // Four parts give two interior windows.
  QualityScale scale4 = make_quality_scale(4, 5, ScaleQuantale::lukasiewicz, 2000);
  StateTransformer phi4 = frame_transformer(scale4);
  REQUIRE(phi4.overrides().size() == 2);
  std::vector<std::vector<int>> keys;
  for (auto& [k, img] : phi4.overrides()) keys.push_back(scale4.state_of(k));
  CHECK(std::count(keys.begin(), keys.end(), std::vector<int>{5, 4, 5, 0}) == 1);
  CHECK(std::count(keys.begin(), keys.end(), std::vector<int>{0, 5, 4, 5}) == 1);

  CHECK_THROWS_AS(frame_transformer(make_quality_scale(2, 5)), Error);
}

TEST_CASE("usp through the frame pipeline picks out the middle coordinate") {
  QualityScale scale = make_quality_scale(3, 5);
  StateTransformer phi = frame_transformer(scale);
  Predicate m = truth_predicate(scale, {5, 5, 5});
  REQUIRE(m == Predicate::constant(scale.domain, scale.lattice, 5));
  Predicate out = usp(phi, m);
  for (Elem e = 0; e < scale.domain->size(); ++e)
    CHECK(out.value(e) == scale.state_of(e)[1]);

  // With no actual quality the truth predicate closes to constant 0 and so
  // does the postcondition.
  Predicate none = truth_predicate(scale, {0, 0, 0});
  CHECK(none == Predicate::constant(scale.domain, scale.lattice, 0));
  CHECK(usp(phi, none) == Predicate::constant(scale.domain, scale.lattice, 0));
}

TEST_CASE("powerset domain: reverse inclusion with the full set at the bottom") {
  PosetPtr d = powerset_domain({"s1", "s2"});
  REQUIRE(d->size() == 4);
  CHECK(d->name(0) == "{}");
  CHECK(d->name(3) == "{s1,s2}");
  REQUIRE(d->has_bottom());
  CHECK(d->bottom() == d->index("{s1,s2}"));
  // Smaller subsets are higher: {s1,s2} <= {s1} <= {} in this order.
  CHECK(d->leq(d->index("{s1,s2}"), d->index("{s1}")));
  CHECK(d->leq(d->index("{s1}"), d->index("{}")));
  CHECK(!d->leq(d->index("{s1}"), d->index("{s2}")));

  // The relation is a valid poset.
  Relation r(4, std::vector<std::uint8_t>(4, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = d->leq(i, j) ? 1 : 0;
  CHECK(verify_domain(d->names(), r).ok);

  CHECK_THROWS_AS(powerset_domain({}), Error);
  CHECK_THROWS_AS(powerset_domain({"a", "b", "c"}, 4), CapExceeded);
}

TEST_CASE("guaranteed probability: uniform full distribution, resolution 2") {
  const std::vector<std::string> states = {"s1", "s2"};
  SubDistribution uniform{{1, 1}, 2};
  Predicate m = guaranteed_probability_predicate(states, {uniform}, 2);
  CHECK(m.value_at("{s1,s2}") == 2);  // probability 1
  CHECK(m.value_at("{s1}") == 1);     // probability 1/2
  CHECK(m.value_at("{s2}") == 1);
  CHECK(m.value_at("{}") == 0);
  CHECK(m.mode() == Mode::normalized);
  CHECK(m.validate().ok());
}

TEST_CASE("guaranteed probability: the zero subdistribution flattens everything") {
  SubDistribution uniform{{1, 1}, 2};
  SubDistribution zero{{0, 0}, 1};
  Predicate m = guaranteed_probability_predicate({"s1", "s2"}, {uniform, zero}, 4);
  for (Elem e = 0; e < 4; ++e) CHECK(m.value(e) == 0);
  CHECK(m.mode() == Mode::general);
}

TEST_CASE("guaranteed probability input validation") {
  CHECK_THROWS_AS(guaranteed_probability_predicate({"a"}, {SubDistribution{{-1}, 2}}, 2),
                  Error);
  CHECK_THROWS_AS(guaranteed_probability_predicate({"a"}, {SubDistribution{{3}, 2}}, 2),
                  Error);
  CHECK_THROWS_AS(guaranteed_probability_predicate({"a"}, {SubDistribution{{1, 1}, 2}}, 2),
                  MismatchError);
  CHECK_THROWS_AS(guaranteed_probability_predicate({"a"}, {SubDistribution{{1}, 2}}, 0),
                  Error);
  CHECK_THROWS_AS(guaranteed_probability_predicate({"a"}, {}, 2), Error);
}

TEST_CASE("quantization floors exactly: v/k <= min_i P_i(A) < (v+1)/k") {
  Rng rng(29);
  const std::vector<std::string> states = {"a", "b", "c"};
  for (int t = 0; t < 40; ++t) {
    std::vector<SubDistribution> dists;
    const int nd = rng.uniform(1, 3);
    for (int i = 0; i < nd; ++i) {
      SubDistribution d;
      d.den = rng.uniform(2, 12);
      long long left = d.den;
      for (int s = 0; s < 3; ++s) {
        long long w = rng.uniform(0, static_cast<int>(left));
        d.num.push_back(w);
        left -= w;
      }
      dists.push_back(d);
    }
    const int res = rng.uniform(1, 6);
    Predicate m = guaranteed_probability_predicate(states, dists, res);
    CHECK(m.validate().ok());
    for (int mask = 0; mask < 8; ++mask) {
      // Exact rational minimum over the distributions, by cross-multiplying.
      long long bn = 0, bd = 1;
      bool first = true;
      for (const SubDistribution& d : dists) {
        long long sum = 0;
        for (int s = 0; s < 3; ++s)
          if (mask >> s & 1) sum += d.num[s];
        if (first || sum * bd < bn * d.den) {
          bn = sum;
          bd = d.den;
          first = false;
        }
      }
      const long long v = m.value(mask);
      CHECK(v * bd <= static_cast<long long>(res) * bn);
      CHECK(static_cast<long long>(res) * bn < (v + 1) * bd);
    }
  }
}

TEST_CASE("a set-level probability bound is not a per-state guarantee") {
  // Knowing only "the total event {s1,s2} has probability at least 1/2"
  // corresponds to a predicate written directly on the event domain.  Any
  // family of point distributions realizing some per-state knowledge gives a
  // different predicate: full-mass families certify probability 1 for the
  // total event, and a half-mass point distribution leaks a nonzero
  // guarantee for a singleton.
  PosetPtr d = powerset_domain({"s1", "s2"});
  auto l3 = std::make_shared<const FiniteLattice>(build_chain(3));
  std::vector<Elem> direct_values(4, 0);
  direct_values[d->index("{s1,s2}")] = 1;  // exactly "at least 1/2"
  Predicate direct(d, l3, direct_values);
  CHECK(direct.validate().ok());

  SubDistribution at_s1{{1, 0}, 1};
  SubDistribution at_s2{{0, 1}, 1};
  Predicate from_points = guaranteed_probability_predicate({"s1", "s2"}, {at_s1, at_s2}, 2);
  CHECK(from_points.value_at("{s1,s2}") == 2);
  CHECK(direct != from_points);
  CHECK(direct.leq(from_points));

  SubDistribution half{{1, 0}, 2};
  Predicate from_half = guaranteed_probability_predicate({"s1", "s2"}, {half}, 2);
  CHECK(from_half.value_at("{s1,s2}") == 1);
  CHECK(from_half.value_at("{s1}") == 1);  // leaks a singleton guarantee
  CHECK(direct != from_half);
}
