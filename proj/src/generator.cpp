#include "latsp/generator.hpp"

namespace latsp {

LatticePtr random_lattice(Rng& rng, int max_size) {
  if (max_size < 2) throw Error("random_lattice: max_size must be at least 2");
  switch (rng.uniform(0, 2)) {
    case 0:
      return std::make_shared<const FiniteLattice>(build_chain(rng.uniform(2, max_size)));
    case 1: {
      // Down-set lattice of a small random poset; retry until it fits.
      for (int attempt = 0; attempt < 32; ++attempt) {
        int psize = rng.uniform(1, 4);
        DomainPoset p = random_poset(rng.next(), psize, rng.uniform01() * 0.8, false);
        FiniteLattice l = build_downset_lattice(p, 1u << 10);
        if (l.size() <= max_size) return std::make_shared<const FiniteLattice>(std::move(l));
      }
      return std::make_shared<const FiniteLattice>(build_chain(2));
    }
    default: {
      int a = rng.uniform(2, std::max(2, max_size / 2));
      int b = std::max(2, std::min(max_size / a, max_size));
      while (a * b > max_size && b > 2) --b;
      if (a * b > max_size) return std::make_shared<const FiniteLattice>(build_chain(2));
      return std::make_shared<const FiniteLattice>(build_product(build_chain(a), build_chain(b)));
    }
  }
}

namespace {

QuantalePtr perturbed_quantale(Rng& rng, const Quantale& base) {
  const int n = base.size();
  for (int attempt = 0; attempt < 24; ++attempt) {
    auto star = base.star_table();
    const int a = rng.uniform(0, n - 1);
    const int b = rng.uniform(0, n - 1);
    const Elem v = rng.uniform(0, n - 1);
    if (star[a][b] == v) continue;
    star[a][b] = v;
    QuantaleReport rep = verify_quantale(base.lattice_ptr(), std::move(star), base.unit());
    if (rep.ok) return std::make_shared<const Quantale>(*std::move(rep.quantale));
  }
  return std::make_shared<const Quantale>(base);
}

}  // namespace

QuantalePtr random_quantale(Rng& rng, int max_lattice) {
  switch (rng.uniform(0, 5)) {
    case 0:
      return std::make_shared<const Quantale>(lukasiewicz_quantale(rng.uniform(1, max_lattice - 1)));
    case 1:
      return std::make_shared<const Quantale>(godel_quantale(random_lattice(rng, max_lattice)));
    case 2: {
      int half = std::max(2, max_lattice / 2);
      Quantale a = rng.bernoulli(0.5)
                       ? lukasiewicz_quantale(rng.uniform(1, half - 1))
                       : godel_quantale(std::make_shared<const FiniteLattice>(
                             build_chain(rng.uniform(2, half))));
      Quantale b = godel_quantale(std::make_shared<const FiniteLattice>(
          build_chain(rng.uniform(2, std::max(2, max_lattice / a.size())))));
      if (a.size() * b.size() > std::max(4, max_lattice))
        return std::make_shared<const Quantale>(std::move(a));
      return std::make_shared<const Quantale>(quantale_product(a, b));
    }
    case 3:
      if (max_lattice >= 7) return std::make_shared<const Quantale>(downset_monoid_quantale());
      return std::make_shared<const Quantale>(lukasiewicz_quantale(rng.uniform(1, max_lattice - 1)));
    default: {
      Quantale base = rng.bernoulli(0.5)
                          ? lukasiewicz_quantale(rng.uniform(2, max_lattice - 1))
                          : godel_quantale(std::make_shared<const FiniteLattice>(
                                build_chain(rng.uniform(3, max_lattice))));
      return perturbed_quantale(rng, base);
    }
  }
}

PosetPtr random_domain(Rng& rng, int max_size, bool need_bottom) {
  int size = rng.uniform(1, max_size);
  bool adjoin = need_bottom || rng.bernoulli(0.5);
  if (adjoin && size > 1) --size;  // keep the total near max_size
  return std::make_shared<const DomainPoset>(
      random_poset(rng.next(), size, 0.2 + 0.6 * rng.uniform01(), adjoin));
}

StateTransformer random_transformer(Rng& rng, PosetPtr source, PosetPtr target,
                                    QuantalePtr quantale, bool force_isotone,
                                    bool force_normalized) {
  if (force_normalized && !target->has_bottom())
    throw NoBottom("random_transformer: normalized images need a target bottom");
  const LatticePtr& lat = quantale->lattice_ptr();
  std::vector<std::optional<Predicate>> images(source->size());
  if (force_isotone) {
    for (Elem a : source->topo_order()) {
      Predicate img = random_predicate(target, lat, rng);
      for (Elem b = 0; b < source->size(); ++b)
        if (b != a && source->leq(b, a) && images[b]) img = pred_join(img, *images[b]);
      images[a] = force_normalized ? normalize(img) : img;
    }
  } else {
    for (Elem a = 0; a < source->size(); ++a) {
      Predicate img = random_predicate(target, lat, rng);
      images[a] = force_normalized ? normalize(img) : img;
    }
  }
  std::vector<Predicate> dense;
  dense.reserve(images.size());
  for (auto& img : images) dense.push_back(*std::move(img));
  return StateTransformer(std::move(source), std::move(target), std::move(quantale),
                          std::move(dense));
}

InstanceBundle random_bundle(Rng& rng, const GenConfig& cfg) {
  InstanceBundle b;
  b.quantale = random_quantale(rng, cfg.max_lattice);
  b.source = random_domain(rng, cfg.max_domain, false);
  b.target = rng.bernoulli(0.5) ? b.source : random_domain(rng, cfg.max_domain, false);
  if (cfg.with_predicate)
    b.predicate = random_predicate(b.source, b.quantale->lattice_ptr(), rng);
  if (cfg.with_transformer) {
    bool isotone = rng.bernoulli(0.5);
    bool normalized = b.target->has_bottom() && rng.bernoulli(0.5);
    b.transformer =
        random_transformer(rng, b.source, b.target, b.quantale, isotone, normalized);
  }
  return b;
}

}  // namespace latsp
