// Timing comparison between the serial and the OpenMP scan kernels and the
// two usp paths.  Prints wall-clock seconds; draws no conclusions — on a
// single-core host the parallel columns simply match the serial ones.

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>

#include "latsp/scenarios.hpp"
#include "latsp/generator.hpp"

using namespace latsp;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const std::string& label, double serial, double parallel) {
  std::cout << std::left << std::setw(38) << label << std::right << std::fixed
            << std::setprecision(3) << std::setw(10) << serial << std::setw(10) << parallel
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const int chain = argc > 1 ? std::atoi(argv[1]) : 192;

  std::cout << std::left << std::setw(38) << "kernel" << std::right << std::setw(10)
            << "serial" << std::setw(10) << "openmp" << '\n';

  {
    FiniteLattice l = build_chain(chain);
    const double s = seconds([&] { verify_lattice(l.names(), l.relation(), Exec::serial); });
    const double p = seconds([&] { verify_lattice(l.names(), l.relation(), Exec::parallel); });
    row("lattice laws, chain(" + std::to_string(chain) + ")", s, p);

    const double ds = seconds([&] { verify_distributive(l, Exec::serial); });
    const double dp = seconds([&] { verify_distributive(l, Exec::parallel); });
    row("distributivity, chain(" + std::to_string(chain) + ")", ds, dp);
  }

  {
    Quantale q = lukasiewicz_quantale(chain - 1);
    const double s = seconds(
        [&] { verify_quantale(q.lattice_ptr(), q.star_table(), q.unit(), Exec::serial); });
    const double p = seconds(
        [&] { verify_quantale(q.lattice_ptr(), q.star_table(), q.unit(), Exec::parallel); });
    row("quantale laws, chain(" + std::to_string(chain) + ")", s, p);
  }

  {
    const QualityScale scale = make_quality_scale(3, 7, ScaleQuantale::lukasiewicz, 1 << 12);
    Rng rng(7);
    const StateTransformer phi =
        random_transformer(rng, scale.domain, scale.domain, scale.quantale, false, false);
    const Predicate m = random_predicate(scale.domain, scale.lattice, rng);
    const int reps = 200;
    const double s = seconds([&] {
      for (int i = 0; i < reps; ++i) usp_simple(phi, m, Exec::serial);
    });
    const double p = seconds([&] {
      for (int i = 0; i < reps; ++i) usp_simple(phi, m, Exec::parallel);
    });
    row("usp on " + std::to_string(scale.domain->size()) + " states x" +
            std::to_string(reps),
        s, p);
  }

  return 0;
}
