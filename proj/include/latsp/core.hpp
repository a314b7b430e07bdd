#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace latsp {

// Index of an element inside a poset/lattice element table.  External
// interfaces speak element names (opaque strings); indices are internal.
using Elem = int;

// Predicates come in two flavours sharing one representation: general ones
// and normalized ones (value 1 at the domain bottom).
enum class Mode { general, normalized };

// Execution policy for the scan/evaluation kernels that have both a serial
// and an OpenMP path.  `automatic` picks parallel only for large inputs.
enum class Exec { automatic, serial, parallel };

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownElement : Error {
  using Error::Error;
};
struct MismatchError : Error {
  using Error::Error;
};
struct NoBottom : Error {
  using Error::Error;
};
struct NotNormalized : Error {
  using Error::Error;
};
struct UnitNotTop : Error {
  using Error::Error;
};
struct QuantaleLawViolation : Error {
  using Error::Error;
};
struct CapExceeded : Error {
  using Error::Error;
};
struct HypothesisNotMet : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

// One failed law instance: which law broke and on which elements.
struct Witness {
  std::string law;
  std::vector<std::string> items;
  std::string detail;
  std::string pretty() const;
};

// Aggregated result of a law/property scan.  `checked` counts individual
// law instances evaluated; `failures` holds every (or the first) violation.
struct LawReport {
  long long checked = 0;
  std::vector<Witness> failures;
  bool ok() const { return failures.empty(); }
  void add(const Witness& w) { failures.push_back(w); }
  void merge(const LawReport& other);
  std::string summary() const;
};

// Deterministic RNG.  Bounded draws avoid std::uniform_int_distribution so
// that a given seed yields the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // Uniform integer in [lo, hi], inclusive.
  int uniform(int lo, int hi);

  double uniform01();

  bool bernoulli(double p) { return uniform01() < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 gen_;
};

// Stable per-instance seed derivation (splitmix64 over master seed + index),
// so parallel suite runs generate identical instances in any schedule.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

// Should a kernel with `work` inner iterations take its OpenMP path?
bool use_parallel(Exec e, long long work);

}  // namespace latsp
