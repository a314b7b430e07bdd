#include "latsp/core.hpp"

#include <sstream>

namespace latsp {

std::string Witness::pretty() const {
  std::ostringstream os;
  os << law << " violated";
  if (!items.empty()) {
    os << " at (";
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (i) os << ", ";
      os << items[i];
    }
    os << ")";
  }
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

void LawReport::merge(const LawReport& other) {
  checked += other.checked;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string LawReport::summary() const {
  std::ostringstream os;
  os << (ok() ? "pass" : "FAIL") << " (" << checked << " instances checked";
  if (!ok()) os << ", " << failures.size() << " violations";
  os << ")";
  return os.str();
}

int Rng::uniform(int lo, int hi) {
  if (hi < lo) throw Error("Rng::uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  // Rejection sampling keeps the draw unbiased and platform-stable.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

double Rng::uniform01() {
  return static_cast<double>(gen_() >> 11) * (1.0 / 9007199254740992.0);
}

bool use_parallel(Exec e, long long work) {
#ifdef _OPENMP
  switch (e) {
    case Exec::serial:
      return false;
    case Exec::parallel:
      return true;
    case Exec::automatic:
      return work >= (1 << 16);
  }
  return false;
#else
  (void)e;
  (void)work;
  return false;
#endif
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace latsp
