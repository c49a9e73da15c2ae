#pragma once
#include <cstdint>
#include <random>

namespace mav {

// Seeded generator with a portable gaussian (std::normal_distribution's
// sequence is implementation-defined, which would unfreeze test values).
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() {
    return (eng_() >> 11) * (1.0 / 9007199254740992.0); // 53-bit mantissa in [0,1)
  }

  double gaussian() {
    if (have_) { have_ = false; return spare_; }
    double u1 = 0.0, u2;
    while (u1 == 0.0) u1 = uniform();
    u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * M_PI * u2);
    have_ = true;
    return r * std::cos(2.0 * M_PI * u2);
  }

private:
  std::mt19937_64 eng_;
  bool have_ = false;
  double spare_ = 0.0;
};

} // namespace mav
