// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace agesirs {

// State layout used everywhere, including adjoint indexing lam1..lam6.
enum StateIndex : int { iS1 = 0, iI1 = 1, iR1 = 2, iS2 = 3, iI2 = 4, iR2 = 5 };

using State = std::array<double, 6>;
using Adjoint = std::array<double, 6>;

inline constexpr std::array<const char*, 6> kStateNames = {"S1", "I1", "R1",
                                                           "S2", "I2", "R2"};

// Thrown on invariant/config violations; message carries the key path.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an integration produces a non-finite sample.
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& msg, std::int64_t step)
      : std::runtime_error(msg + " at step " + std::to_string(step)),
        step_index(step) {}
  std::int64_t step_index;
};

// All rate constants of the two-age-group SIRS system. u11/u12 are the
// baseline (constant) treatment rates; the control problem replaces them
// with time-dependent schedules bounded separately.
struct Params {
  double b1 = 7.192;       // young-susceptible recruitment (persons/day)
  double delta1 = 0.0714;  // loss of immunity, young (1/day)
  double delta2 = 0.0714;  // loss of immunity, adult (1/day)
  double beta1 = 4.0 / 3.0;  // young<-young transmission (1/(person*day))
  double beta2 = 2.0;        // young<-adult
  double beta3 = 4.0;        // adult<-young
  double beta4 = 8e-8;       // adult<-adult
  double mu = 0.062;     // natural death (1/day)
  double d1 = 0.000073;  // disease-induced death, young (1/day)
  double d2 = 0.0000913; // disease-induced death, adult (1/day)
  double u11 = 0.1;      // treatment rate, young (1/day)
  double u12 = 0.1;      // saturated-treatment coefficient, adult (1/day)
  double alpha = 0.4;    // treatment saturation constant (1/person^2)
  double m = 0.000182;   // maturation young->adult (1/day)
  bool operator==(const Params&) const = default;
};

// Instantaneous control values used by the vector field.
struct ControlPair {
  double u11 = 0.0;
  double u12 = 0.0;
};

// Uniform time grid shared by state, adjoint and control schedules.
struct Grid {
  double t0 = 0.0;
  double T = 100.0;
  std::int64_t n_steps = 10000;
  double h() const { return (T - t0) / static_cast<double>(n_steps); }
  bool operator==(const Grid&) const = default;
};

enum class Strategy { none, u11_only, u12_only, both };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::none: return "none";
    case Strategy::u11_only: return "u11";
    case Strategy::u12_only: return "u12";
    case Strategy::both: return "both";
  }
  return "?";
}

void validate(const Params& p);          // throws DomainError with params.<field>
void validate(const Grid& g);            // throws DomainError with grid.<field>
void validate_state(const State& y);     // componentwise >= 0, finite

// Baseline parameter presets.
Params table2();  // endemic-scale transmissibility
Params table3();  // sub-threshold recruitment (r0 < 1)
Params table4();  // r0 slightly above 1

// Deterministic uniform RNG: mt19937_64 with a fixed output mapping, so the
// stream does not depend on the implementation-defined
// std::uniform_real_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform01() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  double log_uniform10(double lo_exp, double hi_exp) {  // 10^U(lo,hi)
    return std::pow(10.0, uniform(lo_exp, hi_exp));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace agesirs
