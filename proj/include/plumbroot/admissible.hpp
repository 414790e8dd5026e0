#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plumbroot/core.hpp"
#include "plumbroot/rational.hpp"
#include "plumbroot/spinc.hpp"

namespace plumbroot {

// A family {F_n : Z -> Q}. Evaluation must be pure; families may share a
// thread-safe cache internally.
class AdmissibleFamily {
 public:
  using Evaluator = std::function<Rational(int n, std::int64_t r)>;

  AdmissibleFamily(std::string name, Evaluator eval, bool claims_a3)
      : name_(std::move(name)), eval_(std::move(eval)), claims_a3_(claims_a3) {}

  Rational operator()(int n, std::int64_t r) const { return eval_(n, r); }
  const std::string& name() const noexcept { return name_; }
  bool claims_a3() const noexcept { return claims_a3_; }

 private:
  std::string name_;
  Evaluator eval_;
  bool claims_a3_;
};

// Coefficient of z^{-r} in (z - 1/z)^{2-n} for n <= 2.
Rational forced_value(int n, std::int64_t r);

// Average of the two expansions of (z - 1/z)^{2-n}.
Rational f_hat(int n, std::int64_t r);

// The |z| > 1 (sign > 0) or |z| < 1 (sign < 0) expansion alone.
Rational f_hat_pm(int sign, int n, std::int64_t r);

AdmissibleFamily fhat_family();
AdmissibleFamily fhat_plus_family();
AdmissibleFamily fhat_minus_family();

// seeds[n-1] = (F_{n+2}(0), F_{n+2}(1)). Throws SeedsExhausted on demand
// beyond the supplied seeds.
AdmissibleFamily family_from_seeds(std::vector<std::pair<Rational, Rational>> seeds);

// Seeds read as JSON [["p/q","p/q"], ...].
std::vector<std::pair<Rational, Rational>> parse_seeds(std::string_view text);

// Pointwise average.
AdmissibleFamily average(const std::vector<AdmissibleFamily>& families);

struct WindowReport {
  bool ok = true;
  std::optional<std::pair<int, std::int64_t>> witness;  // first failing (n, r)
  explicit operator bool() const noexcept { return ok; }
};

// (A1) and (A2) for 1 <= n <= n_max, |r| <= r_max.
WindowReport check_admissible(const AdmissibleFamily& f, int n_max, std::int64_t r_max);

// (A3): F_n(-r) = (-1)^n F_n(r) for 0 <= n <= n_max, |r| <= r_max.
WindowReport check_a3(const AdmissibleFamily& f, int n_max, std::int64_t r_max);

// prod_v F_{delta_v}((2Mx + k - Mu)_v).
Rational f_gamma_k(const Plumbing& p, const AdmissibleFamily& f, const SpincRepK& k,
                   const IntVec& x);

}  // namespace plumbroot
