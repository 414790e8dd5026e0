#include "plumbroot/admissible.hpp"

#include <map>
#include <mutex>

#include <json.hpp>

namespace plumbroot {

namespace {

// C(n, k) for small k, exact.
Rational binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return Rational(0);
  i128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = checked_mul128(acc, n - k + i);
    acc /= i;
  }
  return Rational(checked_narrow(acc));
}

bool same_parity(std::int64_t a, std::int64_t b) { return ((a - b) % 2) == 0; }

}  // namespace

Rational forced_value(int n, std::int64_t r) {
  switch (n) {
    case 2: return Rational(r == 0 ? 1 : 0);
    case 1: return Rational(r == -1 ? 1 : (r == 1 ? -1 : 0));
    case 0: return Rational(r == 2 || r == -2 ? 1 : (r == 0 ? -2 : 0));
    default: throw Error(ErrorKind::MalformedInput, "forced values exist only for n <= 2");
  }
}

Rational f_hat_pm(int sign, int n, std::int64_t r) {
  if (n <= 2) return forced_value(n, r);
  if (!same_parity(n, r)) return Rational(0);
  if (sign > 0) {
    if (r < n - 2) return Rational(0);
    return binomial((n + r) / 2 - 2, n - 3);
  }
  if (r > -(n - 2)) return Rational(0);
  Rational c = binomial((n - r) / 2 - 2, n - 3);
  return n % 2 == 0 ? c : -c;
}

Rational f_hat(int n, std::int64_t r) {
  if (n <= 2) return forced_value(n, r);
  const std::int64_t ar = r < 0 ? -r : r;
  if (!same_parity(n, r) || ar < n - 2) return Rational(0);
  Rational c = binomial((n + ar) / 2 - 2, n - 3) / Rational(2);
  return (r < 0 && n % 2 == 1) ? -c : c;
}

AdmissibleFamily fhat_family() { return AdmissibleFamily("fhat", f_hat, true); }

AdmissibleFamily fhat_plus_family() {
  return AdmissibleFamily("fhat+", [](int n, std::int64_t r) { return f_hat_pm(+1, n, r); },
                          false);
}

AdmissibleFamily fhat_minus_family() {
  return AdmissibleFamily("fhat-", [](int n, std::int64_t r) { return f_hat_pm(-1, n, r); },
                          false);
}

namespace {

class SeededFamily {
 public:
  explicit SeededFamily(std::vector<std::pair<Rational, Rational>> seeds)
      : seeds_(std::move(seeds)) {}

  Rational operator()(int n, std::int64_t r) {
    if (n <= 2) return forced_value(n, r);
    if (static_cast<std::size_t>(n - 2) > seeds_.size()) {
      throw Error(ErrorKind::SeedsExhausted,
                  "F_" + std::to_string(n) + " needs seed " + std::to_string(n - 2) +
                      " but only " + std::to_string(seeds_.size()) + " were given");
    }
    std::lock_guard lock(mu_);
    return eval(n, r);
  }

 private:
  // (A2) outward from the seeded values at r = 0 and r = 1.
  Rational eval(int n, std::int64_t r) {
    if (n <= 2) return forced_value(n, r);
    auto key = std::make_pair(n, r);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const auto& [a, b] = seeds_[n - 3];
    Rational val;
    if (r == 0 || r == 1) {
      val = r == 0 ? a : b;
    } else if (r >= 2) {
      // Start from the nearest cached value below r of the same parity.
      std::int64_t t = r - 2;
      while (t >= 2 && !cache_.count({n, t})) t -= 2;
      val = t >= 2 ? cache_.at({n, t}) : (t == 0 ? a : b);
      for (std::int64_t u = t + 2; u <= r; u += 2) {
        val += eval(n - 1, u - 1);
        cache_[{n, u}] = val;
      }
    } else {
      std::int64_t t = r + 2;
      while (t < 0 && !cache_.count({n, t})) t += 2;
      val = t < 0 ? cache_.at({n, t}) : (t == 0 ? a : b);
      for (std::int64_t u = t - 2; u >= r; u -= 2) {
        val -= eval(n - 1, u + 1);
        cache_[{n, u}] = val;
      }
    }
    cache_[key] = val;
    return val;
  }

  std::vector<std::pair<Rational, Rational>> seeds_;
  std::map<std::pair<int, std::int64_t>, Rational> cache_;
  std::mutex mu_;
};

}  // namespace

AdmissibleFamily family_from_seeds(std::vector<std::pair<Rational, Rational>> seeds) {
  auto impl = std::make_shared<SeededFamily>(std::move(seeds));
  return AdmissibleFamily("seeds", [impl](int n, std::int64_t r) { return (*impl)(n, r); },
                          false);
}

std::vector<std::pair<Rational, Rational>> parse_seeds(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, std::string("invalid seeds JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorKind::MalformedInput, "seeds must be a JSON list");
  auto number = [](const json& v) {
    if (v.is_string()) return Rational::parse(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    throw Error(ErrorKind::MalformedInput, "seed values must be \"p/q\" strings");
  };
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& pair : doc) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::MalformedInput, "each seed must be a pair [a_n, b_n]");
    }
    out.emplace_back(number(pair[0]), number(pair[1]));
  }
  return out;
}

AdmissibleFamily average(const std::vector<AdmissibleFamily>& families) {
  if (families.empty()) throw Error(ErrorKind::MalformedInput, "cannot average zero families");
  bool a3 = true;
  std::string name = "av(";
  for (std::size_t i = 0; i < families.size(); ++i) {
    a3 = a3 && families[i].claims_a3();
    name += (i ? "," : "") + families[i].name();
  }
  name += ")";
  return AdmissibleFamily(
      name,
      [families](int n, std::int64_t r) {
        Rational acc;
        for (const auto& f : families) acc += f(n, r);
        return acc / Rational(static_cast<std::int64_t>(families.size()));
      },
      a3);
}

WindowReport check_admissible(const AdmissibleFamily& f, int n_max, std::int64_t r_max) {
  WindowReport rep;
  auto fail = [&](int n, std::int64_t r) {
    rep.ok = false;
    rep.witness = {n, r};
    return rep;
  };
  for (std::int64_t r = -r_max; r <= r_max; ++r) {
    if (f(2, r) != Rational(r == 0 ? 1 : 0)) return fail(2, r);
  }
  for (int n = 1; n <= n_max; ++n) {
    for (std::int64_t r = -r_max; r <= r_max; ++r) {
      if (f(n, r + 1) - f(n, r - 1) != f(n - 1, r)) return fail(n, r);
    }
  }
  return rep;
}

WindowReport check_a3(const AdmissibleFamily& f, int n_max, std::int64_t r_max) {
  WindowReport rep;
  for (int n = 0; n <= n_max; ++n) {
    for (std::int64_t r = 0; r <= r_max; ++r) {
      Rational lhs = f(n, -r), rhs = f(n, r);
      if (n % 2 == 1) rhs = -rhs;
      if (lhs != rhs) {
        rep.ok = false;
        rep.witness = {n, r};
        return rep;
      }
    }
  }
  return rep;
}

Rational f_gamma_k(const Plumbing& p, const AdmissibleFamily& f, const SpincRepK& k,
                   const IntVec& x) {
  IntersectionMatrix m(p);
  IntVec mx = m.matrix() * x;
  IntVec mu = m.times_ones();
  Rational acc(1);
  for (int v = 0; v < p.size(); ++v) {
    std::int64_t l = checked_add(checked_add(checked_mul(2, mx[v]), k[v]), -mu[v]);
    acc *= f(p.degree(v), l);
    if (acc.is_zero()) break;
  }
  return acc;
}

}  // namespace plumbroot
