#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigroup/rational.hpp"

namespace pigroup {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; d == 2 ? d = 3 : d += 2) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
  std::uint64_t result = n;
  for (std::uint64_t p : prime_factors(n)) result -= result / p;
  return result;
}

/// A set of primes pi. Drives pi-part, pi-element and pi'-group predicates.
/// The set may contain primes not dividing the order of any group under
/// consideration; the smallest member is still used as the bound parameter p.
class PrimeSet {
 public:
  PrimeSet() = default;

  explicit PrimeSet(std::vector<std::uint64_t> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (std::uint64_t p : primes)
      if (!is_prime(p))
        throw std::invalid_argument(std::to_string(p) + " is not prime");
    primes_ = std::move(primes);
  }

  PrimeSet(std::initializer_list<std::uint64_t> primes)
      : PrimeSet(std::vector<std::uint64_t>(primes)) {}

  static PrimeSet primes_of(std::uint64_t n) {
    PrimeSet s;
    s.primes_ = prime_factors(n);
    return s;
  }

  const std::vector<std::uint64_t>& primes() const { return primes_; }
  bool empty() const { return primes_.empty(); }
  std::size_t size() const { return primes_.size(); }

  bool contains(std::uint64_t p) const {
    return std::binary_search(primes_.begin(), primes_.end(), p);
  }

  /// The smallest member p; throws on the empty set.
  std::uint64_t smallest() const {
    if (primes_.empty()) throw std::logic_error("PrimeSet::smallest on empty set");
    return primes_.front();
  }

  /// True when every prime factor of n lies in this set (so 1 always passes).
  bool is_pi_number(std::uint64_t n) const {
    for (std::uint64_t p : prime_factors(n))
      if (!contains(p)) return false;
    return true;
  }

  /// True when no prime factor of n lies in this set.
  bool is_pi_prime_number(std::uint64_t n) const {
    for (std::uint64_t p : prime_factors(n))
      if (contains(p)) return false;
    return true;
  }

  PrimeSet intersect(const PrimeSet& other) const {
    std::vector<std::uint64_t> out;
    std::set_intersection(primes_.begin(), primes_.end(), other.primes_.begin(),
                          other.primes_.end(), std::back_inserter(out));
    PrimeSet s;
    s.primes_ = std::move(out);
    return s;
  }

  PrimeSet minus(const PrimeSet& other) const {
    std::vector<std::uint64_t> out;
    std::set_difference(primes_.begin(), primes_.end(), other.primes_.begin(),
                        other.primes_.end(), std::back_inserter(out));
    PrimeSet s;
    s.primes_ = std::move(out);
    return s;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(primes_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const PrimeSet& a, const PrimeSet& b) { return a.primes_ == b.primes_; }
  friend bool operator!=(const PrimeSet& a, const PrimeSet& b) { return !(a == b); }
  friend bool operator<(const PrimeSet& a, const PrimeSet& b) { return a.primes_ < b.primes_; }

 private:
  std::vector<std::uint64_t> primes_;
};

/// Largest divisor of n whose prime factors all lie in pi.
inline std::uint64_t pi_part(std::uint64_t n, const PrimeSet& pi) {
  if (n == 0) throw std::invalid_argument("pi_part: n must be positive");
  std::uint64_t part = 1;
  for (std::uint64_t p : pi.primes()) {
    while (n % p == 0) {
      n /= p;
      part *= p;
    }
  }
  return part;
}

/// The bound (p^2 + p - 1) / p^3 attained by the sharp examples.
inline Rational threshold(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  Int128 pp = static_cast<Int128>(p);
  return Rational(pp * pp + pp - 1, pp * pp * pp);
}

/// All nonempty subsets of `primes` with at most max_size members,
/// ordered by size then lexicographically. Used by sweep pi policies.
inline std::vector<PrimeSet> prime_subsets(const std::vector<std::uint64_t>& primes,
                                           std::size_t max_size) {
  std::vector<PrimeSet> out;
  const std::size_t n = primes.size();
  for (std::size_t size = 1; size <= std::min(max_size, n); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      std::vector<std::uint64_t> subset;
      for (std::size_t i : idx) subset.push_back(primes[i]);
      out.emplace_back(std::move(subset));
      std::size_t i = size;
      while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace pigroup
