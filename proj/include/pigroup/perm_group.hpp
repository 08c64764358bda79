#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pigroup/permutation.hpp"
#include "pigroup/primes.hpp"

namespace pigroup {

class EnumerationLimitError : public std::runtime_error {
 public:
  explicit EnumerationLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct GroupOptions {
  std::uint64_t enumeration_limit = 1'000'000;
};

/// String-keyed lazy cache with at-most-once computation per key. Concurrent
/// readers of the same key block until the single winning computation
/// finishes; distinct keys never block each other, so cached computations may
/// depend on other cached computations.
class AuxCache {
 public:
  template <class T, class Fn>
  const T& get_or_compute(const std::string& key, Fn&& fn) const {
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto& entry = slots_[key];
      if (!entry) entry = std::make_shared<Slot>();
      slot = entry;
    }
    std::call_once(slot->flag, [&] { slot->value = std::make_shared<T>(fn()); });
    return *std::static_pointer_cast<const T>(slot->value);
  }

 private:
  struct Slot {
    std::once_flag flag;
    std::shared_ptr<void> value;
  };
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<Slot>> slots_;
};

namespace detail {

struct ChainLevel {
  Point base = 0;
  std::vector<Permutation> gens;  // strong generators fixing all earlier base points
  std::vector<Point> orbit;       // BFS discovery order
  std::vector<Permutation> transversal;      // transversal[i] maps base to orbit[i]
  std::vector<Permutation> transversal_inv;  // cached inverses for sifting
  std::vector<std::int32_t> orbit_pos;       // point -> index into orbit, or -1

  bool in_orbit(Point p) const { return orbit_pos[p] >= 0; }
  const Permutation& rep(Point p) const { return transversal[static_cast<std::size_t>(orbit_pos[p])]; }
  const Permutation& rep_inv(Point p) const {
    return transversal_inv[static_cast<std::size_t>(orbit_pos[p])];
  }
};

/// Deterministic Schreier-Sims. Base points are the first moved points of the
/// offending permutations, taken in discovery order; no randomization, so the
/// same generator list always yields the identical chain.
class StabilizerChain {
 public:
  StabilizerChain(Point degree, const std::vector<Permutation>& generators) : degree_(degree) {
    for (const Permutation& g : generators)
      if (!g.is_identity()) ensure_base_point(g);

    for (const Permutation& g : generators)
      if (!g.is_identity()) add_gen_to_levels(g, 0, count_fixed_prefix(g));

    for (auto& level : levels_) rebuild_orbit(level);

    // Verify Schreier generators bottom-up; on a failed sift, record the new
    // strong generator and resume verification at the level it reached.
    std::int64_t i = static_cast<std::int64_t>(levels_.size()) - 1;
    while (i >= 0) {
      bool restart = false;
      ChainLevel& level = levels_[static_cast<std::size_t>(i)];
      for (std::size_t oi = 0; oi < level.orbit.size() && !restart; ++oi) {
        const Point p = level.orbit[oi];
        for (std::size_t gi = 0; gi < level.gens.size() && !restart; ++gi) {
          const Permutation& s = level.gens[gi];
          Permutation schreier = level.rep(p) * s * level.rep_inv(s(p));
          if (schreier.is_identity()) continue;
          auto [residue, j] = sift(schreier, static_cast<std::size_t>(i) + 1);
          if (residue.is_identity()) continue;
          if (j == levels_.size()) ensure_base_point(residue);
          add_gen_to_levels(residue, static_cast<std::size_t>(i) + 1, j);
          for (std::size_t m = static_cast<std::size_t>(i) + 1; m <= j && m < levels_.size(); ++m)
            rebuild_orbit(levels_[m]);
          i = static_cast<std::int64_t>(std::min(j, levels_.size() - 1));
          restart = true;
        }
      }
      if (!restart) --i;
    }
  }

  Point degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }

  std::uint64_t order() const {
    std::uint64_t result = 1;
    for (const auto& level : levels_) {
      const std::uint64_t n = level.orbit.size();
      if (n != 0 && result > std::numeric_limits<std::uint64_t>::max() / n)
        throw std::overflow_error("group order exceeds 64-bit range");
      result *= n;
    }
    return result;
  }

  /// Sifts g through levels [start, end). Returns the residue and the level
  /// at which sifting stopped; membership means residue == identity.
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t start = 0) const {
    for (std::size_t m = start; m < levels_.size(); ++m) {
      const ChainLevel& level = levels_[m];
      const Point p = g(level.base);
      if (!level.in_orbit(p)) return {std::move(g), m};
      g = g * level.rep_inv(p);
    }
    return {std::move(g), levels_.size()};
  }

 private:
  std::size_t count_fixed_prefix(const Permutation& g) const {
    std::size_t m = 0;
    while (m < levels_.size() && g(levels_[m].base) == levels_[m].base) ++m;
    return m;
  }

  void ensure_base_point(const Permutation& g) {
    for (const auto& level : levels_)
      if (g(level.base) != level.base) return;
    ChainLevel level;
    level.base = g.smallest_moved_point();
    level.orbit_pos.assign(degree_, -1);
    levels_.push_back(std::move(level));
  }

  // g fixes the base points of levels [0, upto), so it is a valid strong
  // generator for every level m <= upto; register it at levels [from, upto].
  void add_gen_to_levels(const Permutation& g, std::size_t from, std::size_t upto) {
    for (std::size_t m = from; m <= upto && m < levels_.size(); ++m)
      levels_[m].gens.push_back(g);
  }

  void rebuild_orbit(ChainLevel& level) {
    level.orbit.clear();
    level.transversal.clear();
    level.transversal_inv.clear();
    level.orbit_pos.assign(degree_, -1);
    level.orbit.push_back(level.base);
    level.orbit_pos[level.base] = 0;
    level.transversal.push_back(Permutation::identity(degree_));
    level.transversal_inv.push_back(Permutation::identity(degree_));
    for (std::size_t qi = 0; qi < level.orbit.size(); ++qi) {
      const Point q = level.orbit[qi];
      for (const Permutation& s : level.gens) {
        const Point r = s(q);
        if (level.orbit_pos[r] >= 0) continue;
        level.orbit_pos[r] = static_cast<std::int32_t>(level.orbit.size());
        level.orbit.push_back(r);
        Permutation rep = level.transversal[qi] * s;
        level.transversal_inv.push_back(rep.inverse());
        level.transversal.push_back(std::move(rep));
      }
    }
  }

  Point degree_;
  std::vector<ChainLevel> levels_;
};

}  // namespace detail

struct ElementTable {
  std::vector<Permutation> elems;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index;
};

/// A finite group given by permutation generators, backed by a stabilizer
/// chain. Values are immutable and cheap to copy; copies share the chain and
/// all lazily computed caches.
class PermGroup {
 public:
  static PermGroup from_generators(std::vector<Permutation> gens, GroupOptions options = {}) {
    if (gens.empty()) throw std::invalid_argument("from_generators: empty generator list");
    const Point degree = gens.front().degree();
    for (const Permutation& g : gens)
      if (g.degree() != degree)
        throw std::invalid_argument("from_generators: generators have mismatched degrees");
    auto impl = std::make_shared<Impl>();
    impl->degree = degree;
    impl->generators = std::move(gens);
    impl->options = options;
    impl->chain = std::make_unique<detail::StabilizerChain>(degree, impl->generators);
    impl->order = impl->chain->order();
    PermGroup g;
    g.impl_ = std::move(impl);
    return g;
  }

  static PermGroup trivial(Point degree, GroupOptions options = {}) {
    return from_generators({Permutation::identity(degree)}, options);
  }

  Point degree() const { return impl_->degree; }
  const std::vector<Permutation>& generators() const { return impl_->generators; }
  std::uint64_t order() const { return impl_->order; }
  std::uint64_t enumeration_limit() const { return impl_->options.enumeration_limit; }
  const GroupOptions& options() const { return impl_->options; }
  bool is_trivial() const { return impl_->order == 1; }

  Permutation identity() const { return Permutation::identity(impl_->degree); }

  bool contains(const Permutation& g) const {
    if (g.degree() != impl_->degree)
      throw std::invalid_argument("contains: degree mismatch");
    return impl_->chain->sift(g).first.is_identity();
  }

  /// Chain residue of g; the identity exactly when g is a member.
  Permutation sift_residue(const Permutation& g) const { return impl_->chain->sift(g).first; }

  std::vector<Point> base() const {
    std::vector<Point> b;
    for (const auto& level : impl_->chain->levels()) b.push_back(level.base);
    return b;
  }

  std::vector<std::uint64_t> base_orbit_lengths() const {
    std::vector<std::uint64_t> lens;
    for (const auto& level : impl_->chain->levels()) lens.push_back(level.orbit.size());
    return lens;
  }

  /// All elements, each exactly once, in a deterministic order fixed by the
  /// chain. Cached after the first call. Throws EnumerationLimitError when
  /// the order exceeds the configured limit.
  const std::vector<Permutation>& elements() const { return element_table().elems; }

  const ElementTable& element_table() const {
    return aux().get_or_compute<ElementTable>("elements", [this] { return enumerate(); });
  }

  std::optional<std::uint32_t> find_element_index(const Permutation& g) const {
    const auto& table = element_table();
    auto it = table.index.find(g);
    if (it == table.index.end()) return std::nullopt;
    return it->second;
  }

  /// Element orders, aligned with elements().
  const std::vector<std::uint64_t>& element_orders() const {
    return aux().get_or_compute<std::vector<std::uint64_t>>("element_orders", [this] {
      const auto& elems = elements();
      std::vector<std::uint64_t> orders;
      orders.reserve(elems.size());
      for (const Permutation& g : elems) orders.push_back(g.order());
      return orders;
    });
  }

  /// Primes dividing the group order, ascending.
  const std::vector<std::uint64_t>& order_primes() const {
    return aux().get_or_compute<std::vector<std::uint64_t>>(
        "order_primes", [this] { return prime_factors(impl_->order); });
  }

  /// Per-element bitmasks over order_primes(): bit i set when the i-th prime
  /// divides the element's order. Together with pi_mask this answers
  /// pi-element queries in O(1) per element.
  const std::vector<std::uint32_t>& element_prime_masks() const {
    return aux().get_or_compute<std::vector<std::uint32_t>>("element_prime_masks", [this] {
      const auto& orders = element_orders();
      const auto& primes = order_primes();
      std::vector<std::uint32_t> masks;
      masks.reserve(orders.size());
      for (std::uint64_t n : orders) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
          if (n % primes[i] == 0) mask |= (1u << i);
        masks.push_back(mask);
      }
      return masks;
    });
  }

  std::uint32_t pi_mask(const PrimeSet& pi) const {
    const auto& primes = order_primes();
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      if (pi.contains(primes[i])) mask |= (1u << i);
    return mask;
  }

  bool is_abelian() const {
    return aux().get_or_compute<bool>("is_abelian", [this] {
      const auto& gens = impl_->generators;
      for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
          if (!gens[i].commutes_with(gens[j])) return false;
      return true;
    });
  }

  /// True when both groups have the same element set.
  bool same_group(const PermGroup& other) const {
    if (impl_ == other.impl_) return true;
    if (degree() != other.degree() || order() != other.order()) return false;
    for (const Permutation& g : generators())
      if (!other.contains(g)) return false;
    return true;
  }

  bool is_subgroup_of(const PermGroup& other) const {
    if (degree() != other.degree()) return false;
    for (const Permutation& g : generators())
      if (!other.contains(g)) return false;
    return true;
  }

  AuxCache& aux() const { return impl_->aux; }

  bool shares_impl(const PermGroup& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    Point degree = 0;
    std::vector<Permutation> generators;
    GroupOptions options;
    std::unique_ptr<detail::StabilizerChain> chain;
    std::uint64_t order = 0;
    mutable AuxCache aux;
  };

  ElementTable enumerate() const {
    if (impl_->order > impl_->options.enumeration_limit)
      throw EnumerationLimitError("group too large to enumerate: order " +
                                  std::to_string(impl_->order) + " exceeds limit " +
                                  std::to_string(impl_->options.enumeration_limit));
    const auto& levels = impl_->chain->levels();
    std::vector<Permutation> elems = {Permutation::identity(impl_->degree)};
    for (std::size_t li = levels.size(); li-- > 0;) {
      const auto& level = levels[li];
      std::vector<Point> sorted_orbit = level.orbit;
      std::sort(sorted_orbit.begin(), sorted_orbit.end());
      std::vector<Permutation> next;
      next.reserve(elems.size() * sorted_orbit.size());
      for (Point p : sorted_orbit) {
        const Permutation& rep = level.rep(p);
        for (const Permutation& h : elems) next.push_back(h * rep);
      }
      elems = std::move(next);
    }
    ElementTable table;
    table.index.reserve(elems.size() * 2);
    for (std::uint32_t i = 0; i < elems.size(); ++i) table.index.emplace(elems[i], i);
    table.elems = std::move(elems);
    if (table.index.size() != table.elems.size())
      throw std::logic_error("element enumeration produced duplicates");
    return table;
  }

  std::shared_ptr<const Impl> impl_;
};

}  // namespace pigroup
