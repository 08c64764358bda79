#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigroup/perm_group.hpp"
#include "pigroup/permutation.hpp"
#include "pigroup/primes.hpp"
#include "pigroup/rational.hpp"
#include "pigroup/structure.hpp"

namespace pigroup {

/// The set G_pi of all pi-elements of G, in element iteration order. This is
/// a plain subset of G, not usually a subgroup. The identity is always a
/// member: its order has no prime factors at all.
struct PiElementSet {
  PermGroup parent;
  PrimeSet pi;
  std::vector<Permutation> members;

  std::uint64_t count() const { return members.size(); }
};

inline bool is_pi_element(const Permutation& g, const PrimeSet& pi) {
  return pi.is_pi_number(g.order());
}

inline PiElementSet pi_elements(const PermGroup& G, const PrimeSet& pi) {
  const auto& elems = G.elements();
  const auto& masks = G.element_prime_masks();
  const std::uint32_t pimask = G.pi_mask(pi);
  PiElementSet set{G, pi, {}};
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    if ((masks[i] & ~pimask) == 0) set.members.push_back(elems[i]);
  return set;
}

inline std::uint64_t pi_element_count(const PermGroup& G, const PrimeSet& pi) {
  const auto& masks = G.element_prime_masks();
  const std::uint32_t pimask = G.pi_mask(pi);
  std::uint64_t count = 0;
  for (std::uint32_t m : masks)
    if ((m & ~pimask) == 0) ++count;
  return count;
}

/// Pi-elements of the right coset Ky, in K's iteration order.
inline PiElementSet coset_pi_elements(const PermGroup& G, const PermGroup& K,
                                      const Permutation& y, const PrimeSet& pi) {
  if (!G.contains(y))
    throw std::invalid_argument("coset_pi_elements: y outside the group");
  if (!K.is_subgroup_of(G))
    throw std::invalid_argument("coset_pi_elements: K is not a subgroup of G");
  PiElementSet set{G, pi, {}};
  for (const Permutation& k : K.elements()) {
    Permutation e = k * y;
    if (is_pi_element(e, pi)) set.members.push_back(std::move(e));
  }
  return set;
}

/// Number of pi-elements in the centralizer of the representative of class
/// `class_idx`. Constant on conjugacy classes, which is what makes the
/// class-accelerated pair counts below valid.
inline std::uint64_t class_centralizer_pi_count(const PermGroup& G, std::uint32_t class_idx,
                                                const PrimeSet& pi) {
  const PermGroup& c = class_centralizers(G)[class_idx];
  if (c.shares_impl(G)) return pi_element_count(G, pi);
  std::uint64_t count = 0;
  for (std::uint64_t n : c.element_orders())
    if (pi.is_pi_number(n)) ++count;
  return count;
}

/// |C_G(x)_pi| for an arbitrary member x.
inline std::uint64_t centralizer_pi_count(const PermGroup& G, const Permutation& x,
                                          const PrimeSet& pi) {
  return class_centralizer_pi_count(G, class_index_of(G, x), pi);
}

/// |C_G(x)_pi| / |G_pi| for a pi-element x of G.
inline Rational centralizer_pi_fraction(const PermGroup& G, const Permutation& x,
                                        const PrimeSet& pi) {
  if (!is_pi_element(x, pi))
    throw std::invalid_argument("centralizer_pi_fraction: x is not a pi-element");
  const std::uint64_t num = centralizer_pi_count(G, x, pi);
  const std::uint64_t den = pi_element_count(G, pi);
  return Rational(static_cast<Int128>(num), static_cast<Int128>(den));
}

/// Ordered commuting pairs among the pi-elements, class-accelerated:
/// sum over classes of pi-elements of |class| * |C_G(rep)_pi|.
inline std::uint64_t commuting_pi_pair_count(const PermGroup& G, const PrimeSet& pi) {
  const auto& dec = conjugacy_classes(G);
  std::uint64_t pairs = 0;
  for (std::uint32_t i = 0; i < dec.classes.size(); ++i) {
    if (!pi.is_pi_number(dec.classes[i].element_order)) continue;
    pairs += dec.classes[i].size * class_centralizer_pi_count(G, i, pi);
  }
  return pairs;
}

/// Pr_pi(G): probability that two uniformly random pi-elements commute.
/// Empty pi means G_pi = {1} and the probability is 1.
inline Rational pr_pi(const PermGroup& G, const PrimeSet& pi) {
  const std::uint64_t n = pi_element_count(G, pi);
  const std::uint64_t pairs = commuting_pi_pair_count(G, pi);
  return Rational(static_cast<Int128>(pairs), static_cast<Int128>(n) * static_cast<Int128>(n));
}

/// Pr(G), computed both as commuting pairs / |G|^2 and as k(G)/|G|. The two
/// expressions must agree exactly; a mismatch means a defect in the class or
/// centralizer computations and is reported as a hard fault.
inline Rational commuting_probability(const PermGroup& G) {
  const auto& dec = conjugacy_classes(G);
  std::uint64_t pairs = 0;
  for (std::uint32_t i = 0; i < dec.classes.size(); ++i)
    pairs += dec.classes[i].size * class_centralizers(G)[i].order();
  const Rational by_pairs(static_cast<Int128>(pairs),
                          static_cast<Int128>(G.order()) * static_cast<Int128>(G.order()));
  const Rational by_classes(static_cast<Int128>(dec.classes.size()),
                            static_cast<Int128>(G.order()));
  if (by_pairs != by_classes)
    throw std::logic_error("commuting probability mismatch: pair count " + by_pairs.str() +
                           " vs k(G)/|G| " + by_classes.str());
  return by_classes;
}

/// d_pi(G) = k_pi(G) / |G|_pi.
inline Rational d_pi(const PermGroup& G, const PrimeSet& pi) {
  const auto& dec = conjugacy_classes(G);
  std::uint64_t k_pi = 0;
  for (const auto& cls : dec.classes)
    if (pi.is_pi_number(cls.element_order)) ++k_pi;
  return Rational(static_cast<Int128>(k_pi), static_cast<Int128>(pi_part(G.order(), pi)));
}

inline std::uint64_t class_count(const PermGroup& G) {
  return conjugacy_classes(G).classes.size();
}

/// Fixed point ratio of z acting by conjugation on a pi-element set: the
/// fixed points are exactly the members commuting with z.
inline Rational fixed_point_ratio(const Permutation& z, const PiElementSet& domain) {
  if (domain.members.empty())
    throw std::invalid_argument("fixed_point_ratio: empty domain");
  std::uint64_t fixed = 0;
  for (const Permutation& m : domain.members)
    if (m.commutes_with(z)) ++fixed;
  return Rational(static_cast<Int128>(fixed), static_cast<Int128>(domain.members.size()));
}

/// Fixed point ratio of z acting on a right coset space by multiplication.
inline Rational fixed_point_ratio(const Permutation& z, const CosetSpace& domain) {
  if (domain.reps.empty())
    throw std::invalid_argument("fixed_point_ratio: empty domain");
  std::uint64_t fixed = 0;
  for (const Permutation& rep : domain.reps)
    if (domain.canonical(rep * z) == rep) ++fixed;
  return Rational(static_cast<Int128>(fixed), static_cast<Int128>(domain.reps.size()));
}

/// D = { y in G : <y> is conjugate to <x> }, in element iteration order.
inline std::vector<Permutation> d_set(const PermGroup& G, const Permutation& x) {
  if (x.is_identity()) throw std::invalid_argument("d_set: x must not be the identity");
  if (!G.contains(x)) throw std::invalid_argument("d_set: x outside the group");

  auto cyclic_key = [](const Permutation& g) {
    std::vector<Permutation> powers;
    Permutation p = g;
    while (!p.is_identity()) {
      powers.push_back(p);
      p = p * g;
    }
    powers.push_back(p);  // identity
    std::sort(powers.begin(), powers.end());
    return powers;
  };

  // Orbit of <x> under conjugation, as canonical sorted element lists.
  std::set<std::vector<Permutation>> family;
  std::deque<Permutation> pending = {x};
  family.insert(cyclic_key(x));
  std::set<Permutation> seen_gens = {x};
  while (!pending.empty()) {
    Permutation cur = std::move(pending.front());
    pending.pop_front();
    for (const Permutation& g : G.generators()) {
      Permutation conj = cur.conjugated_by(g);
      if (seen_gens.insert(conj).second) {
        family.insert(cyclic_key(conj));
        pending.push_back(std::move(conj));
      }
    }
  }

  const std::uint64_t target_order = x.order();
  const auto& orders = G.element_orders();
  const auto& elems = G.elements();
  std::vector<Permutation> result;
  for (std::uint32_t i = 0; i < elems.size(); ++i) {
    if (orders[i] != target_order) continue;
    if (family.count(cyclic_key(elems[i]))) result.push_back(elems[i]);
  }
  return result;
}

/// Brute-force double-loop oracles. These avoid the class decomposition and
/// the accelerated counting paths entirely; the verification harness recounts
/// with them before emitting any fail verdict.
namespace naive {

inline std::vector<Permutation> pi_members(const PermGroup& G, const PrimeSet& pi) {
  std::vector<Permutation> out;
  for (const Permutation& g : G.elements())
    if (pi.is_pi_number(g.order())) out.push_back(g);
  return out;
}

inline std::uint64_t commuting_pair_count(const std::vector<Permutation>& members) {
  std::uint64_t pairs = 0;
  for (const Permutation& a : members)
    for (const Permutation& b : members)
      if (a.commutes_with(b)) ++pairs;
  return pairs;
}

inline Rational pr_pi(const PermGroup& G, const PrimeSet& pi) {
  const auto members = pi_members(G, pi);
  const std::uint64_t n = members.size();
  return Rational(static_cast<Int128>(commuting_pair_count(members)),
                  static_cast<Int128>(n) * static_cast<Int128>(n));
}

inline Rational commuting_probability(const PermGroup& G) {
  const auto& elems = G.elements();
  const std::uint64_t n = elems.size();
  return Rational(static_cast<Int128>(commuting_pair_count(elems)),
                  static_cast<Int128>(n) * static_cast<Int128>(n));
}

inline Rational centralizer_pi_fraction(const PermGroup& G, const Permutation& x,
                                        const PrimeSet& pi) {
  std::uint64_t num = 0, den = 0;
  for (const Permutation& g : G.elements()) {
    if (!pi.is_pi_number(g.order())) continue;
    ++den;
    if (g.commutes_with(x)) ++num;
  }
  return Rational(static_cast<Int128>(num), static_cast<Int128>(den));
}

}  // namespace naive

}  // namespace pigroup
