#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pigroup/perm_group.hpp"
#include "pigroup/permutation.hpp"
#include "pigroup/primes.hpp"

namespace pigroup {

class LatticeLimitError : public std::runtime_error {
 public:
  explicit LatticeLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct ConjugacyClass {
  Permutation rep;  // least element of the class in iteration order
  std::uint64_t size;
  std::uint64_t element_order;
};

struct ClassDecomposition {
  std::uint64_t parent_order = 0;
  std::vector<ConjugacyClass> classes;
  std::vector<std::uint32_t> class_of;  // element index -> class index
};

/// A subgroup handle carrying its parent and cached structural flags.
struct Subgroup {
  PermGroup parent;
  PermGroup group;
  bool normal_in_parent = false;
  bool abelian = false;
  std::vector<std::uint64_t> prime_support;

  std::uint64_t order() const { return group.order(); }
};

/// Builds the subgroup generated by a list of elements, sifting each candidate
/// first so the generating set stays short.
inline PermGroup span_of(Point degree, const std::vector<Permutation>& elems,
                         GroupOptions options) {
  std::vector<Permutation> gens;
  std::optional<PermGroup> current;
  for (const Permutation& e : elems) {
    if (e.is_identity()) continue;
    if (current && current->contains(e)) continue;
    gens.push_back(e);
    current = PermGroup::from_generators(gens, options);
  }
  if (!current) return PermGroup::trivial(degree, options);
  return *current;
}

inline bool is_normal_in(const PermGroup& parent, const PermGroup& sub) {
  for (const Permutation& n : sub.generators()) {
    for (const Permutation& g : parent.generators()) {
      if (!sub.contains(n.conjugated_by(g))) return false;
    }
  }
  return true;
}

inline Subgroup make_subgroup(const PermGroup& parent, PermGroup group) {
  for (const Permutation& g : group.generators())
    if (!parent.contains(g))
      throw std::invalid_argument("make_subgroup: generator outside parent group");
  Subgroup s{parent, std::move(group), false, false, {}};
  s.normal_in_parent = is_normal_in(parent, s.group);
  s.abelian = s.group.is_abelian();
  s.prime_support = prime_factors(s.group.order());
  return s;
}

/// Full partition of G into conjugation orbits. Class representatives are the
/// least members in element iteration order. Cached on the group.
inline const ClassDecomposition& conjugacy_classes(const PermGroup& G) {
  return G.aux().get_or_compute<ClassDecomposition>("classes", [&G] {
    const auto& table = G.element_table();
    const auto& elems = table.elems;
    const auto& orders = G.element_orders();
    ClassDecomposition dec;
    dec.parent_order = G.order();
    dec.class_of.assign(elems.size(), 0);
    std::vector<bool> seen(elems.size(), false);
    for (std::uint32_t start = 0; start < elems.size(); ++start) {
      if (seen[start]) continue;
      const std::uint32_t class_idx = static_cast<std::uint32_t>(dec.classes.size());
      std::uint64_t size = 0;
      std::deque<std::uint32_t> queue = {start};
      seen[start] = true;
      while (!queue.empty()) {
        const std::uint32_t cur = queue.front();
        queue.pop_front();
        dec.class_of[cur] = class_idx;
        ++size;
        for (const Permutation& g : G.generators()) {
          const Permutation conj = elems[cur].conjugated_by(g);
          const std::uint32_t ci = table.index.at(conj);
          if (!seen[ci]) {
            seen[ci] = true;
            queue.push_back(ci);
          }
        }
      }
      dec.classes.push_back({elems[start], size, orders[start]});
    }
    std::uint64_t total = 0;
    for (const auto& c : dec.classes) total += c.size;
    if (total != G.order())
      throw std::logic_error("conjugacy class sizes do not sum to the group order");
    return dec;
  });
}

inline std::uint32_t class_index_of(const PermGroup& G, const Permutation& x) {
  auto idx = G.find_element_index(x);
  if (!idx) throw std::invalid_argument("element does not belong to the group");
  return conjugacy_classes(G).class_of[*idx];
}

/// Centralizer of each class representative; entry for a central element
/// shares the parent group object outright.
inline const std::vector<PermGroup>& class_centralizers(const PermGroup& G) {
  return G.aux().get_or_compute<std::vector<PermGroup>>("class_centralizers", [&G] {
    const auto& dec = conjugacy_classes(G);
    const auto& elems = G.elements();
    std::vector<PermGroup> result;
    result.reserve(dec.classes.size());
    for (const auto& cls : dec.classes) {
      std::vector<Permutation> commuting;
      for (const Permutation& g : elems)
        if (g.commutes_with(cls.rep)) commuting.push_back(g);
      if (commuting.size() == elems.size()) {
        result.push_back(G);
      } else {
        PermGroup c = span_of(G.degree(), commuting, G.options());
        if (c.order() != commuting.size())
          throw std::logic_error("centralizer span does not match the commuting-element count");
        result.push_back(std::move(c));
      }
      if (result.back().order() * cls.size != G.order())
        throw std::logic_error("orbit-stabilizer mismatch in centralizer computation");
    }
    return result;
  });
}

/// Subgroup of all elements commuting with x. Brute-force element filter.
inline Subgroup centralizer(const PermGroup& G, const Permutation& x) {
  if (!G.contains(x)) throw std::invalid_argument("centralizer: element outside the group");
  if (x.is_identity()) return make_subgroup(G, G);
  std::vector<Permutation> commuting;
  for (const Permutation& g : G.elements())
    if (g.commutes_with(x)) commuting.push_back(g);
  if (commuting.size() == G.elements().size()) return make_subgroup(G, G);
  return make_subgroup(G, span_of(G.degree(), commuting, G.options()));
}

inline Subgroup center(const PermGroup& G) {
  const PermGroup& z = G.aux().get_or_compute<PermGroup>("center", [&G] {
    std::vector<Permutation> central;
    for (const Permutation& g : G.elements()) {
      bool commutes = true;
      for (const Permutation& s : G.generators())
        if (!g.commutes_with(s)) {
          commutes = false;
          break;
        }
      if (commutes) central.push_back(g);
    }
    if (central.size() == G.elements().size()) return G;
    return span_of(G.degree(), central, G.options());
  });
  return make_subgroup(G, z);
}

/// Smallest normal subgroup of G containing every element of S.
inline Subgroup normal_closure(const PermGroup& G, const std::vector<Permutation>& seed) {
  for (const Permutation& s : seed)
    if (!G.contains(s)) throw std::invalid_argument("normal_closure: element outside the group");
  std::deque<Permutation> pending(seed.begin(), seed.end());
  std::vector<Permutation> gens;
  std::optional<PermGroup> H;
  while (!pending.empty()) {
    Permutation h = std::move(pending.front());
    pending.pop_front();
    if (h.is_identity()) continue;
    if (H && H->contains(h)) continue;
    gens.push_back(h);
    H = PermGroup::from_generators(gens, G.options());
    for (const Permutation& g : G.generators()) pending.push_back(gens.back().conjugated_by(g));
  }
  if (!H) return make_subgroup(G, PermGroup::trivial(G.degree(), G.options()));
  return make_subgroup(G, *H);
}

/// Normal closure of each class representative, aligned with the classes.
inline const std::vector<PermGroup>& class_closures(const PermGroup& G) {
  return G.aux().get_or_compute<std::vector<PermGroup>>("class_closures", [&G] {
    const auto& dec = conjugacy_classes(G);
    std::vector<PermGroup> result;
    result.reserve(dec.classes.size());
    for (const auto& cls : dec.classes) result.push_back(normal_closure(G, {cls.rep}).group);
    return result;
  });
}

/// Right cosets of a subgroup, each represented by its lexicographically
/// least element. Supports the right-multiplication action of the parent.
struct CosetSpace {
  PermGroup parent;
  PermGroup subgroup;
  std::vector<Permutation> reps;
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> rep_index;

  std::size_t size() const { return reps.size(); }

  Permutation canonical(const Permutation& g) const {
    const auto& hs = subgroup.elements();
    Permutation best = hs.front() * g;
    for (std::size_t i = 1; i < hs.size(); ++i) {
      Permutation c = hs[i] * g;
      if (c < best) best = std::move(c);
    }
    return best;
  }

  std::uint32_t index_of(const Permutation& g) const { return rep_index.at(canonical(g)); }
};

inline CosetSpace make_coset_space(const PermGroup& G, const PermGroup& H) {
  if (!H.is_subgroup_of(G))
    throw std::invalid_argument("make_coset_space: H is not a subgroup of G");
  CosetSpace space{G, H, {}, {}};
  Permutation start = space.canonical(G.identity());
  space.rep_index.emplace(start, 0);
  space.reps.push_back(std::move(start));
  for (std::size_t i = 0; i < space.reps.size(); ++i) {
    for (const Permutation& g : G.generators()) {
      Permutation next = space.canonical(space.reps[i] * g);
      if (space.rep_index.emplace(next, static_cast<std::uint32_t>(space.reps.size())).second)
        space.reps.push_back(std::move(next));
    }
  }
  if (space.reps.size() * H.order() != G.order())
    throw std::logic_error("coset space size does not match the subgroup index");
  return space;
}

/// The action of G on the cosets of a normal subgroup N, i.e. the quotient
/// G/N as a permutation group together with the natural map. When N is
/// trivial the quotient is G itself and the map is the identity.
struct QuotientMap {
  PermGroup group;
  bool trivial_kernel = false;
  std::optional<CosetSpace> space;

  Permutation image(const Permutation& g) const {
    if (trivial_kernel) return g;
    std::vector<Point> images(space->size());
    for (std::uint32_t i = 0; i < space->size(); ++i)
      images[i] = space->index_of(space->reps[i] * g);
    return Permutation::from_images(std::move(images));
  }
};

inline QuotientMap quotient_map(const PermGroup& G, const PermGroup& N) {
  if (!N.is_subgroup_of(G) || !is_normal_in(G, N))
    throw std::invalid_argument("quotient: subgroup is not normal in the parent");
  if (N.order() == 1) return QuotientMap{G, true, std::nullopt};
  CosetSpace space = make_coset_space(G, N);
  std::vector<Permutation> gens;
  const Point q_degree = static_cast<Point>(space.size());
  for (const Permutation& g : G.generators()) {
    std::vector<Point> images(q_degree);
    for (std::uint32_t i = 0; i < q_degree; ++i) images[i] = space.index_of(space.reps[i] * g);
    gens.push_back(Permutation::from_images(std::move(images)));
  }
  PermGroup q = PermGroup::from_generators(std::move(gens), G.options());
  if (q.order() * N.order() != G.order())
    throw std::logic_error("quotient order does not equal |G|/|N|");
  return QuotientMap{std::move(q), false, std::move(space)};
}

inline PermGroup quotient(const PermGroup& G, const PermGroup& N) {
  return quotient_map(G, N).group;
}

inline PermGroup quotient(const PermGroup& G, const Subgroup& N) { return quotient(G, N.group); }

/// Normal closure of all generator commutators.
inline Subgroup derived_subgroup(const PermGroup& G) {
  const PermGroup& d = G.aux().get_or_compute<PermGroup>("derived", [&G] {
    std::vector<Permutation> comms;
    const auto& gens = G.generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (i != j) comms.push_back(commutator(gens[i], gens[j]));
    return normal_closure(G, comms).group;
  });
  return make_subgroup(G, d);
}

/// True when the only normal subgroups are trivial: every nonidentity class
/// generates the whole group.
inline bool is_simple(const PermGroup& G) {
  if (G.order() <= 1) throw std::invalid_argument("is_simple: the trivial group is excluded");
  const auto& dec = conjugacy_classes(G);
  const auto& closures = class_closures(G);
  for (std::size_t i = 0; i < dec.classes.size(); ++i) {
    if (dec.classes[i].rep.is_identity()) continue;
    if (closures[i].order() != G.order()) return false;
  }
  return true;
}

namespace detail {

// Sorted indices of the classes contained in a normal subgroup H; since H is
// a union of classes, testing each representative suffices.
inline std::vector<std::uint32_t> class_id_set(const PermGroup& G, const PermGroup& H) {
  const auto& dec = conjugacy_classes(G);
  std::vector<std::uint32_t> ids;
  for (std::uint32_t i = 0; i < dec.classes.size(); ++i)
    if (H.contains(dec.classes[i].rep)) ids.push_back(i);
  return ids;
}

struct NormalLattice {
  std::vector<PermGroup> groups;
};

}  // namespace detail

/// All normal subgroups, found by breadth-first closure over unions of
/// conjugacy classes and deduplicated by the class set. Throws
/// LatticeLimitError when more than `cap` distinct subgroups appear.
inline std::vector<Subgroup> normal_subgroups(const PermGroup& G, std::size_t cap = 10'000) {
  const auto& lattice =
      G.aux().get_or_compute<detail::NormalLattice>("normal_lattice", [&G, cap] {
        const auto& dec = conjugacy_classes(G);
        const std::uint32_t k = static_cast<std::uint32_t>(dec.classes.size());
        std::map<std::vector<std::uint32_t>, PermGroup> found;
        std::deque<std::vector<std::uint32_t>> queue;

        PermGroup triv = PermGroup::trivial(G.degree(), G.options());
        auto triv_ids = detail::class_id_set(G, triv);
        queue.push_back(triv_ids);
        found.emplace(std::move(triv_ids), std::move(triv));

        while (!queue.empty()) {
          std::vector<std::uint32_t> ids = std::move(queue.front());
          queue.pop_front();
          const PermGroup H = found.at(ids);
          for (std::uint32_t ci = 0; ci < k; ++ci) {
            if (std::binary_search(ids.begin(), ids.end(), ci)) continue;
            std::vector<Permutation> seed = H.generators();
            seed.push_back(dec.classes[ci].rep);
            PermGroup joined = normal_closure(G, seed).group;
            auto joined_ids = detail::class_id_set(G, joined);
            if (found.count(joined_ids)) continue;
            if (found.size() >= cap)
              throw LatticeLimitError("normal lattice too large: more than " +
                                      std::to_string(cap) + " normal subgroups");
            queue.push_back(joined_ids);
            found.emplace(std::move(joined_ids), std::move(joined));
          }
        }

        detail::NormalLattice lattice;
        for (auto& [ids, group] : found) lattice.groups.push_back(group);
        std::sort(lattice.groups.begin(), lattice.groups.end(),
                  [&G](const PermGroup& a, const PermGroup& b) {
                    if (a.order() != b.order()) return a.order() < b.order();
                    return detail::class_id_set(G, a) < detail::class_id_set(G, b);
                  });
        return lattice;
      });
  std::vector<Subgroup> out;
  out.reserve(lattice.groups.size());
  for (const PermGroup& H : lattice.groups) out.push_back(make_subgroup(G, H));
  return out;
}

/// O_pi(G): the largest normal pi-subgroup, generated by the class
/// representatives whose normal closure is a pi-group.
inline Subgroup o_pi_core(const PermGroup& G, const PrimeSet& pi) {
  const PermGroup& core =
      G.aux().get_or_compute<PermGroup>("o_pi_core:" + pi.str(), [&G, &pi] {
        const auto& dec = conjugacy_classes(G);
        const auto& closures = class_closures(G);
        std::vector<Permutation> seeds;
        for (std::size_t i = 0; i < dec.classes.size(); ++i) {
          if (dec.classes[i].rep.is_identity()) continue;
          if (pi.is_pi_number(closures[i].order())) seeds.push_back(dec.classes[i].rep);
        }
        PermGroup core_group = normal_closure(G, seeds).group;
        if (!pi.is_pi_number(core_group.order()))
          throw std::logic_error("o_pi_core produced a non-pi-group");
        return core_group;
      });
  return make_subgroup(G, core);
}

inline bool has_normal_hall(const PermGroup& G, const PrimeSet& pi) {
  return o_pi_core(G, pi).order() == pi_part(G.order(), pi);
}

/// F(G): join of the p-cores over the primes dividing |G|. The result is
/// checked to be the direct product of those cores, i.e. nilpotent.
inline Subgroup fitting(const PermGroup& G) {
  const PermGroup& fit = G.aux().get_or_compute<PermGroup>("fitting", [&G] {
    std::vector<Permutation> gens;
    std::uint64_t product = 1;
    for (std::uint64_t p : G.order_primes()) {
      Subgroup core = o_pi_core(G, PrimeSet{p});
      product *= core.order();
      for (const Permutation& g : core.group.generators())
        if (!g.is_identity()) gens.push_back(g);
    }
    PermGroup join = gens.empty() ? PermGroup::trivial(G.degree(), G.options())
                                  : PermGroup::from_generators(gens, G.options());
    if (join.order() != product)
      throw std::logic_error("Fitting subgroup is not the direct product of the p-cores");
    return join;
  });
  return make_subgroup(G, fit);
}

/// Perfect with simple central quotient.
inline bool is_quasisimple(const PermGroup& G) {
  if (G.order() == 1) return false;
  if (derived_subgroup(G).order() != G.order()) return false;
  PermGroup q = quotient(G, center(G).group);
  return q.order() > 1 && is_simple(q);
}

namespace detail {

inline void collect_components(const PermGroup& G,
                               std::map<std::vector<Permutation>, PermGroup>& found,
                               std::size_t lattice_cap) {
  if (G.order() == 1) return;
  if (is_quasisimple(G)) {
    std::vector<Permutation> key = G.elements();
    std::sort(key.begin(), key.end());
    found.emplace(std::move(key), G);
    return;
  }
  for (const Subgroup& N : normal_subgroups(G, lattice_cap)) {
    if (N.order() == 1 || N.order() == G.order()) continue;
    collect_components(N.group, found, lattice_cap);
  }
}

}  // namespace detail

/// All subnormal quasisimple subgroups, deduplicated by element set.
inline std::vector<Subgroup> components(const PermGroup& G, std::size_t lattice_cap = 10'000) {
  const auto& comps =
      G.aux().get_or_compute<std::vector<PermGroup>>("components", [&G, lattice_cap] {
        std::map<std::vector<Permutation>, PermGroup> found;
        detail::collect_components(G, found, lattice_cap);
        std::vector<PermGroup> out;
        for (auto& [key, group] : found) out.push_back(group);
        std::sort(out.begin(), out.end(), [](const PermGroup& a, const PermGroup& b) {
          if (a.order() != b.order()) return a.order() < b.order();
          return a.generators() < b.generators();
        });
        return out;
      });
  std::vector<Subgroup> out;
  out.reserve(comps.size());
  for (const PermGroup& c : comps) out.push_back(make_subgroup(G, c));
  return out;
}

/// F*(G) = F(G) E(G); the self-centralizing property C_G(F*) <= F* is
/// asserted after construction.
inline Subgroup generalized_fitting(const PermGroup& G, std::size_t lattice_cap = 10'000) {
  const PermGroup& fstar =
      G.aux().get_or_compute<PermGroup>("generalized_fitting", [&G, lattice_cap] {
        std::vector<Permutation> gens;
        for (const Permutation& g : fitting(G).group.generators())
          if (!g.is_identity()) gens.push_back(g);
        for (const Subgroup& comp : components(G, lattice_cap))
          for (const Permutation& g : comp.group.generators())
            if (!g.is_identity()) gens.push_back(g);
        PermGroup join = gens.empty() ? PermGroup::trivial(G.degree(), G.options())
                                      : PermGroup::from_generators(gens, G.options());
        for (const Permutation& g : G.elements()) {
          bool centralizes = true;
          for (const Permutation& s : join.generators())
            if (!g.commutes_with(s)) {
              centralizes = false;
              break;
            }
          if (centralizes && !join.contains(g))
            throw std::logic_error("generalized Fitting subgroup is not self-centralizing");
        }
        return join;
      });
  return make_subgroup(G, fstar);
}

/// Bounded search for a Hall pi-subgroup generated by at most max_gens
/// pi-elements, trying at most max_attempts generating sets. Finding nothing
/// is not a proof that none exists; the search is a heuristic and no
/// verification verdict may depend on it.
inline std::optional<Subgroup> find_hall_subgroup(const PermGroup& G, const PrimeSet& pi,
                                                  int max_gens = 3,
                                                  std::uint64_t max_attempts = 20'000) {
  if (max_gens < 1) throw std::invalid_argument("find_hall_subgroup: max_gens must be >= 1");
  const std::uint64_t target = pi_part(G.order(), pi);
  if (target == 1)
    return make_subgroup(G, PermGroup::trivial(G.degree(), G.options()));

  const auto& elems = G.elements();
  const auto& masks = G.element_prime_masks();
  const std::uint32_t pimask = G.pi_mask(pi);
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < elems.size(); ++i)
    if ((masks[i] & ~pimask) == 0 && !elems[i].is_identity()) candidates.push_back(i);

  std::vector<Permutation> chosen;
  std::optional<PermGroup> result;
  std::uint64_t attempts = 0;

  std::function<bool(std::size_t, const std::optional<PermGroup>&)> search =
      [&](std::size_t start, const std::optional<PermGroup>& current) -> bool {
    if (current && current->order() == target) {
      result = *current;
      return true;
    }
    if (chosen.size() >= static_cast<std::size_t>(max_gens)) return false;
    for (std::size_t i = start; i < candidates.size(); ++i) {
      if (attempts >= max_attempts) return false;
      const Permutation& y = elems[candidates[i]];
      if (current && current->contains(y)) continue;
      ++attempts;
      chosen.push_back(y);
      PermGroup next = PermGroup::from_generators(chosen, G.options());
      const bool viable = pi.is_pi_number(next.order());
      if (viable && search(i + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };

  search(0, std::nullopt);
  if (!result) return std::nullopt;
  return make_subgroup(G, *result);
}

}  // namespace pigroup
