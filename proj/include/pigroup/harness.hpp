#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pigroup/catalog.hpp"
#include "pigroup/invariants.hpp"
#include "pigroup/perm_group.hpp"
#include "pigroup/primes.hpp"
#include "pigroup/rational.hpp"
#include "pigroup/structure.hpp"

namespace pigroup {

enum class TheoremId {
  A,
  B,
  CForward,
  CConverse,
  L21i,
  L21ii,
  C25,
  L34,
  P44,
  P45,
  P51,
  L52,
  Gustafson,
  OpenQ,
};

inline const std::vector<TheoremId>& all_theorem_ids() {
  static const std::vector<TheoremId> ids = {
      TheoremId::A,    TheoremId::B,   TheoremId::CForward, TheoremId::CConverse,
      TheoremId::L21i, TheoremId::L21ii, TheoremId::C25,    TheoremId::L34,
      TheoremId::P44,  TheoremId::P45, TheoremId::P51,      TheoremId::L52,
      TheoremId::Gustafson, TheoremId::OpenQ};
  return ids;
}

inline std::string to_string(TheoremId id) {
  switch (id) {
    case TheoremId::A: return "A";
    case TheoremId::B: return "B";
    case TheoremId::CForward: return "C-forward";
    case TheoremId::CConverse: return "C-converse";
    case TheoremId::L21i: return "L2.1i";
    case TheoremId::L21ii: return "L2.1ii";
    case TheoremId::C25: return "C2.5";
    case TheoremId::L34: return "L3.4";
    case TheoremId::P44: return "P4.4";
    case TheoremId::P45: return "P4.5";
    case TheoremId::P51: return "P5.1";
    case TheoremId::L52: return "L5.2";
    case TheoremId::Gustafson: return "GUSTAFSON";
    case TheoremId::OpenQ: return "OPEN-Q";
  }
  return "?";
}

inline TheoremId theorem_id_from_string(const std::string& s) {
  for (TheoremId id : all_theorem_ids())
    if (to_string(id) == s) return id;
  // Convenience aliases accepted on the command line.
  if (s == "C") return TheoremId::CForward;
  if (s == "L2.1") return TheoremId::L21i;
  throw std::invalid_argument("unknown theorem id: '" + s + "'");
}

enum class Verdict { Pass, Fail, Skipped, NoCounterexample, CounterexampleCandidate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
    case Verdict::NoCounterexample: return "no-counterexample";
    case Verdict::CounterexampleCandidate: return "counterexample-candidate";
  }
  return "?";
}

/// Required relation between a witness ratio and its bound. Info witnesses
/// document values without asserting a relation (vacuous cases).
enum class Relation { LessEq, Less, GreaterEq, Greater, Equal, Info };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::LessEq: return "<=";
    case Relation::Less: return "<";
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
    case Relation::Equal: return "=";
    case Relation::Info: return "info";
  }
  return "?";
}

struct Witness {
  std::string descriptor;
  Rational ratio;
  Rational bound;
  Relation relation = Relation::Info;

  bool holds() const {
    switch (relation) {
      case Relation::LessEq: return ratio <= bound;
      case Relation::Less: return ratio < bound;
      case Relation::GreaterEq: return ratio >= bound;
      case Relation::Greater: return ratio > bound;
      case Relation::Equal: return ratio == bound;
      case Relation::Info: return true;
    }
    return true;
  }
};

struct TheoremReport {
  TheoremId theorem = TheoremId::A;
  std::string group_id;
  PrimeSet pi;
  Verdict verdict = Verdict::Pass;
  std::string reason;  // skip reason or a short pass-time note
  std::vector<std::string> flags;
  std::vector<Witness> witnesses;
  std::int64_t time_ms = 0;
};

namespace detail {

inline TheoremReport new_report(TheoremId id, std::string group_id, PrimeSet pi) {
  TheoremReport r;
  r.theorem = id;
  r.group_id = std::move(group_id);
  r.pi = std::move(pi);
  return r;
}

class ReportTimer {
 public:
  explicit ReportTimer(TheoremReport& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
  }

 private:
  TheoremReport& report_;
  std::chrono::steady_clock::time_point start_;
};

inline void require_nonempty_pi(const PrimeSet& pi) {
  if (pi.empty()) throw std::invalid_argument("the prime set pi must be nonempty");
}

inline void flag_p_outside_order(TheoremReport& r, const PermGroup& G, std::uint64_t p) {
  if (G.order() % p != 0) r.flags.push_back("smallest-prime-of-pi-does-not-divide-group-order");
}

inline bool handle_limit(TheoremReport& r, const std::exception& e) {
  r.verdict = Verdict::Skipped;
  r.reason = std::string("size-limit: ") + e.what();
  r.witnesses.clear();
  return true;
}

// Fail verdicts must reproduce under the brute-force double loop before they
// are emitted; a disagreement is an internal fault, not a finding.
inline void confirm_fraction_naive(const PermGroup& G, const Permutation& x, const PrimeSet& pi,
                                   const Rational& claimed) {
  const Rational recheck = naive::centralizer_pi_fraction(G, x, pi);
  if (recheck != claimed)
    throw std::logic_error("centralizer fraction " + claimed.str() +
                           " failed the naive recheck (" + recheck.str() + ")");
}

inline void confirm_pr_pi_naive(const PermGroup& G, const PrimeSet& pi, const Rational& claimed) {
  const Rational recheck = naive::pr_pi(G, pi);
  if (recheck != claimed)
    throw std::logic_error("Pr_pi " + claimed.str() + " failed the naive recheck (" +
                           recheck.str() + ")");
}

inline std::string describe(const Permutation& x) { return format_cycles(x); }

}  // namespace detail

/// |C_G(x)_pi| / |G_pi| <= 1/p for every pi-element x outside O_pi(G),
/// p the smallest prime in pi. Quantified over class representatives; the
/// fraction is a class function.
inline TheoremReport verify_theorem_A(const PermGroup& G, const PrimeSet& pi,
                                      std::string group_id = "") {
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::A, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    const std::uint64_t p = pi.smallest();
    detail::flag_p_outside_order(r, G, p);
    const Rational bound(1, static_cast<Int128>(p));
    const PermGroup core = o_pi_core(G, pi).group;
    const auto& dec = conjugacy_classes(G);
    std::optional<Witness> best;
    for (const auto& cls : dec.classes) {
      if (cls.rep.is_identity() || !pi.is_pi_number(cls.element_order)) continue;
      if (core.contains(cls.rep)) continue;
      const Rational frac = centralizer_pi_fraction(G, cls.rep, pi);
      Witness w{detail::describe(cls.rep), frac, bound, Relation::LessEq};
      if (!w.holds()) {
        detail::confirm_fraction_naive(G, cls.rep, pi, frac);
        r.verdict = Verdict::Fail;
        r.witnesses = {std::move(w)};
        return r;
      }
      if (!best || frac > best->ratio) best = std::move(w);
    }
    r.verdict = Verdict::Pass;
    if (best)
      r.witnesses = {*best};
    else
      r.reason = "vacuous: every pi-element lies in the pi-core";
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// When F*(G) is a pi'-group: |C_G(x)_pi| / |G_pi| <= 1/q for every
/// nontrivial pi-element x, q the largest prime dividing o(x).
inline TheoremReport verify_theorem_B(const PermGroup& G, const PrimeSet& pi,
                                      std::string group_id = "") {
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::B, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    const Subgroup fstar = generalized_fitting(G);
    if (pi_part(fstar.order(), pi) != 1) {
      r.verdict = Verdict::Skipped;
      r.reason = "hypothesis-unmet: F*(G) of order " + std::to_string(fstar.order()) +
                 " is not a pi'-group";
      return r;
    }
    const auto& dec = conjugacy_classes(G);
    std::optional<Witness> best;
    for (const auto& cls : dec.classes) {
      if (cls.rep.is_identity() || !pi.is_pi_number(cls.element_order)) continue;
      const std::uint64_t q = prime_factors(cls.element_order).back();
      const Rational bound(1, static_cast<Int128>(q));
      const Rational frac = centralizer_pi_fraction(G, cls.rep, pi);
      Witness w{detail::describe(cls.rep) + " q=" + std::to_string(q), frac, bound,
                Relation::LessEq};
      if (!w.holds()) {
        detail::confirm_fraction_naive(G, cls.rep, pi, frac);
        r.verdict = Verdict::Fail;
        r.witnesses = {std::move(w)};
        return r;
      }
      if (!best || frac > best->ratio) best = std::move(w);
    }
    r.verdict = Verdict::Pass;
    if (best)
      r.witnesses = {*best};
    else
      r.reason = "vacuous: no nontrivial pi-element";
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// Theorem C, one direction at a time. Forward: a normal abelian Hall
/// pi-subgroup forces Pr_pi(G) > (p^2+p-1)/p^3. Converse, in contrapositive
/// form: without such a subgroup, Pr_pi(G) <= (p^2+p-1)/p^3.
inline TheoremReport verify_theorem_C_direction(const PermGroup& G, const PrimeSet& pi,
                                                bool forward, std::string group_id = "") {
  detail::require_nonempty_pi(pi);
  TheoremReport r =
      detail::new_report(forward ? TheoremId::CForward : TheoremId::CConverse,
                         std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    const std::uint64_t p = pi.smallest();
    detail::flag_p_outside_order(r, G, p);
    const Rational t = threshold(p);
    const Subgroup core = o_pi_core(G, pi);
    const bool hall_abelian = core.order() == pi_part(G.order(), pi) && core.abelian;
    const Rational pr = pr_pi(G, pi);
    const std::string desc =
        std::string("normal-abelian-hall=") + (hall_abelian ? "yes" : "no");

    if (forward) {
      if (!hall_abelian) {
        r.verdict = Verdict::Pass;
        r.reason = "vacuous: no normal abelian Hall pi-subgroup";
        r.witnesses = {{desc, pr, t, Relation::Info}};
        return r;
      }
      Witness w{desc, pr, t, Relation::Greater};
      if (!w.holds()) {
        detail::confirm_pr_pi_naive(G, pi, pr);
        r.verdict = Verdict::Fail;
      }
      r.witnesses = {std::move(w)};
      return r;
    }

    if (hall_abelian) {
      r.verdict = Verdict::Pass;
      r.reason = "vacuous: normal abelian Hall pi-subgroup exists";
      r.witnesses = {{desc, pr, t, Relation::Info}};
      return r;
    }
    Witness w{desc, pr, t, Relation::LessEq};
    if (!w.holds()) {
      detail::confirm_pr_pi_naive(G, pi, pr);
      r.verdict = Verdict::Fail;
    }
    r.witnesses = {std::move(w)};
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// Both directions; the returned reports carry the per-direction ids.
inline std::vector<TheoremReport> verify_theorem_C(const PermGroup& G, const PrimeSet& pi,
                                                   const std::string& group_id = "") {
  return {verify_theorem_C_direction(G, pi, true, group_id),
          verify_theorem_C_direction(G, pi, false, group_id)};
}

/// Quotient inequalities for every normal pi-subgroup N. Part (i), per
/// pi-element: |C_G(x)_pi|/|G_pi| <= |C_{G/N}(xN)_pi|/|(G/N)_pi|.
/// Part (ii): Pr_pi(G) <= Pr_pi(G/N).
inline TheoremReport verify_quotient_lemma_part(const PermGroup& G, const PrimeSet& pi,
                                                bool pointwise, std::string group_id = "",
                                                std::size_t lattice_cap = 10'000) {
  detail::require_nonempty_pi(pi);
  TheoremReport r =
      detail::new_report(pointwise ? TheoremId::L21i : TheoremId::L21ii, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    std::optional<Witness> tightest;
    std::size_t checked = 0;
    for (const Subgroup& N : normal_subgroups(G, lattice_cap)) {
      if (!pi.is_pi_number(N.order())) continue;
      const QuotientMap qm = quotient_map(G, N.group);
      if (pointwise) {
        const auto& dec = conjugacy_classes(G);
        for (const auto& cls : dec.classes) {
          if (!pi.is_pi_number(cls.element_order)) continue;
          const Rational lhs = centralizer_pi_fraction(G, cls.rep, pi);
          const Permutation image = qm.image(cls.rep);
          const Rational rhs = centralizer_pi_fraction(qm.group, image, pi);
          Witness w{"N order=" + std::to_string(N.order()) + " x=" + detail::describe(cls.rep),
                    lhs, rhs, Relation::LessEq};
          ++checked;
          if (!w.holds()) {
            detail::confirm_fraction_naive(G, cls.rep, pi, lhs);
            detail::confirm_fraction_naive(qm.group, image, pi, rhs);
            r.verdict = Verdict::Fail;
            r.witnesses = {std::move(w)};
            return r;
          }
          if (!tightest || (w.bound - w.ratio) < (tightest->bound - tightest->ratio))
            tightest = std::move(w);
        }
      } else {
        const Rational lhs = pr_pi(G, pi);
        const Rational rhs = pr_pi(qm.group, pi);
        Witness w{"N order=" + std::to_string(N.order()), lhs, rhs, Relation::LessEq};
        ++checked;
        if (!w.holds()) {
          detail::confirm_pr_pi_naive(G, pi, lhs);
          detail::confirm_pr_pi_naive(qm.group, pi, rhs);
          r.verdict = Verdict::Fail;
          r.witnesses = {std::move(w)};
          return r;
        }
        if (!tightest || (w.bound - w.ratio) < (tightest->bound - tightest->ratio))
          tightest = std::move(w);
      }
    }
    r.verdict = Verdict::Pass;
    r.reason = "checked " + std::to_string(checked) + " instances";
    if (tightest) r.witnesses = {*tightest};
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

inline std::vector<TheoremReport> verify_quotient_lemma(const PermGroup& G, const PrimeSet& pi,
                                                        const std::string& group_id = "") {
  return {verify_quotient_lemma_part(G, pi, true, group_id),
          verify_quotient_lemma_part(G, pi, false, group_id)};
}

/// y^K = (Ky)_pi for every pi'-subgroup K in the fixture list (cyclic
/// pi'-subgroups from class representatives, plus the pi'-core) and every
/// pi-element y normalizing K.
inline TheoremReport verify_coset_corollary(const PermGroup& G, const PrimeSet& pi,
                                            std::string group_id = "") {
  TheoremReport r = detail::new_report(TheoremId::C25, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    std::vector<PermGroup> fixtures;
    const auto& dec = conjugacy_classes(G);
    for (const auto& cls : dec.classes)
      if (pi.is_pi_prime_number(cls.element_order))
        fixtures.push_back(PermGroup::from_generators({cls.rep}, G.options()));
    const PrimeSet pi_complement = PrimeSet::primes_of(G.order()).minus(pi);
    fixtures.push_back(o_pi_core(G, pi_complement).group);

    const PiElementSet members = pi_elements(G, pi);
    std::size_t checked = 0;
    for (const PermGroup& K : fixtures) {
      for (const Permutation& y : members.members) {
        bool normalizes = true;
        for (const Permutation& k : K.generators())
          if (!K.contains(k.conjugated_by(y))) {
            normalizes = false;
            break;
          }
        if (!normalizes) continue;
        std::set<Permutation> conjugates;
        for (const Permutation& k : K.elements()) conjugates.insert(y.conjugated_by(k));
        const PiElementSet coset = coset_pi_elements(G, K, y, pi);
        std::set<Permutation> coset_set(coset.members.begin(), coset.members.end());
        ++checked;
        if (conjugates != coset_set) {
          r.verdict = Verdict::Fail;
          r.witnesses = {{"K order=" + std::to_string(K.order()) + " y=" + detail::describe(y),
                          Rational::integer(static_cast<std::int64_t>(conjugates.size())),
                          Rational::integer(static_cast<std::int64_t>(coset_set.size())),
                          Relation::Equal}};
          return r;
        }
      }
    }
    r.verdict = Verdict::Pass;
    r.reason = "checked " + std::to_string(checked) + " (K, y) pairs";
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// |D| >= p^2 - 1 for every pi-element x outside O_pi(G), where D collects
/// the elements generating a conjugate of <x> and p is the smallest prime
/// dividing o(x).
inline TheoremReport verify_d_lemma(const PermGroup& G, const PrimeSet& pi,
                                    std::string group_id = "") {
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::L34, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    const PermGroup core = o_pi_core(G, pi).group;
    const auto& dec = conjugacy_classes(G);
    std::optional<Witness> tightest;
    for (const auto& cls : dec.classes) {
      if (cls.rep.is_identity() || !pi.is_pi_number(cls.element_order)) continue;
      if (core.contains(cls.rep)) continue;
      const std::uint64_t p = prime_factors(cls.element_order).front();
      const std::uint64_t count = d_set(G, cls.rep).size();
      Witness w{detail::describe(cls.rep) + " p=" + std::to_string(p),
                Rational::integer(static_cast<std::int64_t>(count)),
                Rational(static_cast<Int128>(p) * static_cast<Int128>(p) - 1, 1),
                Relation::GreaterEq};
      if (!w.holds()) {
        r.verdict = Verdict::Fail;
        r.witnesses = {std::move(w)};
        return r;
      }
      if (!tightest || (w.ratio - w.bound) < (tightest->ratio - tightest->bound))
        tightest = std::move(w);
    }
    r.verdict = Verdict::Pass;
    if (tightest)
      r.witnesses = {*tightest};
    else
      r.reason = "vacuous: every pi-element lies in the pi-core";
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

namespace detail {

struct SymmetricCounts {
  std::uint64_t even_pi = 0;  // |(A_n)_pi|
  std::uint64_t odd_pi = 0;   // |(S_n \ A_n)_pi|
};

inline SymmetricCounts symmetric_pi_counts(const PermGroup& Sn, const PrimeSet& pi) {
  SymmetricCounts c;
  const auto& elems = Sn.elements();
  const auto& masks = Sn.element_prime_masks();
  const std::uint32_t pimask = Sn.pi_mask(pi);
  for (std::uint32_t i = 0; i < elems.size(); ++i) {
    if ((masks[i] & ~pimask) != 0) continue;
    if (elems[i].is_even())
      ++c.even_pi;
    else
      ++c.odd_pi;
  }
  return c;
}

}  // namespace detail

/// Prime-order elements of S_n that are not transpositions: the proportion
/// of pi-elements of A_n commuting with x is at most 1/p, and likewise on
/// the odd coset when 2 lies in pi.
inline TheoremReport verify_symmetric_nontransposition(const PermGroup& Sn, std::uint32_t n,
                                                       const PrimeSet& pi,
                                                       std::string group_id = "") {
  if (n < 5) throw std::invalid_argument("symmetric propositions require n >= 5");
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::P44, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    const detail::SymmetricCounts counts = detail::symmetric_pi_counts(Sn, pi);
    const auto& dec = conjugacy_classes(Sn);
    const bool two_in_pi = pi.contains(2);
    std::optional<Witness> best;
    for (std::uint32_t ci = 0; ci < dec.classes.size(); ++ci) {
      const auto& cls = dec.classes[ci];
      if (!is_prime(cls.element_order) || !pi.contains(cls.element_order)) continue;
      if (cls.element_order == 2 && cls.rep.support_size() == 2) continue;  // transposition
      const std::uint64_t p = cls.element_order;
      const Rational bound(1, static_cast<Int128>(p));
      std::uint64_t cent_even_pi = 0, cent_odd_pi = 0;
      for (const Permutation& g : class_centralizers(Sn)[ci].elements()) {
        if (!pi.is_pi_number(g.order())) continue;
        if (g.is_even())
          ++cent_even_pi;
        else
          ++cent_odd_pi;
      }
      std::vector<Witness> checks;
      checks.push_back({detail::describe(cls.rep) + " within A_n",
                        Rational(static_cast<Int128>(cent_even_pi),
                                 static_cast<Int128>(counts.even_pi)),
                        bound, Relation::LessEq});
      if (two_in_pi)
        checks.push_back({detail::describe(cls.rep) + " within S_n minus A_n",
                          Rational(static_cast<Int128>(cent_odd_pi),
                                   static_cast<Int128>(counts.odd_pi)),
                          bound, Relation::LessEq});
      for (Witness& w : checks) {
        if (!w.holds()) {
          r.verdict = Verdict::Fail;
          r.witnesses = {std::move(w)};
          return r;
        }
        if (!best || w.ratio > best->ratio) best = std::move(w);
      }
    }
    r.verdict = Verdict::Pass;
    if (best)
      r.witnesses = {*best};
    else
      r.reason = "vacuous: no prime-order pi-element other than transpositions";
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// Transpositions in S_n, n >= 5, with 2 in pi: strictly less than half of
/// the pi-elements of S_n commute with a transposition.
inline TheoremReport verify_symmetric_transposition(const PermGroup& Sn, std::uint32_t n,
                                                    const PrimeSet& pi,
                                                    std::string group_id = "") {
  if (n < 5) throw std::invalid_argument("symmetric propositions require n >= 5");
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::P45, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    if (!pi.contains(2)) {
      r.verdict = Verdict::Skipped;
      r.reason = "hypothesis-unmet: 2 is not in pi";
      return r;
    }
    const auto& dec = conjugacy_classes(Sn);
    for (std::uint32_t ci = 0; ci < dec.classes.size(); ++ci) {
      const auto& cls = dec.classes[ci];
      if (cls.element_order != 2 || cls.rep.support_size() != 2) continue;
      const Rational frac = centralizer_pi_fraction(Sn, cls.rep, pi);
      Witness w{detail::describe(cls.rep), frac, Rational(1, 2), Relation::Less};
      if (!w.holds()) {
        detail::confirm_fraction_naive(Sn, cls.rep, pi, frac);
        r.verdict = Verdict::Fail;
      }
      r.witnesses = {std::move(w)};
      return r;
    }
    r.verdict = Verdict::Skipped;
    r.reason = "hypothesis-unmet: no transposition class";
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// Both symmetric-group propositions for S_n in its natural action.
inline std::vector<TheoremReport> verify_symmetric_props(std::uint32_t n, const PrimeSet& pi,
                                                         GroupOptions options = {}) {
  if (n < 5) throw std::invalid_argument("symmetric propositions require n >= 5");
  const PermGroup sn = make_symmetric(n).build(options);
  const std::string id = "sym:" + std::to_string(n);
  return {verify_symmetric_nontransposition(sn, n, pi, id),
          verify_symmetric_transposition(sn, n, pi, id)};
}

/// Pr(G) <= (p^2+p-1)/p^3 for non-abelian G, p the smallest prime dividing
/// the order. Pi-independent.
inline TheoremReport verify_pr_bound(const PermGroup& G, std::string group_id = "") {
  TheoremReport r =
      detail::new_report(TheoremId::P51, std::move(group_id), PrimeSet::primes_of(G.order()));
  detail::ReportTimer timer(r);
  try {
    if (G.is_abelian()) {
      r.verdict = Verdict::Skipped;
      r.reason = "hypothesis-unmet: abelian group";
      return r;
    }
    const std::uint64_t p = G.order_primes().front();
    const Rational pr = commuting_probability(G);
    Witness w{"Pr(G), p=" + std::to_string(p), pr, threshold(p), Relation::LessEq};
    if (!w.holds()) {
      const Rational recheck = naive::commuting_probability(G);
      if (recheck != pr)
        throw std::logic_error("Pr(G) " + pr.str() + " failed the naive recheck (" +
                               recheck.str() + ")");
      r.verdict = Verdict::Fail;
    }
    r.witnesses = {std::move(w)};
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// |G_pi| >= p^2 whenever G has no normal Hall pi-subgroup, p the smallest
/// prime in pi.
inline TheoremReport verify_pielem_lemma(const PermGroup& G, const PrimeSet& pi,
                                         std::string group_id = "") {
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::L52, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    if (pi.intersect(PrimeSet::primes_of(G.order())).empty()) {
      r.verdict = Verdict::Skipped;
      r.reason = "hypothesis-unmet: no prime of pi divides the group order";
      return r;
    }
    if (has_normal_hall(G, pi)) {
      r.verdict = Verdict::Skipped;
      r.reason = "hypothesis-unmet: normal Hall pi-subgroup exists";
      return r;
    }
    const std::uint64_t p = pi.smallest();
    detail::flag_p_outside_order(r, G, p);
    const std::uint64_t count = pi_element_count(G, pi);
    Witness w{"|G_pi|", Rational::integer(static_cast<std::int64_t>(count)),
              Rational(static_cast<Int128>(p) * static_cast<Int128>(p), 1), Relation::GreaterEq};
    if (!w.holds()) {
      std::uint64_t recheck = 0;
      for (const Permutation& g : G.elements())
        if (pi.is_pi_number(g.order())) ++recheck;
      if (recheck != count)
        throw std::logic_error("pi-element count failed the naive recheck");
      r.verdict = Verdict::Fail;
    }
    r.witnesses = {std::move(w)};
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// The Gustafson identity, verified extensionally: the literal double-loop
/// pair count over G x G equals k(G)/|G| exactly.
inline TheoremReport verify_gustafson(const PermGroup& G, std::string group_id = "",
                                      std::uint64_t naive_max_order = 2000) {
  TheoremReport r = detail::new_report(TheoremId::Gustafson, std::move(group_id),
                                       PrimeSet::primes_of(G.order()));
  detail::ReportTimer timer(r);
  try {
    if (G.order() > naive_max_order) {
      r.verdict = Verdict::Skipped;
      r.reason = "size-limit: naive pair count capped at order " +
                 std::to_string(naive_max_order);
      return r;
    }
    const Rational by_pairs = naive::commuting_probability(G);
    const Rational by_classes(static_cast<Int128>(class_count(G)),
                              static_cast<Int128>(G.order()));
    Witness w{"pair count vs k(G)/|G|", by_pairs, by_classes, Relation::Equal};
    r.verdict = w.holds() ? Verdict::Pass : Verdict::Fail;
    r.witnesses = {std::move(w)};
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

/// Open question: does the Theorem B bound 1/q, q the largest prime dividing
/// o(x), hold for every pi-element x outside O_pi(G) without the F*
/// hypothesis? Verdicts are informational; a candidate is never a failure.
inline TheoremReport explore_open_question(const PermGroup& G, const PrimeSet& pi,
                                           std::string group_id = "") {
  detail::require_nonempty_pi(pi);
  TheoremReport r = detail::new_report(TheoremId::OpenQ, std::move(group_id), pi);
  detail::ReportTimer timer(r);
  try {
    const PermGroup core = o_pi_core(G, pi).group;
    const auto& dec = conjugacy_classes(G);
    std::vector<Witness> candidates;
    std::optional<Witness> best;
    bool any = false;
    for (const auto& cls : dec.classes) {
      if (cls.rep.is_identity() || !pi.is_pi_number(cls.element_order)) continue;
      if (core.contains(cls.rep)) continue;
      any = true;
      const std::uint64_t q = prime_factors(cls.element_order).back();
      const Rational bound(1, static_cast<Int128>(q));
      const Rational frac = centralizer_pi_fraction(G, cls.rep, pi);
      Witness w{detail::describe(cls.rep) + " q=" + std::to_string(q), frac, bound,
                Relation::LessEq};
      if (!w.holds()) {
        detail::confirm_fraction_naive(G, cls.rep, pi, frac);
        candidates.push_back(std::move(w));
      } else if (!best || frac > best->ratio) {
        best = std::move(w);
      }
    }
    if (!any) {
      r.verdict = Verdict::Skipped;
      r.reason = "vacuous: every pi-element lies in the pi-core";
      return r;
    }
    if (candidates.empty()) {
      r.verdict = Verdict::NoCounterexample;
      if (best) r.witnesses = {*best};
    } else {
      r.verdict = Verdict::CounterexampleCandidate;
      r.witnesses = std::move(candidates);
    }
  } catch (const EnumerationLimitError& e) {
    detail::handle_limit(r, e);
  } catch (const LatticeLimitError& e) {
    detail::handle_limit(r, e);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Catalog sweeps
// ---------------------------------------------------------------------------

struct SweepLimits {
  std::uint64_t max_order = std::numeric_limits<std::uint64_t>::max();
  std::size_t max_pi_primes = 3;
  std::uint64_t enumeration_limit = 1'000'000;
  std::size_t lattice_cap = 10'000;
  std::uint64_t gustafson_naive_max_order = 2000;
};

struct PiPolicy {
  enum class Kind { DivisorSubsets, MaximalOnly, Explicit };
  Kind kind = Kind::DivisorSubsets;
  std::vector<PrimeSet> explicit_sets;

  static PiPolicy divisor_subsets() { return {Kind::DivisorSubsets, {}}; }
  static PiPolicy maximal_only() { return {Kind::MaximalOnly, {}}; }
  static PiPolicy explicit_sets_of(std::vector<PrimeSet> sets) {
    return {Kind::Explicit, std::move(sets)};
  }
};

inline bool theorem_is_pi_independent(TheoremId id) {
  return id == TheoremId::P51 || id == TheoremId::Gustafson;
}

struct SweepSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  std::size_t candidates = 0;
  std::size_t no_counterexamples = 0;

  struct Extremum {
    std::string group_id;
    PrimeSet pi;
    Witness witness;
  };
  // Largest checked ratio per theorem (upper-bound theorems), and smallest
  // checked ratio per theorem (lower-bound theorems): the sharpness record.
  std::map<TheoremId, Extremum> suprema;
  std::map<TheoremId, Extremum> infima;
};

struct SweepResult {
  std::vector<TheoremReport> reports;
  SweepSummary summary;
};

namespace detail {

inline std::optional<std::uint32_t> symmetric_degree_of(const std::string& id) {
  if (id.rfind("sym:", 0) != 0) return std::nullopt;
  try {
    return static_cast<std::uint32_t>(std::stoul(id.substr(4)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

inline TheoremReport run_theorem(TheoremId id, const PermGroup& G, const CatalogEntry& entry,
                                 const PrimeSet& pi, const SweepLimits& limits) {
  switch (id) {
    case TheoremId::A: return verify_theorem_A(G, pi, entry.id);
    case TheoremId::B: return verify_theorem_B(G, pi, entry.id);
    case TheoremId::CForward: return verify_theorem_C_direction(G, pi, true, entry.id);
    case TheoremId::CConverse: return verify_theorem_C_direction(G, pi, false, entry.id);
    case TheoremId::L21i:
      return verify_quotient_lemma_part(G, pi, true, entry.id, limits.lattice_cap);
    case TheoremId::L21ii:
      return verify_quotient_lemma_part(G, pi, false, entry.id, limits.lattice_cap);
    case TheoremId::C25: return verify_coset_corollary(G, pi, entry.id);
    case TheoremId::L34: return verify_d_lemma(G, pi, entry.id);
    case TheoremId::P44:
    case TheoremId::P45: {
      const auto n = symmetric_degree_of(entry.id);
      if (!n || *n < 5) {
        TheoremReport r = new_report(id, entry.id, pi);
        r.verdict = Verdict::Skipped;
        r.reason = "not-applicable: requires S_n, n >= 5, in natural action";
        return r;
      }
      return id == TheoremId::P44 ? verify_symmetric_nontransposition(G, *n, pi, entry.id)
                                  : verify_symmetric_transposition(G, *n, pi, entry.id);
    }
    case TheoremId::P51: return verify_pr_bound(G, entry.id);
    case TheoremId::L52: return verify_pielem_lemma(G, pi, entry.id);
    case TheoremId::Gustafson:
      return verify_gustafson(G, entry.id, limits.gustafson_naive_max_order);
    case TheoremId::OpenQ: return explore_open_question(G, pi, entry.id);
  }
  throw std::logic_error("unhandled theorem id");
}

}  // namespace detail

/// Runs the cartesian product of (group, pi, theorem) within the limits.
/// Tasks are pure and run on a small worker pool; the report order is fixed
/// by the task list and therefore independent of the parallelism degree.
inline SweepResult sweep(const std::vector<CatalogEntry>& catalog, const PiPolicy& policy,
                         std::vector<TheoremId> theorems, const SweepLimits& limits = {},
                         unsigned jobs = 0) {
  if (theorems.empty()) theorems = all_theorem_ids();

  struct Task {
    const CatalogEntry* entry;
    PermGroup group;
    PrimeSet pi;
    TheoremId theorem;
  };

  GroupOptions options{limits.enumeration_limit};
  std::vector<Task> tasks;
  for (const CatalogEntry& entry : catalog) {
    PermGroup group = entry.build(options);
    if (group.order() > limits.max_order) continue;
    std::vector<PrimeSet> pis;
    switch (policy.kind) {
      case PiPolicy::Kind::DivisorSubsets:
        pis = prime_subsets(group.order_primes(), limits.max_pi_primes);
        break;
      case PiPolicy::Kind::MaximalOnly:
        if (!group.order_primes().empty()) pis.emplace_back(group.order_primes());
        break;
      case PiPolicy::Kind::Explicit:
        pis = policy.explicit_sets;
        break;
    }
    for (TheoremId id : theorems) {
      if (theorem_is_pi_independent(id)) {
        tasks.push_back({&entry, group, PrimeSet::primes_of(group.order()), id});
      } else {
        for (const PrimeSet& pi : pis) tasks.push_back({&entry, group, pi, id});
      }
    }
  }

  std::vector<TheoremReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& task = tasks[i];
      try {
        reports[i] = detail::run_theorem(task.theorem, task.group, *task.entry, task.pi, limits);
      } catch (const std::exception& e) {
        reports[i] = detail::new_report(task.theorem, task.entry->id, task.pi);
        reports[i].verdict = Verdict::Skipped;
        reports[i].reason = std::string("error: ") + e.what();
      }
    }
  };
  unsigned n_threads = jobs == 0 ? std::thread::hardware_concurrency() : jobs;
  if (n_threads <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::sort(reports.begin(), reports.end(), [](const TheoremReport& a, const TheoremReport& b) {
    if (a.group_id != b.group_id) return a.group_id < b.group_id;
    if (a.pi != b.pi) return a.pi < b.pi;
    return static_cast<int>(a.theorem) < static_cast<int>(b.theorem);
  });

  SweepResult result;
  result.reports = std::move(reports);
  SweepSummary& s = result.summary;
  for (const TheoremReport& r : result.reports) {
    ++s.total;
    switch (r.verdict) {
      case Verdict::Pass: ++s.passed; break;
      case Verdict::Fail: ++s.failed; break;
      case Verdict::Skipped: ++s.skipped; break;
      case Verdict::NoCounterexample: ++s.no_counterexamples; break;
      case Verdict::CounterexampleCandidate: ++s.candidates; break;
    }
    for (const Witness& w : r.witnesses) {
      if (w.relation == Relation::LessEq || w.relation == Relation::Less ||
          w.relation == Relation::Greater) {
        auto it = s.suprema.find(r.theorem);
        if (it == s.suprema.end() || w.ratio > it->second.witness.ratio)
          s.suprema[r.theorem] = {r.group_id, r.pi, w};
      } else if (w.relation == Relation::GreaterEq) {
        auto it = s.infima.find(r.theorem);
        if (it == s.infima.end() || w.ratio < it->second.witness.ratio)
          s.infima[r.theorem] = {r.group_id, r.pi, w};
      }
    }
  }
  return result;
}

}  // namespace pigroup
