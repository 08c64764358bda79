#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pigroup/harness.hpp"
#include "pigroup/reports.hpp"

using namespace pigroup;

namespace {

std::vector<CatalogEntry> small_catalog() {
  return {make_symmetric(3), make_symmetric(4),  make_alternating(4), make_alternating(5),
          make_dihedral(4),  make_frobenius(7, 3), make_psl2(5),      make_cyclic(12)};
}

}  // namespace

TEST_CASE("theorem A") {
  auto r = verify_theorem_A(make_symmetric(3).build(), PrimeSet{2}, "sym:3");
  CHECK(r.verdict == Verdict::Pass);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].ratio == Rational(1, 2));  // sharp
  CHECK(r.witnesses[0].bound == Rational(1, 2));

  auto r7 = verify_theorem_A(make_psl2(7).build(), PrimeSet{7}, "psl2:7");
  CHECK(r7.verdict == Verdict::Pass);
  CHECK(r7.witnesses[0].ratio <= Rational(1, 7));

  // G_pi inside the core: vacuous pass
  auto rv = verify_theorem_A(make_symmetric(3).build(), PrimeSet{3}, "sym:3");
  CHECK(rv.verdict == Verdict::Pass);
  CHECK(rv.witnesses.empty());
  CHECK(rv.reason.find("vacuous") != std::string::npos);

  CHECK_THROWS_AS(verify_theorem_A(make_symmetric(3).build(), PrimeSet{}, "sym:3"),
                  std::invalid_argument);
}

TEST_CASE("theorem A flags pi whose smallest prime misses the order") {
  auto r = verify_theorem_A(make_symmetric(3).build(), PrimeSet{5, 7}, "sym:3");
  CHECK(r.verdict == Verdict::Pass);
  REQUIRE_FALSE(r.flags.empty());
  // smallest prime 3 divides |S3|, so no flag even though 5 does not divide
  auto ok = verify_theorem_A(make_symmetric(3).build(), PrimeSet{3, 5}, "sym:3");
  CHECK(ok.flags.empty());
}

TEST_CASE("theorem A skips when enumeration is impossible") {
  auto big = make_symmetric(8).build(GroupOptions{1000});
  auto r = verify_theorem_A(big, PrimeSet{2}, "sym:8");
  CHECK(r.verdict == Verdict::Skipped);
  CHECK(r.reason.find("size-limit") == 0);
}

TEST_CASE("theorem B") {
  auto rb = verify_theorem_B(make_symmetric(4).build(), PrimeSet{3}, "sym:4");
  CHECK(rb.verdict == Verdict::Pass);
  CHECK(rb.witnesses[0].ratio == Rational(1, 3));  // sharp, F*(S4) = V4

  auto rf = verify_theorem_B(make_frobenius(7, 3).build(), PrimeSet{3}, "frob:7,3");
  CHECK(rf.verdict == Verdict::Pass);
  CHECK(rf.witnesses[0].ratio == Rational(1, 5));
  CHECK(rf.witnesses[0].bound == Rational(1, 3));

  auto rs = verify_theorem_B(make_alternating(5).build(), PrimeSet{5}, "alt:5");
  CHECK(rs.verdict == Verdict::Skipped);
  CHECK(rs.reason.find("hypothesis-unmet") == 0);
}

TEST_CASE("theorem C boundary cases") {
  auto s3 = make_symmetric(3).build();
  auto both = verify_theorem_C(s3, PrimeSet{2}, "sym:3");
  for (const auto& r : both) {
    CHECK(r.verdict == Verdict::Pass);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].ratio == Rational(5, 8));  // Pr_2(S3) sits exactly on the bound
    CHECK(r.witnesses[0].bound == Rational(5, 8));
  }

  auto with_hall = verify_theorem_C(s3, PrimeSet{3}, "sym:3");
  CHECK(with_hall[0].verdict == Verdict::Pass);
  CHECK(with_hall[0].witnesses[0].ratio == Rational(1, 1));
  CHECK(with_hall[0].witnesses[0].relation == Relation::Greater);
  CHECK(with_hall[1].verdict == Verdict::Pass);

  auto psl = verify_theorem_C(make_psl2(5).build(), PrimeSet{5}, "psl2:5");
  CHECK(psl[0].verdict == Verdict::Pass);
  CHECK(psl[1].verdict == Verdict::Pass);
  CHECK(psl[1].witnesses[0].ratio == threshold(5));
}

TEST_CASE("quotient lemma") {
  auto s4 = make_symmetric(4).build();
  auto parts = verify_quotient_lemma(s4, PrimeSet{2}, "sym:4");
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].theorem == TheoremId::L21i);
  CHECK(parts[0].verdict == Verdict::Pass);
  CHECK(parts[1].theorem == TheoremId::L21ii);
  CHECK(parts[1].verdict == Verdict::Pass);
  // named fixture: Pr_2(S4) <= Pr_2(S4/V4) = 5/8
  CHECK(pr_pi(s4, PrimeSet{2}) <= Rational(5, 8));

  auto abelian = verify_quotient_lemma(make_cyclic(6).build(), PrimeSet{2, 3}, "cyc:6");
  for (const auto& r : abelian) CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("coset corollary") {
  auto r = verify_coset_corollary(make_symmetric(4).build(), PrimeSet{2}, "sym:4");
  CHECK(r.verdict == Verdict::Pass);
  auto rf = verify_coset_corollary(make_frobenius(7, 3).build(), PrimeSet{3}, "frob:7,3");
  CHECK(rf.verdict == Verdict::Pass);
}

TEST_CASE("d-set lemma sharp cases") {
  auto r = verify_d_lemma(make_symmetric(3).build(), PrimeSet{2}, "sym:3");
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.witnesses[0].ratio == Rational(3, 1));
  CHECK(r.witnesses[0].bound == Rational(3, 1));

  auto ra = verify_d_lemma(make_alternating(5).build(), PrimeSet{5}, "alt:5");
  CHECK(ra.verdict == Verdict::Pass);
  CHECK(ra.witnesses[0].ratio == Rational(24, 1));
  CHECK(ra.witnesses[0].bound == Rational(24, 1));

  auto rv = verify_d_lemma(make_symmetric(3).build(), PrimeSet{3}, "sym:3");
  CHECK(rv.verdict == Verdict::Pass);
  CHECK(rv.reason.find("vacuous") != std::string::npos);
}

TEST_CASE("symmetric group propositions") {
  auto trans = verify_symmetric_props(5, PrimeSet{2});
  CHECK(trans[0].verdict == Verdict::Pass);
  CHECK(trans[1].verdict == Verdict::Pass);
  CHECK(trans[1].witnesses[0].ratio == Rational(8, 56));  // transposition in S5

  auto three = verify_symmetric_props(5, PrimeSet{3});
  CHECK(three[0].verdict == Verdict::Pass);
  CHECK(three[0].witnesses[0].ratio == Rational(3, 21));  // 3-cycle within A5
  CHECK(three[1].verdict == Verdict::Skipped);

  auto six = verify_symmetric_props(6, PrimeSet{2, 3});
  CHECK(six[0].verdict == Verdict::Pass);
  CHECK(six[1].verdict == Verdict::Pass);

  CHECK_THROWS_AS(verify_symmetric_props(4, PrimeSet{2}), std::invalid_argument);
}

TEST_CASE("symmetric proposition ratios match naive recounts") {
  const std::uint32_t n = 6;
  const PermGroup sn = make_symmetric(n).build();
  const PrimeSet pi{2, 3};
  const auto r44 = verify_symmetric_nontransposition(sn, n, pi, "sym:6");
  REQUIRE(r44.verdict == Verdict::Pass);

  // recount the reported extremal ratio with plain double loops
  for (const auto& cls : conjugacy_classes(sn).classes) {
    if (!is_prime(cls.element_order) || !pi.contains(cls.element_order)) continue;
    if (cls.element_order == 2 && cls.rep.support_size() == 2) continue;
    std::uint64_t even_pi = 0, odd_pi = 0, cent_even = 0, cent_odd = 0;
    for (const Permutation& g : sn.elements()) {
      if (!pi.is_pi_number(g.order())) continue;
      const bool even = g.is_even();
      (even ? even_pi : odd_pi) += 1;
      if (g.commutes_with(cls.rep)) (even ? cent_even : cent_odd) += 1;
    }
    const Rational in_an(static_cast<Int128>(cent_even), static_cast<Int128>(even_pi));
    const Rational off_an(static_cast<Int128>(cent_odd), static_cast<Int128>(odd_pi));
    CHECK(in_an <= Rational(1, static_cast<Int128>(cls.element_order)));
    CHECK(off_an <= Rational(1, static_cast<Int128>(cls.element_order)));
    if (r44.witnesses[0].descriptor.rfind(format_cycles(cls.rep) + " within A_n", 0) == 0)
      CHECK(r44.witnesses[0].ratio == in_an);
  }
}

TEST_CASE("commuting probability bound") {
  auto rd = verify_pr_bound(make_dihedral(4).build(), "dih:4");
  CHECK(rd.verdict == Verdict::Pass);
  CHECK(rd.witnesses[0].ratio == Rational(5, 8));  // sharp at D4
  CHECK(rd.witnesses[0].bound == Rational(5, 8));

  auto rs = verify_pr_bound(make_symmetric(3).build(), "sym:3");
  CHECK(rs.verdict == Verdict::Pass);
  CHECK(rs.witnesses[0].ratio == Rational(1, 2));

  auto ra = verify_pr_bound(make_cyclic(10).build(), "cyc:10");
  CHECK(ra.verdict == Verdict::Skipped);
}

TEST_CASE("pi-element count lemma") {
  auto r = verify_pielem_lemma(make_symmetric(3).build(), PrimeSet{2}, "sym:3");
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.witnesses[0].ratio == Rational(4, 1));  // sharp: p^2 = 4
  auto ra = verify_pielem_lemma(make_alternating(5).build(), PrimeSet{5}, "alt:5");
  CHECK(ra.witnesses[0].ratio == Rational(25, 1));  // sharp: p^2 = 25
  auto rh = verify_pielem_lemma(make_symmetric(3).build(), PrimeSet{3}, "sym:3");
  CHECK(rh.verdict == Verdict::Skipped);
  auto rn = verify_pielem_lemma(make_symmetric(3).build(), PrimeSet{7}, "sym:3");
  CHECK(rn.verdict == Verdict::Skipped);
}

TEST_CASE("gustafson identity report") {
  auto r = verify_gustafson(make_symmetric(4).build(), "sym:4");
  CHECK(r.verdict == Verdict::Pass);
  auto big = verify_gustafson(make_symmetric(7).build(), "sym:7");
  CHECK(big.verdict == Verdict::Skipped);  // naive pair count capped
}

TEST_CASE("open question explorer") {
  auto r = explore_open_question(make_symmetric(3).build(), PrimeSet{2}, "sym:3");
  CHECK(r.verdict == Verdict::NoCounterexample);

  // composite-order elements whose large-prime part lies in the core beat
  // the 1/q bound; such candidates are informational, never failures
  auto prod = direct_product(make_psl2(5), make_cyclic(7)).build();
  auto rc = explore_open_question(prod, PrimeSet{2, 7}, "prod:psl2:5*cyc:7");
  CHECK(rc.verdict == Verdict::CounterexampleCandidate);
  REQUIRE_FALSE(rc.witnesses.empty());
  CHECK(rc.witnesses[0].ratio == Rational(1, 4));
  CHECK(rc.witnesses[0].bound == Rational(1, 7));
  // and the same group still satisfies Theorem A
  auto ta = verify_theorem_A(prod, PrimeSet{2, 7}, "prod:psl2:5*cyc:7");
  CHECK(ta.verdict == Verdict::Pass);

  auto rv = explore_open_question(make_cyclic(8).build(), PrimeSet{2}, "cyc:8");
  CHECK(rv.verdict == Verdict::Skipped);  // everything lies in the core
}

TEST_CASE("sweep determinism and parallel independence") {
  auto catalog = small_catalog();
  auto serial = sweep(catalog, PiPolicy::divisor_subsets(), {TheoremId::A, TheoremId::CForward},
                      {}, 1);
  auto parallel = sweep(catalog, PiPolicy::divisor_subsets(), {TheoremId::A, TheoremId::CForward},
                        {}, 4);
  CHECK(reports_to_string(serial.reports, ReportFormat::Jsonl) ==
        reports_to_string(parallel.reports, ReportFormat::Jsonl));
  CHECK(serial.summary.failed == 0);
}

TEST_CASE("sweep respects limits and stays monotone") {
  auto catalog = small_catalog();
  SweepLimits small;
  small.max_order = 30;
  auto restricted = sweep(catalog, PiPolicy::divisor_subsets(), {TheoremId::A}, small, 2);
  auto full = sweep(catalog, PiPolicy::divisor_subsets(), {TheoremId::A}, {}, 2);
  // instances checked under the smaller limit keep their verdicts under the larger one
  for (const TheoremReport& r : restricted.reports) {
    bool found = false;
    for (const TheoremReport& f : full.reports) {
      if (f.group_id == r.group_id && f.pi == r.pi && f.theorem == r.theorem) {
        found = true;
        CHECK(f.verdict == r.verdict);
      }
    }
    CHECK(found);
  }
  CHECK(restricted.reports.size() < full.reports.size());
}

TEST_CASE("sweep on an empty catalog") {
  auto result = sweep({}, PiPolicy::divisor_subsets(), {}, {}, 2);
  CHECK(result.reports.empty());
  CHECK(result.summary.total == 0);
}

TEST_CASE("maximal-only policy gives one pi per group") {
  auto result = sweep({make_symmetric(4)}, PiPolicy::maximal_only(), {TheoremId::A}, {}, 1);
  REQUIRE(result.reports.size() == 1);
  CHECK(result.reports[0].pi == PrimeSet{2, 3});
}

TEST_CASE("sweep isolates per-task errors") {
  // An explicit pi whose primes miss the group entirely is fine; a broken
  // entry would be isolated as a skipped report rather than killing the run.
  auto result = sweep({make_symmetric(3)}, PiPolicy::explicit_sets_of({PrimeSet{5}}),
                      {TheoremId::A, TheoremId::L52}, {}, 1);
  REQUIRE(result.reports.size() == 2);
  CHECK(result.reports[0].verdict == Verdict::Pass);     // A vacuous
  CHECK(result.reports[1].verdict == Verdict::Skipped);  // L5.2 hypothesis unmet
}

TEST_CASE("theorem id round trip") {
  for (TheoremId id : all_theorem_ids()) CHECK(theorem_id_from_string(to_string(id)) == id);
  CHECK_THROWS_AS(theorem_id_from_string("Z9"), std::invalid_argument);
}

TEST_CASE("report serialization") {
  auto r = verify_theorem_A(make_symmetric(3).build(), PrimeSet{2}, "sym:3");
  const std::string jsonl = reports_to_string({r}, ReportFormat::Jsonl);
  CHECK(jsonl.find("\"verdict\":\"pass\"") != std::string::npos);
  CHECK(jsonl.find("\"ratio\":\"1/2\"") != std::string::npos);

  auto psl = verify_theorem_C_direction(make_psl2(5).build(), PrimeSet{5}, false, "psl2:5");
  const std::string line = reports_to_string({psl}, ReportFormat::Jsonl);
  CHECK(line.find("\"29/125\"") != std::string::npos);
  CHECK(line.find("\"0.232000\"") != std::string::npos);

  const std::string csv = reports_to_string({}, ReportFormat::Csv);
  CHECK(csv ==
        "theorem,group,pi,verdict,reason,flags,witness,relation,ratio,ratio_approx,bound,"
        "bound_approx\n");
  CHECK(reports_to_string({}, ReportFormat::Jsonl).empty());
}
