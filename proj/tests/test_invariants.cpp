#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pigroup/catalog.hpp"
#include "pigroup/invariants.hpp"

using namespace pigroup;

TEST_CASE("pi_part") {
  CHECK(pi_part(360, PrimeSet{2, 3}) == 72);
  CHECK(pi_part(17, PrimeSet{}) == 1);
  CHECK(pi_part(168, PrimeSet{2, 7}) == 56);
  CHECK_THROWS_AS(pi_part(0, PrimeSet{2}), std::invalid_argument);
}

TEST_CASE("euler_phi") {
  CHECK(euler_phi(6) == 2);
  CHECK(euler_phi(1) == 1);
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) CHECK(euler_phi(p) == p - 1);
  CHECK(euler_phi(12) == 4);
}

TEST_CASE("prime set validation") {
  CHECK_THROWS_WITH_AS(PrimeSet{4}, "4 is not prime", std::invalid_argument);
  CHECK(PrimeSet{3, 2, 3}.primes() == std::vector<std::uint64_t>{2, 3});
  CHECK(PrimeSet{}.empty());
  CHECK(PrimeSet{5, 3}.smallest() == 3);
}

TEST_CASE("pi_elements") {
  auto s3 = make_symmetric(3).build();
  CHECK(pi_elements(s3, PrimeSet{2}).count() == 4);
  auto a5 = make_alternating(5).build();
  CHECK(pi_elements(a5, PrimeSet{5}).count() == 25);
  CHECK(pi_elements(a5, PrimeSet{}).count() == 1);
  for (const Permutation& m : pi_elements(a5, PrimeSet{2}).members)
    CHECK(PrimeSet{2}.is_pi_number(m.order()));
}

TEST_CASE("coset_pi_elements") {
  auto s4 = make_symmetric(4).build();
  const PrimeSet two{2};
  auto trivial = PermGroup::trivial(4);
  auto y = parse_cycles("(1,2)", 4);
  auto single = coset_pi_elements(s4, trivial, y, two);
  CHECK(single.members == std::vector<Permutation>{y});
  CHECK(coset_pi_elements(s4, trivial, parse_cycles("(1,2,3)", 4), two).count() == 0);

  auto k = PermGroup::from_generators({parse_cycles("(1,2,3)", 4)});
  auto from_k = coset_pi_elements(s4, k, Permutation::identity(4), two);
  CHECK(from_k.count() == 1);  // only the identity in K is a 2-element

  CHECK_THROWS_AS(coset_pi_elements(s4, k, parse_cycles("(1,2)", 3), two),
                  std::invalid_argument);

  // Frobenius fixture: K = C7 normalized by y of order 3; (Ky)_3 = y^K.
  auto frob = make_frobenius(7, 3).build();
  PermGroup c7 = o_pi_core(frob, PrimeSet{7}).group;
  REQUIRE(c7.order() == 7);
  Permutation y3 = Permutation::identity(7);
  for (const Permutation& e : frob.elements())
    if (e.order() == 3) {
      y3 = e;
      break;
    }
  auto coset = coset_pi_elements(frob, c7, y3, PrimeSet{3});
  std::set<Permutation> conjugates;
  for (const Permutation& kk : c7.elements()) conjugates.insert(y3.conjugated_by(kk));
  CHECK(conjugates.size() == 7);
  CHECK(std::set<Permutation>(coset.members.begin(), coset.members.end()) == conjugates);
}

TEST_CASE("commuting probability") {
  CHECK(commuting_probability(make_symmetric(3).build()) == Rational(1, 2));
  CHECK(commuting_probability(make_cyclic(12).build()) == Rational(1, 1));
  CHECK(commuting_probability(make_dihedral(4).build()) == Rational(5, 8));
}

TEST_CASE("Gustafson identity across the catalog") {
  for (const CatalogEntry& entry : seed_catalog()) {
    if (!entry.expected_order || *entry.expected_order > 2000) continue;
    auto g = entry.build();
    CHECK(commuting_probability(g) ==
          Rational(static_cast<Int128>(class_count(g)), static_cast<Int128>(g.order())));
  }
}

TEST_CASE("pr_pi") {
  CHECK(pr_pi(make_psl2(5).build(), PrimeSet{5}) == Rational(29, 125));
  CHECK(pr_pi(make_symmetric(3).build(), PrimeSet{2}) == Rational(5, 8));
  // normal abelian Hall pi-subgroup: every pair of pi-elements commutes
  CHECK(pr_pi(make_symmetric(3).build(), PrimeSet{3}) == Rational(1, 1));
  auto g = make_frobenius(11, 5).build();
  CHECK(pr_pi(g, PrimeSet{11}) == Rational(1, 1));
}

TEST_CASE("pr_pi over all primes equals the commuting probability") {
  for (const CatalogEntry& entry : seed_catalog()) {
    if (!entry.expected_order || *entry.expected_order > 500) continue;
    auto g = entry.build();
    CHECK(pr_pi(g, PrimeSet::primes_of(g.order())) == commuting_probability(g));
  }
}

TEST_CASE("accelerated pr_pi agrees with the naive double loop") {
  for (const CatalogEntry& entry : seed_catalog()) {
    if (!entry.expected_order || *entry.expected_order > 200) continue;
    auto g = entry.build();
    for (const PrimeSet& pi : prime_subsets(g.order_primes(), 2))
      CHECK(pr_pi(g, pi) == naive::pr_pi(g, pi));
  }
}

TEST_CASE("d_pi") {
  CHECK(d_pi(make_symmetric(3).build(), PrimeSet{2}) == Rational(1, 1));
  CHECK(d_pi(make_alternating(5).build(), PrimeSet{5}) == Rational(3, 5));
  CHECK(d_pi(make_cyclic(36).build(), PrimeSet{2, 3}) == Rational(1, 1));
}

TEST_CASE("empty pi conventions") {
  auto s3 = make_symmetric(3).build();
  CHECK(pi_elements(s3, PrimeSet{}).count() == 1);
  CHECK(pr_pi(s3, PrimeSet{}) == Rational(1, 1));
  CHECK(d_pi(s3, PrimeSet{}) == Rational(1, 1));
  // pi disjoint from the order's primes behaves the same way
  CHECK(pr_pi(s3, PrimeSet{7}) == Rational(1, 1));
}

TEST_CASE("centralizer_pi_fraction") {
  auto s3 = make_symmetric(3).build();
  CHECK(centralizer_pi_fraction(s3, parse_cycles("(1,2)", 3), PrimeSet{2}) == Rational(1, 2));
  CHECK(centralizer_pi_fraction(s3, Permutation::identity(3), PrimeSet{2}) == Rational(1, 1));
  auto s4 = make_symmetric(4).build();
  CHECK(centralizer_pi_fraction(s4, parse_cycles("(1,2,3)", 4), PrimeSet{3}) == Rational(1, 3));
  CHECK_THROWS_AS(centralizer_pi_fraction(s4, parse_cycles("(1,2)", 4), PrimeSet{3}),
                  std::invalid_argument);
}

TEST_CASE("fixed point ratios") {
  auto s3 = make_symmetric(3).build();
  auto g2 = pi_elements(s3, PrimeSet{2});
  CHECK(fixed_point_ratio(parse_cycles("(1,2)", 3), g2) == Rational(1, 2));
  CHECK(fixed_point_ratio(Permutation::identity(3), g2) == Rational(1, 1));

  // conjugation on G_pi realizes the centralizer fraction
  for (const char* sel : {"sym:4", "alt:5", "frob:7,3"}) {
    auto g = entry_from_selector(sel).build();
    for (const PrimeSet& pi : prime_subsets(g.order_primes(), 2)) {
      auto dom = pi_elements(g, pi);
      for (const auto& cls : conjugacy_classes(g).classes) {
        if (!pi.is_pi_number(cls.element_order)) continue;
        CHECK(fixed_point_ratio(cls.rep, dom) == centralizer_pi_fraction(g, cls.rep, pi));
      }
    }
  }

  // coset action
  auto s4 = make_symmetric(4).build();
  auto h = PermGroup::from_generators({parse_cycles("(1,2,3)", 4)});
  auto space = make_coset_space(s4, h);
  CHECK(space.size() == 8);
  CHECK(fixed_point_ratio(Permutation::identity(4), space) == Rational(1, 1));
  const Rational f = fixed_point_ratio(parse_cycles("(1,2,3)", 4), space);
  CHECK(f == Rational(1, 4));  // 3-cycle fixes the 2 cosets of its own subgroup
}

TEST_CASE("threshold") {
  CHECK(threshold(2) == Rational(5, 8));
  CHECK(threshold(3) == Rational(11, 27));
  CHECK(threshold(5) == Rational(29, 125));
  CHECK(threshold(7) == Rational(55, 343));
  CHECK(threshold(11) == Rational(131, 1331));
  CHECK_THROWS_AS(threshold(6), std::invalid_argument);
}

TEST_CASE("d_set") {
  auto s3 = make_symmetric(3).build();
  CHECK(d_set(s3, parse_cycles("(1,2)", 3)).size() == 3);
  auto c6 = make_cyclic(6).build();
  Permutation gen = parse_cycles("(1,2,3,4,5,6)", 6);
  CHECK(d_set(c6, gen).size() == 2);  // phi(6) generators of the one cyclic subgroup
  auto a5 = make_alternating(5).build();
  CHECK(d_set(a5, parse_cycles("(1,2,3,4,5)", 5)).size() == 24);
  CHECK_THROWS_AS(d_set(s3, Permutation::identity(3)), std::invalid_argument);
}

TEST_CASE("quotient monotonicity of pr_pi") {
  for (const char* sel : {"sym:4", "dih:6", "prod:cyc:2*alt:4", "frob:7,3"}) {
    auto g = entry_from_selector(sel).build();
    for (const PrimeSet& pi : prime_subsets(g.order_primes(), 2)) {
      for (const Subgroup& n : normal_subgroups(g)) {
        if (!pi.is_pi_number(n.order())) continue;
        auto qm = quotient_map(g, n.group);
        CHECK(pr_pi(g, pi) <= pr_pi(qm.group, pi));
        for (const auto& cls : conjugacy_classes(g).classes) {
          if (!pi.is_pi_number(cls.element_order)) continue;
          CHECK(centralizer_pi_fraction(g, cls.rep, pi) <=
                centralizer_pi_fraction(qm.group, qm.image(cls.rep), pi));
        }
      }
    }
  }
}

TEST_CASE("pi element counts obey the Hall lower bound") {
  for (const CatalogEntry& entry : seed_catalog()) {
    if (!entry.expected_order || *entry.expected_order > 500) continue;
    auto g = entry.build();
    for (const PrimeSet& pi : prime_subsets(g.order_primes(), 2)) {
      if (has_normal_hall(g, pi)) continue;
      const std::uint64_t p = pi.smallest();
      CHECK(pi_element_count(g, pi) >= p * p);
    }
  }
}

TEST_CASE("d_set counts obey the square lower bound") {
  for (const char* sel : {"sym:3", "sym:4", "alt:5", "psl2:5", "frob:7,3"}) {
    auto g = entry_from_selector(sel).build();
    for (const PrimeSet& pi : prime_subsets(g.order_primes(), 2)) {
      auto core = o_pi_core(g, pi).group;
      for (const auto& cls : conjugacy_classes(g).classes) {
        if (cls.rep.is_identity() || !pi.is_pi_number(cls.element_order)) continue;
        if (core.contains(cls.rep)) continue;
        const std::uint64_t p = prime_factors(cls.element_order).front();
        CHECK(d_set(g, cls.rep).size() >= p * p - 1);
      }
    }
  }
}

TEST_CASE("commuting pairs fit exactly at large sizes") {
  // denominators near the enumeration limit need 128-bit intermediates
  const Rational r(static_cast<Int128>(999'983) * 999'983 - 1,
                   static_cast<Int128>(999'983) * 999'983);
  CHECK(r < Rational(1, 1));
}
