#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pigroup/catalog.hpp"
#include "pigroup/structure.hpp"

using namespace pigroup;

namespace {

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name, const std::string& content) {
    path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
  }
  ~TempFile() { std::error_code ec; std::filesystem::remove(path, ec); }
};

std::vector<std::uint64_t> class_size_multiset(const PermGroup& g) {
  std::vector<std::uint64_t> sizes;
  for (const auto& c : conjugacy_classes(g).classes) sizes.push_back(c.size);
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace

TEST_CASE("constructor orders") {
  CHECK(make_symmetric(5).build().order() == 120);
  CHECK(make_symmetric(1).build().order() == 1);
  CHECK(make_alternating(5).build().order() == 60);
  CHECK(make_alternating(3).build().order() == 3);
  CHECK(make_alternating(2).build().order() == 1);
  CHECK(make_cyclic(6).build().order() == 6);
  CHECK(make_cyclic(1).build().order() == 1);
  CHECK(make_dihedral(4).build().order() == 8);
  CHECK(make_dihedral(2).build().order() == 4);
  CHECK(make_dihedral(1).build().order() == 2);
  CHECK(make_quaternion().build().order() == 8);
}

TEST_CASE("psl2") {
  auto g5 = make_psl2(5).build();
  CHECK(g5.degree() == 6);
  CHECK(g5.order() == 60);
  CHECK(make_psl2(7).build().order() == 168);
  CHECK(make_psl2(11).build().order() == 660);
  CHECK(make_psl2(13).build().order() == 1092);
  CHECK(make_psl2(2).build().order() == 6);
  CHECK(make_psl2(3).build().order() == 12);
  CHECK(is_simple(g5));
  CHECK_FALSE(is_simple(make_psl2(3).build()));
  CHECK_THROWS_AS(make_psl2(6), std::invalid_argument);
}

TEST_CASE("frobenius") {
  CHECK(make_frobenius(7, 3).build().order() == 21);
  CHECK(make_frobenius(5, 2).build().order() == 10);
  CHECK(make_frobenius(7, 1).build().order() == 7);
  CHECK_THROWS_AS(make_frobenius(7, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_frobenius(8, 2), std::invalid_argument);
  // frob:5,2 is the dihedral group of order 10
  CHECK(class_size_multiset(make_frobenius(5, 2).build()) ==
        class_size_multiset(make_dihedral(5).build()));
}

TEST_CASE("direct products") {
  auto prod = direct_product(make_alternating(5), make_alternating(5));
  CHECK(prod.build().order() == 3600);
  CHECK(prod.id == "prod:alt:5*alt:5");
  CHECK(direct_product(make_cyclic(4), make_cyclic(2)).build().order() == 8);
}

TEST_CASE("selector language") {
  CHECK(entry_from_selector("sym:5").build().order() == 120);
  CHECK(entry_from_selector("q8").build().order() == 8);
  CHECK(entry_from_selector("frob:11,5").build().order() == 55);
  CHECK(entry_from_selector("prod:cyc:2*cyc:3").build().order() == 6);
  CHECK(entry_from_selector("prod:prod:cyc:2*cyc:2*cyc:2").build().order() == 8);
  CHECK_THROWS_AS(entry_from_selector("simple:5"), std::invalid_argument);
  CHECK_THROWS_AS(entry_from_selector("sym:x"), std::invalid_argument);

  TempFile file("pigroup_sel_test.jsonl",
                R"json({"id":"s3","degree":3,"gens":["(1,2)","(1,2,3)"],"order":6})json"
                "\n");
  CHECK(entry_from_selector("file:" + file.path.string() + "#s3").build().order() == 6);
  CHECK_THROWS_AS(entry_from_selector("file:" + file.path.string() + "#nope"),
                  std::invalid_argument);
}

TEST_CASE("seed catalog ids are unique and orders validate") {
  auto entries = seed_catalog();
  std::set<std::string> ids;
  for (const auto& e : entries) {
    CHECK(ids.insert(e.id).second);
    REQUIRE(e.expected_order.has_value());
    auto g = e.build();  // order checked inside
    CHECK(g.order() == *e.expected_order);
  }
  CHECK(entries.size() > 100);
}

TEST_CASE("parse_catalog") {
  SUBCASE("valid file") {
    TempFile file("pigroup_cat_ok.jsonl",
                  R"json({"id":"s3","degree":3,"gens":["(1,2)","(1,2,3)"],"order":6})json"
                  "\n\n"
                  R"json({"id":"c4","degree":4,"gens":["(1,2,3,4)"]})json"
                  "\n");
    auto entries = parse_catalog(file.path.string());
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].build().order() == 6);
    CHECK(entries[1].build().order() == 4);
    CHECK(entries[0].provenance.find(":1") != std::string::npos);
  }
  SUBCASE("empty file") {
    TempFile file("pigroup_cat_empty.jsonl", "");
    CHECK(parse_catalog(file.path.string()).empty());
  }
  SUBCASE("order mismatch reports the line") {
    TempFile file("pigroup_cat_bad.jsonl",
                  R"json({"id":"s3","degree":3,"gens":["(1,2)","(1,2,3)"],"order":12})json"
                  "\n");
    CHECK_THROWS_WITH_AS(parse_catalog(file.path.string()),
                         doctest::Contains(":1:"), std::runtime_error);
  }
  SUBCASE("malformed json reports the line") {
    TempFile file("pigroup_cat_json.jsonl", "{nope\n");
    CHECK_THROWS_WITH_AS(parse_catalog(file.path.string()),
                         doctest::Contains(":1:"), std::runtime_error);
  }
  SUBCASE("bad cycle notation") {
    TempFile file("pigroup_cat_cyc.jsonl",
                  R"json({"id":"x","degree":3,"gens":["(1,9)"]})json"
                  "\n");
    CHECK_THROWS_AS(parse_catalog(file.path.string()), std::runtime_error);
  }
  SUBCASE("duplicate ids") {
    TempFile file("pigroup_cat_dup.jsonl",
                  R"json({"id":"a","degree":2,"gens":["(1,2)"]})json"
                  "\n"
                  R"json({"id":"a","degree":2,"gens":["(1,2)"]})json"
                  "\n");
    CHECK_THROWS_WITH_AS(parse_catalog(file.path.string()),
                         doctest::Contains("duplicate"), std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_catalog("/nonexistent/nowhere.jsonl"), std::runtime_error);
  }
}

TEST_CASE("catalog round trip preserves order and class sizes") {
  auto entries = seed_catalog();
  const auto tmp = std::filesystem::temp_directory_path() / "pigroup_roundtrip.jsonl";
  write_catalog(entries, tmp.string());
  auto reparsed = parse_catalog(tmp.string());
  REQUIRE(reparsed.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(reparsed[i].id == entries[i].id);
    auto a = entries[i].build();
    auto b = reparsed[i].build();
    CHECK(a.order() == b.order());
    if (a.order() <= 500) CHECK(class_size_multiset(a) == class_size_multiset(b));
  }
  std::filesystem::remove(tmp);
}

TEST_CASE("canonical cycle strings survive the round trip byte-identically") {
  for (const auto& e : seed_catalog()) {
    for (const std::string& s : e.gens) {
      CHECK(format_cycles(parse_cycles(s, e.degree)) == s);
    }
  }
}
