#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pigroup/perm_group.hpp"
#include "pigroup/permutation.hpp"
#include "pigroup/primes.hpp"

namespace pigroup {

/// A catalog row: a group given by 1-based cycle-notation generators, with an
/// optional expected order that is checked whenever the group is built.
struct CatalogEntry {
  std::string id;
  Point degree = 1;
  std::vector<std::string> gens;
  std::string provenance = "constructor";
  std::optional<std::uint64_t> expected_order;

  PermGroup build(GroupOptions options = {}) const {
    std::vector<Permutation> parsed;
    parsed.reserve(gens.size());
    for (const std::string& s : gens) parsed.push_back(parse_cycles(s, degree));
    if (parsed.empty()) parsed.push_back(Permutation::identity(degree));
    PermGroup g = PermGroup::from_generators(std::move(parsed), options);
    if (expected_order && g.order() != *expected_order)
      throw std::runtime_error("catalog entry '" + id + "': generators give order " +
                               std::to_string(g.order()) + ", expected " +
                               std::to_string(*expected_order));
    return g;
  }
};

namespace detail {

inline CatalogEntry entry_from_perms(std::string id, Point degree,
                                     const std::vector<Permutation>& gens,
                                     std::uint64_t expected_order) {
  CatalogEntry e;
  e.id = std::move(id);
  e.degree = degree;
  for (const Permutation& g : gens) e.gens.push_back(format_cycles(g));
  e.expected_order = expected_order;
  return e;
}

inline std::uint64_t factorial(std::uint32_t n) {
  if (n > 20) throw std::overflow_error("factorial exceeds 64-bit range for n > 20");
  std::uint64_t r = 1;
  for (std::uint32_t i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace detail

inline CatalogEntry make_symmetric(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("make_symmetric: n must be >= 1");
  std::vector<Permutation> gens;
  if (n == 1) {
    gens.push_back(Permutation::identity(1));
  } else {
    std::vector<Point> tr(n), cyc(n);
    for (Point i = 0; i < n; ++i) {
      tr[i] = i;
      cyc[i] = (i + 1) % n;
    }
    std::swap(tr[0], tr[1]);
    gens.push_back(Permutation::from_images(tr));
    gens.push_back(Permutation::from_images(cyc));
  }
  return detail::entry_from_perms("sym:" + std::to_string(n), std::max(n, 1u), gens,
                                  detail::factorial(n));
}

inline CatalogEntry make_alternating(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("make_alternating: n must be >= 1");
  std::vector<Permutation> gens;
  if (n <= 2) {
    gens.push_back(Permutation::identity(std::max(n, 1u)));
  } else {
    gens.push_back(parse_cycles("(1,2,3)", n));
    if (n > 3) {
      std::vector<Point> im(n);
      if (n % 2 == 1) {
        for (Point i = 0; i < n; ++i) im[i] = (i + 1) % n;  // full n-cycle, even for odd n
      } else {
        im[0] = 0;
        for (Point i = 1; i < n; ++i) im[i] = i % (n - 1) + 1;  // (2,3,...,n)
      }
      gens.push_back(Permutation::from_images(im));
    }
  }
  const std::uint64_t order = n <= 2 ? 1 : detail::factorial(n) / 2;
  return detail::entry_from_perms("alt:" + std::to_string(n), std::max(n, 1u), gens, order);
}

/// PSL(2,p) acting on the projective line: points 1..p are the field elements
/// 0..p-1 and point p+1 is infinity. Generators are z -> z+1 and z -> -1/z.
inline CatalogEntry make_psl2(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("make_psl2: p must be prime");
  const Point n = static_cast<Point>(p + 1);
  const Point inf = static_cast<Point>(p);
  std::vector<Point> t(n), s(n);
  for (Point i = 0; i < p; ++i) t[i] = static_cast<Point>((i + 1) % p);
  t[inf] = inf;
  auto mod_inverse = [p](std::uint64_t z) {
    std::uint64_t result = 1;
    std::uint64_t base = z % p, exp = p - 2;
    while (exp) {
      if (exp & 1) result = result * base % p;
      base = base * base % p;
      exp >>= 1;
    }
    return result;
  };
  s[0] = inf;
  s[inf] = 0;
  for (std::uint64_t z = 1; z < p; ++z) s[static_cast<Point>(z)] =
      static_cast<Point>((p - mod_inverse(z)) % p);
  const std::uint64_t order = p * (p * p - 1) / (p == 2 ? 1 : 2);
  return detail::entry_from_perms(
      "psl2:" + std::to_string(p), n,
      {Permutation::from_images(t), Permutation::from_images(s)}, order);
}

/// The affine group { x -> ax + b } on GF(q) with a of multiplicative order
/// r. Frobenius for r > 1; r = 1 degenerates to the cyclic group of order q.
inline CatalogEntry make_frobenius(std::uint64_t q, std::uint64_t r) {
  if (!is_prime(q)) throw std::invalid_argument("make_frobenius: q must be prime");
  if (r < 1 || (q - 1) % r != 0)
    throw std::invalid_argument("make_frobenius: r must divide q-1");
  const Point n = static_cast<Point>(q);
  std::vector<Point> t(n);
  for (Point i = 0; i < q; ++i) t[i] = static_cast<Point>((i + 1) % q);
  std::vector<Permutation> gens = {Permutation::from_images(t)};
  if (r > 1) {
    auto mul_order = [q](std::uint64_t a) {
      std::uint64_t v = a % q, k = 1;
      while (v != 1) {
        v = v * a % q;
        ++k;
      }
      return k;
    };
    std::uint64_t g = 2;
    while (mul_order(g) != q - 1) ++g;
    std::uint64_t a = 1;
    for (std::uint64_t e = 0; e < (q - 1) / r; ++e) a = a * g % q;
    std::vector<Point> m(n);
    for (std::uint64_t i = 0; i < q; ++i) m[static_cast<Point>(i)] =
        static_cast<Point>(i * a % q);
    gens.push_back(Permutation::from_images(m));
  }
  return detail::entry_from_perms("frob:" + std::to_string(q) + "," + std::to_string(r), n, gens,
                                  q * r);
}

inline CatalogEntry make_cyclic(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("make_cyclic: n must be >= 1");
  std::vector<Point> im(std::max(n, 1u));
  for (Point i = 0; i < n; ++i) im[i] = (i + 1) % n;
  return detail::entry_from_perms("cyc:" + std::to_string(n), std::max(n, 1u),
                                  {Permutation::from_images(im)}, n);
}

inline CatalogEntry make_dihedral(std::uint32_t n) {
  if (n < 1) throw std::invalid_argument("make_dihedral: n must be >= 1");
  std::vector<Permutation> gens;
  Point degree;
  if (n == 1) {
    degree = 2;
    gens.push_back(parse_cycles("(1,2)", 2));
  } else if (n == 2) {
    degree = 4;
    gens.push_back(parse_cycles("(1,2)", 4));
    gens.push_back(parse_cycles("(3,4)", 4));
  } else {
    degree = n;
    std::vector<Point> rot(n), ref(n);
    for (Point i = 0; i < n; ++i) {
      rot[i] = (i + 1) % n;
      ref[i] = (n - i) % n;
    }
    gens.push_back(Permutation::from_images(rot));
    gens.push_back(Permutation::from_images(ref));
  }
  return detail::entry_from_perms("dih:" + std::to_string(n), degree, gens, 2ull * n);
}

/// The quaternion group in its regular representation on 8 points.
inline CatalogEntry make_quaternion() {
  CatalogEntry e;
  e.id = "q8";
  e.degree = 8;
  e.gens = {"(1,3,2,4)(5,8,6,7)", "(1,5,2,6)(3,7,4,8)"};
  e.expected_order = 8;
  return e;
}

/// Direct product acting on the disjoint union of the two point sets.
inline CatalogEntry direct_product(const CatalogEntry& a, const CatalogEntry& b) {
  const Point degree = a.degree + b.degree;
  std::vector<Permutation> gens;
  for (const std::string& s : a.gens) {
    const Permutation g = parse_cycles(s, a.degree);
    std::vector<Point> im(degree);
    for (Point i = 0; i < a.degree; ++i) im[i] = g(i);
    for (Point i = a.degree; i < degree; ++i) im[i] = i;
    gens.push_back(Permutation::from_images(im));
  }
  for (const std::string& s : b.gens) {
    const Permutation g = parse_cycles(s, b.degree);
    std::vector<Point> im(degree);
    for (Point i = 0; i < a.degree; ++i) im[i] = i;
    for (Point i = 0; i < b.degree; ++i) im[a.degree + i] = a.degree + g(i);
    gens.push_back(Permutation::from_images(im));
  }
  CatalogEntry e = detail::entry_from_perms("prod:" + a.id + "*" + b.id, degree, gens, 0);
  if (a.expected_order && b.expected_order)
    e.expected_order = *a.expected_order * *b.expected_order;
  else
    e.expected_order.reset();
  return e;
}

/// The built-in catalog: symmetric and alternating groups through degree 8,
/// cyclic and dihedral groups of order up to 64, the quaternion group,
/// PSL(2,p) for p in {5,7,11,13}, the Frobenius groups of order up to 200,
/// and a handful of direct products.
inline std::vector<CatalogEntry> seed_catalog() {
  std::vector<CatalogEntry> out;
  for (std::uint32_t n = 2; n <= 8; ++n) out.push_back(make_symmetric(n));
  for (std::uint32_t n = 3; n <= 8; ++n) out.push_back(make_alternating(n));
  for (std::uint32_t n = 1; n <= 64; ++n) out.push_back(make_cyclic(n));
  for (std::uint32_t n = 2; n <= 32; ++n) out.push_back(make_dihedral(n));
  out.push_back(make_quaternion());
  for (std::uint64_t p : {5, 7, 11, 13}) out.push_back(make_psl2(p));
  for (std::uint64_t q = 3; q <= 199; q += 2) {
    if (!is_prime(q)) continue;
    for (std::uint64_t r : prime_factors(q - 1)) {
      if (q * r > 200) continue;
      out.push_back(make_frobenius(q, r));
    }
  }
  out.push_back(direct_product(make_symmetric(3), make_symmetric(3)));
  out.push_back(direct_product(make_cyclic(2), make_alternating(4)));
  out.push_back(direct_product(make_quaternion(), make_cyclic(3)));
  out.push_back(direct_product(make_cyclic(4), make_cyclic(2)));
  out.push_back(direct_product(make_alternating(5), make_alternating(5)));
  out.push_back(direct_product(make_psl2(5), make_cyclic(7)));
  return out;
}

/// Group selector mini-language: sym:n, alt:n, psl2:p, dih:n, cyc:n,
/// frob:q,r, q8, prod:a*b, file:path#id.
inline CatalogEntry entry_from_selector(const std::string& selector);

inline std::vector<CatalogEntry> parse_catalog(const std::string& path);

namespace detail {

inline std::uint64_t parse_uint(const std::string& text, const std::string& what) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid " + what + ": '" + text + "'");
  }
}

}  // namespace detail

inline CatalogEntry entry_from_selector(const std::string& selector) {
  auto colon = selector.find(':');
  const std::string kind = selector.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : selector.substr(colon + 1);
  if (kind == "q8" && colon == std::string::npos) return make_quaternion();
  if (colon == std::string::npos)
    throw std::invalid_argument("unknown group selector: '" + selector + "'");
  if (kind == "sym")
    return make_symmetric(static_cast<std::uint32_t>(detail::parse_uint(rest, "degree")));
  if (kind == "alt")
    return make_alternating(static_cast<std::uint32_t>(detail::parse_uint(rest, "degree")));
  if (kind == "psl2") return make_psl2(detail::parse_uint(rest, "prime"));
  if (kind == "dih")
    return make_dihedral(static_cast<std::uint32_t>(detail::parse_uint(rest, "order parameter")));
  if (kind == "cyc")
    return make_cyclic(static_cast<std::uint32_t>(detail::parse_uint(rest, "order")));
  if (kind == "frob") {
    auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("frob selector needs 'frob:q,r'");
    return make_frobenius(detail::parse_uint(rest.substr(0, comma), "prime q"),
                          detail::parse_uint(rest.substr(comma + 1), "parameter r"));
  }
  if (kind == "prod") {
    // Split at the last '*' so that nested products associate to the left.
    auto star = rest.rfind('*');
    if (star == std::string::npos)
      throw std::invalid_argument("prod selector needs 'prod:a*b'");
    return direct_product(entry_from_selector(rest.substr(0, star)),
                          entry_from_selector(rest.substr(star + 1)));
  }
  if (kind == "file") {
    auto hash = rest.find('#');
    if (hash == std::string::npos)
      throw std::invalid_argument("file selector needs 'file:path#id'");
    const std::string path = rest.substr(0, hash);
    const std::string id = rest.substr(hash + 1);
    for (CatalogEntry& e : parse_catalog(path))
      if (e.id == id) return e;
    throw std::invalid_argument("group '" + id + "' not found in catalog " + path);
  }
  throw std::invalid_argument("unknown group selector: '" + selector + "'");
}

/// Reads a JSON-lines catalog: one object per line with fields "id",
/// "degree", "gens" and optional "order". Every entry is validated by
/// building the group; errors carry the file position.
inline std::vector<CatalogEntry> parse_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open catalog file: " + path);
  std::vector<CatalogEntry> entries;
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::string where = path + ":" + std::to_string(lineno) + ": ";
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(where + "invalid JSON: " + e.what());
    }
    CatalogEntry e;
    try {
      e.id = j.at("id").get<std::string>();
      e.degree = j.at("degree").get<Point>();
      e.gens = j.at("gens").get<std::vector<std::string>>();
      if (j.contains("order")) e.expected_order = j.at("order").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& ex) {
      throw std::runtime_error(where + "bad catalog record: " + ex.what());
    }
    e.provenance = path + ":" + std::to_string(lineno);
    if (!ids.insert(e.id).second)
      throw std::runtime_error(where + "duplicate group id '" + e.id + "'");
    try {
      e.build();
    } catch (const std::exception& ex) {
      throw std::runtime_error(where + ex.what());
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

inline void write_catalog(const std::vector<CatalogEntry>& entries, std::ostream& out) {
  for (const CatalogEntry& e : entries) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["degree"] = e.degree;
    j["gens"] = e.gens;
    if (e.expected_order) j["order"] = *e.expected_order;
    out << j.dump() << "\n";
  }
}

inline void write_catalog(const std::vector<CatalogEntry>& entries, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  write_catalog(entries, out);
}

}  // namespace pigroup
