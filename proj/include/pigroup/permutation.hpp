#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pigroup {

using Point = std::uint32_t;

/// A bijection of {0, ..., degree-1}, stored as the image table.
///
/// Composition convention, used everywhere in this library: the product a*b
/// applies a first, then b, i.e. (a*b)(i) = b(a(i)). Conjugation follows the
/// same convention: x^g = g^-1 * x * g, so (x^g)(g(i)) = g(x(i)).
/// Points are 0-based internally; all text I/O uses 1-based cycle notation.
class Permutation {
 public:
  explicit Permutation(Point degree) : images_(degree) {
    if (degree == 0) throw std::invalid_argument("Permutation: degree must be at least 1");
    for (Point i = 0; i < degree; ++i) images_[i] = i;
  }

  static Permutation identity(Point degree) { return Permutation(degree); }

  static Permutation from_images(std::vector<Point> images) {
    if (images.empty()) throw std::invalid_argument("Permutation: degree must be at least 1");
    std::vector<bool> seen(images.size(), false);
    for (Point v : images) {
      if (v >= images.size() || seen[v])
        throw std::invalid_argument("Permutation: image table is not a bijection");
      seen[v] = true;
    }
    Permutation p(static_cast<Point>(images.size()));
    p.images_ = std::move(images);
    return p;
  }

  Point degree() const { return static_cast<Point>(images_.size()); }
  Point operator()(Point i) const { return images_[i]; }
  const std::vector<Point>& images() const { return images_; }

  bool is_identity() const {
    for (Point i = 0; i < degree(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree())
      throw std::invalid_argument("Permutation: degree mismatch in composition");
    Permutation r(a.degree());
    for (Point i = 0; i < a.degree(); ++i) r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r(degree());
    for (Point i = 0; i < degree(); ++i) r.images_[images_[i]] = i;
    return r;
  }

  /// g^-1 * (*this) * g, computed in one pass.
  Permutation conjugated_by(const Permutation& g) const {
    if (degree() != g.degree())
      throw std::invalid_argument("Permutation: degree mismatch in conjugation");
    Permutation r(degree());
    for (Point i = 0; i < degree(); ++i) r.images_[g.images_[i]] = g.images_[images_[i]];
    return r;
  }

  bool commutes_with(const Permutation& other) const {
    if (degree() != other.degree())
      throw std::invalid_argument("Permutation: degree mismatch");
    for (Point i = 0; i < degree(); ++i)
      if (other.images_[images_[i]] != images_[other.images_[i]]) return false;
    return true;
  }

  /// Multiplicative order: lcm of the cycle lengths.
  std::uint64_t order() const {
    std::vector<bool> seen(degree(), false);
    std::uint64_t result = 1;
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      Point j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = images_[j];
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  /// Nontrivial cycles in canonical form: each cycle starts at its smallest
  /// point, cycles ordered by smallest point.
  std::vector<std::vector<Point>> cycles() const {
    std::vector<std::vector<Point>> out;
    std::vector<bool> seen(degree(), false);
    for (Point i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) {
        seen[i] = true;
        continue;
      }
      std::vector<Point> cyc;
      Point j = i;
      while (!seen[j]) {
        seen[j] = true;
        cyc.push_back(j);
        j = images_[j];
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  bool is_even() const {
    std::uint32_t transpositions = 0;
    for (const auto& cyc : cycles()) transpositions += static_cast<std::uint32_t>(cyc.size()) - 1;
    return transpositions % 2 == 0;
  }

  Point smallest_moved_point() const {
    for (Point i = 0; i < degree(); ++i)
      if (images_[i] != i) return i;
    throw std::logic_error("smallest_moved_point: identity moves nothing");
  }

  std::uint32_t support_size() const {
    std::uint32_t n = 0;
    for (Point i = 0; i < degree(); ++i)
      if (images_[i] != i) ++n;
    return n;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

 private:
  std::vector<Point> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const {
    std::size_t h = 0x9e3779b97f4a7c15ull ^ p.degree();
    for (Point v : p.images()) h = (h ^ v) * 0x100000001b3ull;
    return h;
  }
};

inline Permutation commutator(const Permutation& g, const Permutation& h) {
  return g.inverse() * h.inverse() * g * h;
}

/// Canonical 1-based cycle notation; the identity renders as "()".
inline std::string format_cycles(const Permutation& p) {
  auto cycs = p.cycles();
  if (cycs.empty()) return "()";
  std::string s;
  for (const auto& cyc : cycs) {
    s += "(";
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(cyc[i] + 1);
    }
    s += ")";
  }
  return s;
}

/// Parses 1-based cycle notation such as "(1,2)(3,4,5)" or "()". Whitespace
/// between tokens is ignored. Every point must lie in 1..degree and may
/// appear at most once.
inline Permutation parse_cycles(std::string_view text, Point degree) {
  if (degree == 0) throw std::invalid_argument("parse_cycles: degree must be at least 1");
  std::vector<Point> images(degree);
  for (Point i = 0; i < degree; ++i) images[i] = i;
  std::vector<bool> used(degree, false);

  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw std::invalid_argument("cycle notation error at position " + std::to_string(pos) + ": " +
                                msg);
  };

  skip_ws();
  if (pos == text.size()) fail("empty input");
  bool any_cycle = false;
  while (pos < text.size()) {
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<Point> cyc;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      if (!cyc.empty()) {
        if (text[pos] != ',') fail("expected ',' or ')'");
        ++pos;
        skip_ws();
      }
      if (pos == text.size() || text[pos] < '0' || text[pos] > '9') fail("expected point number");
      std::uint64_t value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (value > degree) fail("point exceeds degree " + std::to_string(degree));
        ++pos;
      }
      if (value == 0) fail("points are 1-based");
      Point pt = static_cast<Point>(value - 1);
      if (used[pt]) fail("point " + std::to_string(value) + " repeated");
      used[pt] = true;
      cyc.push_back(pt);
      skip_ws();
    }
    if (pos == text.size()) fail("unterminated cycle");
    ++pos;  // ')'
    any_cycle = true;
    for (std::size_t i = 0; i + 1 < cyc.size(); ++i) images[cyc[i]] = cyc[i + 1];
    if (cyc.size() > 1) images[cyc.back()] = cyc.front();
    skip_ws();
  }
  if (!any_cycle) fail("no cycles found");
  return Permutation::from_images(std::move(images));
}

}  // namespace pigroup
