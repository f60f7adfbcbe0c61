#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wallrig {

/// Element (tx, ty, refl) of the wallpaper group pm = Z^2 x| Cs.
///
/// Acts on the plane as p -> (x + tx, sigma * y + ty) with sigma = -1 when
/// refl is set, i.e. a reflection in the x-axis followed by a lattice
/// translation. The default-constructed value is the identity. Ordering is
/// lexicographic on (tx, ty, refl), which canonical forms rely on.
struct GroupElement {
  std::int64_t tx = 0;
  std::int64_t ty = 0;
  bool refl = false;

  constexpr GroupElement() = default;
  constexpr GroupElement(std::int64_t x, std::int64_t y, bool r) : tx(x), ty(y), refl(r) {}

  static constexpr GroupElement identity() { return {}; }
  static constexpr GroupElement translation(std::int64_t x, std::int64_t y) { return {x, y, false}; }
  static constexpr GroupElement reflection() { return {0, 0, true}; }

  constexpr bool is_identity() const { return tx == 0 && ty == 0 && !refl; }
  constexpr bool is_translation() const { return !refl; }
  constexpr int sigma() const { return refl ? -1 : 1; }

  friend constexpr auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

constexpr GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  return {a.tx + b.tx, a.ty + a.sigma() * b.ty, a.refl != b.refl};
}

constexpr GroupElement inverse(const GroupElement& a) {
  return {-a.tx, -a.sigma() * a.ty, a.refl};
}

constexpr GroupElement operator*(const GroupElement& a, const GroupElement& b) { return multiply(a, b); }

/// a * b * a^-1
constexpr GroupElement conjugate(const GroupElement& a, const GroupElement& b) {
  return multiply(multiply(a, b), inverse(a));
}

/// Largest absolute translation component.
std::int64_t magnitude(const GroupElement& a);

/// The three orientation-reversing wallpaper groups handled here, all viewed
/// as subgroups of pm with the fixed square lattice.
enum class GroupTag { pm, cm, pg };

/// pm: everything. cm: tx + ty even. pg: refl iff tx odd.
constexpr bool member_of(const GroupElement& a, GroupTag tag) {
  switch (tag) {
    case GroupTag::pm:
      return true;
    case GroupTag::cm:
      return ((a.tx + a.ty) % 2) == 0;
    case GroupTag::pg:
      return ((a.tx % 2) != 0) == a.refl;
  }
  return false;
}

std::string_view to_string(GroupTag tag);
GroupTag parse_group_tag(std::string_view text);  // throws Error(ParseError)

/// Point or vector of the plane with exact rational coordinates.
struct Point {
  mpq_class x;
  mpq_class y;

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point operator*(const mpq_class& s, const Point& a);
mpq_class dot(const Point& a, const Point& b);

/// The isometry action on points.
Point apply_point(const GroupElement& a, const Point& p);

/// The linear part (identity or the x-axis mirror) acting on a vector.
Point linear_part_apply(const GroupElement& a, const Point& v);

/// Human-readable "(tx,ty,s)" / "(tx,ty,e)".
std::string format(const GroupElement& a);
std::ostream& operator<<(std::ostream& os, const GroupElement& a);
std::ostream& operator<<(std::ostream& os, const Point& p);

}  // namespace wallrig
