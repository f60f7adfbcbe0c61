#include "wallrig/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "wallrig/error.hpp"

namespace wallrig {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IdentityLoop: return "IdentityLoop";
    case ErrorCode::DuplicateParallelGain: return "DuplicateParallelGain";
    case ErrorCode::GainOutsideGroup: return "GainOutsideGroup";
    case ErrorCode::BadVertexIndex: return "BadVertexIndex";
    case ErrorCode::DisconnectedWalk: return "DisconnectedWalk";
    case ErrorCode::EmptySubset: return "EmptySubset";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::MissingEdge: return "MissingEdge";
    case ErrorCode::ReflectionRequired: return "ReflectionRequired";
    case ErrorCode::NotTight: return "NotTight";
    case ErrorCode::NoReductionFound: return "NoReductionFound";
    case ErrorCode::InvalidBase: return "InvalidBase";
    case ErrorCode::Exhausted: return "Exhausted";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

std::int64_t magnitude(const GroupElement& a) {
  return std::max(std::llabs(a.tx), std::llabs(a.ty));
}

std::string_view to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::pm: return "pm";
    case GroupTag::cm: return "cm";
    case GroupTag::pg: return "pg";
  }
  return "?";
}

GroupTag parse_group_tag(std::string_view text) {
  if (text == "pm") return GroupTag::pm;
  if (text == "cm") return GroupTag::cm;
  if (text == "pg") return GroupTag::pg;
  throw Error(ErrorCode::ParseError, "unknown group tag '" + std::string(text) + "'");
}

Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(const mpq_class& s, const Point& a) { return {s * a.x, s * a.y}; }
mpq_class dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

Point apply_point(const GroupElement& a, const Point& p) {
  mpq_class y = a.refl ? mpq_class(-p.y) : p.y;
  return {p.x + mpq_class(a.tx), y + mpq_class(a.ty)};
}

Point linear_part_apply(const GroupElement& a, const Point& v) {
  return {v.x, a.refl ? mpq_class(-v.y) : v.y};
}

std::string format(const GroupElement& a) {
  std::ostringstream os;
  os << '(' << a.tx << ',' << a.ty << ',' << (a.refl ? 's' : 'e') << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const GroupElement& a) { return os << format(a); }

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << '(' << p.x.get_str() << ", " << p.y.get_str() << ')';
}

}  // namespace wallrig
