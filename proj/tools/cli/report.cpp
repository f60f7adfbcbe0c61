#include "report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "wallrig/henneberg.hpp"

namespace wallrig::cli {

Report& Report::ids(std::string_view key, const std::vector<int>& values) {
  out_ << key << ':';
  for (int v : values) out_ << ' ' << v;
  out_ << '\n';
  return *this;
}

std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::vector<GroupElement> parse_window(std::string_view text, GroupTag tag) {
  auto fail = [&](const std::string& why) -> std::vector<GroupElement> {
    throw Error(ErrorCode::ParseError, "window '" + std::string(text) + "': " + why);
  };
  if (text.rfind("box:", 0) == 0) {
    int r = 0;
    try {
      std::size_t used = 0;
      r = std::stoi(std::string(text.substr(4)), &used);
      if (used != text.size() - 4) return fail("bad radius");
    } catch (const std::exception&) {
      return fail("bad radius");
    }
    if (r < 0) return fail("negative radius");
    return gain_window(r, tag);
  }
  std::vector<GroupElement> out;
  std::stringstream items{std::string(text)};
  std::string item;
  while (std::getline(items, item, ';')) {
    if (item.empty()) continue;
    std::stringstream parts(item);
    std::string tx, ty, r;
    if (!std::getline(parts, tx, ',') || !std::getline(parts, ty, ',') || !std::getline(parts, r, ',') ||
        (r != "s" && r != "e")) {
      return fail("expected tx,ty,s|e");
    }
    GroupElement a;
    try {
      a = {std::stoll(tx), std::stoll(ty), r == "s"};
    } catch (const std::exception&) {
      return fail("bad integer in '" + item + "'");
    }
    if (!member_of(a, tag)) return fail(format(a) + " is not in the group");
    out.push_back(a);
  }
  if (out.empty()) return fail("empty window");
  return out;
}

std::string patch_svg(const DerivedPatch& patch) {
  double lo_x = -1, hi_x = 1, lo_y = -1, hi_y = 1;
  for (const auto& v : patch.vertices) {
    lo_x = std::min(lo_x, v.position.x.get_d());
    hi_x = std::max(hi_x, v.position.x.get_d());
    lo_y = std::min(lo_y, v.position.y.get_d());
    hi_y = std::max(hi_y, v.position.y.get_d());
  }
  const double pad = 0.5, scale = 100;
  double w = (hi_x - lo_x + 2 * pad) * scale, h = (hi_y - lo_y + 2 * pad) * scale;
  auto sx = [&](double x) { return (x - lo_x + pad) * scale; };
  auto sy = [&](double y) { return (hi_y + pad - y) * scale; };  // y grows upward
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
     << ' ' << h << "\">\n";
  os << "  <line class=\"mirror\" x1=\"0\" y1=\"" << sy(0) << "\" x2=\"" << w << "\" y2=\"" << sy(0)
     << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  for (const auto& b : patch.bars) {
    const auto& p = patch.vertices[b.a].position;
    const auto& q = patch.vertices[b.b].position;
    os << "  <line class=\"bar\" data-edge=\"" << b.edge << "\" x1=\"" << sx(p.x.get_d()) << "\" y1=\"" << sy(p.y.get_d())
       << "\" x2=\"" << sx(q.x.get_d()) << "\" y2=\"" << sy(q.y.get_d()) << "\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n";
  }
  for (const auto& v : patch.vertices) {
    os << "  <circle class=\"joint\" data-vertex=\"" << v.vertex << "\" data-copy=\"" << format(v.copy) << "\" cx=\""
       << sx(v.position.x.get_d()) << "\" cy=\"" << sy(v.position.y.get_d()) << "\" r=\"4\" fill=\""
       << (v.copy.is_identity() ? "#c00000" : "#222") << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace wallrig::cli
