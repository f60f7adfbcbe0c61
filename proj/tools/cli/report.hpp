#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wallrig/gain_graph.hpp"

namespace wallrig::cli {

/// Line-oriented "key: value" report.
class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  template <typename T>
  Report& field(std::string_view key, const T& value) {
    out_ << key << ": " << value << '\n';
    return *this;
  }
  Report& flag(std::string_view key, bool value) { return field(key, value ? "true" : "false"); }
  Report& ids(std::string_view key, const std::vector<int>& values);

 private:
  std::ostream& out_;
};

std::string fnv1a64(std::string_view bytes);

/// "box:R" or "tx,ty,s|e;..." filtered to the group.
std::vector<GroupElement> parse_window(std::string_view text, GroupTag tag);

std::string patch_svg(const DerivedPatch& patch);

}  // namespace wallrig::cli
