#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace nowcast {

/// Calendar quarter, rendered as "YYYYQn".
struct QuarterLabel {
  int year = 1900;
  int quarter = 1;

  static QuarterLabel parse(std::string_view text);

  std::string str() const;
  QuarterLabel next() const { return quarter == 4 ? QuarterLabel{year + 1, 1} : QuarterLabel{year, quarter + 1}; }
  QuarterLabel prev() const { return quarter == 1 ? QuarterLabel{year - 1, 4} : QuarterLabel{year, quarter - 1}; }

  /// Number of quarters from `from` to this label (negative if earlier).
  long operator-(const QuarterLabel& from) const {
    return (static_cast<long>(year) - from.year) * 4 + (quarter - from.quarter);
  }
  QuarterLabel operator+(long quarters) const;

  friend auto operator<=>(const QuarterLabel&, const QuarterLabel&) = default;
};

}  // namespace nowcast
