#include "nowcast/quarter.hpp"

#include <charconv>
#include <cctype>

#include "nowcast/error.hpp"

namespace nowcast {

QuarterLabel QuarterLabel::parse(std::string_view text) {
  const auto bad = [&] { return Error(ErrorCode::BadQuarterLabel, "'" + std::string(text) + "' is not YYYYQn"); };
  if (text.size() != 6 || text[4] != 'Q') throw bad();
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw bad();
  }
  int year = 0;
  std::from_chars(text.data(), text.data() + 4, year);
  const char q = text[5];
  if (q < '1' || q > '4' || year < 1900) throw bad();
  return {year, q - '0'};
}

std::string QuarterLabel::str() const {
  return std::to_string(year) + "Q" + std::to_string(quarter);
}

QuarterLabel QuarterLabel::operator+(long quarters) const {
  const long linear = static_cast<long>(year) * 4 + (quarter - 1) + quarters;
  const long y = linear >= 0 ? linear / 4 : (linear - 3) / 4;
  return {static_cast<int>(y), static_cast<int>(linear - y * 4) + 1};
}

}  // namespace nowcast
