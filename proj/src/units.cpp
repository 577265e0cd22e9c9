#include "nucorr/units.hpp"

#include <cmath>
#include <cstddef>

namespace nucorr::units {

double parse_length(const std::string& text) {
  auto ends_with = [&](const std::string& suffix) {
    return text.size() > suffix.size() &&
           text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
  };

  double scale = 0.0;
  std::size_t tag_len = 0;
  if (ends_with("/eV")) {
    scale = 1.0;
    tag_len = 3;
  } else if (ends_with("km")) {
    scale = km_to_natural(1.0);
    tag_len = 2;
  } else if (ends_with("m")) {
    scale = meters_to_natural(1.0);
    tag_len = 1;
  } else {
    throw std::invalid_argument("length '" + text + "' missing unit tag (m, km or /eV)");
  }

  const std::string number = text.substr(0, text.size() - tag_len);
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(number, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse length '" + text + "'");
  }
  if (consumed != number.size() || !std::isfinite(value))
    throw std::invalid_argument("cannot parse length '" + text + "'");
  return value * scale;
}

}  // namespace nucorr::units
