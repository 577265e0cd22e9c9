#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace nucorr {

enum class Flavor { e = 0, mu = 1, tau = 2 };

inline constexpr std::array<Flavor, 3> all_flavors{Flavor::e, Flavor::mu, Flavor::tau};

inline int index_of(Flavor f) { return static_cast<int>(f); }

inline const char* name_of(Flavor f) {
  switch (f) {
    case Flavor::e: return "e";
    case Flavor::mu: return "mu";
    case Flavor::tau: return "tau";
  }
  return "?";
}

inline Flavor flavor_from_string(const std::string& s) {
  if (s == "e") return Flavor::e;
  if (s == "mu") return Flavor::mu;
  if (s == "tau") return Flavor::tau;
  throw std::invalid_argument("unknown flavor '" + s + "' (expected e, mu or tau)");
}

}  // namespace nucorr
