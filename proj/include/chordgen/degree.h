// Modes and the scale-agnostic degree tokens that numeric progressions are made of.

#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace chordgen {

/// Ionian (major) or Aeolian (natural minor).
enum class Mode { Major, Minor };

std::string_view toString(Mode mode);
/// Accepts "major"/"minor" in any letter case.
Mode parseMode(std::string_view text);

/// A chord position in a numeric progression. Ids 1..7 name the chord built on
/// that scale degree; id 8 exists only in minor and is the major triad on the
/// seventh degree, written "7Maj" wherever it is user visible.
class DegreeToken {
 public:
  constexpr DegreeToken() = default;
  constexpr explicit DegreeToken(int id) : id_(id) {}

  constexpr int id() const { return id_; }
  /// Zero-based scale degree the chord sits on (token 8 sits on the seventh).
  constexpr int degreeIndex() const { return id_ == 8 ? 6 : id_ - 1; }

  friend constexpr auto operator<=>(DegreeToken, DegreeToken) = default;

 private:
  int id_ = 1;
};

inline constexpr DegreeToken kTonic{1};
inline constexpr DegreeToken kSubtonicMajor{8};

/// Highest token id a mode admits: 7 for major, 8 for minor.
constexpr int maxTokenId(Mode mode) { return mode == Mode::Major ? 7 : 8; }

constexpr bool validFor(DegreeToken token, Mode mode) {
  return token.id() >= 1 && token.id() <= maxTokenId(mode);
}

std::string toString(DegreeToken token);

/// Parses "1".."8" or "7Maj". Range checks against a mode are left to callers.
/// Throws InvalidDegreeToken.
DegreeToken parseDegreeToken(std::string_view text);

}  // namespace chordgen
