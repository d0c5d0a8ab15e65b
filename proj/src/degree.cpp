#include "chordgen/degree.h"

#include <algorithm>
#include <cctype>

#include "chordgen/error.h"

namespace chordgen {

std::string_view toString(Mode mode) { return mode == Mode::Major ? "major" : "minor"; }

Mode parseMode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "major") return Mode::Major;
  if (lower == "minor") return Mode::Minor;
  throw InvalidArgument("unknown mode '" + std::string(text) + "' (expected major or minor)");
}

std::string toString(DegreeToken token) {
  return token == kSubtonicMajor ? std::string("7Maj") : std::to_string(token.id());
}

DegreeToken parseDegreeToken(std::string_view text) {
  if (text == "7Maj") return kSubtonicMajor;
  if (text.size() == 1 && text[0] >= '1' && text[0] <= '8') return DegreeToken(text[0] - '0');
  throw InvalidDegreeToken("unknown degree token '" + std::string(text) + "'");
}

}  // namespace chordgen
