#include "chordgen/variation.h"

#include "chordgen/error.h"

namespace chordgen {

std::array<AlternateRule, 3> alternateRules(Mode base_mode) {
  if (base_mode == Mode::Major) {
    return {{{4, Mode::Major}, {5, Mode::Major}, {6, Mode::Minor}}};
  }
  return {{{3, Mode::Major}, {4, Mode::Minor}, {5, Mode::Minor}}};
}

VariationSet alternates(const Scale& base, const NumericProgression& progression) {
  if (progression.mode != base.mode()) {
    throw InvalidProgression("a " + std::string(toString(progression.mode)) +
                             " progression cannot be played on " + base.id());
  }
  for (DegreeToken token : progression.tokens) {
    if (!validFor(token, base.mode())) {
      throw InvalidProgression("token " + toString(token) + " is not defined for " + base.id());
    }
  }
  auto rules = alternateRules(base.mode());
  auto alternate = [&](const AlternateRule& rule) {
    return ScaledProgression{buildScale(base.degree(rule.degree), rule.mode), progression};
  };
  return {{base, progression}, {alternate(rules[0]), alternate(rules[1]), alternate(rules[2])}};
}

namespace {

bool isMajorSeventhOnMajorScale(const Scale& scale, DegreeToken token) {
  return scale.mode() == Mode::Major && token == kSubtonicMajor;
}

}  // namespace

DiatonicChord variationChord(const Scale& scale, DegreeToken token, LeadingTone leading_tone) {
  if (isMajorSeventhOnMajorScale(scale, token)) {
    const auto& root = scale.degree(7);
    return {token, root, Quality::Major, triadOn(root, Quality::Major)};
  }
  return diatonicChord(scale, token, leading_tone);
}

std::string variationChordSymbol(const Scale& scale, DegreeToken token, LeadingTone leading_tone) {
  if (isMajorSeventhOnMajorScale(scale, token)) return chordSymbol(scale.degree(7), Quality::Major);
  return chordSymbol(scale, token, leading_tone);
}

std::vector<std::string> renderSymbols(const Scale& scale, const NumericProgression& progression,
                                       LeadingTone leading_tone) {
  std::vector<std::string> out;
  out.reserve(progression.tokens.size());
  for (DegreeToken token : progression.tokens) {
    out.push_back(variationChordSymbol(scale, token, leading_tone));
  }
  return out;
}

std::vector<Triad> renderTriads(const Scale& scale, const NumericProgression& progression,
                                LeadingTone leading_tone) {
  std::vector<Triad> out;
  out.reserve(progression.tokens.size());
  for (DegreeToken token : progression.tokens) {
    out.push_back(variationChord(scale, token, leading_tone).notes);
  }
  return out;
}

}  // namespace chordgen
