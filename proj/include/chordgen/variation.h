// Alternate variations: the same numeric progression replayed on scales
// rooted at neighbouring degrees of the base scale.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "chordgen/progression.h"
#include "chordgen/scale.h"

namespace chordgen {

struct ScaledProgression {
  Scale scale;
  NumericProgression progression;

  friend bool operator==(const ScaledProgression&, const ScaledProgression&) = default;
};

struct VariationSet {
  ScaledProgression base;
  std::array<ScaledProgression, 3> alternates;
};

struct AlternateRule {
  int degree;  // one-based degree of the base scale
  Mode mode;
};

/// Major base: degrees 4, 5, 6 as major, major, minor.
/// Minor base: degrees 3, 4, 5 as major, minor, minor.
std::array<AlternateRule, 3> alternateRules(Mode base_mode);

/// Alternate tonics reuse the base scale's degree spellings verbatim.
/// Throws InvalidProgression if `progression` does not match the base mode's
/// token range, and UnspellableNote if an alternate scale cannot be spelled.
VariationSet alternates(const Scale& base, const NumericProgression& progression);

/// Chord a token names on a scale that may be of the other mode than the
/// progression was written for. Tokens defined for the scale's mode resolve
/// through diatonicChord; token 7Maj on a major scale is the major triad on
/// its seventh degree.
DiatonicChord variationChord(const Scale& scale, DegreeToken token,
                             LeadingTone leading_tone = LeadingTone::Natural);
std::string variationChordSymbol(const Scale& scale, DegreeToken token,
                                 LeadingTone leading_tone = LeadingTone::Natural);

/// Symbols of every chord of `progression` rendered on `scale`.
std::vector<std::string> renderSymbols(const Scale& scale, const NumericProgression& progression,
                                       LeadingTone leading_tone = LeadingTone::Natural);
/// Spelled triads of every chord of `progression` rendered on `scale`.
std::vector<Triad> renderTriads(const Scale& scale, const NumericProgression& progression,
                                LeadingTone leading_tone = LeadingTone::Natural);

}  // namespace chordgen
