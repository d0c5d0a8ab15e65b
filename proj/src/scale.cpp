#include "chordgen/scale.h"

#include "chordgen/error.h"

namespace chordgen {

std::array<int, 7> stepPattern(Mode mode) {
  if (mode == Mode::Major) return {2, 2, 1, 2, 2, 2, 1};
  return {2, 1, 2, 2, 1, 2, 2};
}

std::string Scale::id() const { return toString(tonic_) + "-" + std::string(toString(mode_)); }

Scale buildScale(SpelledPitchClass tonic, Mode mode) {
  const auto steps = stepPattern(mode);
  std::array<SpelledPitchClass, 7> degrees;
  degrees[0] = tonic;
  for (int i = 1; i < 7; ++i) {
    degrees[i] = transpose(degrees[i - 1], steps[i - 1], letterAfter(degrees[i - 1].letter(), 1));
  }
  return Scale(tonic, mode, degrees);
}

const std::array<SpelledPitchClass, 21>& canonicalTonics() {
  static const std::array<SpelledPitchClass, 21> tonics = [] {
    std::array<SpelledPitchClass, 21> out;
    std::size_t i = 0;
    for (int letter = 0; letter < kLetterCount; ++letter) {
      for (int accidental : {0, 1, -1}) {
        out[i++] = SpelledPitchClass(static_cast<Letter>(letter), accidental);
      }
    }
    return out;
  }();
  return tonics;
}

std::vector<Scale> scalesForMode(Mode mode) {
  std::vector<Scale> out;
  out.reserve(21);
  for (const auto& tonic : canonicalTonics()) out.push_back(buildScale(tonic, mode));
  return out;
}

const std::vector<Scale>& enumerateScales() {
  static const std::vector<Scale> scales = [] {
    auto out = scalesForMode(Mode::Major);
    auto minor = scalesForMode(Mode::Minor);
    out.insert(out.end(), minor.begin(), minor.end());
    return out;
  }();
  return scales;
}

Scale parseScaleId(std::string_view id) {
  auto dash = id.rfind('-');
  if (dash == std::string_view::npos) {
    throw InvalidArgument("scale id '" + std::string(id) + "' must look like C-major or A-minor");
  }
  auto tonic = parseSpelling(id.substr(0, dash));
  auto mode = parseMode(id.substr(dash + 1));
  return buildScale(tonic, mode);
}

std::string_view toString(Quality quality) {
  switch (quality) {
    case Quality::Major: return "major";
    case Quality::Minor: return "minor";
    case Quality::Diminished: return "diminished";
  }
  return "";
}

std::pair<int, int> thirds(Quality quality) {
  switch (quality) {
    case Quality::Major: return {4, 3};
    case Quality::Minor: return {3, 4};
    case Quality::Diminished: return {3, 3};
  }
  return {0, 0};
}

std::string_view toString(LeadingTone leading_tone) {
  return leading_tone == LeadingTone::Natural ? "natural" : "raised";
}

LeadingTone parseLeadingTone(std::string_view text) {
  if (text == "natural") return LeadingTone::Natural;
  if (text == "raised") return LeadingTone::Raised;
  throw InvalidArgument("unknown leading-tone mode '" + std::string(text) +
                        "' (expected natural or raised)");
}

Triad triadOn(const SpelledPitchClass& root, Quality quality) {
  auto [lower, upper] = thirds(quality);
  return {root, transpose(root, lower, letterAfter(root.letter(), 2)),
          transpose(root, lower + upper, letterAfter(root.letter(), 4))};
}

std::string chordSymbol(const SpelledPitchClass& root, Quality quality) {
  switch (quality) {
    case Quality::Major: return toString(root);
    case Quality::Minor: return toString(root) + "m";
    case Quality::Diminished: return toString(root) + "dim";
  }
  return toString(root);
}

namespace {

int gap(const SpelledPitchClass& from, const SpelledPitchClass& to) {
  return (pitchClassValue(to) - pitchClassValue(from) + 12) % 12;
}

Quality qualityFromThirds(int lower, int upper) {
  if (lower == 4 && upper == 3) return Quality::Major;
  if (lower == 3 && upper == 4) return Quality::Minor;
  if (lower == 3 && upper == 3) return Quality::Diminished;
  throw std::logic_error("stacked thirds " + std::to_string(lower) + "+" + std::to_string(upper) +
                         " are not a triad quality");
}

void checkToken(const Scale& scale, DegreeToken token) {
  if (!validFor(token, scale.mode())) {
    throw InvalidDegreeToken("token " + toString(token) + " is not defined for " +
                             std::string(toString(scale.mode())) + " scales");
  }
}

// Minor token 7 is the diminished triad built off the seventh degree itself,
// not the diatonic stack on it.
bool isMinorDiminishedSeventh(const Scale& scale, DegreeToken token) {
  return scale.mode() == Mode::Minor && token == DegreeToken(7);
}

SpelledPitchClass minorSeventhRoot(const Scale& scale, LeadingTone leading_tone) {
  const auto& seventh = scale.degree(7);
  if (leading_tone == LeadingTone::Natural) return seventh;
  return transpose(seventh, 1, seventh.letter());
}

}  // namespace

std::pair<SpelledPitchClass, Quality> chordRootAndQuality(const Scale& scale, DegreeToken token,
                                                          LeadingTone leading_tone) {
  checkToken(scale, token);
  if (isMinorDiminishedSeventh(scale, token)) {
    return {minorSeventhRoot(scale, leading_tone), Quality::Diminished};
  }
  const auto& d = scale.degrees();
  int i = token.degreeIndex();
  const auto& root = d[i];
  const auto& third = d[(i + 2) % 7];
  const auto& fifth = d[(i + 4) % 7];
  return {root, qualityFromThirds(gap(root, third), gap(third, fifth))};
}

std::string chordSymbol(const Scale& scale, DegreeToken token, LeadingTone leading_tone) {
  auto [root, quality] = chordRootAndQuality(scale, token, leading_tone);
  return chordSymbol(root, quality);
}

DiatonicChord diatonicChord(const Scale& scale, DegreeToken token, LeadingTone leading_tone) {
  auto [root, quality] = chordRootAndQuality(scale, token, leading_tone);
  if (isMinorDiminishedSeventh(scale, token)) {
    return {token, root, quality, triadOn(root, quality)};
  }
  const auto& d = scale.degrees();
  int i = token.degreeIndex();
  return {token, root, quality, {d[i], d[(i + 2) % 7], d[(i + 4) % 7]}};
}

std::vector<DiatonicChord> chordsInScale(const Scale& scale, LeadingTone leading_tone) {
  std::vector<DiatonicChord> out;
  for (int id = 1; id <= maxTokenId(scale.mode()); ++id) {
    out.push_back(diatonicChord(scale, DegreeToken(id), leading_tone));
  }
  return out;
}

std::vector<std::string> chordSymbolsInScale(const Scale& scale, LeadingTone leading_tone) {
  std::vector<std::string> out;
  for (int id = 1; id <= maxTokenId(scale.mode()); ++id) {
    out.push_back(chordSymbol(scale, DegreeToken(id), leading_tone));
  }
  return out;
}

}  // namespace chordgen
