// Ionian/Aeolian scale construction and diatonic triads.

#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chordgen/degree.h"
#include "chordgen/pitch.h"

namespace chordgen {

/// Half steps between consecutive degrees; the last entry closes the octave.
/// Major: W W H W W W H. Minor: W H W W H W W.
std::array<int, 7> stepPattern(Mode mode);

class Scale {
 public:
  Scale(SpelledPitchClass tonic, Mode mode, std::array<SpelledPitchClass, 7> degrees)
      : tonic_(tonic), mode_(mode), degrees_(degrees) {}

  const SpelledPitchClass& tonic() const { return tonic_; }
  Mode mode() const { return mode_; }
  const std::array<SpelledPitchClass, 7>& degrees() const { return degrees_; }
  /// One-based, as in "the 4th scale degree".
  const SpelledPitchClass& degree(int number) const { return degrees_.at(number - 1); }

  /// "C-major", "F#-minor", ...
  std::string id() const;

  friend bool operator==(const Scale&, const Scale&) = default;

 private:
  SpelledPitchClass tonic_;
  Mode mode_;
  std::array<SpelledPitchClass, 7> degrees_;
};

/// Walks the mode's step pattern from `tonic`, one letter per degree.
/// Throws UnspellableNote if a degree would need a triple accidental.
Scale buildScale(SpelledPitchClass tonic, Mode mode);

/// The 21 tonic spellings in letter-major order: C, C#, Cb, D, D#, Db, ...
const std::array<SpelledPitchClass, 21>& canonicalTonics();

/// 21 major scales followed by 21 minor scales, each in canonicalTonics() order.
const std::vector<Scale>& enumerateScales();
std::vector<Scale> scalesForMode(Mode mode);

/// Inverse of Scale::id(). Throws InvalidArgument for malformed ids.
Scale parseScaleId(std::string_view id);

enum class Quality { Major, Minor, Diminished };

std::string_view toString(Quality quality);
/// Lower and upper stacked thirds in half steps: (4,3), (3,4), (3,3).
std::pair<int, int> thirds(Quality quality);

/// How minor-mode token 7 picks its root. Natural builds the diminished triad
/// on the unaltered seventh degree (G-Bb-Db in A minor); Raised builds it on
/// the seventh raised a half step (G#-B-D).
enum class LeadingTone { Natural, Raised };

std::string_view toString(LeadingTone leading_tone);
LeadingTone parseLeadingTone(std::string_view text);

using Triad = std::array<SpelledPitchClass, 3>;

/// Stacks the quality's two thirds on `root`, spelling them on root+2 and
/// root+4 letters.
Triad triadOn(const SpelledPitchClass& root, Quality quality);

/// "F", "C#", "Am", "Bdim".
std::string chordSymbol(const SpelledPitchClass& root, Quality quality);

struct DiatonicChord {
  DegreeToken token;
  SpelledPitchClass root;
  Quality quality;
  Triad notes;

  std::string symbol() const { return chordSymbol(root, quality); }
  friend bool operator==(const DiatonicChord&, const DiatonicChord&) = default;
};

/// Root and quality of the chord a token names in `scale`. Never throws for a
/// valid token, even where the full triad is unspellable.
std::pair<SpelledPitchClass, Quality> chordRootAndQuality(const Scale& scale, DegreeToken token,
                                                          LeadingTone leading_tone = LeadingTone::Natural);

/// Symbol of the chord a token names in `scale`.
std::string chordSymbol(const Scale& scale, DegreeToken token,
                        LeadingTone leading_tone = LeadingTone::Natural);

/// The triad on a degree token. Throws InvalidDegreeToken for tokens outside
/// the scale's mode and UnspellableNote when the triad needs a triple
/// accidental (only minor token 7 in Fb minor with the natural leading tone).
DiatonicChord diatonicChord(const Scale& scale, DegreeToken token,
                            LeadingTone leading_tone = LeadingTone::Natural);

/// One chord per token of the mode in token order: 7 for major, 8 for minor.
std::vector<DiatonicChord> chordsInScale(const Scale& scale,
                                         LeadingTone leading_tone = LeadingTone::Natural);
std::vector<std::string> chordSymbolsInScale(const Scale& scale,
                                             LeadingTone leading_tone = LeadingTone::Natural);

}  // namespace chordgen
