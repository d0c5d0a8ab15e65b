// Letter/accidental pitch model, half-step arithmetic and note-to-MIDI conversion.
//
// Spellings render as the letter followed by "#", "##", "b" or "bb", and a
// pitched note appends its octave in scientific pitch notation ("C#4", "Fbb").
// The octave attaches to the letter, so Cb4 sits one half step below C4.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace chordgen {

enum class Letter : std::uint8_t { C, D, E, F, G, A, B };

inline constexpr int kLetterCount = 7;
inline constexpr int kMinAccidental = -2;
inline constexpr int kMaxAccidental = 2;

/// Semitone offset of the natural letter above C.
constexpr int baseSemitone(Letter letter) {
  constexpr int kBase[kLetterCount] = {0, 2, 4, 5, 7, 9, 11};
  return kBase[static_cast<int>(letter)];
}

/// The letter `steps` positions above `letter`, wrapping B -> C.
constexpr Letter letterAfter(Letter letter, int steps) {
  int index = (static_cast<int>(letter) + steps) % kLetterCount;
  if (index < 0) index += kLetterCount;
  return static_cast<Letter>(index);
}

char toChar(Letter letter);

/// A pitch class with its spelling. Accidentals range from double flat (-2)
/// to double sharp (+2); anything else throws UnspellableNote on construction.
class SpelledPitchClass {
 public:
  constexpr SpelledPitchClass() = default;
  SpelledPitchClass(Letter letter, int accidental = 0);

  constexpr Letter letter() const { return letter_; }
  constexpr int accidental() const { return accidental_; }

  friend constexpr bool operator==(const SpelledPitchClass&,
                                   const SpelledPitchClass&) = default;

 private:
  Letter letter_ = Letter::C;
  int accidental_ = 0;
};

/// (baseSemitone(letter) + accidental) reduced into [0, 11].
int pitchClassValue(const SpelledPitchClass& spelling);

/// Same sounding pitch class, regardless of spelling.
bool enharmonic(const SpelledPitchClass& a, const SpelledPitchClass& b);

/// Moves `from` up by `half_steps` and spells the result on `target`.
/// Throws UnspellableNote if the spelling would need more than two accidentals.
SpelledPitchClass transpose(const SpelledPitchClass& from, int half_steps, Letter target);

std::string toString(const SpelledPitchClass& spelling);

/// Parses "C", "F#", "Bbb", ... Throws InvalidArgument on anything else.
SpelledPitchClass parseSpelling(std::string_view text);

struct Pitch {
  SpelledPitchClass spelled;
  int octave = 4;

  friend bool operator==(const Pitch&, const Pitch&) = default;
};

inline constexpr int kMinOctave = -1;
inline constexpr int kMaxOctave = 9;
inline constexpr int kMaxMidi = 127;

/// 12 * (octave + 1) + baseSemitone(letter) + accidental.
/// Throws OutOfMidiRange when the result leaves [0, 127].
int toMidi(const Pitch& pitch);

std::string toString(const Pitch& pitch);
Pitch parsePitch(std::string_view text);

enum class Interval { HalfStep, WholeStep, MinorThird, MajorThird, DiminishedFifth, PerfectFifth };

constexpr int halfSteps(Interval interval) {
  switch (interval) {
    case Interval::HalfStep: return 1;
    case Interval::WholeStep: return 2;
    case Interval::MinorThird: return 3;
    case Interval::MajorThird: return 4;
    case Interval::DiminishedFifth: return 6;
    case Interval::PerfectFifth: return 7;
  }
  return 0;
}

}  // namespace chordgen
