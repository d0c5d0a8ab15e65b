#include "chordgen/pitch.h"

#include <charconv>

#include "chordgen/error.h"

namespace chordgen {

std::string_view toString(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfMidiRange: return "OutOfMidiRange";
    case ErrorKind::UnspellableNote: return "UnspellableNote";
    case ErrorKind::InvalidDegreeToken: return "InvalidDegreeToken";
    case ErrorKind::InvalidProgression: return "InvalidProgression";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::SinkFailure: return "SinkFailure";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

int mod12(int value) {
  int r = value % 12;
  return r < 0 ? r + 12 : r;
}

bool parseLetter(char c, Letter& out) {
  switch (c) {
    case 'C': out = Letter::C; return true;
    case 'D': out = Letter::D; return true;
    case 'E': out = Letter::E; return true;
    case 'F': out = Letter::F; return true;
    case 'G': out = Letter::G; return true;
    case 'A': out = Letter::A; return true;
    case 'B': out = Letter::B; return true;
    default: return false;
  }
}

// Consumes letter + accidentals from the front of `text`.
SpelledPitchClass consumeSpelling(std::string_view& text, std::string_view original) {
  Letter letter;
  if (text.empty() || !parseLetter(text.front(), letter)) {
    throw InvalidArgument("not a note name: '" + std::string(original) + "'");
  }
  text.remove_prefix(1);
  int accidental = 0;
  while (!text.empty() && (text.front() == '#' || text.front() == 'b')) {
    accidental += text.front() == '#' ? 1 : -1;
    text.remove_prefix(1);
  }
  if (accidental < kMinAccidental || accidental > kMaxAccidental) {
    throw InvalidArgument("accidental out of range in '" + std::string(original) + "'");
  }
  return SpelledPitchClass(letter, accidental);
}

}  // namespace

char toChar(Letter letter) { return "CDEFGAB"[static_cast<int>(letter)]; }

SpelledPitchClass::SpelledPitchClass(Letter letter, int accidental)
    : letter_(letter), accidental_(accidental) {
  if (accidental < kMinAccidental || accidental > kMaxAccidental) {
    throw UnspellableNote(std::string("cannot spell ") + toChar(letter) + " with accidental " +
                          std::to_string(accidental));
  }
}

int pitchClassValue(const SpelledPitchClass& spelling) {
  return mod12(baseSemitone(spelling.letter()) + spelling.accidental());
}

bool enharmonic(const SpelledPitchClass& a, const SpelledPitchClass& b) {
  return pitchClassValue(a) == pitchClassValue(b);
}

SpelledPitchClass transpose(const SpelledPitchClass& from, int half_steps, Letter target) {
  int wanted = mod12(pitchClassValue(from) + half_steps);
  // Smallest signed distance from the natural target letter, in [-6, 5].
  int accidental = mod12(wanted - baseSemitone(target));
  if (accidental > 5) accidental -= 12;
  if (accidental < kMinAccidental || accidental > kMaxAccidental) {
    throw UnspellableNote(toString(from) + " moved " + std::to_string(half_steps) +
                          " half steps cannot be spelled on " + toChar(target));
  }
  return SpelledPitchClass(target, accidental);
}

std::string toString(const SpelledPitchClass& spelling) {
  std::string out(1, toChar(spelling.letter()));
  int accidental = spelling.accidental();
  out.append(static_cast<std::size_t>(accidental > 0 ? accidental : -accidental),
             accidental > 0 ? '#' : 'b');
  return out;
}

SpelledPitchClass parseSpelling(std::string_view text) {
  std::string_view rest = text;
  SpelledPitchClass spelling = consumeSpelling(rest, text);
  if (!rest.empty()) throw InvalidArgument("trailing characters in note name '" + std::string(text) + "'");
  return spelling;
}

int toMidi(const Pitch& pitch) {
  int midi = 12 * (pitch.octave + 1) + baseSemitone(pitch.spelled.letter()) +
             pitch.spelled.accidental();
  if (midi < 0 || midi > kMaxMidi) {
    throw OutOfMidiRange(toString(pitch) + " maps to MIDI " + std::to_string(midi) +
                         ", outside [0, 127]");
  }
  return midi;
}

std::string toString(const Pitch& pitch) {
  return toString(pitch.spelled) + std::to_string(pitch.octave);
}

Pitch parsePitch(std::string_view text) {
  std::string_view rest = text;
  SpelledPitchClass spelling = consumeSpelling(rest, text);
  int octave = 0;
  auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), octave);
  if (ec != std::errc() || end != rest.data() + rest.size()) {
    throw InvalidArgument("missing or bad octave in '" + std::string(text) + "'");
  }
  if (octave < kMinOctave || octave > kMaxOctave) {
    throw InvalidArgument("octave out of range in '" + std::string(text) + "'");
  }
  return Pitch{spelling, octave};
}

}  // namespace chordgen
