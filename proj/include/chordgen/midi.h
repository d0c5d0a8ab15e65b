// Chord voicing at an octave, beat-timed chord events, and Standard MIDI File output.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "chordgen/pitch.h"
#include "chordgen/scale.h"

namespace chordgen {

using Beats = boost::rational<std::int64_t>;

/// Ascending keeps root < third < fifth by moving notes that wrap past B into
/// the next octave. SameOctave gives every note the configured octave.
enum class Voicing { Ascending, SameOctave };

std::string_view toString(Voicing voicing);
Voicing parseVoicing(std::string_view text);

inline constexpr int kMinTempoBpm = 20;
inline constexpr int kMaxTempoBpm = 300;
inline constexpr int kDefaultTempoBpm = 120;
inline constexpr int kMinPlaybackOctave = 1;
inline constexpr int kMaxPlaybackOctave = 9;
inline constexpr int kDefaultPlaybackOctave = 4;

struct PlaybackConfig {
  int tempo_bpm = kDefaultTempoBpm;
  int octave = kDefaultPlaybackOctave;
  Beats chord_duration{1};
  Voicing voicing = Voicing::Ascending;

  /// Throws InvalidArgument naming the violated bound.
  void validate() const;
};

using PitchedTriad = std::array<Pitch, 3>;

/// Attaches the configured octave to every chord's spelling.
/// Throws OutOfMidiRange if a resulting note is not a valid MIDI number.
std::vector<PitchedTriad> getMusicNotes(std::span<const Triad> chords, const PlaybackConfig& config);

std::array<int, 3> toMidi(const PitchedTriad& triad);

struct TimedChordEvent {
  std::array<int, 3> midi_notes{};
  Beats start{0};
  Beats duration{1};

  friend bool operator==(const TimedChordEvent&, const TimedChordEvent&) = default;
};

/// Chord i starts at beat i * chord_duration and lasts chord_duration.
std::vector<TimedChordEvent> toTimedEvents(std::span<const PitchedTriad> chords,
                                           const PlaybackConfig& config);

/// Wall-clock length of one beat and of a whole event list, in seconds.
boost::rational<std::int64_t> secondsPerBeat(int tempo_bpm);
boost::rational<std::int64_t> totalSeconds(std::span<const TimedChordEvent> events, int tempo_bpm);

inline constexpr int kTicksPerQuarter = 480;
inline constexpr int kNoteVelocity = 80;

/// Microseconds per quarter note, rounded to nearest: 60'000'000 / bpm.
std::uint32_t microsecondsPerQuarter(int tempo_bpm);

/// Format-0 SMF: one track holding a tempo meta event, note-on/note-off
/// pairs on channel 1 and end-of-track. Note-offs sort before note-ons at the
/// same tick. Throws InvalidArgument for event times that are not whole ticks.
std::vector<std::uint8_t> encodeSmf(std::span<const TimedChordEvent> events, const PlaybackConfig& config);

/// Writes encodeSmf() to `out`; returns the byte count. Throws SinkFailure.
std::size_t writeSmf(std::span<const TimedChordEvent> events, const PlaybackConfig& config,
                     std::ostream& out);

}  // namespace chordgen
