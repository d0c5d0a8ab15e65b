#include "chordgen/midi.h"

#include <algorithm>
#include <ostream>
#include <tuple>

#include "chordgen/error.h"

namespace chordgen {

std::string_view toString(Voicing voicing) {
  return voicing == Voicing::Ascending ? "ascending" : "same-octave";
}

Voicing parseVoicing(std::string_view text) {
  if (text == "ascending") return Voicing::Ascending;
  if (text == "same-octave") return Voicing::SameOctave;
  throw InvalidArgument("unknown voicing '" + std::string(text) + "' (expected ascending or same-octave)");
}

void PlaybackConfig::validate() const {
  if (tempo_bpm < kMinTempoBpm || tempo_bpm > kMaxTempoBpm) {
    throw InvalidArgument("tempo " + std::to_string(tempo_bpm) + " BPM is outside [20, 300]");
  }
  if (octave < kMinPlaybackOctave || octave > kMaxPlaybackOctave) {
    throw InvalidArgument("octave " + std::to_string(octave) + " is outside [1, 9]");
  }
  if (chord_duration <= 0) throw InvalidArgument("chord duration must be positive");
}

std::vector<PitchedTriad> getMusicNotes(std::span<const Triad> chords, const PlaybackConfig& config) {
  config.validate();
  std::vector<PitchedTriad> out;
  out.reserve(chords.size());
  for (const Triad& chord : chords) {
    PitchedTriad voiced;
    const int root_letter = static_cast<int>(chord[0].letter());
    for (std::size_t i = 0; i < chord.size(); ++i) {
      int octave = config.octave;
      if (config.voicing == Voicing::Ascending && static_cast<int>(chord[i].letter()) < root_letter) {
        ++octave;
      }
      voiced[i] = Pitch{chord[i], octave};
      toMidi(voiced[i]);
    }
    out.push_back(voiced);
  }
  return out;
}

std::array<int, 3> toMidi(const PitchedTriad& triad) {
  return {toMidi(triad[0]), toMidi(triad[1]), toMidi(triad[2])};
}

std::vector<TimedChordEvent> toTimedEvents(std::span<const PitchedTriad> chords,
                                           const PlaybackConfig& config) {
  config.validate();
  std::vector<TimedChordEvent> out;
  out.reserve(chords.size());
  Beats start{0};
  for (const auto& chord : chords) {
    out.push_back({toMidi(chord), start, config.chord_duration});
    start += config.chord_duration;
  }
  return out;
}

boost::rational<std::int64_t> secondsPerBeat(int tempo_bpm) {
  return {60, tempo_bpm};
}

boost::rational<std::int64_t> totalSeconds(std::span<const TimedChordEvent> events, int tempo_bpm) {
  Beats beats{0};
  for (const auto& event : events) beats = std::max(beats, event.start + event.duration);
  return beats * secondsPerBeat(tempo_bpm);
}

std::uint32_t microsecondsPerQuarter(int tempo_bpm) {
  return static_cast<std::uint32_t>((60'000'000 + tempo_bpm / 2) / tempo_bpm);
}

namespace {

std::uint32_t toTicks(const Beats& beats) {
  Beats ticks = beats * kTicksPerQuarter;
  if (ticks.denominator() != 1 || ticks.numerator() < 0) {
    throw InvalidArgument("beat position " + std::to_string(beats.numerator()) + "/" +
                          std::to_string(beats.denominator()) + " is not a whole number of ticks");
  }
  return static_cast<std::uint32_t>(ticks.numerator());
}

void putVariableLength(std::vector<std::uint8_t>& out, std::uint32_t value) {
  std::uint8_t buffer[5];
  int n = 0;
  buffer[n++] = value & 0x7F;
  while (value >>= 7) buffer[n++] = static_cast<std::uint8_t>((value & 0x7F) | 0x80);
  while (n > 0) out.push_back(buffer[--n]);
}

void putBigEndian(std::vector<std::uint8_t>& out, std::uint32_t value, int bytes) {
  for (int shift = 8 * (bytes - 1); shift >= 0; shift -= 8) out.push_back((value >> shift) & 0xFF);
}

struct NoteMessage {
  std::uint32_t tick;
  bool on;
  int note;
};

}  // namespace

std::vector<std::uint8_t> encodeSmf(std::span<const TimedChordEvent> events, const PlaybackConfig& config) {
  config.validate();
  std::vector<NoteMessage> messages;
  for (const auto& event : events) {
    std::uint32_t on = toTicks(event.start);
    std::uint32_t off = toTicks(event.start + event.duration);
    for (int note : event.midi_notes) {
      if (note < 0 || note > kMaxMidi) throw OutOfMidiRange("MIDI note " + std::to_string(note));
      messages.push_back({on, true, note});
      messages.push_back({off, false, note});
    }
  }
  std::stable_sort(messages.begin(), messages.end(), [](const NoteMessage& a, const NoteMessage& b) {
    return std::tie(a.tick, a.on) < std::tie(b.tick, b.on);
  });

  std::vector<std::uint8_t> track;
  putVariableLength(track, 0);
  track.insert(track.end(), {0xFF, 0x51, 0x03});
  putBigEndian(track, microsecondsPerQuarter(config.tempo_bpm), 3);

  std::uint32_t now = 0;
  for (const auto& m : messages) {
    putVariableLength(track, m.tick - now);
    now = m.tick;
    track.push_back(m.on ? 0x90 : 0x80);
    track.push_back(static_cast<std::uint8_t>(m.note));
    track.push_back(m.on ? kNoteVelocity : 0);
  }
  putVariableLength(track, 0);
  track.insert(track.end(), {0xFF, 0x2F, 0x00});

  std::vector<std::uint8_t> file = {'M', 'T', 'h', 'd'};
  putBigEndian(file, 6, 4);
  putBigEndian(file, 0, 2);  // format 0
  putBigEndian(file, 1, 2);  // one track
  putBigEndian(file, kTicksPerQuarter, 2);
  file.insert(file.end(), {'M', 'T', 'r', 'k'});
  putBigEndian(file, static_cast<std::uint32_t>(track.size()), 4);
  file.insert(file.end(), track.begin(), track.end());
  return file;
}

std::size_t writeSmf(std::span<const TimedChordEvent> events, const PlaybackConfig& config,
                     std::ostream& out) {
  auto bytes = encodeSmf(events, config);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SinkFailure("failed writing MIDI output");
  return bytes.size();
}

}  // namespace chordgen
