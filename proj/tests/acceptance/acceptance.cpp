// Acceptance gate. One PASS/FAIL line per criterion; exits non-zero if any fail.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "../smf_reader.h"
#include "chordgen/dataset.h"
#include "chordgen/error.h"
#include "chordgen/midi.h"
#include "chordgen/progression.h"
#include "chordgen/scale.h"
#include "chordgen/service.h"
#include "chordgen/variation.h"

using namespace chordgen;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok) ++failures;
}

void check(const std::string& name, const std::function<std::string()>& body) {
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  report(name, problem.empty(), problem);
}

// Allowed moves written out by hand, independent of the embedded tables.
// Token 8 is the minor 7Maj.
const std::map<int, std::vector<int>> kMajorRules = {
    {1, {1, 2, 3, 4, 5, 6, 7}}, {2, {5, 7}}, {3, {4, 6}}, {4, {1, 2, 5, 7}}, {5, {1, 6}}, {6, {2, 4}}, {7, {1}}};
const std::map<int, std::vector<int>> kMinorRules = {
    {1, {1, 2, 3, 4, 5, 6, 7, 8}}, {2, {5, 7}}, {3, {4, 6}}, {4, {1, 2, 5, 7}}, {5, {1, 6}},
    {6, {2, 4}},                   {7, {1}},    {8, {3}}};

bool allowed(const std::map<int, std::vector<int>>& rules, int a, int b) {
  const auto& next = rules.at(a);
  return std::find(next.begin(), next.end(), b) != next.end();
}

// Every word over the alphabet, filtered by the rules.
std::vector<std::string> bruteForce(const std::map<int, std::vector<int>>& rules, std::size_t length) {
  const int n = static_cast<int>(rules.size());
  std::vector<int> word(length, 1);
  std::vector<std::string> out;
  while (true) {
    bool ok = word[0] == 1;
    for (std::size_t i = 1; ok && i < length; ++i) ok = allowed(rules, word[i - 1], word[i]);
    if (ok) {
      std::string s;
      for (std::size_t i = 0; i < length; ++i) {
        if (i) s += ',';
        s += word[i] == 8 ? "7Maj" : std::to_string(word[i]);
      }
      out.push_back(s);
    }
    std::size_t k = length;
    while (k > 0 && word[k - 1] == n) word[--k] = 1;
    if (k == 0) break;
    ++word[k - 1];
  }
  return out;
}

std::string runCli(const std::string& args, int& exit_code) {
  std::string command = std::string(CHORDGEN_BIN) + " " + args;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    exit_code = -1;
    return "";
  }
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string csvLine(const DatasetRow& row) {
  std::ostringstream out;
  CsvWriter writer(out);
  writer.write(row);
  auto text = out.str();
  return text.substr(text.find('\n') + 1);
}

// Re-derives one row from its scale id and numeric progression.
std::string rederive(const DatasetRow& row, const std::map<int, std::vector<int>>& rules) {
  auto scale = parseScaleId(row.scale_id);
  if (scale.mode() != row.mode) return row.scale_id + ": mode column disagrees";
  if (row.number_progression.front() != kTonic) return row.scale_id + ": does not start on 1";
  for (std::size_t i = 1; i < row.number_progression.size(); ++i) {
    if (!allowed(rules, row.number_progression[i - 1].id(), row.number_progression[i].id())) {
      return row.scale_id + " " + joinTokens(row.number_progression) + ": illegal move";
    }
  }
  if (row.scale_progression.size() != row.number_progression.size()) return "length mismatch";
  for (std::size_t i = 0; i < row.number_progression.size(); ++i) {
    auto token = row.number_progression[i];
    const auto& symbol = row.scale_progression[i];
    auto root = toString(scale.degree(token.degreeIndex() + 1));
    if (symbol.rfind(root, 0) != 0) return symbol + " does not sit on degree " + toString(token);
    if (symbol != chordSymbol(scale, token)) return symbol + " != " + chordSymbol(scale, token);
  }
  if (makeRow(scale, row.number_progression) != row) return "makeRow disagrees";
  return "";
}

std::string names(const Triad& t) { return toString(t[0]) + " " + toString(t[1]) + " " + toString(t[2]); }

}  // namespace

int main() {
  const auto& major = TransitionTable::defaultTable(Mode::Major);
  const auto& minor = TransitionTable::defaultTable(Mode::Minor);

  check("enumeration equals brute-force and matrix-power oracles, L=2..8, both modes, under 60 s", [&]() -> std::string {
    auto start = std::chrono::steady_clock::now();
    for (auto [table, rules] : {std::pair{&major, &kMajorRules}, std::pair{&minor, &kMinorRules}}) {
      for (std::size_t length = 2; length <= 8; ++length) {
        std::vector<std::string> listed;
        for (const auto& p : enumerate(*table, length)) listed.push_back(p.toString());
        auto brute = bruteForce(*rules, length);
        std::set<std::string> unique(listed.begin(), listed.end());
        if (unique.size() != listed.size()) return "duplicates at L=" + std::to_string(length);
        if (std::set<std::string>(brute.begin(), brute.end()) != unique) {
          return "set differs from brute force at L=" + std::to_string(length);
        }
        if (countByMatrixPower(*table, length) != listed.size()) return "matrix count differs";
      }
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > 60) return "took " + std::to_string(seconds) + " s";
    return "";
  });

  check("anchored counts: major L=2 is 7, minor L=2 is 8, major L=3 is 20, L=4 is 63 / 70", [&]() -> std::string {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs = {
        {enumerate(major, 2).size(), 7}, {enumerate(minor, 2).size(), 8}, {enumerate(major, 3).size(), 20},
        {enumerate(major, 4).size(), 63}, {enumerate(minor, 4).size(), 70}};
    for (auto [got, want] : pairs) {
      if (got != want) return "got " + std::to_string(got) + " want " + std::to_string(want);
    }
    return "";
  });

  check("counts command prints computed and published figures with match flags", []() -> std::string {
    int code = 0;
    auto out = runCli("counts --length 4 --length 8", code);
    if (code != 0) return "exit " + std::to_string(code);
    for (const char* needle : {"73", "84", "157", "1533", "1764", "3297", "182094", "223122", "405216", "63", "70",
                               "1323", "1470", "127827", "149268", "MISMATCH"}) {
      if (out.find(needle) == std::string::npos) return std::string("missing ") + needle;
    }
    return "";
  });

  check("dataset rows per mode equal 21 x numeric count (L=4 and L=8)", [&]() -> std::string {
    for (std::size_t length : {4u, 8u}) {
      for (Mode mode : kBothModes) {
        Mode modes[] = {mode};
        auto rows = buildDataset(length, modes, [](const DatasetRow&) {});
        auto numeric = countByMatrixPower(TransitionTable::defaultTable(mode), length);
        if (rows != 21 * numeric) return std::to_string(rows) + " rows vs " + std::to_string(numeric);
      }
    }
    return "";
  });

  check("sample CSV rows are byte-exact", []() -> std::string {
    std::map<std::string, std::string> wanted = {
        {"C-major|1,1,1,1", "C-major,\"1,1,1,1\",\"C,C,C,C\",major\n"},
        {"C#-major|1,1,1,1", "C#-major,\"1,1,1,1\",\"C#,C#,C#,C#\",major\n"},
        {"A-minor|1,5,6,4", "A-minor,\"1,5,6,4\",\"Am,Em,F,Dm\",minor\n"}};
    std::size_t seen = 0;
    buildDataset(4, kBothModes, [&](const DatasetRow& row) {
      auto it = wanted.find(row.scale_id + "|" + joinTokens(row.number_progression));
      if (it == wanted.end()) return;
      if (csvLine(row) != it->second) throw std::runtime_error("got " + csvLine(row));
      ++seen;
    });
    return seen == wanted.size() ? "" : "rows missing";
  });

  check("C-major 1,5,6,4 keys are [C,E,G] [G,B,D] [A,C,E] [F,A,C]", []() -> std::string {
    ChordService service;
    auto body = service.baseProgression({{"scale", "C-major"}, {"progression", "1,5,6,4"}});
    auto want = nlohmann::json::parse(R"([["C","E","G"],["G","B","D"],["A","C","E"],["F","A","C"]])");
    if (body["keys_in_chord"] != want) return body["keys_in_chord"].dump();
    auto response = route(service, "POST", "/base-progression", {}, R"({"scale":"C-major","progression":"1,5,6,4"})");
    if (response.status != 200 || nlohmann::json::parse(response.body)["keys_in_chord"] != want) return "HTTP route";
    return "";
  });

  check("variations: C-major -> F-major, G-major, A-minor; A-minor -> C-major, D-minor, E-minor", []() -> std::string {
    auto c = alternates(parseScaleId("C-major"), parseProgression("1,5,6,4", Mode::Major));
    auto a = alternates(parseScaleId("A-minor"), parseProgression("1,5,6,4", Mode::Minor));
    std::vector<std::string> got;
    for (const auto& s : c.alternates) got.push_back(s.scale.id());
    for (const auto& s : a.alternates) got.push_back(s.scale.id());
    std::vector<std::string> want = {"F-major", "G-major", "A-minor", "C-major", "D-minor", "E-minor"};
    if (got != want) return "wrong alternates";
    if (renderSymbols(c.alternates[0].scale, c.base.progression) != std::vector<std::string>{"F", "C", "Dm", "Bb"}) {
      return "F-major rendering";
    }
    return "";
  });

  check("scale suite: 42 scales, seven letters each, G# major contains F##", []() -> std::string {
    const auto& scales = enumerateScales();
    if (scales.size() != 42) return std::to_string(scales.size()) + " scales";
    std::set<std::string> ids;
    for (const auto& s : scales) {
      ids.insert(s.id());
      std::set<Letter> letters;
      for (const auto& d : s.degrees()) letters.insert(d.letter());
      if (letters.size() != 7) return s.id() + " repeats a letter";
      auto steps = stepPattern(s.mode());
      for (int i = 0; i < 7; ++i) {
        int from = pitchClassValue(s.degrees()[i]);
        int to = pitchClassValue(s.degrees()[(i + 1) % 7]);
        if ((to - from + 12) % 12 != steps[i]) return s.id() + " has a wrong step";
      }
    }
    if (ids.size() != 42) return "duplicate ids";
    using Q = Quality;
    const std::vector<Q> major_q = {Q::Major, Q::Minor, Q::Minor, Q::Major, Q::Major, Q::Minor, Q::Diminished};
    const std::vector<Q> minor_q = {Q::Minor, Q::Diminished, Q::Major, Q::Minor,
                                    Q::Minor, Q::Major,      Q::Diminished, Q::Major};
    for (const auto& s : scales) {
      const auto& want = s.mode() == Mode::Major ? major_q : minor_q;
      for (std::size_t i = 0; i < want.size(); ++i) {
        DegreeToken token(static_cast<int>(i + 1));
        if (chordRootAndQuality(s, token).second != want[i]) return s.id() + " quality at " + toString(token);
        // Stacked intervals agree with the claimed quality wherever the triad is spellable.
        try {
          auto chord = diatonicChord(s, token, LeadingTone::Raised);
          int third = (pitchClassValue(chord.notes[1]) - pitchClassValue(chord.notes[0]) + 12) % 12;
          int fifth = (pitchClassValue(chord.notes[2]) - pitchClassValue(chord.notes[0]) + 12) % 12;
          if (third != thirds(want[i]).first || fifth != thirds(want[i]).first + thirds(want[i]).second) {
            return s.id() + " stack at " + toString(token);
          }
        } catch (const UnspellableNote&) {
        }
      }
    }
    auto g_sharp = parseScaleId("G#-major");
    std::string spelled;
    for (const auto& d : g_sharp.degrees()) spelled += toString(d) + " ";
    if (spelled != "G# A# B# C# D# E# F## ") return spelled;
    if (names(diatonicChord(parseScaleId("C-major"), DegreeToken(7)).notes) != "B D F") return "C-major vii";
    return "";
  });

  check("MIDI: C4 = 60, 120 BPM tempo is 500000 us, SMF re-parses", []() -> std::string {
    if (toMidi(parsePitch("C4")) != 60) return "C4";
    if (microsecondsPerQuarter(120) != 500000) return "tempo";
    auto scale = parseScaleId("C-major");
    auto triads = renderTriads(scale, parseProgression("1,5,6,4", Mode::Major));
    PlaybackConfig config;
    auto events = toTimedEvents(getMusicNotes(triads, config), config);
    auto file = smf_oracle::parse(encodeSmf(events, config));
    if (file.tempos.size() != 1 || file.tempos[0] != 500000) return "tempo meta";
    if (file.notes.size() != 12 || !file.end_of_track) return "note count";
    std::sort(file.notes.begin(), file.notes.end());
    std::vector<int> keys;
    for (const auto& n : file.notes) keys.push_back(n.key);
    if (keys != std::vector<int>{60, 64, 67, 67, 71, 74, 69, 72, 76, 65, 69, 72}) return "keys";
    return "";
  });

  check("every 4-chord row and a seeded 10,000-row sample of 8-chord rows re-derive after CSV round trip",
        []() -> std::string {
          for (std::size_t length : {4u, 8u}) {
            std::stringstream buffer;
            CsvWriter writer(buffer);
            buildDataset(length, kBothModes, [&](const DatasetRow& row) { writer.write(row); });
            auto rows = readCsv(buffer);
            if (rows.size() != writer.rows()) return "row count changed in round trip";
            std::vector<std::size_t> picks(rows.size());
            for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
            if (length == 8) {
              std::mt19937_64 rng(8128);
              std::shuffle(picks.begin(), picks.end(), rng);
              picks.resize(10000);
            }
            for (auto i : picks) {
              const auto& row = rows[i];
              auto problem = rederive(row, row.mode == Mode::Major ? kMajorRules : kMinorRules);
              if (!problem.empty()) return problem;
            }
          }
          return "";
        });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
