// chordgen: enumerate progressions, export datasets and MIDI, and serve the explorer API.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chordgen/dataset.h"
#include "chordgen/error.h"
#include "chordgen/midi.h"
#include "chordgen/progression.h"
#include "chordgen/service.h"
#include "chordgen/variation.h"

namespace {

using namespace chordgen;

constexpr int kDefaultPort = 8080;
constexpr const char* kPortEnv = "CHORDGEN_PORT";

// Opens --out, or returns std::cout when it is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw SinkFailure("cannot open " + path + " for writing");
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool isStdout() const { return !file_; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<Mode> modesFor(const std::string& mode) {
  if (mode == "both") return {Mode::Major, Mode::Minor};
  return {parseMode(mode)};
}

struct Selection {
  Scale scale;
  NumericProgression progression;
};

Selection selectProgression(const std::string& scale_id, const std::string& progression_text) {
  Scale scale = parseScaleId(scale_id);
  auto progression = parseProgression(progression_text, scale.mode());
  if (auto violation = findViolation(progression, TransitionTable::defaultTable(scale.mode()))) {
    throw InvalidProgression(*violation);
  }
  return {scale, progression};
}

std::string joinSymbols(const std::vector<std::string>& symbols) {
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) out += (i ? "," : "") + symbols[i];
  return out;
}

struct EnumerateArgs {
  std::string mode = "both";
  std::size_t length = 4;
  std::string format = "text";
  std::string out;
  std::string table;
};

int runEnumerate(const EnumerateArgs& args) {
  std::vector<TransitionTable> tables;
  if (!args.table.empty()) {
    tables.push_back(loadTransitionTableFile(args.table));
    if (args.mode != "both" && parseMode(args.mode) != tables.back().mode()) {
      throw InvalidArgument("--mode " + args.mode + " does not match the table's mode");
    }
  } else {
    for (Mode mode : modesFor(args.mode)) tables.push_back(TransitionTable::defaultTable(mode));
  }

  Output output(args.out);
  auto& out = output.stream();
  if (args.format == "csv") out << "mode,number_progression\n";
  std::uint64_t total = 0;
  for (const auto& table : tables) {
    total += forEachProgression(table, args.length, [&](std::span<const DegreeToken> tokens) {
      if (args.format == "text") {
        out << joinTokens(tokens) << '\n';
      } else if (args.format == "csv") {
        out << toString(table.mode()) << ',' << csvField(joinTokens(tokens)) << '\n';
      } else {
        nlohmann::json j = {{"mode", toString(table.mode())}, {"number_progression", tokenStrings(tokens)}};
        out << j.dump() << '\n';
      }
      return true;
    });
  }
  out.flush();
  if (!out) throw SinkFailure("failed writing progressions");
  std::cout << "Total Possibilities: " << total << '\n';
  return 0;
}

struct DatasetArgs {
  std::string mode = "both";
  std::size_t length = 4;
  std::string format = "csv";
  std::string out;
  std::string leading_tone = "natural";
};

int runDataset(const DatasetArgs& args) {
  auto modes = modesFor(args.mode);
  auto leading = parseLeadingTone(args.leading_tone);
  Output output(args.out);
  std::uint64_t rows = 0;
  if (args.format == "csv") {
    CsvWriter writer(output.stream());
    rows = buildDataset(args.length, modes, [&](const DatasetRow& row) { writer.write(row); }, leading);
  } else {
    JsonLinesWriter writer(output.stream());
    rows = buildDataset(args.length, modes, [&](const DatasetRow& row) { writer.write(row); }, leading);
  }
  output.stream().flush();
  (output.isStdout() ? std::cerr : std::cout) << "rows: " << rows << '\n';
  return 0;
}

int runCounts(const std::vector<std::size_t>& lengths) {
  std::cout << formatCountsReport(countsReport(lengths));
  return 0;
}

int runAlternates(const std::string& scale_id, const std::string& progression, const std::string& leading_tone) {
  auto leading = parseLeadingTone(leading_tone);
  auto [scale, numeric] = selectProgression(scale_id, progression);
  auto set = alternates(scale, numeric);
  auto print = [&](const char* role, const ScaledProgression& entry) {
    std::cout << role << ' ' << entry.scale.id() << ' ' << entry.progression.toString() << ' '
              << joinSymbols(renderSymbols(entry.scale, entry.progression, leading)) << '\n';
  };
  print("base", set.base);
  for (const auto& alternate : set.alternates) print("alternate", alternate);
  return 0;
}

struct MidiArgs {
  std::string scale;
  std::string progression;
  int tempo = kDefaultTempoBpm;
  int octave = kDefaultPlaybackOctave;
  std::string voicing = "ascending";
  int variation = 0;
  std::string leading_tone = "natural";
  std::string out;
};

int runExportMidi(const MidiArgs& args) {
  PlaybackConfig config;
  config.tempo_bpm = args.tempo;
  config.octave = args.octave;
  config.voicing = parseVoicing(args.voicing);
  config.validate();
  auto [scale, numeric] = selectProgression(args.scale, args.progression);
  auto set = alternates(scale, numeric);
  const auto& chosen = args.variation == 0 ? set.base : set.alternates.at(args.variation - 1);
  auto triads = renderTriads(chosen.scale, chosen.progression, parseLeadingTone(args.leading_tone));
  auto events = toTimedEvents(getMusicNotes(triads, config), config);
  Output output(args.out);
  auto bytes = writeSmf(events, config, output.stream());
  output.stream().flush();
  if (!output.isStdout()) std::cout << "wrote " << bytes << " bytes to " << args.out << '\n';
  return 0;
}

HttpServer* g_server = nullptr;

extern "C" void onSignal(int) {
  if (g_server) g_server->stop();
}

struct ServeArgs {
  std::string host = "127.0.0.1";
  std::optional<int> port;
  std::string dataset;
  std::string leading_tone = "natural";
  std::string voicing = "ascending";
};

int runServe(const ServeArgs& args) {
  int port = kDefaultPort;
  if (const char* env = std::getenv(kPortEnv)) port = std::stoi(env);
  if (args.port) port = *args.port;

  ServiceOptions options;
  options.leading_tone = parseLeadingTone(args.leading_tone);
  options.voicing = parseVoicing(args.voicing);
  if (!args.dataset.empty()) options.dataset = args.dataset;
  ChordService service(options);
  HttpServer server(service);
  int bound = server.bind(args.host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << args.host << ':' << port << '\n';
    return 1;
  }
  g_server = &server;
  std::signal(SIGINT, onSignal);
  std::signal(SIGTERM, onSignal);
  std::cout << "listening on http://" << args.host << ':' << bound << std::endl;
  bool ok = server.listen();
  g_server = nullptr;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enumerate chord progressions, export datasets and MIDI, serve the explorer API"};
  app.require_subcommand(1);

  const std::vector<std::string> kModes = {"major", "minor", "both"};
  const std::vector<std::string> kLeading = {"natural", "raised"};
  const std::vector<std::string> kVoicings = {"ascending", "same-octave"};

  EnumerateArgs enumerate_args;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "List every numeric progression of a length");
  enumerate_cmd->add_option("--mode", enumerate_args.mode)->check(CLI::IsMember(kModes))->capture_default_str();
  enumerate_cmd->add_option("--length", enumerate_args.length)->check(CLI::Range(2, 64))->capture_default_str();
  enumerate_cmd->add_option("--format", enumerate_args.format)
      ->check(CLI::IsMember({"text", "csv", "jsonl"}))
      ->capture_default_str();
  enumerate_cmd->add_option("--out", enumerate_args.out, "Output file (default: stdout)");
  enumerate_cmd->add_option("--table", enumerate_args.table, "Transition table document")->check(CLI::ExistingFile);

  DatasetArgs dataset_args;
  auto* dataset_cmd = app.add_subcommand("dataset", "Expand progressions across all 21 scales per mode");
  dataset_cmd->add_option("--mode", dataset_args.mode)->check(CLI::IsMember(kModes))->capture_default_str();
  dataset_cmd->add_option("--length", dataset_args.length)->check(CLI::Range(1, 16))->capture_default_str();
  dataset_cmd->add_option("--format", dataset_args.format)
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  dataset_cmd->add_option("--out", dataset_args.out, "Output file (default: stdout)");
  dataset_cmd->add_option("--leading-tone", dataset_args.leading_tone)
      ->check(CLI::IsMember(kLeading))
      ->capture_default_str();

  std::vector<std::size_t> count_lengths;
  auto* counts_cmd = app.add_subcommand("counts", "Compare computed counts with the published totals");
  counts_cmd->add_option("--length", count_lengths, "Progression length (repeatable; default 4 and 8)")
      ->check(CLI::Range(1, 64));

  std::string alt_scale, alt_progression, alt_leading = "natural";
  auto* alternates_cmd = app.add_subcommand("alternates", "Show a progression and its three variations");
  alternates_cmd->add_option("--scale", alt_scale, "Scale id, e.g. C-major")->required();
  alternates_cmd->add_option("--progression", alt_progression, "e.g. 1,5,6,4")->required();
  alternates_cmd->add_option("--leading-tone", alt_leading)->check(CLI::IsMember(kLeading))->capture_default_str();

  MidiArgs midi_args;
  auto* midi_cmd = app.add_subcommand("export-midi", "Write a progression as a Standard MIDI File");
  midi_cmd->add_option("--scale", midi_args.scale)->required();
  midi_cmd->add_option("--progression", midi_args.progression)->required();
  midi_cmd->add_option("--tempo", midi_args.tempo)->capture_default_str();
  midi_cmd->add_option("--octave", midi_args.octave)->capture_default_str();
  midi_cmd->add_option("--voicing", midi_args.voicing)->check(CLI::IsMember(kVoicings))->capture_default_str();
  midi_cmd->add_option("--variation", midi_args.variation, "0 = base, 1..3 = alternates")
      ->check(CLI::Range(0, 3))
      ->capture_default_str();
  midi_cmd->add_option("--leading-tone", midi_args.leading_tone)->check(CLI::IsMember(kLeading))->capture_default_str();
  midi_cmd->add_option("--out", midi_args.out, "Output .mid file (default: stdout)");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
  serve_cmd->add_option("--host", serve_args.host)->capture_default_str();
  serve_cmd->add_option("--port", serve_args.port, std::string("Port (default ") + kPortEnv + " or 8080)");
  serve_cmd->add_option("--dataset", serve_args.dataset, "Serve from a pre-generated dataset CSV")
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--leading-tone", serve_args.leading_tone)->check(CLI::IsMember(kLeading))->capture_default_str();
  serve_cmd->add_option("--voicing", serve_args.voicing)->check(CLI::IsMember(kVoicings))->capture_default_str();

  std::string table_mode = "major";
  bool no_self_loop = false;
  auto* table_cmd = app.add_subcommand("show-table", "Print a built-in transition table document");
  table_cmd->add_option("--mode", table_mode)->check(CLI::IsMember({"major", "minor"}))->capture_default_str();
  table_cmd->add_flag("--no-self-loop", no_self_loop, "The variant without the tonic self-loop");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enumerate_cmd) return runEnumerate(enumerate_args);
    if (*dataset_cmd) return runDataset(dataset_args);
    if (*counts_cmd) {
      if (count_lengths.empty()) count_lengths = {4, 8};
      return runCounts(count_lengths);
    }
    if (*alternates_cmd) return runAlternates(alt_scale, alt_progression, alt_leading);
    if (*midi_cmd) return runExportMidi(midi_args);
    if (*serve_cmd) return runServe(serve_args);
    if (*table_cmd) {
      Mode mode = parseMode(table_mode);
      std::cout << (no_self_loop ? noSelfLoopTableDocument(mode) : defaultTableDocument(mode));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << toString(e.kind()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
