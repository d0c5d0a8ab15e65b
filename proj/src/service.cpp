#include "chordgen/service.h"

#include <charconv>
#include <fstream>
#include <unordered_map>

#include "chordgen/dataset.h"
#include "chordgen/error.h"
#include "chordgen/variation.h"

namespace chordgen {

using nlohmann::json;

// Read-only view of a pre-generated dataset CSV.
class DatasetIndex {
 public:
  explicit DatasetIndex(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open dataset " + path.string());
    readCsv(in, [&](const DatasetRow& row) {
      auto progression = joinTokens(row.number_progression);
      auto& listed = progressions_[key(row.mode, row.number_progression.size())];
      auto& seen = seen_[key(row.mode, row.number_progression.size())];
      if (seen.emplace(progression, listed.size()).second) listed.push_back(progression);
      symbols_.emplace(row.scale_id + "|" + progression, row.scale_progression);
    });
  }

  const std::vector<std::string>* progressions(Mode mode, std::size_t length) const {
    auto it = progressions_.find(key(mode, length));
    return it == progressions_.end() ? nullptr : &it->second;
  }

  const std::vector<std::string>* symbols(const std::string& scale_id, const std::string& progression) const {
    auto it = symbols_.find(scale_id + "|" + progression);
    return it == symbols_.end() ? nullptr : &it->second;
  }

 private:
  static std::string key(Mode mode, std::size_t length) {
    return std::string(toString(mode)) + "/" + std::to_string(length);
  }

  std::unordered_map<std::string, std::vector<std::string>> progressions_;
  std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> seen_;
  std::unordered_map<std::string, std::vector<std::string>> symbols_;
};

namespace {

json triadsJson(const std::vector<Triad>& triads) {
  json out = json::array();
  for (const auto& triad : triads) {
    out.push_back({toString(triad[0]), toString(triad[1]), toString(triad[2])});
  }
  return out;
}

const json& requireField(const json& request, const char* name) {
  if (!request.is_object() || !request.contains(name)) {
    throw RequestError(400, "MissingField", std::string("request needs a '") + name + "' field");
  }
  return request.at(name);
}

int integerField(const json& request, const char* name, int fallback) {
  if (!request.is_object() || !request.contains(name)) return fallback;
  const auto& value = request.at(name);
  if (!value.is_number_integer()) {
    throw RequestError(400, "InvalidArgument", std::string("'") + name + "' must be an integer");
  }
  return value.get<int>();
}

std::string progressionText(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) out += ',';
      if (value[i].is_string()) {
        out += value[i].get<std::string>();
      } else if (value[i].is_number_integer()) {
        out += std::to_string(value[i].get<int>());
      } else {
        throw RequestError(400, "InvalidArgument", "progression entries must be strings or integers");
      }
    }
    return out;
  }
  throw RequestError(400, "InvalidArgument", "'progression' must be a string like \"1,5,6,4\" or an array");
}

}  // namespace

ChordService::ChordService(ServiceOptions options) : options_(std::move(options)) {
  if (options_.dataset) dataset_ = std::make_unique<DatasetIndex>(*options_.dataset);
}

ChordService::~ChordService() = default;
ChordService::ChordService(ChordService&&) noexcept = default;
ChordService& ChordService::operator=(ChordService&&) noexcept = default;

json ChordService::health() const {
  return {{"status", "ok"}, {"source", dataset_ ? "dataset" : "computed"}};
}

json ChordService::scales() const {
  json ids = json::array();
  for (const auto& scale : enumerateScales()) ids.push_back(scale.id());
  return {{"count", ids.size()}, {"scales", ids}};
}

json ChordService::progressions(Mode mode, std::size_t length, std::size_t page, std::size_t page_size) const {
  if (length < 1 || length > kMaxServedLength) {
    throw RequestError(400, "InvalidArgument",
                       "length must be in [1, " + std::to_string(kMaxServedLength) + "]");
  }
  if (page_size < 1 || page_size > kMaxPageSize) {
    throw RequestError(400, "InvalidArgument",
                       "page_size must be in [1, " + std::to_string(kMaxPageSize) + "]");
  }
  const std::uint64_t first = static_cast<std::uint64_t>(page) * page_size;
  json items = json::array();
  std::uint64_t total = 0;
  if (dataset_) {
    const auto* listed = dataset_->progressions(mode, length);
    if (listed) {
      total = listed->size();
      for (std::uint64_t i = first; i < total && items.size() < page_size; ++i) items.push_back((*listed)[i]);
    }
  } else {
    const auto& table = TransitionTable::defaultTable(mode);
    total = countByMatrixPower(table, length);
    std::uint64_t index = 0;
    if (first < total) {
      forEachProgression(table, length, [&](std::span<const DegreeToken> tokens) {
        if (index++ >= first) items.push_back(joinTokens(tokens));
        return items.size() < page_size;
      });
    }
  }
  return {{"mode", toString(mode)},   {"length", length},       {"total", total},
          {"page", page},             {"page_size", page_size}, {"progressions", items}};
}

ChordService::Selection ChordService::select(const json& request) const {
  const auto& scale_field = requireField(request, "scale");
  if (!scale_field.is_string()) throw RequestError(400, "InvalidArgument", "'scale' must be a string");
  Scale scale = parseScaleId(scale_field.get<std::string>());
  auto progression = parseProgression(progressionText(requireField(request, "progression")), scale.mode());
  if (auto violation = findViolation(progression, TransitionTable::defaultTable(scale.mode()))) {
    throw InvalidProgression(*violation);
  }
  return {scale, progression};
}

std::vector<std::string> ChordService::baseSymbols(const Selection& selection) const {
  if (!dataset_) return renderSymbols(selection.scale, selection.progression, options_.leading_tone);
  const auto* symbols = dataset_->symbols(selection.scale.id(), selection.progression.toString());
  if (!symbols) {
    throw RequestError(400, "NotInDataset",
                       selection.scale.id() + " " + selection.progression.toString() +
                           " is not in the loaded dataset");
  }
  return *symbols;
}

json ChordService::baseProgression(const json& request) const {
  auto selection = select(request);
  auto set = alternates(selection.scale, selection.progression);
  const auto leading = options_.leading_tone;

  json variations = json::array();
  for (const auto& alternate : set.alternates) {
    variations.push_back({{"scale", alternate.scale.id()},
                          {"scale_progression", renderSymbols(alternate.scale, alternate.progression, leading)},
                          {"keys_in_chord", triadsJson(renderTriads(alternate.scale, alternate.progression, leading))}});
  }
  return {{"scale", selection.scale.id()},
          {"mode", toString(selection.scale.mode())},
          {"numeric_progression", tokenStrings(selection.progression.tokens)},
          {"scale_progression", baseSymbols(selection)},
          {"keys_in_chord", triadsJson(renderTriads(selection.scale, selection.progression, leading))},
          {"chords_in_scale", chordSymbolsInScale(selection.scale, leading)},
          {"variations", variations}};
}

std::vector<std::uint8_t> ChordService::midi(const json& request) const {
  auto selection = select(request);
  PlaybackConfig config;
  config.tempo_bpm = integerField(request, "tempo", kDefaultTempoBpm);
  config.octave = integerField(request, "octave", kDefaultPlaybackOctave);
  config.voicing = options_.voicing;
  if (request.contains("voicing")) {
    if (!request["voicing"].is_string()) throw RequestError(400, "InvalidArgument", "'voicing' must be a string");
    config.voicing = parseVoicing(request["voicing"].get<std::string>());
  }
  config.validate();

  int variation = integerField(request, "variation", 0);
  if (variation < 0 || variation > 3) {
    throw RequestError(400, "InvalidArgument", "'variation' must be 0 (base) or 1..3");
  }
  auto set = alternates(selection.scale, selection.progression);
  const auto& chosen = variation == 0 ? set.base : set.alternates[variation - 1];
  auto triads = renderTriads(chosen.scale, chosen.progression, options_.leading_tone);
  auto events = toTimedEvents(getMusicNotes(triads, config), config);
  return encodeSmf(events, config);
}

namespace {

HttpResponse jsonResponse(int status, const json& body) {
  return {status, "application/json", body.dump()};
}

HttpResponse errorResponse(int status, std::string_view reason, std::string_view message) {
  return jsonResponse(status, {{"error", reason}, {"message", message}});
}

std::optional<std::string> queryValue(const QueryParams& query, const std::string& name) {
  auto it = query.find(name);
  if (it == query.end()) return std::nullopt;
  return it->second;
}

std::size_t sizeParam(const QueryParams& query, const std::string& name, std::size_t fallback) {
  auto text = queryValue(query, name);
  if (!text) return fallback;
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text->data(), text->data() + text->size(), value);
  if (ec != std::errc() || end != text->data() + text->size()) {
    throw RequestError(400, "InvalidArgument", "'" + name + "' must be a non-negative integer");
  }
  return value;
}

json parseBody(std::string_view body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw RequestError(400, "MalformedRequest", std::string("request body is not JSON: ") + e.what());
  }
}

}  // namespace

HttpResponse route(const ChordService& service, std::string_view method, std::string_view path,
                   const QueryParams& query, std::string_view body) {
  struct Route {
    std::string_view method;
    std::string_view path;
  };
  static constexpr Route kRoutes[] = {{"GET", "/health"},
                                      {"GET", "/scales"},
                                      {"GET", "/progressions"},
                                      {"POST", "/base-progression"},
                                      {"POST", "/midi"}};
  try {
    bool known_path = false;
    for (const auto& r : kRoutes) {
      if (r.path != path) continue;
      known_path = true;
      if (r.method != method) continue;
      if (path == "/health") return jsonResponse(200, service.health());
      if (path == "/scales") return jsonResponse(200, service.scales());
      if (path == "/progressions") {
        Mode mode = parseMode(queryValue(query, "mode").value_or("major"));
        return jsonResponse(200, service.progressions(mode, sizeParam(query, "length", 4),
                                                      sizeParam(query, "page", 0),
                                                      sizeParam(query, "page_size", kDefaultPageSize)));
      }
      if (path == "/base-progression") return jsonResponse(200, service.baseProgression(parseBody(body)));
      auto bytes = service.midi(parseBody(body));
      return {200, "audio/midi", std::string(bytes.begin(), bytes.end())};
    }
    if (known_path) return errorResponse(405, "MethodNotAllowed", std::string(method) + " is not supported here");
    return errorResponse(404, "NotFound", "no route for " + std::string(path));
  } catch (const RequestError& e) {
    return errorResponse(e.status(), e.reason(), e.what());
  } catch (const Error& e) {
    return errorResponse(400, toString(e.kind()), e.what());
  } catch (const std::exception& e) {
    return errorResponse(500, "InternalError", e.what());
  }
}

}  // namespace chordgen
