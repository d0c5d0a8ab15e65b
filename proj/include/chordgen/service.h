// HTTP-facing service: request validation, response records and routing.
//
// Endpoints
//   GET  /health
//   GET  /scales
//   GET  /progressions?mode=major|minor&length=N&page=P&page_size=S
//   POST /base-progression   {"scale": "C-major", "progression": "1,5,6,4"}
//   POST /midi               {"scale", "progression", "tempo", "octave",
//                             "voicing", "variation"}
//
// Errors are JSON {"error": <kind>, "message": <text>} with a 4xx status.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "chordgen/midi.h"
#include "chordgen/progression.h"
#include "chordgen/scale.h"

namespace chordgen {

inline constexpr std::size_t kDefaultPageSize = 100;
inline constexpr std::size_t kMaxPageSize = 1000;
inline constexpr std::size_t kMaxServedLength = 16;

struct ServiceOptions {
  LeadingTone leading_tone = LeadingTone::Natural;
  Voicing voicing = Voicing::Ascending;
  /// Serve progressions and base scale progressions from a dataset CSV
  /// instead of computing them.
  std::optional<std::filesystem::path> dataset;
};

/// A 4xx outcome with a machine-readable reason.
class RequestError : public std::runtime_error {
 public:
  RequestError(int status, std::string reason, const std::string& message)
      : std::runtime_error(message), status_(status), reason_(std::move(reason)) {}
  int status() const { return status_; }
  const std::string& reason() const { return reason_; }

 private:
  int status_;
  std::string reason_;
};

class DatasetIndex;

/// Stateless apart from the optional read-only dataset index; safe to call
/// from many threads at once.
class ChordService {
 public:
  explicit ChordService(ServiceOptions options = {});
  ~ChordService();
  ChordService(ChordService&&) noexcept;
  ChordService& operator=(ChordService&&) noexcept;

  nlohmann::json health() const;
  nlohmann::json scales() const;
  nlohmann::json progressions(Mode mode, std::size_t length, std::size_t page, std::size_t page_size) const;
  /// BaseProgressionResponse for {"scale", "progression"}.
  nlohmann::json baseProgression(const nlohmann::json& request) const;
  /// SMF bytes for {"scale", "progression", "tempo", "octave", ...}.
  std::vector<std::uint8_t> midi(const nlohmann::json& request) const;

  const ServiceOptions& options() const { return options_; }

 private:
  struct Selection {
    Scale scale;
    NumericProgression progression;
  };
  Selection select(const nlohmann::json& request) const;
  std::vector<std::string> baseSymbols(const Selection& selection) const;

  ServiceOptions options_;
  std::unique_ptr<DatasetIndex> dataset_;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

using QueryParams = std::multimap<std::string, std::string>;

/// Dispatches one request. Never throws.
HttpResponse route(const ChordService& service, std::string_view method, std::string_view path,
                   const QueryParams& query, std::string_view body);

/// Blocking HTTP listener over route().
class HttpServer {
 public:
  explicit HttpServer(const ChordService& service);
  ~HttpServer();

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); returns false if the listener failed.
  bool listen();
  /// Completes in-flight requests, then makes listen() return.
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace chordgen
