#include "chordgen/progression.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "chordgen/error.h"

namespace chordgen {

namespace {

constexpr std::string_view kMajorDocument = R"(# Major transitions: itemized chart rules, tonic may repeat.
mode: major
start: 1
1 -> 1 2 3 4 5 6 7
2 -> 5 7
3 -> 4 6
4 -> 1 2 5 7
5 -> 1 6
6 -> 2 4
7 -> 1
)";

constexpr std::string_view kMinorDocument = R"(# Minor transitions: itemized chart rules, tonic may repeat.
# 7 is the diminished chord on the seventh degree, 7Maj the major one.
mode: minor
start: 1
1 -> 1 2 3 4 5 6 7 7Maj
2 -> 5 7
3 -> 4 6
4 -> 1 2 5 7
5 -> 1 6
6 -> 2 4
7 -> 1
7Maj -> 3
)";

constexpr std::string_view kMajorNoSelfLoopDocument = R"(# Major transitions without the tonic self-loop.
mode: major
start: 1
1 -> 2 3 4 5 6 7
2 -> 5 7
3 -> 4 6
4 -> 1 2 5 7
5 -> 1 6
6 -> 2 4
7 -> 1
)";

constexpr std::string_view kMinorNoSelfLoopDocument = R"(# Minor transitions without the tonic self-loop.
mode: minor
start: 1
1 -> 2 3 4 5 6 7 7Maj
2 -> 5 7
3 -> 4 6
4 -> 1 2 5 7
5 -> 1 6
6 -> 2 4
7 -> 1
7Maj -> 3
)";

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(ws);
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> splitWords(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

DegreeToken tableToken(std::string_view text, Mode mode, std::size_t line) {
  DegreeToken token;
  try {
    token = parseDegreeToken(text);
  } catch (const InvalidDegreeToken&) {
    throw MalformedTable("line " + std::to_string(line) + ": unknown token '" + std::string(text) + "'");
  }
  if (!validFor(token, mode)) {
    throw MalformedTable("line " + std::to_string(line) + ": token " + toString(token) +
                         " is not defined for " + std::string(toString(mode)) + " tables");
  }
  return token;
}

bool checkedAdd(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return !__builtin_add_overflow(a, b, &out);
}

bool checkedMul(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return !__builtin_mul_overflow(a, b, &out);
}

using CountMatrix = std::vector<std::vector<std::uint64_t>>;

CountMatrix multiply(const CountMatrix& a, const CountMatrix& b) {
  const std::size_t n = a.size();
  CountMatrix out(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t term;
        if (!checkedMul(a[i][k], b[k][j], term) || !checkedAdd(out[i][j], term, out[i][j])) {
          throw Overflow("progression count exceeds 64-bit range");
        }
      }
    }
  }
  return out;
}

void enumerateFrom(const TransitionTable& table, std::size_t length, std::vector<DegreeToken>& path,
                   const std::function<bool(std::span<const DegreeToken>)>& visitor,
                   std::uint64_t& visited, bool& stopped) {
  if (path.size() == length) {
    ++visited;
    if (!visitor(path)) stopped = true;
    return;
  }
  for (DegreeToken next : table.successors(path.back())) {
    path.push_back(next);
    enumerateFrom(table, length, path, visitor, visited, stopped);
    path.pop_back();
    if (stopped) return;
  }
}

}  // namespace

TransitionTable::TransitionTable(Mode mode, std::map<DegreeToken, std::vector<DegreeToken>> edges,
                                 DegreeToken start)
    : mode_(mode), edges_(std::move(edges)), start_(start) {
  if (start_ != kTonic) {
    throw MalformedTable("start token must be 1, got " + toString(start_));
  }
  if (!edges_.contains(start_)) throw MalformedTable("no rule for the start token 1");
  for (const auto& [from, successors] : edges_) {
    if (!validFor(from, mode_)) {
      throw MalformedTable("token " + toString(from) + " is not defined for " +
                           std::string(toString(mode_)) + " tables");
    }
    if (successors.empty()) throw MalformedTable("token " + toString(from) + " has no successors");
    std::set<DegreeToken> seen;
    for (DegreeToken to : successors) {
      if (!validFor(to, mode_)) {
        throw MalformedTable("successor " + toString(to) + " of " + toString(from) +
                             " is not defined for " + std::string(toString(mode_)) + " tables");
      }
      if (!edges_.contains(to)) {
        throw MalformedTable("token " + toString(to) + " is reachable from " + toString(from) +
                             " but has no successors");
      }
      if (!seen.insert(to).second) {
        throw MalformedTable("duplicate successor " + toString(to) + " of " + toString(from));
      }
    }
  }
  std::set<DegreeToken> reached{start_};
  std::vector<DegreeToken> frontier{start_};
  while (!frontier.empty()) {
    DegreeToken from = frontier.back();
    frontier.pop_back();
    for (DegreeToken to : edges_.at(from)) {
      if (reached.insert(to).second) frontier.push_back(to);
    }
  }
  for (const auto& [from, successors] : edges_) {
    if (!reached.contains(from)) {
      throw MalformedTable("token " + toString(from) + " is unreachable from the tonic");
    }
  }
}

std::vector<DegreeToken> TransitionTable::tokens() const {
  std::vector<DegreeToken> out;
  for (const auto& entry : edges_) out.push_back(entry.first);
  return out;
}

std::span<const DegreeToken> TransitionTable::successors(DegreeToken from) const {
  auto it = edges_.find(from);
  if (it == edges_.end()) return {};
  return it->second;
}

bool TransitionTable::hasEdge(DegreeToken from, DegreeToken to) const {
  auto next = successors(from);
  return std::find(next.begin(), next.end(), to) != next.end();
}

const TransitionTable& TransitionTable::defaultTable(Mode mode) {
  static const TransitionTable major = loadTransitionTable(kMajorDocument);
  static const TransitionTable minor = loadTransitionTable(kMinorDocument);
  return mode == Mode::Major ? major : minor;
}

const TransitionTable& TransitionTable::withoutTonicSelfLoop(Mode mode) {
  static const TransitionTable major = loadTransitionTable(kMajorNoSelfLoopDocument);
  static const TransitionTable minor = loadTransitionTable(kMinorNoSelfLoopDocument);
  return mode == Mode::Major ? major : minor;
}

std::string_view defaultTableDocument(Mode mode) {
  return mode == Mode::Major ? kMajorDocument : kMinorDocument;
}

std::string_view noSelfLoopTableDocument(Mode mode) {
  return mode == Mode::Major ? kMajorNoSelfLoopDocument : kMinorNoSelfLoopDocument;
}

TransitionTable loadTransitionTable(std::string_view document) {
  std::optional<Mode> mode;
  DegreeToken start = kTonic;
  std::vector<std::pair<std::size_t, std::string_view>> rules;

  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    auto line = document.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.starts_with("mode:")) {
      try {
        mode = parseMode(trim(line.substr(5)));
      } catch (const InvalidArgument& e) {
        throw MalformedTable("line " + std::to_string(line_number) + ": " + e.what());
      }
    } else if (line.starts_with("start:")) {
      rules.emplace_back(line_number, line);
    } else if (line.find("->") != std::string_view::npos) {
      rules.emplace_back(line_number, line);
    } else {
      throw MalformedTable("line " + std::to_string(line_number) + ": expected 'mode:', 'start:' or '<token> -> <successors>'");
    }
  }
  if (!mode) throw MalformedTable("document has no 'mode:' line");

  std::map<DegreeToken, std::vector<DegreeToken>> edges;
  for (auto [number, line] : rules) {
    if (line.starts_with("start:")) {
      start = tableToken(trim(line.substr(6)), *mode, number);
      continue;
    }
    auto arrow = line.find("->");
    auto from = tableToken(trim(line.substr(0, arrow)), *mode, number);
    if (edges.contains(from)) {
      throw MalformedTable("line " + std::to_string(number) + ": second rule for token " + toString(from));
    }
    auto& successors = edges[from];
    for (auto word : splitWords(line.substr(arrow + 2))) {
      successors.push_back(tableToken(word, *mode, number));
    }
  }
  return TransitionTable(*mode, std::move(edges), start);
}

TransitionTable loadTransitionTableFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedTable("cannot open table document " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return loadTransitionTable(buffer.str());
}

std::string serialize(const TransitionTable& table) {
  std::string out = "mode: " + std::string(toString(table.mode())) + "\n";
  out += "start: " + toString(table.start()) + "\n";
  for (DegreeToken from : table.tokens()) {
    out += toString(from) + " ->";
    for (DegreeToken to : table.successors(from)) out += " " + toString(to);
    out += "\n";
  }
  return out;
}

std::string NumericProgression::toString() const { return joinTokens(tokens); }

std::string joinTokens(std::span<const DegreeToken> tokens, char separator) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += separator;
    out += chordgen::toString(tokens[i]);
  }
  return out;
}

std::vector<std::string> tokenStrings(std::span<const DegreeToken> tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (DegreeToken t : tokens) out.push_back(toString(t));
  return out;
}

NumericProgression parseProgression(std::string_view text, Mode mode) {
  NumericProgression out{mode, {}};
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto part = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    auto token = parseDegreeToken(part);
    if (!validFor(token, mode)) {
      throw InvalidDegreeToken("token " + toString(token) + " is not defined for " +
                               std::string(toString(mode)) + " progressions");
    }
    out.tokens.push_back(token);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::uint64_t forEachProgression(const TransitionTable& table, std::size_t length,
                                 const std::function<bool(std::span<const DegreeToken>)>& visitor) {
  if (length == 0) throw InvalidArgument("progression length must be at least 1");
  std::vector<DegreeToken> path{table.start()};
  path.reserve(length);
  std::uint64_t visited = 0;
  bool stopped = false;
  enumerateFrom(table, length, path, visitor, visited, stopped);
  return visited;
}

std::vector<NumericProgression> enumerate(const TransitionTable& table, std::size_t length) {
  std::vector<NumericProgression> out;
  forEachProgression(table, length, [&](std::span<const DegreeToken> tokens) {
    out.push_back({table.mode(), {tokens.begin(), tokens.end()}});
    return true;
  });
  return out;
}

std::uint64_t countByMatrixPower(const TransitionTable& table, std::size_t length) {
  if (length == 0) throw InvalidArgument("progression length must be at least 1");
  const std::size_t n = static_cast<std::size_t>(maxTokenId(table.mode()));
  CountMatrix adjacency(n, std::vector<std::uint64_t>(n, 0));
  for (DegreeToken from : table.tokens()) {
    for (DegreeToken to : table.successors(from)) adjacency[from.id() - 1][to.id() - 1] = 1;
  }
  CountMatrix power(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) power[i][i] = 1;
  CountMatrix base = adjacency;
  for (std::size_t e = length - 1; e > 0; e >>= 1) {
    if (e & 1) power = multiply(power, base);
    if (e > 1) base = multiply(base, base);
  }
  std::uint64_t total = 0;
  for (std::uint64_t v : power[table.start().id() - 1]) {
    if (!checkedAdd(total, v, total)) throw Overflow("progression count exceeds 64-bit range");
  }
  return total;
}

std::optional<std::string> findViolation(const NumericProgression& progression,
                                         const TransitionTable& table) {
  if (progression.mode != table.mode()) {
    return "a " + std::string(toString(progression.mode)) + " progression cannot use the " +
           std::string(toString(table.mode())) + " table";
  }
  if (progression.tokens.empty()) return std::string("progression is empty");
  if (progression.tokens.front() != table.start()) {
    return "progression must start on " + toString(table.start()) + ", not " +
           toString(progression.tokens.front());
  }
  for (std::size_t i = 0; i + 1 < progression.tokens.size(); ++i) {
    auto from = progression.tokens[i];
    auto to = progression.tokens[i + 1];
    if (!table.hasEdge(from, to)) {
      return toString(from) + " -> " + toString(to) + " is not an allowed transition (position " +
             std::to_string(i + 1) + ")";
    }
  }
  return std::nullopt;
}

bool validate(const NumericProgression& progression, const TransitionTable& table) {
  return !findViolation(progression, table).has_value();
}

}  // namespace chordgen
