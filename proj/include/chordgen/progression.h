// Chord transition tables, exhaustive progression enumeration and the
// adjacency-matrix counting oracle.
//
// Table document format (one rule per line, '#' starts a comment):
//
//   mode: major
//   start: 1
//   1 -> 1 2 3 4 5 6 7
//   2 -> 5 7
//   ...
//
// Minor tables write token 8 as "7Maj" ("8" is accepted on input).
// Successor order is significant: enumeration follows it depth first.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chordgen/degree.h"

namespace chordgen {

class TransitionTable {
 public:
  /// Validates the graph and throws MalformedTable on: tokens outside the
  /// mode, a start other than 1, successors that have no rule of their own,
  /// empty successor lists, duplicate successors, or tokens unreachable from 1.
  TransitionTable(Mode mode, std::map<DegreeToken, std::vector<DegreeToken>> edges,
                  DegreeToken start = kTonic);

  Mode mode() const { return mode_; }
  DegreeToken start() const { return start_; }
  /// Tokens with a rule, ascending.
  std::vector<DegreeToken> tokens() const;
  /// Empty span for tokens without a rule.
  std::span<const DegreeToken> successors(DegreeToken from) const;
  bool hasEdge(DegreeToken from, DegreeToken to) const;

  /// Itemized chart rules with the tonic self-loop.
  static const TransitionTable& defaultTable(Mode mode);
  /// The same rules without the tonic self-loop.
  static const TransitionTable& withoutTonicSelfLoop(Mode mode);

  friend bool operator==(const TransitionTable&, const TransitionTable&) = default;

 private:
  Mode mode_;
  std::map<DegreeToken, std::vector<DegreeToken>> edges_;
  DegreeToken start_;
};

/// Throws MalformedTable on syntax errors as well as graph violations.
TransitionTable loadTransitionTable(std::string_view document);
TransitionTable loadTransitionTableFile(const std::filesystem::path& path);
std::string serialize(const TransitionTable& table);

/// Embedded documents behind defaultTable() / withoutTonicSelfLoop().
std::string_view defaultTableDocument(Mode mode);
std::string_view noSelfLoopTableDocument(Mode mode);

struct NumericProgression {
  Mode mode = Mode::Major;
  std::vector<DegreeToken> tokens;

  std::size_t length() const { return tokens.size(); }
  /// "1,5,6,4" / "1,7Maj,3,4".
  std::string toString() const;

  friend bool operator==(const NumericProgression&, const NumericProgression&) = default;
};

std::string joinTokens(std::span<const DegreeToken> tokens, char separator = ',');
std::vector<std::string> tokenStrings(std::span<const DegreeToken> tokens);

/// Parses comma-separated tokens and checks them against the mode's token
/// range. Does not check transitions; see validate().
NumericProgression parseProgression(std::string_view text, Mode mode);

/// Visits every valid sequence of `length` tokens starting at the table's
/// start token, depth first in successor order. The visitor returns false to
/// stop early. Returns the number of sequences visited.
std::uint64_t forEachProgression(
    const TransitionTable& table, std::size_t length,
    const std::function<bool(std::span<const DegreeToken>)>& visitor);

std::vector<NumericProgression> enumerate(const TransitionTable& table, std::size_t length);

/// Sum of row `start` of A^(length-1), A being the 0/1 adjacency matrix.
/// Exact unsigned arithmetic; throws Overflow rather than wrapping.
std::uint64_t countByMatrixPower(const TransitionTable& table, std::size_t length);

/// Why a progression is not valid for the table, or nullopt when it is.
std::optional<std::string> findViolation(const NumericProgression& progression,
                                         const TransitionTable& table);

bool validate(const NumericProgression& progression, const TransitionTable& table);

}  // namespace chordgen
