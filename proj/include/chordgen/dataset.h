// Expansion of numeric progressions across all 21 scales of a mode, CSV and
// JSON Lines serialization, and the enumeration counts report.
//
// CSV layout (RFC 4180, LF line endings, UTF-8):
//
//   scale,number_progression,scale_progression,mode
//   C-major,"1,1,1,1","C,C,C,C",major
//
// JSON Lines layout, one object per row:
//
//   {"scale":"C-major","number_progression":["1","1","1","1"],
//    "scale_progression":["C","C","C","C"],"mode":"major"}

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chordgen/progression.h"
#include "chordgen/scale.h"

namespace chordgen {

struct DatasetRow {
  std::string scale_id;
  std::vector<DegreeToken> number_progression;
  std::vector<std::string> scale_progression;
  Mode mode = Mode::Major;

  friend bool operator==(const DatasetRow&, const DatasetRow&) = default;
};

DatasetRow makeRow(const Scale& scale, std::span<const DegreeToken> tokens,
                   LeadingTone leading_tone = LeadingTone::Natural);

using RowVisitor = std::function<void(const DatasetRow&)>;

inline constexpr Mode kBothModes[] = {Mode::Major, Mode::Minor};

/// Emits one row per (scale, progression) for each requested mode: the 21
/// scales in canonical tonic order, and within a scale the enumeration
/// order. Rows are produced one at a time. Returns the number of rows.
std::uint64_t buildDataset(std::size_t length, std::span<const Mode> modes, const RowVisitor& visit,
                           LeadingTone leading_tone = LeadingTone::Natural);

/// Same, over caller-provided tables (one per mode, in the order given).
std::uint64_t buildDataset(std::size_t length, std::span<const TransitionTable* const> tables,
                           const RowVisitor& visit, LeadingTone leading_tone = LeadingTone::Natural);

inline constexpr std::string_view kCsvHeader = "scale,number_progression,scale_progression,mode";

/// Streaming CSV writer; the header goes out on construction.
/// Throws SinkFailure when the stream reports an error.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out);
  void write(const DatasetRow& row);
  std::uint64_t rows() const { return rows_; }

 private:
  std::ostream& out_;
  std::uint64_t rows_ = 0;
};

class JsonLinesWriter {
 public:
  explicit JsonLinesWriter(std::ostream& out) : out_(out) {}
  void write(const DatasetRow& row);
  std::uint64_t rows() const { return rows_; }

 private:
  std::ostream& out_;
  std::uint64_t rows_ = 0;
};

std::uint64_t writeCsv(std::span<const DatasetRow> rows, std::ostream& out);
std::uint64_t writeJsonLines(std::span<const DatasetRow> rows, std::ostream& out);

/// RFC 4180 field quoting: quotes fields holding ',', '"', CR or LF.
std::string csvField(std::string_view value);

/// Splits CSV text into records of fields. Accepts CRLF or LF.
/// Throws InvalidArgument on unterminated quotes.
std::vector<std::vector<std::string>> parseCsvRecords(std::istream& in);

/// Streams rows of a dataset CSV. Throws InvalidArgument on a wrong header or
/// malformed rows.
std::uint64_t readCsv(std::istream& in, const RowVisitor& visit);
std::vector<DatasetRow> readCsv(std::istream& in);

struct CountsCell {
  std::string label;  // "major", "minor" or "total"
  std::size_t length = 0;
  std::uint64_t numeric_count = 0;
  std::uint64_t row_count = 0;  // 21 * numeric_count
  std::optional<std::uint64_t> paper_numeric_count;
  std::optional<std::uint64_t> paper_row_count;

  /// Every published figure for this cell equals the computed one.
  bool matches() const;
};

struct CountsReport {
  std::vector<CountsCell> cells;
};

/// Previously published totals for L = 4 and L = 8, by label.
std::optional<std::uint64_t> publishedRowCount(std::string_view label, std::size_t length);
std::optional<std::uint64_t> publishedNumericCount(std::string_view label, std::size_t length);

/// Computed counts (from the matrix-power oracle) next to the published ones.
CountsReport countsReport(std::span<const std::size_t> lengths);
std::string formatCountsReport(const CountsReport& report);

}  // namespace chordgen
