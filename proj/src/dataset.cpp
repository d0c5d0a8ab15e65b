#include "chordgen/dataset.h"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "chordgen/error.h"

namespace chordgen {

namespace {

constexpr std::uint64_t kScalesPerMode = 21;

void checkSink(const std::ostream& out) {
  if (!out) throw SinkFailure("failed writing dataset output");
}

std::string joinStrings(std::span<const std::string> parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::vector<std::string> splitComma(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    out.emplace_back(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

DatasetRow makeRow(const Scale& scale, std::span<const DegreeToken> tokens, LeadingTone leading_tone) {
  DatasetRow row{scale.id(), {tokens.begin(), tokens.end()}, {}, scale.mode()};
  row.scale_progression.reserve(tokens.size());
  for (DegreeToken token : tokens) row.scale_progression.push_back(chordSymbol(scale, token, leading_tone));
  return row;
}

std::uint64_t buildDataset(std::size_t length, std::span<const Mode> modes, const RowVisitor& visit,
                           LeadingTone leading_tone) {
  std::vector<const TransitionTable*> tables;
  for (Mode mode : modes) tables.push_back(&TransitionTable::defaultTable(mode));
  return buildDataset(length, tables, visit, leading_tone);
}

std::uint64_t buildDataset(std::size_t length, std::span<const TransitionTable* const> tables,
                           const RowVisitor& visit, LeadingTone leading_tone) {
  std::uint64_t rows = 0;
  for (const TransitionTable* table : tables) {
    auto progressions = enumerate(*table, length);
    for (const Scale& scale : scalesForMode(table->mode())) {
      for (const auto& progression : progressions) {
        visit(makeRow(scale, progression.tokens, leading_tone));
        ++rows;
      }
    }
  }
  return rows;
}

std::string csvField(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

CsvWriter::CsvWriter(std::ostream& out) : out_(out) {
  out_ << kCsvHeader << '\n';
  checkSink(out_);
}

void CsvWriter::write(const DatasetRow& row) {
  out_ << csvField(row.scale_id) << ',' << csvField(joinTokens(row.number_progression)) << ','
       << csvField(joinStrings(row.scale_progression)) << ',' << toString(row.mode) << '\n';
  checkSink(out_);
  ++rows_;
}

void JsonLinesWriter::write(const DatasetRow& row) {
  nlohmann::json j = {{"scale", row.scale_id},
                      {"number_progression", tokenStrings(row.number_progression)},
                      {"scale_progression", row.scale_progression},
                      {"mode", toString(row.mode)}};
  out_ << j.dump() << '\n';
  checkSink(out_);
  ++rows_;
}

std::uint64_t writeCsv(std::span<const DatasetRow> rows, std::ostream& out) {
  CsvWriter writer(out);
  for (const auto& row : rows) writer.write(row);
  return writer.rows();
}

std::uint64_t writeJsonLines(std::span<const DatasetRow> rows, std::ostream& out) {
  JsonLinesWriter writer(out);
  for (const auto& row : rows) writer.write(row);
  return writer.rows();
}

namespace {

// Reads one record; returns false at end of input.
bool readRecord(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string field;
  bool quoted = false;
  bool after_quote = false;
  char c;
  while (in.get(c)) {
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get(c);
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && field.empty() && !after_quote) {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      after_quote = false;
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\r' && in.peek() == '\n') {
      // CRLF; the LF ends the record next iteration.
    } else {
      field += c;
    }
  }
  if (quoted) throw InvalidArgument("unterminated quoted CSV field");
  fields.push_back(std::move(field));
  return true;
}

DatasetRow rowFromFields(const std::vector<std::string>& fields, std::uint64_t record) {
  if (fields.size() != 4) {
    throw InvalidArgument("CSV record " + std::to_string(record) + " has " +
                          std::to_string(fields.size()) + " fields, expected 4");
  }
  DatasetRow row;
  row.scale_id = fields[0];
  row.mode = parseMode(fields[3]);
  row.number_progression = parseProgression(fields[1], row.mode).tokens;
  row.scale_progression = splitComma(fields[2]);
  if (row.scale_progression.size() != row.number_progression.size()) {
    throw InvalidArgument("CSV record " + std::to_string(record) +
                          ": progression lengths differ between columns");
  }
  return row;
}

}  // namespace

std::vector<std::vector<std::string>> parseCsvRecords(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> fields;
  while (readRecord(in, fields)) out.push_back(fields);
  return out;
}

std::uint64_t readCsv(std::istream& in, const RowVisitor& visit) {
  std::vector<std::string> fields;
  if (!readRecord(in, fields) || joinStrings(fields) != kCsvHeader) {
    throw InvalidArgument("dataset CSV must start with the header '" + std::string(kCsvHeader) + "'");
  }
  std::uint64_t rows = 0;
  while (readRecord(in, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    visit(rowFromFields(fields, rows + 2));
    ++rows;
  }
  return rows;
}

std::vector<DatasetRow> readCsv(std::istream& in) {
  std::vector<DatasetRow> rows;
  readCsv(in, [&](const DatasetRow& row) { rows.push_back(row); });
  return rows;
}

std::optional<std::uint64_t> publishedRowCount(std::string_view label, std::size_t length) {
  if (length == 4) {
    if (label == "major") return 1533;
    if (label == "minor") return 1764;
    if (label == "total") return 3297;
  } else if (length == 8) {
    if (label == "major") return 182094;
    if (label == "minor") return 223122;
    if (label == "total") return 405216;
  }
  return std::nullopt;
}

std::optional<std::uint64_t> publishedNumericCount(std::string_view label, std::size_t length) {
  if (length != 4) return std::nullopt;
  if (label == "major") return 73;
  if (label == "minor") return 84;
  if (label == "total") return 157;
  return std::nullopt;
}

bool CountsCell::matches() const {
  if (paper_numeric_count && *paper_numeric_count != numeric_count) return false;
  if (paper_row_count && *paper_row_count != row_count) return false;
  return paper_numeric_count || paper_row_count;
}

CountsReport countsReport(std::span<const std::size_t> lengths) {
  CountsReport report;
  for (std::size_t length : lengths) {
    CountsCell total{"total", length, 0, 0, publishedNumericCount("total", length),
                     publishedRowCount("total", length)};
    for (Mode mode : kBothModes) {
      std::string label(toString(mode));
      CountsCell cell{label, length, countByMatrixPower(TransitionTable::defaultTable(mode), length), 0,
                      publishedNumericCount(label, length), publishedRowCount(label, length)};
      cell.row_count = kScalesPerMode * cell.numeric_count;
      total.numeric_count += cell.numeric_count;
      total.row_count += cell.row_count;
      report.cells.push_back(cell);
    }
    report.cells.push_back(total);
  }
  return report;
}

std::string formatCountsReport(const CountsReport& report) {
  auto published = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  std::ostringstream out;
  out << std::left << std::setw(8) << "length" << std::setw(8) << "mode" << std::right
      << std::setw(10) << "numeric" << std::setw(16) << "numeric(paper)" << std::setw(10) << "rows"
      << std::setw(13) << "rows(paper)" << "  status\n";
  for (const auto& cell : report.cells) {
    bool has_published = cell.paper_numeric_count || cell.paper_row_count;
    out << std::left << std::setw(8) << cell.length << std::setw(8) << cell.label << std::right
        << std::setw(10) << cell.numeric_count << std::setw(16) << published(cell.paper_numeric_count)
        << std::setw(10) << cell.row_count << std::setw(13) << published(cell.paper_row_count) << "  "
        << (!has_published ? "n/a" : cell.matches() ? "MATCH" : "MISMATCH") << '\n';
  }
  return out.str();
}

}  // namespace chordgen
