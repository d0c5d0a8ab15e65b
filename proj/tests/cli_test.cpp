// Runs the chordgen binary end to end.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <sys/wait.h>

#include "smf_reader.h"

namespace {

struct Run {
  int exit_code;
  std::string out;
};

Run run(const std::string& args) {
  std::string command = std::string(CHORDGEN_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

TEST(CliTest, EnumerateMajorLengthTwo) {
  auto r = run("enumerate --mode major --length 2");
  ASSERT_EQ(r.exit_code, 0);
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 8u);
  EXPECT_EQ(l.front(), "1,1");
  EXPECT_EQ(l[6], "1,7");
  EXPECT_EQ(l.back(), "Total Possibilities: 7");
}

TEST(CliTest, EnumerateMinorEndsWithSubtonic) {
  auto l = lines(run("enumerate --mode minor --length 2").out);
  ASSERT_EQ(l.size(), 9u);
  EXPECT_EQ(l[7], "1,7Maj");
  EXPECT_EQ(l.back(), "Total Possibilities: 8");
}

TEST(CliTest, EnumerateBothTotals) {
  EXPECT_EQ(lines(run("enumerate --mode both --length 4").out).back(), "Total Possibilities: 133");
  EXPECT_EQ(lines(run("enumerate --mode major --length 3").out).back(), "Total Possibilities: 20");
}

TEST(CliTest, EnumerateWithCustomTable) {
  auto path = temp("chordgen_cli_table.txt");
  std::ofstream(path) << "mode: major\nstart: 1\n1 -> 2\n2 -> 1\n";
  auto l = lines(run("enumerate --mode major --length 3 --table " + path.string()).out);
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "1,2,1");
  std::filesystem::remove(path);
}

TEST(CliTest, Alternates) {
  auto r = run("alternates --scale C-major --progression 1,5,6,4");
  ASSERT_EQ(r.exit_code, 0);
  auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "base C-major 1,5,6,4 C,G,Am,F");
  EXPECT_EQ(l[1], "alternate F-major 1,5,6,4 F,C,Dm,Bb");
  EXPECT_EQ(l[3], "alternate A-minor 1,5,6,4 Am,Em,F,Dm");
}

TEST(CliTest, CountsShowsComputedAndPublished) {
  auto r = run("counts --length 4 --length 8");
  ASSERT_EQ(r.exit_code, 0);
  for (const char* needle : {"63", "73", "1323", "1533", "3297", "405216", "277095", "MISMATCH"}) {
    EXPECT_NE(r.out.find(needle), std::string::npos) << needle;
  }
}

TEST(CliTest, ExportMidi) {
  auto path = temp("chordgen_cli.mid");
  auto r = run("export-midi --scale C-major --progression 1,5,6,4 --tempo 120 --out " + path.string());
  ASSERT_EQ(r.exit_code, 0);
  std::ifstream in(path, std::ios::binary);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), {});
  auto file = smf_oracle::parse(bytes);
  EXPECT_EQ(file.tempos.at(0), 500000u);
  ASSERT_EQ(file.notes.size(), 12u);
  std::sort(file.notes.begin(), file.notes.end());
  EXPECT_EQ(file.notes[0].key, 60);
  EXPECT_EQ(file.notes[1].key, 64);
  EXPECT_EQ(file.notes[2].key, 67);
  EXPECT_NE(r.out.find(std::to_string(bytes.size()) + " bytes"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(CliTest, BadInputExitsNonZero) {
  EXPECT_EQ(run("alternates --scale H-major --progression 1").exit_code, 2);
  EXPECT_EQ(run("alternates --scale C-major --progression 1,7,5").exit_code, 2);
  EXPECT_EQ(run("alternates --scale C-major --progression 1,9").exit_code, 2);
  EXPECT_EQ(run("export-midi --scale C-major --progression 1 --tempo 301 --out /dev/null").exit_code, 2);
  EXPECT_NE(run("enumerate --length 1").exit_code, 0);
  EXPECT_NE(run("bogus").exit_code, 0);
}

TEST(CliTest, DatasetToFile) {
  auto path = temp("chordgen_cli_dataset.csv");
  auto r = run("dataset --mode both --length 4 --out " + path.string());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("rows: 2793"), std::string::npos);
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "scale,number_progression,scale_progression,mode");
  EXPECT_EQ(first, "C-major,\"1,1,1,1\",\"C,C,C,C\",major");
  std::size_t rest = 1;
  for (std::string line; std::getline(in, line);) ++rest;
  EXPECT_EQ(rest, 2793u);
  std::filesystem::remove(path);
}

}  // namespace
