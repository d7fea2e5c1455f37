#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "claimscope/csv.hpp"
#include "claimscope/mock_backend.hpp"

namespace cs = claimscope;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

// Runs the CLI with the given arguments; stdin comes from `input` when set.
Run cli(const std::string& args, const std::optional<std::string>& input = std::nullopt) {
  std::string cmd;
  if (input) cmd = "printf '%s' " + quote(*input) + " | ";
  cmd += std::string(CLAIMSCOPE_CLI) + " " + args + " 2>/dev/null";
  if (!input) cmd += " </dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<cs::csv::Row> rows_of(const std::string& text) {
  std::istringstream in(text);
  return cs::csv::read(in);
}

fs::path temp_file(const std::string& name, const std::string& content) {
  auto p = fs::temp_directory_path() / ("claimscope_cli_" + std::to_string(::getpid()) + name);
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST(Cli, ScoreWordCount) {
  auto r = cli("score --model word-count", "A writing instrument.\n");
  ASSERT_EQ(r.code, 0);
  auto rows = rows_of(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (cs::csv::Row{"id", "model", "n_tokens", "log_p", "self_information", "scope"}));
  EXPECT_EQ(rows[1][2], "2");
  EXPECT_EQ(rows[1][5], "0.0418295");
}

TEST(Cli, ScoreCharCountJson) {
  auto r = cli("score --model char-count --json", "Force sensor.\n");
  ASSERT_EQ(r.code, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["model"], "char-count");
  EXPECT_EQ(j["n_tokens"], 13);
  EXPECT_NEAR(j["scope"].get<double>(), 0.019663, 5e-7);
  for (const char* k : {"id", "log_p", "self_information"}) EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Cli, CsvInputKeepsIds) {
  auto in = temp_file("in.csv", "ref,text\nX.1,\"Hammer, with a head.\"\nX.2,Hammer\n");
  auto r = cli("score --model word-count " + in.string());
  fs::remove(in);
  ASSERT_EQ(r.code, 0);
  auto rows = rows_of(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1][0], "X.1");
  EXPECT_EQ(rows[2][0], "X.2");
  EXPECT_LT(std::stod(rows[1][5]), std::stod(rows[2][5]));
}

TEST(Cli, PerClaimErrorsAreReported) {
  auto r = cli("score --model word-freq", "Hammer.\n...\n");
  EXPECT_EQ(r.code, 2);
  auto rows = rows_of(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2][0], "2");
  EXPECT_EQ(rows[2][2].rfind("ERROR:", 0), 0u) << rows[2][2];
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("score --model word-count", "").code, 64);
  EXPECT_EQ(cli("score --model no-such-model", "x\n").code, 64);
  EXPECT_EQ(cli("score --model word-count /nonexistent/claims.txt").code, 66);
  EXPECT_EQ(cli("score --model gpt2 --backend http://127.0.0.1:1", "Hammer with a head.\n").code,
            69);
  EXPECT_EQ(cli("").code, 64);
}

TEST(Cli, ExplicitBranches) {
  auto r = cli("score --model word-count --branch-mode explicit",
               "+ hammer with a steel head\n+ hammer with an aluminum head\n");
  ASSERT_EQ(r.code, 0) << r.out;
  auto rows = rows_of(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(std::stod(rows[1][4]), 5 * std::log(155327.0) - std::log(2.0), 1e-4);
}

TEST(Cli, ReproduceCommands) {
  for (const char* args :
       {"reproduce appendix-b", "reproduce table-3", "reproduce table-2 --grid both",
        "reproduce variations --seed 1", "reproduce hierarchy --model word-count",
        "reproduce monotonicity"}) {
    auto r = cli(args);
    EXPECT_EQ(r.code, 0) << args << "\n" << r.out;
    EXPECT_FALSE(r.out.empty()) << args;
  }
}

TEST(Cli, VariationsAreSeedDeterministic) {
  auto a = cli("reproduce variations --seed 42 --sample 10");
  auto b = cli("reproduce variations --seed 42 --sample 10");
  auto c = cli("reproduce variations --seed 43 --sample 10");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
}

TEST(Cli, PlotCsvIsWritten) {
  auto plot = fs::temp_directory_path() / ("claimscope_plot_" + std::to_string(::getpid()) + ".csv");
  auto r = cli("reproduce table-2 --grid words --plot-csv " + plot.string());
  ASSERT_EQ(r.code, 0);
  std::ifstream in(plot);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "series,model,grid,count,self_information");
  fs::remove(plot);
}

TEST(Cli, BuildTableRoundTrip) {
  auto corpus = temp_file("corpus.txt", "The cat and the hat.\nThe end.\n");
  auto table = fs::temp_directory_path() / ("claimscope_tbl_" + std::to_string(::getpid()) + ".tsv");
  auto r = cli("build-table --kind word --out " + table.string() + " " + corpus.string());
  ASSERT_EQ(r.code, 0);
  auto s = cli("score --model word-freq --word-table " + table.string() + " --keep-article --json", "The cat.\n");
  ASSERT_EQ(s.code, 0);
  auto j = nlohmann::json::parse(s.out);
  EXPECT_NEAR(j["log_p"].get<double>(), std::log(3.0 / 7.0) + std::log(1.0 / 7.0), 1e-9);
  fs::remove(corpus);
  fs::remove(table);
}

TEST(Cli, ServeMockRefusesBusyPort) {
  cs::MockServer holder;
  ASSERT_TRUE(holder.bind("127.0.0.1", 0));
  EXPECT_EQ(cli("serve-mock --port " + std::to_string(holder.port())).code, 69);
}
