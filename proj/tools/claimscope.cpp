// claimscope: score claims and rerun the evaluation experiments.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "claimscope/analysis.hpp"
#include "claimscope/branching.hpp"
#include "claimscope/corpus.hpp"
#include "claimscope/frequency_table.hpp"
#include "claimscope/http_backend.hpp"
#include "claimscope/mock_backend.hpp"
#include "claimscope/report.hpp"
#include "claimscope/reproduce.hpp"
#include "claimscope/scorer.hpp"

#ifndef CLAIMSCOPE_DATA_DIR
#define CLAIMSCOPE_DATA_DIR "data"
#endif

namespace cs = claimscope;
namespace fs = std::filesystem;

namespace {

// sysexits.h values
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitClaimErrors = 2;
constexpr int kExitUsage = 64;
constexpr int kExitNoInput = 66;
constexpr int kExitUnavailable = 69;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string data_dir;
  std::string model = "word-count";
  std::vector<std::string> models;
  std::string word_table;
  std::string char_table;
  std::string backend;
  std::string branch_mode = "none";
  std::optional<std::uint64_t> seed;
  bool json = false;
  std::string plot_csv;
  bool keep_article = false;
  bool strip_article = false;
  std::vector<std::string> preserve;

  std::string input = "-";
  std::string series;
  std::string golden;
  std::string grid = "both";
  std::string source = "computed";
  std::vector<std::string> templates;
  std::uint64_t sample = 96;
  bool all_variations = false;
  std::vector<std::string> trees;
  std::string context;
  std::string relations = "edges";

  std::string host = "127.0.0.1";
  int port = 8765;

  std::string kind = "word";
  std::string out;
  std::vector<std::string> corpus;
};

fs::path data_path(const Options& o, const fs::path& rel) { return fs::path(o.data_dir) / rel; }

cs::ModelKind parse_model(const std::string& name) {
  auto kind = cs::parse_model_kind(name);
  if (!kind) throw UsageError("unknown model '" + name + "'");
  return *kind;
}

std::vector<cs::ModelKind> parse_models(const Options& o) {
  std::vector<cs::ModelKind> out;
  for (const auto& m : o.models) out.push_back(parse_model(m));
  return out;
}

std::shared_ptr<const cs::FrequencyTable> table_or_default(const std::string& given,
                                                           const fs::path& fallback,
                                                           const char* what) {
  fs::path p = given.empty() ? fallback : fs::path(given);
  if (!fs::exists(p)) {
    throw cs::Error(cs::ErrorCode::kFixtureCorrupt, std::string(what) + " not found: " + p.string());
  }
  return std::make_shared<const cs::FrequencyTable>(cs::load_frequency_table(p));
}

std::string backend_url(const Options& o) {
  if (!o.backend.empty()) return o.backend;
  if (const char* env = std::getenv("CLAIMSCOPE_BACKEND"); env && *env) return env;
  return {};
}

cs::Scorer make_scorer(cs::ModelKind kind, const Options& o, bool strip_article) {
  cs::NormalizeOptions norm;
  norm.preserve.insert(o.preserve.begin(), o.preserve.end());
  norm.strip_leading_article = strip_article;
  cs::Scorer scorer(kind, {}, norm);
  const bool needs_words = kind == cs::ModelKind::kWordFreq || kind == cs::ModelKind::kGpt2;
  if (needs_words) {
    scorer.set_word_table(
        table_or_default(o.word_table, data_path(o, "tables/word_frequencies.tsv"), "word table"));
  }
  if (kind == cs::ModelKind::kCharFreq) {
    scorer.set_char_table(table_or_default(o.char_table,
                                           data_path(o, "tables/char_frequencies.tsv"),
                                           "character table"));
  }
  if (kind == cs::ModelKind::kGpt2) {
    const std::string url = backend_url(o);
    if (url.empty()) throw UsageError("gpt2 needs --backend or CLAIMSCOPE_BACKEND");
    auto backend = std::make_shared<cs::HttpLlmBackend>(url);
    // fail fast rather than once per claim
    const auto health = backend->health();
    if (health.value("protocol", "") != cs::protocol::kVersion) {
      throw cs::Error(cs::ErrorCode::kProtocolViolation,
                      "backend at " + url + " does not speak " + cs::protocol::kVersion);
    }
    scorer.set_backend(std::move(backend));
  }
  auto mode = cs::parse_branch_mode(o.branch_mode);
  if (!mode) throw UsageError("unknown branch mode '" + o.branch_mode + "'");
  scorer.set_branch_mode(*mode);
  return scorer;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  return cs::read_file(path);
}

// `ref,text` CSV when the first line is that header, else one claim per line.
std::vector<cs::RawClaim> parse_claims(const std::string& text) {
  std::vector<cs::RawClaim> out;
  if (text.rfind("ref,text", 0) == 0) {
    std::istringstream in(text);
    auto rows = cs::csv::read(in);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() != 2) {
        throw cs::Error(cs::ErrorCode::kFixtureCorrupt,
                        "input row " + std::to_string(i + 1) + " is not ref,text");
      }
      out.push_back({rows[i][1], rows[i][0]});
    }
    return out;
  }
  std::istringstream in(text);
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (cs::detail::trim(line).empty()) continue;
    out.push_back({line, std::to_string(n)});
  }
  return out;
}

std::unique_ptr<std::ofstream> open_plot(const Options& o) {
  if (o.plot_csv.empty()) return nullptr;
  auto f = std::make_unique<std::ofstream>(o.plot_csv);
  if (!*f) throw cs::Error(cs::ErrorCode::kFixtureCorrupt, "cannot write " + o.plot_csv);
  return f;
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// ---------------------------------------------------------------------------

int cmd_score(const Options& o) {
  const cs::ModelKind kind = parse_model(o.model);
  cs::Scorer scorer = make_scorer(kind, o, !o.keep_article);
  const std::string text = read_input(o.input);
  const std::string model_id(cs::to_string(kind));

  struct Job {
    std::string id;
    std::optional<cs::RawClaim> claim;
    std::optional<cs::BranchSpec> branches;
  };
  std::vector<Job> jobs;
  if (scorer.branch_mode() == cs::BranchMode::kExplicit) {
    auto specs = cs::parse_branch_file(std::string_view(text));
    for (std::size_t i = 0; i < specs.size(); ++i) {
      jobs.push_back({std::to_string(i + 1), std::nullopt, std::move(specs[i])});
    }
  } else {
    for (auto& c : parse_claims(text)) jobs.push_back({*c.id, std::move(c), std::nullopt});
  }
  if (jobs.empty()) throw UsageError("no claims on input");

  auto plot = open_plot(o);
  if (plot) *plot << "id,model,n_tokens,scope\n";
  cs::ReportWriter writer(std::cout, o.json);
  bool failures = false;
  for (const auto& job : jobs) {
    cs::ScoreOutcome outcome{job.id, model_id, cs::ScopeReport{}};
    try {
      outcome.result = job.claim ? scorer.score(*job.claim)
                                 : scorer.score_branches(*job.branches, job.id);
    } catch (const cs::Error& e) {
      outcome.result = e;
      failures = true;
    }
    writer.write(outcome);
    if (plot && outcome.ok()) {
      *plot << cs::csv::escape(job.id) << ',' << model_id << ',' << outcome.report().n_tokens
            << ',' << fmt("%.17g", outcome.report().scope) << '\n';
    }
  }
  return failures ? kExitClaimErrors : kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<cs::ClaimSeries> load_series_arg(const Options& o) {
  return cs::load_series(o.series.empty() ? data_path(o, "series") : fs::path(o.series));
}

std::vector<cs::GoldenRow> load_golden_arg(const Options& o) {
  return cs::load_golden(o.golden.empty() ? data_path(o, "golden/appendix_b.csv")
                                          : fs::path(o.golden));
}

nlohmann::json reference_tables(const Options& o) {
  return nlohmann::json::parse(cs::read_file(data_path(o, "golden/reference_tables.json")));
}

bool is_count_model(cs::ModelKind k) {
  return k == cs::ModelKind::kWordCount || k == cs::ModelKind::kCharCount;
}

bool is_anchor_row(const std::string& ref) {
  return ref.rfind("A1.", 0) == 0 || ref.rfind("A3.", 0) == 0 || ref.rfind("A5.", 0) == 0 ||
         ref == "A7.1";
}

int cmd_appendix_b(const Options& o) {
  auto series = load_series_arg(o);
  auto golden = load_golden_arg(o);
  std::vector<cs::Scorer> scorers;
  for (auto k : parse_models(o)) {
    if (!cs::golden_column(k)) throw UsageError("no golden column for " + std::string(cs::to_string(k)));
    scorers.push_back(make_scorer(k, o, o.strip_article));
  }
  std::vector<const cs::Scorer*> ptrs;
  for (const auto& s : scorers) ptrs.push_back(&s);
  auto cmp = cs::compare_with_golden(series, golden, ptrs);

  auto plot = open_plot(o);
  if (plot) *plot << "ref,model,computed,golden\n";
  cs::csv::write_row(std::cout, {"ref", "model", "computed", "golden", "delta", "match"});
  for (const auto& c : cmp.cells) {
    std::string computed = c.computed ? fmt("%.6f", *c.computed) : "ERROR:" + c.error;
    std::string delta = c.computed ? fmt("%.3g", *c.computed - c.golden) : "";
    cs::csv::write_row(std::cout, {c.ref, c.model_id, computed, fmt("%.6f", c.golden), delta,
                                   c.match ? "yes" : "no"});
    if (plot && c.computed) {
      *plot << c.ref << ',' << c.model_id << ',' << fmt("%.17g", *c.computed) << ','
            << fmt("%.6f", c.golden) << '\n';
    }
  }

  bool pass = true;
  for (const auto& s : scorers) {
    const std::string id(cs::to_string(s.model()));
    const std::size_t matched = cmp.matched(id);
    const std::size_t total = cmp.total(id);
    const double pct = total ? 100.0 * matched / total : 0.0;
    if (!is_count_model(s.model())) {
      std::vector<double> x;
      std::vector<double> y;
      for (const auto& c : cmp.cells) {
        if (c.model_id == id && c.computed) {
          x.push_back(*c.computed);
          y.push_back(c.golden);
        }
      }
      std::cerr << id << ": " << matched << "/" << total << " cells match (not golden-checked)";
      if (x.size() >= 2) std::cerr << ", spearman " << fmt("%.4f", cs::spearman(x, y));
      std::cerr << "\n";
      continue;
    }
    std::vector<std::string> anchor_misses;
    for (const auto& c : cmp.cells) {
      if (c.model_id == id && is_anchor_row(c.ref) && !c.match) anchor_misses.push_back(c.ref);
    }
    const bool ok = pct >= 95.0 && anchor_misses.empty();
    pass = pass && ok;
    std::cerr << id << ": " << matched << "/" << total << " cells match (" << fmt("%.1f", pct)
              << "%), anchor misses " << anchor_misses.size() << " -> " << (ok ? "PASS" : "FAIL")
              << "\n";
  }
  return pass ? kExitOk : kExitMismatch;
}

int cmd_table2(const Options& o) {
  std::vector<cs::CountGrid> grids;
  if (o.grid == "words" || o.grid == "both") grids.push_back(cs::CountGrid::kWords);
  if (o.grid == "characters" || o.grid == "both") grids.push_back(cs::CountGrid::kChars);
  if (grids.empty()) throw UsageError("--grid must be words, characters or both");
  if (o.source != "computed" && o.source != "golden") {
    throw UsageError("--source must be computed or golden");
  }
  const bool golden_source = o.source == "golden";
  if (golden_source && o.grid != "words") {
    throw UsageError("the golden table only carries word counts; use --grid words");
  }

  auto refs = reference_tables(o)["table2"];
  std::vector<cs::ClaimSeries> series;
  std::vector<cs::GoldenRow> golden;
  if (golden_source) {
    golden = load_golden_arg(o);
  } else {
    series = load_series_arg(o);
  }

  auto plot = open_plot(o);
  if (plot) *plot << "series,model,grid,count,self_information\n";
  cs::csv::write_row(std::cout,
                     {"model", "grid", "source", "rsd_percent", "reference", "details"});
  bool pass = true;
  for (auto kind : parse_models(o)) {
    const std::string id(cs::to_string(kind));
    const auto column = cs::golden_column(kind);
    for (auto grid : grids) {
      std::vector<cs::SeriesCurve> curves;
      if (golden_source) {
        if (!column) throw UsageError("no golden column for " + id);
        curves = cs::golden_curves(golden, *column);
      } else {
        curves = cs::series_curves(series, make_scorer(kind, o, o.strip_article), grid);
      }
      auto summary = cs::cross_series_rsd(curves);
      std::string reference;
      if (column) {
        const char* key = grid == cs::CountGrid::kWords ? "word_count_grid" : "char_count_grid";
        reference = fmt("%.1f", refs[key][*column].get<double>());
      }
      cs::csv::write_row(std::cout, {id, std::string(cs::to_string(grid)), o.source,
                                     fmt("%.1f", summary.value), reference, summary.details});
      const bool degenerate = (kind == cs::ModelKind::kWordCount && grid == cs::CountGrid::kWords) ||
                              (kind == cs::ModelKind::kCharCount && grid == cs::CountGrid::kChars);
      if (degenerate && fmt("%.1f", summary.value) != "0.0") pass = false;
      if (plot) {
        for (const auto& c : curves) {
          for (const auto& p : c.points) {
            *plot << c.series_id << ',' << id << ',' << cs::to_string(grid) << ','
                  << p.count << ',' << fmt("%.17g", p.self_information) << '\n';
          }
        }
      }
    }
  }
  return pass ? kExitOk : kExitMismatch;
}

int cmd_table3(const Options& o) {
  auto golden = load_golden_arg(o);
  auto ref = reference_tables(o)["table3"];
  auto m = cs::golden_pearson_matrix(golden);
  cs::csv::Row header = {"model"};
  for (auto name : cs::kGoldenModels) header.emplace_back(name);
  header.emplace_back("max_abs_delta");
  cs::csv::write_row(std::cout, header);
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i) {
    cs::csv::Row row = {std::string(cs::kGoldenModels[i])};
    double row_worst = 0.0;
    for (std::size_t j = 0; j < 5; ++j) {
      row.push_back(fmt("%.4f", m[i][j]));
      row_worst = std::max(row_worst, std::abs(m[i][j] - ref[i][j].get<double>()));
    }
    row.push_back(fmt("%.4f", row_worst));
    worst = std::max(worst, row_worst);
    cs::csv::write_row(std::cout, row);
  }
  const bool pass = worst <= 0.001 + 1e-9;
  std::cerr << "rows " << golden.size() << ", max |delta| " << fmt("%.4f", worst) << " -> "
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kExitOk : kExitMismatch;
}

std::vector<fs::path> template_paths(const Options& o) {
  std::vector<fs::path> out;
  if (o.templates.empty()) {
    for (const auto& e : fs::directory_iterator(data_path(o, "templates"))) {
      if (e.path().extension() == ".json") out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  for (const auto& t : o.templates) {
    fs::path p(t);
    out.push_back(fs::exists(p) ? p : data_path(o, "templates/" + t + ".json"));
  }
  return out;
}

int cmd_variations(const Options& o) {
  if (!o.all_variations && !o.seed) throw UsageError("sampling needs --seed (or use --all)");
  auto refs = reference_tables(o)["table4"];
  auto plot = open_plot(o);
  if (plot) *plot << "template,model,variation,scope\n";
  cs::csv::write_row(std::cout, {"template", "model", "variations", "failed", "rsd_percent",
                                 "reference"});
  bool failures = false;
  for (const auto& path : template_paths(o)) {
    auto t = cs::load_template(path);
    auto claims = o.all_variations ? cs::expand_template(t)
                                   : cs::sample_template(t, std::min(o.sample, t.expansion_count()), *o.seed);
    for (auto kind : parse_models(o)) {
      const std::string id(cs::to_string(kind));
      cs::Scorer scorer = make_scorer(kind, o, !o.keep_article);
      std::vector<double> scopes;
      std::size_t failed = 0;
      for (const auto& c : claims) {
        try {
          scopes.push_back(scorer.score(c).scope);
          if (plot) *plot << t.name << ',' << id << ',' << *c.id << ',' << fmt("%.17g", scopes.back()) << '\n';
        } catch (const cs::Error&) {
          ++failed;
        }
      }
      failures = failures || failed > 0;
      std::string reference;
      if (auto col = cs::golden_column(kind); col && refs.contains(t.name)) {
        reference = fmt("%.2f", refs[t.name][*col].get<double>());
      }
      cs::csv::write_row(std::cout, {t.name, id, std::to_string(claims.size()),
                                     std::to_string(failed),
                                     scopes.size() >= 2 ? fmt("%.2f", cs::rsd(scopes)) : "",
                                     reference});
    }
  }
  return failures ? kExitClaimErrors : kExitOk;
}

int cmd_hierarchy(const Options& o) {
  std::vector<fs::path> paths;
  if (o.trees.empty()) {
    for (const auto& e : fs::directory_iterator(data_path(o, "hierarchies"))) {
      if (e.path().extension() == ".txt") paths.push_back(e.path());
    }
    std::sort(paths.begin(), paths.end());
  } else {
    paths.assign(o.trees.begin(), o.trees.end());
  }
  cs::RelationSet set;
  if (o.relations == "edges") {
    set = cs::RelationSet::kEdges;
  } else if (o.relations == "closure") {
    set = cs::RelationSet::kClosure;
  } else {
    throw UsageError("--relations must be edges or closure");
  }
  const cs::ModelKind kind = parse_model(o.model);
  cs::Scorer scorer = make_scorer(kind, o, !o.keep_article);
  std::optional<std::string> context;
  if (!o.context.empty()) context = o.context;

  cs::csv::write_row(std::cout, {"tree", "parent", "child", "scope_parent", "scope_child",
                                 "verified"});
  bool failures = false;
  for (const auto& p : paths) {
    auto tree = cs::load_hierarchy(p);
    auto result = cs::verify_hierarchy(
        tree, [&scorer](const cs::RawClaim& c) { return scorer.score(c); }, context, set);
    const std::string name = p.stem().string();
    for (const auto& c : result.checks) {
      auto show = [](const std::optional<double>& v) { return v ? fmt("%.6g", *v) : ""; };
      cs::csv::write_row(std::cout,
                         {name, c.relation.parent, c.relation.child, show(c.scope_parent),
                          show(c.scope_child),
                          c.error.empty() ? (c.verified ? "yes" : "no") : "ERROR:" + c.error});
      failures = failures || !c.error.empty();
    }
    std::cerr << name << ": " << result.verified << "/" << result.checks.size() << " relations ("
              << o.relations << ") verified, " << fmt("%.1f", result.percent_verified) << "%"
              << (context ? " with context '" + *context + "'" : "") << "\n";
  }
  return failures ? kExitClaimErrors : kExitOk;
}

int cmd_monotonicity(const Options& o) {
  auto series = load_series_arg(o);
  const fs::path c1 = data_path(o, "series/appendix_c1.csv");
  if (o.series.empty() && fs::exists(c1)) {
    auto extra = cs::load_series(c1);
    series.insert(series.end(), extra.begin(), extra.end());
  }
  cs::csv::write_row(std::cout, {"series", "model", "pairs", "decreasing", "fraction",
                                 "count_increasing_pairs", "decreasing_where_count_increases"});
  bool failures = false;
  for (auto kind : parse_models(o)) {
    cs::Scorer scorer = make_scorer(kind, o, o.strip_article);
    const bool by_chars = kind == cs::ModelKind::kCharCount || kind == cs::ModelKind::kCharFreq;
    for (const auto& s : series) {
      std::vector<cs::ScopeReport> reports;
      std::vector<std::size_t> counts;
      for (const auto& c : s.claims) {
        try {
          auto nc = cs::normalize(c, scorer.normalize_options());
          reports.push_back(scorer.score(c));
          counts.push_back(by_chars ? nc.char_count() : nc.word_count());
        } catch (const cs::Error&) {
          failures = true;
        }
      }
      if (reports.size() < 2) continue;
      auto m = cs::monotonicity_report(reports);
      std::size_t inc = 0;
      std::size_t inc_dec = 0;
      for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
        if (counts[i + 1] > counts[i]) {
          ++inc;
          inc_dec += m.pairs[i].decreasing;
        }
      }
      cs::csv::write_row(std::cout, {s.series_id, std::string(cs::to_string(kind)),
                                     std::to_string(m.pairs.size()), std::to_string(m.decreasing),
                                     fmt("%.4f", m.fraction), std::to_string(inc),
                                     std::to_string(inc_dec)});
    }
  }
  return failures ? kExitClaimErrors : kExitOk;
}

// ---------------------------------------------------------------------------

cs::MockServer* g_server = nullptr;

extern "C" void on_signal(int) {
  if (g_server) g_server->stop();
}

int cmd_serve_mock(const Options& o) {
  cs::MockServer server;
  if (!server.bind(o.host, o.port)) {
    std::cerr << "claimscope: cannot bind " << o.host << ":" << o.port << "\n";
    return kExitUnavailable;
  }
  g_server = &server;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::cout << "serving " << cs::protocol::kVersion << " on http://" << o.host << ":"
            << server.port() << std::endl;
  server.serve();
  g_server = nullptr;
  return kExitOk;
}

int cmd_build_table(const Options& o) {
  cs::TokenKind kind;
  if (o.kind == "word") {
    kind = cs::TokenKind::kWord;
  } else if (o.kind == "character") {
    kind = cs::TokenKind::kCharacter;
  } else {
    throw UsageError("--kind must be word or character");
  }
  std::vector<fs::path> paths(o.corpus.begin(), o.corpus.end());
  auto table = cs::build_frequency_table(paths, kind);
  std::string comment = "built from";
  for (const auto& p : paths) comment += " " + p.filename().string();
  if (o.out.empty() || o.out == "-") {
    cs::write_frequency_table(std::cout, table, comment);
  } else {
    std::ofstream out(o.out);
    if (!out) throw cs::Error(cs::ErrorCode::kFixtureCorrupt, "cannot write " + o.out);
    cs::write_frequency_table(out, table, comment);
  }
  std::cerr << table.size() << " " << cs::to_string(kind) << " entries, cutoff "
            << fmt("%.6g", table.cutoff()) << "\n";
  return kExitOk;
}

int exit_code_for(const cs::Error& e) {
  switch (e.code()) {
    case cs::ErrorCode::kFixtureCorrupt:
    case cs::ErrorCode::kEmptyCorpus:
    case cs::ErrorCode::kEmptyTree:
      return kExitNoInput;
    case cs::ErrorCode::kBackendUnavailable:
      return kExitUnavailable;
    case cs::ErrorCode::kInvalidArgument:
    case cs::ErrorCode::kMalformedMarkup:
    case cs::ErrorCode::kSampleTooLarge:
      return kExitUsage;
    default:
      return kExitMismatch;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  if (const char* env = std::getenv("CLAIMSCOPE_DATA_DIR"); env && *env) {
    o.data_dir = env;
  } else {
    o.data_dir = CLAIMSCOPE_DATA_DIR;
  }

  CLI::App app{"Claim scope as the reciprocal of self-information"};
  app.set_version_flag("--version", "claimscope 0.1.0");
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--data-dir", o.data_dir, "Fixture directory");

  auto model_opts = [&o](CLI::App* c) {
    c->add_option("--word-table", o.word_table, "Word frequency table");
    c->add_option("--char-table", o.char_table, "Character frequency table");
    c->add_option("--backend", o.backend, "LLM backend URL (default $CLAIMSCOPE_BACKEND)");
    c->add_option("--preserve", o.preserve, "Terms kept in original case")->delimiter(',');
  };
  auto models_opt = [&o](CLI::App* c, std::vector<std::string> dflt) {
    o.models = dflt;
    c->add_option("--models", o.models, "Comma-separated models")->delimiter(',');
  };

  auto* score = app.add_subcommand("score", "Score claims from a file or stdin");
  score->add_option("--model", o.model, "gpt2, word-freq, word-count, char-freq, char-count or hybrid");
  score->add_option("--branch-mode", o.branch_mode, "none, explicit or heuristic");
  score->add_flag("--json", o.json, "JSON Lines with full precision");
  score->add_flag("--keep-article", o.keep_article, "Keep a leading indefinite article");
  score->add_option("--plot-csv", o.plot_csv, "Also write id,scope pairs here");
  score->add_option("input", o.input, "Claims file, '-' for stdin");
  model_opts(score);

  auto* reproduce = app.add_subcommand("reproduce", "Rerun an evaluation experiment");
  reproduce->require_subcommand(1);

  auto* appendix = reproduce->add_subcommand("appendix-b", "Compare with the golden scope table");
  models_opt(appendix, {"word-count", "char-count"});
  appendix->add_option("--series", o.series, "Series directory or CSV");
  appendix->add_option("--golden", o.golden, "Golden CSV");
  appendix->add_flag("--strip-article", o.strip_article, "Strip a leading article");
  appendix->add_option("--plot-csv", o.plot_csv, "Also write computed/golden pairs here");
  model_opts(appendix);

  auto* table2 = reproduce->add_subcommand("table-2", "RSD of self-information across series");
  models_opt(table2, {"word-count", "char-count"});
  table2->add_option("--grid", o.grid, "words, characters or both");
  table2->add_option("--source", o.source, "computed or golden");
  table2->add_option("--series", o.series, "Series directory or CSV");
  table2->add_option("--golden", o.golden, "Golden CSV");
  table2->add_flag("--strip-article", o.strip_article, "Strip a leading article");
  table2->add_option("--plot-csv", o.plot_csv, "Also write the curves here");
  model_opts(table2);

  auto* table3 = reproduce->add_subcommand("table-3", "Pearson matrix of the golden columns");
  table3->add_option("--golden", o.golden, "Golden CSV");

  auto* variations = reproduce->add_subcommand("variations", "RSD of scope over claim variations");
  models_opt(variations, {"word-count", "char-count"});
  variations->add_option("--template", o.templates, "Template name or JSON path");
  variations->add_option("--sample", o.sample, "Variations sampled per template");
  variations->add_option("--seed", o.seed, "Sampling seed");
  variations->add_flag("--all", o.all_variations, "Score every variation");
  variations->add_flag("--keep-article", o.keep_article, "Keep a leading indefinite article");
  variations->add_option("--plot-csv", o.plot_csv, "Also write per-variation scopes here");
  model_opts(variations);

  auto* hierarchy = reproduce->add_subcommand("hierarchy", "Check scope ordering along term trees");
  hierarchy->add_option("--model", o.model, "Model");
  hierarchy->add_option("--tree", o.trees, "Hierarchy file(s)");
  hierarchy->add_option("--context", o.context, "Text prepended to every term");
  hierarchy->add_option("--relations", o.relations, "edges or closure");
  hierarchy->add_flag("--keep-article", o.keep_article, "Keep a leading indefinite article");
  model_opts(hierarchy);

  auto* mono = reproduce->add_subcommand("monotonicity", "Scope ordering within each series");
  models_opt(mono, {"word-count", "char-count"});
  mono->add_option("--series", o.series, "Series directory or CSV");
  mono->add_flag("--strip-article", o.strip_article, "Strip a leading article");
  model_opts(mono);

  auto* serve = app.add_subcommand("serve-mock", "Serve the deterministic mock LLM backend");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port (0 picks one)");

  auto* build = app.add_subcommand("build-table", "Build a frequency table from text files");
  build->add_option("--kind", o.kind, "word or character");
  build->add_option("--out", o.out, "Output path ('-' for stdout)");
  build->add_option("corpus", o.corpus, "Corpus files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*score) return cmd_score(o);
    if (*appendix) return cmd_appendix_b(o);
    if (*table2) return cmd_table2(o);
    if (*table3) return cmd_table3(o);
    if (*variations) return cmd_variations(o);
    if (*hierarchy) return cmd_hierarchy(o);
    if (*mono) return cmd_monotonicity(o);
    if (*serve) return cmd_serve_mock(o);
    if (*build) return cmd_build_table(o);
  } catch (const UsageError& e) {
    std::cerr << "claimscope: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cs::Error& e) {
    std::cerr << "claimscope: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "claimscope: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "claimscope: " << e.what() << "\n";
    return kExitNoInput;
  }
  return kExitUsage;
}
