#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "oracles.hpp"

using namespace keysel;
using namespace keysel::cli;
using keysel::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "keysel");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string data_flag(const TempDir& d) { return "--data-dir=" + (d / "data").string(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"ingest"}).code == kExitUsage);
    CHECK(run({"serve", "--port", "70000"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
  }

  TEST_CASE("ingest") {
    TempDir d;
    write(d / "good.jsonl",
          R"({"tweet_id":"1","user_id":"u","created_at":"2020-01-01T05:00:00Z","text":"#a #b"})" "\n"
          R"({"tweet_id":"2","user_id":"v","day":1,"text":"#a"})" "\n");
    auto r = run({data_flag(d), "ingest", (d / "good.jsonl").string(), "--id", "good"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("tweets:     2") != std::string::npos);
    CHECK(std::filesystem::exists(d / "data" / "corpora" / "good.jsonl"));

    write(d / "bad.jsonl", R"({"tweet_id":"1","user_id":"u","day":0,"text":"#a"})" "\nnot json\n");
    r = run({data_flag(d), "ingest", (d / "bad.jsonl").string(), "--id", "bad"});
    CHECK(r.code == kExitData);
    CHECK(r.err.find(":2:") != std::string::npos);
    r = run({data_flag(d), "ingest", (d / "bad.jsonl").string(), "--id", "bad2", "--strict"});
    CHECK(r.code == kExitData);
    CHECK(run({data_flag(d), "ingest", (d / "none.jsonl").string(), "--id", "x"}).code == kExitData);
    CHECK(run({data_flag(d), "ingest", (d / "good.jsonl").string(), "--id", "../x"}).code == kExitUsage);
  }

  TEST_CASE("synth is deterministic and validates its spec") {
    TempDir d;
    const std::vector<std::string> base{"synth", "--users", "30", "--days", "3", "--seed", "9"};
    auto a = base, b = base;
    a.insert(a.end(), {"-o", (d / "a").string()});
    b.insert(b.end(), {"-o", (d / "b").string(), "--register", "syn"});
    CHECK(run(a).code == kExitOk);
    const auto rb = run([&] { auto v = b; v.insert(v.begin(), data_flag(d)); return v; }());
    CHECK(rb.code == kExitOk);
    CHECK(rb.out.find("registered corpus syn") != std::string::npos);
    CHECK(slurp(d / "a" / "corpus.jsonl") == slurp(d / "b" / "corpus.jsonl"));
    CHECK(slurp(d / "a" / "topic0.txt") == slurp(d / "b" / "topic0.txt"));
    CHECK(std::filesystem::exists(d / "data" / "corpora" / "syn.jsonl"));

    const auto bad = run({"synth", "--homophily", "1.5", "-o", (d / "c").string()});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("homophily") != std::string::npos);
  }

  TEST_CASE("run reports every config violation") {
    TempDir d;
    write(d / "cfg.json", R"({"corpus":"c.jsonl","methods":["keyselect","bogus"],"budgets":[0],
                              "seed_count":"ten","colour":1})");
    const auto r = run({"run", (d / "cfg.json").string()});
    CHECK(r.code == kExitUsage);
    for (const char* needle : {"bogus", "budgets", "seed_count", "colour", "oracle", "output_dir"}) {
      CHECK_MESSAGE(r.err.find(needle) != std::string::npos, needle);
    }
    write(d / "broken.json", "{");
    CHECK(run({"run", (d / "broken.json").string()}).code == kExitUsage);
    CHECK(run({"run", (d / "missing.json").string()}).code == kExitUsage);
  }

  TEST_CASE("config parsing resolves paths and defaults") {
    std::vector<std::string> problems;
    const auto cfg = parse_run_config(
        nlohmann::json::parse(R"({"corpus":"c.jsonl","oracle":"/abs/t.txt","output_dir":"out",
                                  "methods":["tfidf","word2vec"],"replicates":3,
                                  "tfidf_aggregation":"max","embedding":{"dim":8}})"),
        "/base", problems);
    CHECK(problems.empty());
    CHECK(cfg.corpus_path == "/base/c.jsonl");
    CHECK(cfg.oracle_path == "/abs/t.txt");
    CHECK(cfg.experiment.replicate_seeds == std::vector<std::uint64_t>{0, 1, 2});
    CHECK(cfg.experiment.methods.size() == 2);
    CHECK(cfg.experiment.methods[1].embedding.dim == 8);
    CHECK(cfg.experiment.methods[0].tfidf_aggregation == TfidfAggregation::kMax);
    CHECK(cfg.experiment.budgets == std::vector<int>{3, 10, 30});
  }

  TEST_CASE("run and report end to end, byte-identical across runs") {
    TempDir d;
    REQUIRE(run({"synth", "--users", "60", "--days", "3", "--seed", "4", "-o", (d / "syn").string()})
                .code == kExitOk);
    const std::string cfg = R"({"corpus":"syn/corpus.jsonl","oracle":"syn/topic0.txt",
        "methods":["keyselect","random_walk","degree_centrality","tfidf"],
        "budgets":[2,4],"seed_count":3,"replicates":[0,1],"output_dir":"OUT"})";
    auto with_out = [&](const std::string& o) {
      std::string c = cfg;
      c.replace(c.find("OUT"), 3, o);
      return c;
    };
    write(d / "one.json", with_out("r1"));
    write(d / "two.json", with_out("r2"));
    auto r = run({"run", (d / "one.json").string(), "-j", "1"});
    CHECK(r.code == kExitOk);
    r = run({"run", (d / "two.json").string(), "-j", "6"});
    CHECK(r.code == kExitOk);
    const auto csv = slurp(d / "r1" / "results.csv");
    CHECK(csv == slurp(d / "r2" / "results.csv"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 4 * 2 * 2 * 3);
    CHECK(nlohmann::json::parse(slurp(d / "r1" / "summary.json")).size() == 8);

    r = run({"report", (d / "r1" / "results.csv").string(), "--json", (d / "rep.json").string()});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("keyselect") != std::string::npos);
    CHECK(nlohmann::json::parse(slurp(d / "rep.json")).size() == 8);
  }

  TEST_CASE("report on empty or malformed files") {
    TempDir d;
    write(d / "empty.csv", "");
    auto r = run({"report", (d / "empty.csv").string()});
    CHECK(r.code == kExitData);
    CHECK(r.err.find("no data") != std::string::npos);
    write(d / "header.csv",
          "method,budget,day,replicate,recall,precision,tweet_coverage,user_coverage,labels_used\n");
    r = run({"report", (d / "header.csv").string()});
    CHECK(r.code == kExitData);
    CHECK(r.err.find("no data") != std::string::npos);
    write(d / "cols.csv", "method,budget\nx,1\n");
    r = run({"report", (d / "cols.csv").string()});
    CHECK(r.code == kExitData);
    CHECK(r.err.find("missing columns") != std::string::npos);
  }

  TEST_CASE("data directory resolution") {
    CHECK(resolve_data_dir(std::string("/x")) == "/x");
    ::setenv("KEYSEL_DATA_DIR", "/from/env", 1);
    CHECK(resolve_data_dir(std::nullopt) == "/from/env");
    ::unsetenv("KEYSEL_DATA_DIR");
    CHECK(resolve_data_dir(std::nullopt) == "keysel-data");
  }
}
