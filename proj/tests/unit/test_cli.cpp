#include <gtest/gtest.h>

#if defined(CATENAE_HAVE_CLI)

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kData = CATENAE_TEST_DATA;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Result r;
  r.code = catenae::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_path(const std::string& name) {
  return (fs::temp_directory_path() / ("catenae_cli_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"weigh"}).code, 1);  // missing --corpus
  EXPECT_EQ(run({"weigh", "--corpus", kData + "/corpus", "--damping", "1.5"}).code, 1);
  const auto missing = run({"weigh", "--corpus", kData + "/nowhere"});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("catenae: "), std::string::npos);
}

TEST(Cli, WeighIsDeterministicAndThreadIndependent) {
  const auto one = run({"weigh", "--corpus", kData + "/corpus", "--threads", "1", "--top", "3"});
  const auto four = run({"weigh", "--corpus", kData + "/corpus", "--threads", "4", "--top", "3"});
  ASSERT_EQ(one.code, 0) << one.err;
  EXPECT_EQ(one.out, four.out);
  EXPECT_EQ(one.out.rfind("d01\t", 0), 0u);
  EXPECT_EQ(std::count(one.out.begin(), one.out.end(), '\n'), 90);
}

TEST(Cli, IndexSearchEval) {
  const auto index = temp_path("index");
  fs::remove_all(index);
  const auto built = run({"index", "--corpus", kData + "/corpus", "--index", index});
  ASSERT_EQ(built.code, 0) << built.err;
  EXPECT_EQ(built.out.rfind("documents\t30\n", 0), 0u);

  const auto runfile = temp_path("run.txt");
  const auto search = run({"search", "--index", index, "--queries", kData + "/queries.tsv", "--out", runfile});
  ASSERT_EQ(search.code, 0) << search.err;
  EXPECT_TRUE(search.out.empty());
  EXPECT_NE(slurp(runfile).find("q1 Q0 "), std::string::npos);

  const auto eval = run({"eval", "--run", runfile, "--qrels", kData + "/qrels.txt", "--metric", "ndcg@10"});
  ASSERT_EQ(eval.code, 0) << eval.err;
  EXPECT_NE(eval.out.find("all\tndcg@10\t"), std::string::npos);

  const auto tw = run({"search", "--index", index, "--query", "whale ocean", "--model", "tw"});
  ASSERT_EQ(tw.code, 0) << tw.err;
  EXPECT_EQ(tw.out.rfind("q1 Q0 ", 0), 0u);

  const auto diff = run({"difficulty", "--index", index, "--query", "zzzz"});
  ASSERT_EQ(diff.code, 0) << diff.err;
  EXPECT_EQ(diff.out, "q1\t1\n");
  fs::remove_all(index);
  fs::remove(runfile);
}

TEST(Cli, ConfigFileDefaultsYieldToFlags) {
  const auto cfg = temp_path("weigh.cfg");
  {
    std::ofstream out(cfg);
    out << "# defaults\ntop = 1\nwindow=4\n";
  }
  const auto from_cfg = run({"weigh", "--corpus", kData + "/corpus", "--config", cfg});
  ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
  EXPECT_EQ(std::count(from_cfg.out.begin(), from_cfg.out.end(), '\n'), 30);
  const auto flag_wins = run({"weigh", "--corpus", kData + "/corpus", "--config", cfg, "--top", "2"});
  EXPECT_EQ(std::count(flag_wins.out.begin(), flag_wins.out.end(), '\n'), 60);
  const auto explicit_window =
      run({"weigh", "--corpus", kData + "/corpus", "--top", "1", "--window", "4"});
  EXPECT_EQ(explicit_window.out, from_cfg.out);
  EXPECT_EQ(run({"weigh", "--corpus", kData + "/corpus", "--config", temp_path("none.cfg")}).code, 2);
  fs::remove(cfg);
}

TEST(Cli, CompAndCoherence) {
  const auto comp = run({"comp", "--corpus", kData + "/corpus", "--phrases", kData + "/phrases.txt",
                         "--synonyms", kData + "/synonyms_identity.tsv"});
  ASSERT_EQ(comp.code, 0) << comp.err;
  EXPECT_NE(comp.out.find("hot dog\tkl\t0"), std::string::npos);

  const auto coh = run({"coherence", "--corpus", kData + "/chain/corpus", "--annotations",
                        kData + "/chain/annotations"});
  ASSERT_EQ(coh.code, 0) << coh.err;
  EXPECT_NE(coh.out.find("chain\t"), std::string::npos);
  EXPECT_EQ(coh.out.substr(coh.out.rfind('\t') + 1), "1\n");
  EXPECT_EQ(run({"coherence", "--annotations", kData + "/annotations", "--shuffles", "0"}).code, 1);
}

TEST(Cli, RerankLambdaZeroAndPerQuery) {
  const auto index = temp_path("rerank_index");
  const auto runfile = temp_path("rerank_run.txt");
  ASSERT_EQ(run({"index", "--corpus", kData + "/corpus", "--index", index}).code, 0);
  ASSERT_EQ(run({"search", "--index", index, "--queries", kData + "/queries.tsv", "--out", runfile}).code, 0);
  auto ids = [](const std::string& trec) {
    std::istringstream in(trec);
    std::string line, all;
    while (std::getline(in, line)) all += line.substr(0, line.find(' ', line.find(' ', line.find(' ') + 1) + 1)) + "\n";
    return all;
  };
  const auto zero = run({"rerank-rst", "--run", runfile, "--annotations", kData + "/annotations", "--lambda", "0"});
  ASSERT_EQ(zero.code, 0) << zero.err;
  EXPECT_EQ(ids(zero.out), ids(slurp(runfile)));
  const auto per = run({"rerank-rst", "--run", runfile, "--annotations", kData + "/annotations", "--per-query"});
  ASSERT_EQ(per.code, 0) << per.err;
  EXPECT_NE(per.out.find("bm25+rst"), std::string::npos);
  fs::remove_all(index);
  fs::remove(runfile);
}

TEST(Cli, FuseInlineAndConflicts) {
  const auto ok = run({"fuse", "--tree", R"({"op":"consensus","children":[{"r":8,"s":0},{"r":0,"s":8}]})"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("\"u\":0.1111111111111111"), std::string::npos);
  const std::string conflict =
      R"({"op":"consensus","children":[{"b":1,"d":0,"u":0},{"b":0,"d":1,"u":0}]})";
  EXPECT_EQ(run({"fuse", "--tree", conflict}).code, 2);
  EXPECT_EQ(run({"fuse", "--tree", conflict, "--dogmatic-limit"}).code, 0);
}

TEST(Cli, GraphDump) {
  const auto words = run({"graph", "dump", "--corpus", kData + "/corpus", "--doc", "d01"});
  ASSERT_EQ(words.code, 0) << words.err;
  EXPECT_EQ(words.out.rfind("graph ", 0), 0u);
  const auto bip = run({"graph", "dump", "--corpus", kData + "/corpus", "--doc", "d01", "--annotations",
                        kData + "/annotations", "--kind", "bipartite"});
  ASSERT_EQ(bip.code, 0) << bip.err;
  EXPECT_NE(bip.out.find("S:s0"), std::string::npos);
  EXPECT_EQ(run({"graph", "dump", "--corpus", kData + "/corpus", "--doc", "d99"}).code, 2);
}

#endif
