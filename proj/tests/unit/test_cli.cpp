#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli/cli.hpp"
#include "psq/arith.hpp"
#include "psq/report.hpp"

using psq::cli::ExitCode;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = psq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Result r = run(args);
  EXPECT_TRUE(r.code == 0 || r.code == 1) << r.err;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, CountExamples) {
  const json doc = run_json({"count", "--n", "10", "--k", "2", "--witnesses", "5"});
  const auto w = psq::open_envelope(doc, "count")["count"].get<psq::counting::WeightedCount>();
  EXPECT_EQ(w.terms, 3u);
  EXPECT_NEAR(w.value, std::log(105.0L), 1e-15L);
  EXPECT_EQ(doc["result"]["witnesses"].size(), 3u);
  EXPECT_EQ(doc["config"]["k"], 2);

  const Result zero = run({"count", "--n", "38", "--k", "24738", "--exclude-one"});
  EXPECT_EQ(zero.code, static_cast<int>(ExitCode::kZeroCount));
  EXPECT_NE(zero.out.find("# k: 24738"), std::string::npos);
  EXPECT_EQ(run({"count", "--n", "1e6"}).code, 0);
}

TEST(Cli, InvalidInputs) {
  EXPECT_EQ(run({"count", "--n", "10", "--k", "12"}).code, static_cast<int>(ExitCode::kInvalidInput));
  EXPECT_EQ(run({"count", "--n", "abc"}).code, static_cast<int>(ExitCode::kInvalidInput));
  EXPECT_EQ(run({"count", "--n", "10", "--bogus"}).code, static_cast<int>(ExitCode::kInvalidInput));
  EXPECT_EQ(run({}).code, static_cast<int>(ExitCode::kInvalidInput));
  EXPECT_EQ(run({"bound", "--n", "4e18", "--k", "2", "--C", "0.7"}).code,
            static_cast<int>(ExitCode::kInvalidInput));
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, BoundNeedsTable) {
  const Result r = run({"bound", "--n", "4e18", "--k", "2"});
  EXPECT_EQ(r.code, static_cast<int>(ExitCode::kMissingData));
  EXPECT_NE(r.out.find("insufficient-table"), std::string::npos);
  EXPECT_EQ(run({"--ctheta", "/nonexistent.csv", "bound", "--n", "4e18", "--k", "2"}).code,
            static_cast<int>(ExitCode::kMissingData));
}

TEST(Cli, BoundWithTable) {
  const auto path = std::filesystem::temp_directory_path() / "psq-cli-ctheta.csv";
  {
    std::ofstream out(path);
    for (std::uint64_t a = 2; a <= 316; ++a)
      if (psq::arith::is_squarefree(a)) out << a * a << ", 1000000000, 0.00119047619\n";
  }
  const json doc = run_json({"--ctheta", path.string(), "bound", "--n", "4e18", "--k", "2"});
  const auto report = psq::open_envelope(doc, "bound").get<psq::analytic::LowerBoundReport>();
  EXPECT_EQ(report.verdict, psq::analytic::Verdict::Positive);
  EXPECT_EQ(report.table_provenance, path.string());
  std::filesystem::remove(path);
}

TEST(Cli, Exceptions) {
  const json doc = run_json({"exceptions", "--k", "33", "--limit", "10000", "--parity", "all"});
  EXPECT_EQ(doc["result"]["exceptions"].back(), 35);
  const json cert = run_json({"exceptions", "--k", "24738", "--limit", "100000", "--parity", "even",
                              "--threshold-source", "goldbach-external"});
  const auto c = psq::open_envelope(cert, "certificate").get<psq::search::ExceptionCertificate>();
  EXPECT_EQ(c.largest_exception, 38u);
  EXPECT_FALSE(c.gap_free);
}

TEST(Cli, VerifyAndTriples) {
  const json v = run_json({"verify", "--lo", "600", "--hi", "20000", "--interval-length", "5000"});
  const auto report = psq::open_envelope(v, "verify").get<psq::search::VerifyReport>();
  EXPECT_TRUE(report.failures.empty());
  EXPECT_TRUE(report.complete);
  const json t = run_json({"triples", "--n", "10000"});
  EXPECT_NO_THROW(psq::search::validate(psq::open_envelope(t, "triples")["witness"].get<psq::search::TripleWitness>()));
}

TEST(Cli, CheckpointFailuresMapToInternal) {
  const auto path = std::filesystem::temp_directory_path() / "psq-cli-journal";
  std::ofstream(path) << "not a journal\n";
  EXPECT_EQ(run({"--checkpoint", path.string(), "verify", "--lo", "600", "--hi", "5000"}).code,
            static_cast<int>(ExitCode::kInternal));
  std::filesystem::remove(path);
}

TEST(Cli, Table1AndChen) {
  const Result t = run({"table1", "--limit", "10000"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("30030"), std::string::npos);
  const json chen = run_json({"chen-bound"});
  EXPECT_TRUE(psq::open_envelope(chen, "chen-bound")["below_e33"].get<bool>());
}
