#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corraudit/cli.hpp"
#include "corraudit/dataset.hpp"
#include "corraudit/reference_data.hpp"
#include "oracle_golden.hpp"
#include "test_support.hpp"

#ifndef CORRAUDIT_GOLDEN_DIR
#error "CORRAUDIT_GOLDEN_DIR must point at tests/golden"
#endif

using namespace corraudit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "corraudit_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

const std::vector<std::string> kGoldenAudit{
    "audit", "@mtcars", "--target", "mpg", "--predictors", "disp,hp", "--protocols",
    "insample,loo", "--metrics", "mape,mae,rmse", "--format", "json"};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("correlate reports r at two decimals") {
    const auto r = run({"correlate", "@mtcars", "--target", "mpg", "--predictors", "disp,hp"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.empty());
    CHECK(r.out.find("disp       -0.85") != std::string::npos);
    CHECK(r.out.find("hp         -0.78") != std::string::npos);
  }

  TEST_CASE("fit of a column on itself is the identity line") {
    const auto r = run({"fit", "@mtcars", "--target", "mpg", "--predictor", "mpg", "--format",
                        "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["beta"] == 1.0);
    CHECK(j["alpha"] == 0.0);
  }

  TEST_CASE("audit json matches the frozen golden file") {
    const auto r = run(kGoldenAudit);
    REQUIRE(r.code == kExitOk);
    CHECK(r.err.empty());
    const std::string golden = slurp(fs::path(CORRAUDIT_GOLDEN_DIR) / "audit_mtcars.json");
    CHECK(r.out == golden);
    CHECK(run(kGoldenAudit).out == r.out);
  }

  TEST_CASE("golden audit file agrees with the exact-rational oracle") {
    const auto j =
        nlohmann::json::parse(slurp(fs::path(CORRAUDIT_GOLDEN_DIR) / "audit_mtcars.json"));
    for (const char* x : {"disp", "hp"}) {
      const auto& c = oracle::find("mtcars", x);
      const auto& p = j["predictors"][x];
      CHECK(testing_support::rel_err(p["alpha"].get<double>(), c.alpha) <= 1e-12);
      CHECK(testing_support::rel_err(p["beta"].get<double>(), c.beta) <= 1e-12);
      CHECK(testing_support::rel_err(p["r"].get<double>(), c.r) <= 1e-12);
      for (const auto& [protocol, want] : {std::pair{"insample", c.insample}, {"loo", c.loo}}) {
        const auto& m = j["evaluations"][protocol][x];
        CHECK(testing_support::rel_err(m["mape"].get<double>(), want.mape) <= 1e-12);
        CHECK(testing_support::rel_err(m["mae"].get<double>(), want.mae) <= 1e-12);
        CHECK(testing_support::rel_err(m["rmse"].get<double>(), want.rmse) <= 1e-12);
      }
    }
    CHECK(j["disagreements"].empty());
  }

  TEST_CASE("summarize formats") {
    const auto text = run({"summarize", "@mtcars", "--columns", "mpg,hp"});
    CHECK(text.code == kExitOk);
    CHECK(text.out.find("mpg") != std::string::npos);
    CHECK(text.out.find("20.09") != std::string::npos);

    const auto csv = run({"summarize", "@iris", "--format", "csv"});
    REQUIRE(csv.code == kExitOk);
    const auto ds = load_csv(csv.out, "summary", {NonNumeric::skip});
    CHECK(ds.rows() == 4);
    CHECK(column(ds, "mean")[2] == doctest::Approx(3.758));

    const auto json = run({"summarize", "@mtcars", "--columns", "disp", "--format", "json"});
    CHECK(nlohmann::json::parse(json.out)["columns"][0]["max"] == 472.0);
  }

  TEST_CASE("csv tables reload through the csv loader") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"correlate", "@iris", "--target", "petal_length", "--predictors",
              "sepal_length,petal_width", "--format", "csv"},
             {"fit", "@mtcars", "--target", "mpg", "--predictor", "hp", "--format", "csv"},
             {"evaluate", "@mtcars", "--target", "mpg", "--predictor", "hp", "--protocol",
              "kfold:4", "--format", "csv"},
             {"audit", "@mtcars", "--target", "mpg", "--predictors", "disp,hp,wt", "--protocols",
              "insample,loo", "--format", "csv"}}) {
      const auto r = run(args);
      REQUIRE(r.code == kExitOk);
      CHECK_NOTHROW(load_csv(r.out, "t", {NonNumeric::skip}));
    }
  }

  TEST_CASE("evaluate") {
    const auto r = run({"evaluate", "@mtcars", "--target", "mpg", "--predictor", "disp",
                        "--protocol", "loo", "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(testing_support::rel_err(j["metrics"]["rmse"].get<double>(),
                                   oracle::find("mtcars", "disp").loo.rmse) <= 1e-12);

    const auto seeded = run({"evaluate", "@mtcars", "--target", "mpg", "--predictor", "disp",
                             "--protocol", "kfold:5", "--seed", "42", "--format", "json"});
    const auto k = nlohmann::json::parse(seeded.out);
    CHECK(testing_support::rel_err(k["metrics"]["mae"].get<double>(),
                                   oracle::find("mtcars", "disp").kfold5_seed42.mae) <= 1e-12);
  }

  TEST_CASE("exit codes and streams") {
    auto r = run({});
    CHECK(r.code == kExitUsage);
    CHECK(r.out.empty());

    r = run({"correlate", "@mtcars", "--target", "mpg"});
    CHECK(r.code == kExitUsage);

    r = run({"evaluate", "@mtcars", "--target", "mpg", "--predictor", "hp", "--protocol",
             "kfold:99"});
    CHECK(r.code == kExitUsage);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());

    r = run({"correlate", "@mtcars", "--target", "mpg", "--predictors", "weightt"});
    CHECK(r.code == kExitData);
    CHECK(r.out.empty());
    CHECK(r.err.find("wt") != std::string::npos);

    r = run({"summarize", "@cars"});
    CHECK(r.code == kExitData);

    r = run({"correlate", "@mtcars", "--target", "mpg", "--predictors", "vs,am"});
    CHECK(r.code == kExitOk);

    const auto flat = scratch("flat.csv");
    std::ofstream(flat) << "x,y\n1,1\n1,2\n1,3\n";
    r = run({"fit", flat.string(), "--target", "y", "--predictor", "x"});
    CHECK(r.code == kExitNumeric);
    CHECK(r.out.empty());

    r = run({"summarize", "/nonexistent/file.csv"});
    CHECK(r.code == kExitData);

    r = run({"--help"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("audit") != std::string::npos);
  }

  TEST_CASE("files with text columns load with a warning unless --strict") {
    const auto path = scratch("labelled.csv");
    std::ofstream(path) << "name,x,y\na,1,2\nb,2,4.5\nc,3,5\n";
    auto r = run({"correlate", path.string(), "--target", "y", "--predictors", "x"});
    CHECK(r.code == kExitOk);
    CHECK(r.err.find("skipped non-numeric column 'name'") != std::string::npos);
    r = run({"correlate", path.string(), "--strict", "--target", "y", "--predictors", "x"});
    CHECK(r.code == kExitData);
  }

  TEST_CASE("plot writes a deterministic svg") {
    const auto a = scratch("a.svg"), b = scratch("b.svg");
    for (const auto& p : {a, b}) {
      const auto r = run({"plot", "@mtcars", "--target", "mpg", "--predictor", "disp", "--out",
                          p.string()});
      REQUIRE(r.code == kExitOk);
    }
    const std::string svg = slurp(a);
    CHECK(svg == slurp(b));
    CHECK(svg.find("r = -0.85") != std::string::npos);

    const auto stdout_run =
        run({"plot", "@mtcars", "--target", "mpg", "--predictor", "disp", "--out", "-"});
    CHECK(stdout_run.out == svg);
  }

  TEST_CASE("datasets export round-trips bit-exactly") {
    for (const auto& name : embedded_names()) {
      const auto path = scratch(name + ".csv");
      const auto r = run({"datasets", "export", name, "--out", path.string()});
      REQUIRE(r.code == kExitOk);
      const auto reloaded = load_csv_file(path.string(), {NonNumeric::skip});
      CHECK(reloaded.same_contents(load_embedded(name)));
    }
    const auto list = run({"datasets", "list"});
    CHECK(list.out.find("mtcars  n=32") != std::string::npos);
    CHECK(list.out.find("iris  n=150") != std::string::npos);
  }
}
