#include <doctest.h>

#include <fstream>
#include <iterator>
#include <json.hpp>

#include "ivts/dgp.hpp"
#include "ivts/imaging.hpp"
#include "support.hpp"

using ivts::testing::run_command;
using ivts::testing::TempDir;

namespace {

const std::string kCli = IVTS_CLI_PATH;

ivts::testing::CommandResult cli(const std::string& args) { return run_command("'" + kCli + "' " + args); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace

TEST_CASE("generate writes a dataset and its config") {
    TempDir dir("ivts_cli");
    const auto d = (dir / "d.csv").string();
    const auto r = cli("generate --scenario dgp-classes --per-class 4 --T 20 --rho 0.7 --seed 3 --out " + d);
    REQUIRE(r.status == 0);
    CHECK(r.output.find("n=12 C=3 d=1 T=20") != std::string::npos);
    const auto ds = ivts::read_dataset_csv(d);
    CHECK(ds.items.size() == 12);

    // replaying the echoed config reproduces the file
    const auto again = (dir / "again.csv").string();
    REQUIRE(cli("--config " + d + ".config.ini generate --out " + again).status == 0);
    CHECK(slurp(d) == slurp(again));
}

TEST_CASE("image, classify and report") {
    TempDir dir("ivts_cli");
    const auto d = (dir / "d.csv").string();
    REQUIRE(cli("generate --scenario univariate --dgp 3 --per-class 4 --T 16 --seed 1 --out " + d).status == 0);

    const auto imgs = dir / "imgs";
    const auto r = cli("image --data " + d + " --out-dir " + imgs.string() + " --kernel K5 --epsilon 0.8");
    REQUIRE(r.status == 0);
    CHECK(std::filesystem::exists(imgs / "index.csv"));
    CHECK(std::filesystem::exists(imgs / "run_config.ini"));
    const auto img = ivts::read_pgm(imgs / "img_0.pgm");
    CHECK(img.size() == 16);

    const auto knn = dir / "knn";
    const auto c = cli("classify --data " + d + " --out-dir " + knn.string() + " --runs 3 --seed 2");
    REQUIRE(c.status == 0);
    CHECK(c.output.find("median accuracy") != std::string::npos);
    const auto report = slurp(knn / "report.csv");
    CHECK(report.rfind("run,kernel,dgp,seed,accuracy\n0,K4,d,2,", 0) == 0);

    const auto lin = dir / "lin";
    const auto l = cli("classify --images " + imgs.string() + " --mode linear --q 4 --steps 50 --out-dir " +
                       lin.string());
    REQUIRE(l.status == 0);
    CHECK(std::filesystem::exists(lin / "model.txt"));
}

TEST_CASE("bound text and json") {
    const auto t = cli("bound --c-A 1 --c-B 1 --c-Z 1 --n 100 --log-covering 10");
    REQUIRE(t.status == 0);
    CHECK(t.output.find("excess_risk_bound = 65.76") != std::string::npos);
    CHECK(t.output.find("offset_rademacher_bound = 16.44") != std::string::npos);

    const auto j = cli("bound --c-A 1 --c-B 1 --c-Z 1 --n 100 --log-covering 10 --json --mc --p 3 --mc-draws 8");
    REQUIRE(j.status == 0);
    const auto doc = nlohmann::json::parse(j.output);
    CHECK(doc["excess_risk_bound"].get<double>() == doctest::Approx(65.76));
    CHECK(doc["g_bound_pair"].get<double>() == 8.0);
    CHECK(doc["mc_offset_rademacher"]["value"].get<double>() >= 0.0);
}

TEST_CASE("exit codes") {
    TempDir dir("ivts_cli");
    CHECK(cli("").status == 2);
    CHECK(cli("bound --c-A 1").status == 2);
    CHECK(cli("classify --data x.csv --images y --out-dir " + dir.path().string()).status == 2);
    CHECK(cli("image --data " + (dir / "missing.csv").string() + " --out-dir " + dir.path().string()).status == 3);
    CHECK(cli("generate --scenario dgp-classes --out " + (dir / "x.csv").string()).status == 2);
    CHECK(cli("bound --c-A -1 --c-B 1 --c-Z 1 --n 10 --log-covering 1").status == 2);

    // indefinite kernel on a generic dataset
    const auto d = (dir / "d.csv").string();
    REQUIRE(cli("generate --scenario dgp-classes --rho 0 --per-class 3 --T 10 --out " + d).status == 0);
    CHECK(cli("image --data " + d + " --kernel 1,2,1 --out-dir " + (dir / "i").string()).status == 4);
    CHECK(cli("image --data " + d + " --m 20 --out-dir " + (dir / "i").string()).status == 3);
}
