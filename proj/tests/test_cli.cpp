#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "qfock/relations.hpp"

using nlohmann::json;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = qfock::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("dim prints the module dimension") {
    const auto r = run_cli({"dim", "--n", "1", "--m", "1", "--p", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "5\n");
}

TEST_CASE("basis export") {
    const auto r = run_cli({"basis", "--n", "1", "--m", "1", "--p", "2"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["states"].size() == 5);
    CHECK(j["states"][0] == json::array({0, 0}));

    const auto csv = run_cli({"basis", "--n", "1", "--m", "1", "--p", "2", "--out", "csv"});
    CHECK(csv.out == "0,0\n0,1\n1,0\n1,1\n2,0\n");
}

TEST_CASE("verify exact exits zero with no failures") {
    const auto r = run_cli({"verify", "--n", "1", "--m", "1", "--p", "2", "--mode", "exact"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["summary"]["failed"] == 0);
    CHECK(j["mode"] == "exact");
    CHECK(j["summary"]["total"].get<int>() > 50);
}

TEST_CASE("verify output is deterministic") {
    const auto a = run_cli({"verify", "--n", "2", "--m", "1", "--p", "1"});
    const auto b = run_cli({"verify", "--n", "2", "--m", "1", "--p", "1"});
    CHECK(a.out == b.out);
    CHECK(a.code == 0);
}

TEST_CASE("verify with the chevalley layer") {
    const auto r = run_cli(
        {"verify", "--n", "1", "--m", "1", "--p", "2", "--chevalley", "--q", "2/3,3/5"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["chevalley"].size() == 2);
    CHECK(j["chevalley"][0]["q0"] == "2/3");
    CHECK(j["chevalley"][0]["status"] == "ok");
}

TEST_CASE("verify numeric mode") {
    const auto r = run_cli(
        {"verify", "--n", "1", "--m", "1", "--p", "2", "--mode", "numeric", "--q", "0.7"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["summary"]["failed"] == 0);
    // numeric mode needs a q sample
    CHECK(run_cli({"verify", "--n", "1", "--m", "1", "--p", "2", "--mode", "numeric"}).code == 2);
}

TEST_CASE("matrix export") {
    const auto r = run_cli({"matrix", "--n", "1", "--m", "1", "--p", "2", "a+_1"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["label"] == "a+_1");
    CHECK(j["mode"] == "exact");
    CHECK(j["entries"].size() == 3);

    const auto multi = run_cli({"matrix", "--n", "1", "--m", "1", "--p", "2", "H_1", "L_2"});
    CHECK(json::parse(multi.out).is_array());

    const auto chev = run_cli({"matrix", "--n", "1", "--m", "1", "--p", "2", "--chevalley", "--q",
                               "2/3", "e_2", "k_1"});
    CHECK(chev.code == 0);
    CHECK(json::parse(chev.out)[0]["label"] == "e_2");

    CHECK(run_cli({"matrix", "--n", "1", "--m", "1", "--p", "2", "bogus_1"}).code == 2);
    CHECK(run_cli({"matrix", "--n", "1", "--m", "1", "--p", "2", "e_2"}).code == 2);
}

TEST_CASE("check single identities and exit codes") {
    const auto pass = run_cli(
        {"check", "--n", "2", "--m", "1", "--p", "2", "scomm(Ap(1), Ap(3), 1) == 0"});
    CHECK(pass.code == 0);
    CHECK(json::parse(pass.out)["checks"][0]["status"] == "pass");

    const auto fail = run_cli({"check", "--n", "1", "--m", "1", "--p", "2", "H(1) == H(2)"});
    CHECK(fail.code == 1);
    CHECK(json::parse(fail.out)["summary"]["failed"] == 1);

    const auto syntax = run_cli({"check", "--n", "1", "--m", "1", "--p", "2", "H(1) == "});
    CHECK(syntax.code == 2);
    CHECK(syntax.err.find("SYNTAX") != std::string::npos);

    const auto chev = run_cli({"check", "--n", "1", "--m", "1", "--p", "2", "--chevalley", "--q",
                               "2/3", "scomm(E(1), F(1)) == qdivdiff(K(1), Kinv(1))"});
    CHECK(chev.code == 0);
}

TEST_CASE("check a catalog file with a params header") {
    const std::string path = "qfock_test_catalog.txt";
    {
        std::ofstream f(path);
        f << "# two defining instances\n";
        f << "params 1 1 2\n";
        f << "comm(H(1), H(2)) == 0\n";
        f << "scomm(Am(1), Ap(1)) == qdivdiff(L(1), Linv(1))\n";
    }
    const auto r = run_cli({"check", "--catalog", path});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["params"]["n"] == 1);
    CHECK(j["checks"].size() == 2);
    CHECK(j["summary"]["failed"] == 0);

    const auto clash = run_cli({"check", "--n", "2", "--m", "1", "--p", "2", "--catalog", path});
    CHECK(clash.code == 2);
    std::remove(path.c_str());
}

TEST_CASE("chevalley subcommand") {
    const auto r = run_cli({"chevalley", "--n", "1", "--m", "1", "--p", "2", "--q", "2/3"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["samples"].size() == 1);
    CHECK(j["samples"][0]["status"] == "ok");
    CHECK(j["samples"][0]["matrices"].size() == 10); // 5 kinds x 2 generators
    CHECK(j["summary"]["failed"] == 0);
}

TEST_CASE("spectrum subcommand") {
    const auto r = run_cli(
        {"spectrum", "--n", "1", "--m", "1", "--p", "2", "--energies", "1"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["ladder"]["status"] == "pass");
    CHECK(j["sum_of_H_form_matches"] == false);
    std::vector<std::string> energies;
    for (const auto& row : j["spectrum"]) energies.push_back(row["energy"].get<std::string>());
    CHECK(energies == std::vector<std::string>{"0", "1", "1", "2", "2"});

    const auto frac = run_cli(
        {"spectrum", "--n", "2", "--m", "2", "--p", "3", "--energies", "3/2,2/5"});
    CHECK(frac.code == 0);

    CHECK(run_cli({"spectrum", "--n", "2", "--m", "1", "--p", "2", "--energies", "1,1"}).code == 2);
    CHECK(run_cli({"spectrum", "--n", "1", "--m", "1", "--p", "2"}).code == 2);
}

TEST_CASE("the rendered relation catalog passes through check --catalog") {
    const qfock::FockParams params{2, 1, 2};
    const std::string path = "qfock_rendered_catalog.txt";
    std::size_t count = 0;
    {
        std::ofstream f(path);
        f << "params " << params.n << " " << params.m << " " << params.p << "\n";
        for (const auto& entry : qfock::render_catalog(params)) {
            f << "# " << entry.id.str() << "\n" << entry.identity << "\n";
            ++count;
        }
    }
    const auto r = run_cli({"check", "--catalog", path});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["summary"]["total"] == count);
    CHECK(j["summary"]["failed"] == 0);
    std::remove(path.c_str());
}

TEST_CASE("text and csv renderers") {
    const auto text = run_cli({"verify", "--n", "1", "--m", "0", "--p", "1", "--out", "text"});
    CHECK(text.code == 0);
    CHECK(text.out.find("[skipped] 6e1(1)") != std::string::npos);
    CHECK(text.out.find("summary: total=") != std::string::npos);

    const auto csv = run_cli({"verify", "--n", "1", "--m", "0", "--p", "1", "--out", "csv"});
    CHECK(csv.out.rfind("id,indices,status,mode\n", 0) == 0);
    CHECK(csv.out.find("6c,1,pass,exact") != std::string::npos);

    const auto spec_csv = run_cli(
        {"spectrum", "--n", "1", "--m", "1", "--p", "2", "--energies", "1", "--out", "csv"});
    CHECK(spec_csv.out.find("\"(1,1)\",2") != std::string::npos);

    const auto mat_text =
        run_cli({"matrix", "--n", "1", "--m", "1", "--p", "2", "a-_1", "--out", "text"});
    CHECK(mat_text.out.find("[0,2] = q + q^-1") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"bogus"}).code == 2);
    CHECK(run_cli({"dim", "--n", "1"}).code == 2);
    CHECK(run_cli({"dim", "--n", "0", "--m", "0", "--p", "1"}).code == 2);
    const auto help = run_cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("basis") != std::string::npos);
}
