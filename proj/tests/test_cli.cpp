#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

using Json = nlohmann::json;

}  // namespace

TEST_CASE("group info") {
    auto r = run("group info --family cyclic --n 3 --out json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j["order"] == 3);
    REQUIRE(j["num_hyperplanes"] == 1);
    REQUIRE(j["degrees"] == Json::array({3}));
    REQUIRE(j["group"]["conductor"] == 3);
}

TEST_CASE("usage errors exit with code 2") {
    REQUIRE(run("group info --family nosuch --n 3").exit_code == 2);
    REQUIRE(run("group info --badflag 1 --family cyclic --n 3").exit_code == 2);
    REQUIRE(run("group --family cyclic --n 3").exit_code == 2);  // missing action
    REQUIRE(run("quasi basis --family cyclic --n 2 --k 1/2 --degree 3").exit_code == 2);
    REQUIRE(run("dunkl apply --family cyclic --n 2 --poly \"x9\"").exit_code == 2);
}

TEST_CASE("Dunkl application") {
    auto r = run("dunkl apply --family cyclic --n 2 --k 1 --xi e1 --poly \"x1^3\" --out json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j["result_text"] == "x1^2");
}

TEST_CASE("quasi hilbert example") {
    auto r = run("quasi hilbert --family cyclic --n 2 --k 0,1 --max-degree 10 --out json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j["numerator"] == "1 + t^3");
    REQUIRE(j["p_at_one"] == 2);
}

TEST_CASE("residue matrices in the determinant representation") {
    auto r = run("kz residues --family cyclic --n 2 --k 3 --tau det --out json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j["equivariant"] == true);
    // One hyperplane, 1x1 matrix with value 2k = 6.
    REQUIRE(j["residues"].size() == 1);
    REQUIRE(j["residues"][0][0][0]["c"][0][1] == "6");
}

TEST_CASE("singular parameter yields a property failure") {
    auto r = run("derham intertwiner --family cyclic --n 2 --k -1/2 --out json --max-degree 4");
    REQUIRE(r.exit_code == 1);
    Json j = Json::parse(r.out);
    REQUIRE(j["intertwiner"]["status"] == "singular");
    REQUIRE(j["intertwiner"]["eigenvalue"] == "-1");
}

TEST_CASE("restricted operators commute") {
    auto r = run("cm commutator --family symmetric --n 3 --k 1 --p p2 --q p3 --out json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j["pass"] == true);
}

TEST_CASE("group and multiplicity files") {
    {
        std::ofstream g("/tmp/cli_group.json");
        g << R"({"family": "G", "params": {"m": 3, "p": 1, "n": 2}})";
    }
    {
        std::ofstream k("/tmp/cli_k.json");
        k << R"({"orbits": [[0, 1], [0, 1, 2]]})";
    }
    auto r = run("group info --group /tmp/cli_group.json --k /tmp/cli_k.json --out json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j["order"] == 18);
    REQUIRE(j["k"].size() == 2);

    // A multiplicity with k_{C,0} != 0 is rejected.
    {
        std::ofstream k("/tmp/cli_k_bad.json");
        k << R"({"orbits": [[1, 1], [0, 1, 2]]})";
    }
    REQUIRE(run("group info --group /tmp/cli_group.json --k /tmp/cli_k_bad.json").exit_code == 2);
}

TEST_CASE("suite output is byte-identical across thread counts") {
    std::string args = "suite --family cyclic --n 3 --k 0,1,2 --max-degree 5 --out json";
    auto a = run(args + " --jobs 1");
    auto b = run(args + " --jobs 4");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    REQUIRE(a.out == b.out);
    Json j = Json::parse(a.out);
    REQUIRE(j["pass"] == true);
    REQUIRE(j["checks"]["commutativity"]["pass"] == true);
}

TEST_CASE("text output is the default") {
    auto r = run("group info --family cyclic --n 2");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.out.find("order: 2") != std::string::npos);
}
