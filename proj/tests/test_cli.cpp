#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string binary_path() {
    const char* p = std::getenv("PCLAB_BIN");
    REQUIRE_MESSAGE(p != nullptr, "PCLAB_BIN must point at the pclab binary");
    return p;
}

RunResult run(const std::string& args) {
    const std::string err_file = "/tmp/pclab_test_stderr.txt";
    const std::string cmd = binary_path() + " " + args + " 2>" + err_file;
    RunResult res;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (FILE* f = fopen(err_file.c_str(), "rb")) {
        while ((got = fread(buf.data(), 1, buf.size(), f)) > 0) res.err.append(buf.data(), got);
        fclose(f);
    }
    return res;
}

using Json = nlohmann::json;

}  // namespace

TEST_CASE("expand emits the pc-table schema") {
    RunResult r = run("expand --m 2 --expr \"1/(1-x1-x2)\" --N 3 --format json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("schema") == "pc-table/1");
    CHECK(j.at("m") == 2);
    CHECK(j.at("N") == 3);
    bool found = false;
    for (const auto& e : j.at("entries"))
        if (e.at("n") == Json::array({2, 1})) {
            CHECK(e.at("c") == "3");
            found = true;
        }
    CHECK(found);

    RunResult csv = run("expand --m 2 --expr \"1/(1-x1-x2)\" --N 3 --format csv");
    REQUIRE(csv.exit_code == 0);
    CHECK(csv.out.substr(0, 8) == "n1,n2,c\n");
    CHECK(csv.out.find("2,1,\"3\"") != std::string::npos);
}

TEST_CASE("hankel on expseries") {
    RunResult r = run("hankel --expr \"expseries()\" --n 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "-1/144\n");
}

TEST_CASE("remark emits the documented CSV row") {
    RunResult r = run("remark --k 1 --N 10");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.substr(0, 24) == "k,N,log_dN,target,ratio\n");
    CHECK(r.out.find("1,10,") != std::string::npos);
    CHECK(r.out.find("0.7832") != std::string::npos);

    RunResult j = run("remark --k 2 --N 12 --format json");
    REQUIRE(j.exit_code == 0);
    CHECK(Json::parse(j.out).at("dN") == "60");
}

TEST_CASE("profile formats agree on numeric content") {
    RunResult j = run("profile --m 1 --expr \"log1p(1)\" --N 20 --format json");
    RunResult c = run("profile --m 1 --expr \"log1p(1)\" --N 20 --format csv");
    REQUIRE(j.exit_code == 0);
    REQUIRE(c.exit_code == 0);
    Json pj = Json::parse(j.out);
    CHECK(pj.at("schema") == "pc-profile/1");
    CHECK(pj.at("class") == "logarithmic");
    // the CSV carries the same h_N values
    std::string csv = c.out;
    size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 22);  // header + N = 0..20

    RunResult s = run("profile --m 1 --expr \"log1p(1)\" --N 12 --format json --s-primes 2,3,5,7,11");
    REQUIRE(s.exit_code == 0);
    CHECK(Json::parse(s.out).at("s_integral") == true);
}

TEST_CASE("guess-recurrence and reconstruct subcommands") {
    RunResult r = run("guess-recurrence --expr \"t/(1-t-t^2)\" --terms 32 --kind constant --max-order 4 --format json");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("found") == true);
    CHECK(j.at("recurrence").at("order") == 2);
    CHECK(j.at("recurrence").at("denominator") == "1 - t - t^2");

    RunResult p = run("guess-recurrence --expr \"expseries()\" --terms 40 --kind p --max-order 2 --max-degree 2 --format json");
    REQUIRE(p.exit_code == 0);
    CHECK(Json::parse(p.out).at("found") == true);

    RunResult rec = run("reconstruct --m 2 --expr \"1/((1-x1*x2)*(1-zeta(3)*x1))\" --N 10 --max-deg-num 2 --max-deg-den 3 --format json");
    REQUIRE(rec.exit_code == 0);
    Json rj = Json::parse(rec.out);
    CHECK(rj.at("found") == true);
    CHECK(rj.at("form").at("torsion_form") == true);
    CHECK(rj.at("form").at("factors").size() == 2);
}

TEST_CASE("poles-check subcommand") {
    RunResult t = run("poles-check --poly \"1-t^3\" --format json");
    REQUIRE(t.exit_code == 0);
    Json j = Json::parse(t.out);
    CHECK(j.at("all_roots_of_unity") == true);
    CHECK(j.at("certificate").size() == 2);

    RunResult f = run("poles-check --poly \"1-t-t^2\"");
    REQUIRE(f.exit_code == 0);
    CHECK(f.out.substr(0, 5) == "false");
}

TEST_CASE("exit codes: usage, computation, and certify assertions") {
    CHECK(run("expand --no-such-flag").exit_code == 1);
    CHECK(run("expand").exit_code == 1);  // missing --expr
    CHECK(run("nonsense").exit_code == 1);

    RunResult comp = run("expand --m 1 --expr \"1/x1\" --N 4");
    CHECK(comp.exit_code == 2);
    CHECK(comp.err.find("error") != std::string::npos);

    // computation errors surface as single-line JSON on stderr in json mode
    RunResult cj = run("expand --m 1 --expr \"1/x1\" --N 4 --format json");
    CHECK(cj.exit_code == 2);
    REQUIRE(!cj.err.empty());
    const std::string line = cj.err.substr(0, cj.err.find('\n'));
    Json ej = Json::parse(line);
    CHECK(ej.at("kind") == "semantic");

    // a refuted --expect torsion assertion exits 3
    RunResult expect3 = run("certify --m 2 --expr \"gapfact()\" --N 64 --expect torsion --format json -o /tmp/pclab_expect3.json");
    CHECK(expect3.exit_code == 3);
    // and a consistent one exits 0
    RunResult expect0 = run("certify --m 2 --expr \"1/((1-x1)*(1-x1*x2))\" --N 16 --expect torsion --format json -o /tmp/pclab_expect0.json");
    CHECK(expect0.exit_code == 0);
}

TEST_CASE("environment variables feed defaults, flags win") {
    // order 8 factor: with PCLAB_TORSION_BOUND=6 the factor search stops short
    setenv("PCLAB_TORSION_BOUND", "6", 1);
    RunResult low = run("reconstruct --m 1 --expr \"1/(1-zeta(8)*t)\" --N 12 --max-deg-num 1 --max-deg-den 2 --format json");
    REQUIRE(low.exit_code == 0);
    CHECK(Json::parse(low.out).at("form").at("torsion_form") == false);
    RunResult high = run("reconstruct --m 1 --expr \"1/(1-zeta(8)*t)\" --N 12 --max-deg-num 1 --max-deg-den 2 --torsion-bound 24 --format json");
    REQUIRE(high.exit_code == 0);
    CHECK(Json::parse(high.out).at("form").at("torsion_form") == true);
    unsetenv("PCLAB_TORSION_BOUND");
}

TEST_CASE("output lands in the requested file") {
    const std::string path = "/tmp/pclab_out_test.json";
    std::remove(path.c_str());
    RunResult r = run("hankel --expr \"expseries()\" --n 1 --format json -o " + path);
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.empty());
    FILE* f = fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    char buf[256];
    const size_t got = fread(buf, 1, sizeof buf, f);
    fclose(f);
    Json j = Json::parse(std::string(buf, got));
    CHECK(j.at("delta") == "-1/2");
}
