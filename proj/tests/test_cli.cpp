#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

int run(const std::string& args, const std::string& env = "") {
    std::string cmd = env + " " + std::string(NGAME_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string capture(const std::string& args) {
    std::string cmd = std::string(NGAME_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[512];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    pclose(pipe);
    return out;
}

}  // namespace

TEST_CASE("exit codes follow the yes/no/usage/guard contract") {
    CHECK(run("leaking --countable " + fixture("nature_pair.json")) == 0);
    CHECK(run("leaking --bound 0 " + fixture("single_leak.json")) == 10);
    CHECK(run("leaking --bound 1 " + fixture("single_leak.json")) == 0);
    CHECK(run("topo " + fixture("t1.json")) == 0);
    CHECK(run("topo " + fixture("t2.json")) == 10);
    CHECK(run("classify " + fixture("nature_pair_graph.json")) == 0);
    CHECK(run("leaking " + fixture("nature_pair.json")) == 1);      // neither mode picked
    CHECK(run("leaking --countable /nonexistent.json") == 1);
    CHECK(run("made-up-command x") == 1);
}

TEST_CASE("malformed documents exit with the usage code") {
    std::string bad = "/tmp/ngame_bad.json";
    FILE* f = fopen(bad.c_str(), "w");
    REQUIRE(f);
    fputs("{\"vertices\": [", f);
    fclose(f);
    CHECK(run("leaking --countable " + bad) == 1);
    f = fopen(bad.c_str(), "w");
    fputs("{\"vertices\":[{\"id\":\"a\",\"owner\":\"eloise\",\"priority\":0}],"
          "\"edges\":[[\"a\",\"a\"]],\"initial\":\"a\",\"extra\":1}",
          f);
    fclose(f);
    CHECK(run("leaking --countable " + bad) == 1);
}

TEST_CASE("the guard environment variable trips oversized runs") {
    CHECK(run("leaking --bound 40 " + fixture("single_leak.json"), "NATUREGAMES_GUARD=50") == 2);
}

TEST_CASE("verdicts are deterministic across runs") {
    std::string a = capture("leaking --countable " + fixture("single_leak.json"));
    std::string b = capture("leaking --countable " + fixture("single_leak.json"));
    CHECK(!a.empty());
    CHECK(a == b);
    std::string h1 = capture("harness --seed 7 --cases 20 --lassos 200 --suite transducer");
    std::string h2 = capture("harness --seed 7 --cases 20 --lassos 200 --suite transducer");
    CHECK(!h1.empty());
    CHECK(h1 == h2);
}

TEST_CASE("verdict documents carry witnesses and provenance") {
    std::string out = capture("leaking --bound 1 " + fixture("single_leak.json"));
    CHECK(out.find("\"question\"") != std::string::npos);
    CHECK(out.find("\"witness\"") != std::string::npos);
    CHECK(out.find("\"strategy\"") != std::string::npos);
    CHECK(out.find("\"provenance\"") != std::string::npos);
    std::string cls = capture("classify " + fixture("nature_pair_graph.json"));
    CHECK(cls.find("\"aleph0\"") != std::string::npos);
}

TEST_CASE("solve-parity answers on two-player documents only") {
    std::string two = "/tmp/ngame_two.json";
    FILE* f = fopen(two.c_str(), "w");
    REQUIRE(f);
    fputs("{\"edges\":[[\"a\",\"a\"]],\"initial\":\"a\","
          "\"vertices\":[{\"id\":\"a\",\"owner\":\"eloise\",\"priority\":0}]}",
          f);
    fclose(f);
    CHECK(run("solve-parity " + two) == 0);
    CHECK(run("solve-parity " + fixture("nature_pair.json")) == 1);  // Nature vertices rejected
}

TEST_CASE("dot export writes deterministic files") {
    std::string out1 = "/tmp/ngame_dot1.dot", out2 = "/tmp/ngame_dot2.dot";
    CHECK(run("export-dot " + fixture("single_leak.json") + " " + out1) == 0);
    CHECK(run("export-dot " + fixture("single_leak.json") + " " + out2) == 0);
    std::string a = capture("export-dot " + fixture("single_leak.json") + " /dev/stdout");
    CHECK(a.find("digraph") != std::string::npos);
    CHECK(run("export-dot --reduction hat " + fixture("nature_pair.json") + " " + out1) == 0);
    CHECK(run("export-dot --reduction check --bound 1 " + fixture("single_leak.json") + " " + out1) == 0);
    CHECK(run("export-dot --reduction tilde " + fixture("t1.json") + " " + out1) == 0);
}

TEST_CASE("the per-game oracle command re-verifies the fixtures") {
    CHECK(run("verify --oracle --memory 2 " + fixture("single_leak.json")) == 0);
    CHECK(run("verify --oracle --memory 2 " + fixture("nature_pair.json")) == 0);
}

TEST_CASE("imperfect commands answer on the matching-bits fixtures") {
    CHECK(run("imperfect leaking --countable --memory 1 " + fixture("matching_bits.json")) == 0);
    CHECK(run("imperfect topo --memory 1 " + fixture("matching_bits_oneplayer.json")) == 0);
}
