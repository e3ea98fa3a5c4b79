// acceptance -- runs every acceptance criterion and prints one line each
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "naturegames/cardinality.hpp"
#include "naturegames/harness.hpp"
#include "naturegames/imperfect.hpp"
#include "naturegames/io.hpp"
#include "naturegames/parity.hpp"
#include "naturegames/topology.hpp"

using namespace ng;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& extra = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!extra.empty()) std::cout << "  (" << extra << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

std::string fixture(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

NatureGame load(const std::string& name) { return parse_game_text(read_file(fixture(name))); }

int run_cli(const std::string& args) {
    std::string cmd = std::string(NGAME_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WEXITSTATUS(rc);
}

std::string run_cli_capture(const std::string& args) {
    std::string cmd = std::string(NGAME_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "";
    std::string out;
    char buf[512];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
    pclose(pipe);
    return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool cli = run_cli("leaking --countable " + fixture("nature_pair.json")) == 0;
    std::string cls = run_cli_capture("classify " + fixture("nature_pair_graph.json"));
    bool kind = cls.find("\"aleph0\"") != std::string::npos;
    double dt = seconds_since(t0);
    report("criterion 1: two-vertex Nature fixture, countable leak + aleph0 classification",
           cli && kind && dt < 1.0, "took " + std::to_string(dt) + "s");
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    bool b0 = run_cli("leaking --bound 0 " + fixture("single_leak.json")) == 10;
    bool b1 = run_cli("leaking --bound 1 " + fixture("single_leak.json")) == 0;
    bool bc = run_cli("leaking --countable " + fixture("single_leak.json")) == 0;
    NatureGame single_leak = load("single_leak.json");
    Decision d = decide_bounded(single_leak, 1);
    bool to_w = d.yes;
    if (d.yes) {
        Vertex ve = *single_leak.vertex_by_name("vE");
        Vertex vw = *single_leak.vertex_by_name("vW");
        OutcomeGraph og = restrict_by_strategies(single_leak, *d.strategy,
                                                 MooreStrategy::empty_for(single_leak, Owner::Abelard));
        for (const auto& st : og.states)
            if (st.vertex == ve && d.strategy->move_at(st.mem_e, ve) != vw) to_w = false;
    }
    double dt = seconds_since(t0);
    report("criterion 2: budget fixture, bound 0 no / bound 1 yes / countable yes, plays to vW",
           b0 && b1 && bc && to_w && dt < 1.0, "took " + std::to_string(dt) + "s");
}

void criterion3() {
    bool lk = run_cli("imperfect leaking --countable --memory 1 " + fixture("matching_bits.json")) == 0;
    ImperfectArena a = parse_imperfect(Json::parse(read_file(fixture("matching_bits.json"))));
    ImperfectEventGame hat = build_hat_imperfect(a);
    std::optional<ObsStrategy> s = solve_imperfect_bounded(hat, 1);
    bool plays_n = false;
    if (s) {
        Vertex v00 = 0;
        for (Vertex v = 0; v < a.size(); ++v)
            if (a.names[v] == "v00") v00 = v;
        int act = s->move_at(s->m0, a.obs[v00]);
        plays_n = act >= 0 && a.actions[hat.action_gamma[act]] == "N";
    }
    bool tp = run_cli("imperfect topo --memory 1 " + fixture("matching_bits_oneplayer.json")) == 0;
    report("criterion 3: matching-bits fixture, countable leak with action N + topologically good",
           lk && s.has_value() && plays_n && tp);
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    NatureGame t1 = load("t1.json");
    bool topo1 = decide_topo_good(t1).yes;
    bool sure1 = solve_parity(to_adversarial_parity(t1)).eloise_wins_initial;
    double dt1 = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    NatureGame t2 = load("t2.json");
    bool topo2 = decide_topo_good(t2).yes;
    double dt2 = seconds_since(t0);
    report("criterion 4: contrast pair, topologically good without sure winning / losing cone",
           topo1 && !sure1 && !topo2 && dt1 < 1.0 && dt2 < 1.0,
           "took " + std::to_string(dt1) + "s + " + std::to_string(dt2) + "s");
}

void criterion5() {
    HarnessConfig cfg;
    cfg.seed = 42;
    cfg.cases = 500;
    SuiteReport rep = suite_hat_soundness(cfg);
    report("criterion 5: avoid-reduction soundness over 500 seeded games",
           rep.cases == 500 && rep.violations == 0,
           std::to_string(rep.cases) + " cases, " + std::to_string(rep.violations) +
               " violations, " + std::to_string(rep.guard_overflows) + " regenerated");
}

void criterion6() {
    HarnessConfig cfg;
    cfg.seed = 42;
    cfg.cases = 500;
    SuiteReport rep = suite_bounded_soundness(cfg);
    report("criterion 6: budget-reduction soundness and implication chain over 500 seeded games",
           rep.cases == 500 && rep.violations == 0,
           std::to_string(rep.cases) + " cases, " + std::to_string(rep.violations) +
               " violations, " + std::to_string(rep.guard_overflows) + " regenerated");
}

void criterion7() {
    HarnessConfig cfg;
    cfg.seed = 42;
    cfg.lassos = 10000;
    SuiteReport rep = suite_transducer(cfg);
    report("criterion 7: transducers match the defining formulas on 10^4 lassos per condition",
           rep.cases == 30000 && rep.violations == 0,
           std::to_string(rep.cases) + " lassos, " + std::to_string(rep.violations) +
               " disagreements");
}

void criterion8() {
    HarnessConfig cfg;
    cfg.seed = 42;
    SuiteReport rep = suite_classifier_oracle(cfg);
    report("criterion 8: classifier vs exhaustive lasso counts and certified witnesses",
           rep.violations == 0 && rep.guard_overflows == 0,
           std::to_string(rep.cases) + " graphs, " + std::to_string(rep.violations) +
               " discrepancies");
}

void criterion9() {
    HarnessConfig cfg;
    cfg.seed = 42;
    cfg.cases = 500;
    SuiteReport rep = suite_parity_oracle(cfg);
    report("criterion 9: parity solver matches the positional-search oracle on 500 games",
           rep.cases == 500 && rep.violations == 0,
           std::to_string(rep.cases) + " games, " + std::to_string(rep.violations) +
               " discrepancies");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL")
              << "  (total " << std::to_string(seconds_since(t0)) << "s)\n";
    return failures == 0 ? 0 : 1;
}
