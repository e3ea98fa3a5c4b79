// ngame -- command-line front end for games with Nature
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "naturegames/harness.hpp"
#include "naturegames/io.hpp"
#include "naturegames/parity.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 10;
constexpr int kExitUsage = 1;
constexpr int kExitGuard = 2;

ng::Json verdict(const std::string& question, const std::string& answer) {
    ng::Json j;
    j["question"] = question;
    j["answer"] = answer;
    return j;
}

int emit(const ng::Json& v, bool yes) {
    std::cout << ng::canonical_dump(v);
    return yes ? kExitYes : kExitNo;
}

ng::NatureGame load_game(const std::string& path) {
    return ng::parse_game_text(ng::read_file(path));
}

int cmd_solve_parity(const std::string& path) {
    ng::ParityGame p = ng::parse_parity_game(ng::Json::parse(ng::read_file(path)));
    ng::SolveResult sol = ng::solve_parity(p);
    ng::Json v = verdict("solve-parity", sol.eloise_wins_initial ? "eloise" : "abelard");
    ng::Json regions = ng::Json::array();
    for (ng::Vertex x = 0; x < p.size(); ++x)
        if (sol.eloise_region[x]) regions.push_back(p.names[x]);
    v["witness"]["eloise_region"] = regions;
    ng::Json moves = ng::Json::array();
    for (ng::Vertex x = 0; x < p.size(); ++x) {
        ng::Vertex t = sol.eloise_region[x] ? sol.eloise_strategy[x] : sol.abelard_strategy[x];
        if (t != ng::kNoVertex) moves.push_back({{"from", p.names[x]}, {"to", p.names[t]}});
    }
    v["witness"]["positional_moves"] = moves;
    v["provenance"] = {{"vertices", p.size()}, {"max_priority", p.max_priority()}};
    return emit(v, sol.eloise_wins_initial);
}

int cmd_leaking(const std::string& path, bool countable, int bound) {
    ng::NatureGame g = load_game(path);
    ng::Decision d = countable ? ng::decide_countable(g) : ng::decide_bounded(g, bound);
    ng::Json v = verdict(countable ? "leaking-countable" : "leaking-bound-" + std::to_string(bound),
                         d.yes ? "yes" : "no");
    if (d.yes && d.strategy) v["witness"]["strategy"] = ng::strategy_to_json(g, *d.strategy);
    v["provenance"] = {{"reduced_vertices", d.reduced_vertices},
                       {"product_vertices", d.product_vertices}};
    return emit(v, d.yes);
}

int cmd_topo(const std::string& path) {
    ng::NatureGame g = load_game(path);
    ng::Decision d = ng::decide_topo_good(g);
    ng::Json v = verdict("topo", d.yes ? "yes" : "no");
    if (d.yes && d.strategy) v["witness"]["strategy"] = ng::strategy_to_json(g, *d.strategy);
    v["provenance"] = {{"reduced_vertices", d.reduced_vertices},
                       {"product_vertices", d.product_vertices}};
    return emit(v, d.yes);
}

int cmd_imperfect(const std::string& path, bool topo, int memory) {
    ng::ImperfectArena a = ng::parse_imperfect(ng::Json::parse(ng::read_file(path)));
    ng::ImperfectEventGame reduced =
        topo ? ng::build_tilde_imperfect(a) : ng::build_hat_imperfect(a);
    std::optional<ng::ObsStrategy> s = ng::solve_imperfect_bounded(reduced, memory);
    ng::Json v = verdict(topo ? "imperfect-topo" : "imperfect-leaking-countable",
                         s ? "yes" : "no-within-memory");
    if (s) v["witness"]["strategy"] = ng::obs_strategy_to_json(reduced, *s);
    v["provenance"] = {{"reduced_vertices", reduced.size()},
                       {"composed_actions", reduced.action_names.size()},
                       {"memory_bound", memory}};
    return emit(v, s.has_value());
}

int cmd_classify(const std::string& path) {
    ng::NatureGame g = load_game(path);
    ng::PointedGraph pg;
    pg.succ = g.succ;
    pg.priority = g.priority;
    pg.point = g.initial;
    pg.labels = g.names;
    ng::BranchCardinality c = ng::classify_losing(pg);
    ng::Json v = ng::classification_to_json(pg, c);
    v["question"] = "classify";
    std::cout << ng::canonical_dump(v);
    return kExitYes;
}

int cmd_verify(const std::string& path, int memory) {
    // per-game oracle: re-derives the countable/bounded verdicts and checks
    // the pulled-back strategies against every enumerated opponent
    ng::NatureGame g = load_game(path);
    std::size_t violations = 0;
    ng::Json checks = ng::Json::array();
    auto run = [&](const std::string& name, const ng::Decision& d, std::optional<int> k) {
        if (!d.yes) {
            checks.push_back({{"check", name}, {"result", "skipped (answer is no)"}});
            return;
        }
        std::size_t bad = 0;
        bool complete = ng::for_each_abelard_outcome(
            g, *d.strategy, memory, [&](const ng::PointedGraph& og) {
                ng::BranchCardinality c = ng::classify_losing(og);
                if (c.kind == ng::BranchCardinality::Kind::Uncountable) ++bad;
                else if (k && (c.kind != ng::BranchCardinality::Kind::Finite ||
                               c.count > static_cast<std::size_t>(*k)))
                    ++bad;
            });
        violations += bad;
        checks.push_back({{"check", name},
                          {"result", !complete ? "guard overflow" : bad ? "violated" : "ok"}});
    };
    run("countable", ng::decide_countable(g), std::nullopt);
    for (int k = 0; k <= 2; ++k) run("bound-" + std::to_string(k), ng::decide_bounded(g, k), k);
    ng::Json v = verdict("verify-oracle", violations == 0 ? "yes" : "no");
    v["witness"]["checks"] = checks;
    v["provenance"] = {{"opponent_memory", memory}};
    return emit(v, violations == 0);
}

int cmd_export_dot(const std::string& path, const std::string& out, const std::string& reduction,
                   int bound) {
    ng::NatureGame g = load_game(path);
    std::ostringstream ss;
    if (reduction == "hat") {
        ng::export_dot(ng::build_hat(g), ss);
    } else if (reduction == "check") {
        ng::export_dot(ng::build_check(g, bound), ss);
    } else if (reduction == "tilde") {
        ng::export_dot(ng::build_tilde(ng::alternate_normalize(g)), ss);
    } else {
        ng::export_dot(g, ss);
    }
    ng::write_file(out, ss.str());
    return kExitYes;
}

int cmd_harness(std::uint64_t seed, std::size_t cases, std::size_t lassos,
                const std::string& suite) {
    ng::HarnessConfig cfg;
    cfg.seed = seed;
    cfg.cases = cases;
    cfg.lassos = lassos;
    cfg.only = suite;
    std::vector<ng::SuiteReport> reports = ng::run_harness(cfg);
    ng::Json v;
    v["question"] = "harness";
    std::size_t violations = 0;
    ng::Json suites = ng::Json::array();
    for (const auto& r : reports) {
        violations += r.violations;
        ng::Json rj{{"suite", r.name},
                    {"cases", r.cases},
                    {"violations", r.violations},
                    {"guard_overflows", r.guard_overflows}};
        if (!r.details.empty()) rj["details"] = r.details;
        suites.push_back(rj);
    }
    v["answer"] = violations == 0 ? "yes" : "no";
    v["witness"]["suites"] = suites;
    v["provenance"] = {{"seed", seed}, {"cases", cases}, {"lassos", lassos}};
    return emit(v, violations == 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"solver and verification toolkit for games with Nature"};
    app.require_subcommand(1);

    std::string file, out, suite;
    int bound = 0, memory = 1;
    bool countable = false;
    std::uint64_t seed = 42;
    std::size_t cases = 500, lassos = 10000;
    std::string reduction;

    auto* sp = app.add_subcommand("solve-parity", "solve a two-player parity game");
    sp->add_option("file", file)->required();

    auto* lk = app.add_subcommand("leaking", "decide the leaking value question");
    lk->add_flag("--countable", countable, "is the leaking value at most aleph_0?");
    auto* lk_bound = lk->add_option("--bound", bound, "is the leaking value at most K?");
    lk->add_option("file", file)->required();

    auto* tp = app.add_subcommand("topo", "decide existence of a topologically-good strategy");
    tp->add_option("file", file)->required();

    auto* imp = app.add_subcommand("imperfect", "imperfect-information questions");
    imp->require_subcommand(1);
    auto* imp_lk = imp->add_subcommand("leaking", "leaking value at most aleph_0");
    bool imp_countable = false;
    imp_lk->add_flag("--countable", imp_countable)->required();
    imp_lk->add_option("--memory", memory, "strategy memory bound");
    imp_lk->add_option("file", file)->required();
    auto* imp_tp = imp->add_subcommand("topo", "topologically-good strategy");
    imp_tp->add_option("--memory", memory, "strategy memory bound");
    imp_tp->add_option("file", file)->required();

    auto* cl = app.add_subcommand("classify", "cardinality of the losing-branch set");
    cl->add_option("file", file)->required();

    auto* vf = app.add_subcommand("verify", "cross-validate verdicts against enumerated opponents");
    bool oracle = false;
    vf->add_flag("--oracle", oracle)->required();
    vf->add_option("--memory", memory, "opponent memory bound");
    vf->add_option("file", file)->required();

    auto* ed = app.add_subcommand("export-dot", "render a game or reduction as DOT");
    ed->add_option("file", file)->required();
    ed->add_option("out", out)->required();
    ed->add_option("--reduction", reduction)->check(CLI::IsMember({"hat", "check", "tilde"}));
    ed->add_option("--bound", bound, "budget for --reduction check");

    auto* hs = app.add_subcommand("harness", "seeded cross-validation suites");
    hs->add_option("--seed", seed);
    hs->add_option("--cases", cases);
    hs->add_option("--lassos", lassos);
    hs->add_option("--suite", suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sp->parsed()) return cmd_solve_parity(file);
        if (lk->parsed()) {
            if (countable == (lk_bound->count() > 0)) {
                std::cerr << "leaking: pass exactly one of --countable / --bound K\n";
                return kExitUsage;
            }
            return cmd_leaking(file, countable, bound);
        }
        if (tp->parsed()) return cmd_topo(file);
        if (imp->parsed()) return cmd_imperfect(file, imp_tp->parsed(), memory);
        if (cl->parsed()) return cmd_classify(file);
        if (vf->parsed()) return cmd_verify(file, memory);
        if (ed->parsed()) return cmd_export_dot(file, out, reduction, bound);
        if (hs->parsed()) return cmd_harness(seed, cases, lassos, suite);
    } catch (const ng::GuardError& e) {
        std::cerr << "guard: " << e.what() << "\n";
        return kExitGuard;
    } catch (const ng::FormatError& e) {
        std::cerr << "format: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ng::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ng::Json::exception& e) {
        std::cerr << "malformed JSON: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
