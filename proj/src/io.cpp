#include "naturegames/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace ng {

namespace {

[[noreturn]] void bad(const std::string& what) { throw FormatError("format: " + what); }

void reject_unknown(const Json& j, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed)
            if (it.key() == a) ok = true;
        if (!ok) bad("unknown field '" + it.key() + "'");
    }
}

Owner parse_owner(const std::string& s) {
    if (s == "eloise") return Owner::Eloise;
    if (s == "abelard") return Owner::Abelard;
    if (s == "nature") return Owner::Nature;
    bad("unknown owner '" + s + "'");
}

struct VertexTable {
    std::map<std::string, Vertex> ids;
    Vertex get(const Json& j, const char* what) const {
        if (!j.is_string()) bad(std::string(what) + " must be a vertex id string");
        auto it = ids.find(j.get<std::string>());
        if (it == ids.end()) bad(std::string(what) + " names unknown vertex '" + j.get<std::string>() + "'");
        return it->second;
    }
};

template <typename GameT>
VertexTable parse_vertices(const Json& j, GameT& g) {
    if (!j.contains("vertices") || !j["vertices"].is_array()) bad("missing vertices array");
    VertexTable table;
    for (const Json& vj : j["vertices"]) {
        reject_unknown(vj, {"id", "owner", "priority"});
        if (!vj.contains("id") || !vj.contains("owner") || !vj.contains("priority"))
            bad("vertex needs id, owner, priority");
        std::string id = vj["id"].get<std::string>();
        if (table.ids.count(id)) bad("duplicate vertex id '" + id + "'");
        int prio = vj["priority"].get<int>();
        if (prio < 0) bad("negative priority at '" + id + "'");
        Vertex v = g.add_vertex(id, parse_owner(vj["owner"].get<std::string>()), prio);
        table.ids.emplace(id, v);
    }
    return table;
}

}  // namespace

NatureGame parse_game(const Json& j) {
    if (!j.is_object()) bad("game document must be an object");
    reject_unknown(j, {"vertices", "edges", "initial"});
    NatureGame g;
    VertexTable table = parse_vertices(j, g);
    if (!j.contains("edges") || !j["edges"].is_array()) bad("missing edges array");
    for (const Json& ej : j["edges"]) {
        if (!ej.is_array() || ej.size() != 2) bad("edge must be a [src, dst] pair");
        g.add_edge(table.get(ej[0], "edge source"), table.get(ej[1], "edge target"));
    }
    if (!j.contains("initial")) bad("missing initial vertex");
    g.initial = table.get(j["initial"], "initial");
    return g;
}

NatureGame parse_game_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, true, false);
    return parse_game(j);
}

Json game_to_json(const NatureGame& g) {
    Json j;
    j["vertices"] = Json::array();
    for (Vertex v = 0; v < g.size(); ++v)
        j["vertices"].push_back(
            {{"id", g.names[v]}, {"owner", owner_name(g.owner[v])}, {"priority", g.priority[v]}});
    j["edges"] = Json::array();
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex w : g.succ[v]) j["edges"].push_back({g.names[v], g.names[w]});
    j["initial"] = g.names[g.initial];
    return j;
}

ParityGame parse_parity_game(const Json& j) {
    NatureGame g = parse_game(j);
    for (Owner o : g.owner)
        if (o == Owner::Nature) bad("parity game must not contain Nature vertices");
    ParityGame p;
    p.names = g.names;
    p.owner = g.owner;
    p.succ = g.succ;
    p.priority = g.priority;
    p.initial = g.initial;
    return p;
}

Json parity_game_to_json(const ParityGame& p) {
    NatureGame g;
    g.names = p.names;
    g.owner = p.owner;
    g.succ = p.succ;
    g.priority = p.priority;
    g.initial = p.initial;
    return game_to_json(g);
}

ImperfectArena parse_imperfect(const Json& j) {
    if (!j.is_object()) bad("arena document must be an object");
    reject_unknown(j, {"vertices", "actions", "delta_e", "delta_a", "observations", "initial"});
    ImperfectArena a;
    VertexTable table = parse_vertices(j, a);
    if (!j.contains("actions") || !j["actions"].is_array()) bad("missing actions array");
    std::map<std::string, int> action_ids;
    for (const Json& aj : j["actions"]) {
        std::string name = aj.get<std::string>();
        if (action_ids.count(name)) bad("duplicate action '" + name + "'");
        action_ids.emplace(name, a.add_action(name));
    }
    if (!j.contains("delta_e") || !j["delta_e"].is_array()) bad("missing delta_e array");
    for (const Json& dj : j["delta_e"]) {
        reject_unknown(dj, {"from", "action", "to"});
        Vertex v = table.get(dj.at("from"), "delta_e.from");
        auto it = action_ids.find(dj.at("action").get<std::string>());
        if (it == action_ids.end()) bad("delta_e names unknown action");
        if (a.owner[v] != Owner::Eloise) bad("delta_e from a non-Eloise vertex");
        auto& row = a.delta_e[v][it->second];
        for (const Json& t : dj.at("to")) {
            Vertex w = table.get(t, "delta_e.to");
            if (!std::binary_search(row.begin(), row.end(), w))
                row.insert(std::lower_bound(row.begin(), row.end(), w), w);
        }
        if (row.empty()) bad("delta_e with empty target set");
    }
    if (!j.contains("delta_a") || !j["delta_a"].is_array()) bad("missing delta_a array");
    for (const Json& dj : j["delta_a"]) {
        reject_unknown(dj, {"from", "to"});
        Vertex v = table.get(dj.at("from"), "delta_a.from");
        if (a.owner[v] != Owner::Abelard) bad("delta_a from a non-Abelard vertex");
        auto& row = a.delta_a[v];
        for (const Json& t : dj.at("to")) {
            Vertex w = table.get(t, "delta_a.to");
            if (!std::binary_search(row.begin(), row.end(), w))
                row.insert(std::lower_bound(row.begin(), row.end(), w), w);
        }
    }
    if (!j.contains("observations") || !j["observations"].is_array())
        bad("missing observations array");
    std::vector<char> assigned(a.size(), 0);
    int next_class = 0;
    for (const Json& oj : j["observations"]) {
        if (!oj.is_array() || oj.empty()) bad("observation class must be a nonempty array");
        for (const Json& t : oj) {
            Vertex v = table.get(t, "observation member");
            if (assigned[v]) bad("vertex '" + a.names[v] + "' in two observation classes");
            assigned[v] = 1;
            a.obs[v] = next_class;
        }
        ++next_class;
    }
    for (Vertex v = 0; v < a.size(); ++v)
        if (!assigned[v]) a.obs[v] = next_class++;
    if (!j.contains("initial")) bad("missing initial vertex");
    a.initial = table.get(j["initial"], "initial");
    return a;
}

Json imperfect_to_json(const ImperfectArena& a) {
    Json j;
    j["vertices"] = Json::array();
    for (Vertex v = 0; v < a.size(); ++v)
        j["vertices"].push_back(
            {{"id", a.names[v]}, {"owner", owner_name(a.owner[v])}, {"priority", a.priority[v]}});
    j["actions"] = a.actions;
    j["delta_e"] = Json::array();
    for (Vertex v = 0; v < a.size(); ++v)
        for (std::size_t act = 0; act < a.actions.size(); ++act) {
            if (a.delta_e[v][act].empty()) continue;
            Json row{{"from", a.names[v]}, {"action", a.actions[act]}, {"to", Json::array()}};
            for (Vertex w : a.delta_e[v][act]) row["to"].push_back(a.names[w]);
            j["delta_e"].push_back(row);
        }
    j["delta_a"] = Json::array();
    for (Vertex v = 0; v < a.size(); ++v) {
        if (a.owner[v] != Owner::Abelard) continue;
        Json row{{"from", a.names[v]}, {"to", Json::array()}};
        for (Vertex w : a.delta_a[v]) row["to"].push_back(a.names[w]);
        j["delta_a"].push_back(row);
    }
    // emit only the nontrivial classes, in first-member order
    std::map<int, std::vector<Vertex>> classes;
    for (Vertex v = 0; v < a.size(); ++v) classes[a.obs[v]].push_back(v);
    std::vector<std::vector<Vertex>> nontrivial;
    for (auto& [cls, members] : classes)
        if (members.size() > 1) nontrivial.push_back(members);
    std::sort(nontrivial.begin(), nontrivial.end());
    j["observations"] = Json::array();
    for (const auto& members : nontrivial) {
        Json row = Json::array();
        for (Vertex v : members) row.push_back(a.names[v]);
        j["observations"].push_back(row);
    }
    j["initial"] = a.names[a.initial];
    return j;
}

Json strategy_to_json(const NatureGame& g, const MooreStrategy& s) {
    Json j;
    j["player"] = owner_name(s.player);
    j["memory"] = s.memory;
    j["m0"] = s.m0;
    j["move"] = Json::array();
    for (int m = 0; m < s.memory; ++m)
        for (Vertex v = 0; v < g.size(); ++v) {
            Vertex t = s.move_at(m, v);
            if (t == kNoVertex) continue;
            j["move"].push_back({{"memory", m}, {"vertex", g.names[v]}, {"to", g.names[t]}});
        }
    j["up"] = Json::array();
    for (int m = 0; m < s.memory; ++m)
        for (Vertex v = 0; v < g.size(); ++v)
            j["up"].push_back({{"memory", m}, {"vertex", g.names[v]}, {"next", s.up_at(m, v)}});
    return j;
}

Json obs_strategy_to_json(const ImperfectEventGame& g, const ObsStrategy& s) {
    Json j;
    j["memory"] = s.memory;
    j["m0"] = s.m0;
    j["move"] = Json::array();
    for (int m = 0; m < s.memory; ++m)
        for (int o = 0; o < s.n_obs; ++o) {
            int act = s.move_at(m, o);
            if (act < 0) continue;
            j["move"].push_back(
                {{"memory", m}, {"class", o}, {"action", g.action_names[act]}});
        }
    j["up"] = Json::array();
    for (int m = 0; m < s.memory; ++m)
        for (int o = 0; o < s.n_obs; ++o)
            j["up"].push_back({{"memory", m}, {"class", o}, {"next", s.up_at(m, o)}});
    return j;
}

Json classification_to_json(const PointedGraph& g, const BranchCardinality& c) {
    Json j;
    switch (c.kind) {
        case BranchCardinality::Kind::Finite:
            j["kind"] = "finite";
            j["count"] = c.count;
            {
                Json lassos = Json::array();
                for (const Lasso& l : c.lassos) {
                    Json h = Json::array(), p = Json::array();
                    for (Vertex v : l.handle) h.push_back(g.labels.empty() ? std::to_string(v) : g.labels[v]);
                    for (Vertex v : l.loop) p.push_back(g.labels.empty() ? std::to_string(v) : g.labels[v]);
                    lassos.push_back({{"handle", h}, {"loop", p}});
                }
                j["witness"] = lassos;
            }
            break;
        case BranchCardinality::Kind::CountablyInfinite: j["kind"] = "aleph0"; break;
        case BranchCardinality::Kind::Uncountable: {
            j["kind"] = "continuum";
            Json w;
            const CycleWitness& cw = *c.witness;
            w["pivot"] = g.labels.empty() ? std::to_string(cw.pivot) : g.labels[cw.pivot];
            Json a = Json::array(), b = Json::array();
            for (Vertex v : cw.cycle_a) a.push_back(g.labels.empty() ? std::to_string(v) : g.labels[v]);
            for (Vertex v : cw.cycle_b) b.push_back(g.labels.empty() ? std::to_string(v) : g.labels[v]);
            w["cycle_a"] = a;
            w["cycle_b"] = b;
            j["witness"] = w;
            break;
        }
    }
    return j;
}

Json reduced_to_json(const ReducedGame& r) {
    Json j;
    j["condition"] = r.condition == Condition::Hat ? "hat" : "check";
    if (r.condition == Condition::Check) j["bound"] = r.k;
    j["vertices"] = Json::array();
    for (Vertex v = 0; v < r.game.size(); ++v) {
        Json vj{{"id", r.game.names[v]}, {"owner", owner_name(r.game.owner[v])}};
        const ReducedVertexInfo& inf = r.info[v];
        switch (inf.role) {
            case Role::Main: vj["role"] = "main"; vj["source"] = r.source.names[inf.source]; break;
            case Role::Avoid:
                vj["role"] = "avoid";
                vj["source"] = r.source.names[inf.source];
                vj["avoided"] = r.source.names[inf.avoided];
                break;
            case Role::Start: vj["role"] = "start"; break;
            case Role::Budget:
                vj["role"] = "budget";
                vj["source"] = r.source.names[inf.source];
                vj["budget"] = inf.budget;
                break;
            case Role::Query:
                vj["role"] = "query";
                vj["source"] = r.source.names[inf.source];
                vj["budget"] = inf.budget;
                break;
            case Role::Mu:
                vj["role"] = "mu";
                vj["source"] = r.source.names[inf.source];
                vj["split"] = inf.mu;
                break;
        }
        j["vertices"].push_back(vj);
    }
    j["edges"] = Json::array();
    for (Vertex v = 0; v < r.game.size(); ++v)
        for (const EventGame::Edge& e : r.game.succ[v]) {
            Json ej{{"from", r.game.names[v]}, {"to", r.game.names[e.to]}};
            if (e.event.priority) ej["priority"] = *e.event.priority;
            if (e.event.flag != Flag::None) ej["flag"] = flag_name(e.event.flag);
            j["edges"].push_back(ej);
        }
    j["initial"] = r.game.names[r.game.initial];
    return j;
}

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

namespace {

const char* shape_of(Owner o) {
    switch (o) {
        case Owner::Eloise: return "circle";
        case Owner::Abelard: return "box";
        case Owner::Nature: return "diamond";
    }
    return "circle";
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

void export_dot(const NatureGame& g, std::ostream& os) {
    os << "digraph game {\n";
    for (Vertex v = 0; v < g.size(); ++v) {
        os << "  n" << v << " [label=\"" << dot_escape(g.names[v]) << ":" << g.priority[v]
           << "\", shape=" << shape_of(g.owner[v]);
        if (v == g.initial) os << ", penwidth=2";
        os << "];\n";
    }
    for (Vertex v = 0; v < g.size(); ++v)
        for (Vertex w : g.succ[v]) os << "  n" << v << " -> n" << w << ";\n";
    os << "}\n";
}

namespace {

void export_event_dot(const std::vector<std::string>& names, const std::vector<Owner>& owner,
                      const std::vector<const char*>& style, Vertex initial,
                      const std::vector<std::vector<EventGame::Edge>>& succ, std::ostream& os) {
    os << "digraph reduced {\n";
    for (Vertex v = 0; v < names.size(); ++v) {
        os << "  n" << v << " [label=\"" << dot_escape(names[v]) << "\", shape="
           << shape_of(owner[v]);
        if (style[v]) os << ", style=" << style[v];
        if (v == initial) os << ", penwidth=2";
        os << "];\n";
    }
    for (Vertex v = 0; v < names.size(); ++v)
        for (const EventGame::Edge& e : succ[v]) {
            os << "  n" << v << " -> n" << e.to;
            std::string attrs;
            if (e.event.flag == Flag::Obey || e.event.flag == Flag::Top) attrs += "style=dashed";
            if (e.event.flag != Flag::None) {
                if (!attrs.empty()) attrs += ", ";
                attrs += std::string("label=\"") + flag_name(e.event.flag) + "\"";
            }
            if (!attrs.empty()) os << " [" << attrs << "]";
            os << ";\n";
        }
    os << "}\n";
}

}  // namespace

void export_dot(const ReducedGame& r, std::ostream& os) {
    std::vector<const char*> style(r.game.size(), nullptr);
    for (Vertex v = 0; v < r.game.size(); ++v) {
        switch (r.info[v].role) {
            case Role::Avoid: style[v] = "dashed"; break;
            case Role::Mu: style[v] = "dotted"; break;
            case Role::Query: style[v] = "rounded"; break;
            case Role::Start: style[v] = "bold"; break;
            default: break;
        }
    }
    export_event_dot(r.game.names, r.game.owner, style, r.game.initial, r.game.succ, os);
}

void export_dot(const TildeGame& t, std::ostream& os) {
    std::vector<const char*> style(t.game.size(), nullptr);
    for (Vertex v = 0; v < t.game.size(); ++v)
        if (t.info[v].gadget) style[v] = t.info[v].top ? "dashed" : "dotted";
    export_event_dot(t.game.names, t.game.owner, style, t.game.initial, t.game.succ, os);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path.empty()) throw FormatError("empty output path");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw FormatError("write failed for '" + path + "'");
}

}  // namespace ng
