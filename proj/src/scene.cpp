#include "lifs/scene.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace lifs {

using nlohmann::json;

namespace {

// ---- expression evaluation -------------------------------------------------

struct ExprParser {
    const std::string& s;
    size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    [[noreturn]] void bad() {
        fail(ErrorCode::SchemaError, "cannot parse expression '" + s + "'");
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    double term() {
        double v = factor();
        for (;;) {
            if (eat('*'))
                v *= factor();
            else if (eat('/'))
                v /= factor();
            else
                return v;
        }
    }
    double factor() {
        skip();
        if (eat('-')) return -factor();
        if (eat('(')) {
            double v = expr();
            if (!eat(')')) bad();
            return v;
        }
        if (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) {
            size_t start = i;
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
            std::string name = s.substr(start, i - start);
            if (name == "pi") return 3.14159265358979323846;
            if (!eat('(')) bad();
            double v = expr();
            if (!eat(')')) bad();
            if (name == "sqrt") return std::sqrt(v);
            if (name == "exp") return std::exp(v);
            bad();
        }
        const char* begin = s.c_str() + i;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) bad();
        i += static_cast<size_t>(end - begin);
        return v;
    }
};

// ---- strict-schema helpers -------------------------------------------------

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    if (!obj.is_object())
        fail(ErrorCode::SchemaError, where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed) ok = ok || it.key() == k;
        if (!ok) fail(ErrorCode::SchemaError, "unknown key '" + it.key() + "' in " + where);
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(ErrorCode::SchemaError, where + " is missing required key '" + key + "'");
    return *it;
}

std::vector<double> number_list(const json& j, const std::string& field) {
    if (!j.is_array()) fail(ErrorCode::SchemaError, field + " must be an array");
    std::vector<double> out;
    for (auto& e : j) {
        if (e.is_array())  // nested rows (matrices) are flattened row-major
            for (auto& f : e) out.push_back(eval_number(f, field));
        else
            out.push_back(eval_number(e, field));
    }
    return out;
}

// ---- component parsers -----------------------------------------------------

Space parse_space(const json& j) {
    std::string kind = require(j, "kind", "space").get<std::string>();
    if (kind == "symbolic") {
        check_keys(j, {"kind", "alphabet", "length"}, "space");
        return Space::symbolic(require(j, "alphabet", "space").get<int>(),
                               require(j, "length", "space").get<int>());
    }
    if (kind != "grid" && kind != "enriched")
        fail(ErrorCode::SchemaError, "unknown space kind '" + kind + "'");
    check_keys(j, {"kind", "bounds", "cellSize", "vertices"}, "space");
    std::vector<std::array<double, 2>> bounds;
    for (auto& b : require(j, "bounds", "space")) {
        std::vector<double> lohi = number_list(b, "space.bounds");
        if (lohi.size() != 2)
            fail(ErrorCode::SchemaError, "each bounds entry needs exactly [lo, hi]");
        bounds.push_back({lohi[0], lohi[1]});
    }
    Space grid = Space::grid(std::move(bounds), eval_number(require(j, "cellSize", "space"),
                                                           "space.cellSize"));
    if (kind == "grid") {
        if (j.contains("vertices"))
            fail(ErrorCode::SchemaError, "grid spaces take no 'vertices' key");
        return grid;
    }
    std::vector<std::string> names;
    for (auto& v : require(j, "vertices", "space")) names.push_back(v.get<std::string>());
    return Space::enriched(grid, std::move(names));
}

int vertex_of(const json& j, const Space& space, const std::string& where) {
    std::string name = j.get<std::string>();
    int v = space.vertex_index(name);
    if (v < 0) fail(ErrorCode::SchemaError, where + " names unknown vertex '" + name + "'");
    return v;
}

DomainSet parse_domain(const json& j, const Space& space, const std::string& where) {
    check_keys(j, {"full", "interval", "boxes", "points", "symbols", "ids", "vertex"}, where);
    DomainSet d;
    if (j.value("full", false)) d.full = true;
    if (j.contains("interval")) {
        auto one = [&](const json& e) {
            double lo, hi;
            parse_interval(e.get<std::string>(), lo, hi);
            d.boxes.push_back(Box{{lo}, {hi}});
        };
        if (j["interval"].is_array())
            for (auto& e : j["interval"]) one(e);
        else
            one(j["interval"]);
    }
    if (j.contains("boxes"))
        for (auto& b : j["boxes"]) {
            check_keys(b, {"lo", "hi"}, where + ".boxes");
            d.boxes.push_back(Box{number_list(require(b, "lo", where), where),
                                  number_list(require(b, "hi", where), where)});
        }
    if (j.contains("points"))
        for (auto& p : j["points"])
            d.points.push_back(Coords{number_list(p, where + ".points"), {}, 0});
    if (j.contains("symbols"))
        for (auto& s : j["symbols"]) d.allowed_symbols.push_back(s.get<int>());
    if (j.contains("ids"))
        for (auto& p : j["ids"]) d.explicit_ids.push_back(p.get<PointId>());
    if (j.contains("vertex")) d.vertex = vertex_of(j["vertex"], space, where);
    if (d.is_empty_def())
        fail(ErrorCode::SchemaError, where + " describes the empty set");
    return d;
}

ContractionMap parse_map(const json& j, const Space& space, const std::string& where) {
    check_keys(j, {"name", "kind", "matrix", "offset", "value", "symbol", "lip",
                   "targetVertex"},
               where);
    std::string kind = require(j, "kind", where).get<std::string>();
    ContractionMap m;
    if (kind == "affine") {
        m = ContractionMap::affine(
            number_list(require(j, "matrix", where), where + ".matrix"),
            number_list(require(j, "offset", where), where + ".offset"),
            eval_number(require(j, "lip", where), where + ".lip"));
    } else if (kind == "constant") {
        m = ContractionMap::constant(
            Coords{number_list(require(j, "value", where), where + ".value"), {}, 0});
    } else if (kind == "symbol_prepend") {
        m = ContractionMap::prepend(require(j, "symbol", where).get<int>());
    } else if (kind == "adjacent_sum") {
        m = ContractionMap::adjacent_sum();
    } else {
        fail(ErrorCode::SchemaError, where + " has unknown map kind '" + kind + "'");
    }
    if (j.contains("lip")) m.lip = eval_number(j["lip"], where + ".lip");
    m.name = j.value("name", "");
    if (j.contains("targetVertex"))
        m.target_vertex = vertex_of(j["targetVertex"], space, where);
    m.validate_lip(space);
    return m;
}

void parse_meta(const json& doc, std::string& title, std::string& notes) {
    if (!doc.contains("meta")) return;
    check_keys(doc["meta"], {"title", "notes"}, "meta");
    title = doc["meta"].value("title", "");
    notes = doc["meta"].value("notes", "");
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::SchemaError, "cannot open scene file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorCode::SchemaError, "scene file '" + path + "': " + e.what());
    }
}

// ---- emitters --------------------------------------------------------------

json emit_space(const Space& space) {
    json j;
    if (space.kind() == SpaceKind::Symbolic) {
        j["kind"] = "symbolic";
        j["alphabet"] = space.alphabet();
        j["length"] = space.length();
        return j;
    }
    j["kind"] = space.kind() == SpaceKind::Grid ? "grid" : "enriched";
    json bounds = json::array();
    for (int a = 0; a < space.dim(); ++a)
        bounds.push_back({space.axis_lo(a), space.axis_hi(a)});
    j["bounds"] = bounds;
    j["cellSize"] = space.cell_size();
    if (space.kind() == SpaceKind::Enriched) {
        json names = json::array();
        for (int v = 0; v < space.vertex_count(); ++v) names.push_back(space.vertex_name(v));
        j["vertices"] = names;
    }
    return j;
}

json emit_domain(const DomainSet& d, const Space& space) {
    json j = json::object();
    if (d.full) j["full"] = true;
    if (!d.boxes.empty()) {
        json boxes = json::array();
        for (auto& b : d.boxes) boxes.push_back({{"lo", b.lo}, {"hi", b.hi}});
        j["boxes"] = boxes;
    }
    if (!d.points.empty()) {
        json pts = json::array();
        for (auto& p : d.points) pts.push_back(p.x);
        j["points"] = pts;
    }
    if (!d.allowed_symbols.empty()) j["symbols"] = d.allowed_symbols;
    if (!d.explicit_ids.empty()) j["ids"] = d.explicit_ids;
    if (d.vertex >= 0) j["vertex"] = space.vertex_name(d.vertex);
    return j;
}

json emit_map(const ContractionMap& m, const Space& space, const std::string& name) {
    json j;
    if (!name.empty()) j["name"] = name;
    if (const auto* a = std::get_if<AffinePart>(&m.impl)) {
        j["kind"] = "affine";
        j["matrix"] = a->matrix;
        j["offset"] = a->offset;
    } else if (const auto* c = std::get_if<ConstantPart>(&m.impl)) {
        j["kind"] = "constant";
        j["value"] = c->value.x;
    } else if (const auto* p = std::get_if<PrependPart>(&m.impl)) {
        j["kind"] = "symbol_prepend";
        j["symbol"] = p->symbol;
    } else if (std::holds_alternative<AdjacentSumPart>(m.impl)) {
        j["kind"] = "adjacent_sum";
    } else {
        fail(ErrorCode::SchemaError, "identity branches have no scene representation");
    }
    j["lip"] = m.lip;
    if (m.target_vertex >= 0) j["targetVertex"] = space.vertex_name(m.target_vertex);
    return j;
}

}  // namespace

double eval_expression(const std::string& text) {
    ExprParser p{text, 0};
    double v = p.expr();
    p.skip();
    if (p.i != text.size())
        fail(ErrorCode::SchemaError, "trailing characters in expression '" + text + "'");
    return v;
}

double eval_number(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return eval_expression(j.get<std::string>());
    fail(ErrorCode::SchemaError, field + " must be a number or an expression string");
}

void parse_interval(const std::string& text, double& lo, double& hi) {
    size_t a = text.find_first_not_of(" \t");
    size_t b = text.find_last_not_of(" \t");
    if (a == std::string::npos || b <= a)
        fail(ErrorCode::SchemaError, "malformed interval '" + text + "'");
    if (text[a] == '(' || text[b] == ')')
        fail(ErrorCode::OpenDomainRejected,
             "open interval '" + text + "' rejected: domains must be closed");
    if (text[a] != '[' || text[b] != ']')
        fail(ErrorCode::SchemaError, "malformed interval '" + text + "'");
    std::string body = text.substr(a + 1, b - a - 1);
    int depth = 0;
    size_t comma = std::string::npos;
    for (size_t i = 0; i < body.size(); ++i) {
        if (body[i] == '(') ++depth;
        if (body[i] == ')') --depth;
        if (body[i] == ',' && depth == 0) {
            comma = i;
            break;
        }
    }
    if (comma == std::string::npos)
        fail(ErrorCode::SchemaError, "interval '" + text + "' needs two endpoints");
    lo = eval_expression(body.substr(0, comma));
    hi = eval_expression(body.substr(comma + 1));
    if (hi < lo) fail(ErrorCode::SchemaError, "interval '" + text + "' is reversed");
}

bool is_graph_scene(const json& doc) {
    return doc.is_object() && doc.contains("vertices");
}

Scene scene_from_json(const json& doc) {
    check_keys(doc, {"meta", "space", "maps", "domains"}, "scene");
    Scene s;
    parse_meta(doc, s.title, s.notes);
    s.space = std::make_unique<Space>(parse_space(require(doc, "space", "scene")));
    const json& maps = require(doc, "maps", "scene");
    const json& domains = require(doc, "domains", "scene");
    if (!maps.is_array() || !domains.is_array() || maps.size() != domains.size() ||
        maps.empty())
        fail(ErrorCode::SchemaError,
             "'maps' and 'domains' must be nonempty arrays of equal length");
    std::vector<Branch> branches;
    for (size_t i = 0; i < maps.size(); ++i) {
        std::string where = "maps[" + std::to_string(i) + "]";
        ContractionMap m = parse_map(maps[i], *s.space, where);
        std::string name = m.name.empty() ? "f" + std::to_string(i + 1) : m.name;
        m.name = name;
        DomainSet d =
            parse_domain(domains[i], *s.space, "domains[" + std::to_string(i) + "]");
        branches.push_back({name, std::move(d), std::move(m)});
    }
    s.ifs = std::make_unique<LocalIFS>(*s.space, std::move(branches));
    return s;
}

GraphScene graph_scene_from_json(const json& doc) {
    check_keys(doc, {"meta", "space", "vertices", "edges", "vertexSets"}, "graph scene");
    GraphScene g;
    parse_meta(doc, g.title, g.notes);
    g.base = std::make_unique<Space>(parse_space(require(doc, "space", "graph scene")));
    if (g.base->kind() != SpaceKind::Grid)
        fail(ErrorCode::SchemaError, "graph scenes need a grid base space");
    for (auto& v : require(doc, "vertices", "graph scene"))
        g.gd.graph.vertices.push_back(v.get<std::string>());
    auto vidx = [&](const json& j, const std::string& where) {
        int v = g.gd.graph.vertex_index(j.get<std::string>());
        if (v < 0)
            fail(ErrorCode::SchemaError,
                 where + " names unknown vertex '" + j.get<std::string>() + "'");
        return v;
    };
    const json& edges = require(doc, "edges", "graph scene");
    for (size_t i = 0; i < edges.size(); ++i) {
        std::string where = "edges[" + std::to_string(i) + "]";
        const json& e = edges[i];
        check_keys(e, {"label", "from", "to", "map", "lip"}, where);
        DirectedGraph::Edge edge;
        edge.label = e.value("label", "e" + std::to_string(i + 1));
        edge.initial = vidx(require(e, "from", where), where + ".from");
        edge.terminal = vidx(require(e, "to", where), where + ".to");
        ContractionMap m = parse_map(require(e, "map", where), *g.base, where + ".map");
        if (e.contains("lip")) {
            m.lip = eval_number(e["lip"], where + ".lip");
            m.validate_lip(*g.base);
        }
        if (m.name.empty()) m.name = edge.label;
        g.gd.graph.edges.push_back(std::move(edge));
        g.gd.edge_maps.push_back(std::move(m));
    }
    const json& sets = require(doc, "vertexSets", "graph scene");
    for (auto& name : g.gd.graph.vertices)
        g.gd.vertex_sets.push_back(parse_domain(require(sets, name.c_str(), "vertexSets"),
                                                *g.base, "vertexSets." + name));
    for (auto it = sets.begin(); it != sets.end(); ++it)
        if (g.gd.graph.vertex_index(it.key()) < 0)
            fail(ErrorCode::SchemaError, "vertexSets names unknown vertex '" + it.key() + "'");
    g.gd.base = g.base.get();
    g.gd.validate();
    return g;
}

Scene load_scene(const std::string& path) {
    json doc = load_json(path);
    if (is_graph_scene(doc))
        fail(ErrorCode::SchemaError,
             "'" + path + "' is a graph scene; convert it with gd2local first");
    return scene_from_json(doc);
}

GraphScene load_graph_scene(const std::string& path) {
    json doc = load_json(path);
    if (!is_graph_scene(doc))
        fail(ErrorCode::SchemaError, "'" + path + "' is not a graph scene");
    return graph_scene_from_json(doc);
}

json emit_scene(const LocalIFS& ifs, const std::string& title, const std::string& notes) {
    json doc;
    if (!title.empty() || !notes.empty()) {
        json meta = json::object();
        if (!title.empty()) meta["title"] = title;
        if (!notes.empty()) meta["notes"] = notes;
        doc["meta"] = meta;
    }
    doc["space"] = emit_space(ifs.space());
    json maps = json::array(), domains = json::array();
    for (int j = 1; j <= ifs.size(); ++j) {
        const Branch& b = ifs.branch(j);
        maps.push_back(emit_map(b.map, ifs.space(), b.name));
        domains.push_back(emit_domain(b.domain, ifs.space()));
    }
    doc["maps"] = maps;
    doc["domains"] = domains;
    return doc;
}

json gd_to_local_scene(const GraphDirectedIFS& gd, const std::string& title) {
    gd.validate();
    EnrichedSystem sys = enrich(gd);
    return emit_scene(*sys.ifs, title);
}

}  // namespace lifs
