// Command-line front end: scene loading, per-module subcommands, and the
// CSV / JSON / PGM emitters. Exit codes: 0 ok, 1 verification failure,
// 2 usage, 3 scene error, 4 budget exceeded.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "lifs/code_space.hpp"
#include "lifs/essential.hpp"
#include "lifs/graph_directed.hpp"
#include "lifs/orbit.hpp"
#include "lifs/render.hpp"
#include "lifs/scene.hpp"

using namespace lifs;
using nlohmann::json;

namespace {

struct Options {
    std::string scene_path, out, csv, json_path, render_path, suite = "all";
    int depth = 10;
    int lookahead = 2;
    int resolution = 512;
    int truncation = 2000;  // orbit samples / enumeration budget knob
    double tolerance = -1;
};

int threads_cap() {
    const char* env = std::getenv("LIFS_THREADS");
    int n = env != nullptr ? std::atoi(env) : 0;
    return n > 0 ? n : 0;  // 0 = all cores; module code is deterministic either way
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::SchemaError, "cannot write '" + path + "'");
    out << text;
}

void emit_json(const Options& opt, const json& doc) {
    if (!opt.json_path.empty()) write_text(opt.json_path, doc.dump(2) + "\n");
    if (!opt.out.empty()) write_text(opt.out, doc.dump(2) + "\n");
    if (opt.json_path.empty() && opt.out.empty()) std::cout << doc.dump(2) << "\n";
}

void emit_csv(const std::string& path, const SetApprox& a) {
    if (path.empty()) return;
    std::ostringstream os;
    write_csv(os, a);
    write_text(path, os.str());
}

void emit_render(const std::string& path, const Space& space, const SetApprox& black,
                 const SetApprox& grey, int resolution) {
    if (path.empty()) return;
    std::ostringstream os;
    write_pgm(os, rasterize(space, black, grey, resolution));
    write_text(path, os.str());
}

int cmd_attractor(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    SetApprox a = attractor(*s.ifs, opt.depth);
    emit_csv(opt.csv, a);
    if (!opt.render_path.empty())
        emit_render(opt.render_path, *s.space, a, SetApprox::empty(*s.space),
                    opt.resolution);
    json doc{{"scene", s.title},
             {"depth", opt.depth},
             {"cells", a.size()},
             {"lambda", s.ifs->lambda()},
             {"tolerance", s.ifs->default_tolerance(opt.depth)}};
    emit_json(opt, doc);
    return 0;
}

int cmd_codespace(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    CodeTree tree = enumerate_codespace(*s.ifs, opt.depth);
    json counts = json::array();
    for (int d = 1; d <= tree.depth; ++d) counts.push_back(tree.count_at(d));
    json doc{{"scene", s.title},
             {"depth", tree.depth},
             {"counts", counts},
             {"shiftInvariant", shift_invariance_check(tree)}};
    SftReport sft = sft_witness(*s.ifs, tree);
    json wits = json::array();
    for (auto& w : sft.witnesses) {
        json levels = json::array();
        for (auto& [agree, word] : w.family) levels.push_back(agree);
        wits.push_back({{"symbol", w.symbol}, {"agreementLevels", levels}});
    }
    doc["opennessWitnesses"] = wits;
    emit_json(opt, doc);
    return 0;
}

int cmd_orbits(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    OrbitHistogram hist = classify_orbits(*s.ifs, opt.depth, opt.truncation);
    json doc{{"scene", s.title},
             {"depth", opt.depth},
             {"samples", opt.truncation},
             {"structured", hist.structured},
             {"counts", hist.counts}};
    SurvivorSet surv = survivor_sets(*s.ifs, opt.depth);
    doc["survivorStabilizedAt"] = surv.stabilized_at;
    doc["coreCells"] = a_infinity(*s.ifs, opt.depth, opt.depth).size();
    SetApprox ends = endpoints(*s.ifs, opt.depth, opt.depth);
    doc["endpointCells"] = ends.size();
    if (!ends.is_empty())
        doc["endpointGap"] = endpoint_gap(*s.ifs, opt.depth, opt.depth);
    emit_json(opt, doc);
    return 0;
}

int cmd_essential(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    SetApprox full = SetApprox::full(*s.space);
    EssentialApprox ess = essential_part(*s.ifs, full, opt.depth, opt.lookahead);
    emit_csv(opt.csv, ess.value);
    json pruned = json::array();
    for (auto& [w, e] : ess.pruned) pruned.push_back({{"word", w}, {"diesAt", e}});
    json doc{{"scene", s.title},
             {"depth", ess.depth},
             {"lookahead", ess.lookahead},
             {"essentialWords", ess.words.size()},
             {"essentialCells", ess.value.size()},
             {"pruned", pruned}};
    emit_json(opt, doc);
    return 0;
}

int cmd_basins(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    BasinReport rep =
        basin_classify(*s.ifs, SetApprox::full(*s.space), opt.depth, opt.tolerance);
    json doc{{"scene", s.title},
             {"depth", opt.depth},
             {"invariant", rep.inv},
             {"outer", rep.out},
             {"attracted", rep.attracted},
             {"firstEmptyDepth", rep.first_empty_depth},
             {"tolerance", rep.tolerance},
             {"distances", rep.distances}};
    emit_json(opt, doc);
    return 0;
}

int cmd_gd2local(const Options& opt) {
    GraphScene g = load_graph_scene(opt.scene_path);
    json doc = gd_to_local_scene(g.gd, g.title);
    emit_json(opt, doc);
    return 0;
}

int cmd_gdcheck(const Options& opt) {
    GraphScene g = load_graph_scene(opt.scene_path);
    EquivalenceReport rep = equivalence_check(g.gd, opt.depth, opt.tolerance);
    json doc{{"scene", g.title},
             {"depth", opt.depth},
             {"tolerance", rep.tolerance},
             {"vertexDistances", rep.vertex_dist},
             {"invarianceResiduals", rep.invariance},
             {"ok", rep.ok}};
    emit_json(opt, doc);
    return rep.ok ? 0 : 1;
}

int cmd_render(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    SetApprox core = a_infinity(*s.ifs, opt.depth, opt.depth);
    SetApprox ends = endpoints(*s.ifs, opt.depth, opt.depth);
    std::string path = !opt.render_path.empty() ? opt.render_path : opt.out;
    if (path.empty()) fail(ErrorCode::SchemaError, "render needs --out or --render");
    emit_render(path, *s.space, core, ends, opt.resolution);
    return 0;
}

int cmd_verify(const Options& opt) {
    Scene s = load_scene(opt.scene_path);
    json results = json::object();
    bool all_ok = true;
    auto want = [&](const char* name) { return opt.suite == "all" || opt.suite == name; };

    if (want("convergence")) {
        ConvergenceReport rep = convergence_report(*s.ifs, SetApprox::full(*s.space),
                                                   std::min(opt.depth, 10), opt.lookahead);
        results["convergence"] = rep.ok;
        all_ok = all_ok && rep.ok;
    }
    if (want("semiconjugacy") || want("holder")) {
        CodeTree tree = enumerate_codespace(*s.ifs, std::min(opt.depth, 8));
        if (want("semiconjugacy")) {
            SemiconjugacyReport rep = verify_semiconjugacy(*s.ifs, tree);
            results["semiconjugacy"] = rep.ok;
            all_ok = all_ok && rep.ok;
        }
        if (want("holder")) {
            HolderReport rep = verify_holder(*s.ifs, tree, 100);
            results["holder"] = rep.ok;
            all_ok = all_ok && rep.ok;
        }
        if (opt.suite == "all") {
            bool shift_ok = shift_invariance_check(tree);
            results["shiftInvariance"] = shift_ok;
            all_ok = all_ok && shift_ok;
        }
    }
    if (want("extension")) {
        NaturalExtensionReport rep =
            natural_extension_check(*s.ifs, 40, std::min(opt.depth, 7));
        results["naturalExtension"] = rep.ok;
        all_ok = all_ok && rep.ok;
    }
    if (results.empty()) fail(ErrorCode::SchemaError, "unknown suite '" + opt.suite + "'");
    json doc{{"scene", s.title}, {"suite", opt.suite}, {"results", results}, {"ok", all_ok}};
    emit_json(opt, doc);
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local iterated function system toolkit"};
    app.require_subcommand(1);
    Options opt;
    (void)threads_cap();

    auto add = [&](const char* name, const char* desc, int (*fn)(const Options&),
                   bool graph = false) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("scene", opt.scene_path,
                        graph ? "graph scene file" : "scene file")
            ->required();
        sub->add_option("--depth", opt.depth, "iteration depth");
        sub->add_option("--lookahead", opt.lookahead, "essential-part lookahead");
        sub->add_option("--resolution", opt.resolution, "render width in pixels");
        sub->add_option("--truncation", opt.truncation, "sample / budget knob");
        sub->add_option("--tolerance", opt.tolerance, "override the default tolerance");
        sub->add_option("--out", opt.out, "primary output path (default stdout)");
        sub->add_option("--csv", opt.csv, "write the computed set as CSV");
        sub->add_option("--json", opt.json_path, "write the JSON report here");
        sub->add_option("--render", opt.render_path, "write a PGM image here");
        sub->add_option("--suite", opt.suite, "verification suite name");
        sub->callback([fn, &opt] {
            int rc = fn(opt);
            if (rc != 0) std::exit(rc);
        });
        return sub;
    };

    add("attractor", "iterate the set operator and report the attractor", cmd_attractor);
    add("codespace", "enumerate admissible words and openness witnesses", cmd_codespace);
    add("orbits", "orbit statistics, survivor sets, endpoints", cmd_orbits);
    add("essential", "essential part of a depth-k iterate", cmd_essential);
    add("basins", "classify the full space against the basin hierarchy", cmd_basins);
    add("gd2local", "convert a graph scene to an enriched local scene", cmd_gd2local, true);
    add("gdcheck", "compare the direct and enriched graph pipelines", cmd_gdcheck, true);
    add("render", "PGM image of the infinite-orbit core and endpoints", cmd_render);
    add("verify", "run a verification suite on a scene", cmd_verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help/version exit 0, any usage problem exits 2
    } catch (const Error& e) {
        std::cerr << "error [" << error_code_name(e.code()) << "]: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::SchemaError:
            case ErrorCode::OpenDomainRejected:
            case ErrorCode::LipschitzMismatch:
                return 3;
            case ErrorCode::BudgetExceeded:
                return 4;
            default:
                return 1;
        }
    }
    return 0;
}
