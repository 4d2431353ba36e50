// bwseq: command-line front end for defining-sequence files ("bw-seq/1").
//
// Exit codes: 0 success (or "equivalent"), 3 "inequivalent", 1 I/O failure,
// 2 malformed input, bad flags or infeasible request. Diagnostics go to stderr.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bw/equivalence.hpp"
#include "bw/geometry/mesh.hpp"
#include "bw/index_calculus.hpp"
#include "bw/json.hpp"

namespace {

using bw::Json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInequivalent = 3;

void print(const Json& j) { std::cout << j.dump() << "\n"; }

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw bw::io_error("cannot open " + out + " for writing");
    f << text;
    if (!f) throw bw::io_error("write failed: " + out);
}

bw::FamilySpec parse_family_spec(const std::string& token) {
    const auto comma = token.find(',');
    if (comma == std::string::npos) throw bw::schema_error("family spec must look like a,b: " + token);
    auto number = [&](const std::string& s) {
        const bw::BigInt v = bw::parse_decimal(s);
        return bw::to_u64_checked(v, "family spec");
    };
    return {number(token.substr(0, comma)), number(token.substr(comma + 1))};
}

struct Options {
    std::vector<std::string> files;
    std::vector<std::string> specs;
    std::size_t pattern_horizon = 32;
    std::size_t oracle_horizon = 64;
    std::size_t depth = 3;
    std::size_t samples = 64;
    std::size_t ring = 16;
    std::uint64_t max_shift = 12;
    bool no_root = false;
    std::string out;
};

int check_cantor(const Options& o) {
    const auto seq = bw::load_sequence(o.files.at(0));
    print(Json{{"cantor", bw::is_cantor(seq)}});
    return kExitOk;
}

int decide_equiv(const Options& o) {
    const auto m = bw::load_sequence(o.files.at(0));
    const auto n = bw::load_sequence(o.files.at(1));
    const auto verdict = bw::decide_equivalent(m, n);
    print(bw::to_json(verdict));
    return bw::is_equivalent(verdict) ? kExitOk : kExitInequivalent;
}

int pattern(const Options& o) {
    const auto seq = bw::load_sequence(o.files.at(0));
    print(Json{{"horizon", o.pattern_horizon}, {"pattern", bw::pattern(seq, o.pattern_horizon).to_string()}});
    return kExitOk;
}

int index(const Options& o) {
    const auto seq = bw::load_sequence(o.files.at(0));
    const auto tree = bw::StageTree::from_sequence(seq, o.depth);
    Json stages = Json::array();
    for (std::size_t k = 0; k <= o.depth; ++k) {
        Json s;
        s["stage"] = k;
        s["kind"] = k == 0 ? "root" : std::string(1, static_cast<char>(tree.pattern().entries[k - 1]));
        s["components"] = bw::to_decimal(bw::component_count(seq, k));
        s["geometric_index"] = bw::to_decimal(bw::geometric_index_between(tree, 0, k));
        s["algebraic_index"] = bw::algebraic_index_between(0, k);
        stages.push_back(std::move(s));
    }
    print(Json{{"depth", o.depth}, {"pattern", tree.pattern().to_string()}, {"stages", std::move(stages)}});
    return kExitOk;
}

int components(const Options& o) {
    const auto seq = bw::load_sequence(o.files.at(0));
    print(Json{{"stage", o.depth}, {"components", bw::to_decimal(bw::component_count(seq, o.depth))}});
    return kExitOk;
}

int expand(const Options& o) {
    const auto seq = bw::load_sequence(o.files.at(0));
    emit(bw::to_dot(bw::StageTree::from_sequence(seq, o.depth)), o.out);
    return kExitOk;
}

int export_mesh(const Options& o) {
    const auto seq = bw::load_sequence(o.files.at(0));
    bw::geometry::EmbedOptions eo;
    eo.samples = o.samples;
    const auto tree = bw::geometry::embed_stages(seq, o.depth, eo);
    bw::geometry::MeshOptions mo;
    mo.ring_segments = o.ring;
    mo.include_root = !o.no_root;
    emit(bw::geometry::to_obj(tree, mo), o.out);
    return kExitOk;
}

int gen_family(const Options& o) {
    std::vector<bw::FamilySpec> specs;
    for (const auto& t : o.specs) specs.push_back(parse_family_spec(t));
    const auto report = bw::pairwise_inequivalence_report(specs);
    Json files = Json::array();
    for (const auto& s : specs) {
        Json entry{{"a", s.a}, {"b", s.b}};
        if (!o.out.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(o.out, ec);
            if (ec) throw bw::io_error("cannot create directory " + o.out + ": " + ec.message());
            const auto path = (std::filesystem::path(o.out) / ("family_a" + std::to_string(s.a) + "_b" + std::to_string(s.b) + ".json")).string();
            bw::save_sequence(bw::corollary_family(s), path);
            entry["file"] = path;
        }
        files.push_back(std::move(entry));
    }
    Json pairs = Json::array();
    bool all_inequivalent = true;
    for (const auto& p : report) {
        all_inequivalent = all_inequivalent && !bw::is_equivalent(p.verdict);
        pairs.push_back(Json{{"first", p.first}, {"second", p.second}, {"result", bw::to_json(p.verdict)}});
    }
    print(Json{{"sequences", std::move(files)}, {"pairs", std::move(pairs)}, {"all_inequivalent", all_inequivalent}});
    return kExitOk;
}

int oracle(const Options& o) {
    const auto m = bw::load_sequence(o.files.at(0));
    const auto n = bw::load_sequence(o.files.at(1));
    const auto r = bw::brute_force_equivalent(m, n, o.max_shift, o.oracle_horizon);
    const char* result = !r ? "inconclusive" : (*r ? "equivalent" : "inequivalent");
    print(Json{{"max_shift", o.max_shift}, {"horizon", o.oracle_horizon}, {"result", result}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Defining sequences of Bing-Whitehead compacta"};
    app.require_subcommand(1);
    Options o;

    auto files = [&](CLI::App* cmd, std::size_t n) {
        cmd->add_option("files", o.files, n == 1 ? "sequence file" : "two sequence files")->required()->expected(static_cast<int>(n));
    };
    auto horizon = [&](CLI::App* cmd, std::size_t& target) {
        cmd->add_option("--horizon", target, "number of terms or stage kinds examined")->check(CLI::PositiveNumber);
    };
    auto depth = [&](CLI::App* cmd) { cmd->add_option("--depth", o.depth, "number of stages"); };
    auto out = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "output path (default: stdout)"); };

    auto* c_cantor = app.add_subcommand("check-cantor", "is the intersection a Cantor set?");
    files(c_cantor, 1);
    auto* c_equiv = app.add_subcommand("decide-equiv", "decide whether two sequences define equivalent embeddings");
    files(c_equiv, 2);
    auto* c_pattern = app.add_subcommand("pattern", "first stage kinds (B or W)");
    files(c_pattern, 1);
    horizon(c_pattern, o.pattern_horizon);
    auto* c_index = app.add_subcommand("index", "component counts and indices from the root for stages 0..depth");
    files(c_index, 1);
    depth(c_index);
    auto* c_components = app.add_subcommand("components", "number of tori at a stage");
    files(c_components, 1);
    depth(c_components);
    auto* c_expand = app.add_subcommand("expand", "stage tree as Graphviz DOT");
    files(c_expand, 1);
    depth(c_expand);
    out(c_expand);
    auto* c_mesh = app.add_subcommand("export-mesh", "nested tori as a Wavefront OBJ mesh");
    files(c_mesh, 1);
    depth(c_mesh);
    out(c_mesh);
    c_mesh->add_option("--samples", o.samples, "minimum core vertices per torus");
    c_mesh->add_option("--ring", o.ring, "vertices around each tube cross-section");
    c_mesh->add_flag("--no-root", o.no_root, "leave out the outermost torus");
    auto* c_family = app.add_subcommand("gen-family", "write family sequences for a,b pairs and compare them pairwise");
    c_family->add_option("specs", o.specs, "pairs a,b")->required();
    out(c_family);
    auto* c_oracle = app.add_subcommand("oracle", "bounded brute-force search for an alignment");
    files(c_oracle, 2);
    horizon(c_oracle, o.oracle_horizon);
    c_oracle->add_option("--max-shift", o.max_shift, "largest shift tried");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "bwseq: " << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (c_cantor->parsed()) return check_cantor(o);
        if (c_equiv->parsed()) return decide_equiv(o);
        if (c_pattern->parsed()) return pattern(o);
        if (c_index->parsed()) return index(o);
        if (c_components->parsed()) return components(o);
        if (c_expand->parsed()) return expand(o);
        if (c_mesh->parsed()) return export_mesh(o);
        if (c_family->parsed()) return gen_family(o);
        if (c_oracle->parsed()) return oracle(o);
    } catch (const bw::io_error& e) {
        std::cerr << "bwseq: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "bwseq: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
