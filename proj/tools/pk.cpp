// pk: command-line front door for the decomposition toolkit.
//
// Subcommands: gen, peano-check, relation, decompose, lambda, invariance,
// beardon, tfiber, render. Exit codes: 0 success, 2 domain/config error,
// 3 invariant-violation report, 64 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "pk/generators.hpp"
#include "pk/label.hpp"
#include "pk/lambda.hpp"
#include "pk/maps.hpp"
#include "pk/partition.hpp"
#include "pk/relation.hpp"
#include "pk/tfiber.hpp"

using json = nlohmann::ordered_json;
using namespace pk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitViolation = 3;
constexpr int kExitUsage = 64;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

Point parse_point(const std::string& text) {
    size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw config_error("expected 'x,y' coordinate pair, got: " + text);
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw config_error("bad coordinate pair: " + text);
    }
}

// Every artifact embeds the invocation that produced it.
struct Config {
    std::vector<std::pair<std::string, std::string>> kv;
    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { kv.emplace_back(k, fmt(v)); }
    void add(const std::string& k, int v) { kv.emplace_back(k, std::to_string(v)); }

    json to_json() const {
        json j = json::object();
        for (const auto& [k, v] : kv) j[k] = v;
        return j;
    }
    std::string to_csv_comment() const {
        std::string line = "#";
        for (const auto& [k, v] : kv) line += " " + k + "=" + v;
        return line + "\n";
    }
};

void write_json_report(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw domain_error("cannot open report file: " + path);
    os << j.dump(2) << "\n";
}

std::ofstream open_csv(const std::string& path, const Config& cfg,
                       const std::string& header) {
    std::ofstream os(path);
    if (!os) throw domain_error("cannot open output file: " + path);
    os << cfg.to_csv_comment() << header << "\n";
    return os;
}

// ----- gen --------------------------------------------------------------

struct GenArgs {
    std::string kind, out;
    unsigned generation = 2;
    int level = 8;
    unsigned tower_k = 2;
    double radius = 0.5;
};

int run_gen(const GenArgs& a) {
    GeneratorSpec spec{kind_from_string(a.kind), a.generation, a.level};
    spec.tower_k = a.tower_k;
    spec.radius = a.radius;
    save_pkraster(a.out, generate(spec));
    return kExitOk;
}

// ----- peano-check ------------------------------------------------------

struct PeanoArgs {
    std::string kind, generations = "2,3", report;
    int level = 9;
    unsigned tower_k = 2;
};

int run_peano(const PeanoArgs& a) {
    size_t comma = a.generations.find(',');
    if (comma == std::string::npos)
        throw config_error("expected --generations g,g1");
    unsigned g = std::stoul(a.generations.substr(0, comma));
    unsigned g1 = std::stoul(a.generations.substr(comma + 1));
    GeneratorSpec sg{kind_from_string(a.kind), g, a.level};
    GeneratorSpec sg1{kind_from_string(a.kind), g1, a.level};
    sg.tower_k = sg1.tower_k = a.tower_k;
    PeanoReport rep = peano_check(generate(sg), generate(sg1));

    Config cfg;
    cfg.add("subcommand", "peano-check");
    cfg.add("in", a.kind);
    cfg.add("generations", a.generations);
    cfg.add("level", a.level);

    json j;
    j["config"] = cfg.to_json();
    j["is_peano_at_scale"] = rep.is_peano_at_scale;
    j["crossing_counts"] = json::array();
    for (const auto& line : rep.crossing_counts)
        j["crossing_counts"].push_back(
            {{"axis", line.strip.axis == Axis::horizontal ? "horizontal" : "vertical"},
             {"lo", line.strip.lo},
             {"hi", line.strip.hi},
             {"count_g", line.count_g},
             {"count_g1", line.count_g1}});
    j["nondegenerate_counts"] = json::array();
    for (const auto& line : rep.nondegenerate_counts)
        j["nondegenerate_counts"].push_back({{"threshold", line.threshold},
                                             {"count_g", line.count_g},
                                             {"count_g1", line.count_g1}});
    write_json_report(a.report, j);
    return kExitOk;
}

// ----- relation ---------------------------------------------------------

struct RelationArgs {
    std::string in_g, in_g1, x, y;
    unsigned schedule_j = 3, theta = 2;
};

int run_relation(const RelationArgs& a) {
    Raster g = load_pkraster(a.in_g), g1 = load_pkraster(a.in_g1);
    RelationEngine engine(g, g1, RelationSchedule{a.schedule_j, a.theta});
    RelationVerdict v = engine.related(parse_point(a.x), parse_point(a.y));

    Config cfg;
    cfg.add("subcommand", "relation");
    cfg.add("in_g", a.in_g);
    cfg.add("in_g1", a.in_g1);
    cfg.add("x", a.x);
    cfg.add("y", a.y);
    cfg.add("J", int(a.schedule_j));
    cfg.add("theta", int(a.theta));

    json j;
    j["config"] = cfg.to_json();
    j["x"] = {v.x.x, v.x.y};
    j["y"] = {v.y.x, v.y.y};
    j["related"] = v.related;
    j["schedule_empty"] = v.schedule_empty;
    j["theta"] = v.theta;
    j["radii"] = v.radii;
    j["counts_g"] = v.counts_g;
    j["counts_g1"] = v.counts_g1;
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

// ----- decompose --------------------------------------------------------

struct DecomposeArgs {
    std::string in_g, in_g1, out_csv, out_img;
    int stride = 0;
};

int run_decompose(const DecomposeArgs& a) {
    Raster g = load_pkraster(a.in_g), g1 = load_pkraster(a.in_g1);
    RelationEngine engine(g, g1);
    Partition p = a.stride > 0 ? decompose(engine, a.stride) : decompose(engine);

    Config cfg;
    cfg.add("subcommand", "decompose");
    cfg.add("in_g", a.in_g);
    cfg.add("in_g1", a.in_g1);
    if (a.stride > 0) cfg.add("stride", a.stride);

    if (!a.out_csv.empty()) {
        std::ofstream os = open_csv(a.out_csv, cfg, "x,y,class,degenerate");
        for (int32_t idx : p.domain.occupied()) {
            Point c = p.domain.cell_center(idx);
            int32_t cl = p.class_of[idx];
            os << fmt(c.x) << "," << fmt(c.y) << "," << cl << ","
               << (p.classes[cl].degenerate ? 1 : 0) << "\n";
        }
    }
    if (!a.out_img.empty()) class_map_render_file(p, a.out_img);
    return kExitOk;
}

// ----- lambda -----------------------------------------------------------

struct LambdaArgs {
    std::string in_g, in_g1, out_csv;
    int cap = 4;
};

int run_lambda(const LambdaArgs& a) {
    Raster g = load_pkraster(a.in_g), g1 = load_pkraster(a.in_g1);
    LambdaField f = lambda_field(g, g1, {}, a.cap);

    Config cfg;
    cfg.add("subcommand", "lambda");
    cfg.add("in_g", a.in_g);
    cfg.add("in_g1", a.in_g1);
    cfg.add("cap", a.cap);
    cfg.add("max_lambda", f.max_lambda);
    cfg.add("saturated", f.saturated ? 1 : 0);

    std::ofstream os = open_csv(a.out_csv, cfg, "x,y,lambda");
    for (int32_t idx : f.domain.occupied()) {
        Point c = f.domain.cell_center(idx);
        os << fmt(c.x) << "," << fmt(c.y) << "," << f.lambda_of[idx] << "\n";
    }
    return kExitOk;
}

// ----- invariance -------------------------------------------------------

struct InvarianceArgs {
    std::string k_g, k_g1, map, report;
    int source_level = 0;  // 0: same as target
};

int run_invariance(const InvarianceArgs& a) {
    Raster g = load_pkraster(a.k_g), g1 = load_pkraster(a.k_g1);
    RationalMap f = RationalMap::parse(a.map);
    int level = a.source_level > 0 ? a.source_level : g1.level();
    TransportReport rep = invariance_check(g, g1, f, g1.window(), level);

    Config cfg;
    cfg.add("subcommand", "invariance");
    cfg.add("k_g", a.k_g);
    cfg.add("k_g1", a.k_g1);
    cfg.add("map", a.map);
    cfg.add("source_level", level);

    json j;
    j["config"] = cfg.to_json();
    j["degree"] = rep.degree;
    j["degree_ok"] = rep.degree_ok;
    j["max_component_count"] = rep.max_component_count;
    j["component_counts"] = rep.component_counts;
    j["matched"] = rep.match.matched;
    j["total"] = rep.match.total;
    j["fraction"] = rep.match.fraction;
    j["worst"] = rep.match.worst;
    write_json_report(a.report, j);
    return rep.degree_ok ? kExitOk : kExitViolation;
}

// ----- beardon ----------------------------------------------------------

struct BeardonArgs {
    std::string k_g, k_g1, map, report;
    int source_level = 0;
};

int run_beardon(const BeardonArgs& a) {
    Raster g = load_pkraster(a.k_g), g1 = load_pkraster(a.k_g1);
    RationalMap f = RationalMap::parse(a.map);
    int level = a.source_level > 0 ? a.source_level : g1.level();

    RelationEngine engine(g, g1);
    Partition p = decompose(engine);
    MappedRaster L = preimage(g1, f, g1.window(), level);
    MappedRaster Lg = preimage(g, f, g1.window(), level);
    RelationEngine src_engine(Lg.raster, L.raster);
    Partition lp = decompose(src_engine);

    Config cfg;
    cfg.add("subcommand", "beardon");
    cfg.add("k_g", a.k_g);
    cfg.add("k_g1", a.k_g1);
    cfg.add("map", a.map);
    cfg.add("source_level", level);

    json j;
    j["config"] = cfg.to_json();
    j["degree"] = f.degree();
    j["classes"] = json::array();
    bool ok = true;
    for (size_t ci = 0; ci < p.classes.size(); ++ci) {
        if (p.classes[ci].degenerate) continue;
        BeardonReport rep = beardon_check(p.classes[ci].cells, g1, f, L.raster, &lp);
        ok = ok && rep.degree_ok && !rep.empty_preimage;
        json cj;
        cj["class"] = ci;
        cj["component_count"] = rep.component_count;
        cj["degree_ok"] = rep.degree_ok;
        cj["empty_preimage"] = rep.empty_preimage;
        cj["components"] = json::array();
        for (const auto& comp : rep.components)
            cj["components"].push_back({{"cell_count", comp.cell_count},
                                        {"onto_distance", comp.onto_distance},
                                        {"class_match_distance", comp.class_match_distance}});
        j["classes"].push_back(cj);
    }
    j["ok"] = ok;
    write_json_report(a.report, j);
    return ok ? kExitOk : kExitViolation;
}

// ----- tfiber -----------------------------------------------------------

struct TFiberArgs {
    std::string in, x, out_csv;
};

int run_tfiber(const TFiberArgs& a) {
    Raster K = load_pkraster(a.in);
    TFiberMask fiber = t_fiber(K, parse_point(a.x));

    Config cfg;
    cfg.add("subcommand", "tfiber");
    cfg.add("in", a.in);
    cfg.add("x", a.x);

    std::ofstream os = open_csv(a.out_csv, cfg, "x,y");
    for (int32_t idx : fiber.cells) {
        Point c = K.cell_center(idx);
        os << fmt(c.x) << "," << fmt(c.y) << "\n";
    }
    return kExitOk;
}

// ----- render -----------------------------------------------------------

struct RenderArgs {
    std::string in, out;
};

int run_render(const RenderArgs& a) {
    Raster K = load_pkraster(a.in);
    std::ofstream os(a.out, std::ios::binary);
    if (!os) throw domain_error("cannot open output file: " + a.out);
    int n = K.n();
    os << "P6\n" << n << " " << n << "\n255\n";
    std::string row(size_t(n) * 3, '\0');
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < n; ++i) {
            char v = K.get(i, j) ? '\x20' : '\xff';
            row[size_t(i) * 3] = row[size_t(i) * 3 + 1] = row[size_t(i) * 3 + 2] = v;
        }
        os.write(row.data(), row.size());
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planar compactum decomposition toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* sc_gen = app.add_subcommand("gen", "generate a catalogue raster");
    sc_gen->add_option("--kind", gen.kind, "catalogue kind")->required();
    sc_gen->add_option("--generation", gen.generation, "construction depth");
    sc_gen->add_option("--level", gen.level, "raster level");
    sc_gen->add_option("--tower-k", gen.tower_k, "comb_tower height");
    sc_gen->add_option("--radius", gen.radius, "circle radius");
    sc_gen->add_option("--out", gen.out, "output PKRASTER file")->required();

    PeanoArgs peano;
    auto* sc_peano = app.add_subcommand("peano-check", "Peano-at-scale dichotomy");
    sc_peano->add_option("--in", peano.kind, "catalogue kind")->required();
    sc_peano->add_option("--generations", peano.generations, "pair g,g1");
    sc_peano->add_option("--level", peano.level, "raster level");
    sc_peano->add_option("--tower-k", peano.tower_k, "comb_tower height");
    sc_peano->add_option("--report", peano.report, "JSON report path")->required();

    RelationArgs rel;
    auto* sc_rel = app.add_subcommand("relation", "two-disk relation verdict");
    sc_rel->add_option("--in-g", rel.in_g, "coarse generation raster")->required();
    sc_rel->add_option("--in-g1", rel.in_g1, "fine generation raster")->required();
    sc_rel->add_option("--x", rel.x, "first point fx,fy")->required();
    sc_rel->add_option("--y", rel.y, "second point fx,fy")->required();
    sc_rel->add_option("--schedule-j", rel.schedule_j, "radius schedule length J");
    sc_rel->add_option("--theta", rel.theta, "growth floor");
    sc_rel->add_flag("--json", "emit JSON to stdout (always on)");

    DecomposeArgs dec;
    auto* sc_dec = app.add_subcommand("decompose", "relation-closure partition");
    sc_dec->add_option("--in-g", dec.in_g, "coarse generation raster")->required();
    sc_dec->add_option("--in-g1", dec.in_g1, "fine generation raster")->required();
    sc_dec->add_option("--out-csv", dec.out_csv, "CSV: x,y,class,degenerate");
    sc_dec->add_option("--out-img", dec.out_img, "P6 class map");
    sc_dec->add_option("--stride", dec.stride, "sample stride (0: default)");

    LambdaArgs lam;
    auto* sc_lam = app.add_subcommand("lambda", "per-cell decomposition depth");
    sc_lam->add_option("--in-g", lam.in_g, "coarse generation raster")->required();
    sc_lam->add_option("--in-g1", lam.in_g1, "fine generation raster")->required();
    sc_lam->add_option("--cap", lam.cap, "recursion cap");
    sc_lam->add_option("--out-csv", lam.out_csv, "CSV: x,y,lambda")->required();

    InvarianceArgs inv;
    auto* sc_inv = app.add_subcommand("invariance", "pullback-vs-direct comparison");
    sc_inv->add_option("--k-g", inv.k_g, "target coarse raster")->required();
    sc_inv->add_option("--k-g1", inv.k_g1, "target fine raster")->required();
    sc_inv->add_option("--map", inv.map, "square | quad:re,im | moebius:a,b,c,d")->required();
    sc_inv->add_option("--source-level", inv.source_level, "preimage raster level");
    sc_inv->add_option("--report", inv.report, "JSON report path")->required();

    BeardonArgs bea;
    auto* sc_bea = app.add_subcommand("beardon", "preimage degree/onto checks");
    sc_bea->add_option("--k-g", bea.k_g, "target coarse raster")->required();
    sc_bea->add_option("--k-g1", bea.k_g1, "target fine raster")->required();
    sc_bea->add_option("--map", bea.map, "square | quad:re,im | moebius:a,b,c,d")->required();
    sc_bea->add_option("--source-level", bea.source_level, "preimage raster level");
    sc_bea->add_option("--report", bea.report, "JSON report path")->required();

    TFiberArgs tf;
    auto* sc_tf = app.add_subcommand("tfiber", "T-function fiber at a point");
    sc_tf->add_option("--in", tf.in, "PKRASTER input")->required();
    sc_tf->add_option("--x", tf.x, "base point fx,fy")->required();
    sc_tf->add_option("--out-csv", tf.out_csv, "CSV: x,y fiber cells")->required();

    RenderArgs ren;
    auto* sc_ren = app.add_subcommand("render", "raster to P6 image");
    sc_ren->add_option("--in", ren.in, "PKRASTER input")->required();
    sc_ren->add_option("--out", ren.out, "P6 output")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sc_gen->parsed()) return run_gen(gen);
        if (sc_peano->parsed()) return run_peano(peano);
        if (sc_rel->parsed()) return run_relation(rel);
        if (sc_dec->parsed()) return run_decompose(dec);
        if (sc_lam->parsed()) return run_lambda(lam);
        if (sc_inv->parsed()) return run_invariance(inv);
        if (sc_bea->parsed()) return run_beardon(bea);
        if (sc_tf->parsed()) return run_tfiber(tf);
        if (sc_ren->parsed()) return run_render(ren);
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitUsage;
}
