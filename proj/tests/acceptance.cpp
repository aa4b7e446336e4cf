// Catalogue acceptance gates: one verdict line per criterion, exit code is
// the number of failing criteria. Thin sets run at level 9, fat sets at 8.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pk/generators.hpp"
#include "pk/label.hpp"
#include "pk/lambda.hpp"
#include "pk/maps.hpp"
#include "pk/partition.hpp"
#include "pk/relation.hpp"
#include "pk/tfiber.hpp"

using namespace pk;

namespace {

int failures = 0;

void verdict(int num, bool ok, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d %s: %s%s%s\n", num, ok ? "PASS" : "FAIL", what.c_str(),
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

Raster gen(Kind k, unsigned g, int level, unsigned tower_k = 2) {
    GeneratorSpec spec;
    spec.kind = k;
    spec.generation = g;
    spec.level = level;
    spec.tower_k = tower_k;
    return generate(spec);
}

// cantor_circles ∪ [0,1] on the circles window.
std::pair<Raster, Raster> slc_bad_pair(int level) {
    Raster cg = gen(Kind::cantor_circles, 2, level);
    Raster cg1 = gen(Kind::cantor_circles, 3, level);
    Raster seg = unit_segment_on(cg.window(), level);
    return {raster_union(cg, seg), raster_union(cg1, seg)};
}

bool cellset_contains(const CellSet& sorted_cells, int32_t idx) {
    return std::binary_search(sorted_cells.begin(), sorted_cells.end(), idx);
}

// ---------------------------------------------------------------- criterion 1
void c1_peano_dichotomy() {
    struct Case {
        Kind kind;
        int level;
        bool expect;
    };
    const Case cases[] = {
        {Kind::full_square, 8, true},   {Kind::segment, 9, true},
        {Kind::circle, 9, true},        {Kind::cantor_comb, 9, false},
        {Kind::cantor_circles, 9, false}, {Kind::witch_broom, 9, false},
    };
    std::ostringstream detail;
    bool ok = true;
    for (const Case& c : cases) {
        Raster g2 = gen(c.kind, 2, c.level);
        Raster g3 = gen(c.kind, 3, c.level);
        bool got = peano_check(g2, g3).is_peano_at_scale;
        if (got != c.expect) {
            ok = false;
            detail << kind_to_string(c.kind) << "=" << (got ? "peano" : "non-peano") << " ";
        }
    }
    Strip mid{Axis::horizontal, 0.3, 0.7};
    unsigned s2 = strip_crossing_count(gen(Kind::cantor_comb, 2, 9), mid);
    unsigned s3 = strip_crossing_count(gen(Kind::cantor_comb, 3, 9), mid);
    if (s2 != 8 || s3 != 16) {
        ok = false;
        detail << "comb strip counts " << s2 << "/" << s3 << " want 8/16";
    }
    verdict(1, ok, "peano dichotomy across the catalogue", detail.str());
}

// ---------------------------------------------------------------- criterion 2
void c2_comb_teeth() {
    Raster g2 = gen(Kind::cantor_comb, 2, 9);
    Raster g3 = gen(Kind::cantor_comb, 3, 9);
    RelationEngine eng(g2, g3);
    Partition p = decompose(eng);
    GeneratorSpec spec;
    spec.kind = Kind::cantor_comb;
    spec.generation = 3;
    spec.level = 9;
    std::vector<CellSet> teeth = teeth_of_comb(spec);
    double tol = 4 * g3.h();
    std::ostringstream detail;
    bool ok = true;
    if (p.nondegenerate_count() != teeth.size()) {
        ok = false;
        detail << "classes=" << p.nondegenerate_count() << " teeth=" << teeth.size() << " ";
    }
    std::vector<bool> tooth_hit(teeth.size(), false);
    double worst = 0.0;
    for (const auto& cl : p.classes) {
        if (cl.degenerate) continue;
        double best = 1e9;
        size_t best_t = 0;
        for (size_t t = 0; t < teeth.size(); ++t) {
            double d = hausdorff_distance(g3, cl.cells, teeth[t]);
            if (d < best) {
                best = d;
                best_t = t;
            }
        }
        worst = std::max(worst, best);
        if (best <= tol) tooth_hit[best_t] = true;
    }
    if (worst > tol) {
        ok = false;
        detail << "worst class-tooth distance " << worst << " > " << tol << " ";
    }
    for (size_t t = 0; t < teeth.size(); ++t)
        if (!tooth_hit[t]) {
            ok = false;
            detail << "tooth " << t << " unmatched ";
            break;
        }
    for (double x : {0.4, 0.5, 0.6}) {  // bar abscissae in Cantor gaps
        int32_t idx = g3.cell_of(snap_to_occupied(g3, {x, 0.999}));
        int32_t cid = p.class_of[idx];
        if (cid < 0 || !p.classes[cid].degenerate) {
            ok = false;
            detail << "bar cell at x=" << x << " not degenerate ";
        }
    }
    verdict(2, ok, "comb classes are the teeth, bar dust degenerate", detail.str());
}

// ---------------------------------------------------------------- criterion 3
void c3_broom_atom() {
    Raster g2 = gen(Kind::witch_broom, 2, 9);
    Raster g3 = gen(Kind::witch_broom, 3, 9);
    RelationEngine eng(g2, g3);
    Partition p = decompose(eng);
    std::ostringstream detail;
    bool ok = true;
    if (p.nondegenerate_count() != 1) {
        ok = false;
        detail << "nondegenerate classes=" << p.nondegenerate_count() << " want 1 ";
    }
    const Partition::Class* atom = nullptr;
    for (const auto& cl : p.classes)
        if (!cl.degenerate) {
            atom = &cl;
            break;
        }
    if (atom) {
        int32_t left = g3.cell_of(snap_to_occupied(g3, {0.001, 0.001}));
        int32_t right = g3.cell_of(snap_to_occupied(g3, {0.999, 0.001}));
        if (!cellset_contains(atom->cells, left) || !cellset_contains(atom->cells, right)) {
            ok = false;
            detail << "atom misses an endpoint of the base ";
        }
        CellSet base;
        int n = g3.n();
        for (int i = 0; i < n; ++i)
            if (g3.get(i, 0)) base.push_back(int32_t(i));
        double d = hausdorff_distance(g3, atom->cells, base);
        if (d > 4 * g3.h()) {
            ok = false;
            std::ostringstream o;
            o << "Hausdorff(atom, base)=" << d << " > " << 4 * g3.h();
            detail << o.str();
        }
    } else {
        ok = false;
        detail << "no nondegenerate class ";
    }
    verdict(3, ok, "broom has one atom tracking its base segment", detail.str());
}

// ---------------------------------------------------------------- criterion 4
void c4_lambda_table() {
    std::ostringstream detail;
    bool ok = true;
    auto expect = [&](const char* name, Kind k, int level, unsigned tk, int want) {
        Raster g2 = gen(k, 2, level, tk);
        Raster g3 = gen(k, 3, level, tk);
        LambdaField f = lambda_field(g2, g3);
        if (f.max_lambda != want || f.saturated) {
            ok = false;
            detail << name << "=" << f.max_lambda << (f.saturated ? "(sat)" : "")
                   << " want " << want << " ";
        }
    };
    expect("square", Kind::full_square, 8, 2, 0);
    expect("broom", Kind::witch_broom, 9, 2, 1);
    expect("comb", Kind::cantor_comb, 9, 2, 1);
    expect("tower2", Kind::comb_tower, 9, 2, 2);
    expect("tower3", Kind::comb_tower, 9, 3, 3);
    {
        Raster g2 = gen(Kind::cantor_teepee, 2, 9);
        Raster g3 = gen(Kind::cantor_teepee, 3, 9);
        LambdaField f = lambda_field(g2, g3, {}, 3);
        if (!f.saturated) {
            ok = false;
            detail << "teepee max=" << f.max_lambda << " not saturated at cap 3 ";
        }
    }
    verdict(4, ok, "lambda table over the catalogue", detail.str());
}

// ---------------------------------------------------------------- criterion 5
void c5_moore_strictness() {
    Raster g2 = gen(Kind::ifs_condensation, 2, 9);
    Raster g3 = gen(Kind::ifs_condensation, 3, 9);
    LambdaField f = lambda_field(g2, g3);
    double h = g3.h();
    int n = g3.n();
    // Attractor segment E = {ti}: the occupied column hugging x = 0.
    size_t e_total = 0, e_zero = 0;
    for (int j = 0; j < n; ++j) {
        if (!g3.get(0, j)) continue;
        Point c = g3.cell_center(int32_t(j) * n + 0);
        if (c.y < -h || c.y > 1.0 + h) continue;
        ++e_total;
        if (f.lambda_of[int32_t(j) * n + 0] == 0) ++e_zero;
    }
    // Teeth of the top-level condensation comb.
    const double in = 2.5 / 32.0, out = 29.5 / 32.0, span = 27.0 / 32.0;
    std::set<int32_t> tooth_cells;
    for (double c : cantor_endpoints(3)) {
        double x = 1.0 + in + span * c;
        int i0 = int(std::floor(x / h));
        for (int i = i0 - 1; i <= i0 + 1; ++i) {
            if (i < 0 || i >= n) continue;
            double cx = (i + 0.5) * h;
            if (std::abs(cx - x) > h * 0.5 + 1e-12) continue;
            for (int j = int(std::floor(in / h)); j <= int(std::floor(out / h)); ++j) {
                int32_t idx = int32_t(j) * n + i;
                if (g3.get_idx(idx)) tooth_cells.insert(idx);
            }
        }
    }
    size_t t_total = tooth_cells.size(), t_one = 0;
    for (int32_t idx : tooth_cells)
        if (f.lambda_of[idx] == 1) ++t_one;
    double fe = e_total ? double(e_zero) / e_total : 0.0;
    double ft = t_total ? double(t_one) / t_total : 0.0;
    std::ostringstream detail;
    detail << "lambda=0 on " << 100 * fe << "% of E, lambda=1 on " << 100 * ft
           << "% of teeth";
    verdict(5, fe >= 0.95 && ft >= 0.95, "IFS continuum refines Moore's decomposition",
            detail.str());
}

// ---------------------------------------------------------------- criterion 6
void c6_invariance() {
    auto [kg, kg1] = slc_bad_pair(9);
    RationalMap f = RationalMap::square();
    TransportReport tr = invariance_check(kg, kg1, f, kg.window(), 9);
    double tol = 4 * kg1.h();
    std::ostringstream detail;
    detail << "fraction=" << tr.match.fraction << " worst=" << tr.match.worst;
    verdict(6, tr.match.fraction >= 0.95 && tr.match.worst <= tol,
            "z^2 invariance on cantor circles with spine", detail.str());
}

// ---------------------------------------------------------------- criterion 7
void c7_beardon() {
    RationalMap f = RationalMap::square();
    std::ostringstream detail;
    bool ok = true;
    auto run_case = [&](const char* name, const Raster& kg, const Raster& kg1) {
        Window lw = default_window(Kind::cantor_circles);
        Raster lg = preimage(kg, f, lw, 9).raster;
        Raster lg1 = preimage(kg1, f, lw, 9).raster;
        RelationEngine keng(kg, kg1);
        Partition kp = decompose(keng);
        RelationEngine leng(lg, lg1);
        Partition lp = decompose(leng);
        double tol = 4 * std::max(kg1.h(), lg1.h());
        int checked = 0;
        for (const auto& cl : kp.classes) {
            if (cl.degenerate || checked >= 6) continue;
            ++checked;
            BeardonReport rep = beardon_check(cl.cells, kg1, f, lg1, &lp);
            if (!rep.degree_ok || rep.empty_preimage) {
                ok = false;
                detail << name << " degree/empty violation ";
                continue;
            }
            for (const auto& comp : rep.components) {
                if (comp.onto_distance > tol) {
                    ok = false;
                    detail << name << " onto=" << comp.onto_distance << " ";
                }
                if (comp.class_match_distance < 0 || comp.class_match_distance > tol) {
                    ok = false;
                    detail << name << " class-match=" << comp.class_match_distance << " ";
                }
            }
        }
        if (checked == 0) {
            ok = false;
            detail << name << " had no nondegenerate classes ";
        }
    };
    {
        auto [kg, kg1] = slc_bad_pair(9);
        run_case("circles", kg, kg1);
    }
    run_case("comb", gen(Kind::cantor_comb, 2, 9), gen(Kind::cantor_comb, 3, 9));
    verdict(7, ok, "preimage components obey the degree bound and map onto", detail.str());
}

// ---------------------------------------------------------------- criterion 8
void c8_fibers() {
    struct Case {
        Kind kind;
        int level;
        int fiber_stride;
    };
    const Case cases[] = {
        {Kind::cantor_comb, 9, 8}, {Kind::witch_broom, 9, 8},
        {Kind::cantor_teepee, 9, 8}, {Kind::cantor_circles, 9, 8},
        {Kind::full_square, 8, 32},  {Kind::segment, 9, 8},
    };
    std::ostringstream detail;
    bool ok = true;
    for (const Case& c : cases) {
        Raster g2 = gen(c.kind, 2, c.level);
        Raster g3 = gen(c.kind, 3, c.level);
        RelationEngine eng(g2, g3);
        int n = g3.n();
        std::vector<Point> bases;
        for (int step = n / 8; step >= 1 && bases.size() < 50; step /= 2) {
            bases.clear();
            for (int j = 0; j < n && bases.size() < 64; j += step)
                for (int i = 0; i < n && bases.size() < 64; i += step)
                    if (g3.get(i, j)) bases.push_back(g3.cell_center(int32_t(j) * n + i));
        }
        if (bases.size() < 50) {
            ok = false;
            detail << kind_to_string(c.kind) << " only " << bases.size() << " bases ";
            continue;
        }
        bases.resize(50);
        int disconnected = 0, escapes = 0, asym = 0;
        for (size_t b = 0; b < bases.size(); ++b) {
            FiberMask fib = eng.s_fiber(bases[b], c.fiber_stride);
            CellSet grown = dilate(fib.cells, n, 1);
            std::vector<uint8_t> mask(g3.bits().size(), 0);
            for (int32_t idx : grown) mask[idx] = 1;
            if (label_components(mask, n).count > 1) ++disconnected;
            CellSet hull = dilate(fib.cells, n, 4);
            TFiberMask tf = t_fiber(g3, bases[b]);
            for (int32_t idx : tf.cells)
                if (!cellset_contains(hull, idx)) {
                    ++escapes;
                    break;
                }
        }
        for (size_t b = 0; b + 1 < bases.size(); b += 2) {
            const Point &x = bases[b], &y = bases[b + 1];
            if (dist(x, y) < 4 * g3.h()) continue;
            if (eng.related(x, y).related != eng.related(y, x).related) ++asym;
        }
        if (disconnected || escapes || asym) {
            ok = false;
            detail << kind_to_string(c.kind) << " disconnected=" << disconnected
                   << " t-escapes=" << escapes << " asymmetric=" << asym << " ";
        }
    }
    verdict(8, ok, "fiber connectivity, T-in-S containment, symmetry", detail.str());
}

// ---------------------------------------------------------------- criterion 9
void c9_embedding() {
    RationalMap h = RationalMap::moebius({0.5, 0.0}, {0.2, 0.1}, {0.0, 0.0}, {1.0, 0.0});
    Window src{-0.5, -0.5, 2.5};
    std::ostringstream detail;
    bool ok = true;
    for (Kind kind : {Kind::cantor_comb, Kind::witch_broom}) {
        Raster kg = gen(kind, 2, 9);
        Raster kg1 = gen(kind, 3, 9);
        TransportReport tr = invariance_check(kg, kg1, h, src, 9);
        if (tr.match.fraction < 1.0) {
            ok = false;
            detail << kind_to_string(kind) << " fraction=" << tr.match.fraction << " ";
        }
        // Lambda correspondence, at class granularity: the embedded copy is
        // h^{-1}(K) on the source window; h maps it back onto K.
        Raster lg = preimage(kg, h, src, 9).raster;
        Raster lg1 = preimage(kg1, h, src, 9).raster;
        LambdaField lam_l = lambda_field(lg, lg1);
        LambdaField lam_k = lambda_field(kg, kg1);
        if (lam_l.max_lambda != lam_k.max_lambda || lam_l.saturated != lam_k.saturated) {
            ok = false;
            detail << kind_to_string(kind) << " max " << lam_l.max_lambda
                   << " vs " << lam_k.max_lambda << " ";
        }
        RelationEngine leng(lg, lg1);
        Partition lp = decompose(leng);
        auto mode_lambda = [](const LambdaField& f, const CellSet& cells) {
            std::map<int, int> votes;
            for (int32_t idx : cells)
                if (f.lambda_of[idx] != LambdaField::kUnset) ++votes[f.lambda_of[idx]];
            int best = LambdaField::kUnset, best_n = 0;
            for (auto [v, cnt] : votes)
                if (cnt > best_n) {
                    best = v;
                    best_n = cnt;
                }
            return best;
        };
        for (const auto& cl : lp.classes) {
            if (cl.degenerate) continue;
            CellSet image;
            for (int32_t idx : cl.cells) {
                auto y = h.eval(lg1.cell_center(idx));
                if (!y) continue;
                try {
                    image.push_back(kg1.cell_of(snap_to_occupied(kg1, *y)));
                } catch (const domain_error&) {
                }
            }
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            if (image.empty() || mode_lambda(lam_l, cl.cells) != mode_lambda(lam_k, image)) {
                ok = false;
                detail << kind_to_string(kind) << " class lambda mismatch ";
                break;
            }
        }
    }
    verdict(9, ok, "affine re-embedding preserves classes and lambda", detail.str());
}

// --------------------------------------------------------------- criterion 10
void c10_non_invariance() {
    RationalMap f = RationalMap::square();
    Raster lg = gen(Kind::carpet_halfdisk, 2, 8);
    Raster lg1 = gen(Kind::carpet_halfdisk, 3, 8);
    Raster kg = gen(Kind::carpet_polar, 2, 8);
    Raster kg1 = gen(Kind::carpet_polar, 3, 8);
    RelationEngine leng(lg, lg1);
    Partition lp = decompose(leng);
    RelationEngine keng(kg, kg1);
    Partition kp = decompose(keng);
    size_t best = 0;
    for (const auto& cl : lp.classes) {
        if (cl.degenerate) continue;
        std::set<int32_t> met;
        for (int32_t idx : cl.cells) {
            auto y = f.eval(lg1.cell_center(idx));
            if (!y || !kg1.window().contains(*y)) continue;
            try {
                int32_t target = kg1.cell_of(snap_to_occupied(kg1, *y));
                int32_t cid = kp.class_of[target];
                if (cid >= 0) met.insert(cid);
            } catch (const domain_error&) {
            }
        }
        best = std::max(best, met.size());
    }
    std::ostringstream detail;
    detail << "largest class-image spread=" << best << " over "
           << lp.nondegenerate_count() << " arcs";
    verdict(10, best > 10, "forward image of an arc shatters across classes",
            detail.str());
}

}  // namespace

int main() {
    c1_peano_dichotomy();
    c2_comb_teeth();
    c3_broom_atom();
    c4_lambda_table();
    c5_moore_strictness();
    c6_invariance();
    c7_beardon();
    c8_fibers();
    c9_embedding();
    c10_non_invariance();
    std::printf("%d of 10 criteria failing\n", failures);
    return failures == 0 ? 0 : 1;
}
