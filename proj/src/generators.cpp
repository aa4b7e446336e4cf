#include "pk/generators.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace pk {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Transform = std::function<Point(Point)>;

Point ident(Point p) { return p; }

struct Segment {
    Point a, b;
};

// Comb on the unit square: one vertical tooth per generation-g Cantor interval
// endpoint plus the top bar.
std::vector<Segment> comb_segments(unsigned g) {
    std::vector<Segment> segs;
    for (double c : cantor_endpoints(g)) segs.push_back({{c, 0.0}, {c, 1.0}});
    segs.push_back({{0.0, 1.0}, {1.0, 1.0}});
    return segs;
}

void stamp_segments(Raster& r, const std::vector<Segment>& segs, const Transform& t) {
    double tol = r.h() * 0.5;
    for (const Segment& s : segs) r.stamp_segment(t(s.a), t(s.b), tol);
}

// Sierpinski carpet: retained squares (x, y, side) at depth g.
void carpet_squares(unsigned g, double x, double y, double s,
                    std::vector<std::array<double, 3>>& out) {
    if (g == 0) {
        out.push_back({x, y, s});
        return;
    }
    double t = s / 3.0;
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
            if (i == 1 && j == 1) continue;
            carpet_squares(g - 1, x + i * t, y + j * t, t, out);
        }
}

// Stamp the image of a parameter square under a smooth map, sampling densely
// enough that consecutive samples move less than the stamping tolerance.
void stamp_mapped_square(Raster& r, double x, double y, double s,
                         const std::function<Point(double, double)>& map,
                         double max_speed) {
    double tol = r.h() * 0.5;
    double step = std::min(s, tol / max_speed);
    int steps = std::max(1, int(std::ceil(s / step)));
    for (int a = 0; a <= steps; ++a)
        for (int b = 0; b <= steps; ++b) {
            double u = x + s * a / steps, v = y + s * b / steps;
            r.stamp_point(map(u, v), tol);
        }
}

Raster make(const Window& win, int level) { return Raster(win, level); }

void build_comb(Raster& r, unsigned g, const Transform& t) {
    stamp_segments(r, comb_segments(g), t);
}

void build_broom(Raster& r, unsigned g) {
    double tol = r.h() * 0.5;
    r.stamp_segment({0.0, 0.0}, {1.0, 0.0}, tol);
    for (unsigned k = 0; k <= g; ++k) {
        double J = std::ldexp(1.0, -int(k));
        for (unsigned i = 0; i <= g; ++i)
            r.stamp_segment({J, 0.0}, {J / 2.0, (J / 2.0) * std::ldexp(1.0, -int(i))}, tol);
    }
}

void build_teepee(Raster& r, unsigned g) {
    double tol = r.h() * 0.5;
    Point apex{0.5, 1.0};
    for (double c : cantor_endpoints(g)) r.stamp_segment(apex, {c, 0.0}, tol);
}

void build_circles(Raster& r, unsigned g) {
    double tol = r.h() * 0.5;
    for (double c : cantor_endpoints(g)) {
        if (c <= 0.0) continue;
        int steps = std::max(16, int(std::ceil(2.0 * kPi * c / (tol * 0.5))));
        for (int s = 0; s <= steps; ++s) {
            double a = 2.0 * kPi * s / steps;
            r.stamp_point({c * std::cos(a), c * std::sin(a)}, tol);
        }
    }
}

void build_circle(Raster& r, double radius) {
    double tol = r.h() * 0.5;
    int steps = std::max(16, int(std::ceil(2.0 * kPi * radius / (tol * 0.5))));
    for (int s = 0; s <= steps; ++s) {
        double a = 2.0 * kPi * s / steps;
        r.stamp_point({radius * std::cos(a), radius * std::sin(a)}, tol);
    }
}

void build_carpet_polar(Raster& r, unsigned g) {
    std::vector<std::array<double, 3>> squares;
    carpet_squares(g, 0.0, 0.0, 1.0, squares);
    auto map = [](double t, double rr) -> Point {
        return {rr * rr * std::cos(2.0 * kPi * t), rr * rr * std::sin(2.0 * kPi * t)};
    };
    for (const auto& q : squares)
        stamp_mapped_square(r, q[0], q[1], q[2], map, 2.0 * kPi + 2.0);
}

void build_carpet_halfdisk(Raster& r, unsigned g) {
    std::vector<std::array<double, 3>> squares;
    carpet_squares(g, 0.0, 0.0, 1.0, squares);
    auto map = [](double s, double rr) -> Point {
        return {rr * std::cos(kPi * s), rr * std::sin(kPi * s)};
    };
    for (const auto& q : squares)
        stamp_mapped_square(r, q[0], q[1], q[2], map, kPi + 1.0);
    // Lower half: arcs r·e^{iπs}, s ∈ [1,2], at the Cantor radii.
    double tol = r.h() * 0.5;
    for (double c : cantor_endpoints(g)) {
        if (c <= 0.0) continue;
        int steps = std::max(16, int(std::ceil(kPi * c / (tol * 0.5))));
        for (int s = 0; s <= steps; ++s) {
            double a = kPi * (1.0 + double(s) / steps);
            r.stamp_point({c * std::cos(a), c * std::sin(a)}, tol);
        }
    }
}

// Condensation set of the IFS example: an inset comb over [1,2]×[0,1] plus the
// broken line 1 → 2 → 2+i → 1+i.
std::vector<Segment> condensation_segments(unsigned g) {
    std::vector<Segment> segs;
    const double in = 2.5 / 32.0, out = 29.5 / 32.0, span = 27.0 / 32.0;
    for (double c : cantor_endpoints(g)) {
        double x = 1.0 + in + span * c;
        segs.push_back({{x, in}, {x, out}});
    }
    segs.push_back({{1.0 + in, out}, {2.0, out}});  // comb bar, reaching the right edge
    segs.push_back({{1.0, 0.0}, {2.0, 0.0}});
    segs.push_back({{2.0, 0.0}, {2.0, 1.0}});
    segs.push_back({{2.0, 1.0}, {1.0, 1.0}});
    return segs;
}

void build_ifs(Raster& r, unsigned g) {
    auto segs = condensation_segments(g);
    // Words over {f1(z)=z/2, f2(z)=(z+i)/2} up to length g, applied to A.
    std::vector<Transform> words{ident};
    std::vector<Transform> frontier{ident};
    for (unsigned d = 0; d < g; ++d) {
        std::vector<Transform> next;
        for (const Transform& w : frontier) {
            next.push_back([w](Point p) { Point q = w(p); return Point{q.x / 2, q.y / 2}; });
            next.push_back([w](Point p) {
                Point q = w(p);
                return Point{q.x / 2, (q.y + 1.0) / 2};
            });
        }
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    for (const Transform& w : words) stamp_segments(r, segs, w);
    // The attractor segment E = {ti : 0 ≤ t ≤ 1}, the limit of the copies.
    r.stamp_segment({0.0, 0.0}, {0.0, 1.0}, r.h() * 0.5);
}

void build_tower(Raster& r, unsigned g, unsigned k) {
    build_comb(r, g, ident);  // K_1
    for (unsigned step = 2; step <= k; ++step) {
        double m = double((step - 2) / 2);
        if (step % 2 == 0) {
            // rotated comb above: teeth [0,1]×{1+c}, bar {1}×[1,2], shifted by (m,m)
            Transform t = [m](Point p) { return Point{p.y + m, 1.0 + p.x + m}; };
            build_comb(r, g, t);
        } else {
            Transform t = [m](Point p) { return Point{p.x + m + 1, p.y + m + 1}; };
            build_comb(r, g, t);
        }
    }
}

}  // namespace

std::vector<std::pair<double, double>> cantor_intervals(unsigned g) {
    std::vector<std::pair<double, double>> iv{{0.0, 1.0}};
    for (unsigned d = 0; d < g; ++d) {
        std::vector<std::pair<double, double>> next;
        for (auto [a, b] : iv) {
            double t = (b - a) / 3.0;
            next.push_back({a, a + t});
            next.push_back({b - t, b});
        }
        iv = std::move(next);
    }
    return iv;
}

std::vector<double> cantor_endpoints(unsigned g) {
    std::vector<double> pts;
    for (auto [a, b] : cantor_intervals(g)) {
        pts.push_back(a);
        pts.push_back(b);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

Kind kind_from_string(const std::string& name) {
    static const std::map<std::string, Kind> m = {
        {"cantor_set", Kind::cantor_set},
        {"cantor_comb", Kind::cantor_comb},
        {"witch_broom", Kind::witch_broom},
        {"comb_tower", Kind::comb_tower},
        {"cantor_circles", Kind::cantor_circles},
        {"cantor_teepee", Kind::cantor_teepee},
        {"carpet_polar", Kind::carpet_polar},
        {"carpet_halfdisk", Kind::carpet_halfdisk},
        {"ifs_condensation", Kind::ifs_condensation},
        {"full_square", Kind::full_square},
        {"segment", Kind::segment},
        {"circle", Kind::circle},
    };
    auto it = m.find(name);
    if (it == m.end()) throw config_error("unknown generator kind: " + name);
    return it->second;
}

std::string kind_to_string(Kind k) {
    switch (k) {
        case Kind::cantor_set: return "cantor_set";
        case Kind::cantor_comb: return "cantor_comb";
        case Kind::witch_broom: return "witch_broom";
        case Kind::comb_tower: return "comb_tower";
        case Kind::cantor_circles: return "cantor_circles";
        case Kind::cantor_teepee: return "cantor_teepee";
        case Kind::carpet_polar: return "carpet_polar";
        case Kind::carpet_halfdisk: return "carpet_halfdisk";
        case Kind::ifs_condensation: return "ifs_condensation";
        case Kind::full_square: return "full_square";
        case Kind::segment: return "segment";
        case Kind::circle: return "circle";
    }
    return "?";
}

Window default_window(Kind k) {
    switch (k) {
        case Kind::cantor_circles:
        case Kind::carpet_polar:
        case Kind::carpet_halfdisk:
        case Kind::circle:
            return {-1.125, -1.125, 2.25};
        case Kind::ifs_condensation:
            return {0.0, 0.0, 2.0};
        case Kind::comb_tower:
            return {0.0, 0.0, 2.0};  // adjusted for k ≥ 4 in generate()
        default:
            return {0.0, 0.0, 1.0};
    }
}

Raster generate(const GeneratorSpec& spec) {
    if (spec.generation < 1) throw config_error("generation must be ≥ 1");
    if (spec.level < int(spec.generation))
        throw config_error("level must be ≥ generation");
    Window win = default_window(spec.kind);
    if (spec.kind == Kind::comb_tower) {
        if (spec.tower_k < 2) throw config_error("comb_tower needs k ≥ 2");
        win.side = double(spec.tower_k / 2 + 1);
    }
    Raster r = make(win, spec.level);
    unsigned g = spec.generation;
    switch (spec.kind) {
        case Kind::cantor_set: {
            double tol = r.h() * 0.5;
            for (auto [a, b] : cantor_intervals(g))
                r.stamp_segment({a, 0.0}, {b, 0.0}, tol);
            break;
        }
        case Kind::cantor_comb:
            build_comb(r, g, ident);
            break;
        case Kind::witch_broom:
            build_broom(r, g);
            break;
        case Kind::comb_tower:
            build_tower(r, g, spec.tower_k);
            break;
        case Kind::cantor_circles:
            build_circles(r, g);
            break;
        case Kind::cantor_teepee:
            build_teepee(r, g);
            break;
        case Kind::carpet_polar:
            build_carpet_polar(r, g);
            break;
        case Kind::carpet_halfdisk:
            build_carpet_halfdisk(r, g);
            break;
        case Kind::ifs_condensation:
            build_ifs(r, g);
            break;
        case Kind::full_square:
            for (auto& b : r.bits()) b = 1;
            break;
        case Kind::segment:
            r.stamp_segment({0.0, 0.0}, {1.0, 0.0}, r.h() * 0.5);
            break;
        case Kind::circle:
            build_circle(r, spec.radius);
            break;
    }
    return r;
}

std::vector<CellSet> teeth_of_comb(const GeneratorSpec& spec) {
    if (spec.kind != Kind::cantor_comb)
        throw config_error("teeth_of_comb requires kind = cantor_comb");
    Window win = default_window(spec.kind);
    std::map<int32_t, CellSet> by_first_cell;
    for (double c : cantor_endpoints(spec.generation)) {
        Raster tooth(win, spec.level);
        tooth.stamp_segment({c, 0.0}, {c, 1.0}, tooth.h() * 0.5);
        CellSet cells = tooth.occupied();
        if (cells.empty()) continue;
        auto& slot = by_first_cell[cells.front()];
        if (slot.empty()) slot = std::move(cells);
    }
    std::vector<CellSet> out;
    out.reserve(by_first_cell.size());
    for (auto& [first, cells] : by_first_cell) out.push_back(std::move(cells));
    return out;
}

Raster raster_union(const Raster& a, const Raster& b) {
    if (!a.compatible(b)) throw domain_error("raster_union: incompatible rasters");
    Raster out = a;
    const auto& bb = b.bits();
    auto& ob = out.bits();
    for (size_t i = 0; i < ob.size(); ++i) ob[i] = ob[i] | bb[i];
    return out;
}

Raster unit_segment_on(const Window& win, int level) {
    Raster r(win, level);
    r.stamp_segment({0.0, 0.0}, {1.0, 0.0}, r.h() * 0.5);
    return r;
}

}  // namespace pk
