#include "pk/label.hpp"

#include <algorithm>
#include <cmath>

namespace pk {

LabelField label_components(const std::vector<uint8_t>& bits, int n) {
    LabelField f;
    f.n = n;
    f.labels.assign(bits.size(), -1);
    std::vector<int32_t> stack;
    for (int32_t seed = 0; seed < int32_t(bits.size()); ++seed) {
        if (!bits[seed] || f.labels[seed] >= 0) continue;
        int32_t id = f.count++;
        f.cells.emplace_back();
        stack.push_back(seed);
        f.labels[seed] = id;
        while (!stack.empty()) {
            int32_t idx = stack.back();
            stack.pop_back();
            f.cells[id].push_back(idx);
            int i = idx % n, j = idx / n;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                    int32_t nb = int32_t(jj) * n + ii;
                    if (bits[nb] && f.labels[nb] < 0) {
                        f.labels[nb] = id;
                        stack.push_back(nb);
                    }
                }
        }
        std::sort(f.cells[id].begin(), f.cells[id].end());
    }
    return f;
}

LabelField label_components(const Raster& raster) {
    return label_components(raster.bits(), raster.n());
}

std::vector<double> component_diameters(const Raster& geom, const LabelField& field) {
    std::vector<double> out;
    out.reserve(field.count);
    for (const CellSet& cs : field.cells) out.push_back(cellset_diameter(geom, cs));
    return out;
}

namespace {

std::vector<int32_t> labels_touching(const LabelField& field, const CellSet& set) {
    std::vector<int32_t> out;
    int n = field.n;
    for (int32_t idx : set) {
        int i = idx % n, j = idx / n;
        for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di) {
                int ii = i + di, jj = j + dj;
                if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                int32_t l = field.labels[size_t(jj) * n + ii];
                if (l >= 0) out.push_back(l);
            }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<int32_t> components_meeting(const LabelField& field, const CellSet& a,
                                        const CellSet& b) {
    auto la = labels_touching(field, a);
    auto lb = labels_touching(field, b);
    std::vector<int32_t> out;
    std::set_intersection(la.begin(), la.end(), lb.begin(), lb.end(),
                          std::back_inserter(out));
    return out;
}

unsigned strip_crossing_count(const Raster& raster, const Strip& strip) {
    const Window& w = raster.window();
    double h = raster.h();
    double wlo = strip.axis == Axis::horizontal ? w.y0 : w.x0;
    double whi = wlo + w.side;
    if (strip.lo < wlo + 2 * h || strip.hi > whi - 2 * h)
        throw domain_error("strip outside window (needs 2h margin)");
    int n = raster.n();
    std::vector<uint8_t> inside(raster.bits().size(), 0);
    CellSet lo_line, hi_line;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int32_t idx = int32_t(j) * n + i;
            if (!raster.get_idx(idx)) continue;
            Point c = raster.cell_center(idx);
            double v = strip.axis == Axis::horizontal ? c.y : c.x;
            if (v >= strip.lo - h && v <= strip.hi + h) {
                inside[idx] = 1;
                if (std::abs(v - strip.lo) <= h) lo_line.push_back(idx);
                if (std::abs(v - strip.hi) <= h) hi_line.push_back(idx);
            }
        }
    LabelField f = label_components(inside, n);
    return unsigned(components_meeting(f, lo_line, hi_line).size());
}

std::vector<Strip> default_strip_schedule(const Window& win) {
    std::vector<Strip> strips;
    const double rel[][2] = {{0.25, 0.75}, {0.3125, 0.4375}, {0.15625, 0.21875}};
    for (auto axis : {Axis::horizontal, Axis::vertical}) {
        double o = axis == Axis::horizontal ? win.y0 : win.x0;
        for (auto& r : rel)
            strips.push_back({axis, o + r[0] * win.side, o + r[1] * win.side});
    }
    return strips;
}

std::vector<double> default_diameter_schedule(const Window& win) {
    return {win.side / 4.0, win.side / 8.0, win.side / 16.0};
}

PeanoReport peano_check(const Raster& gen_g, const Raster& gen_g1,
                        const std::vector<Strip>& strips,
                        const std::vector<double>& diameter_thresholds) {
    if (!gen_g.compatible(gen_g1))
        throw domain_error("peano_check: incompatible generation rasters");
    PeanoReport rep;
    rep.is_peano_at_scale = true;
    for (const Strip& s : strips) {
        PeanoReport::StripLine line;
        line.strip = s;
        line.count_g = strip_crossing_count(gen_g, s);
        line.count_g1 = strip_crossing_count(gen_g1, s);
        if (line.count_g != line.count_g1) rep.is_peano_at_scale = false;
        rep.crossing_counts.push_back(line);
    }
    LabelField fg = label_components(gen_g);
    LabelField fg1 = label_components(gen_g1);
    auto dg = component_diameters(gen_g, fg);
    auto dg1 = component_diameters(gen_g1, fg1);
    for (double c : diameter_thresholds) {
        PeanoReport::DiameterLine line;
        line.threshold = c;
        line.count_g = unsigned(std::count_if(dg.begin(), dg.end(),
                                              [&](double d) { return d > c; }));
        line.count_g1 = unsigned(std::count_if(dg1.begin(), dg1.end(),
                                               [&](double d) { return d > c; }));
        if (line.count_g != line.count_g1) rep.is_peano_at_scale = false;
        rep.nondegenerate_counts.push_back(line);
    }
    return rep;
}

PeanoReport peano_check(const Raster& gen_g, const Raster& gen_g1) {
    return peano_check(gen_g, gen_g1, default_strip_schedule(gen_g.window()),
                       default_diameter_schedule(gen_g.window()));
}

}  // namespace pk
