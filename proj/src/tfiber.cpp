#include "pk/tfiber.hpp"

#include "pk/relation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pk {

namespace {

// Distance (in plane units) from each occupied cell to the nearest cell of a
// *different* component, capped implicitly by use sites.
std::vector<double> foreign_distance(const std::vector<uint8_t>& bits, int n,
                                     const LabelField& f, double h) {
    std::vector<double> out(bits.size(), std::numeric_limits<double>::infinity());
    if (f.count <= 1) return out;
    if (f.count <= 64) {
        for (int32_t id = 0; id < f.count; ++id) {
            CellSet others;
            for (int32_t o = 0; o < f.count; ++o)
                if (o != id)
                    others.insert(others.end(), f.cells[o].begin(), f.cells[o].end());
            auto d2 = squared_edt(others, n);
            for (int32_t idx : f.cells[id]) out[idx] = std::sqrt(d2[idx]) * h;
        }
        return out;
    }
    // Many tiny components: bounded neighborhood scan.
    int reach = 34;
    for (int32_t idx = 0; idx < int32_t(bits.size()); ++idx) {
        if (!bits[idx]) continue;
        int i = idx % n, j = idx / n;
        int32_t me = f.labels[idx];
        double best2 = std::numeric_limits<double>::infinity();
        for (int dj = -reach; dj <= reach; ++dj)
            for (int di = -reach; di <= reach; ++di) {
                int ii = i + di, jj = j + dj;
                if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                int32_t l = f.labels[size_t(jj) * n + ii];
                if (l < 0 || l == me) continue;
                best2 = std::min(best2, double(di) * di + double(dj) * dj);
            }
        out[idx] = std::sqrt(best2) * h;
    }
    return out;
}

}  // namespace

TFiberMask t_fiber(const Raster& K, Point x, const std::vector<double>& epsilons,
                   double foreign_reach) {
    TFiberMask mask;
    mask.level = K.level();
    mask.x = snap_to_occupied(K, x);
    if (epsilons.empty()) throw domain_error("t_fiber: empty radius schedule");
    double h = K.h();
    int n = K.n();
    std::vector<uint8_t> excluded(K.bits().size(), 0);
    for (double eps : epsilons) {
        if (eps < 2 * h) throw domain_error("t_fiber: radius below 2h resolution");
        DiskMask m = subtract_disks(K, {{mask.x, eps}});
        LabelField f = label_components(m.bits, n);
        auto dist_foreign = foreign_distance(m.bits, n, f, h);
        for (int32_t idx = 0; idx < int32_t(m.bits.size()); ++idx)
            if (m.bits[idx] && dist_foreign[idx] > foreign_reach) excluded[idx] = 1;
    }
    for (int32_t idx : K.occupied())
        if (!excluded[idx]) mask.cells.push_back(idx);
    return mask;
}

TFiberMask t_fiber(const Raster& K, Point x) {
    double h = K.h();
    return t_fiber(K, x, {2 * h, 8 * h, 16 * h, 32 * h}, 32 * h);
}

bool slc_probe(const Raster& gen_g, const Raster& gen_g1, Point x,
               const std::vector<double>& epsilons) {
    if (!gen_g.compatible(gen_g1))
        throw domain_error("slc_probe: incompatible generation rasters");
    double h = gen_g1.h();
    std::vector<double> eps = epsilons;
    if (eps.empty()) eps = {8 * h, 16 * h, 32 * h};
    Point xs = snap_to_occupied(gen_g1, x);
    for (double e : eps) {
        if (e < 2 * h) throw domain_error("slc_probe: radius below 2h resolution");
        DiskMask mg = subtract_disks(gen_g, {{xs, e}});
        DiskMask mg1 = subtract_disks(gen_g1, {{xs, e}});
        if (label_components(mg.bits, gen_g.n()).count !=
            label_components(mg1.bits, gen_g1.n()).count)
            return false;
    }
    return true;
}

}  // namespace pk
