#include "pk/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>

namespace pk {

size_t Partition::nondegenerate_count() const {
    size_t c = 0;
    for (const Class& cl : classes)
        if (!cl.degenerate) ++c;
    return c;
}

namespace {

// Nearest occupied cell center within `radius` of a target point, found by
// expanding square rings. Sampling aims partners at fixed offsets; features
// that run obliquely to the offset grid (teepee rays, circles) would never
// receive partners under exact-hit snapping, so the tolerance scales with
// the offset instead of the cell size.
std::optional<Point> snap_near(const Raster& K, const Point& target, double radius) {
    int n = K.n();
    double h = K.h();
    const Window& w = K.window();
    int ci = int(std::floor((target.x - w.x0) / h));
    int cj = int(std::floor((target.y - w.y0) / h));
    int rings = int(std::ceil(radius / h)) + 1;
    double best = radius;
    std::optional<Point> out;
    for (int ring = 0; ring <= rings; ++ring) {
        if (out && double(ring - 1) * h > best) break;  // no closer hit possible
        for (int dj = -ring; dj <= ring; ++dj)
            for (int di = -ring; di <= ring; ++di) {
                if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
                int i = ci + di, j = cj + dj;
                if (i < 0 || j < 0 || i >= n || j >= n) continue;
                int32_t idx = int32_t(j) * n + i;
                if (!K.get_idx(idx)) continue;
                Point c = K.cell_center(idx);
                double d = dist(c, target);
                if (d <= best) {
                    best = d;
                    out = c;
                }
            }
    }
    return out;
}

struct UnionFind {
    std::vector<int32_t> parent;
    std::vector<uint8_t> positive;  // class carries relation-positive evidence

    explicit UnionFind(size_t n) : parent(n), positive(n, 0) {
        for (size_t i = 0; i < n; ++i) parent[i] = int32_t(i);
    }
    int32_t find(int32_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    bool unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        positive[a] = positive[a] || positive[b];
        return true;
    }
};

}  // namespace

Partition decompose(const RelationEngine& engine, int stride) {
    const Raster& K = engine.fine();
    int n = K.n();
    double h = K.h();
    double side = K.window().side;
    UnionFind uf(K.bits().size());

    // Sampled relation pass: each sample point is probed against axis-aligned
    // partners at dyadic offsets; positive verdicts glue their cells.
    std::set<std::pair<int32_t, int32_t>> seen;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            // Row-or-column sampling: every row and every column of the grid
            // carries samples, so thin axis-aligned features are never starved
            // and cross-feature pairs do not depend on index residues.
            bool on_grid = i % stride == 0 && j % stride == 0;
            if (i % stride != 0 && j % stride != 0) continue;
            int32_t s_idx = int32_t(j) * n + i;
            if (!K.get_idx(s_idx)) continue;
            // Interior of a solid patch: accumulation is two-dimensional there
            // and every nearby sample sees the same picture, so the coarse
            // grid alone carries the load. Dense sampling is for filaments.
            if (!on_grid && i >= 2 && j >= 2 && i + 2 < n && j + 2 < n) {
                bool solid = true;
                for (int dj = -2; dj <= 2 && solid; ++dj)
                    for (int di = -2; di <= 2; ++di)
                        if (!K.get(i + di, j + dj)) {
                            solid = false;
                            break;
                        }
                if (solid) continue;
            }
            Point s = K.cell_center(s_idx);
            for (int m = 1; m <= 6; ++m) {
                double delta = side / double(1 << m);
                // Cap the pair separation at half a catalogue unit: larger
                // separations schedule only coarse radii, where the two-disk
                // counts carry no refinement signal; long-range gluing is the
                // job of the union-find transitivity, not of single pairs.
                if (delta > 0.5001) continue;
                if (delta < 4 * h) break;
                double dg = delta * 0.7071067811865476;
                const Point offs[8] = {{delta, 0}, {-delta, 0}, {0, delta}, {0, -delta},
                                       {dg, dg},  {-dg, dg},   {dg, -dg},  {-dg, -dg}};
                for (const Point& o : offs) {
                    Point y{s.x + o.x, s.y + o.y};
                    if (!K.window().contains(y)) continue;
                    // Snap tolerance 2h: enough to land on features oblique
                    // to the offset grid (every transversal pair of straight
                    // strands has a height band where some probe hits within
                    // a cell), while far-off snaps would manufacture pairs
                    // whose count profiles are indistinguishable from real
                    // accumulation at this generation depth.
                    std::optional<Point> snapped =
                        snap_near(K, y, std::min(delta / 4, 2 * h));
                    if (!snapped) continue;
                    int32_t y_idx = K.cell_of(*snapped);
                    if (y_idx == s_idx) continue;
                    auto key = std::minmax(s_idx, y_idx);
                    if (!seen.insert({key.first, key.second}).second) continue;
                    RelationVerdict v;
                    try {
                        v = engine.related(s, *snapped);
                    } catch (const domain_error&) {
                        continue;
                    }
                    if (v.related) {
                        uf.unite(s_idx, y_idx);
                        uf.positive[uf.find(s_idx)] = 1;
                    }
                }
            }
        }

    // Repair to a decomposition: merge adjacent evidence-bearing classes and
    // force 8-connectivity of every class, absorbing crossed classes.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                int32_t idx = int32_t(j) * n + i;
                if (!K.get_idx(idx)) continue;
                const int dn[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
                for (auto& d : dn) {
                    int ii = i + d[0], jj = j + d[1];
                    if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                    int32_t nb = int32_t(jj) * n + ii;
                    if (!K.get_idx(nb)) continue;
                    int32_t ra = uf.find(idx), rb = uf.find(nb);
                    if (ra != rb && uf.positive[ra] && uf.positive[rb]) {
                        uf.unite(ra, rb);
                        changed = true;
                    }
                }
            }
        std::map<int32_t, CellSet> groups;
        for (int32_t idx : K.occupied()) groups[uf.find(idx)].push_back(idx);
        for (auto& [root, cells] : groups) {
            if (cells.size() <= 1) continue;
            std::vector<uint8_t> mask(K.bits().size(), 0);
            for (int32_t idx : cells) mask[idx] = 1;
            LabelField f = label_components(mask, n);
            if (f.count <= 1) continue;
            CellSet closed = connect_within(K, cells);
            for (int32_t idx : closed)
                if (uf.find(idx) != root) {
                    uf.unite(root, idx);
                    changed = true;
                }
        }
    }

    Partition p;
    p.domain = K;
    p.class_of.assign(K.bits().size(), -1);
    std::map<int32_t, int32_t> id_of;
    for (int32_t idx : K.occupied()) {
        int32_t root = uf.find(idx);
        auto [it, fresh] = id_of.insert({root, int32_t(p.classes.size())});
        if (fresh) p.classes.emplace_back();
        p.class_of[idx] = it->second;
        p.classes[it->second].cells.push_back(idx);
    }
    for (auto& cl : p.classes) {
        cl.diameter = cellset_diameter(K, cl.cells);
        cl.degenerate = cl.diameter <= 4 * h;
    }
    return p;
}

Partition decompose(const RelationEngine& engine) {
    return decompose(engine, engine.fine().level() <= 8 ? 4 : 8);
}

void class_map_render(const Partition& p, std::ostream& os) {
    int n = p.domain.n();
    os << "P6\n" << n << " " << n << "\n255\n";
    std::string row(size_t(n) * 3, '\0');
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < n; ++i) {
            int32_t c = p.class_of[size_t(j) * n + i];
            uint8_t r = 255, g = 255, b = 255;
            if (c >= 0) {
                if (p.classes[c].degenerate) {
                    r = g = b = 112;
                } else {
                    uint32_t x = uint32_t(c) * 2654435761u;
                    r = uint8_t(64 + (x & 0x7f));
                    g = uint8_t(64 + ((x >> 8) & 0x7f));
                    b = uint8_t(64 + ((x >> 16) & 0x7f));
                }
            }
            row[size_t(i) * 3] = char(r);
            row[size_t(i) * 3 + 1] = char(g);
            row[size_t(i) * 3 + 2] = char(b);
        }
        os.write(row.data(), row.size());
    }
}

void class_map_render_file(const Partition& p, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw domain_error("class_map_render: cannot open " + path);
    class_map_render(p, os);
}

MatchReport match_partitions(const Partition& p, const Partition& q,
                             const std::function<Point(Point)>& correspondence,
                             double tolerance) {
    MatchReport rep;
    for (const auto& cl : p.classes) {
        if (cl.degenerate) continue;
        ++rep.total;
        CellSet image;
        for (int32_t idx : cl.cells) {
            Point y = correspondence(p.domain.cell_center(idx));
            if (!q.domain.window().contains(y)) continue;
            image.push_back(q.domain.cell_of(y));
        }
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (image.empty()) {
            rep.worst = std::numeric_limits<double>::infinity();
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& qc : q.classes) {
            if (qc.degenerate) continue;
            best = std::min(best, hausdorff_distance(q.domain, image, qc.cells));
        }
        if (best <= tolerance) ++rep.matched;
        rep.worst = std::max(rep.worst, best);
    }
    rep.fraction = rep.total == 0 ? 1.0 : double(rep.matched) / double(rep.total);
    return rep;
}

}  // namespace pk
