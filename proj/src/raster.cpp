#include "pk/raster.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace pk {

int32_t Raster::cell_of(const Point& p) const {
    double hh = h();
    double fx = (p.x - win_.x0) / hh;
    double fy = (p.y - win_.y0) / hh;
    int i = int(std::floor(fx));
    int j = int(std::floor(fy));
    // Points on the closing edges of the window belong to the last cell.
    if (i == n_ && p.x <= win_.x0 + win_.side) i = n_ - 1;
    if (j == n_ && p.y <= win_.y0 + win_.side) j = n_ - 1;
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw domain_error("point outside raster window");
    return int32_t(j) * n_ + i;
}

void Raster::stamp_point(const Point& p, double tol) {
    double hh = h();
    int i0 = std::max(0, int(std::floor((p.x - tol - win_.x0) / hh)));
    int i1 = std::min(n_ - 1, int(std::floor((p.x + tol - win_.x0) / hh)));
    int j0 = std::max(0, int(std::floor((p.y - tol - win_.y0) / hh)));
    int j1 = std::min(n_ - 1, int(std::floor((p.y + tol - win_.y0) / hh)));
    for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) {
            double cx = win_.x0 + (i + 0.5) * hh, cy = win_.y0 + (j + 0.5) * hh;
            if (std::hypot(cx - p.x, cy - p.y) <= tol) set(i, j);
        }
    // Always mark the containing cell: for tol < h/√2 the center test alone
    // can miss every cell, which punches pinholes into traced curves.
    int ci = int(std::floor((p.x - win_.x0) / hh));
    int cj = int(std::floor((p.y - win_.y0) / hh));
    if (ci >= 0 && cj >= 0 && ci < n_ && cj < n_) set(ci, cj);
}

void Raster::stamp_segment(const Point& a, const Point& b, double tol) {
    double len = dist(a, b);
    double hh = h();
    int steps = std::max(1, int(std::ceil(len / (hh * 0.5))));
    for (int s = 0; s <= steps; ++s) {
        double t = double(s) / steps;
        stamp_point({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}, tol);
    }
}

CellSet Raster::occupied() const {
    CellSet out;
    out.reserve(1024);
    for (int32_t idx = 0; idx < int32_t(bits_.size()); ++idx)
        if (bits_[idx]) out.push_back(idx);
    return out;
}

size_t Raster::occupied_count() const {
    size_t c = 0;
    for (uint8_t b : bits_) c += b;
    return c;
}

DiskMask subtract_disks(const Raster& raster, const std::vector<Disk>& disks) {
    if (disks.empty()) throw domain_error("subtract_disks: no disks given");
    DiskMask m;
    m.n = raster.n();
    m.h = raster.h();
    m.bits = raster.bits();
    m.rims.resize(disks.size());
    const Window& w = raster.window();
    // Removal pass, remembering which cells each disk took out.
    std::vector<CellSet> removed(disks.size());
    for (size_t d = 0; d < disks.size(); ++d) {
        const Disk& dk = disks[d];
        double reach = dk.radius + m.h;
        int i0 = std::max(0, int(std::floor((dk.center.x - reach - w.x0) / m.h)));
        int i1 = std::min(m.n - 1, int(std::floor((dk.center.x + reach - w.x0) / m.h)));
        int j0 = std::max(0, int(std::floor((dk.center.y - reach - w.y0) / m.h)));
        int j1 = std::min(m.n - 1, int(std::floor((dk.center.y + reach - w.y0) / m.h)));
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) {
                int32_t idx = int32_t(j) * m.n + i;
                if (!raster.get_idx(idx)) continue;
                double cx = w.x0 + (i + 0.5) * m.h, cy = w.y0 + (j + 0.5) * m.h;
                double r = std::hypot(cx - dk.center.x, cy - dk.center.y);
                if (r < dk.radius) {
                    m.bits[idx] = 0;
                    removed[d].push_back(idx);
                }
            }
    }
    // Rim of a disk = surviving cells 8-adjacent to a cell it removed. A disk
    // that removed nothing has an empty rim (it sits in empty space).
    for (size_t d = 0; d < disks.size(); ++d) {
        std::vector<uint8_t> seen(m.bits.size(), 0);
        for (int32_t idx : removed[d]) {
            int i = idx % m.n, j = idx / m.n;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= m.n || jj >= m.n) continue;
                    int32_t nb = int32_t(jj) * m.n + ii;
                    if (m.bits[nb] && !seen[nb]) {
                        seen[nb] = 1;
                        m.rims[d].push_back(nb);
                    }
                }
        }
        std::sort(m.rims[d].begin(), m.rims[d].end());
    }
    return m;
}

namespace {

// Felzenszwalb-Huttenlocher exact squared Euclidean distance transform.
void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<int> v(n);
    std::vector<double> z(n + 1);
    int k = 0;
    v[0] = 0;
    z[0] = -kInf;
    z[1] = kInf;
    for (int q = 1; q < n; ++q) {
        if (f[q] == kInf) continue;
        if (f[v[0]] == kInf) {
            v[0] = q;
            continue;
        }
        double s;
        while (true) {
            int p = v[k];
            s = ((f[q] + q * double(q)) - (f[p] + p * double(p))) / (2.0 * (q - p));
            if (s > z[k]) break;
            if (--k < 0) { k = 0; v[0] = q; s = -kInf; break; }
        }
        if (v[k] != q) {
            ++k;
            v[k] = q;
            z[k] = s;
            z[k + 1] = kInf;
        }
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        int p = v[k];
        d[q] = (f[p] == kInf) ? kInf : (q - p) * double(q - p) + f[p];
    }
}

}  // namespace

std::vector<double> squared_edt(const CellSet& seeds, int n) {
    static constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> g(size_t(n) * n, kInf);
    for (int32_t idx : seeds) g[idx] = 0.0;
    std::vector<double> col(n), out(n);
    // columns
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) col[j] = g[size_t(j) * n + i];
        edt_1d(col, out, n);
        for (int j = 0; j < n; ++j) g[size_t(j) * n + i] = out[j];
    }
    // rows
    for (int j = 0; j < n; ++j) {
        std::vector<double> row(g.begin() + size_t(j) * n, g.begin() + size_t(j + 1) * n);
        edt_1d(row, out, n);
        for (int i = 0; i < n; ++i) g[size_t(j) * n + i] = out[i];
    }
    return g;
}

namespace {

double directed_bruteforce(const Raster& geom, const CellSet& a, const CellSet& b) {
    double worst = 0.0;
    for (int32_t ia : a) {
        Point pa = geom.cell_center(ia);
        double best = std::numeric_limits<double>::infinity();
        for (int32_t ib : b) {
            Point pb = geom.cell_center(ib);
            best = std::min(best, dist(pa, pb));
            if (best == 0.0) break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

double directed_edt(const Raster& geom, const CellSet& a, const CellSet& b) {
    int n = geom.n();
    auto d2 = squared_edt(b, n);
    double worst2 = 0.0;
    for (int32_t ia : a) worst2 = std::max(worst2, d2[ia]);
    return std::sqrt(worst2) * geom.h();
}

}  // namespace

double directed_hausdorff(const Raster& geom, const CellSet& a, const CellSet& b) {
    if (a.empty() || b.empty()) throw domain_error("hausdorff on empty cell set");
    if (double(a.size()) * double(b.size()) <= 4e6)
        return directed_bruteforce(geom, a, b);
    return directed_edt(geom, a, b);
}

double hausdorff_distance(const Raster& geom, const CellSet& a, const CellSet& b) {
    return std::max(directed_hausdorff(geom, a, b), directed_hausdorff(geom, b, a));
}

CellSet dilate(const CellSet& cells, int n, int rings) {
    std::vector<uint8_t> mark(size_t(n) * n, 0);
    for (int32_t idx : cells) mark[idx] = 1;
    CellSet frontier = cells;
    for (int r = 0; r < rings; ++r) {
        CellSet next;
        for (int32_t idx : frontier) {
            int i = idx % n, j = idx / n;
            for (int dj = -1; dj <= 1; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
                    int32_t nb = int32_t(jj) * n + ii;
                    if (!mark[nb]) {
                        mark[nb] = 1;
                        next.push_back(nb);
                    }
                }
        }
        frontier = std::move(next);
    }
    CellSet out;
    out.reserve(cells.size() * 2);
    for (int32_t idx = 0; idx < int32_t(mark.size()); ++idx)
        if (mark[idx]) out.push_back(idx);
    return out;
}

CellSet intersect_with(const CellSet& cells, const Raster& raster) {
    CellSet out;
    out.reserve(cells.size());
    for (int32_t idx : cells)
        if (raster.get_idx(idx)) out.push_back(idx);
    return out;
}

double cellset_diameter(const Raster& geom, const CellSet& cells) {
    if (cells.empty()) return 0.0;
    std::vector<Point> pts;
    pts.reserve(cells.size());
    for (int32_t idx : cells) pts.push_back(geom.cell_center(idx));
    auto brute = [&](const std::vector<Point>& v) {
        double best = 0.0;
        for (size_t i = 0; i < v.size(); ++i)
            for (size_t j = i + 1; j < v.size(); ++j)
                best = std::max(best, dist(v[i], v[j]));
        return best;
    };
    if (pts.size() <= 4096) return brute(pts);
    // Monotone-chain convex hull, then rotating calipers.
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    auto cross = [](const Point& o, const Point& a, const Point& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Point> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k > 1 ? k - 1 : k);
    if (hull.size() <= 2) return brute(hull);
    size_t m = hull.size();
    double best = 0.0;
    size_t j = 1;
    for (size_t i = 0; i < m; ++i) {
        size_t ni = (i + 1) % m;
        while (std::abs(cross(hull[i], hull[ni], hull[(j + 1) % m])) >
               std::abs(cross(hull[i], hull[ni], hull[j])))
            j = (j + 1) % m;
        best = std::max(best, std::max(dist(hull[i], hull[j]), dist(hull[ni], hull[j])));
    }
    return best;
}

void write_pkraster(std::ostream& os, const Raster& raster) {
    os << "PKRASTER v1 level=" << raster.level() << " x0=" << raster.window().x0
       << " y0=" << raster.window().y0 << " side=" << raster.window().side << "\n";
    int n = raster.n();
    for (int j = 0; j < n; ++j) {
        int i = 0;
        bool first = true;
        while (i < n) {
            bool v = raster.get(i, j);
            int run = 1;
            while (i + run < n && raster.get(i + run, j) == v) ++run;
            if (!first) os << ",";
            os << run << (v ? "1" : "0");
            first = false;
            i += run;
        }
        os << "\n";
    }
}

Raster read_pkraster(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw domain_error("PKRASTER: empty stream");
    int level = -1;
    Window win{};
    {
        std::istringstream hs(header);
        std::string magic, ver, kv;
        hs >> magic >> ver;
        if (magic != "PKRASTER" || ver != "v1")
            throw domain_error("PKRASTER: bad header '" + header + "'");
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) throw domain_error("PKRASTER: bad field " + kv);
            std::string key = kv.substr(0, eq);
            double val = std::stod(kv.substr(eq + 1));
            if (key == "level") level = int(val);
            else if (key == "x0") win.x0 = val;
            else if (key == "y0") win.y0 = val;
            else if (key == "side") win.side = val;
            else throw domain_error("PKRASTER: unknown field " + key);
        }
    }
    if (level < 2 || win.side <= 0) throw domain_error("PKRASTER: invalid header values");
    Raster r(win, level);
    int n = r.n();
    std::string line;
    for (int j = 0; j < n; ++j) {
        if (!std::getline(is, line)) throw domain_error("PKRASTER: truncated rows");
        int i = 0;
        size_t pos = 0;
        while (pos < line.size()) {
            size_t end = line.find(',', pos);
            std::string tok = line.substr(pos, end == std::string::npos ? std::string::npos
                                                                        : end - pos);
            pos = end == std::string::npos ? line.size() : end + 1;
            if (tok.empty()) continue;
            char bit = tok.back();
            int run = std::stoi(tok.substr(0, tok.size() - 1));
            if ((bit != '0' && bit != '1') || run <= 0 || i + run > n)
                throw domain_error("PKRASTER: bad run token " + tok);
            if (bit == '1')
                for (int s = 0; s < run; ++s) r.set(i + s, j);
            i += run;
        }
        if (i != n) throw domain_error("PKRASTER: row length mismatch");
    }
    return r;
}

void save_pkraster(const std::string& path, const Raster& raster) {
    std::ofstream os(path);
    if (!os) throw domain_error("cannot open for write: " + path);
    write_pkraster(os, raster);
}

Raster load_pkraster(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw domain_error("cannot open for read: " + path);
    return read_pkraster(is);
}

}  // namespace pk
