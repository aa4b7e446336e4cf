#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pk/geom.hpp"

namespace pk {

// Sorted list of cell indices (idx = row * n + col) into a 2^level grid.
using CellSet = std::vector<int32_t>;

// Dyadic bit-grid over a square window: cell (i,j) covers the half-open square
// of side h = window.side / 2^level at offset (i*h, j*h). Membership of a
// plane point is decided by the cell containing it.
class Raster {
public:
    Raster() = default;
    Raster(Window win, int level)
        : win_(win), level_(level), n_(1 << level), bits_(size_t(n_) * n_, 0) {}

    const Window& window() const { return win_; }
    int level() const { return level_; }
    int n() const { return n_; }
    double h() const { return win_.side / n_; }

    bool get(int i, int j) const { return bits_[size_t(j) * n_ + i] != 0; }
    void set(int i, int j, bool v = true) { bits_[size_t(j) * n_ + i] = v ? 1 : 0; }
    bool get_idx(int32_t idx) const { return bits_[size_t(idx)] != 0; }
    void set_idx(int32_t idx, bool v = true) { bits_[size_t(idx)] = v ? 1 : 0; }

    const std::vector<uint8_t>& bits() const { return bits_; }
    std::vector<uint8_t>& bits() { return bits_; }

    Point cell_center(int32_t idx) const {
        int i = idx % n_, j = idx / n_;
        double hh = h();
        return {win_.x0 + (i + 0.5) * hh, win_.y0 + (j + 0.5) * hh};
    }
    // Cell index of a plane point; throws if outside the window.
    int32_t cell_of(const Point& p) const;
    // true iff the cell containing p is occupied.
    bool member(const Point& p) const { return get_idx(cell_of(p)); }

    // Mark every cell whose center lies within tol of point p (clipped to window).
    void stamp_point(const Point& p, double tol);
    // Mark cells along the segment a-b (one-cell-thick trace, tolerance tol).
    void stamp_segment(const Point& a, const Point& b, double tol);

    CellSet occupied() const;
    size_t occupied_count() const;

    bool compatible(const Raster& o) const {
        return win_ == o.win_ && level_ == o.level_;
    }

private:
    Window win_{};
    int level_ = 0;
    int n_ = 1;
    std::vector<uint8_t> bits_;
};

// Result of removing disks from a raster: the surviving occupancy plus, per
// disk, its rim cells (occupied survivors whose center is within one cell
// diagonal of the circle).
struct DiskMask {
    std::vector<uint8_t> bits;   // same layout as the source raster
    int n = 0;
    double h = 0.0;
    std::vector<CellSet> rims;   // one entry per input disk
};

DiskMask subtract_disks(const Raster& raster, const std::vector<Disk>& disks);

// Exact symmetric Hausdorff distance between two cell-center sets on the same
// grid geometry. Throws domain_error on empty input.
double hausdorff_distance(const Raster& geom, const CellSet& a, const CellSet& b);

// Directed helpers used by matching reports.
double directed_hausdorff(const Raster& geom, const CellSet& a, const CellSet& b);

// Exact squared Euclidean distance transform (in cell units) from a seed set
// over an n×n grid.
std::vector<double> squared_edt(const CellSet& seeds, int n);

// 8-neighborhood dilation of a cell set by `cells` rings, clipped to the grid.
CellSet dilate(const CellSet& cells, int n, int rings = 1);

// Intersection of a sorted cell set with the occupied cells of a raster.
CellSet intersect_with(const CellSet& cells, const Raster& raster);

// Exact max pairwise cell-center distance (brute force below 4096 cells,
// convex hull + rotating calipers above).
double cellset_diameter(const Raster& geom, const CellSet& cells);

// PKRASTER v1 text serialization.
void write_pkraster(std::ostream& os, const Raster& raster);
Raster read_pkraster(std::istream& is);
void save_pkraster(const std::string& path, const Raster& raster);
Raster load_pkraster(const std::string& path);

}  // namespace pk
