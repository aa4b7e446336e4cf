#pragma once

#include <optional>
#include <vector>

#include "pk/label.hpp"
#include "pk/raster.hpp"

namespace pk {

// Radius schedule and thresholds for the two-disk test. Radii descend in
// half-octaves from ρ(x,y)/4: r_t = ρ/(4·2^{(t-1)/2}), t = 1..2J-1.
// "Infinitely many" is operationalized as strict growth across one generation
// step, with floor θ, at two or more scheduled radii, and no radius where the
// fine generation loses cross components. Radii at or below 4h are dropped
// (rim discretization noise), so pairs closer than ~23h can never relate.
struct RelationSchedule {
    unsigned J = 3;
    unsigned theta = 2;
};

struct RelationVerdict {
    Point x, y;
    bool related = false;
    bool schedule_empty = false;        // every radius fell below the 2h floor
    std::vector<double> radii;
    std::vector<unsigned> counts_g;     // per radius, coarse generation
    std::vector<unsigned> counts_g1;    // per radius, fine generation
    unsigned theta = 0;
};

struct FiberMask {
    Point x;
    CellSet cells;
    int level = 0;
};

// Snap a plane point to the nearest occupied cell center; domain error if the
// point is farther than one cell side from every occupied cell.
Point snap_to_occupied(const Raster& raster, const Point& p);

// Number of components of raster minus the two r-disks that meet both rims.
// Validates 2h < r < ρ(x,y)/2 and snaps the points.
unsigned two_disk_count(const Raster& raster, Point x, Point y, double r);

// Reusable scratch for many counts against a fixed raster pair.
class RelationEngine {
public:
    RelationEngine(const Raster& gen_g, const Raster& gen_g1,
                   RelationSchedule sched = {});

    const Raster& fine() const { return *g1_; }
    const RelationSchedule& schedule() const { return sched_; }

    // Raw count on one generation, no snapping (callers pre-snap).
    unsigned count(bool fine_generation, const Point& x, const Point& y, double r) const;

    RelationVerdict related(const Point& x, const Point& y) const;

    // Fiber of the closed relation at x: relation-positive sampled partners,
    // connected along shortest occupied paths, dilated by one cell into K.
    FiberMask s_fiber(const Point& x, int stride) const;
    FiberMask s_fiber(const Point& x) const;  // stride 2 at level ≤ 8, else 4

private:
    const Raster* g_;
    const Raster* g1_;
    RelationSchedule sched_;
};

// Shortest-occupied-path closure: BFS inside K between the pieces of `cells`,
// absorbing the connecting paths, until the 1-cell dilation is 8-connected.
CellSet connect_within(const Raster& K, CellSet cells);

}  // namespace pk
