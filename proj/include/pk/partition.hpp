#pragma once

#include <functional>
#include <iosfwd>

#include "pk/relation.hpp"

namespace pk {

// Partition of the fine-generation occupancy into relation classes. Cells
// index into the domain raster; class_of is -1 off the compactum.
struct Partition {
    Raster domain;
    std::vector<int32_t> class_of;
    struct Class {
        CellSet cells;
        double diameter = 0.0;
        bool degenerate = true;
    };
    std::vector<Class> classes;

    size_t nondegenerate_count() const;
};

// Finest decomposition compatible with the sampled relation: start from
// singletons, union relation-positive sampled pairs, then repair so that
// (a) adjacent classes that both carry positive evidence merge and
// (b) every class is 8-connected (shortest-path closure absorbs whatever it
// crosses). Classes of diameter <= 4h are degenerate.
Partition decompose(const RelationEngine& engine, int stride);
Partition decompose(const RelationEngine& engine);  // stride 4 at level <= 8, else 8

// P6 image of the class map: white background, gray degenerate cells,
// nondegenerate classes colored by id.
void class_map_render(const Partition& p, std::ostream& os);
void class_map_render_file(const Partition& p, const std::string& path);

// Compare the nondegenerate classes of p, pushed through a plane
// correspondence, against the classes of q.
struct MatchReport {
    size_t total = 0;        // nondegenerate classes of p
    size_t matched = 0;      // those with a partner class within tolerance
    double fraction = 1.0;   // matched / total (1.0 when total == 0)
    double worst = 0.0;      // largest best-match Hausdorff distance
};

MatchReport match_partitions(const Partition& p, const Partition& q,
                             const std::function<Point(Point)>& correspondence,
                             double tolerance);

}  // namespace pk
