#pragma once

#include "pk/label.hpp"

namespace pk {

// Cells where the compactum fails to admit, locally, a fat continuum avoiding
// the base point. Always contains the base cell.
struct TFiberMask {
    Point x;
    CellSet cells;
    int level = 0;
};

// A cell y is excluded when, for some scheduled disk radius around x, y falls
// outside the disk and its component of K minus the disk has no cell of a
// different component within `foreign_reach` of y — i.e. y sits inside a fat
// piece that avoids x. The fiber is everything never excluded.
TFiberMask t_fiber(const Raster& K, Point x, const std::vector<double>& epsilons,
                   double foreign_reach);
TFiberMask t_fiber(const Raster& K, Point x);  // eps {2,8,16,32}h, reach 32h

// Semi-local connectedness probe: component counts of K minus the disk agree
// across the two generations for every scheduled radius.
bool slc_probe(const Raster& gen_g, const Raster& gen_g1, Point x,
               const std::vector<double>& epsilons = {});

}  // namespace pk
