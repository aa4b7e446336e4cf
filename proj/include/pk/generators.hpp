#pragma once

#include <string>
#include <vector>

#include "pk/raster.hpp"

namespace pk {

enum class Kind {
    cantor_set,
    cantor_comb,
    witch_broom,
    comb_tower,
    cantor_circles,
    cantor_teepee,
    carpet_polar,
    carpet_halfdisk,
    ifs_condensation,
    full_square,
    segment,
    circle,
};

struct GeneratorSpec {
    Kind kind = Kind::full_square;
    unsigned generation = 2;  // self-similarity depth g
    int level = 8;            // raster level
    unsigned tower_k = 2;     // comb_tower(k) only
    double radius = 0.5;      // circle(r) only
};

Kind kind_from_string(const std::string& name);
std::string kind_to_string(Kind k);

// Default window hosting each catalogue set.
Window default_window(Kind k);

Raster generate(const GeneratorSpec& spec);

// Ternary Cantor construction at depth g: closed intervals and their endpoints.
std::vector<std::pair<double, double>> cantor_intervals(unsigned g);
std::vector<double> cantor_endpoints(unsigned g);

// Ground-truth tooth extraction: one cell set per retained endpoint column
// (endpoints falling into the same column at the raster level are merged).
std::vector<CellSet> teeth_of_comb(const GeneratorSpec& spec);

// Union of two rasters over identical windows/levels.
Raster raster_union(const Raster& a, const Raster& b);

// Straight [0,1] segment on a given window/level (building block for the
// cantor_circles ∪ [0,1] composite).
Raster unit_segment_on(const Window& win, int level);

}  // namespace pk
