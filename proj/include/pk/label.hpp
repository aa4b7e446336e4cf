#pragma once

#include <cstdint>
#include <vector>

#include "pk/raster.hpp"

namespace pk {

// 8-connectivity labeling of an occupancy mask. Complement reasoning elsewhere
// uses 4-connectivity (discrete Jordan duality).
struct LabelField {
    std::vector<int32_t> labels;       // -1 for unoccupied cells
    int32_t count = 0;                 // number of components
    int n = 0;
    std::vector<CellSet> cells;        // per-component occupied cells
};

LabelField label_components(const std::vector<uint8_t>& bits, int n);
LabelField label_components(const Raster& raster);

// Per-component plane diameters.
std::vector<double> component_diameters(const Raster& geom, const LabelField& field);

// Components containing a cell inside, or 8-adjacent to, both a and b.
// Returned identifiers are ascending.
std::vector<int32_t> components_meeting(const LabelField& field, const CellSet& a,
                                        const CellSet& b);

// Number of components of raster ∩ closed strip that meet both boundary lines
// (cells whose centers are within h of a line count as meeting it).
unsigned strip_crossing_count(const Raster& raster, const Strip& strip);

struct PeanoReport {
    bool is_peano_at_scale = false;
    struct StripLine {
        Strip strip;
        unsigned count_g = 0;
        unsigned count_g1 = 0;
    };
    struct DiameterLine {
        double threshold = 0.0;
        unsigned count_g = 0;
        unsigned count_g1 = 0;
    };
    std::vector<StripLine> crossing_counts;
    std::vector<DiameterLine> nondegenerate_counts;
};

// Default schedules relative to a window: three strip positions per axis
// (one wide, two narrow ones inside dyadic subintervals) and diameter
// thresholds side/{4,8,16}.
std::vector<Strip> default_strip_schedule(const Window& win);
std::vector<double> default_diameter_schedule(const Window& win);

PeanoReport peano_check(const Raster& gen_g, const Raster& gen_g1,
                        const std::vector<Strip>& strips,
                        const std::vector<double>& diameter_thresholds);
PeanoReport peano_check(const Raster& gen_g, const Raster& gen_g1);

}  // namespace pk
