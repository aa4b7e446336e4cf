#pragma once

#include "pk/partition.hpp"

namespace pk {

// Per-cell nesting depth of nondegenerate relation classes: a cell whose class
// becomes degenerate immediately has depth 0; cells inside a nondegenerate
// class are re-decomposed with both generations restricted to that class, and
// so on. Recursion is capped; cells still nondegenerate at the cap are marked
// saturated (written as -1 in CSV output).
struct LambdaField {
    static constexpr int kUnset = -2;
    static constexpr int kSaturated = -1;

    Raster domain;
    std::vector<int> lambda_of;  // per cell: depth, kSaturated, or kUnset off K
    int cap = 4;
    int max_lambda = 0;
    bool saturated = false;
};

LambdaField lambda_field(const Raster& gen_g, const Raster& gen_g1,
                         RelationSchedule sched = {}, int cap = 4, int stride = 0);

// Largest finite depth over the whole compactum.
int lambda_of_continuum(const Raster& gen_g, const Raster& gen_g1,
                        RelationSchedule sched = {}, int cap = 4, int stride = 0);

}  // namespace pk
