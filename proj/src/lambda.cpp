#include "pk/lambda.hpp"

#include <algorithm>

namespace pk {

namespace {

void recurse(const Raster& g, const Raster& g1, const RelationSchedule& sched,
             int cap, int stride, int depth, LambdaField& out) {
    RelationEngine engine(g, g1, sched);
    Partition p = stride > 0 ? decompose(engine, stride) : decompose(engine);
    for (const auto& cl : p.classes) {
        if (cl.degenerate) {
            for (int32_t idx : cl.cells) out.lambda_of[idx] = depth;
            out.max_lambda = std::max(out.max_lambda, depth);
            continue;
        }
        if (depth == cap) {
            for (int32_t idx : cl.cells) out.lambda_of[idx] = LambdaField::kSaturated;
            out.saturated = true;
            continue;
        }
        Raster rg = g, rg1 = g1;
        // Close the class under 1-cell dilation before restricting: sampled
        // classes are porous (unsampled cells stay dust), and the pinholes
        // would otherwise disconnect the restricted rasters.
        CellSet closed = dilate(cl.cells, g1.n(), 1);
        std::vector<uint8_t> mask(g1.bits().size(), 0);
        for (int32_t idx : closed) mask[idx] = 1;
        for (size_t i = 0; i < mask.size(); ++i) {
            if (!mask[i]) {
                rg.bits()[i] = 0;
                rg1.bits()[i] = 0;
            }
        }
        recurse(rg, rg1, sched, cap, stride, depth + 1, out);
    }
}

}  // namespace

LambdaField lambda_field(const Raster& gen_g, const Raster& gen_g1,
                         RelationSchedule sched, int cap, int stride) {
    if (cap < 0) throw domain_error("lambda_field: cap must be nonnegative");
    LambdaField out;
    out.domain = gen_g1;
    out.cap = cap;
    out.lambda_of.assign(gen_g1.bits().size(), LambdaField::kUnset);
    recurse(gen_g, gen_g1, sched, cap, stride, 0, out);
    return out;
}

int lambda_of_continuum(const Raster& gen_g, const Raster& gen_g1,
                        RelationSchedule sched, int cap, int stride) {
    return lambda_field(gen_g, gen_g1, sched, cap, stride).max_lambda;
}

}  // namespace pk
