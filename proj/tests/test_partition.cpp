#include <set>
#include <sstream>

#include "doctest.h"
#include "pk/generators.hpp"
#include "pk/partition.hpp"

using namespace pk;

namespace {

Partition comb_partition(int level) {
    Raster g2 = generate(GeneratorSpec{Kind::cantor_comb, 2, level});
    Raster g3 = generate(GeneratorSpec{Kind::cantor_comb, 3, level});
    RelationEngine engine(g2, g3);
    return decompose(engine);
}

}  // namespace

TEST_CASE("classes partition the occupied cells exactly") {
    Partition p = comb_partition(8);
    std::set<int32_t> seen;
    size_t total = 0;
    for (const auto& cl : p.classes) {
        total += cl.cells.size();
        for (int32_t idx : cl.cells) {
            CHECK(seen.insert(idx).second);
            CHECK(p.domain.get_idx(idx));
        }
    }
    CHECK(total == p.domain.occupied_count());
    for (int32_t idx : p.domain.occupied()) {
        int32_t c = p.class_of[idx];
        REQUIRE(c >= 0);
        const CellSet& cells = p.classes[c].cells;
        CHECK(std::find(cells.begin(), cells.end(), idx) != cells.end());
    }
}

TEST_CASE("degenerate flag mirrors the diameter threshold") {
    Partition p = comb_partition(8);
    double h = p.domain.h();
    for (const auto& cl : p.classes)
        CHECK(cl.degenerate == (cl.diameter <= 4 * h));
}

TEST_CASE("comb decomposes into one class per tooth") {
    Partition p = comb_partition(9);
    CHECK(p.nondegenerate_count() == 16);
    auto teeth = teeth_of_comb(GeneratorSpec{Kind::cantor_comb, 3, 9});
    double h = p.domain.h();
    for (const auto& cl : p.classes) {
        if (cl.degenerate) continue;
        double best = 1e9;
        for (const auto& t : teeth)
            best = std::min(best, hausdorff_distance(p.domain, cl.cells, t));
        CHECK(best <= 4 * h);
    }
}

TEST_CASE("the square has only degenerate classes") {
    Raster g2 = generate(GeneratorSpec{Kind::full_square, 2, 7});
    Raster g3 = generate(GeneratorSpec{Kind::full_square, 3, 7});
    RelationEngine engine(g2, g3);
    Partition p = decompose(engine);
    CHECK(p.nondegenerate_count() == 0);
}

TEST_CASE("matching a partition against itself is perfect") {
    Partition p = comb_partition(8);
    MatchReport rep = match_partitions(p, p, [](Point q) { return q; }, 1e-9);
    CHECK(rep.fraction == 1.0);
    CHECK(rep.matched == rep.total);
    CHECK(rep.worst == 0.0);
}

TEST_CASE("class map renders a P6 image of the domain size") {
    Partition p = comb_partition(8);
    std::ostringstream os;
    class_map_render(p, os);
    std::string s = os.str();
    std::ostringstream want;
    want << "P6\n" << p.domain.n() << " " << p.domain.n() << "\n255\n";
    CHECK(s.substr(0, want.str().size()) == want.str());
    CHECK(s.size() == want.str().size() + size_t(p.domain.n()) * p.domain.n() * 3);
}
