#include <algorithm>

#include "doctest.h"
#include "pk/generators.hpp"
#include "pk/relation.hpp"

using namespace pk;

TEST_CASE("two_disk_count isolates the middle of a segment") {
    Raster seg = generate(GeneratorSpec{Kind::segment, 1, 8});
    // Removing 0.1-disks at 0.3 and 0.7 leaves the middle piece as the only
    // component meeting both rims; the outer pieces meet one rim each.
    CHECK(two_disk_count(seg, {0.3, 0.0}, {0.7, 0.0}, 0.1) == 1);
}

TEST_CASE("two_disk_count on the comb counts teeth inside the radius") {
    // Disks on the tooth at c=0: besides the tooth's own middle piece, every
    // tooth at c < r crosses both rims. Generation 2 has no tooth in (0, 1/9);
    // generation 3 adds 1/27 and 2/27.
    Raster g2 = generate(GeneratorSpec{Kind::cantor_comb, 2, 9});
    Raster g3 = generate(GeneratorSpec{Kind::cantor_comb, 3, 9});
    Point x{0.0, 0.3}, y{0.0, 0.7};
    CHECK(two_disk_count(g2, x, y, 0.0996) == 1);
    CHECK(two_disk_count(g3, x, y, 0.0996) == 3);
    // Shrinking below 2/27 drops one tooth.
    CHECK(two_disk_count(g3, x, y, 0.0584) == 2);
}

TEST_CASE("two_disk_count validates its radius window") {
    Raster seg = generate(GeneratorSpec{Kind::segment, 1, 6});
    CHECK_THROWS_AS((void)two_disk_count(seg, {0.3, 0.0}, {0.7, 0.0}, seg.h()),
                    domain_error);
    CHECK_THROWS_AS((void)two_disk_count(seg, {0.3, 0.0}, {0.7, 0.0}, 0.4),
                    domain_error);
}

TEST_CASE("snap_to_occupied lands on the nearest cell center") {
    Raster seg = generate(GeneratorSpec{Kind::segment, 1, 8});
    Point p = snap_to_occupied(seg, {0.5002, seg.h() * 0.4});
    CHECK(seg.member(p));
    CHECK(dist(p, {0.5002, 0.0}) <= 1.5 * seg.h());
    CHECK_THROWS_AS((void)snap_to_occupied(seg, {0.5, 0.5}), domain_error);
}

TEST_CASE("comb tooth pairs relate, bar pairs do not") {
    Raster g2 = generate(GeneratorSpec{Kind::cantor_comb, 2, 9});
    Raster g3 = generate(GeneratorSpec{Kind::cantor_comb, 3, 9});
    RelationEngine engine(g2, g3);

    RelationVerdict tooth = engine.related({0.0, 0.3}, {0.0, 0.7});
    CHECK(tooth.related);
    REQUIRE(!tooth.radii.empty());
    CHECK(tooth.radii.front() == doctest::Approx(0.1).epsilon(0.05));
    // Radii descend in half-octave steps.
    for (size_t i = 1; i < tooth.radii.size(); ++i)
        CHECK(tooth.radii[i] / tooth.radii[i - 1] ==
              doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.01));

    RelationVerdict bar = engine.related({0.5, 0.999}, {0.9, 0.999});
    CHECK_FALSE(bar.related);

    // Mixed pair: a bar point against a tooth interior point.
    CHECK_FALSE(engine.related({0.45, 0.999}, {0.45, 0.4}).related);
}

TEST_CASE("relation verdicts are symmetric") {
    Raster g2 = generate(GeneratorSpec{Kind::cantor_comb, 2, 8});
    Raster g3 = generate(GeneratorSpec{Kind::cantor_comb, 3, 8});
    RelationEngine engine(g2, g3);
    const Point pts[] = {{0.0, 0.3}, {0.0, 0.7}, {0.5, 0.999}, {1.0, 0.2}};
    for (const Point& a : pts)
        for (const Point& b : pts) {
            if (dist(a, b) < 1e-9) continue;
            CHECK(engine.related(a, b).related == engine.related(b, a).related);
        }
}

TEST_CASE("pairs below the resolvable separation get an empty schedule") {
    Raster g2 = generate(GeneratorSpec{Kind::cantor_comb, 2, 8});
    Raster g3 = generate(GeneratorSpec{Kind::cantor_comb, 3, 8});
    RelationEngine engine(g2, g3);
    RelationVerdict v = engine.related({0.0, 0.50}, {0.0, 0.55});
    CHECK(v.schedule_empty);
    CHECK_FALSE(v.related);
}

TEST_CASE("square points never relate") {
    Raster g2 = generate(GeneratorSpec{Kind::full_square, 2, 8});
    Raster g3 = generate(GeneratorSpec{Kind::full_square, 3, 8});
    RelationEngine engine(g2, g3);
    CHECK_FALSE(engine.related({0.25, 0.5}, {0.75, 0.5}).related);
    CHECK_FALSE(engine.related({0.2, 0.2}, {0.8, 0.8}).related);
}

TEST_CASE("s_fiber of a tooth point covers its tooth and is connected") {
    GeneratorSpec s2{Kind::cantor_comb, 2, 8}, s3{Kind::cantor_comb, 3, 8};
    Raster g2 = generate(s2), g3 = generate(s3);
    RelationEngine engine(g2, g3);
    FiberMask fiber = engine.s_fiber({0.0, 0.5});
    REQUIRE(!fiber.cells.empty());
    // Dilating by one cell must give a single component.
    std::vector<uint8_t> bits(g3.bits().size(), 0);
    for (int32_t idx : dilate(fiber.cells, g3.n(), 1)) bits[idx] = 1;
    CHECK(label_components(bits, g3.n()).count == 1);
    // It stays near the tooth column: no cell off the comb.
    for (int32_t idx : fiber.cells) CHECK(g3.get_idx(idx));
}

TEST_CASE("connect_within joins pieces along occupied paths") {
    Raster seg = generate(GeneratorSpec{Kind::segment, 1, 7});
    CellSet pieces{seg.cell_of({0.1, 0.0}), seg.cell_of({0.9, 0.0})};
    CellSet closed = connect_within(seg, pieces);
    CHECK(closed.size() > pieces.size());
    std::vector<uint8_t> bits(seg.bits().size(), 0);
    for (int32_t idx : dilate(closed, seg.n(), 1)) bits[idx] = 1;
    CHECK(label_components(bits, seg.n()).count == 1);
}
