#pragma once

#include <complex>
#include <optional>
#include <string>

#include "pk/partition.hpp"

namespace pk {

using Complex = std::complex<double>;

// Rational map restricted to a bounded window. compose applies the factors in
// list order (first factor acts first). Poles are never clamped: evaluation
// near a pole fails and the affected cells go to an exclusion list.
class RationalMap {
public:
    static RationalMap square();
    static RationalMap quad(Complex c);
    static RationalMap moebius(Complex a, Complex b, Complex c, Complex d);
    static RationalMap compose(std::vector<RationalMap> factors);
    // "square" | "quad:re,im" | "moebius:a,b,c,d" (real coefficients).
    static RationalMap parse(const std::string& text);

    int degree() const { return degree_; }
    std::string describe() const;

    std::optional<Complex> eval(Complex z) const;
    std::optional<Point> eval(const Point& p) const;

    // Supremum overestimate of |f'| over the closed disk (center, radius);
    // nullopt when a pole may touch the disk.
    std::optional<double> lipschitz(Complex center, double radius) const;

private:
    enum class Kind { square, quad, moebius, compose };
    Kind kind_ = Kind::square;
    Complex a_{}, b_{}, c_{}, d_{};   // quad uses b_ as its constant
    std::vector<RationalMap> factors_;
    int degree_ = 2;
};

// Raster image with the cells that had to be skipped (pole too close).
struct MappedRaster {
    Raster raster;
    CellSet excluded;  // source cells, by source index
};

// Target cells touched by f over the occupied source cells, each image point
// dilated by its cell's distortion bound.
MappedRaster forward_image(const Raster& K, const RationalMap& f,
                           const Window& target_window, int target_level);

// Conservative superset of f^{-1}(K) on the source grid: a source cell
// survives when f(center) lands within the distortion bound of K.
MappedRaster preimage(const Raster& K, const RationalMap& f,
                      const Window& source_window, int source_level);

struct BeardonReport {
    int degree = 0;
    unsigned component_count = 0;
    bool degree_ok = false;
    bool empty_preimage = false;
    struct ComponentLine {
        size_t cell_count = 0;
        double onto_distance = 0.0;        // Hausdorff(f(component), class d)
        double class_match_distance = -1;  // best class of L's decomposition
    };
    std::vector<ComponentLine> components;
};

// Components of preimage(d) inside L, with degree bound, onto distances, and
// (when a decomposition of L is supplied) best-class match distances.
BeardonReport beardon_check(const CellSet& d, const Raster& target_geometry,
                            const RationalMap& f, const Raster& L,
                            const Partition* L_partition = nullptr);

struct TransportReport {
    MatchReport match;                        // direct vs pullback partitions
    int degree = 0;
    unsigned max_component_count = 0;         // over pulled-back classes
    bool degree_ok = true;
    std::vector<unsigned> component_counts;   // per target class
};

// Theorem-A pipeline: decompose the preimage raster directly, pull the target
// decomposition back through f, and match the two partitions at `tolerance`.
TransportReport invariance_check(const Raster& k_g, const Raster& k_g1,
                                 const RationalMap& f, const Window& source_window,
                                 int source_level, RelationSchedule sched = {},
                                 double tolerance = -1.0);

}  // namespace pk
