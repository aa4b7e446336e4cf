#include "pk/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pk {

namespace {
constexpr double kPoleGuard = 1e-9;
}

RationalMap RationalMap::square() {
    RationalMap m;
    m.kind_ = Kind::square;
    m.degree_ = 2;
    return m;
}

RationalMap RationalMap::quad(Complex c) {
    RationalMap m;
    m.kind_ = Kind::quad;
    m.b_ = c;
    m.degree_ = 2;
    return m;
}

RationalMap RationalMap::moebius(Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a * d - b * c) < kPoleGuard)
        throw domain_error("moebius: ad - bc must be nonzero");
    RationalMap m;
    m.kind_ = Kind::moebius;
    m.a_ = a;
    m.b_ = b;
    m.c_ = c;
    m.d_ = d;
    m.degree_ = 1;
    return m;
}

RationalMap RationalMap::compose(std::vector<RationalMap> factors) {
    if (factors.empty()) throw domain_error("compose: needs at least one factor");
    RationalMap m;
    m.kind_ = Kind::compose;
    m.degree_ = 1;
    for (const auto& f : factors) m.degree_ *= f.degree_;
    m.factors_ = std::move(factors);
    return m;
}

RationalMap RationalMap::parse(const std::string& text) {
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                args.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw domain_error("map: bad coefficient '" + tok + "'");
            }
        }
    }
    if (head == "square" && args.empty()) return square();
    if (head == "quad" && args.size() == 2) return quad({args[0], args[1]});
    if (head == "moebius" && args.size() == 4)
        return moebius(args[0], args[1], args[2], args[3]);
    throw domain_error("map: expected square | quad:re,im | moebius:a,b,c,d");
}

std::string RationalMap::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::square: os << "square"; break;
        case Kind::quad: os << "quad:" << b_.real() << "," << b_.imag(); break;
        case Kind::moebius:
            os << "moebius:" << a_.real() << "," << b_.real() << "," << c_.real()
               << "," << d_.real();
            break;
        case Kind::compose:
            os << "compose(";
            for (size_t i = 0; i < factors_.size(); ++i)
                os << (i ? "," : "") << factors_[i].describe();
            os << ")";
            break;
    }
    return os.str();
}

std::optional<Complex> RationalMap::eval(Complex z) const {
    switch (kind_) {
        case Kind::square:
            return z * z;
        case Kind::quad:
            return z * z + b_;
        case Kind::moebius: {
            Complex den = c_ * z + d_;
            if (std::abs(den) < kPoleGuard) return std::nullopt;
            return (a_ * z + b_) / den;
        }
        case Kind::compose: {
            Complex w = z;
            for (const auto& f : factors_) {
                auto r = f.eval(w);
                if (!r) return std::nullopt;
                w = *r;
            }
            return w;
        }
    }
    return std::nullopt;
}

std::optional<Point> RationalMap::eval(const Point& p) const {
    auto w = eval(Complex{p.x, p.y});
    if (!w) return std::nullopt;
    return Point{w->real(), w->imag()};
}

std::optional<double> RationalMap::lipschitz(Complex center, double radius) const {
    switch (kind_) {
        case Kind::square:
        case Kind::quad:
            return 2.0 * (std::abs(center) + radius);
        case Kind::moebius: {
            if (std::abs(c_) < kPoleGuard) return std::abs(a_ / d_);
            double m = std::abs(c_ * center + d_) - std::abs(c_) * radius;
            if (m < kPoleGuard) return std::nullopt;  // pole may touch the disk
            return std::abs(a_ * d_ - b_ * c_) / (m * m);
        }
        case Kind::compose: {
            // Chain disk enclosures: each factor maps the running disk into a
            // disk of radius L * r around the mapped center.
            Complex z = center;
            double r = radius, bound = 1.0;
            for (const auto& f : factors_) {
                auto l = f.lipschitz(z, r);
                auto w = f.eval(z);
                if (!l || !w) return std::nullopt;
                bound *= *l;
                r *= *l;
                z = *w;
            }
            return bound;
        }
    }
    return std::nullopt;
}

namespace {

// Per-source-cell transport data: image point and dilation radius in target
// cells, or excluded when a pole is too close.
struct CellTransport {
    bool valid = false;
    Point w{};
    int rings = 0;
};

CellTransport transport_cell(const RationalMap& f, const Point& z, double h_src,
                             double h_tgt) {
    CellTransport t;
    auto l = f.lipschitz(Complex{z.x, z.y}, h_src * std::sqrt(0.5));
    auto w = f.eval(z);
    if (!l || !w) return t;
    t.valid = true;
    t.w = *w;
    t.rings = int(std::ceil(*l * h_src / h_tgt));
    return t;
}

}  // namespace

MappedRaster forward_image(const Raster& K, const RationalMap& f,
                           const Window& target_window, int target_level) {
    MappedRaster out{Raster(target_window, target_level), {}};
    Raster& img = out.raster;
    int nt = img.n();
    double ht = img.h(), hs = K.h();
    for (int32_t idx : K.occupied()) {
        CellTransport t = transport_cell(f, K.cell_center(idx), hs, ht);
        if (!t.valid) {
            out.excluded.push_back(idx);
            continue;
        }
        if (!target_window.contains(t.w)) continue;
        int32_t c = img.cell_of(t.w);
        int ci = c % nt, cj = c / nt;
        int r = std::min(t.rings, nt);
        for (int j = std::max(0, cj - r); j <= std::min(nt - 1, cj + r); ++j)
            for (int i = std::max(0, ci - r); i <= std::min(nt - 1, ci + r); ++i)
                img.set(i, j);
    }
    return out;
}

MappedRaster preimage(const Raster& K, const RationalMap& f,
                      const Window& source_window, int source_level) {
    MappedRaster out{Raster(source_window, source_level), {}};
    Raster& src = out.raster;
    CellSet occ = K.occupied();
    if (occ.empty()) return out;
    int nt = K.n();
    double ht = K.h(), hs = src.h();
    auto d2 = squared_edt(occ, nt);
    // Bounding box of K, for source cells whose image leaves the window.
    double bx0 = 1e300, bx1 = -1e300, by0 = 1e300, by1 = -1e300;
    for (int32_t idx : occ) {
        Point c = K.cell_center(idx);
        bx0 = std::min(bx0, c.x); bx1 = std::max(bx1, c.x);
        by0 = std::min(by0, c.y); by1 = std::max(by1, c.y);
    }
    int ns = src.n();
    for (int32_t idx = 0; idx < int32_t(src.bits().size()); ++idx) {
        Point z = src.cell_center(idx);
        CellTransport t = transport_cell(f, z, hs, ht);
        if (!t.valid) {
            out.excluded.push_back(idx);
            continue;
        }
        double thr = (t.rings + 2) * ht;
        if (K.window().contains(t.w)) {
            if (std::sqrt(d2[K.cell_of(t.w)]) * ht <= thr) src.set_idx(idx);
            continue;
        }
        double dx = std::max({bx0 - t.w.x, 0.0, t.w.x - bx1});
        double dy = std::max({by0 - t.w.y, 0.0, t.w.y - by1});
        if (std::hypot(dx, dy) > thr) continue;
        for (int32_t k : occ)
            if (dist(t.w, K.cell_center(k)) <= thr) {
                src.set_idx(idx);
                break;
            }
    }
    (void)ns;
    return out;
}

BeardonReport beardon_check(const CellSet& d, const Raster& target_geometry,
                            const RationalMap& f, const Raster& L,
                            const Partition* L_partition) {
    if (d.empty()) throw domain_error("beardon_check: empty class");
    BeardonReport rep;
    rep.degree = f.degree();
    Raster d_raster(target_geometry.window(), target_geometry.level());
    for (int32_t idx : d) d_raster.set_idx(idx);
    MappedRaster pre = preimage(d_raster, f, L.window(), L.level());
    // Only the part of the conservative preimage that lies on L counts.
    std::vector<uint8_t> bits = pre.raster.bits();
    for (size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] && L.bits()[i];
    LabelField comps = label_components(bits, L.n());
    rep.component_count = unsigned(comps.count);
    rep.degree_ok = comps.count >= 1 && comps.count <= rep.degree;
    rep.empty_preimage = comps.count == 0;
    for (const CellSet& comp : comps.cells) {
        BeardonReport::ComponentLine line;
        line.cell_count = comp.size();
        Raster piece(L.window(), L.level());
        for (int32_t idx : comp) piece.set_idx(idx);
        MappedRaster img = forward_image(piece, f, target_geometry.window(),
                                         target_geometry.level());
        CellSet img_cells = img.raster.occupied();
        line.onto_distance = img_cells.empty()
                                 ? std::numeric_limits<double>::infinity()
                                 : hausdorff_distance(target_geometry, img_cells, d);
        if (L_partition) {
            // Candidate classes: those overlapping a slightly grown component.
            CellSet grown = dilate(comp, L.n(), 2);
            std::vector<int32_t> cands;
            for (int32_t idx : grown) {
                int32_t c = L_partition->class_of[idx];
                if (c >= 0) cands.push_back(c);
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            double best = std::numeric_limits<double>::infinity();
            for (int32_t c : cands)
                best = std::min(best, hausdorff_distance(
                                          L, comp, L_partition->classes[c].cells));
            line.class_match_distance = best;
        }
        rep.components.push_back(line);
    }
    return rep;
}

TransportReport invariance_check(const Raster& k_g, const Raster& k_g1,
                                 const RationalMap& f, const Window& source_window,
                                 int source_level, RelationSchedule sched,
                                 double tolerance) {
    TransportReport rep;
    rep.degree = f.degree();
    MappedRaster pg = preimage(k_g, f, source_window, source_level);
    MappedRaster pg1 = preimage(k_g1, f, source_window, source_level);
    if (tolerance < 0) tolerance = 4 * pg1.raster.h();

    RelationEngine src_engine(pg.raster, pg1.raster, sched);
    Partition direct = decompose(src_engine);

    RelationEngine tgt_engine(k_g, k_g1, sched);
    Partition target = decompose(tgt_engine);

    // Pullback partition: components of the preimage of each nondegenerate
    // target class (degenerate classes pull back to degenerate dust and can
    // never partner a nondegenerate direct class).
    Partition pullback;
    pullback.domain = pg1.raster;
    pullback.class_of.assign(pg1.raster.bits().size(), -1);
    for (const auto& cl : target.classes) {
        if (cl.degenerate) continue;
        Raster d_raster(k_g1.window(), k_g1.level());
        for (int32_t idx : cl.cells) d_raster.set_idx(idx);
        MappedRaster pre = preimage(d_raster, f, source_window, source_level);
        std::vector<uint8_t> bits = pre.raster.bits();
        for (size_t i = 0; i < bits.size(); ++i)
            bits[i] = bits[i] && pg1.raster.bits()[i];
        LabelField comps = label_components(bits, pg1.raster.n());
        rep.component_counts.push_back(unsigned(comps.count));
        rep.max_component_count = std::max(rep.max_component_count,
                                           unsigned(comps.count));
        if (comps.count < 1 || comps.count > rep.degree) rep.degree_ok = false;
        for (const CellSet& comp : comps.cells) {
            Partition::Class qc;
            qc.cells = comp;
            qc.diameter = cellset_diameter(pullback.domain, comp);
            qc.degenerate = qc.diameter <= 4 * pullback.domain.h();
            int32_t id = int32_t(pullback.classes.size());
            for (int32_t idx : comp) pullback.class_of[idx] = id;
            pullback.classes.push_back(std::move(qc));
        }
    }
    rep.match = match_partitions(direct, pullback,
                                 [](Point p) { return p; }, tolerance);
    return rep;
}

}  // namespace pk
