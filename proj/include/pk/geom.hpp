#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pk {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double dist(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned square window of the plane hosting a raster.
struct Window {
    double x0 = 0.0;
    double y0 = 0.0;
    double side = 1.0;

    bool contains(const Point& p) const {
        return p.x >= x0 && p.x < x0 + side && p.y >= y0 && p.y < y0 + side;
    }
    bool operator==(const Window& o) const {
        return x0 == o.x0 && y0 == o.y0 && side == o.side;
    }
};

struct Disk {
    Point center;
    double radius = 0.0;

    bool contains(const Point& p) const {
        double dx = p.x - center.x, dy = p.y - center.y;
        return dx * dx + dy * dy < radius * radius;
    }
};

enum class Axis { horizontal, vertical };

// Region between two parallel axis-aligned lines. For a horizontal strip the
// lines are y = lo and y = hi.
struct Strip {
    Axis axis = Axis::horizontal;
    double lo = 0.0;
    double hi = 1.0;
};

struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pk
