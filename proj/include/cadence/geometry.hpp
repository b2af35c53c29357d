#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cadence/errors.hpp"

namespace cadence {

// Planar polygon math in (lon, lat) degree space. Tiles are small enough
// that treating degrees as planar coordinates is consistent as long as
// every consumer (label rasterization, scene generation) does the same.

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;

    friend bool operator==(const LatLon&, const LatLon&) = default;
};

using Ring = std::vector<LatLon>; // closed: first == last

namespace detail {

inline double cross(double ax, double ay, double bx, double by) {
    return ax * by - ay * bx;
}

// Proper-intersection test for segments (p1,p2) and (p3,p4); shared
// endpoints between adjacent ring edges are not counted.
inline bool segments_cross(const LatLon& p1, const LatLon& p2, const LatLon& p3, const LatLon& p4) {
    const double d1 = cross(p4.lon - p3.lon, p4.lat - p3.lat, p1.lon - p3.lon, p1.lat - p3.lat);
    const double d2 = cross(p4.lon - p3.lon, p4.lat - p3.lat, p2.lon - p3.lon, p2.lat - p3.lat);
    const double d3 = cross(p2.lon - p1.lon, p2.lat - p1.lat, p3.lon - p1.lon, p3.lat - p1.lat);
    const double d4 = cross(p2.lon - p1.lon, p2.lat - p1.lat, p4.lon - p1.lon, p4.lat - p1.lat);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
           ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

} // namespace detail

/// Validates closure, vertex count and absence of self-intersections.
/// Throws GeometryError naming the offending vertex index.
inline void validate_ring(const Ring& ring) {
    if (ring.size() < 4) {
        throw GeometryError("ring has " + std::to_string(ring.size()) +
                            " vertices; need at least 3 distinct plus the closing vertex");
    }
    if (!(ring.front() == ring.back())) {
        throw GeometryError("ring is not closed: first vertex != last vertex");
    }
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        if (!std::isfinite(ring[i].lat) || !std::isfinite(ring[i].lon)) {
            throw GeometryError("ring vertex " + std::to_string(i) + " is not finite");
        }
        if (ring[i] == ring[i + 1]) {
            throw GeometryError("ring vertices " + std::to_string(i) + " and " +
                                std::to_string(i + 1) + " coincide");
        }
    }
    const std::size_t n = ring.size() - 1; // edges
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (detail::segments_cross(ring[i], ring[i + 1], ring[j], ring[j + 1])) {
                throw GeometryError("ring self-intersects between edges starting at vertices " +
                                    std::to_string(i) + " and " + std::to_string(j));
            }
        }
    }
}

/// Even-odd ray casting; points exactly on an edge count as inside on the
/// lower/left side only, so adjacent polygons partition the plane.
inline bool point_in_ring(const LatLon& p, const Ring& ring) {
    bool inside = false;
    const std::size_t n = ring.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
        const LatLon& a = ring[i];
        const LatLon& b = ring[i + 1];
        if ((a.lat > p.lat) != (b.lat > p.lat)) {
            const double x_at = a.lon + (p.lat - a.lat) / (b.lat - a.lat) * (b.lon - a.lon);
            if (p.lon < x_at) {
                inside = !inside;
            }
        }
    }
    return inside;
}

struct BoundingBox {
    double lat_min = 0.0;
    double lon_min = 0.0;
    double lat_max = 0.0;
    double lon_max = 0.0;
};

inline BoundingBox ring_bbox(const Ring& ring) {
    BoundingBox b{ring[0].lat, ring[0].lon, ring[0].lat, ring[0].lon};
    for (const LatLon& v : ring) {
        b.lat_min = std::min(b.lat_min, v.lat);
        b.lat_max = std::max(b.lat_max, v.lat);
        b.lon_min = std::min(b.lon_min, v.lon);
        b.lon_max = std::max(b.lon_max, v.lon);
    }
    return b;
}

/// Axis-aligned rectangle as a closed ring (counter-clockwise).
inline Ring rectangle_ring(double lat_min, double lon_min, double lat_max, double lon_max) {
    return Ring{{lat_min, lon_min}, {lat_min, lon_max}, {lat_max, lon_max},
                {lat_max, lon_min}, {lat_min, lon_min}};
}

} // namespace cadence
