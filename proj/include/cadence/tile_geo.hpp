#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "cadence/errors.hpp"

namespace cadence {

// Web-Mercator (slippy map, XYZ row order: row 0 at the north edge) tile
// arithmetic. The pipeline uses zoom 24 tiles as aggregation pixels and
// zoom 16 tiles as 256x256 blocks of them; the formulas are generic over
// zoom levels 0..24.

inline constexpr int kMaxZoom = 24;
inline constexpr int kPixelZoom = 24;
inline constexpr int kBlockZoom = 16;
inline constexpr int kBlockSide = 256; // zoom-24 tiles per zoom-16 tile edge

/// Latitude limit of the Web-Mercator projection, atan(sinh(pi)) in degrees.
inline constexpr double kMercatorMaxLat = 85.05112877980659;

struct TileId {
    std::uint8_t zoom = 0;
    std::uint32_t x = 0;
    std::uint32_t y = 0;

    friend auto operator<=>(const TileId&, const TileId&) = default;
};

struct PixelIndex {
    int row = 0; // 0 at the north edge of the block
    int col = 0; // 0 at the west edge

    friend auto operator<=>(const PixelIndex&, const PixelIndex&) = default;
};

struct LatLonBounds {
    double lat_min = 0.0;
    double lon_min = 0.0;
    double lat_max = 0.0;
    double lon_max = 0.0;
};

inline std::string to_string(const TileId& t) {
    return "z" + std::to_string(t.zoom) + "/" + std::to_string(t.x) + "/" + std::to_string(t.y);
}

inline void validate_zoom(int zoom) {
    if (zoom < 0 || zoom > kMaxZoom) {
        throw DomainError("zoom " + std::to_string(zoom) + " outside [0, 24]");
    }
}

/// True when the latitude is inside the Web-Mercator validity band.
inline bool lat_in_band(double lat) {
    return lat >= -kMercatorMaxLat && lat <= kMercatorMaxLat;
}

inline TileId latlon_to_tile(double lat, double lon, int zoom) {
    validate_zoom(zoom);
    if (!std::isfinite(lat) || !lat_in_band(lat)) {
        throw DomainError("latitude " + std::to_string(lat) +
                          " outside Web-Mercator band [-85.0511, 85.0511]");
    }
    if (!std::isfinite(lon) || lon < -180.0 || lon > 180.0) {
        throw DomainError("longitude " + std::to_string(lon) + " outside [-180, 180]");
    }
    const double n = std::ldexp(1.0, zoom); // 2^zoom
    const double xf = (lon + 180.0) / 360.0 * n;
    const double lat_rad = lat * M_PI / 180.0;
    const double yf = (1.0 - std::asinh(std::tan(lat_rad)) / M_PI) / 2.0 * n;

    const auto clamp_floor = [&](double v) -> std::uint32_t {
        double f = std::floor(v);
        if (f < 0.0) f = 0.0;
        if (f > n - 1.0) f = n - 1.0;
        return static_cast<std::uint32_t>(f);
    };
    return TileId{static_cast<std::uint8_t>(zoom), clamp_floor(xf), clamp_floor(yf)};
}

/// Latitude of a horizontal Mercator grid line, given in tile rows from the top.
inline double tile_row_to_lat(double yf, int zoom) {
    const double n = std::ldexp(1.0, zoom);
    return std::atan(std::sinh(M_PI * (1.0 - 2.0 * yf / n))) * 180.0 / M_PI;
}

inline LatLonBounds tile_bounds(const TileId& tile) {
    validate_zoom(tile.zoom);
    const double n = std::ldexp(1.0, tile.zoom);
    LatLonBounds b;
    b.lon_min = static_cast<double>(tile.x) / n * 360.0 - 180.0;
    b.lon_max = static_cast<double>(tile.x + 1ull) / n * 360.0 - 180.0;
    b.lat_max = tile_row_to_lat(static_cast<double>(tile.y), tile.zoom);
    b.lat_min = tile_row_to_lat(static_cast<double>(tile.y + 1ull), tile.zoom);
    return b;
}

inline double tile_center_lat(const TileId& tile) {
    const LatLonBounds b = tile_bounds(tile);
    return (b.lat_min + b.lat_max) / 2.0;
}

inline double tile_center_lon(const TileId& tile) {
    const LatLonBounds b = tile_bounds(tile);
    return (b.lon_min + b.lon_max) / 2.0;
}

inline void require_pixel_zoom(const TileId& tile, const char* op) {
    if (tile.zoom != kPixelZoom) {
        throw DomainError(std::string(op) + ": expected a zoom-24 tile, got " + to_string(tile));
    }
}

/// The zoom-16 block containing a zoom-24 tile.
inline TileId parent_z16(const TileId& tile) {
    require_pixel_zoom(tile, "parent_z16");
    return TileId{kBlockZoom, tile.x >> 8, tile.y >> 8};
}

/// Position of a zoom-24 tile within its zoom-16 block.
inline PixelIndex pixel_index(const TileId& tile) {
    require_pixel_zoom(tile, "pixel_index");
    return PixelIndex{static_cast<int>(tile.y & 0xFF), static_cast<int>(tile.x & 0xFF)};
}

/// Inverse of parent_z16 + pixel_index.
inline TileId child_of(const TileId& z16, const PixelIndex& px) {
    if (z16.zoom != kBlockZoom) {
        throw DomainError("child_of: expected a zoom-16 tile, got " + to_string(z16));
    }
    if (px.row < 0 || px.row >= kBlockSide || px.col < 0 || px.col >= kBlockSide) {
        throw DomainError("child_of: pixel index out of range");
    }
    return TileId{kPixelZoom,
                  (z16.x << 8) + static_cast<std::uint32_t>(px.col),
                  (z16.y << 8) + static_cast<std::uint32_t>(px.row)};
}

struct TileIdHash {
    std::size_t operator()(const TileId& t) const {
        std::uint64_t v = (static_cast<std::uint64_t>(t.zoom) << 58) ^
                          (static_cast<std::uint64_t>(t.x) << 29) ^
                          static_cast<std::uint64_t>(t.y);
        v ^= v >> 33;
        v *= 0xFF51AFD7ED558CCDull;
        v ^= v >> 33;
        return static_cast<std::size_t>(v);
    }
};

} // namespace cadence
