#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cadence/binio.hpp"
#include "cadence/errors.hpp"
#include "cadence/tile_geo.hpp"

namespace cadence {

// GPS trace ingestion: parse delimited ping files and aggregate them into
// per-zoom-24-tile activity count series.

struct PingRecord {
    std::string user_id;
    double lat = 0.0;
    double lon = 0.0;
    std::int64_t timestamp = 0; // epoch seconds
};

struct TimeSpec {
    std::int64_t t_start = 0;   // epoch seconds of bin 0
    std::uint32_t delta_t = 1;  // bin width in seconds
    std::uint32_t num_bins = 1; // T

    std::int64_t horizon_seconds() const {
        return static_cast<std::int64_t>(delta_t) * num_bins;
    }

    void validate() const {
        if (delta_t == 0) throw DomainError("TimeSpec: delta_t must be positive");
        if (num_bins == 0) throw DomainError("TimeSpec: num_bins must be positive");
    }

    friend bool operator==(const TimeSpec&, const TimeSpec&) = default;
};

struct TileSeries {
    TileId tile;
    std::vector<std::uint32_t> counts; // length T
};

/// Bin for a timestamp, or nullopt when it falls outside the horizon.
inline std::optional<std::uint32_t> bin_index(std::int64_t timestamp, const TimeSpec& spec) {
    spec.validate();
    const std::int64_t off = timestamp - spec.t_start;
    if (off < 0 || off >= spec.horizon_seconds()) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(off / spec.delta_t);
}

/// Sparse store of per-tile series; absent tiles read as all-zero.
class TileSeriesStore {
public:
    TileSeriesStore() = default;
    explicit TileSeriesStore(TimeSpec spec) : spec_(spec) { spec_.validate(); }

    const TimeSpec& spec() const { return spec_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    void increment(const TileId& tile, std::uint32_t bin, std::uint32_t by = 1) {
        if (bin >= spec_.num_bins) {
            throw DomainError("TileSeriesStore: bin " + std::to_string(bin) + " out of range");
        }
        auto it = entries_.find(tile);
        if (it == entries_.end()) {
            it = entries_.emplace(tile, std::vector<std::uint32_t>(spec_.num_bins, 0)).first;
        }
        it->second[bin] += by;
    }

    void set_series(const TileId& tile, std::vector<std::uint32_t> counts) {
        if (counts.size() != spec_.num_bins) {
            throw DomainError("TileSeriesStore: series length " + std::to_string(counts.size()) +
                              " != num_bins " + std::to_string(spec_.num_bins));
        }
        entries_[tile] = std::move(counts);
    }

    bool contains(const TileId& tile) const { return entries_.count(tile) != 0; }

    /// Always returns a length-T series; zeros for unseen tiles.
    std::vector<std::uint32_t> series(const TileId& tile) const {
        auto it = entries_.find(tile);
        if (it == entries_.end()) {
            return std::vector<std::uint32_t>(spec_.num_bins, 0);
        }
        return it->second;
    }

    /// Element-wise sum with another partial store (associative, commutative).
    void merge(const TileSeriesStore& other) {
        if (!(other.spec_ == spec_)) {
            throw DomainError("TileSeriesStore::merge: mismatched TimeSpec");
        }
        for (const auto& [tile, counts] : other.entries_) {
            auto it = entries_.find(tile);
            if (it == entries_.end()) {
                entries_.emplace(tile, counts);
            } else {
                for (std::size_t i = 0; i < counts.size(); ++i) {
                    it->second[i] += counts[i];
                }
            }
        }
    }

    std::uint64_t total_count() const {
        std::uint64_t total = 0;
        for (const auto& [tile, counts] : entries_) {
            for (std::uint32_t c : counts) total += c;
        }
        return total;
    }

    // Ordered iteration keeps every downstream artifact deterministic.
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    friend bool operator==(const TileSeriesStore&, const TileSeriesStore&) = default;

private:
    TimeSpec spec_;
    std::map<TileId, std::vector<std::uint32_t>> entries_;
};

struct ParseReport {
    std::vector<PingRecord> records;
    std::uint64_t malformed_lines = 0;
};

namespace detail {

inline bool parse_ping_line(const std::string& line, PingRecord& out) {
    // user_id,lat,lon,timestamp
    std::size_t p1 = line.find(',');
    if (p1 == std::string::npos || p1 == 0) return false;
    std::size_t p2 = line.find(',', p1 + 1);
    if (p2 == std::string::npos) return false;
    std::size_t p3 = line.find(',', p2 + 1);
    if (p3 == std::string::npos) return false;
    if (line.find(',', p3 + 1) != std::string::npos) return false;

    try {
        std::size_t used = 0;
        const std::string lat_s = line.substr(p1 + 1, p2 - p1 - 1);
        const std::string lon_s = line.substr(p2 + 1, p3 - p2 - 1);
        const std::string ts_s = line.substr(p3 + 1);
        const double lat = std::stod(lat_s, &used);
        if (used != lat_s.size()) return false;
        const double lon = std::stod(lon_s, &used);
        if (used != lon_s.size()) return false;
        const long long ts = std::stoll(ts_s, &used);
        if (used != ts_s.size()) return false;
        if (ts < 0) return false;
        out.user_id = line.substr(0, p1);
        out.lat = lat;
        out.lon = lon;
        out.timestamp = ts;
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

} // namespace detail

/// Parses the documented trace format: UTF-8 lines `user_id,lat,lon,timestamp`
/// with an optional header line starting with `user_id`. Malformed lines are
/// skipped and counted; more than 50% malformed is a format error.
inline ParseReport parse_traces(std::istream& in) {
    if (!in) {
        throw IoError("parse_traces: unreadable input stream");
    }
    ParseReport report;
    std::string line;
    std::uint64_t data_lines = 0;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && line.rfind("user_id", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        ++data_lines;
        PingRecord rec;
        if (detail::parse_ping_line(line, rec)) {
            report.records.push_back(std::move(rec));
        } else {
            ++report.malformed_lines;
        }
    }
    if (in.bad()) {
        throw IoError("parse_traces: read failure");
    }
    if (data_lines > 0 && report.malformed_lines * 2 > data_lines) {
        throw FormatError("parse_traces: " + std::to_string(report.malformed_lines) + " of " +
                          std::to_string(data_lines) + " lines malformed (>50%)");
    }
    return report;
}

inline ParseReport parse_traces_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open trace file '" + path + "'");
    }
    return parse_traces(in);
}

struct AggregateReport {
    std::uint64_t accepted = 0;
    std::uint64_t dropped_out_of_horizon = 0;
    std::uint64_t dropped_out_of_band = 0;
};

/// Counts each in-horizon, in-band ping into its zoom-24 tile and time bin.
/// Out-of-horizon and out-of-band records are dropped and counted, never fatal.
inline TileSeriesStore aggregate(const std::vector<PingRecord>& records, const TimeSpec& spec,
                                 AggregateReport* report = nullptr) {
    spec.validate();
    TileSeriesStore store(spec);
    AggregateReport local;
    for (const PingRecord& rec : records) {
        const auto bin = bin_index(rec.timestamp, spec);
        if (!bin) {
            ++local.dropped_out_of_horizon;
            continue;
        }
        if (!lat_in_band(rec.lat) || rec.lon < -180.0 || rec.lon > 180.0 ||
            !std::isfinite(rec.lat) || !std::isfinite(rec.lon)) {
            ++local.dropped_out_of_band;
            continue;
        }
        store.increment(latlon_to_tile(rec.lat, rec.lon, kPixelZoom), *bin);
        ++local.accepted;
    }
    if (report) *report = local;
    return store;
}

// --- TSST store serialization -------------------------------------------
// magic 'TSST', version u16, t_start i64, delta_t u32, num_bins u32,
// entry count u64, then per entry: zoom u8, x u32, y u32, T x u32 counts.
// All little-endian.

inline constexpr std::uint16_t kStoreFormatVersion = 1;

inline std::vector<std::uint8_t> serialize_store(const TileSeriesStore& store) {
    ByteWriter w;
    w.put_magic("TSST");
    w.put_u16(kStoreFormatVersion);
    w.put_i64(store.spec().t_start);
    w.put_u32(store.spec().delta_t);
    w.put_u32(store.spec().num_bins);
    w.put_u64(store.size());
    for (const auto& [tile, counts] : store) {
        w.put_u8(tile.zoom);
        w.put_u32(tile.x);
        w.put_u32(tile.y);
        for (std::uint32_t c : counts) w.put_u32(c);
    }
    return w.take();
}

inline TileSeriesStore deserialize_store(const std::vector<std::uint8_t>& bytes,
                                         const std::string& what = "TSST store") {
    ByteReader r(bytes, what);
    r.expect_magic("TSST");
    const std::uint16_t version = r.get_u16();
    if (version != kStoreFormatVersion) {
        throw FormatError(what + ": unsupported version " + std::to_string(version));
    }
    TimeSpec spec;
    spec.t_start = r.get_i64();
    spec.delta_t = r.get_u32();
    spec.num_bins = r.get_u32();
    spec.validate();
    TileSeriesStore store(spec);
    const std::uint64_t count = r.get_u64();
    for (std::uint64_t i = 0; i < count; ++i) {
        TileId tile;
        tile.zoom = r.get_u8();
        tile.x = r.get_u32();
        tile.y = r.get_u32();
        std::vector<std::uint32_t> counts(spec.num_bins);
        for (auto& c : counts) c = r.get_u32();
        if (store.contains(tile)) {
            throw FormatError(what + ": duplicate tile " + to_string(tile));
        }
        store.set_series(tile, std::move(counts));
    }
    return store;
}

inline void save_store(const TileSeriesStore& store, const std::string& path) {
    write_file_bytes(path, serialize_store(store));
}

inline TileSeriesStore load_store(const std::string& path) {
    return deserialize_store(read_file_bytes(path), path);
}

} // namespace cadence
