#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "eraserlab/central_spin.hpp"
#include "eraserlab/errors.hpp"

namespace eraserlab::io {

// Write-then-rename so consumers never observe a partial file.
inline void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw config_invalid("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw config_invalid("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

// shortest decimal that round-trips a double
inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == x) {
        for (int prec = 1; prec < 17; ++prec) {
            char shorter[40];
            std::snprintf(shorter, sizeof(shorter), "%.*g", prec, x);
            std::sscanf(shorter, "%lf", &back);
            if (back == x) return shorter;
        }
    }
    return buf;
}

inline std::string fmt_int(long long x) { return std::to_string(x); }

// RFC 4180 with LF endings and '.' decimal separator.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& columns) { row_strings(columns); }

    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += escape(cells[i]);
        }
        body_ += '\n';
    }

    void row(const std::vector<double>& cells) {
        std::vector<std::string> s;
        s.reserve(cells.size());
        for (double c : cells) s.push_back(fmt_double(c));
        row_strings(s);
    }

    const std::string& str() const { return body_; }

    void write(const std::filesystem::path& path) const { atomic_write_text(path, body_); }

private:
    static std::string escape(const std::string& cell) {
        if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
        std::string out = "\"";
        for (char c : cell) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    }

    std::string body_;
};

// Binary sector-state dump. Layout (little endian):
//   "ELSD" magic, u32 version = 1, u32 bath spin count, u64 sector count,
//   then per sector in (magnons, memory bit) order with down before up:
//   u32 magnons, u8 memory_up, u64 amplitude count, and count pairs of
//   f64 (re, im) over the n-flip configurations in increasing bitmask order.
inline void write_state_dump(const std::filesystem::path& path,
                             const central::SectorState& state) {
    std::string buf;
    auto put = [&buf](const void* p, std::size_t n) {
        buf.append(static_cast<const char*>(p), n);
    };
    buf += "ELSD";
    const std::uint32_t version = 1;
    const std::uint32_t nsp = static_cast<std::uint32_t>(state.n_spins);
    const std::uint64_t nsec = state.sectors.size();
    put(&version, 4);
    put(&nsp, 4);
    put(&nsec, 8);
    for (const auto& [key, amp] : state.sectors) {
        const std::uint32_t mag = static_cast<std::uint32_t>(key.magnons);
        const std::uint8_t up = key.memory_up ? 1 : 0;
        const std::uint64_t count = static_cast<std::uint64_t>(amp.size());
        put(&mag, 4);
        put(&up, 1);
        put(&count, 8);
        for (Eigen::Index i = 0; i < amp.size(); ++i) {
            const double re = amp(i).real(), im = amp(i).imag();
            put(&re, 8);
            put(&im, 8);
        }
    }
    atomic_write_text(path, buf);
}

inline central::SectorState read_state_dump(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_invalid("cannot open " + path.string());
    auto get = [&in, &path](void* p, std::size_t n) {
        in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!in) throw config_invalid("truncated state dump " + path.string());
    };
    char magic[4];
    get(magic, 4);
    if (std::memcmp(magic, "ELSD", 4) != 0)
        throw config_invalid(path.string() + " is not a state dump");
    std::uint32_t version = 0, nsp = 0;
    std::uint64_t nsec = 0;
    get(&version, 4);
    if (version != 1) throw config_invalid("unsupported state dump version");
    get(&nsp, 4);
    get(&nsec, 8);
    central::SectorState state;
    state.n_spins = static_cast<int>(nsp);
    for (std::uint64_t s = 0; s < nsec; ++s) {
        std::uint32_t mag = 0;
        std::uint8_t up = 0;
        std::uint64_t count = 0;
        get(&mag, 4);
        get(&up, 1);
        get(&count, 8);
        Eigen::VectorXcd amp(static_cast<Eigen::Index>(count));
        for (std::uint64_t i = 0; i < count; ++i) {
            double re = 0.0, im = 0.0;
            get(&re, 8);
            get(&im, 8);
            amp(static_cast<Eigen::Index>(i)) = central::Complex(re, im);
        }
        state.sectors[{static_cast<int>(mag), up != 0}] = std::move(amp);
    }
    return state;
}

} // namespace eraserlab::io
