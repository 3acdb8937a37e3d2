#ifndef EHDSIM_GRID_IO_HPP
#define EHDSIM_GRID_IO_HPP

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "ehdsim/deposition.hpp"
#include "ehdsim/errors.hpp"

namespace ehd {

/// CSV matrix of the thickness map [m]: one row per y index, nx columns.
inline void write_grid_csv(std::ostream& os, const DepositionGrid& grid) {
    os << std::setprecision(17);
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            if (ix) os << ',';
            os << grid.at(ix, iy);
        }
        os << '\n';
    }
}

namespace detail {

inline void put_le_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

inline std::uint32_t get_le_u32(std::istream& is) {
    unsigned char b[4] = {0, 0, 0, 0};
    is.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

inline void put_le_f32(std::ostream& os, float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_le_u32(os, bits);
}

inline float get_le_f32(std::istream& is) {
    const std::uint32_t bits = get_le_u32(is);
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
}

} // namespace detail

/// Binary thickness map: text header terminated by an END line, then
/// nx·ny float32 values, little-endian, row-major (iy outer, ix inner).
/// Lines starting with '#' inside the header carry provenance and are ignored
/// by the reader.
///
///   EHDGRID1
///   # provenance comments...
///   nx <int>
///   ny <int>
///   cell_size <m>
///   origin <x m> <y m>
///   window <t0 s> <t1 s>
///   data float32 little-endian row-major
///   END
inline void write_grid_binary(std::ostream& os, const DepositionGrid& grid,
                              const std::string& header_comments = {}) {
    std::ostringstream header;
    header << "EHDGRID1\n" << header_comments
           << "nx " << grid.nx << "\n"
           << "ny " << grid.ny << "\n"
           << std::setprecision(17) << "cell_size " << grid.cell_size << "\n"
           << "origin " << grid.origin.x << ' ' << grid.origin.y << "\n"
           << "window " << grid.window_start << ' ' << grid.window_end << "\n"
           << "data float32 little-endian row-major\n"
           << "END\n";
    const std::string h = header.str();
    os.write(h.data(), static_cast<std::streamsize>(h.size()));
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
            detail::put_le_f32(os, static_cast<float>(grid.at(ix, iy)));
}

inline DepositionGrid read_grid_binary(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "EHDGRID1")
        throw IoError("grid read: bad magic, expected EHDGRID1");

    DepositionGrid grid;
    while (std::getline(is, line)) {
        if (line == "END") break;
        if (!line.empty() && line.front() == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "nx") ls >> grid.nx;
        else if (key == "ny") ls >> grid.ny;
        else if (key == "cell_size") ls >> grid.cell_size;
        else if (key == "origin") ls >> grid.origin.x >> grid.origin.y;
        else if (key == "window") ls >> grid.window_start >> grid.window_end;
        else if (key == "data") { /* format descriptor, fixed */ }
        else throw IoError("grid read: unknown header key '" + key + "'");
        if (ls.fail()) throw IoError("grid read: malformed header line '" + line + "'");
    }
    if (line != "END") throw IoError("grid read: missing END marker");
    if (grid.nx < 1 || grid.ny < 1 || !(grid.cell_size > 0.0))
        throw IoError("grid read: invalid dimensions in header");

    grid.thickness.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
            grid.at(ix, iy) = static_cast<double>(detail::get_le_f32(is));
    if (!is) throw IoError("grid read: truncated data section");
    return grid;
}

} // namespace ehd

#endif // EHDSIM_GRID_IO_HPP
