// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#include "fdbf/dump.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fdbf {

namespace {

constexpr char kChanMagic[8] = {'F', 'D', 'B', 'F', 'C', 'H', 'N', '1'};
constexpr char kBeamMagic[8] = {'F', 'D', 'B', 'F', 'B', 'M', 'F', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i)
        b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i)
        bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

void put_matrix(std::ostream& out, const CMatrix& m) {
    for (Index r = 0; r < m.rows(); ++r) {
        for (Index c = 0; c < m.cols(); ++c) {
            put_f64(out, m(r, c).real());
            put_f64(out, m(r, c).imag());
        }
    }
}

CMatrix get_matrix(std::istream& in, Index rows, Index cols) {
    CMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            const double re = get_f64(in);
            const double im = get_f64(in);
            m(r, c) = cxd(re, im);
        }
    }
    return m;
}

} // namespace

void write_channel_dump(const std::string& path, const TimeDomainChannel& td, int n_subcarriers) {
    if (td.taps.empty())
        throw std::invalid_argument("write_channel_dump: empty channel");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_channel_dump: cannot open '" + path + "'");
    out.write(kChanMagic, 8);
    put_u32(out, static_cast<std::uint32_t>(td.taps[0].rows()));
    put_u32(out, static_cast<std::uint32_t>(td.taps[0].cols()));
    put_u32(out, static_cast<std::uint32_t>(td.taps.size()));
    put_u32(out, static_cast<std::uint32_t>(n_subcarriers));
    for (const CMatrix& tap : td.taps)
        put_matrix(out, tap);
    if (!out)
        throw std::runtime_error("write_channel_dump: write failed for '" + path + "'");
}

ChannelDump read_channel_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_channel_dump: cannot open '" + path + "'");
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kChanMagic, 8) != 0)
        throw std::runtime_error("read_channel_dump: bad magic in '" + path + "'");
    const Index rows = get_u32(in), cols = get_u32(in);
    const std::uint32_t taps = get_u32(in), k = get_u32(in);
    ChannelDump dump;
    dump.n_subcarriers = static_cast<int>(k);
    for (std::uint32_t l = 0; l < taps; ++l)
        dump.channel.taps.push_back(get_matrix(in, rows, cols));
    if (!in)
        throw std::runtime_error("read_channel_dump: truncated file '" + path + "'");
    return dump;
}

void write_beamformer_dump(const std::string& path, const std::vector<CMatrix>& mats) {
    if (mats.empty())
        throw std::invalid_argument("write_beamformer_dump: empty set");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_beamformer_dump: cannot open '" + path + "'");
    out.write(kBeamMagic, 8);
    put_u32(out, static_cast<std::uint32_t>(mats[0].rows()));
    put_u32(out, static_cast<std::uint32_t>(mats[0].cols()));
    put_u32(out, static_cast<std::uint32_t>(mats.size()));
    for (const CMatrix& m : mats)
        put_matrix(out, m);
    if (!out)
        throw std::runtime_error("write_beamformer_dump: write failed for '" + path + "'");
}

std::vector<CMatrix> read_beamformer_dump(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("read_beamformer_dump: cannot open '" + path + "'");
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kBeamMagic, 8) != 0)
        throw std::runtime_error("read_beamformer_dump: bad magic in '" + path + "'");
    const Index rows = get_u32(in), cols = get_u32(in);
    const std::uint32_t count = get_u32(in);
    std::vector<CMatrix> mats;
    for (std::uint32_t i = 0; i < count; ++i)
        mats.push_back(get_matrix(in, rows, cols));
    if (!in)
        throw std::runtime_error("read_beamformer_dump: truncated file '" + path + "'");
    return mats;
}

} // namespace fdbf
