// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator

#ifndef FDBF_DUMP_HPP
#define FDBF_DUMP_HPP

#include <string>
#include <vector>

#include "fdbf/channel.hpp"
#include "fdbf/types.hpp"

namespace fdbf {

/// Binary fixture formats, little-endian. A channel dump is
///   "FDBFCHN1" u32(rows) u32(cols) u32(L) u32(K)
/// followed by L matrices, row-major, each entry as two f64 (re, im).
/// A beamformer dump is
///   "FDBFBMF1" u32(rows) u32(cols) u32(count)
/// followed by `count` matrices in the same entry layout.

struct ChannelDump {
    TimeDomainChannel channel;
    int n_subcarriers = 0;
};

void write_channel_dump(const std::string& path, const TimeDomainChannel& td, int n_subcarriers);
ChannelDump read_channel_dump(const std::string& path);

void write_beamformer_dump(const std::string& path, const std::vector<CMatrix>& mats);
std::vector<CMatrix> read_beamformer_dump(const std::string& path);

} // namespace fdbf

#endif
