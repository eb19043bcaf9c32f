#ifndef BADCODES_BEC_BP_HPP
#define BADCODES_BEC_BP_HPP

#include <vector>

#include "badcodes/ensemble.hpp"
#include "badcodes/erasure.hpp"

namespace badcodes {

// Message-passing record for one BP run. Per-iteration message arrays are
// kept only when requested; decisions are always present.
struct BpTrace {
    std::vector<std::vector<ErasureSymbol>> rightbound;  // iteration 0..t-1, per edge
    std::vector<std::vector<ErasureSymbol>> leftbound;   // iteration 1..t, per edge
    ErasureWord decisions;
};

// BP over the BEC: t rightbound/leftbound rounds, then final decisions.
// An unresolved position stays erased.
BpTrace bp_decode(const TannerGraph& g, const ErasureWord& y, int t,
                  bool keep_trace = false);

// Check-node peeling to a fixed point. Same output as bp_decode with t -> inf.
ErasureWord peeling_decode(const TannerGraph& g, const ErasureWord& y);

// MAP erasure decoding by GF(2) elimination on the erased positions.
// A position becomes a bit iff the system determines it uniquely. Throws
// when the revealed bits violate parity with no erased slack.
ErasureWord map_erase_decode(const TannerGraph& g, const ErasureWord& y);

} // namespace badcodes

#endif
