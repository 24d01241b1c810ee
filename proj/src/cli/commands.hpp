#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.hpp"
#include "pbrkit/assembly.hpp"
#include "pbrkit/error.hpp"

namespace pbrkit::cli {

/// Entry point shared by the binary and the tests. `args` excludes the
/// program name. Returns 0 on success, 1 on a domain failure, 2 on a usage or
/// configuration error; failures also print `error: code=<Code> message=<text>`
/// on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int exit_code_for(ErrorCode code);

/// Default pipes for a wall: the first cell of every row carries the riser
/// (cross at the bottom, tees in between, elbow at the top), all other cells
/// get a straight. A single row is all straights.
std::vector<PipeType> spine_pipes(const assembly::WallLayout& layout);

/// Seed from the flag, else io.seed, else $PBRKIT_SEED, else 1.
std::uint64_t resolve_seed(const std::string& flag_value, const ToolkitConfig& cfg);

struct SyntheticFrame {
    std::string name;
    double day = 0.0;
    double gain = 1.0;
    std::uint64_t seed = 0;
};

/// Days 1..days, `frames_per_day` each, gains cycling through the configured
/// list. Frame seeds derive from `seed` and the frame index.
std::vector<SyntheticFrame> synthetic_schedule(int days, const SyntheticSection& syn,
                                               std::uint64_t seed);

}  // namespace pbrkit::cli
