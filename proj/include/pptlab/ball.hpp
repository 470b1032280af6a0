#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pptlab/group.hpp"

namespace pptlab {

/// Word-metric ball, deduplicated by canonical form and sorted by
/// (word length, canonical key). `count_within(k)` gives |B(k)| for k <= radius.
struct Ball {
    std::vector<GroupElement> elements;
    std::vector<int> length;        // word length, aligned with elements
    std::vector<std::string> word;  // witness words when tracked, else empty
    int radius = 0;
    std::vector<int64_t> sizes;     // sizes[k] = |B(k)|

    int64_t count_within(int k) const { return sizes.at(static_cast<size_t>(k)); }
};

struct BallParams {
    int64_t budget = 2'000'000;
    bool track_words = false;
    std::vector<std::string> gen_names;  // aligned with the generators passed in
};

/// BFS over <gens u gens^-1>, exact canonical dedup. Throws ResourceError when
/// the element budget is exceeded.
Ball enumerate_ball(const std::vector<GroupElement>& gens, int radius,
                    const BallParams& params = {});

/// Names for the documented generating sets ("a","t" / letters / "e1"..).
std::vector<std::string> standard_generator_names(const GroupInstance& inst);

}  // namespace pptlab
