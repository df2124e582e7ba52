#include "sigma/matching.hpp"

namespace sigma {

bool Matching::commit(EntityId i, EntityId j, double score, std::size_t iteration)
{
    if (forward_.at(i) != kNoEntity || backward_.at(j) != kNoEntity) {
        return false;
    }
    forward_[i] = j;
    backward_[j] = i;
    trace_.push_back({iteration, {i, j}, score});
    return true;
}

}  // namespace sigma
