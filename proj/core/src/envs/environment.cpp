#include "nmf/environment.hpp"

#include <string>

#include "nmf/errors.hpp"

namespace nmf {

void EpisodeState::check_step(ActionId action, int num_actions) const {
    if (!started_) throw EnvironmentError("step called before reset");
    if (done_) throw EnvironmentError("step called after the episode ended; call reset first");
    if (action < 0 || action >= num_actions) {
        throw EnvironmentError("action " + std::to_string(action) + " out of range [0, " +
                               std::to_string(num_actions) + ")");
    }
}

}  // namespace nmf
