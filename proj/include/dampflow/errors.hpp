#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dampflow {

/// User or configuration problem (bad file, bad key, incompatible resume).
/// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The time stepper met a NaN/Inf coefficient. Carries the step and the
/// first offending mode. The CLI maps this to exit code 3.
struct BlowUpError : std::runtime_error {
    BlowUpError(std::uint64_t step_, int component_, std::size_t mode_, double time_)
        : std::runtime_error("blow-up at step " + std::to_string(step_) + " (t=" + std::to_string(time_) +
                             "): non-finite coefficient in component " + std::to_string(component_ + 1) +
                             " at mode index " + std::to_string(mode_)),
          step(step_),
          component(component_),
          mode_index(mode_),
          time(time_) {}

    std::uint64_t step;
    int component;
    std::size_t mode_index;
    double time;
};

}  // namespace dampflow
