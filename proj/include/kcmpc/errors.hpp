#pragma once

#include <stdexcept>
#include <string>

namespace kcmpc {

// Maps to CLI exit code 1.
struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A simulated machine exceeded its memory or message budget. Exit code 2.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Coarse OPT estimator failed even after one reseed. Exit code 3.
struct estimator_error : std::runtime_error {
    explicit estimator_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace kcmpc
