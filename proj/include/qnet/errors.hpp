#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnet {

// Base class for library failures. Precondition violations throw
// std::invalid_argument directly and are not part of this hierarchy.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Threshold requested on an edgeless (or otherwise spectrum-degenerate) graph.
class degenerate_graph_error : public error {
public:
    using error::error;
};

// Power iteration exceeded its iteration budget.
class no_convergence_error : public error {
public:
    no_convergence_error(const std::string& what, double residual)
        : error(what), residual(residual) {}
    double residual;
};

// Graph or config file violates the expected format. `line` is 1-based.
class malformed_file_error : public error {
public:
    malformed_file_error(const std::string& what, std::size_t line)
        : error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

class io_error : public error {
public:
    using error::error;
};

// Operation requested beyond a hard capability limit (e.g. exact Markov
// evolution past the tractable state-space size).
class too_large_error : public error {
public:
    using error::error;
};

// Experiment config is syntactically or semantically invalid. `key` names the
// offending entry when known.
class config_error : public error {
public:
    explicit config_error(const std::string& what, std::string key = "")
        : error(key.empty() ? what : what + " (key: " + key + ")"), key(std::move(key)) {}
    std::string key;
};

class insufficient_data_error : public error {
public:
    using error::error;
};

} // namespace qnet
