#pragma once

#include <stdexcept>
#include <string>

namespace mcsp {

enum class ErrorKind {
    empty_input,       // instance text has fewer than two non-empty lines
    length_mismatch,   // |s1| != |s2|
    not_related,       // letter multisets of s1 and s2 differ
    invalid_parameter, // out-of-range argument (n, alphabet size, ...)
    parse_error,       // malformed instance or model file
    io_error,          // filesystem / stream failure
    name_collision,    // duplicate variable name in a model (internal bug)
    infeasible_input,  // vector violates the model constraints beyond tolerance
    mass_imbalance,    // sum(y1) != sum(y2) for some substring beyond tolerance
    iteration_limit,   // LP solver hit its iteration cap
    infeasible_model,  // LP phase I ended with positive artificial mass
    too_large,         // brute force guard tripped
    internal,          // invariant broken; always a bug
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

} // namespace mcsp
