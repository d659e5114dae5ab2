#pragma once

#include <stdexcept>
#include <string>

namespace isocycle {

enum class errc {
    composite_modulus,
    reducible_polynomial,
    division_by_zero,
    malformed_literal,
    missing_file,
    parse_error,
    degree_mismatch,
    invalid_unit_class,
    not_positive_definite,
    discriminant_mismatch,
    invalid_discriminant,
    not_split,
    seed_not_found,
    count_mismatch,
    hypothesis_failure,
    case_mismatch,
    unsupported,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
  public:
    error(errc c, const std::string& msg)
        : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace isocycle
