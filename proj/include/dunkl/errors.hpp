#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

enum class errc {
    zero_normal,
    duplicate_hyperplane,
    dimension_mismatch,
    bad_params,
    not_essential_or_reducible,
    non_positive_weight,
    length_mismatch,
    not_converged,
    not_positive_definite,
    lp_numerical_failure,
    not_feasible,
    wrong_dimension,
    bad_input,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::zero_normal: return "ZeroNormal";
        case errc::duplicate_hyperplane: return "DuplicateHyperplane";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::bad_params: return "BadParams";
        case errc::not_essential_or_reducible: return "NotEssentialOrReducible";
        case errc::non_positive_weight: return "NonPositiveWeight";
        case errc::length_mismatch: return "LengthMismatch";
        case errc::not_converged: return "NotConverged";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::lp_numerical_failure: return "LPNumericalFailure";
        case errc::not_feasible: return "NotFeasible";
        case errc::wrong_dimension: return "WrongDimension";
        case errc::bad_input: return "BadInput";
    }
    return "Unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace dunkl
