// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace bnchain {

enum class ErrorCode {
    invalid_parameter,
    decode_mismatch,
    infeasible_degree,
    feasibility,
    not_applicable,
    construction_bug,
    too_large,
    search_failure,
    invalid_profile,
    cannot_account,
    parse_error,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(error_name(c)) + ": " + msg), code_(c) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace bnchain
