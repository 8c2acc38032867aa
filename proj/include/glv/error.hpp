// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace glv {

/// Error taxonomy shared by every module. The C API maps these onto status
/// codes and the CLI maps status codes onto exit codes.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kNoInverse,
  kInvalidChain,
  kPole,
  kQuadrature,
  kCoverage,
  kConfig,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NoInverseError : public Error {
 public:
  NoInverseError(std::int64_t x, std::int64_t m, std::int64_t g)
      : Error(ErrorCode::kNoInverse,
              "no inverse of " + std::to_string(x) + " modulo " +
                  std::to_string(m) + " (gcd=" + std::to_string(g) + ")"),
        gcd_(g) {}
  std::int64_t gcd() const noexcept { return gcd_; }

 private:
  std::int64_t gcd_;
};

/// Raised when an evaluation point sits on (or too close to) a pole.
/// `location` is the pole, `residue_re/im` the residue there when known.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double location, double residue_re,
            double residue_im, int factor_index = -1)
      : Error(ErrorCode::kPole, what),
        location_(location),
        residue_re_(residue_re),
        residue_im_(residue_im),
        factor_index_(factor_index) {}
  double location() const noexcept { return location_; }
  double residue_re() const noexcept { return residue_re_; }
  double residue_im() const noexcept { return residue_im_; }
  int factor_index() const noexcept { return factor_index_; }

 private:
  double location_;
  double residue_re_;
  double residue_im_;
  int factor_index_;
};

}  // namespace glv
