// SPDX-License-Identifier: Apache-2.0
#include "glv/arch_params.hpp"

#include <cmath>
#include <sstream>

#include "glv/error.hpp"

namespace glv {

void ArchParams::validate() const {
  if (lambda.size() < 1 || lambda.size() != delta.size())
    throw Error(ErrorCode::kInvalidArgument,
                "lambda and delta must be non-empty and of equal length");
  std::complex<double> s = 0;
  int d = 0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    s += lambda[j];
    if (delta[j] != 0 && delta[j] != 1)
      throw Error(ErrorCode::kInvalidArgument, "delta entries must be 0 or 1");
    d += delta[j];
  }
  if (std::abs(s) > 1e-12)
    throw Error(ErrorCode::kInvalidArgument, "lambda must sum to zero");
  if (d % 2 != 0)
    throw Error(ErrorCode::kInvalidArgument, "delta must have even sum");
  if (!singular_ok && is_singular())
    throw Error(ErrorCode::kInvalidArgument,
                "singular parameter: two lambda_j differ by an integer "
                "(set singular_ok to accept)");
}

bool ArchParams::is_singular() const {
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j) {
      std::complex<double> diff = lambda[i] - lambda[j];
      if (std::abs(diff.imag()) < 1e-12 &&
          std::abs(diff.real() - std::round(diff.real())) < 1e-12)
        return true;
    }
  return false;
}

ArchParams ArchParams::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != lambda.size())
    throw Error(ErrorCode::kInvalidArgument, "permutation has wrong length");
  ArchParams out = *this;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] >= perm.size() || seen[perm[i]])
      throw Error(ErrorCode::kInvalidArgument, "not a permutation");
    seen[perm[i]] = true;
    out.lambda[i] = lambda[perm[i]];
    out.delta[i] = delta[perm[i]];
  }
  return out;
}

ArchParams ArchParams::dominant_last() const {
  std::size_t best = 0;
  for (std::size_t j = 1; j < lambda.size(); ++j)
    if (lambda[j].real() > lambda[best].real()) best = j;
  std::vector<std::size_t> perm;
  for (std::size_t j = 0; j < lambda.size(); ++j)
    if (j != best) perm.push_back(j);
  perm.push_back(best);
  return permuted(perm);
}

std::string ArchParams::to_string() const {
  std::ostringstream os;
  os.precision(12);
  os << "lambda=(";
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    if (j) os << ",";
    os << lambda[j].real();
    if (lambda[j].imag() != 0) os << (lambda[j].imag() > 0 ? "+" : "") << lambda[j].imag() << "i";
  }
  os << ") delta=(";
  for (std::size_t j = 0; j < delta.size(); ++j) os << (j ? "," : "") << delta[j];
  os << ")";
  return os.str();
}

}  // namespace glv
