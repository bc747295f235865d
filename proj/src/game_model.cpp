// Copyright 2026 The mgval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mgval/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mgval/common.hpp"

namespace mgval {
namespace {

using Code = ValidationError::Code;

Matrix CheckedMatrix(const std::vector<std::vector<double>>& rows,
                     const char* label) {
  if (rows.empty() || rows.front().empty()) {
    throw ValidationError(Code::kEmptyMatrix,
                          std::string(label) + ": matrix must be at least 1x1");
  }
  const std::size_t cols = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      std::ostringstream msg;
      msg << label << ": row " << i << " has " << rows[i].size()
          << " entries, expected " << cols;
      throw ValidationError(Code::kRaggedMatrix, msg.str());
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!std::isfinite(rows[i][j])) {
        std::ostringstream msg;
        msg << label << ": non-finite entry at (" << i << ", " << j << ")";
        throw ValidationError(Code::kNonFinite, msg.str());
      }
    }
  }
  return Matrix::FromRows(rows);
}

}  // namespace

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i].at(j);
  }
  return m;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

std::vector<std::vector<double>> Matrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  }
  return out;
}

Matrix GameSpec::Blend(double p) const {
  Matrix m(matrix_s1.rows(), matrix_s1.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      m(i, j) = p * matrix_s1(i, j) + (1.0 - p) * matrix_s2(i, j);
    }
  }
  return m;
}

GameSpec GameSpec::Mirrored() const {
  GameSpec m = *this;
  std::swap(m.matrix_s1, m.matrix_s2);
  std::swap(m.lambda1, m.lambda2);
  if (name) m.name = *name + " (mirrored)";
  return m;
}

double DerivedParams::total_rate() const { return lambda_sum; }

double DerivedParams::scale() const {
  const double range = max_payoff - min_payoff;
  return range > 0.0 ? range : 1.0;
}

DerivedParams DeriveParams(const GameSpec& spec) {
  DerivedParams d;
  d.lambda_sum = spec.lambda1 + spec.lambda2;
  d.r = spec.r;
  d.p_star = spec.lambda2 / d.lambda_sum;
  d.mu = spec.r / d.lambda_sum;
  const auto& a = spec.matrix_s1.data();
  const auto& b = spec.matrix_s2.data();
  d.max_payoff = std::max(*std::max_element(a.begin(), a.end()),
                          *std::max_element(b.begin(), b.end()));
  d.min_payoff = std::min(*std::min_element(a.begin(), a.end()),
                          *std::min_element(b.begin(), b.end()));
  for (std::size_t k = 0; k < a.size(); ++k) {
    d.lipschitz_u = std::max(d.lipschitz_u, std::abs(a[k] - b[k]));
  }
  return d;
}

ValidatedGame ValidateSpec(const RawGame& raw) {
  GameSpec spec;
  spec.name = raw.name;
  spec.matrix_s1 = CheckedMatrix(raw.matrix_s1, "matrix_s1");
  spec.matrix_s2 = CheckedMatrix(raw.matrix_s2, "matrix_s2");
  if (spec.matrix_s1.rows() != spec.matrix_s2.rows() ||
      spec.matrix_s1.cols() != spec.matrix_s2.cols()) {
    std::ostringstream msg;
    msg << "dimension mismatch: matrix_s1 is " << spec.matrix_s1.rows() << "x"
        << spec.matrix_s1.cols() << " but matrix_s2 is "
        << spec.matrix_s2.rows() << "x" << spec.matrix_s2.cols();
    throw ValidationError(Code::kDimensionMismatch, msg.str());
  }
  for (auto [value, label] : {std::pair{raw.lambda1, "lambda1"},
                              std::pair{raw.lambda2, "lambda2"},
                              std::pair{raw.r, "r"}}) {
    if (!std::isfinite(value)) {
      throw ValidationError(Code::kNonFinite,
                            std::string(label) + " must be finite");
    }
  }
  if (raw.lambda1 < 0.0 || raw.lambda2 < 0.0) {
    throw ValidationError(Code::kNegativeRate,
                          "transition rates must be nonnegative");
  }
  if (raw.lambda1 + raw.lambda2 <= 0.0) {
    throw ValidationError(Code::kDegenerateChain,
                          "degenerate chain: lambda1 + lambda2 must be > 0");
  }
  if (raw.r <= 0.0) {
    throw ValidationError(Code::kNonpositiveDiscount,
                          "discount rate r must be positive");
  }
  spec.lambda1 = raw.lambda1;
  spec.lambda2 = raw.lambda2;
  spec.r = raw.r;
  return {spec, DeriveParams(spec)};
}

DiscreteParams DiscreteStepParams(const GameSpec& spec, double n) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError(Code::kOutOfRange, "n must be a positive real");
  }
  DiscreteParams d;
  d.n = n;
  d.delta = -std::expm1(-spec.r / n);
  d.pi1 = -std::expm1(-spec.lambda1 / n);
  d.pi2 = -std::expm1(-spec.lambda2 / n);
  return d;
}

}  // namespace mgval
