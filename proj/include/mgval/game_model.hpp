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

#ifndef MGVAL_GAME_MODEL_HPP_
#define MGVAL_GAME_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace mgval {

// Dense row-major real matrix. Rows index the maximizer's actions.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const std::vector<double>& data() const { return data_; }

  Matrix Transposed() const;
  std::vector<std::vector<double>> ToRows() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Payoffs of the two states plus the continuous-time rates. The discrete
// per-stage probabilities are always derived from the rates.
struct GameSpec {
  std::optional<std::string> name;
  Matrix matrix_s1;
  Matrix matrix_s2;
  double lambda1 = 0.0;  // rate s1 -> s2
  double lambda2 = 0.0;  // rate s2 -> s1
  double r = 1.0;        // discount rate

  // Blend p * s1 + (1 - p) * s2.
  Matrix Blend(double p) const;

  // Same game seen through p -> 1 - p: states and rates swapped.
  GameSpec Mirrored() const;
};

struct DerivedParams {
  double p_star = 0.0;       // lambda2 / (lambda1 + lambda2)
  double mu = 0.0;           // r / (lambda1 + lambda2)
  double lipschitz_u = 0.0;  // max |g(s1,a,b) - g(s2,a,b)|
  double max_payoff = 0.0;
  double min_payoff = 0.0;

  double total_rate() const;
  // Payoff range max - min, or 1 for constant games. Every absolute
  // tolerance in the library is expressed as a multiple of this.
  double scale() const;

  double lambda_sum = 0.0;
  double r = 0.0;
};

// Per-stage quantities of the game with time step 1/n.
struct DiscreteParams {
  double n = 0.0;
  double delta = 0.0;  // 1 - exp(-r/n)
  double pi1 = 0.0;    // 1 - exp(-lambda1/n)
  double pi2 = 0.0;    // 1 - exp(-lambda2/n)
};

struct ValidatedGame {
  GameSpec spec;
  DerivedParams params;
};

// Raw, unchecked game description, as read from a file or built in code.
struct RawGame {
  std::optional<std::string> name;
  std::vector<std::vector<double>> matrix_s1;
  std::vector<std::vector<double>> matrix_s2;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double r = 0.0;
};

// Checks shapes, finiteness and rates; throws ValidationError with a
// code identifying the first violated condition.
ValidatedGame ValidateSpec(const RawGame& raw);
DerivedParams DeriveParams(const GameSpec& spec);

DiscreteParams DiscreteStepParams(const GameSpec& spec, double n);

}  // namespace mgval

#endif  // MGVAL_GAME_MODEL_HPP_
