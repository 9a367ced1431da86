// Copyright 2026 The mixsspt Authors
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

#ifndef MIXSSPT_LOG_VALUE_H
#define MIXSSPT_LOG_VALUE_H

#include <complex>
#include <span>
#include <vector>

namespace mixsspt {

/// A complex number stored as mantissa * exp(log_scale).
///
/// Products of many transfer matrices overflow doubles quickly, so every
/// partition function and correlator numerator is carried in this form.
/// A zero value has mantissa 0 and log_scale 0.
struct LogScaled {
    std::complex<double> mantissa{1.0, 0.0};
    double log_scale = 0.0;

    static LogScaled zero();
    static LogScaled one();
    /// exp(log_abs) * i^quarter_turns.
    static LogScaled from_log(double log_abs, int quarter_turns = 0);
    static LogScaled from_complex(std::complex<double> c);

    bool is_zero() const;
    double log_abs() const;
    double arg() const;
    std::complex<double> to_complex() const;
    /// Rescales so that |mantissa| is 1 (or the value is zero).
    LogScaled &normalize();

    LogScaled operator*(const LogScaled &other) const;
    LogScaled operator/(const LogScaled &other) const;
    LogScaled operator+(const LogScaled &other) const;
    LogScaled &operator*=(const LogScaled &other);
    LogScaled &operator+=(const LogScaled &other);
};

/// log(exp(a) + exp(b)), exact for infinite arguments.
double log_add_exp(double a, double b);

/// log(sum_i exp(terms[i])) using a max shift and compensated summation.
double log_sum_exp(std::span<const double> terms);

/// Neumaier compensated sum.
class NeumaierSum {
   public:
    void add(double x);
    double value() const;

   private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// log of the binomial coefficient C(n, k); -inf outside 0 <= k <= n.
double log_binomial(long long n, long long k);

/// k * log_x with the convention 0 * (-inf) = 0, so that 0^0 = 1.
double pow_log(long long k, double log_x);

}  // namespace mixsspt

#endif
