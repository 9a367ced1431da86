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

#include "mixsspt/log_value.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixsspt {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogScaled LogScaled::zero() {
    return LogScaled{{0.0, 0.0}, 0.0};
}

LogScaled LogScaled::one() {
    return LogScaled{{1.0, 0.0}, 0.0};
}

LogScaled LogScaled::from_log(double log_abs, int quarter_turns) {
    if (log_abs == kNegInf) {
        return zero();
    }
    static const std::complex<double> kTurns[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return LogScaled{kTurns[((quarter_turns % 4) + 4) % 4], log_abs};
}

LogScaled LogScaled::from_complex(std::complex<double> c) {
    LogScaled r{c, 0.0};
    return r.normalize();
}

bool LogScaled::is_zero() const {
    return mantissa == std::complex<double>(0.0, 0.0);
}

double LogScaled::log_abs() const {
    if (is_zero()) {
        return kNegInf;
    }
    return std::log(std::abs(mantissa)) + log_scale;
}

double LogScaled::arg() const {
    return std::arg(mantissa);
}

std::complex<double> LogScaled::to_complex() const {
    return mantissa * std::exp(log_scale);
}

LogScaled &LogScaled::normalize() {
    double a = std::abs(mantissa);
    if (a == 0.0 || !std::isfinite(a)) {
        if (a == 0.0) {
            log_scale = 0.0;
        }
        return *this;
    }
    mantissa /= a;
    log_scale += std::log(a);
    return *this;
}

LogScaled LogScaled::operator*(const LogScaled &other) const {
    LogScaled r{mantissa * other.mantissa, log_scale + other.log_scale};
    if (r.is_zero()) {
        return zero();
    }
    return r;
}

LogScaled LogScaled::operator/(const LogScaled &other) const {
    LogScaled r{mantissa / other.mantissa, log_scale - other.log_scale};
    if (r.is_zero()) {
        return zero();
    }
    return r;
}

LogScaled LogScaled::operator+(const LogScaled &other) const {
    if (is_zero()) {
        return other;
    }
    if (other.is_zero()) {
        return *this;
    }
    double m = std::max(log_scale, other.log_scale);
    std::complex<double> s =
        mantissa * std::exp(log_scale - m) + other.mantissa * std::exp(other.log_scale - m);
    LogScaled r{s, m};
    if (r.is_zero()) {
        return zero();
    }
    return r.normalize();
}

LogScaled &LogScaled::operator*=(const LogScaled &other) {
    *this = *this * other;
    return *this;
}

LogScaled &LogScaled::operator+=(const LogScaled &other) {
    *this = *this + other;
    return *this;
}

double log_add_exp(double a, double b) {
    if (a == kNegInf) {
        return b;
    }
    if (b == kNegInf) {
        return a;
    }
    double m = std::max(a, b);
    return m + std::log1p(std::exp(-std::abs(a - b)));
}

double log_sum_exp(std::span<const double> terms) {
    double m = kNegInf;
    for (double t : terms) {
        m = std::max(m, t);
    }
    if (m == kNegInf || !std::isfinite(m)) {
        return m;
    }
    NeumaierSum acc;
    for (double t : terms) {
        if (t != kNegInf) {
            acc.add(std::exp(t - m));
        }
    }
    return m + std::log(acc.value());
}

void NeumaierSum::add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        compensation_ += (sum_ - t) + x;
    } else {
        compensation_ += (x - t) + sum_;
    }
    sum_ = t;
}

double NeumaierSum::value() const {
    return sum_ + compensation_;
}

double log_binomial(long long n, long long k) {
    if (k < 0 || k > n || n < 0) {
        return kNegInf;
    }
    if (k == 0 || k == n) {
        return 0.0;
    }
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

double pow_log(long long k, double log_x) {
    if (k == 0) {
        return 0.0;
    }
    return static_cast<double>(k) * log_x;
}

}  // namespace mixsspt
