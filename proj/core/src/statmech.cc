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

#include "mixsspt/statmech.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mixsspt {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;
using cd = std::complex<double>;
}  // namespace

void require_rate(double p, const char *what) {
    if (!(p >= 0.0 && p <= 0.5)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1/2]");
    }
}

double beta_from_p(double p) {
    require_rate(p);
    if (p == 0.5) {
        return kInf;
    }
    return -0.5 * std::log1p(-2.0 * p);
}

double tanh_beta_from_p(double p) {
    require_rate(p);
    return p / (1.0 - p);
}

IsingParams IsingParams::from_p(double p, size_t n_sites) {
    return IsingParams{beta_from_p(p), n_sites};
}

bool IsingParams::infinite() const {
    return std::isinf(beta);
}

ErrorPattern::ErrorPattern(BitVector bits) : bits_(std::move(bits)), weight_(bits_.popcount()) {
}

ErrorPattern ErrorPattern::from_spin_subset(const BitVector &subset) {
    size_t n = subset.size();
    if (subset.popcount() % 2 != 0) {
        throw std::invalid_argument("a ring spin subset must have even size");
    }
    // Bond j joins spins j and j + 1; it carries a wall when an odd number
    // of subset spins lie in 0..j.
    BitVector e(n);
    bool parity = false;
    for (size_t j = 0; j < n; j++) {
        parity ^= subset.get(j);
        e.set(j, parity);
    }
    return ErrorPattern(std::move(e));
}

double log_ising_correlator(double tanh_beta, size_t n_sites, size_t weight) {
    if (weight > n_sites) {
        throw std::invalid_argument("error weight exceeds ring size");
    }
    double lt = std::log(tanh_beta);
    long long n = static_cast<long long>(n_sites);
    long long k = static_cast<long long>(weight);
    double num = log_add_exp(pow_log(n - k, lt), pow_log(k, lt));
    double den = log_add_exp(0.0, pow_log(n, lt));
    return num - den;
}

double ising_correlator_closed(const IsingParams &params, const ErrorPattern &e) {
    if (e.size() != params.n_sites) {
        throw std::invalid_argument("error pattern length must equal n_sites");
    }
    if (params.infinite()) {
        return 1.0;
    }
    return std::exp(log_ising_correlator(std::tanh(params.beta), params.n_sites, e.weight()));
}

LogScaled ising_partition_closed(double beta, size_t n_sites) {
    double t = std::tanh(beta);
    double lc = std::log(2.0 * std::cosh(beta));
    double value = static_cast<double>(n_sites) * lc + std::log1p(std::exp(pow_log(n_sites, std::log(t))));
    return LogScaled::from_log(value);
}

TransferOperator TransferOperator::ising(double beta) {
    TransferOperator t;
    t.kind = TransferKind::ising;
    t.entries.resize(2, 2);
    t.entries << std::exp(beta), std::exp(-beta), std::exp(-beta), std::exp(beta);
    return t;
}

TransferOperator TransferOperator::nonhermitian_x(double beta) {
    const double q = std::numbers::pi / 4.0;
    auto e = [](double re, double im) { return std::exp(cd(re, im)); };
    TransferOperator t;
    t.kind = TransferKind::nonhermitian_X;
    t.entries = Eigen::MatrixXcd::Zero(4, 4);
    t.entries(0, 0) = e(beta, -q);
    t.entries(0, 1) = e(-beta, -2 * q);
    t.entries(1, 2) = e(beta, q);
    t.entries(1, 3) = e(-beta, 2 * q);
    t.entries(2, 0) = e(-beta, -2 * q);
    t.entries(2, 1) = e(beta, -3 * q);
    t.entries(3, 2) = e(-beta, 2 * q);
    t.entries(3, 3) = e(beta, 3 * q);
    return t;
}

TransferOperator TransferOperator::nonhermitian_z(double beta) {
    TransferOperator t;
    t.kind = TransferKind::nonhermitian_Z;
    t.entries.resize(2, 2);
    t.entries << std::exp(beta), 1.0, 1.0, -std::exp(-beta);
    return t;
}

namespace {

double rescale(Eigen::MatrixXcd &m) {
    double s = m.cwiseAbs().maxCoeff();
    if (s == 0.0) {
        return 0.0;
    }
    m /= s;
    return std::log(s);
}

}  // namespace

LogScaled log_trace_power(const Eigen::MatrixXcd &m, size_t k) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("trace power needs a square matrix");
    }
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    Eigen::MatrixXcd base = m;
    double result_scale = 0.0;
    double base_scale = rescale(base);
    while (k) {
        if (k & 1) {
            result = (result * base).eval();
            result_scale += base_scale + rescale(result);
        }
        k >>= 1;
        if (k) {
            base = (base * base).eval();
            base_scale = 2.0 * base_scale + rescale(base);
        }
    }
    LogScaled out = LogScaled::from_complex(result.trace());
    if (!out.is_zero()) {
        out.log_scale += result_scale;
    }
    return out;
}

LogScaled TransferOperator::trace_power(size_t k) const {
    return log_trace_power(entries, k);
}

namespace {

// log(r + 1) and log(r - 1) for r = sqrt(2 e^{4 beta} - 1).
std::pair<double, double> x_roots(double beta) {
    double log_r = 2.0 * beta + 0.5 * std::log(2.0 - std::exp(-4.0 * beta));
    double r_inv = std::exp(-log_r);
    return {log_r + std::log1p(r_inv), log_r + std::log1p(-r_inv)};
}

// log |e^{2b} - 1 +- q| for q = sqrt(e^{4b} + 6 e^{2b} + 1).
std::pair<double, double> z_roots(double beta) {
    double u = std::exp(-2.0 * beta);
    double s = std::sqrt(1.0 + 6.0 * u + u * u);
    return {2.0 * beta + std::log(1.0 - u + s), 2.0 * beta + std::log(8.0 * u / (s + 1.0 - u))};
}

void require_finite_beta(double beta) {
    if (!(beta >= 0.0) || std::isinf(beta)) {
        throw std::invalid_argument("closed forms need finite nonnegative beta");
    }
}

}  // namespace

LogScaled partition_x_closed(double beta, size_t n) {
    require_finite_beta(beta);
    auto [lp, lm] = x_roots(beta);
    long long two_n = 2 * static_cast<long long>(n);
    double sum = log_add_exp(pow_log(two_n, lp), pow_log(two_n, lm));
    double dn = static_cast<double>(n);
    return LogScaled::from_log(kLn2 + sum - dn * kLn2 - 2.0 * beta * dn, -static_cast<int>(n % 4));
}

LogScaled partition_z_closed(double beta, size_t n) {
    require_finite_beta(beta);
    auto [lp, lm] = z_roots(beta);
    long long two_n = 2 * static_cast<long long>(n);
    double sum = log_add_exp(pow_log(two_n, lp), pow_log(two_n, lm));
    double dn = static_cast<double>(n);
    return LogScaled::from_log(sum - 2.0 * dn * kLn2 - 2.0 * beta * dn);
}

double log_c_x_closed(double beta, size_t n) {
    require_finite_beta(beta);
    auto [lp, lm] = x_roots(beta);
    long long two_n = 2 * static_cast<long long>(n);
    double sum = log_add_exp(pow_log(two_n, lp), pow_log(two_n, lm));
    double dn = static_cast<double>(n);
    return (3.0 * dn - 1.0) * kLn2 + 4.0 * beta * dn - sum;
}

double log_c_z_closed(double beta, size_t n) {
    require_finite_beta(beta);
    auto [lp, lm] = z_roots(beta);
    long long two_n = 2 * static_cast<long long>(n);
    double sum = log_add_exp(pow_log(two_n, lp), pow_log(two_n, lm));
    double dn = static_cast<double>(n);
    return 4.0 * dn * kLn2 + 4.0 * beta * dn - sum;
}

std::string noise_kind_name(NoiseKind kind) {
    switch (kind) {
        case NoiseKind::X:
            return "X";
        case NoiseKind::Z:
            return "Z";
        case NoiseKind::Mixed:
            return "mixed";
    }
    return "?";
}

NoiseKind parse_noise_kind(const std::string &name) {
    if (name == "X" || name == "x") {
        return NoiseKind::X;
    }
    if (name == "Z" || name == "z") {
        return NoiseKind::Z;
    }
    if (name == "mixed") {
        return NoiseKind::Mixed;
    }
    throw std::invalid_argument("unknown noise kind '" + name + "' (expected X, Z or mixed)");
}

ChainModel::ChainModel(NoiseKind kind, std::vector<double> rates) : kind_(kind), rates_(std::move(rates)) {
    if (rates_.size() < 4 || rates_.size() % 2 != 0) {
        throw std::invalid_argument("chain length must be even and at least 4");
    }
    betas_.reserve(rates_.size());
    for (double p : rates_) {
        betas_.push_back(beta_from_p(p));
    }
}

ChainModel ChainModel::x_noise(size_t two_n, double p) {
    return ChainModel(NoiseKind::X, std::vector<double>(two_n, p));
}

ChainModel ChainModel::z_noise(size_t two_n, double p) {
    return ChainModel(NoiseKind::Z, std::vector<double>(two_n, p));
}

ChainModel ChainModel::mixed(size_t two_n, double p_a, double p_b) {
    std::vector<double> rates(two_n);
    for (size_t j = 0; j < two_n; j++) {
        rates[j] = (j % 2 == 0) ? p_a : p_b;
    }
    return ChainModel(NoiseKind::Mixed, std::move(rates));
}

bool ChainModel::uniform() const {
    return std::all_of(rates_.begin(), rates_.end(), [&](double p) { return p == rates_[0]; });
}

double ChainModel::log_weight_all_plus() const {
    double s = 0.0;
    for (double b : betas_) {
        s += b;
    }
    return s;
}

ChainKernel::ChainKernel(const ChainModel &model) : two_n_(model.two_n()) {
    const auto &betas = model.betas();
    for (double b : betas) {
        if (std::isinf(b)) {
            throw std::domain_error("transfer kernel needs p < 1/2 on every site");
        }
    }
    weights_.resize(two_n_);
    for (size_t j = 0; j < two_n_; j++) {
        for (int idx = 0; idx < 8; idx++) {
            int a = idx & 1, b = (idx >> 1) & 1, c = (idx >> 2) & 1;
            double sa = a ? -1.0 : 1.0;
            double sc = c ? -1.0 : 1.0;
            double w = (a && b) ? -1.0 : 1.0;
            if (model.x_type()) {
                w *= std::exp(betas[(j + 1) % two_n_] * sa * sc);
            } else {
                w *= std::exp(betas[j] * sa);
            }
            weights_[j][idx] = w;
        }
    }
}

void ChainKernel::step(const Block &in, Block &out, size_t j, bool insert) const {
    const auto &w = weights_[j];
    for (int s = 0; s < 4; s++) {
        const double *row = &in[4 * s];
        double *dst = &out[4 * s];
        for (int bc = 0; bc < 4; bc++) {
            int b = bc & 1, c = bc >> 1;
            // Previous pair (a, b) has index a | b << 1.
            double plus = row[0 | b << 1] * w[0 | b << 1 | c << 2];
            double minus = row[1 | b << 1] * w[1 | b << 1 | c << 2];
            dst[bc] = insert ? plus - minus : plus + minus;
        }
    }
}

namespace {

// Exact power-of-two rescaling; returns the exponent removed.
int renormalize(std::array<double, 16> &v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    if (m == 0.0) {
        return 0;
    }
    int e;
    std::frexp(m, &e);
    for (double &x : v) {
        x = std::ldexp(x, -e);
    }
    return e;
}

}  // namespace

LogScaled ChainKernel::numerator(const BitVector &subset) const {
    if (subset.size() != two_n_) {
        throw std::invalid_argument("subset length must equal the chain length");
    }
    Block v{};
    for (int s = 0; s < 4; s++) {
        v[5 * s] = 1.0;
    }
    Block tmp;
    long long exponent = 0;
    for (size_t j = 0; j < two_n_; j++) {
        step(v, tmp, j, subset.get(j));
        v = tmp;
        if ((j & 7) == 7) {
            exponent += renormalize(v);
        }
    }
    double trace = v[0] + v[5] + v[10] + v[15];
    if (trace == 0.0) {
        return LogScaled::zero();
    }
    LogScaled out = LogScaled::from_complex(cd(trace, 0.0));
    out.log_scale += static_cast<double>(exponent) * kLn2;
    return out;
}

double ChainKernel::log_abs_numerator(const BitVector &subset) const {
    return numerator(subset).log_abs();
}

LogScaled ChainKernel::partition() const {
    return numerator(BitVector(two_n_));
}

void ChainKernel::enumerate(size_t j, const Block &state, double log_scale, std::vector<double> &log_terms) const {
    if (j == two_n_) {
        double trace = state[0] + state[5] + state[10] + state[15];
        log_terms.push_back(trace == 0.0 ? -kInf : std::log(std::abs(trace)) + log_scale);
        return;
    }
    for (bool insert : {false, true}) {
        Block next;
        step(state, next, j, insert);
        double scale = log_scale;
        if ((j & 7) == 7) {
            scale += renormalize(next) * kLn2;
        }
        enumerate(j + 1, next, scale, log_terms);
    }
}

LogScaled ChainKernel::sum_abs_numerators() const {
    if (two_n_ > 24) {
        throw std::invalid_argument("subset enumeration is limited to 24 sites");
    }
    Block v{};
    for (int s = 0; s < 4; s++) {
        v[5 * s] = 1.0;
    }
    std::vector<double> terms;
    terms.reserve(size_t{1} << two_n_);
    enumerate(0, v, 0.0, terms);
    return LogScaled::from_log(log_sum_exp(terms));
}

double nonhermitian_correlator(const ChainModel &model, const BitVector &subset) {
    ChainKernel kernel(model);
    LogScaled ratio = kernel.numerator(subset) / kernel.partition();
    return ratio.to_complex().real();
}

double normalization_constant(const ChainModel &model) {
    size_t n = model.two_n() / 2;
    if (model.uniform()) {
        double beta = model.betas()[0];
        return model.x_type() ? log_c_x_closed(beta, n) : log_c_z_closed(beta, n);
    }
    ChainKernel kernel(model);
    LogScaled z = kernel.partition();
    if (!(z.mantissa.real() > 0.0)) {
        throw std::domain_error("normalization constant is not positive");
    }
    return static_cast<double>(model.two_n()) * kLn2 + model.log_weight_all_plus() - z.log_abs();
}

double normalization_constant_enum(const ChainModel &model) {
    if (model.two_n() > 20) {
        throw std::invalid_argument("enumeration is limited to 20 sites");
    }
    ChainKernel kernel(model);
    LogScaled total = LogScaled::zero();
    BitVector subset(model.two_n());
    size_t count = size_t{1} << model.two_n();
    for (size_t mask = 0; mask < count; mask++) {
        for (size_t j = 0; j < model.two_n(); j++) {
            subset.set(j, (mask >> j) & 1);
        }
        total += kernel.numerator(subset);
    }
    LogScaled c = total / kernel.partition();
    if (!(c.mantissa.real() > 0.0)) {
        throw std::domain_error("enumerated normalization constant is not positive");
    }
    return c.log_abs();
}

}  // namespace mixsspt
