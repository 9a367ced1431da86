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

// Acceptance suite. `mixsspt_acceptance --criterion N` evaluates one
// criterion and prints a single line "PASS criterion N: ..." or
// "FAIL criterion N: ...". Tolerances are fixed below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mixsspt/cluster.h"
#include "mixsspt/dense.h"
#include "mixsspt/experiment.h"
#include "mixsspt/fidelity.h"
#include "mixsspt/fixtures.h"
#include "mixsspt/mpdo.h"
#include "mixsspt/negativity.h"
#include "mixsspt/plaquette.h"
#include "mixsspt/statmech.h"

using namespace mixsspt;

namespace {

constexpr double kOracleTol = 1e-10;
constexpr double kDecayRelTol = 0.01;
constexpr double kSigmas = 3.0;
constexpr double kZNoiseCeiling = 0.2;
constexpr double kTransferTol = 1e-8;
constexpr double kTauTol = 1e-12;
constexpr uint64_t kFig3Samples = 10000000;
constexpr uint64_t kSoundnessSamples = 200000;

const double kLn2 = std::log(2.0);
const double kGrid[] = {0.0, 0.1, 0.25, 0.4, 0.5};

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string first_failure;

    void check(bool ok, const std::string &what) {
        if (!ok && pass) {
            pass = false;
            first_failure = what;
        }
    }
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    return buf;
}

const std::vector<FixtureRecord> &corpus() {
    static const std::vector<FixtureRecord> records =
        load_fixtures(std::string(MIXSSPT_FIXTURE_DIR) + "/dense_oracle.json");
    return records;
}

const FixtureRecord &fixture(const std::string &quantity,
                             const std::vector<std::pair<std::string, std::string>> &params) {
    for (const auto &r : corpus()) {
        if (r.quantity == quantity && r.params == params) {
            return r;
        }
    }
    FixtureRecord probe{quantity, params};
    throw std::out_of_range("no fixture " + probe.key());
}

DenseOperator noisy_cluster(size_t two_n, const std::vector<double> &rates, char pauli) {
    DenseOperator rho = DenseOperator::pure(densify(build_cluster_1d(two_n)));
    std::vector<std::pair<PauliOperator, double>> ch;
    auto kraus = onsite_kraus(two_n, pauli);
    for (size_t q = 0; q < two_n; q++) {
        ch.push_back({kraus[q], rates[q]});
    }
    return apply_pauli_channels(rho, ch);
}

McConfig mc_config(uint64_t samples, uint64_t seed) {
    McConfig c;
    c.n_samples = samples;
    c.seed = seed;
    return c;
}

// Fidelity correlator against the frozen and a freshly built dense oracle.
Outcome criterion_1() {
    Outcome o;
    double worst = 0.0;
    size_t count = 0;
    for (size_t two_n : {4, 6, 8}) {
        for (double p : kGrid) {
            DenseOperator rho = noisy_cluster(two_n, std::vector<double>(two_n, p), 'X');
            for (size_t sep : {2, 4}) {
                double exact = fc_1d_exact(two_n / 2, p, sep).value;
                PauliOperator op =
                    sep == two_n ? PauliOperator(two_n) : ChargedOperatorPair::z_pair(two_n, 0, sep).op;
                double fresh = fidelity_correlator_dense(rho, op);
                double frozen = fixture("fidelity_correlator_dense", {{"two_n", std::to_string(two_n)},
                                                                      {"p", format_double(p)},
                                                                      {"sep", std::to_string(sep)}})
                                    .value;
                double d = std::max(std::abs(exact - fresh), std::abs(exact - frozen));
                worst = std::max(worst, d);
                o.check(d <= kOracleTol, "two_n=" + std::to_string(two_n) + " p=" + fmt(p) + " sep=" +
                                             std::to_string(sep));
                count++;
            }
        }
    }
    o.detail = std::to_string(count) + " points, max |exact - dense| = " + fmt(worst);
    return o;
}

// F = 1 exactly at p = 1/2.
Outcome criterion_2() {
    Outcome o;
    size_t count = 0;
    for (size_t n = 2; n <= 1024; n *= 2) {
        for (size_t sep : {size_t{2}, n, 2 * n, n + (n % 2)}) {
            if (sep < 2 || sep > 2 * n || sep % 2) {
                continue;
            }
            FidelityResult r = fc_1d_exact(n, 0.5, sep);
            o.check(r.value == 1.0 && r.log_value == 0.0, "N=" + std::to_string(n) + " sep=" + std::to_string(sep));
            count++;
        }
    }
    o.detail = std::to_string(count) + " (N, sep) points at p=0.5";
    return o;
}

// -log F(sep=N) / N at N = 1024 against the inverse decay length.
Outcome criterion_3() {
    Outcome o;
    const size_t n = 1024;
    std::ostringstream d;
    for (double p : {0.1, 0.25, 0.4}) {
        double slope = -fc_1d_exact(n, p, n).log_value / static_cast<double>(n);
        double inv_xi = 1.0 / fc_decay_length(p);
        double rel = std::abs(slope / inv_xi - 1.0);
        o.check(rel <= kDecayRelTol, "p=" + fmt(p) + " ratio " + fmt(slope / inv_xi));
        d << "p=" << fmt(p) << " ratio=" << fmt(slope / inv_xi) << " ";
    }
    o.detail = d.str() + "(tol " + fmt(kDecayRelTol) + ")";
    return o;
}

// Figure 2 sweep: N = 2..1024, curves ordered in N and pinned at (1/2, 1).
Outcome criterion_4() {
    Outcome o;
    ReproduceOptions opt;
    ExperimentConfig c = figure_config(opt);
    std::vector<ResultRecord> recs = run_experiment(c);
    std::map<double, std::vector<std::pair<double, double>>> by_p;
    for (const auto &r : recs) {
        by_p[r.number("p")].push_back({r.number("N"), r.number("value")});
    }
    std::set<double> sizes;
    for (auto &[p, curve] : by_p) {
        std::sort(curve.begin(), curve.end());
        for (size_t k = 0; k < curve.size(); k++) {
            sizes.insert(curve[k].first);
            if (p == 0.5) {
                o.check(curve[k].second == 1.0, "plateau at N=" + fmt(curve[k].first));
            } else if (k > 0) {
                o.check(curve[k].second <= curve[k - 1].second,
                        "not monotone at p=" + fmt(p) + " N=" + fmt(curve[k].first));
            }
        }
    }
    o.check(sizes.size() == 10 && *sizes.begin() == 2 && *sizes.rbegin() == 1024, "size grid");
    o.detail = std::to_string(recs.size()) + " records, " + std::to_string(sizes.size()) + " curves";
    return o;
}

double rel_diff(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

// Negativity by exact enumeration against dense partial transposes, and the
// closed forms against direct sums and traces.
Outcome criterion_5() {
    Outcome o;
    double worst = 0.0;
    size_t count = 0;
    for (size_t two_n : {4, 6, 8, 10}) {
        Region a = sublattice_a(two_n);
        for (double p : kGrid) {
            for (char pauli : {'X', 'Z'}) {
                NoiseKind kind = pauli == 'X' ? NoiseKind::X : NoiseKind::Z;
                double exact = trace_norm_exact_enum(two_n, p, kind);
                double fresh = negativity_dense(noisy_cluster(two_n, std::vector<double>(two_n, p), pauli), a);
                double frozen = fixture("negativity_dense", {{"two_n", std::to_string(two_n)},
                                                             {"p", format_double(p)},
                                                             {"noise", std::string(1, pauli)}})
                                    .value;
                double d = std::max(std::abs(exact - fresh), std::abs(exact - frozen));
                worst = std::max(worst, d);
                o.check(d <= kOracleTol, std::string(1, pauli) + " two_n=" + std::to_string(two_n) + " p=" + fmt(p));
                count++;
            }
        }
    }
    double worst_closed = 0.0;
    for (double beta : {0.05, 0.2, 0.5, 1.0, 2.0}) {
        double p = 0.5 * (1.0 - std::exp(-2.0 * beta));
        for (size_t n = 2; n <= 6; n++) {
            std::complex<double> zx = partition_x_closed(beta, n).to_complex();
            std::complex<double> zz = partition_z_closed(beta, n).to_complex();
            double dzx = rel_diff(TransferOperator::nonhermitian_x(beta).trace_power(2 * n).to_complex(), zx);
            double dzz = rel_diff(TransferOperator::nonhermitian_z(beta).trace_power(2 * n).to_complex(), zz);
            double cx = log_c_x_closed(beta, n), cz = log_c_z_closed(beta, n);
            double ex = normalization_constant_enum(ChainModel::x_noise(2 * n, p));
            double ez = normalization_constant_enum(ChainModel::z_noise(2 * n, p));
            double dcx = std::abs(std::exp(cx - ex) - 1.0);
            double dcz = std::abs(std::exp(cz - ez) - 1.0);
            double d = std::max({dzx, dzz, dcx, dcz});
            worst_closed = std::max(worst_closed, d);
            o.check(d <= kOracleTol, "closed forms beta=" + fmt(beta) + " n=" + std::to_string(n));
        }
    }
    o.detail = std::to_string(count) + " negativity points, max diff " + fmt(worst) +
               "; closed forms max rel diff " + fmt(worst_closed);
    return o;
}

// Spurious TEN endpoints through the stabilizer path.
Outcome criterion_6() {
    Outcome o;
    McConfig c = mc_config(1000, 1);
    for (NoiseKind kind : {NoiseKind::X, NoiseKind::Z}) {
        for (size_t n : {2, 4, 8, 16, 64}) {
            std::string tag = noise_kind_name(kind) + " N=" + std::to_string(n);
            McEstimate lo = spurious_ten(n, 0.0, kind, c);
            McEstimate hi = spurious_ten(n, 0.5, kind, c);
            o.check(lo.exact && lo.log_value == kLn2, tag + " p=0");
            o.check(hi.exact && hi.log_value == 0.0, tag + " p=1/2");
        }
    }
    o.detail = "log 2 at p=0 and 0 at p=1/2 for X and Z noise, N in {2,4,8,16,64}";
    return o;
}

// Figure 3 trend at N = 16.
Outcome criterion_7() {
    Outcome o;
    std::ostringstream d;
    McConfig c = mc_config(kFig3Samples, 7);
    for (double p : {0.1, 0.2, 0.3}) {
        McEstimate e = spurious_ten(16, p, NoiseKind::X, c);
        double v = e.log_value / kLn2, s = e.std_err / kLn2;
        o.check(std::abs(v - 1.0) <= kSigmas * s, "X p=" + fmt(p) + " value " + fmt(v) + " +- " + fmt(s));
        d << "X p=" << fmt(p) << ": " << fmt(v) << "+-" << fmt(s) << " ";
    }
    for (double p : {0.3, 0.4}) {
        McEstimate e = spurious_ten(16, p, NoiseKind::Z, c);
        double v = e.log_value / kLn2, s = e.std_err / kLn2;
        o.check(v < kZNoiseCeiling, "Z p=" + fmt(p) + " value " + fmt(v));
        d << "Z p=" << fmt(p) << ": " << fmt(v) << "+-" << fmt(s) << " ";
    }
    o.detail = d.str() + "(units of log 2)";
    return o;
}

// Monte Carlo against enumeration on random instances, and worker
// independence.
Outcome criterion_8() {
    Outcome o;
    std::mt19937_64 rng(20260101);
    std::uniform_int_distribution<int> size(2, 6);
    std::uniform_real_distribution<double> rate(0.0, 0.5);
    double worst = 0.0;
    for (int k = 0; k < 50; k++) {
        size_t two_n = 2 * static_cast<size_t>(size(rng));
        double p = rate(rng);
        NoiseKind kind = k % 2 == 0 ? NoiseKind::X : NoiseKind::Z;
        double exact = trace_norm_exact_enum(two_n, p, kind);
        McEstimate e = trace_norm_mc(two_n, p, kind, mc_config(kSoundnessSamples, 1000 + k));
        double z = e.std_err > 0.0 ? std::abs(e.log_value - exact) / e.std_err : std::abs(e.log_value - exact) / 1e-300;
        worst = std::max(worst, z);
        o.check(z <= kSigmas, noise_kind_name(kind) + " two_n=" + std::to_string(two_n) + " p=" + fmt(p) +
                                  " at " + fmt(z) + " sigma");
    }
    McConfig c = mc_config(100000, 42);
    c.workers = 1;
    McEstimate base = trace_norm_mc(12, 0.3, NoiseKind::X, c);
    for (unsigned w : {2u, 8u}) {
        c.workers = w;
        McEstimate other = trace_norm_mc(12, 0.3, NoiseKind::X, c);
        o.check(other.log_value == base.log_value && other.std_err == base.std_err,
                "workers=" + std::to_string(w) + " changed the estimate");
    }
    o.detail = "50 instances, worst deviation " + fmt(worst) + " sigma; identical under 1, 2, 8 workers";
    return o;
}

// Moment transfer matrices of the X-dephased cluster MPDO.
Outcome criterion_9() {
    Outcome o;
    double worst = 0.0;
    for (int alpha : {2, 3}) {
        for (double p : {0.1, 0.2, 0.4}) {
            std::string tag = "alpha=" + std::to_string(alpha) + " p=" + fmt(p);
            MpdoTensor m = cluster_mpdo(p, NoiseKind::X);
            MomentSpectra s = moment_spectra(m, alpha);
            o.check(s.plain.top_degeneracy == 1, tag + " plain top degeneracy " +
                                                     std::to_string(s.plain.top_degeneracy));
            o.check(std::abs(s.plain.top.imag()) <= kDegeneracyTol * std::abs(s.plain.top) &&
                        s.plain.top.real() > 0.0,
                    tag + " plain top not real");
            size_t expected = static_cast<size_t>(std::pow(4, alpha - 1));
            o.check(s.tilde.top_degeneracy == expected,
                    tag + " tilde degeneracy " + std::to_string(s.tilde.top_degeneracy));
            SpuriousTenReport ten = spurious_ten_renyi(m, alpha);
            o.check(ten.value.has_value() && std::abs(*ten.value - kLn2) <= kTransferTol, tag + " spurious TEN");
            double dense = renyi_moments(noisy_cluster(8, std::vector<double>(8, p), 'X'), sublattice_a(8), alpha)
                               .negativity(alpha);
            double d = std::abs(renyi_negativity_tm(m, alpha, 8) - dense);
            worst = std::max(worst, d);
            o.check(d <= kTransferTol, tag + " Renyi negativity differs by " + fmt(d));
        }
    }
    o.detail = "6 instances; max |transfer - dense| Renyi negativity = " + fmt(worst);
    return o;
}

// Plaquette Ising model reduction to decoupled chains.
Outcome criterion_10() {
    Outcome o;
    const double beta = 0.3;
    double worst = 0.0;
    for (size_t height : {2, 3, 4, 5}) {
        PlaquetteModel m{4, height, beta, false};
        std::vector<double> table = pim_correlator_table(m);
        for (uint64_t s : plaquette_span(m)) {
            double d = std::abs(table[s] - pim_tau_correlator(m, s));
            worst = std::max(worst, d);
            o.check(d <= kTauTol, "tau mapping height " + std::to_string(height));
        }
    }
    double p = 0.5 * (1.0 - std::exp(-2.0 * beta));
    double fact = fc_2d(4, 2, 1, p, {}).value;
    std::vector<double> gaps;
    for (size_t height : {2, 3, 4}) {
        Fc2dMode brute{Fc2dMode::Kind::brute, height, true};
        gaps.push_back(std::abs(fc_2d(4, 2, 1, p, brute).value - fact));
    }
    o.check(gaps[1] < gaps[0] && gaps[2] < gaps[1], "boundary gaps not decreasing");
    o.detail = "tau mapping max diff " + fmt(worst) + "; boundary gaps " + fmt(gaps[0]) + " > " + fmt(gaps[1]) +
               " > " + fmt(gaps[2]);
    return o;
}

// Toric code boundary mode.
Outcome criterion_11() {
    Outcome o;
    McConfig c = mc_config(200000, 11);
    for (double p : {0.05, 0.2, 0.35}) {
        McEstimate toric = toric_boundary_negativity(8, {p, p}, c);
        McEstimate chain = trace_norm_mc(8, p, NoiseKind::X, c);
        o.check(toric.log_value == chain.log_value && toric.std_err == chain.std_err, "MC p=" + fmt(p));
        o.check(toric_boundary_negativity_exact(8, {p, p}) == trace_norm_exact_enum(8, p, NoiseKind::X),
                "exact p=" + fmt(p));
    }
    std::vector<double> rates(8);
    for (size_t q = 0; q < 8; q++) {
        rates[q] = q % 2 == 0 ? 0.1 : 0.3;
    }
    double exact = toric_boundary_negativity_exact(8, {0.1, 0.3});
    double fresh = negativity_dense(noisy_cluster(8, rates, 'X'), sublattice_a(8));
    double frozen = fixture("negativity_mixed_rates_dense", {{"two_n", "8"}, {"p_x", "0.1"}, {"p_z", "0.3"}}).value;
    double d = std::max(std::abs(exact - fresh), std::abs(exact - frozen));
    o.check(d <= kOracleTol, "mixed rates differ by " + fmt(d));
    o.detail = "equal rates bit-identical to X noise; mixed (0.1, 0.3) = " + fmt(exact) + ", dense diff " + fmt(d);
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mixsspt acceptance suite"};
    int criterion = 0;
    app.add_option("--criterion", criterion, "Criterion number")->required()->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);

    const std::function<Outcome()> table[] = {criterion_1, criterion_2, criterion_3, criterion_4,
                                              criterion_5, criterion_6, criterion_7, criterion_8,
                                              criterion_9, criterion_10, criterion_11};
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = table[criterion - 1]();
    } catch (const std::exception &e) {
        o.pass = false;
        o.first_failure = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string line = (o.pass ? "PASS" : "FAIL") + std::string(" criterion ") + std::to_string(criterion) + ": " +
                       o.detail;
    if (!o.pass) {
        line += (o.detail.empty() ? "" : "; ") + std::string("first failure: ") + o.first_failure;
    }
    std::printf("%s [%.1fs]\n", line.c_str(), secs);
    return o.pass ? 0 : 1;
}
