#include "qid/distinguished_log.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1u;
    return p;
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// mu^(2 pi j / N) for j = 0..N-1 in one inverse FFT: placing mass a_n into
// bin n mod N makes sum_n a_n e^{2 pi i n j / N} the (unnormalized) inverse
// transform of the bin vector.
std::vector<std::complex<double>> charfn_samples(const LatticeDistribution& mu, std::size_t N) {
    std::vector<std::complex<double>> bins(N, {0.0, 0.0});
    const auto& masses = mu.masses();
    for (std::size_t j = 0; j < masses.size(); ++j) {
        const std::int64_t n = mu.first_index() + static_cast<std::int64_t>(j);
        const std::size_t bin = static_cast<std::size_t>(((n % static_cast<std::int64_t>(N)) +
                                                          static_cast<std::int64_t>(N)) %
                                                         static_cast<std::int64_t>(N));
        bins[bin] += masses[j];
    }
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> out;
    fft.inv(out, bins);
    for (auto& v : out) v *= static_cast<double>(N);
    return out;
}

}  // namespace

DistinguishedLog distinguished_log(const LatticeDistribution& mu, std::size_t grid, double drop_tol) {
    if (!mu.on_integer_lattice())
        throw std::invalid_argument("distinguished_log requires a Z-supported distribution; rescale first");
    const std::size_t width = static_cast<std::size_t>(std::max<std::int64_t>(mu.support_width(), 1));
    std::size_t N = grid == 0 ? next_pow2(std::max<std::size_t>(64, 8 * width)) : grid;
    if (!is_pow2(N)) throw std::invalid_argument("grid size must be a power of two");
    if (N < next_pow2(8 * width)) throw std::invalid_argument("grid size must be at least 8x the support width");

    Eigen::FFT<double> fft;
    for (;; N *= 2) {
        const bool last_chance = N >= kMaxUnwrapGrid;
        const auto mu_hat = charfn_samples(mu, N);

        double min_abs = std::abs(mu_hat[0]);
        double min_z = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const double a = std::abs(mu_hat[j]);
            if (a < min_abs) {
                min_abs = a;
                min_z = kTwoPi * static_cast<double>(j) / static_cast<double>(N);
            }
        }
        if (min_abs <= kCharFnZeroGuard) throw CharFnNearZero(min_abs, min_z);

        // Cumulative phase with |delta| < pi per step assumed; refine while a
        // step exceeds pi/2.
        std::vector<double> theta(N + 1, 0.0);
        double max_step = 0.0;
        for (std::size_t j = 0; j < N; ++j) {
            const std::complex<double> ratio = mu_hat[(j + 1) % N] / mu_hat[j];
            const double step = std::arg(ratio);
            max_step = std::max(max_step, std::abs(step));
            theta[j + 1] = theta[j] + step;
        }
        if (max_step > std::numbers::pi / 2.0) {
            if (last_chance) throw PhaseUnwrapFailure("phase step above pi/2 on the finest grid");
            continue;
        }

        const double winding = theta[N] / kTwoPi;
        const std::int64_t k = std::llround(winding);
        if (std::abs(winding - static_cast<double>(k)) > 1e-6)
            throw PhaseUnwrapFailure("total phase change is not an integer multiple of 2 pi");

        DistinguishedLog result;
        result.grid_size = N;
        result.drift_k = k;
        result.min_charfn_abs = min_abs;
        result.samples.resize(N + 1);
        for (std::size_t j = 0; j <= N; ++j) {
            const std::complex<double> v = mu_hat[j % N];
            result.samples[j] = {std::log(std::abs(v)), theta[j]};
        }

        std::vector<std::complex<double>> g_tilde(N);
        for (std::size_t j = 0; j < N; ++j)
            g_tilde[j] = result.samples[j] -
                         std::complex<double>{0.0, static_cast<double>(k) * kTwoPi * static_cast<double>(j) /
                                                       static_cast<double>(N)};
        std::vector<std::complex<double>> spectrum;
        fft.fwd(spectrum, g_tilde);

        const auto coeff = [&](std::int64_t n) {
            const std::size_t bin = static_cast<std::size_t>(((n % static_cast<std::int64_t>(N)) +
                                                              static_cast<std::int64_t>(N)) %
                                                             static_cast<std::int64_t>(N));
            return spectrum[bin] / static_cast<double>(N);
        };

        // The rectangle rule aliases b_{n +- N} onto b_n; the band edge must
        // have decayed or the grid is not fine enough yet.
        const std::int64_t half = static_cast<std::int64_t>(N / 2);
        double edge = 0.0;
        for (std::int64_t n = half / 2; n <= half; ++n)
            edge = std::max({edge, std::abs(coeff(n)), std::abs(coeff(-n))});
        result.edge_coefficient_max = edge;
        if (edge > 1e-13 && !last_chance) continue;

        for (std::int64_t n = -half + 1; n < half; ++n) {
            if (n == 0) continue;
            const std::complex<double> b = coeff(n);
            result.max_imag_residual = std::max(result.max_imag_residual, std::abs(b.imag()));
            if (std::abs(b.real()) >= drop_tol)
                result.fourier_coeffs.emplace(n, b.real());
            else
                result.dropped_l1 += std::abs(b.real());
        }
        return result;
    }
}

}  // namespace qid
