#include "hewave/birkhoff_rott.hpp"

#include <cmath>
#include <numbers>
#include "hewave/errors.hpp"

namespace hew {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

inline std::complex<double> ccot(std::complex<double> w) {
    // cot w = i (e^{2iw} + 1) / (e^{2iw} - 1); one complex exp per call
    const std::complex<double> e = std::exp(std::complex<double>(0.0, 2.0) * w);
    return std::complex<double>(0.0, 1.0) * (e + 1.0) / (e - 1.0);
}

} // namespace

cvec remainder_kernel(const CurveSample& cs, const rvec& gamma,
                      double chord_arc_floor) {
    const int n = static_cast<int>(cs.z.size());
    const double M = cs.period;
    if (chord_arc_min(cs) < chord_arc_floor)
        throw quadrature_error("remainder kernel: chord-arc ratio below floor");

    // real cotangent of half the node spacing depends only on j - j'
    std::vector<double> cot_half(n, 0.0);
    for (int d = 1; d < n; ++d)
        cot_half[d] = 1.0 / std::tan(0.5 * (two_pi * d / n));

    const double dalpha = two_pi / n;
    const double pi_over_M = std::numbers::pi / M;
    const std::complex<double> pref =
        2.0 * dalpha / (std::complex<double>(0.0, 4.0 * std::numbers::pi));

    cvec K(n);
    for (int j = 0; j < n; ++j) {
        std::complex<double> acc = 0.0;
        for (int jp = (j + 1) % 2; jp < n; jp += 2) {
            const std::complex<double> dz = cs.z[j] - cs.z[jp];
            const std::complex<double> bracket =
                (two_pi / M) * ccot(pi_over_M * dz) -
                cot_half[((j - jp) % n + n) % n] / cs.z_alpha[jp];
            acc += gamma[jp] * bracket;
        }
        K[j] = pref * acc;
    }
    return K;
}

cvec birkhoff_rott(const CurveSample& cs, const rvec& gamma,
                   double chord_arc_floor) {
    const int n = static_cast<int>(cs.z.size());
    rvec qre(n), qim(n);
    for (int j = 0; j < n; ++j) {
        const std::complex<double> q = gamma[j] / cs.z_alpha[j];
        qre[j] = q.real();
        qim[j] = q.imag();
    }
    const rvec hre = hilbert(qre);
    const rvec him = hilbert(qim);
    cvec W = remainder_kernel(cs, gamma, chord_arc_floor);
    // (1/2i) H(gamma / z_alpha) = -(i/2) (H re + i H im)
    for (int j = 0; j < n; ++j)
        W[j] += std::complex<double>(0.0, -0.5) * std::complex<double>(hre[j], him[j]);
    return W;
}

} // namespace hew
