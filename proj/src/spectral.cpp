#include "hewave/spectral.hpp"

#include <fftw3.h>
#include <cassert>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include "hewave/grid.hpp"

namespace hew {

std::vector<double> GridSpec::nodes() const {
    std::vector<double> a(n_nodes);
    for (int j = 0; j < n_nodes; ++j)
        a[j] = 2.0 * std::numbers::pi * j / n_nodes;
    return a;
}

namespace {

// Process-wide plan cache.  Plan creation is serialized (FFTW requires it);
// execution uses the new-array interface and is safe concurrently.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache pc;
        return pc;
    }

    fftw_plan r2c(int n) {
        std::lock_guard<std::mutex> lk(m_);
        auto it = r2c_.find(n);
        if (it != r2c_.end()) return it->second;
        std::vector<double> in(n);
        std::vector<fftw_complex> out(n / 2 + 1);
        fftw_plan p = fftw_plan_dft_r2c_1d(n, in.data(), out.data(),
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
        r2c_[n] = p;
        return p;
    }

    fftw_plan c2r(int n) {
        std::lock_guard<std::mutex> lk(m_);
        auto it = c2r_.find(n);
        if (it != c2r_.end()) return it->second;
        std::vector<fftw_complex> in(n / 2 + 1);
        std::vector<double> out(n);
        fftw_plan p = fftw_plan_dft_c2r_1d(n, in.data(), out.data(),
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
        c2r_[n] = p;
        return p;
    }

private:
    PlanCache() = default;
    std::mutex m_;
    std::map<int, fftw_plan> r2c_, c2r_;
};

// half spectrum c_k, k = 0..n/2, same normalization as to_modes
cvec half_spectrum(const rvec& f) {
    const int n = static_cast<int>(f.size());
    assert(n > 0 && n % 2 == 0);
    std::vector<double> in(f);
    std::vector<fftw_complex> out(n / 2 + 1);
    fftw_execute_dft_r2c(PlanCache::instance().r2c(n), in.data(), out.data());
    cvec c(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j)
        c[j] = std::complex<double>(out[j][0], out[j][1]) / double(n);
    return c;
}

rvec from_half_spectrum(cvec c, int n) {
    assert(static_cast<int>(c.size()) == n / 2 + 1);
    std::vector<fftw_complex> in(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) {
        in[j][0] = c[j].real();
        in[j][1] = c[j].imag();
    }
    rvec out(n);
    fftw_execute_dft_c2r(PlanCache::instance().c2r(n), in.data(), out.data());
    return out; // c2r with coefficients already divided by n is an exact inverse
}

} // namespace

cvec to_modes(const rvec& f) {
    const int n = static_cast<int>(f.size());
    cvec half = half_spectrum(f);
    cvec c(n);
    for (int j = 0; j <= n / 2; ++j) c[j] = half[j];
    for (int j = n / 2 + 1; j < n; ++j) c[j] = std::conj(half[n - j]);
    return c;
}

rvec to_nodes(const cvec& c) {
    const int n = static_cast<int>(c.size());
    cvec half(n / 2 + 1);
    for (int j = 0; j <= n / 2; ++j) half[j] = c[j];
    return from_half_spectrum(std::move(half), n);
}

double mean(const rvec& f) {
    double s = 0.0;
    for (double v : f) s += v;
    return s / static_cast<double>(f.size());
}

rvec deriv(const rvec& f, int order) {
    const int n = static_cast<int>(f.size());
    cvec c = half_spectrum(f);
    // i^order by quadrant so the symbol (ik)^order stays exact
    static constexpr double re4[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double im4[4] = {0.0, 1.0, 0.0, -1.0};
    const int q = ((order % 4) + 4) % 4;
    const std::complex<double> iq(re4[q], im4[q]);
    for (int k = 0; k <= n / 2; ++k) {
        double kp = 1.0;
        for (int r = 0; r < order; ++r) kp *= k;
        c[k] *= kp * iq;
    }
    if (order % 2 != 0) c[n / 2] = 0.0; // odd symbol has no consistent Nyquist value
    return from_half_spectrum(std::move(c), n);
}

rvec hilbert(const rvec& f) {
    const int n = static_cast<int>(f.size());
    cvec c = half_spectrum(f);
    c[0] = 0.0;
    for (int k = 1; k < n / 2; ++k) c[k] *= std::complex<double>(0.0, -1.0);
    c[n / 2] = 0.0;
    return from_half_spectrum(std::move(c), n);
}

rvec inv_deriv4(const rvec& f) {
    const int n = static_cast<int>(f.size());
    cvec c = half_spectrum(f);
    c[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k) {
        const double k2 = double(k) * double(k);
        c[k] /= k2 * k2;
    }
    return from_half_spectrum(std::move(c), n);
}

rvec project_zero_mean(const rvec& f) {
    rvec g(f);
    const double m = mean(f);
    for (double& v : g) v -= m;
    return g;
}

rvec antideriv_zero_mean(const rvec& f) {
    const int n = static_cast<int>(f.size());
    cvec c = half_spectrum(f);
    c[0] = 0.0;
    for (int k = 1; k < n / 2; ++k) c[k] /= std::complex<double>(0.0, k);
    c[n / 2] = 0.0;
    return from_half_spectrum(std::move(c), n);
}

rvec sine_coeffs(const rvec& f, int kmax) {
    cvec c = half_spectrum(f);
    rvec s(kmax);
    for (int k = 1; k <= kmax; ++k) s[k - 1] = -2.0 * c[k].imag();
    return s;
}

rvec cosine_coeffs(const rvec& f, int kmax) {
    cvec c = half_spectrum(f);
    rvec s(kmax);
    for (int k = 1; k <= kmax; ++k) s[k - 1] = 2.0 * c[k].real();
    return s;
}

rvec synth_sine(const rvec& a, int n_nodes) {
    cvec c(n_nodes / 2 + 1, 0.0);
    for (int k = 1; k <= static_cast<int>(a.size()); ++k)
        c[k] = std::complex<double>(0.0, -0.5 * a[k - 1]);
    return from_half_spectrum(std::move(c), n_nodes);
}

rvec synth_cosine(const rvec& b, int n_nodes) {
    cvec c(n_nodes / 2 + 1, 0.0);
    for (int k = 1; k <= static_cast<int>(b.size()); ++k)
        c[k] = std::complex<double>(0.5 * b[k - 1], 0.0);
    return from_half_spectrum(std::move(c), n_nodes);
}

} // namespace hew
