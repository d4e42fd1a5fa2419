#include "logdiff/dft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace logdiff {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

Workspace::Workspace(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Workspace: n too small");
    real_ = fftw_alloc_real(static_cast<size_t>(n_));
    hat_ = reinterpret_cast<std::complex<double>*>(
        fftw_alloc_complex(static_cast<size_t>(n_ / 2 + 1)));
    std::lock_guard<std::mutex> lk(planner_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_1d(n_, real_, reinterpret_cast<fftw_complex*>(hat_),
                                     FFTW_ESTIMATE);
    plan_inv_ = fftw_plan_dft_c2r_1d(n_, reinterpret_cast<fftw_complex*>(hat_), real_,
                                     FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("Workspace: FFTW planning failed");
}

Workspace::~Workspace() {
    std::lock_guard<std::mutex> lk(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
    fftw_free(real_);
    fftw_free(hat_);
}

void Workspace::forward(std::span<const double> x) {
    if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("forward: size mismatch");
    std::memcpy(real_, x.data(), sizeof(double) * static_cast<size_t>(n_));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (int k = 0; k <= n_ / 2; ++k) hat_[k] *= scale;
}

void Workspace::inverse(std::span<double> out) {
    if (static_cast<int>(out.size()) != n_) throw std::invalid_argument("inverse: size mismatch");
    // c2r destroys its input; hat_ holds normalized coefficients, and the
    // unnormalized c2r supplies the factor n back.
    fftw_execute(static_cast<fftw_plan>(plan_inv_));
    std::memcpy(out.data(), real_, sizeof(double) * static_cast<size_t>(n_));
}

Workspace& Workspace::local(int n) {
    thread_local std::map<int, std::unique_ptr<Workspace>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<Workspace>(n)).first;
    return *it->second;
}

}  // namespace logdiff
