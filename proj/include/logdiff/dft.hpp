#pragma once

#include <complex>
#include <span>

#include "logdiff/grid.hpp"

namespace logdiff {

/// Real-to-complex transform pair for one grid size, wrapping FFTW.
/// Forward output is normalized by 1/n, so hat[k] is the amplitude of the
/// mode e^{i xi_k x} with xi_k = pi k / L (k = 0 .. n/2 stored, negatives
/// implied by conjugate symmetry).
///
/// Plan creation is serialized behind a global mutex (the FFTW planner is not
/// thread-safe); a Workspace instance owns its aligned buffers and must stay
/// confined to one thread. Use Workspace::local(n) for a thread-local cache.
class Workspace {
  public:
    explicit Workspace(int n);
    ~Workspace();
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    int n() const { return n_; }
    int nmodes() const { return n_ / 2 + 1; }

    /// real input -> internal hat buffer (normalized)
    void forward(std::span<const double> x);
    /// internal hat buffer -> real output
    void inverse(std::span<double> out);

    std::complex<double>* hat() { return hat_; }
    const std::complex<double>* hat() const { return hat_; }

    /// Thread-local workspace for grids of size n (re-derived per thread).
    static Workspace& local(int n);

  private:
    int n_;
    double* real_;                // fftw-aligned, length n
    std::complex<double>* hat_;   // fftw-aligned, length n/2+1
    void* plan_fwd_;
    void* plan_inv_;
};

}  // namespace logdiff
