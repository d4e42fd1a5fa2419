#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace logdiff {

/// The pair (phi, beta = phi^{-1}) defining the diffusion nonlinearity.
/// Default mode is phi(u) = log(1+u), beta(w) = e^w - 1; Linear is phi(u) = u;
/// Power(m) is the odd extension of phi(u) = u^m. phi is strictly increasing
/// with phi(0) = 0, so beta(phi(s)) = s to round-off.
class Nonlinearity {
  public:
    enum class Kind { Log1p, Power, Linear };

    static Nonlinearity log1p() { return Nonlinearity(Kind::Log1p, 0.0); }
    static Nonlinearity linear() { return Nonlinearity(Kind::Linear, 0.0); }
    static Nonlinearity power(double m) {
        if (!(m > 0.0)) throw std::invalid_argument("Nonlinearity::power: m must be > 0");
        return Nonlinearity(Kind::Power, m);
    }

    Kind kind() const { return kind_; }
    double exponent() const { return m_; }

    double phi(double s) const {
        switch (kind_) {
            case Kind::Log1p: return std::log1p(s);
            case Kind::Linear: return s;
            case Kind::Power: return odd_pow(s, m_);
        }
        return 0.0;
    }

    double dphi(double s) const {
        switch (kind_) {
            case Kind::Log1p: return 1.0 / (1.0 + s);
            case Kind::Linear: return 1.0;
            case Kind::Power: return m_ * std::pow(std::abs(s), m_ - 1.0);
        }
        return 0.0;
    }

    double beta(double w) const {
        switch (kind_) {
            case Kind::Log1p: return std::expm1(w);
            case Kind::Linear: return w;
            case Kind::Power: return odd_pow(w, 1.0 / m_);
        }
        return 0.0;
    }

    double dbeta(double w) const {
        switch (kind_) {
            case Kind::Log1p: return std::exp(w);
            case Kind::Linear: return 1.0;
            case Kind::Power: return (1.0 / m_) * std::pow(std::abs(w), 1.0 / m_ - 1.0);
        }
        return 0.0;
    }

    /// Convex primitive used by the resolvent objective: Phi' = beta, with the
    /// Log1p branch shifted by +1 so that Phi(w) = e^w - w (Phi(0) normalizes
    /// the objective of the zero field to the domain length).
    double beta_primitive(double w) const {
        switch (kind_) {
            case Kind::Log1p: return std::exp(w) - w;
            case Kind::Linear: return 0.5 * w * w;
            case Kind::Power: {
                double q = 1.0 + 1.0 / m_;
                return std::pow(std::abs(w), q) / q;
            }
        }
        return 0.0;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Log1p: return "log1p";
            case Kind::Linear: return "linear";
            case Kind::Power: return "power:" + std::to_string(m_);
        }
        return "?";
    }

  private:
    Nonlinearity(Kind k, double m) : kind_(k), m_(m) {}

    static double odd_pow(double s, double p) {
        return s < 0.0 ? -std::pow(-s, p) : std::pow(s, p);
    }

    Kind kind_;
    double m_;
};

}  // namespace logdiff
