// market.hpp
// Risk-inclination oscillator formulas for quantum market games: the
// characteristic frequency omega = 2*pi/theta, the noncommutative correction
// hbar_E -> sqrt(hbar_E^2 + Theta^2), the equally spaced risk spectrum
// E_n = hbar_eff * omega * (n + 1/2), and the minimal risk inclination
// h_E = E_0 * 2*theta. The spectrum is exposed as a closed formula; the
// finite-difference diagonalization lives only in the tests as an oracle.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgames::market {

struct RiskOscillator {
    double m = 1.0;          // risk asymmetry between buying and selling, > 0
    double theta = 1.0;      // characteristic transaction time, > 0
    double hbar_e = 1.0;     // risk quantum, > 0
    double big_theta = 0.0;  // noncommutativity parameter, >= 0

    RiskOscillator(double m_, double theta_, double hbar_e_, double big_theta_)
        : m(m_), theta(theta_), hbar_e(hbar_e_), big_theta(big_theta_) {
        if (!(m > 0.0) || !std::isfinite(m))
            throw std::invalid_argument("RiskOscillator: m must be positive");
        if (!(theta > 0.0) || !std::isfinite(theta))
            throw std::invalid_argument("RiskOscillator: theta must be positive");
        if (!(hbar_e > 0.0) || !std::isfinite(hbar_e))
            throw std::invalid_argument("RiskOscillator: hbar_e must be positive");
        if (!(big_theta >= 0.0) || !std::isfinite(big_theta))
            throw std::invalid_argument("RiskOscillator: big_theta must be nonnegative");
    }
};

inline double omega(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw std::invalid_argument("omega: theta must be positive");
    return 2.0 * std::numbers::pi / theta;
}

inline double hbar_eff(double hbar_e, double big_theta) {
    if (!(hbar_e > 0.0) || !std::isfinite(hbar_e))
        throw std::invalid_argument("hbar_eff: hbar_e must be positive");
    if (!(big_theta >= 0.0) || !std::isfinite(big_theta))
        throw std::invalid_argument("hbar_eff: big_theta must be nonnegative");
    return std::hypot(hbar_e, big_theta);
}

// E_n of the risk inclination operator; n is the ladder level.
inline double risk_spectrum(const RiskOscillator& o, int n) {
    if (n < 0) throw std::invalid_argument("risk_spectrum: level index must be >= 0");
    return hbar_eff(o.hbar_e, o.big_theta) * omega(o.theta) * (static_cast<double>(n) + 0.5);
}

// Minimal inclination to risk: the ground level times the minimal profit
// interval 2*theta. Independent of m and theta (they cancel).
inline double min_risk_inclination(const RiskOscillator& o) {
    return risk_spectrum(o, 0) * 2.0 * o.theta;
}

}  // namespace qgames::market
