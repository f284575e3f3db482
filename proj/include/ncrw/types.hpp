#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ncrw {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation requested at a non-removable singularity.
struct pole_error : error {
    using error::error;
};

// Quadrature or iteration failed to reach the requested tolerance.
struct convergence_error : error {
    using error::error;
};

// Invalid argument domain (parameters outside contract).
struct domain_error : error {
    using error::error;
};

// A value that must be real came out with a too-large imaginary part.
struct consistency_error : error {
    using error::error;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

// Strictly increasing integer particle positions (a point of the Weyl chamber).
struct ParticleConfig {
    std::vector<long long> positions;

    ParticleConfig() = default;
    explicit ParticleConfig(std::vector<long long> pos) : positions(std::move(pos)) {
        validate();
    }

    std::size_t size() const { return positions.size(); }
    long long operator[](std::size_t i) const { return positions[i]; }
    auto begin() const { return positions.begin(); }
    auto end() const { return positions.end(); }
    long long front() const { return positions.front(); }
    long long back() const { return positions.back(); }

    bool contains(long long x) const {
        return std::binary_search(positions.begin(), positions.end(), x);
    }

    void validate() const {
        if (positions.empty())
            throw domain_error("ParticleConfig: must contain at least one particle");
        for (std::size_t i = 1; i < positions.size(); ++i)
            if (positions[i - 1] >= positions[i])
                throw domain_error("ParticleConfig: positions must be strictly increasing");
    }

    bool operator==(const ParticleConfig& o) const { return positions == o.positions; }
    bool operator<(const ParticleConfig& o) const { return positions < o.positions; }
};

struct SpaceTimePoint {
    long long t = 0;
    long long x = 0;
    bool operator==(const SpaceTimePoint& o) const { return t == o.t && x == o.x; }
    bool operator<(const SpaceTimePoint& o) const {
        return t != o.t ? t < o.t : x < o.x;
    }
};

// Argument pair (t1,x1;t2,x2) of a space-time correlation kernel.
struct KernelQuery {
    SpaceTimePoint p1;
    SpaceTimePoint p2;
};

struct QuadratureSettings {
    double abs_tol = 1e-11;
    int max_panels = 4000;
    int panel_order = 16;

    void validate() const {
        if (!(abs_tol > 0)) throw domain_error("QuadratureSettings: abs_tol must be > 0");
        if (max_panels < 1) throw domain_error("QuadratureSettings: max_panels must be >= 1");
        if (panel_order < 2) throw domain_error("QuadratureSettings: panel_order must be >= 2");
    }
};

// Collapse a complex kernel value to real, enforcing the imaginary-leak bound
// |Im| < tol * (1 + |Re|).
inline double collapse_real(cplx v, double tol = 1e-8) {
    if (std::abs(v.imag()) >= tol * (1.0 + std::abs(v.real())))
        throw consistency_error("complex value expected to be real has Im = " +
                                std::to_string(v.imag()) + " vs Re = " +
                                std::to_string(v.real()));
    return v.real();
}

}  // namespace ncrw
