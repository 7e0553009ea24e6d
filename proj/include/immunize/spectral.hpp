#pragma once

#include <cstdint>
#include <vector>

#include "immunize/graph.hpp"

namespace immunize::spectral {

struct SpectralResult {
    double lambda_max = 0.0;
    std::vector<double> eigvec; // unit-norm, entrywise non-negative
    int iterations = 0;
    double residual = 0.0;      // ||A v - lambda v||_2
};

struct PowerOptions {
    double tol = 1e-9; // relative: converged when residual <= tol * max(1, lambda)
    int max_iter = 10000;
    uint64_t seed = 0;
};

// Raised when power iteration fails to reach tolerance; carries the best
// iterate so callers can inspect or reuse it.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& msg, SpectralResult best)
        : Error(msg, 1), best_(std::move(best)) {}
    const SpectralResult& best() const noexcept { return best_; }

private:
    SpectralResult best_;
};

// Largest adjacency eigenvalue by power iteration on A + I (the shift keeps
// the dominant eigenvalue strictly separated on bipartite graphs where
// -lambda_max ties in magnitude, and guarantees the all-ones start vector
// overlaps the non-negative Perron eigenvector). Edgeless graphs return 0
// with the zero vector.
SpectralResult lambda_max(const Graph& g, const PowerOptions& opts = {});

// Magnitude of the second-largest eigenvalue by magnitude, counting
// multiplicity: one Hotelling deflation step B = A - lambda v v^T, then
// power iteration on B^2 (squaring resolves +/- pairs). Reported as |λ₂|.
double lambda_2(const Graph& g, const PowerOptions& opts = {});

// 100 * (lambda_max(A) - lambda_max(A[-S])) / lambda_max(A).
double eigendrop_percent(const Graph& g, const NodeSet& s, const PowerOptions& opts = {});

struct TraceDominanceOptions {
    int dense_limit = 5000; // diagonal-power capability bound
    PowerOptions power;
};

// lambda_max^p / trace(A^p) for even p <= 8; the trace comes from exact
// walk diagonals rather than a full spectrum. Values near 1 indicate the
// dominant eigenvalue carries almost all closed p-walk mass.
double trace_dominance_ratio(const Graph& g, int p, const TraceDominanceOptions& opts = {});

} // namespace immunize::spectral
