#include "immunize/spectral.hpp"

#include <cmath>
#include <numeric>

#include "immunize/parallel.hpp"
#include "immunize/rng.hpp"
#include "immunize/walks.hpp"

namespace immunize::spectral {

namespace {

void matvec(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
    size_t n = x.size();
    parallel_for(n, [&](size_t b, size_t e) {
        for (size_t v = b; v < e; ++v) {
            double acc = 0.0;
            for (node_id w : g.neighbors(static_cast<node_id>(v))) acc += x[static_cast<size_t>(w)];
            y[v] = acc;
        }
    });
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void normalize(std::vector<double>& a) {
    double nrm = norm2(a);
    if (nrm == 0.0) return;
    for (double& x : a) x /= nrm;
}

std::vector<double> noisy_start_vector(size_t n, uint64_t seed) {
    auto rng = make_rng(seed, /*stream=*/0x5eed);
    std::vector<double> x(n);
    for (double& v : x) v = 1.0 + 1e-3 * uniform01(rng);
    normalize(x);
    return x;
}

} // namespace

SpectralResult lambda_max(const Graph& g, const PowerOptions& opts) {
    size_t n = static_cast<size_t>(g.node_count());
    SpectralResult res;
    res.eigvec.assign(n, 0.0);
    if (g.edge_count() == 0) return res;

    // Exact all-ones start. The dominant eigenvector of A + I is the
    // non-negative Perron vector, whose overlap with the ones vector is
    // always positive, so no perturbation is needed; keeping the start
    // symmetric preserves exact score ties on vertex-transitive graphs.
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        matvec(g, x, y);
        double lambda = dot(x, y); // Rayleigh quotient, ||x|| = 1
        double rss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double d = y[i] - lambda * x[i];
            rss += d * d;
        }
        res.lambda_max = lambda;
        res.iterations = iter;
        res.residual = std::sqrt(rss);
        if (res.residual <= opts.tol * std::max(1.0, lambda)) {
            res.eigvec = x;
            return res;
        }
        // Shifted step (A + I): strict dominance even when -lambda_max ties
        // in magnitude. Iterates stay entrywise positive.
        for (size_t i = 0; i < n; ++i) y[i] += x[i];
        normalize(y);
        x.swap(y);
    }
    res.eigvec = x;
    throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                               " iterations (residual " + std::to_string(res.residual) + ")",
                           res);
}

double lambda_2(const Graph& g, const PowerOptions& opts) {
    if (g.edge_count() == 0) return 0.0;
    SpectralResult top = lambda_max(g, opts);
    size_t n = static_cast<size_t>(g.node_count());
    const std::vector<double>& v = top.eigvec;
    double lam = top.lambda_max;

    auto apply_deflated = [&](const std::vector<double>& in, std::vector<double>& out) {
        matvec(g, in, out);
        double proj = lam * dot(v, in);
        for (size_t i = 0; i < n; ++i) out[i] -= proj * v[i];
    };

    // Seeded noise here: the deflated iterate must not start orthogonal to
    // the secondary eigenspace (all-ones would, whenever v is uniform).
    std::vector<double> x = noisy_start_vector(n, opts.seed ^ 0x9e37);
    double c = dot(v, x);
    for (size_t i = 0; i < n; ++i) x[i] -= c * v[i];
    if (norm2(x) < 1e-12) return 0.0;
    normalize(x);

    std::vector<double> t(n), y(n);
    double mu = 0.0;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        apply_deflated(x, t);
        apply_deflated(t, y); // y = B^2 x, positive semidefinite
        mu = dot(x, y);
        double rss = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double d = y[i] - mu * x[i];
            rss += d * d;
        }
        if (std::sqrt(rss) <= opts.tol * std::max(1.0, mu)) return std::sqrt(std::max(0.0, mu));
        double nrm = norm2(y);
        if (nrm == 0.0) return 0.0; // B annihilated the iterate: nothing beyond the deflated pair
        for (size_t i = 0; i < n; ++i) x[i] = y[i] / nrm;
    }
    SpectralResult best;
    best.lambda_max = std::sqrt(std::max(0.0, mu));
    best.eigvec = x;
    best.iterations = opts.max_iter;
    throw ConvergenceError("deflated power iteration did not converge", best);
}

double eigendrop_percent(const Graph& g, const NodeSet& s, const PowerOptions& opts) {
    s.check_valid_for(g);
    double before = lambda_max(g, opts).lambda_max;
    if (before == 0.0) throw DomainError("eigendrop undefined: lambda_max(A) is 0");
    double after = lambda_max(remove_nodes(g, s), opts).lambda_max;
    return 100.0 * (before - after) / before;
}

double trace_dominance_ratio(const Graph& g, int p, const TraceDominanceOptions& opts) {
    if (p <= 0 || p > 8 || p % 2 != 0) throw DomainError("trace dominance requires even p in {2,4,6,8}");
    if (g.node_count() > opts.dense_limit)
        throw CapabilityError("graph exceeds dense diagonal-power limit (" +
                              std::to_string(opts.dense_limit) + " nodes)");
    if (g.edge_count() == 0) throw DomainError("trace dominance undefined on edgeless graph");

    walks::WalkOptions wopts;
    wopts.dense_limit = opts.dense_limit;
    walks::WalkProfile profile = walks::diagonal_powers(g, wopts);
    long double trace = 0.0;
    for (walk_int d : profile.diag(p)) trace += static_cast<long double>(d);

    double lam = lambda_max(g, opts.power).lambda_max;
    return static_cast<double>(std::pow(static_cast<long double>(lam), p) / trace);
}

} // namespace immunize::spectral
