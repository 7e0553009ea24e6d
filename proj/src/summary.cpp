#include "immunize/summary.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "immunize/parallel.hpp"
#include "immunize/rng.hpp"

namespace immunize::summary {

namespace {

// C = B1 * B2 (t x t, symmetric inputs) with Kahan-compensated per-cell
// accumulation: the power diagonals feed an estimator, so we keep rounding
// noise out of the large sums.
void mat_mul_kahan(size_t t, const std::vector<double>& b1, const std::vector<double>& b2,
                   std::vector<double>& out) {
    out.assign(t * t, 0.0);
    parallel_for(
        t,
        [&](size_t lo, size_t hi) {
            std::vector<double> comp(t);
            for (size_t i = lo; i < hi; ++i) {
                double* row = out.data() + i * t;
                std::fill(comp.begin(), comp.end(), 0.0);
                const double* a_row = b1.data() + i * t;
                for (size_t k = 0; k < t; ++k) {
                    double a = a_row[k];
                    if (a == 0.0) continue;
                    const double* b_row = b2.data() + k * t;
                    for (size_t j = 0; j < t; ++j) {
                        double y = a * b_row[j] - comp[j];
                        double s = row[j] + y;
                        comp[j] = (s - row[j]) - y;
                        row[j] = s;
                    }
                }
            }
        },
        /*min_chunk=*/8);
}

double kahan_dot(const double* a, const double* b, size_t n) {
    double sum = 0.0, comp = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double y = a[i] * b[i] - comp;
        double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

} // namespace

SummaryGraph build_partition(const Graph& g, int32_t t, uint64_t seed) {
    node_id n = g.node_count();
    if (t < 1 || t > n)
        throw DomainError("supernode count must satisfy 1 <= t <= n (got t=" + std::to_string(t) +
                          ", n=" + std::to_string(n) + ")");
    if (t > kMaxSupernodes)
        throw CapabilityError("summary power computation is bounded at t <= " +
                              std::to_string(kMaxSupernodes));

    SummaryGraph sg;
    sg.t = t;
    sg.n = n;
    sg.seed = seed;
    sg.part.assign(static_cast<size_t>(n), 0);
    sg.supernode_size.assign(static_cast<size_t>(t), 0);
    sg.internal_edges.assign(static_cast<size_t>(t), 0);
    sg.c.assign(static_cast<size_t>(t) * static_cast<size_t>(t), 0);

    std::vector<node_id> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    auto rng = make_rng(seed, /*stream=*/0x50344);
    shuffle_vec(order, rng);
    for (node_id j = 0; j < n; ++j) {
        int32_t p = static_cast<int32_t>(j % t);
        sg.part[static_cast<size_t>(order[static_cast<size_t>(j)])] = p;
        sg.supernode_size[static_cast<size_t>(p)]++;
    }

    size_t st = static_cast<size_t>(t);
    for (node_id v = 0; v < n; ++v) {
        int32_t i = sg.part[static_cast<size_t>(v)];
        for (node_id w : g.neighbors(v)) {
            if (w <= v) continue;
            int32_t j = sg.part[static_cast<size_t>(w)];
            if (i == j) {
                sg.internal_edges[static_cast<size_t>(i)]++;
                sg.c[static_cast<size_t>(i) * st + static_cast<size_t>(i)] += 2;
            } else {
                sg.c[static_cast<size_t>(i) * st + static_cast<size_t>(j)]++;
                sg.c[static_cast<size_t>(j) * st + static_cast<size_t>(i)]++;
            }
        }
    }

    for (int p = 3; p <= 8; ++p) sg.degree_power_sums[static_cast<size_t>(p)].assign(st, 0.0);
    for (node_id v = 0; v < n; ++v) {
        size_t i = static_cast<size_t>(sg.part[static_cast<size_t>(v)]);
        double d = static_cast<double>(g.degree(v));
        double dp = d * d; // d^2
        for (int p = 3; p <= 8; ++p) {
            dp *= d;
            sg.degree_power_sums[static_cast<size_t>(p)][i] += dp;
        }
    }
    return sg;
}

void compute_power_diagonals(SummaryGraph& sg) {
    size_t t = static_cast<size_t>(sg.t);
    std::vector<double> c1(t * t);
    for (size_t i = 0; i < t * t; ++i) c1[i] = static_cast<double>(sg.c[i]);

    std::vector<double> c2, c3, c4;
    mat_mul_kahan(t, c1, c1, c2);
    mat_mul_kahan(t, c2, c1, c3);
    mat_mul_kahan(t, c2, c2, c4);

    for (int p = 3; p <= 8; ++p) sg.cpow_diag[static_cast<size_t>(p)].assign(t, 0.0);
    for (size_t i = 0; i < t; ++i) {
        const double* r2 = c2.data() + i * t;
        const double* r3 = c3.data() + i * t;
        const double* r4 = c4.data() + i * t;
        sg.cpow_diag[3][i] = r3[i];
        sg.cpow_diag[4][i] = r4[i];
        // C^p symmetric, so column i equals row i.
        sg.cpow_diag[5][i] = kahan_dot(r2, r3, t);
        sg.cpow_diag[6][i] = kahan_dot(r3, r3, t);
        sg.cpow_diag[7][i] = kahan_dot(r3, r4, t);
        sg.cpow_diag[8][i] = kahan_dot(r4, r4, t);
    }
}

SummaryGraph build_summary(const Graph& g, int32_t t, uint64_t seed) {
    SummaryGraph sg = build_partition(g, t, seed);
    compute_power_diagonals(sg);
    return sg;
}

namespace {

void check_matches(const SummaryGraph& sg, const Graph& g) {
    if (sg.n != g.node_count())
        throw DomainError("summary was built from a different graph (node counts differ)");
}

} // namespace

double alpha(const SummaryGraph& sg, const Graph& g, node_id v, int p) {
    if (p < 3 || p > 8) throw DomainError("alpha is defined for p in {3..8}");
    check_matches(sg, g);
    if (v < 0 || v >= sg.n) throw DomainError("node id out of range");
    size_t i = static_cast<size_t>(sg.part[static_cast<size_t>(v)]);
    double denom = sg.degree_power_sums[static_cast<size_t>(p)][i];
    if (denom == 0.0) return 0.0;
    return std::pow(static_cast<double>(g.degree(v)), p) / denom;
}

walks::WalkProfile estimate_w8(const SummaryGraph& sg, const Graph& g) {
    check_matches(sg, g);
    walks::WalkProfile profile;
    profile.source = walks::WalkProfile::Source::summary_estimate;
    profile.n = sg.n;
    profile.summary_t = sg.t;
    profile.summary_seed = sg.seed;
    profile.w8_estimate.assign(static_cast<size_t>(sg.n), 0.0);

    for (node_id v = 0; v < sg.n; ++v) {
        size_t i = static_cast<size_t>(sg.part[static_cast<size_t>(v)]);
        double d = static_cast<double>(g.degree(v));
        double sub[9]; // sub[p] = alpha_p(v) * C^p(i,i), the A^p(v,v) stand-in
        for (int p = 3; p <= 8; ++p) {
            double denom = sg.degree_power_sums[static_cast<size_t>(p)][i];
            double a = denom == 0.0 ? 0.0 : std::pow(d, p) / denom;
            sub[p] = a * sg.cpow_diag[static_cast<size_t>(p)][i];
        }
        double est = 8.0 * sub[8];
        est -= 8.0 * d * sub[6];
        est -= 8.0 * sub[5] * sub[3];
        est -= 4.0 * sub[4] * sub[4];
        est += 8.0 * d * sub[3] * sub[3];
        est += 8.0 * d * d * sub[4];
        est -= 2.0 * d * d * d * d;
        profile.w8_estimate[static_cast<size_t>(v)] = est;
    }
    return profile;
}

double expected_adjacency(const SummaryGraph& sg, node_id u, node_id v) {
    if (u < 0 || u >= sg.n || v < 0 || v >= sg.n) throw DomainError("node id out of range");
    if (u == v) return 0.0;
    int32_t i = sg.part[static_cast<size_t>(u)];
    int32_t j = sg.part[static_cast<size_t>(v)];
    if (i == j) {
        double ni = static_cast<double>(sg.supernode_size[static_cast<size_t>(i)]);
        double pairs = ni * (ni - 1.0) / 2.0;
        if (pairs == 0.0) return 0.0;
        return static_cast<double>(sg.internal_edges[static_cast<size_t>(i)]) / pairs;
    }
    double ni = static_cast<double>(sg.supernode_size[static_cast<size_t>(i)]);
    double nj = static_cast<double>(sg.supernode_size[static_cast<size_t>(j)]);
    return static_cast<double>(sg.c_at(i, j)) / (ni * nj);
}

void dump_summary_csv(const SummaryGraph& sg, std::ostream& edges_out, std::ostream& partition_out) {
    edges_out << "i,j,weight\n";
    for (int32_t i = 0; i < sg.t; ++i)
        for (int32_t j = i; j < sg.t; ++j)
            if (sg.c_at(i, j) != 0) edges_out << i << ',' << j << ',' << sg.c_at(i, j) << '\n';
    partition_out << "node,supernode\n";
    for (node_id v = 0; v < sg.n; ++v) partition_out << v << ',' << sg.part[static_cast<size_t>(v)] << '\n';
}

} // namespace immunize::summary
