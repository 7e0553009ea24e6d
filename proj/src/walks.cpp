#include "immunize/walks.hpp"

#include <algorithm>
#include <cmath>

#include "immunize/parallel.hpp"

namespace immunize::walks {

const std::vector<walk_int>& WalkProfile::diag(int p) const {
    switch (p) {
    case 2: return diag2;
    case 3: return diag3;
    case 4: return diag4;
    case 5: return diag5;
    case 6: return diag6;
    case 8: return diag8;
    default: throw DomainError("no diagonal stored for p=" + std::to_string(p));
    }
}

namespace {

// Dense path. Only A^2 is materialized (int64, row-major); the A^3 and A^4
// rows needed for the inner products are rebuilt per vertex from A^2, which
// costs the same multiplications as forming the full matrices but keeps one
// n^2 buffer instead of three.
void diagonal_powers_dense(const Graph& g, WalkProfile& out) {
    const size_t n = static_cast<size_t>(g.node_count());
    std::vector<int64_t> a2(n * n, 0);
    parallel_for(n, [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) {
            int64_t* row = a2.data() + i * n;
            for (node_id w : g.neighbors(static_cast<node_id>(i)))
                for (node_id u : g.neighbors(w)) row[static_cast<size_t>(u)]++;
        }
    });

    parallel_for(n, [&](size_t b, size_t e) {
        std::vector<int64_t> a3row(n), a4row(n);
        for (size_t v = b; v < e; ++v) {
            const int64_t* r2 = a2.data() + v * n;

            std::fill(a3row.begin(), a3row.end(), 0);
            for (node_id w : g.neighbors(static_cast<node_id>(v))) {
                const int64_t* rw = a2.data() + static_cast<size_t>(w) * n;
                for (size_t j = 0; j < n; ++j) a3row[j] += rw[j];
            }

            std::fill(a4row.begin(), a4row.end(), 0);
            for (size_t u = 0; u < n; ++u) {
                int64_t c = r2[u];
                if (c == 0) continue;
                const int64_t* ru = a2.data() + u * n;
                for (size_t j = 0; j < n; ++j) a4row[j] += c * ru[j];
            }

            walk_int d5 = 0, d6 = 0, d8 = 0;
            for (size_t j = 0; j < n; ++j) {
                d5 = checked_add(d5, checked_mul(r2[j], a3row[j]));
                d6 = checked_add(d6, checked_mul(a3row[j], a3row[j]));
                d8 = checked_add(d8, checked_mul(a4row[j], a4row[j]));
            }
            out.diag2[v] = r2[v];
            out.diag3[v] = a3row[v];
            out.diag4[v] = a4row[v];
            out.diag5[v] = d5;
            out.diag6[v] = d6;
            out.diag8[v] = d8;
        }
    });
}

// Per-vertex sparse path: propagate the unit vector e_v through A three
// times over touched entries only. O(n * m) overall, no n^2 storage.
void diagonal_powers_sparse(const Graph& g, WalkProfile& out) {
    const size_t n = static_cast<size_t>(g.node_count());
    parallel_for(
        n,
        [&](size_t b, size_t e) {
            std::vector<int64_t> r2(n, 0), r3(n, 0), r4(n, 0);
            std::vector<node_id> t2, t3, t4;
            auto scatter = [&](const std::vector<int64_t>& src, const std::vector<node_id>& touched,
                               std::vector<int64_t>& dst, std::vector<node_id>& dst_touched) {
                for (node_id u : touched) {
                    int64_t c = src[static_cast<size_t>(u)];
                    for (node_id w : g.neighbors(u)) {
                        int64_t& cell = dst[static_cast<size_t>(w)];
                        if (cell == 0) dst_touched.push_back(w);
                        if (__builtin_add_overflow(cell, c, &cell))
                            throw OverflowError("walk diagonal overflow in sparse mode");
                    }
                }
            };

            for (size_t vi = b; vi < e; ++vi) {
                node_id v = static_cast<node_id>(vi);
                t2.clear();
                t3.clear();
                t4.clear();
                for (node_id w : g.neighbors(v))
                    for (node_id u : g.neighbors(w)) {
                        int64_t& cell = r2[static_cast<size_t>(u)];
                        if (cell == 0) t2.push_back(u);
                        ++cell;
                    }
                scatter(r2, t2, r3, t3);
                scatter(r3, t3, r4, t4);

                walk_int d5 = 0, d6 = 0, d8 = 0;
                for (node_id u : t2)
                    d5 = checked_add(d5, checked_mul(r2[static_cast<size_t>(u)], r3[static_cast<size_t>(u)]));
                for (node_id u : t3) {
                    walk_int c = r3[static_cast<size_t>(u)];
                    d6 = checked_add(d6, checked_mul(c, c));
                }
                for (node_id u : t4) {
                    walk_int c = r4[static_cast<size_t>(u)];
                    d8 = checked_add(d8, checked_mul(c, c));
                }
                out.diag2[vi] = g.degree(v);
                out.diag3[vi] = r3[vi];
                out.diag4[vi] = r4[vi];
                out.diag5[vi] = d5;
                out.diag6[vi] = d6;
                out.diag8[vi] = d8;

                for (node_id u : t2) r2[static_cast<size_t>(u)] = 0;
                for (node_id u : t3) r3[static_cast<size_t>(u)] = 0;
                for (node_id u : t4) r4[static_cast<size_t>(u)] = 0;
            }
        },
        /*min_chunk=*/64);
}

} // namespace

WalkProfile diagonal_powers(const Graph& g, const WalkOptions& opts) {
    WalkProfile profile;
    profile.source = WalkProfile::Source::exact;
    profile.n = g.node_count();
    size_t n = static_cast<size_t>(profile.n);
    profile.diag2.assign(n, 0);
    profile.diag3.assign(n, 0);
    profile.diag4.assign(n, 0);
    profile.diag5.assign(n, 0);
    profile.diag6.assign(n, 0);
    profile.diag8.assign(n, 0);
    if (n == 0) return profile;

    bool dense;
    switch (opts.mode) {
    case WalkOptions::Mode::dense: dense = true; break;
    case WalkOptions::Mode::sparse: dense = false; break;
    default:
        if (g.node_count() > opts.dense_limit)
            throw CapabilityError("exact walk counting refused: n=" + std::to_string(g.node_count()) +
                                  " exceeds dense limit " + std::to_string(opts.dense_limit) +
                                  "; use the summary estimate (--t > 0) for graphs this large");
        dense = true;
        break;
    }
    if (dense)
        diagonal_powers_dense(g, profile);
    else
        diagonal_powers_sparse(g, profile);
    return profile;
}

std::vector<walk_int> w8_closed_form(const WalkProfile& profile) {
    if (!profile.exact()) throw DomainError("w8 closed form requires an exact profile");
    size_t n = static_cast<size_t>(profile.n);
    std::vector<walk_int> w8(n);
    for (size_t v = 0; v < n; ++v) {
        walk_int a2 = profile.diag2[v], a3 = profile.diag3[v], a4 = profile.diag4[v];
        walk_int a5 = profile.diag5[v], a6 = profile.diag6[v], a8 = profile.diag8[v];
        walk_int a2sq = checked_mul(a2, a2);
        walk_int r = checked_mul(8, a8);
        r = checked_sub(r, checked_mul(8, checked_mul(a2, a6)));
        r = checked_sub(r, checked_mul(8, checked_mul(a3, a5)));
        r = checked_sub(r, checked_mul(4, checked_mul(a4, a4)));
        r = checked_add(r, checked_mul(8, checked_mul(a2, checked_mul(a3, a3))));
        r = checked_add(r, checked_mul(8, checked_mul(a2sq, a4)));
        r = checked_sub(r, checked_mul(2, checked_mul(a2sq, a2sq)));
        if (r < 0)
            throw std::logic_error("negative W8 at node " + std::to_string(v) +
                                   ": diagonal profile is inconsistent");
        w8[v] = r;
    }
    return w8;
}

std::vector<walk_int> w6_closed_form(const WalkProfile& profile) {
    if (!profile.exact()) throw DomainError("w6 closed form requires an exact profile");
    size_t n = static_cast<size_t>(profile.n);
    std::vector<walk_int> w6(n);
    for (size_t v = 0; v < n; ++v) {
        walk_int a2 = profile.diag2[v], a3 = profile.diag3[v], a4 = profile.diag4[v];
        walk_int a6 = profile.diag6[v];
        walk_int r = checked_mul(6, a6);
        r = checked_sub(r, checked_mul(6, checked_mul(a2, a4)));
        r = checked_sub(r, checked_mul(3, checked_mul(a3, a3)));
        r = checked_add(r, checked_mul(2, checked_mul(a2, checked_mul(a2, a2))));
        if (r < 0)
            throw std::logic_error("negative W6 at node " + std::to_string(v) +
                                   ": diagonal profile is inconsistent");
        w6[v] = r;
    }
    return w6;
}

namespace {

void check_brute_bounds(const Graph& g, int p, const BruteOptions& opts) {
    if (p < 1 || p > 10) throw DomainError("brute walk enumeration supports 1 <= p <= 10");
    node_id dmax = 0;
    for (node_id v = 0; v < g.node_count(); ++v) dmax = std::max(dmax, g.degree(v));
    double work = static_cast<double>(g.node_count()) * std::pow(static_cast<double>(dmax), p);
    if (work > opts.work_limit)
        throw CapabilityError("brute walk enumeration work bound exceeded (n*dmax^p ~ " +
                              std::to_string(work) + ")");
}

// Enumerates every closed p-walk once (as a linear sequence) and hands the
// vertex sequence to sink(path). Depth-first over positions 1..p-1; the
// final edge back to the start is checked by binary search.
template <typename Sink>
void enumerate_closed_walks(const Graph& g, int p, Sink&& sink) {
    std::vector<node_id> path(static_cast<size_t>(p));
    auto dfs = [&](auto&& self, node_id u, int depth) -> void {
        path[static_cast<size_t>(depth)] = u;
        if (depth == p - 1) {
            if (g.has_edge(u, path[0])) sink(path);
            return;
        }
        for (node_id w : g.neighbors(u)) self(self, w, depth + 1);
    };
    for (node_id start = 0; start < g.node_count(); ++start) {
        if (g.degree(start) == 0) continue;
        dfs(dfs, start, 0);
    }
}

} // namespace

walk_int brute_walk_count(const Graph& g, node_id v, int p, const BruteOptions& opts) {
    if (v < 0 || v >= g.node_count()) throw DomainError("node id out of range");
    check_brute_bounds(g, p, opts);
    walk_int count = 0;
    enumerate_closed_walks(g, p, [&](const std::vector<node_id>& path) {
        for (node_id x : path)
            if (x == v) {
                ++count;
                return;
            }
    });
    return count;
}

std::vector<walk_int> brute_walk_counts_all(const Graph& g, int p, const BruteOptions& opts) {
    check_brute_bounds(g, p, opts);
    size_t n = static_cast<size_t>(g.node_count());
    std::vector<walk_int> counts(n, 0);
    std::vector<int64_t> stamp(n, -1);
    int64_t walk_id = 0;
    enumerate_closed_walks(g, p, [&](const std::vector<node_id>& path) {
        for (node_id x : path) {
            if (stamp[static_cast<size_t>(x)] != walk_id) {
                stamp[static_cast<size_t>(x)] = walk_id;
                counts[static_cast<size_t>(x)] += 1;
            }
        }
        ++walk_id;
    });
    return counts;
}

walk_int set_walk_count(const Graph& g, const NodeSet& s, int p, const WalkOptions& opts) {
    if (p != 2 && p != 4 && p != 6 && p != 8)
        throw DomainError("set walk count requires even p in {2,4,6,8}");
    s.check_valid_for(g);
    WalkProfile full = diagonal_powers(g, opts);
    WalkProfile rest = diagonal_powers(remove_nodes(g, s), opts);
    return checked_sub(trace_power(full, p), trace_power(rest, p));
}

walk_int trace_power(const WalkProfile& profile, int p) {
    walk_int total = 0;
    for (walk_int d : profile.diag(p)) total = checked_add(total, d);
    return total;
}

} // namespace immunize::walks
