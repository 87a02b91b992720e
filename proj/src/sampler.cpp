#include "rrg/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rrg/errors.hpp"
#include "rrg/parallel.hpp"
#include "rrg/rng.hpp"

namespace rrg {

std::string to_string(SampleMethod m) {
    switch (m) {
        case SampleMethod::ExactRejection: return "exact-rejection";
        case SampleMethod::IncrementalPairing: return "incremental-pairing";
        case SampleMethod::EdgeSwapMcmc: return "edge-swap-mcmc";
    }
    throw BadInputError("unknown sampling method");
}

SampleMethod parse_method(const std::string& name) {
    if (name == "exact-rejection") return SampleMethod::ExactRejection;
    if (name == "incremental-pairing") return SampleMethod::IncrementalPairing;
    if (name == "edge-swap-mcmc") return SampleMethod::EdgeSwapMcmc;
    throw BadInputError("unknown sampling method: " + name);
}

void SamplerConfig::validate() const {
    if (n < 1) throw BadInputError("need n >= 1");
    if (d < 0 || d >= n) throw BadInputError("need 0 <= d < n");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw ModelError("no regular graph exists: dn is odd");
    if (burn_in < -1) throw BadInputError("burn_in must be >= 0 (or -1 for auto)");
    if (thinning < -1) throw BadInputError("thinning must be >= 0 (or -1 for auto)");
    if (samples < 1) throw BadInputError("need samples >= 1");
}

namespace {

constexpr int kConstructionRestarts = 500;
constexpr long long kRejectionAttempts = 2000000;

long long resolved_burn_in(const SamplerConfig& cfg, long long num_edges) {
    return cfg.burn_in >= 0 ? cfg.burn_in : 20 * num_edges;
}

// Mutable adjacency-list graph for the sampling hot loops: O(degree) edge
// membership, O(1) edge replacement by slot.
struct MutableGraph {
    int n = 0;
    std::vector<std::vector<int>> nbrs;
    std::vector<std::pair<int, int>> edges;

    explicit MutableGraph(int n_) : n(n_), nbrs(static_cast<size_t>(n_)) {}

    bool has(int u, int v) const {
        const std::vector<int>& list =
            nbrs[u].size() <= nbrs[v].size() ? nbrs[u] : nbrs[v];
        int target = nbrs[u].size() <= nbrs[v].size() ? v : u;
        return std::find(list.begin(), list.end(), target) != list.end();
    }

    void add(int u, int v) {
        nbrs[u].push_back(v);
        nbrs[v].push_back(u);
        edges.push_back({u, v});
    }

    void drop_nbr(int u, int v) {
        std::vector<int>& list = nbrs[u];
        auto it = std::find(list.begin(), list.end(), v);
        *it = list.back();
        list.pop_back();
    }

    void replace_edge(size_t slot, int a, int b) {
        auto [x, y] = edges[slot];
        drop_nbr(x, y);
        drop_nbr(y, x);
        nbrs[a].push_back(b);
        nbrs[b].push_back(a);
        edges[slot] = {a, b};
    }

    SimpleGraph freeze() const {
        std::vector<Edge> out;
        out.reserve(edges.size());
        for (auto [a, b] : edges) out.push_back(make_edge(a, b));
        return SimpleGraph(n, std::move(out));
    }
};

// Uniform perfect matching of the n*d configuration points, accepted only
// when it projects to a simple graph — exactly uniform over the class.
SimpleGraph sample_exact_rejection(int n, int d, SplitRng& rng) {
    const int dn = n * d;
    std::vector<int> pts(static_cast<size_t>(dn));
    std::iota(pts.begin(), pts.end(), 0);
    std::vector<Edge> edges(static_cast<size_t>(dn / 2));
    for (long long attempt = 0; attempt < kRejectionAttempts; ++attempt) {
        for (int k = 0; k + 1 < dn; k += 2) {
            int j = k + 1 + static_cast<int>(rng.next_below(
                                static_cast<uint64_t>(dn - k - 1)));
            std::swap(pts[k + 1], pts[j]);
        }
        bool simple = true;
        for (int k = 0; k + 1 < dn && simple; k += 2) {
            int a = pts[k] / d, b = pts[k + 1] / d;
            if (a == b) simple = false;
            edges[k / 2] = make_edge(a, b);
        }
        if (!simple) continue;
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) continue;
        return SimpleGraph(n, edges);
    }
    throw ConstructionError("rejection budget exhausted (acceptance decays like exp(-(d^2-1)/4))");
}

// One pair at a time over configuration points, rejecting loops and repeated
// vertex pairs as they arise; deadlocks restart the construction.
MutableGraph build_incremental_pairing(int n, int d, SplitRng& rng) {
    const int dn = n * d;
    for (int restart = 0; restart < kConstructionRestarts; ++restart) {
        MutableGraph g(n);
        std::vector<int> free_pts(static_cast<size_t>(dn));
        std::iota(free_pts.begin(), free_pts.end(), 0);
        bool dead = false;
        while (!free_pts.empty() && !dead) {
            int p = free_pts.back();
            int u = p / d;
            size_t others = free_pts.size() - 1;
            bool placed = false;
            for (int tries = 0; tries < 200 && others > 0; ++tries) {
                size_t idx = static_cast<size_t>(rng.next_below(others));
                int w = free_pts[idx] / d;
                if (w == u || g.has(u, w)) continue;
                g.add(u, w);
                free_pts.pop_back();
                free_pts[idx] = free_pts.back();
                free_pts.pop_back();
                placed = true;
                break;
            }
            if (placed) continue;
            std::vector<size_t> admissible;
            for (size_t idx = 0; idx < others; ++idx) {
                int w = free_pts[idx] / d;
                if (w != u && !g.has(u, w)) admissible.push_back(idx);
            }
            if (admissible.empty()) {
                dead = true;
                break;
            }
            size_t idx = admissible[rng.next_below(admissible.size())];
            g.add(u, free_pts[idx] / d);
            free_pts.pop_back();
            free_pts[idx] = free_pts.back();
            free_pts.pop_back();
        }
        if (!dead) return g;
    }
    throw ConstructionError("incremental pairing kept deadlocking");
}

// Double-edge-swap chain; a rejected proposal leaves the state unchanged
// (lazy chain), so the stationary distribution is uniform over the class
// respecting the optional present/absent constraints.
void run_swap_chain(MutableGraph& g, SplitRng& rng, long long steps,
                    const SimpleGraph* keep, const SimpleGraph* avoid) {
    const size_t m = g.edges.size();
    if (m < 2) return;
    for (long long step = 0; step < steps; ++step) {
        size_t i = static_cast<size_t>(rng.next_below(m));
        size_t j = static_cast<size_t>(rng.next_below(m));
        if (i == j) continue;
        auto [a, b] = g.edges[i];
        auto [c, e] = g.edges[j];
        if (rng.next_u64() & 1) std::swap(c, e);
        if (a == c || a == e || b == c || b == e) continue;
        if (keep && (keep->has_edge(a, b) || keep->has_edge(c, e))) continue;
        if (g.has(a, c) || g.has(b, e)) continue;
        if (avoid && (avoid->has_edge(a, c) || avoid->has_edge(b, e))) continue;
        g.replace_edge(i, a, c);
        g.replace_edge(j, b, e);
    }
}

} // namespace

SimpleGraph sample_regular(const SamplerConfig& cfg, uint64_t stream) {
    cfg.validate();
    SplitRng rng(cfg.seed, stream);
    switch (cfg.method) {
        case SampleMethod::ExactRejection:
            return sample_exact_rejection(cfg.n, cfg.d, rng);
        case SampleMethod::IncrementalPairing:
            return build_incremental_pairing(cfg.n, cfg.d, rng).freeze();
        case SampleMethod::EdgeSwapMcmc: {
            MutableGraph g = build_incremental_pairing(cfg.n, cfg.d, rng);
            long long num_edges = static_cast<long long>(cfg.n) * cfg.d / 2;
            run_swap_chain(g, rng, resolved_burn_in(cfg, num_edges), nullptr, nullptr);
            return g.freeze();
        }
    }
    throw BadInputError("unknown sampling method");
}

namespace {

int degree_in(const SimpleGraph& h, int v) { return v < h.n() ? h.degree(v) : 0; }

// Greedy start for the conditioned class: place the required edges, then
// join largest-deficiency vertices; when the neediest vertex has no partner,
// rotate an existing edge toward it; restart when rotations stall.
MutableGraph conditional_start(const ConditioningPair& ctx, const DegreeSequence& dseq,
                               SplitRng& rng) {
    const int n = dseq.size();
    if (ctx.h1.n() > n)
        throw BadInputError("conditioning graphs exceed the degree sequence size");
    for (int v = 0; v < ctx.h1.n(); ++v)
        if (ctx.h1.degree(v) > dseq[v])
            throw ConstructionError("present edges already exceed a vertex degree");

    const SimpleGraph& h1 = ctx.h1;
    const SimpleGraph& h2 = ctx.h2;
    for (int restart = 0; restart < kConstructionRestarts; ++restart) {
        MutableGraph g(n);
        std::vector<int> deficiency(static_cast<size_t>(n));
        for (const auto& [a, b] : h1.edges()) g.add(a, b);
        for (int v = 0; v < n; ++v) deficiency[v] = dseq[v] - degree_in(h1, v);

        auto admissible = [&](int u, int w) {
            return w != u && !g.has(u, w) && !h2.has_edge(u, w);
        };

        long long repair_budget = 50LL * n + 200;
        bool stuck = false;
        while (!stuck) {
            int u = -1;
            for (int v = 0; v < n; ++v)
                if (deficiency[v] > 0 && (u < 0 || deficiency[v] > deficiency[u])) u = v;
            if (u < 0) return g; // all degrees met

            int best = -1;
            for (int w = 0; w < n; ++w)
                if (deficiency[w] > 0 && admissible(u, w) &&
                    (best < 0 || deficiency[w] > deficiency[best]))
                    best = w;
            if (best >= 0) {
                g.add(u, best);
                --deficiency[u];
                --deficiency[best];
                continue;
            }

            // Rotation repair: remove some xy, add ux; y becomes deficient.
            std::vector<std::pair<size_t, int>> moves; // (edge slot, kept endpoint x)
            for (size_t slot = 0; slot < g.edges.size(); ++slot) {
                auto [x, y] = g.edges[slot];
                if (h1.has_edge(x, y)) continue;
                if (admissible(u, x)) moves.push_back({slot, x});
                if (admissible(u, y)) moves.push_back({slot, y});
            }
            if (moves.empty() || --repair_budget <= 0) {
                stuck = true;
                break;
            }
            auto [slot, x] = moves[rng.next_below(moves.size())];
            auto [a, b] = g.edges[slot];
            int y = (a == x) ? b : a;
            g.replace_edge(slot, u, x);
            --deficiency[u];
            ++deficiency[y];
        }
    }
    throw ConstructionError("could not construct a member of the conditioned class");
}

} // namespace

SimpleGraph conditional_sample(const ConditioningPair& ctx, const DegreeSequence& dseq,
                               const SamplerConfig& cfg, uint64_t stream) {
    if (cfg.burn_in < -1) throw BadInputError("burn_in must be >= 0 (or -1 for auto)");
    SplitRng rng(cfg.seed, stream);
    MutableGraph g = conditional_start(ctx, dseq, rng);
    run_swap_chain(g, rng, resolved_burn_in(cfg, dseq.m() / 2), &ctx.h1, &ctx.h2);
    return g.freeze();
}

namespace {

void check_scan_inputs(const SimpleGraph& g, int u, int v, const ConditioningPair& ctx) {
    if (u < 0 || u >= g.n() || v < 0 || v >= g.n() || u == v)
        throw BadInputError("switching endpoints out of range");
    if (ctx.h1.has_edge(u, v) || ctx.h2.has_edge(u, v))
        throw ContractError("switched edge uv must be unconstrained");
    if (!g.contains(ctx.h1))
        throw ContractError("graph must contain every present conditioning edge");
    if (!g.edge_disjoint(ctx.h2))
        throw ContractError("graph must avoid every absent conditioning edge");
}

long long residual_degree(const SimpleGraph& g, const SimpleGraph& h1, int v) {
    return g.degree(v) - degree_in(h1, v);
}

} // namespace

SwitchingScan forward_switchings(const SimpleGraph& g, int u, int v,
                                 const ConditioningPair& ctx) {
    check_scan_inputs(g, u, v, ctx);
    if (!g.has_edge(u, v))
        throw ContractError("forward switching requires uv present");
    SwitchingScan scan;
    for (const auto& [a, b] : g.edges()) {
        if (ctx.h1.has_edge(a, b)) continue;
        const int oriented[2][2] = {{a, b}, {b, a}};
        for (const auto& xy : oriented) {
            int x = xy[0], y = xy[1];
            if (x == u || x == v || y == u || y == v) continue;
            bool bad_u = g.has_edge(u, x) || ctx.h2.has_edge(u, x);
            bool bad_v = g.has_edge(v, y) || ctx.h2.has_edge(v, y);
            if (bad_u) ++scan.counts.X_u;
            if (bad_v) ++scan.counts.X_v;
            if (bad_u && bad_v) ++scan.counts.X_uv;
            if (!bad_u && !bad_v) scan.pairs.push_back({x, y});
        }
    }
    scan.counts.f = static_cast<long long>(scan.pairs.size());
    long long mt = 2LL * (g.m() - ctx.h1.m());
    long long du = residual_degree(g, ctx.h1, u);
    long long dv = residual_degree(g, ctx.h1, v);
    long long closed = mt - 2 * (du + dv) + 2 - scan.counts.X_u - scan.counts.X_v +
                       scan.counts.X_uv;
    if (closed != scan.counts.f)
        throw ContractError("forward switching identity violated");
    std::sort(scan.pairs.begin(), scan.pairs.end());
    return scan;
}

SwitchingScan backward_switchings(const SimpleGraph& g, int u, int v,
                                  const ConditioningPair& ctx) {
    check_scan_inputs(g, u, v, ctx);
    if (g.has_edge(u, v))
        throw ContractError("backward switching requires uv absent");
    SwitchingScan scan;
    for (int x : g.neighbors(u)) {
        if (ctx.h1.has_edge(u, x)) continue;
        for (int y : g.neighbors(v)) {
            if (ctx.h1.has_edge(v, y)) continue;
            if (x == y) {
                ++scan.counts.Y_2;
                continue;
            }
            if (g.has_edge(x, y) || ctx.h2.has_edge(x, y)) {
                ++scan.counts.Y_1;
                continue;
            }
            scan.pairs.push_back({x, y});
        }
    }
    scan.counts.b = static_cast<long long>(scan.pairs.size());
    long long du = residual_degree(g, ctx.h1, u);
    long long dv = residual_degree(g, ctx.h1, v);
    if (du * dv - scan.counts.Y_1 - scan.counts.Y_2 != scan.counts.b)
        throw ContractError("backward switching identity violated");
    std::sort(scan.pairs.begin(), scan.pairs.end());
    return scan;
}

SimpleGraph apply_switching(const SimpleGraph& g, int u, int v, int x, int y,
                            SwitchDirection direction) {
    int verts[4] = {u, v, x, y};
    for (int i = 0; i < 4; ++i) {
        if (verts[i] < 0 || verts[i] >= g.n())
            throw BadInputError("switching vertex out of range");
        for (int j = i + 1; j < 4; ++j)
            if (verts[i] == verts[j])
                throw ContractError("switching vertices must be distinct");
    }
    std::vector<Edge> edges = g.edges();
    auto remove_edge = [&edges](int a, int b) {
        auto it = std::find(edges.begin(), edges.end(), make_edge(a, b));
        edges.erase(it);
    };
    if (direction == SwitchDirection::Forward) {
        if (!g.has_edge(u, v) || !g.has_edge(x, y) || g.has_edge(u, x) ||
            g.has_edge(v, y))
            throw ContractError("invalid forward switching pair");
        remove_edge(u, v);
        remove_edge(x, y);
        edges.push_back(make_edge(u, x));
        edges.push_back(make_edge(v, y));
    } else {
        if (g.has_edge(u, v) || !g.has_edge(x, u) || !g.has_edge(y, v) ||
            g.has_edge(x, y))
            throw ContractError("invalid backward switching pair");
        remove_edge(x, u);
        remove_edge(y, v);
        edges.push_back(make_edge(u, v));
        edges.push_back(make_edge(x, y));
    }
    return SimpleGraph(g.n(), std::move(edges));
}

SwitchingEstimate switching_ratio_estimate(const ConditioningPair& ctx,
                                           const DegreeSequence& dseq, int u, int v,
                                           const SamplerConfig& cfg) {
    const int n = dseq.size();
    if (u < 0 || u >= n || v < 0 || v >= n || u == v)
        throw BadInputError("switching endpoints out of range");
    if (ctx.h1.has_edge(u, v) || ctx.h2.has_edge(u, v))
        throw ContractError("switched edge uv must be unconstrained");
    if (cfg.samples < 1) throw BadInputError("need samples >= 1");

    SwitchingEstimate out;
    out.samples_per_side = cfg.samples;
    out.estimate = ProbEstimate{0.0, "switching-mc", "monte-carlo"};

    long long du = dseq[u] - degree_in(ctx.h1, u);
    long long dv = dseq[v] - degree_in(ctx.h1, v);
    if (du <= 0 || dv <= 0) return out; // uv-present class is empty

    std::vector<Edge> plus_edges = ctx.h1.edges();
    plus_edges.push_back(make_edge(u, v));
    ConditioningPair ctx_plus(SimpleGraph(n, plus_edges), SimpleGraph(n, ctx.h2.edges()));
    std::vector<Edge> minus_edges = ctx.h2.edges();
    minus_edges.push_back(make_edge(u, v));
    ConditioningPair ctx_minus(SimpleGraph(n, ctx.h1.edges()),
                               SimpleGraph(n, minus_edges));

    const size_t count = static_cast<size_t>(cfg.samples);
    std::vector<double> fs(count), bs(count);
    parallel_for(count, [&](size_t i) {
        SimpleGraph present = conditional_sample(ctx_plus, dseq, cfg, 2 * i);
        fs[i] = static_cast<double>(forward_switchings(present, u, v, ctx).counts.f);
        SimpleGraph absent = conditional_sample(ctx_minus, dseq, cfg, 2 * i + 1);
        bs[i] = static_cast<double>(backward_switchings(absent, u, v, ctx).counts.b);
    });

    auto mean_of = [](const std::vector<double>& xs) {
        return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    };
    auto var_of = [](const std::vector<double>& xs, double mu) {
        if (xs.size() < 2) return 0.0;
        double ss = 0.0;
        for (double x : xs) ss += (x - mu) * (x - mu);
        return ss / static_cast<double>(xs.size() - 1);
    };
    out.mean_f = mean_of(fs);
    out.mean_b = mean_of(bs);
    out.var_f = var_of(fs, out.mean_f);
    out.var_b = var_of(bs, out.mean_b);

    double total = out.mean_f + out.mean_b;
    if (total <= 0.0)
        throw UndefinedProbabilityError("no switchings observed on either side");
    out.estimate.value = out.mean_b / total;
    double mc = static_cast<double>(count);
    double var_ratio = (out.mean_b * out.mean_b * (out.var_f / mc) +
                        out.mean_f * out.mean_f * (out.var_b / mc)) /
                       (total * total * total * total);
    out.std_error = std::sqrt(std::max(var_ratio, 0.0));
    return out;
}

} // namespace rrg
